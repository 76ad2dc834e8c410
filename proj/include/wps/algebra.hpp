#ifndef WPS_ALGEBRA_HPP
#define WPS_ALGEBRA_HPP

#include <memory>
#include <mutex>
#include <map>
#include <string>
#include "wps/poly.hpp"

namespace wps {

// A graded algebra seen through its finite-dimensional pieces: dimensions,
// chosen bases, multiplication tables, and (when a group acts) the characters
// of the basis elements. B_m/R_m constructions only ever use this view.
class PieceAlgebra {
  public:
    virtual ~PieceAlgebra() = default;
    virtual int dim(int d) const = 0;
    // Matrix of A_d (x) A_e -> A_{d+e}; column index = i*dim(e)+j.
    virtual Matrix mult_table(int d, int e) const = 0;
    // Moduli of the acting group mu_{m_0} x ... x mu_{m_n} (all 1 = trivial).
    virtual WeightVector action_group() const = 0;
    // Characters of the degree-d basis (trivial unless the algebra carries an action).
    virtual std::vector<Character> piece_characters(int d) const;
    virtual std::string describe() const = 0;
};

// Finitely presented S/I over a weighted polynomial ring. Empty relation list
// gives S itself. Pieces are represented by the monomials of S_d that survive
// as pivots' complement of the degree-d relation span.
class GradedAlgebra : public PieceAlgebra {
  public:
    GradedAlgebra(Grading g, std::vector<Polynomial> relations);
    GradedAlgebra(const GradedAlgebra& o)
        : grading_(o.grading_), relations_(o.relations_),
          relation_degrees_(o.relation_degrees_) {}

    const Grading& grading() const { return grading_; }
    const std::vector<Polynomial>& relations() const { return relations_; }

    int dim(int d) const override;
    Matrix mult_table(int d, int e) const override;
    WeightVector action_group() const override { return WeightVector(grading_.char_moduli); }
    std::vector<Character> piece_characters(int d) const override;
    std::string describe() const override;

    // Basis of A_d as monomials of S_d (pivot complement), deterministic.
    std::vector<Monomial> piece_basis(int d) const;
    // Normal form: coefficient vector on the S_d monomial basis -> coordinates
    // on the quotient basis.
    std::vector<Rational> reduce(int d, std::vector<Rational> v) const;

  private:
    struct Piece {
        std::vector<Monomial> full_basis;      // monomials of S_d
        std::vector<std::vector<Rational>> echelon; // rref rows of the relation span
        std::vector<std::size_t> pivots;
        std::vector<std::size_t> quotient_idx; // indices into full_basis
        std::vector<Monomial> basis;           // surviving monomials
    };
    const Piece& piece(int d) const;

    Grading grading_;
    std::vector<Polynomial> relations_;
    std::vector<int> relation_degrees_;
    mutable std::mutex mu_;
    mutable std::map<int, Piece> pieces_;
};

// Veronese subalgebra A^(d): pieces A^(d)_m = A_{dm} with inherited multiplication.
class VeroneseAlgebra : public PieceAlgebra {
  public:
    VeroneseAlgebra(std::shared_ptr<const PieceAlgebra> base, int step);

    int dim(int d) const override;
    Matrix mult_table(int d, int e) const override;
    WeightVector action_group() const override { return base_->action_group(); }
    std::vector<Character> piece_characters(int d) const override;
    std::string describe() const override;

    int step() const { return step_; }
    const PieceAlgebra& base() const { return *base_; }

  private:
    std::shared_ptr<const PieceAlgebra> base_;
    int step_;
};

// Characters of a tensor basis V (x) W (index i*|W|+j), summed per factor.
std::vector<Character> tensor_characters(const std::vector<Character>& v,
                                         const std::vector<Character>& w,
                                         const WeightVector& mods);

// Kernel computed per character block so every basis vector is an eigenvector.
// Requires the matrix to be character-graded w.r.t. the labels (entries between
// mismatched characters must vanish; checked).
struct CharVector {
    Character character;
    std::vector<Rational> coords;
};
std::vector<CharVector> kernel_by_char(const Matrix& m,
                                       const std::vector<Character>& src_chars,
                                       const std::vector<Character>& tgt_chars);

} // namespace wps

#endif
