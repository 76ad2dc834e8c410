#ifndef WPS_MODULE_HPP
#define WPS_MODULE_HPP

#include <map>
#include <mutex>
#include <string>
#include "wps/poly.hpp"

namespace wps {

// Free graded module over the ring fixed by a Grading: generators carry a
// twist (S(-g)) and, when the ring has a group action, a character.
struct FreeModule {
    std::vector<int> twists;
    std::vector<Character> chars;  // empty = all trivial

    std::size_t size() const { return twists.size(); }
    Character gen_char(const Grading& g, std::size_t j) const;
};

using PolyMatrix = std::vector<std::vector<Polynomial>>;  // rows x cols

// Basis of the degree-d piece of a free module: pairs (generator, monomial).
struct FreePieceBasis {
    std::vector<std::pair<std::size_t, Monomial>> elems;
    std::vector<Character> chars;
    std::size_t size() const { return elems.size(); }
};
FreePieceBasis free_piece(const Grading& g, const FreeModule& f, int d);
int free_piece_dim(const Grading& g, const FreeModule& f, int d);

// Matrix of the degree-d strand of a polynomial matrix between free modules.
Matrix strand_matrix(const Grading& g, const FreeModule& src, const FreeModule& tgt,
                     const PolyMatrix& entries, int d);

// polynomial column vector -> coordinates in free_piece(g, f, d)
std::vector<Rational> column_coords(const Grading& g, const FreeModule& f,
                                    const std::vector<Polynomial>& col, int d);
// inverse of column_coords
std::vector<Polynomial> coords_to_column(const Grading& g, const FreeModule& f,
                                         const std::vector<Rational>& v, int d);

// Finitely presented graded module M = coker( ⊕S(-r_k) -> ⊕S(-g_j) ) over the
// weighted polynomial ring. Pieces are computed degreewise by exact elimination.
class GradedModule {
  public:
    GradedModule(Grading ring, FreeModule gens, PolyMatrix relations,
                 std::vector<int> relation_degrees,
                 std::vector<Character> relation_chars = {});

    static GradedModule free_module(Grading ring, std::vector<int> twists,
                                    std::vector<Character> chars = {});

    // copies share no cache state
    GradedModule(const GradedModule& o)
        : ring_(o.ring_), gens_(o.gens_), rel_(o.rel_), rel_degs_(o.rel_degs_),
          rel_chars_(o.rel_chars_) {}
    GradedModule& operator=(const GradedModule& o) {
        if (this != &o) {
            ring_ = o.ring_; gens_ = o.gens_; rel_ = o.rel_;
            rel_degs_ = o.rel_degs_; rel_chars_ = o.rel_chars_;
            std::lock_guard<std::mutex> lock(mu_);
            pieces_.clear();
        }
        return *this;
    }
    GradedModule(GradedModule&& o) noexcept
        : ring_(std::move(o.ring_)), gens_(std::move(o.gens_)), rel_(std::move(o.rel_)),
          rel_degs_(std::move(o.rel_degs_)), rel_chars_(std::move(o.rel_chars_)) {}

    const Grading& ring() const { return ring_; }
    const FreeModule& gens() const { return gens_; }
    const PolyMatrix& relations() const { return rel_; }
    const std::vector<int>& relation_degrees() const { return rel_degs_; }

    int piece_dim(int d) const;
    // Basis labels of M_d: indices into the free piece (pivot complement).
    std::vector<std::pair<std::size_t, Monomial>> piece_basis(int d) const;
    std::vector<Character> piece_characters(int d) const;
    // Project a free-piece coordinate vector to M_d coordinates (normal form).
    std::vector<Rational> project(int d, std::vector<Rational> v) const;
    // Lift the i-th basis vector of M_d to free-piece coordinates.
    std::vector<Rational> lift_basis(int d, std::size_t i) const;
    // Echelonized spanning set of the degree-d relation subspace in free coords.
    std::vector<std::vector<Rational>> relation_span(int d) const;
    // Matrix of multiplication by homogeneous f : M_d -> M_{d+deg f}.
    Matrix mult_matrix(const Polynomial& f, int d) const;

    GradedModule twist(int j) const;
    std::string describe() const;

  private:
    struct Piece {
        FreePieceBasis full;
        std::vector<std::vector<Rational>> echelon;
        std::vector<std::size_t> pivots;
        std::vector<std::size_t> quotient_idx;
    };
    const Piece& piece(int d) const;

    Grading ring_;
    FreeModule gens_;
    PolyMatrix rel_;
    std::vector<int> rel_degs_;
    std::vector<Character> rel_chars_;
    mutable std::mutex mu_;
    mutable std::map<int, Piece> pieces_;
};

// Degree-s map of graded modules given by a polynomial matrix on generators.
struct GradedMap {
    const GradedModule* source;
    const GradedModule* target;
    PolyMatrix entries;   // target gens x source gens
    int shift = 0;        // maps M_d -> N_{d+shift}

    void validate() const;                 // homogeneity of all entries
    Matrix piece_matrix(int d) const;      // induced M_d -> N_{d+shift}
    // kernel inside M_d (coordinates on the source piece basis)
    std::vector<std::vector<Rational>> kernel_piece(int d) const;
};

} // namespace wps

#endif
