#ifndef WPS_KOSZUL_HPP
#define WPS_KOSZUL_HPP

#include <memory>
#include <optional>
#include "wps/algebra.hpp"
#include "wps/module.hpp"

namespace wps {

// One row of an exactness certificate: a position of one strand.
struct StrandRow {
    int position = 0;      // homological position within the strand
    int degree = 0;        // internal degree (or l of a bidegree; k goes in context)
    Character character;   // trivial when no group is in play
    int dim_term = 0;
    int dim_kernel = 0;    // kernel of the outgoing map
    int dim_image_in = 0;  // image of the incoming map
    bool exact = true;
    bool bookkeeping = false;  // dimension-decomposition row, not an exactness check
};

struct StrandReport {
    std::string context;
    std::vector<StrandRow> rows;
    bool pass = true;
    std::optional<std::pair<int, int>> first_failure;  // (position, degree)

    void add(StrandRow row);
};

// Koszul spaces B_m of a piece algebra: B_0 = Q, B_1 = A_1,
// B_m = Ker(B_{m-1} (x) A_1 -> B_{m-2} (x) A_2). Bases are character-pure
// when the algebra carries a group action.
class KoszulData {
  public:
    explicit KoszulData(std::shared_ptr<const PieceAlgebra> algebra);

    const PieceAlgebra& algebra() const { return *algebra_; }
    std::shared_ptr<const PieceAlgebra> algebra_ptr() const { return algebra_; }

    int dim_b(int m) const;
    // Inclusion B_m -> B_{m-1} (x) A_1 (iterated-kernel coordinates; identity at m=1).
    const Matrix& incl(int m) const;
    // Left coaction B_m -> A_1 (x) B_{m-1} (first-slot extraction).
    const Matrix& lam(int m) const;
    std::vector<Character> b_chars(int m) const;
    // Realization of B_m inside A_1^{(x)m} by composing inclusions.
    Matrix realize(int m) const;

    // Linear-strand map B_m (x) A_t -> B_{m-1} (x) A_{t+1}
    // (extract the last tensor slot, multiply it into A_t).
    Matrix strand_map(int m, int t) const;

    // Basis of (R_m)_l = Ker(B_m (x) A_l -> B_{m-1} (x) A_{l+1}); (R_0)_l = A_l.
    const std::vector<CharVector>& r_basis(int m, int l) const;
    int r_dim(int m, int l) const;

    // Diagonal/AR differential A_i (x) (R_m)_l -> A_{i+1} (x) (R_{m-1})_l
    // (extract the first slot via the left coaction, multiply it into A_i).
    Matrix diag_map(int m, int l, int i) const;

  private:
    void ensure(int m) const;
    std::shared_ptr<const PieceAlgebra> algebra_;
    mutable std::mutex mu_;
    mutable std::vector<int> dims_;            // dims_[m]
    mutable std::map<int, Matrix> incl_;       // m >= 1
    mutable std::map<int, Matrix> lam_;        // m >= 1
    mutable std::map<int, std::vector<Character>> chars_;
    mutable std::map<std::pair<int, int>, std::vector<CharVector>> r_;
};

// Koszulness certification: exactness of the linear strand
// ... -> B_m (x) A_{k-m} -> ... -> A_k (-> Q when k = 0) for internal
// degrees k <= k_max, homological positions m <= m_max.
StrandReport koszul_check(const KoszulData& K, int m_max, int k_max);

// Exactness of the strands of
// 0 -> R_m -> B_m (x) O -> B_{m-1} (x) L -> ... -> L^m -> 0
// at fixed m, section degrees l in [l_lo, l_hi].
StrandReport seq_sheaf_check(const KoszulData& K, int m, int l_lo, int l_hi);

// Exactness of 0 -> A_0 (x) (R_m)_l -> ... -> A_m (x) (R_0)_l -> A_{m+l} -> 0.
StrandReport ar_strand_check(const KoszulData& K, int m, int l_lo, int l_hi);

// Resolution-of-the-diagonal strand at bidegree (k, l):
// 0 -> A_0 (x) (R_k)_l -> ... -> A_k (x) A_l -> A_{k+l} -> 0.
StrandReport diagonal_strand_check(const KoszulData& K, int k, int l);

// Delta-G-invariant part of the diagonal strand of P^n x P^n for the
// cover model T of P(w); reports per character.
StrandReport equivariant_strand_check(const WeightVector& w, int k, int l);

// Corollary 3.3 in K-theory: per-twist residuals over the window (all must be
// zero). Requires B_m to vanish within the computed range, else BoundExhausted.
struct EulerKernelVerdict {
    bool pass = true;
    std::vector<std::pair<int, Rational>> residuals;  // (k, residual)
};
EulerKernelVerdict euler_kernel_check(const KoszulData& K, const GradedModule& M,
                                      int k_lo, int k_hi);

} // namespace wps

#endif
