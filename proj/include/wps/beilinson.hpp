#ifndef WPS_BEILINSON_HPP
#define WPS_BEILINSON_HPP

#include <tuple>
#include "wps/cohomology.hpp"
#include "wps/complex.hpp"
#include "wps/koszul.hpp"

namespace wps {

// Hypothesis failure of a constructive resolution (CLI exit 3).
class VanishingError : public std::runtime_error {
  public:
    VanishingError(const std::string& what, int p, int q, Character chi)
        : std::runtime_error(what), p(p), q(q), chi(std::move(chi)) {}
    int p, q;
    Character chi;
};

// Pullback a^# = a (x)_S T along x_i -> x~_i^{a_i} (degree preserving).
GradedModule pullback_cover(const StackDescriptor& S, const GradedModule& a);

// chi -> (h^0..h^n) of H^q(P^n, Omega^p(t)) on the cover with its G-action
// (form indices carry their characters).
std::map<Character, std::vector<int>> bott_eigen(const StackDescriptor& S, int p, int t);

struct E1Key {
    int p;  // -n..0
    int q;  // 0..n
    Character chi;
    bool operator<(const E1Key& o) const {
        return std::tie(p, q, chi.residues) < std::tie(o.p, o.q, o.chi.residues);
    }
};

struct CohomologyTable {
    std::map<E1Key, int> entries;  // nonzero entries only
    int max_q_nonzero() const;
};

// E_1^{p,q} block dimensions: dim H^q(P^#, Omega^{-p}(-p) (x) a^#)^{-chi}.
// degree_bound <= 0 means "choose automatically".
CohomologyTable beilinson_E1(const StackDescriptor& S, const GradedModule& a,
                             int degree_bound = 0);

struct ResolutionCertificate {
    bool left = true;
    FreeComplex complex;        // over the weighted ring; term p at index p
    PolyMatrix augmentation;    // left: F_0 -> a (rows = a gens);
                                // right: a -> D_n (rows = D_n gens)
    CohomologyTable vanishing_table;
    StrandReport strand_report; // exactness of the augmented strands over the window
    int window_lo = 0, window_hi = 0;
};

// The section-level Beilinson resolution of a (left: under q>0 vanishing).
// Throws VanishingError when the hypothesis fails.
ResolutionCertificate left_resolution(const StackDescriptor& S, const GradedModule& a,
                                      int win_lo, int win_hi, int degree_bound = 0);

// Right resolution under q<n vanishing; a must be free (a sum of twists).
ResolutionCertificate right_resolution(const StackDescriptor& S, const GradedModule& a,
                                       int win_lo, int win_hi, int degree_bound = 0);

// For each torus-fixed point i, the least j_0 such that sums of at most
// j_0 tangent characters cover Z_{a_i} (so tensor powers of the tangent
// sheaf up to j_0 realize every stabilizer representation).
std::vector<std::pair<int, int>> stabilizer_cover(const StackDescriptor& S);

} // namespace wps

#endif
