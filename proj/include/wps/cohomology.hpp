#ifndef WPS_COHOMOLOGY_HPP
#define WPS_COHOMOLOGY_HPP

#include <stdexcept>
#include "wps/module.hpp"

namespace wps {

class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Weighted projective stack P(a_0,...,a_n) with its character group.
struct StackDescriptor {
    WeightVector weights;
    std::vector<Character> characters;  // lexicographic on residues

    int n() const { return weights.n(); }
    int sigma() const { return weights.sigma(); }
    Grading sring() const { return Grading::weighted(weights); }  // S
    Grading tring() const { return Grading::cover(weights); }     // T upstairs
};

// Throws ValidationError naming the offending subset if not well formed.
StackDescriptor validate_weights(const WeightVector& w);

// (h^0,...,h^n) of O_P(k): h^0 = dim S_k, h^n = dim S_{-k-sigma}, middle zero.
std::vector<int> line_cohomology(const StackDescriptor& S, int k);

// (h^0,...,h^n) of the sheaf of M twisted by k, via a bounded free resolution
// and graded local duality with omega = S(-sigma). The degree bound controls
// the syzygy window and must accommodate the presentation.
std::vector<int> module_cohomology(const StackDescriptor& S, const GradedModule& M,
                                   int k, int degree_bound);

// Per-character sheaf cohomology on the cover model: W a module over T
// (cover grading of w), returns chi -> (h^0,...,h^n) of W~(k) as G-eigenspaces.
std::map<Character, std::vector<int>> module_cohomology_cover(const WeightVector& w,
                                                              const GradedModule& W,
                                                              int k, int degree_bound);

// Euler characteristic from module_cohomology (exact integer).
long chi_euler(const StackDescriptor& S, const GradedModule& M, int k, int degree_bound);
long chi_euler_line(const StackDescriptor& S, int k);

} // namespace wps

#endif
