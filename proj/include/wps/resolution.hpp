#ifndef WPS_RESOLUTION_HPP
#define WPS_RESOLUTION_HPP

#include <stdexcept>
#include "wps/complex.hpp"

namespace wps {

// Raised when a degree window is too small to finish a computation.
class BoundExhausted : public std::runtime_error {
  public:
    BoundExhausted(const std::string& what, int degree_reached)
        : std::runtime_error(what), degree_reached(degree_reached) {}
    int degree_reached;
};

struct Resolution {
    FreeComplex complex;   // F_0 at homological index 0
    bool complete = false; // last kernel vanished in every degree <= bound
    int length = 0;        // highest index with a nonzero term
    // augmentation F_0 -> M: generator j maps to the stored element of M
    std::vector<std::pair<int, std::size_t>> aug_targets; // (degree, M-basis index)
};

// Minimal free resolution computed degreewise up to degree_bound, at most
// max_steps syzygy steps. Generators are chosen as complements of S_+ * ker,
// so differentials carry no unit entries. Throws BoundExhausted when the
// presentation itself does not fit under the bound.
Resolution free_resolution(const GradedModule& M, int max_steps, int degree_bound);

} // namespace wps

#endif
