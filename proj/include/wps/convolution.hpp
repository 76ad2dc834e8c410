#ifndef WPS_CONVOLUTION_HPP
#define WPS_CONVOLUTION_HPP

#include <vector>
#include "wps/complex.hpp"

namespace wps {

struct DegreeWindow {
    int lo = 0;
    int hi = 0;
    bool contains(int d) const { return lo <= d && d <= hi; }
};

// dim Hom_D(F, G[r]) summed over the internal-degree strands in the window,
// computed as homology of the Hom complex (both complexes bounded frees).
int hom_derived(const FreeComplex& F, const FreeComplex& G, int r, DegreeWindow window);

struct HypothesisRow {
    int p, q, r;
    int dim;  // dim Hom(a_p[r], a_q) over the window
};

enum class Bracketing { IteratedCone, Totalization };

struct ConvolutionTrace {
    FreeComplex result;
    std::vector<FreeComplex> intermediates;  // the a'_p of the induction, in order
    std::vector<HypothesisRow> hypothesis_report;
    bool hypothesis_ok = true;               // condition Hom(a_p[r], a_q) = 0, p>q, r>0
    DegreeWindow window;
};

// Strict complex of complexes: maps[p] : seq[p] -> seq[p-1] for p = 1..m with
// maps[p-1] o maps[p] = 0 exactly. seq[p] is the object a_p.
// Right convolution: iterated cones, a_0 unchanged; result ~ totalization with
// a_p placed at chain index p.
ConvolutionTrace right_convolution(const std::vector<FreeComplex>& seq,
                                   const std::vector<ChainMap>& maps,
                                   DegreeWindow window, int r_max = -1,
                                   Bracketing order = Bracketing::IteratedCone);

// Left convolution: result ~ totalization shifted so a_m sits at chain index 0.
ConvolutionTrace left_convolution(const std::vector<FreeComplex>& seq,
                                  const std::vector<ChainMap>& maps,
                                  DegreeWindow window, int r_max = -1);

// Direct totalization with a_p placed at chain index p + shift;
// differential = d_internal + (-1)^p d_external.
FreeComplex totalization(const std::vector<FreeComplex>& seq,
                         const std::vector<ChainMap>& maps, int shift = 0);

} // namespace wps

#endif
