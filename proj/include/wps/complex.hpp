#ifndef WPS_COMPLEX_HPP
#define WPS_COMPLEX_HPP

#include <map>
#include <string>
#include "wps/module.hpp"

namespace wps {

// Bounded chain complex of graded free modules; d_i : C_i -> C_{i-1}.
struct FreeComplex {
    Grading ring;
    std::map<int, FreeModule> terms;
    std::map<int, PolyMatrix> diffs;  // keyed by source index i

    bool empty() const { return terms.empty(); }
    int lo() const;
    int hi() const;
    const FreeModule& term(int i) const;  // empty free module when absent
    int term_dim(int i, int d) const;
    // Matrix of d_i at internal degree d (zero matrix when either term is absent).
    Matrix strand(int i, int d) const;

    FreeComplex shifted(int s) const;  // chain shift: (F[s])_i = F_{i-s}, d scaled by (-1)^s
    FreeComplex twisted(int t) const;  // all generator twists shifted by t
};

struct ComplexVerdict {
    bool ok = true;
    std::string message;       // first offence, empty when ok
    int index = 0;             // source index of the offending differential
};

// d o d = 0 as exact polynomial identity + homogeneity of all entries.
ComplexVerdict check_complex(const FreeComplex& f);

// Exact polynomial matrix product (rows(a) x cols(b)).
PolyMatrix poly_mat_mul(const PolyMatrix& a, const PolyMatrix& b, std::size_t nvars);

struct ChainMap {
    const FreeComplex* source;
    const FreeComplex* target;
    std::map<int, PolyMatrix> parts;  // i -> matrix source_i -> target_i
    int twist = 0;                    // allows maps into twisted targets

    void validate() const;  // homogeneity + exact commutation with differentials
};

// Mapping cone: cone(f)_i = source_{i-1} (+) target_i with
// d = [[-d_source, 0], [f, d_target]].
FreeComplex cone(const ChainMap& f);

// dim ker/im of the internal-degree-d strand at homological index i.
int homology_strand(const FreeComplex& f, int i, int d);

// One-term complex S(-t) placed at index 0.
FreeComplex single_free(const Grading& g, int t, int at_index = 0);

} // namespace wps

#endif
