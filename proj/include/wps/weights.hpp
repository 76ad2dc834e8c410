#ifndef WPS_WEIGHTS_HPP
#define WPS_WEIGHTS_HPP

#include <vector>
#include <string>
#include <optional>
#include <cstddef>

namespace wps {

// Weight vector (a_0,...,a_n) of a weighted projective stack P(a_0,...,a_n).
struct WeightVector {
    std::vector<int> weights;

    explicit WeightVector(std::vector<int> w);

    int n() const { return static_cast<int>(weights.size()) - 1; }
    int sigma() const;               // sum of the weights
    std::size_t vars() const { return weights.size(); }

    // Well formed: every n of the n+1 weights are coprime.
    // Returns the offending index set (complement index) if not.
    std::optional<std::size_t> well_formed_violation() const;
    bool well_formed() const { return !well_formed_violation().has_value(); }

    std::string str() const;
};

// A character of G = mu_{a_0} x ... x mu_{a_n}: canonical residues 0 <= chi_i < a_i.
struct Character {
    std::vector<int> residues;

    int norm() const;                          // |chi| = sum of residues
    std::vector<int> support() const;          // indices with chi_i != 0
    bool trivial() const { return norm() == 0; }
    bool operator==(const Character& o) const { return residues == o.residues; }
    bool operator<(const Character& o) const { return residues < o.residues; }
    std::string str() const;
};

Character char_zero(const WeightVector& w);
Character char_add(const Character& a, const Character& b, const WeightVector& w);
Character char_neg(const Character& a, const WeightVector& w);
// Full character group, lexicographic on residues.
std::vector<Character> all_characters(const WeightVector& w);

} // namespace wps

#endif
