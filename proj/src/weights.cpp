#include "wps/weights.hpp"

#include <numeric>
#include <stdexcept>
#include <sstream>

namespace wps {

WeightVector::WeightVector(std::vector<int> w) : weights(std::move(w)) {
    if (weights.size() < 2) throw std::invalid_argument("need at least two weights");
    for (int a : weights)
        if (a < 1) throw std::invalid_argument("weights must be positive");
}

int WeightVector::sigma() const {
    int s = 0;
    for (int a : weights) s += a;
    return s;
}

std::optional<std::size_t> WeightVector::well_formed_violation() const {
    // Every n of the n+1 weights must be coprime. For n = 1 the subsets are
    // singletons, where the usable condition is coprimality of the pair
    // (the stacky football P(a,b) with gcd(a,b) = 1).
    if (weights.size() == 2)
        return std::gcd(weights[0], weights[1]) == 1 ? std::nullopt
                                                     : std::optional<std::size_t>(0);
    for (std::size_t skip = 0; skip < weights.size(); ++skip) {
        int g = 0;
        for (std::size_t i = 0; i < weights.size(); ++i)
            if (i != skip) g = std::gcd(g, weights[i]);
        if (g != 1) return skip;
    }
    return std::nullopt;
}

std::string WeightVector::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < weights.size(); ++i)
        os << (i ? "," : "") << weights[i];
    os << ")";
    return os.str();
}

int Character::norm() const {
    int s = 0;
    for (int r : residues) s += r;
    return s;
}

std::vector<int> Character::support() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < residues.size(); ++i)
        if (residues[i] != 0) out.push_back(static_cast<int>(i));
    return out;
}

std::string Character::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < residues.size(); ++i)
        os << (i ? "," : "") << residues[i];
    os << ")";
    return os.str();
}

Character char_zero(const WeightVector& w) {
    return Character{std::vector<int>(w.vars(), 0)};
}

Character char_add(const Character& a, const Character& b, const WeightVector& w) {
    Character c = char_zero(w);
    for (std::size_t i = 0; i < w.vars(); ++i)
        c.residues[i] = (a.residues[i] + b.residues[i]) % w.weights[i];
    return c;
}

Character char_neg(const Character& a, const WeightVector& w) {
    Character c = char_zero(w);
    for (std::size_t i = 0; i < w.vars(); ++i)
        c.residues[i] = (w.weights[i] - a.residues[i] % w.weights[i]) % w.weights[i];
    return c;
}

std::vector<Character> all_characters(const WeightVector& w) {
    std::vector<Character> out;
    Character cur = char_zero(w);
    while (true) {
        out.push_back(cur);
        int i = static_cast<int>(w.vars()) - 1;
        while (i >= 0) {
            if (++cur.residues[i] < w.weights[i]) break;
            cur.residues[i] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return out;
}

} // namespace wps
