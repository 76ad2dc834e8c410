#ifndef WPS_MONOMIAL_HPP
#define WPS_MONOMIAL_HPP

#include <vector>
#include <string>
#include <cstddef>
#include "wps/weights.hpp"

namespace wps {

// Exponent vector, one entry per variable x0..xn.
using Monomial = std::vector<int>;

// Grading data of a polynomial ring: degree of each variable plus the
// character modulus of the group action on it (all 1 = trivial action).
// S = weighted ring: degrees = weights, moduli all 1.
// T = cover ring:    degrees all 1, moduli = weights.
struct Grading {
    std::vector<int> degrees;
    std::vector<int> char_moduli;

    static Grading weighted(const WeightVector& w);   // S
    static Grading cover(const WeightVector& w);      // T

    std::size_t vars() const { return degrees.size(); }
    bool trivial_action() const;
};

int weighted_degree(const Grading& g, const Monomial& m);
Character character_of(const Grading& g, const Monomial& m);

// Monomials of weighted degree d, graded-lex (x0-major, exponent of x0
// descending first). Empty for d < 0 or when d is not representable.
std::vector<Monomial> monomial_basis(const Grading& g, int d);
int monomial_count(const Grading& g, int d);

// Index of m in monomial_basis(g, weighted_degree(m)); -1 if absent.
int monomial_index(const Grading& g, const Monomial& m);

Monomial mono_mul(const Monomial& a, const Monomial& b);
std::string mono_str(const Monomial& m);  // "x0^2*x1", "1" for the unit

} // namespace wps

#endif
