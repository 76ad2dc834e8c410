#ifndef WPS_RATIONAL_HPP
#define WPS_RATIONAL_HPP

#include <gmpxx.h>
#include <string>
#include <stdexcept>

namespace wps {

// Exact rational scalar. mpq_class keeps values canonical (reduced, positive
// denominator) as long as construction goes through these helpers.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "7", "-3/4", "12/8" (reduced on the way in).
inline Rational rat_parse(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    if (r.get_den() <= 0) throw std::invalid_argument("bad rational literal: " + s);
    return r;
}

inline std::string rat_str(const Rational& r) { return r.get_str(); }

} // namespace wps

#endif
