#include "wps/monomial.hpp"

#include <sstream>
#include <stdexcept>
#include <algorithm>

namespace wps {

Grading Grading::weighted(const WeightVector& w) {
    return Grading{w.weights, std::vector<int>(w.vars(), 1)};
}

Grading Grading::cover(const WeightVector& w) {
    return Grading{std::vector<int>(w.vars(), 1), w.weights};
}

bool Grading::trivial_action() const {
    return std::all_of(char_moduli.begin(), char_moduli.end(), [](int m) { return m == 1; });
}

int weighted_degree(const Grading& g, const Monomial& m) {
    int d = 0;
    for (std::size_t i = 0; i < g.vars(); ++i) d += g.degrees[i] * m[i];
    return d;
}

Character character_of(const Grading& g, const Monomial& m) {
    Character c{std::vector<int>(g.vars(), 0)};
    for (std::size_t i = 0; i < g.vars(); ++i) {
        int r = m[i] % g.char_moduli[i];
        if (r < 0) r += g.char_moduli[i];
        c.residues[i] = r;
    }
    return c;
}

namespace {
void enumerate(const Grading& g, std::size_t i, int rem, Monomial& cur,
               std::vector<Monomial>& out) {
    if (i + 1 == g.vars()) {
        if (rem >= 0 && rem % g.degrees[i] == 0) {
            cur[i] = rem / g.degrees[i];
            out.push_back(cur);
        }
        return;
    }
    for (int e = rem / g.degrees[i]; e >= 0; --e) {
        cur[i] = e;
        enumerate(g, i + 1, rem - e * g.degrees[i], cur, out);
    }
    cur[i] = 0;
}
} // namespace

std::vector<Monomial> monomial_basis(const Grading& g, int d) {
    std::vector<Monomial> out;
    if (d < 0) return out;
    Monomial cur(g.vars(), 0);
    enumerate(g, 0, d, cur, out);
    return out;
}

int monomial_count(const Grading& g, int d) {
    if (d < 0) return 0;
    // coefficient of t^d in prod 1/(1-t^{deg_i}), by truncated series arithmetic
    std::vector<long long> series(d + 1, 0);
    series[0] = 1;
    for (std::size_t i = 0; i < g.vars(); ++i) {
        int a = g.degrees[i];
        for (int k = a; k <= d; ++k) series[k] += series[k - a];
    }
    return static_cast<int>(series[d]);
}

int monomial_index(const Grading& g, const Monomial& m) {
    auto basis = monomial_basis(g, weighted_degree(g, m));
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == m) return static_cast<int>(i);
    return -1;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

std::string mono_str(const Monomial& m) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!first) os << "*";
        os << "x" << i;
        if (m[i] > 1) os << "^" << m[i];
        first = false;
    }
    if (first) return "1";
    return os.str();
}

} // namespace wps
