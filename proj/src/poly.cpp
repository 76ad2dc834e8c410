#include "wps/poly.hpp"

#include <sstream>
#include <stdexcept>
#include <cctype>

namespace wps {

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
    Polynomial p(m.size());
    p.add_term(m, c);
    return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
    Monomial m(nvars, 0);
    m[i] = 1;
    return monomial(m);
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r(nvars_);
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) r.add_term(mono_mul(m1, m2), c1 * c2);
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial r(nvars_);
    if (c == 0) return r;
    for (const auto& [m, v] : terms_) r.add_term(m, v * c);
    return r;
}

Polynomial Polynomial::operator-() const { return *this * Rational(-1); }

std::optional<int> Polynomial::homogeneous_degree(const Grading& g) const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
        int dm = weighted_degree(g, m);
        if (!d)
            d = dm;
        else if (*d != dm)
            return std::nullopt;
    }
    return d;
}

bool Polynomial::is_homogeneous_of(const Grading& g, int d) const {
    if (is_zero()) return true;
    auto hd = homogeneous_degree(g);
    return hd && *hd == d;
}

std::optional<Character> Polynomial::pure_character(const Grading& g) const {
    std::optional<Character> c;
    for (const auto& [m, v] : terms_) {
        Character cm = character_of(g, m);
        if (!c)
            c = cm;
        else if (!(*c == cm))
            return std::nullopt;
    }
    if (!c) return Character{std::vector<int>(g.vars(), 0)};
    return c;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        std::string ms = mono_str(m);
        if (ms == "1") {
            os << rat_str(a);
        } else {
            if (a != 1) os << rat_str(a) << "*";
            os << ms;
        }
        first = false;
    }
    return os.str();
}

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    std::size_t nvars;

    explicit Parser(const std::string& text, std::size_t nv) : s(text), nvars(nv) {}

    void skip() { while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos; }
    bool done() { skip(); return pos >= s.size(); }
    char peek() { skip(); return pos < s.size() ? s[pos] : '\0'; }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("polynomial parse error at position " +
                                    std::to_string(pos) + ": " + what);
    }

    long long integer() {
        skip();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected integer");
        return std::stoll(s.substr(start, pos - start));
    }

    Rational coefficient() {
        long long num = integer();
        if (eat('/')) {
            long long den = integer();
            if (den == 0) fail("zero denominator");
            return rat(num, den);
        }
        return Rational(static_cast<long>(num));
    }

    // factor := coefficient | x<k> [^ int]
    Polynomial factor() {
        skip();
        if (pos < s.size() && (s[pos] == 'x' || s[pos] == 'X')) {
            ++pos;
            long long idx = integer();
            if (idx < 0 || static_cast<std::size_t>(idx) >= nvars)
                fail("variable index out of range: x" + std::to_string(idx));
            int exp = 1;
            if (eat('^')) {
                long long e = integer();
                if (e < 0) fail("negative exponent");
                exp = static_cast<int>(e);
            }
            Monomial m(nvars, 0);
            m[static_cast<std::size_t>(idx)] = exp;
            return Polynomial::monomial(m);
        }
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            return Polynomial::constant(nvars, coefficient());
        fail("expected coefficient or variable");
    }

    Polynomial term() {
        Polynomial p = factor();
        while (eat('*')) p = p * factor();
        return p;
    }

    Polynomial expr() {
        Polynomial p(nvars);
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        Polynomial t = term();
        p = neg ? -t : t;
        while (!done()) {
            if (eat('+')) p = p + term();
            else if (eat('-')) p = p - term();
            else fail("expected + or -");
        }
        return p;
    }
};

} // namespace

Polynomial poly_parse(const std::string& text, std::size_t nvars) {
    Parser parser(text, nvars);
    if (parser.done()) throw std::invalid_argument("empty polynomial text");
    return parser.expr();
}

Matrix mult_map(const Grading& g, const Polynomial& f, int d) {
    auto e = f.homogeneous_degree(g);
    if (!e) throw std::invalid_argument("inhomogeneous multiplier");
    auto src = monomial_basis(g, d);
    auto tgt = monomial_basis(g, d + (f.is_zero() ? 0 : *e));
    std::map<Monomial, std::size_t> pos;
    for (std::size_t i = 0; i < tgt.size(); ++i) pos[tgt[i]] = i;
    Matrix M(tgt.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j)
        for (const auto& [m, c] : f.terms()) {
            auto it = pos.find(mono_mul(m, src[j]));
            if (it == pos.end()) throw std::logic_error("multiplication left the basis");
            M.at(it->second, j) += c;
        }
    return M;
}

std::vector<Rational> poly_coords(const Grading& g, const Polynomial& f, int d) {
    auto basis = monomial_basis(g, d);
    std::map<Monomial, std::size_t> pos;
    for (std::size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = i;
    std::vector<Rational> v(basis.size(), Rational(0));
    for (const auto& [m, c] : f.terms()) {
        auto it = pos.find(m);
        if (it == pos.end())
            throw std::invalid_argument("polynomial not homogeneous of degree " + std::to_string(d));
        v[it->second] = c;
    }
    return v;
}

Polynomial poly_from_coords(const Grading& g, const std::vector<Rational>& v, int d) {
    auto basis = monomial_basis(g, d);
    Polynomial p(g.vars());
    for (std::size_t i = 0; i < basis.size() && i < v.size(); ++i)
        if (v[i] != 0) p.add_term(basis[i], v[i]);
    return p;
}

} // namespace wps
