#ifndef WPS_POLY_HPP
#define WPS_POLY_HPP

#include <map>
#include <functional>
#include <string>
#include <optional>
#include "wps/monomial.hpp"
#include "wps/matrix.hpp"

namespace wps {

// Sparse polynomial; term order is descending lex (x0-major), so the leading
// term of a homogeneous polynomial prints first.
class Polynomial {
  public:
    using TermMap = std::map<Monomial, Rational, std::greater<Monomial>>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
    static Polynomial zero(std::size_t nvars) { return Polynomial(nvars); }
    static Polynomial constant(std::size_t nvars, const Rational& c);
    static Polynomial monomial(const Monomial& m, const Rational& c = Rational(1));
    static Polynomial variable(std::size_t nvars, std::size_t i);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    void add_term(const Monomial& m, const Rational& c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    Polynomial operator-() const;
    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

    // Weighted degree if homogeneous (zero polynomial reports any degree it is
    // asked about, so callers treat nullopt as "inhomogeneous").
    std::optional<int> homogeneous_degree(const Grading& g) const;
    bool is_homogeneous_of(const Grading& g, int d) const;
    // Pure character if the action grading is nontrivial (nullopt if mixed).
    std::optional<Character> pure_character(const Grading& g) const;

    std::string str() const;

  private:
    std::size_t nvars_ = 0;
    TermMap terms_;
};

// Parse "3*x0^2*x1 - 1/2*x2^3" (coefficients integer or rational, operators
// + - * ^, variables x0..x{nvars-1}). Throws std::invalid_argument.
Polynomial poly_parse(const std::string& text, std::size_t nvars);

// Matrix of multiplication by homogeneous f from the degree-d basis to the
// degree-(d+e) basis, e = deg f. Throws on inhomogeneous multiplier.
Matrix mult_map(const Grading& g, const Polynomial& f, int d);

// Coefficient vector of a homogeneous polynomial on the degree-d monomial basis.
std::vector<Rational> poly_coords(const Grading& g, const Polynomial& f, int d);
// Inverse of poly_coords.
Polynomial poly_from_coords(const Grading& g, const std::vector<Rational>& v, int d);

} // namespace wps

#endif
