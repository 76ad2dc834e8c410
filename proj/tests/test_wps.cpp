#include "doctest.h"

#include <random>
#include "wps/beilinson.hpp"
#include "wps/resolution.hpp"

using namespace wps;

namespace {

GradedModule s_twist(const WeightVector& w, int m) {
    return GradedModule::free_module(Grading::weighted(w), {-m});
}

GradedModule s_mod_x0(const WeightVector& w, int m = 0) {
    PolyMatrix rel(1);
    rel[0] = {poly_parse("x0", w.vars())};
    GradedModule q(Grading::weighted(w), FreeModule{{0}, {}}, rel,
                   {w.weights[0]});
    return m == 0 ? q : q.twist(m);
}

long binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

} // namespace

TEST_CASE("validate_weights") {
    auto S = validate_weights(WeightVector({1, 2}));
    REQUIRE(S.characters.size() == 2);
    CHECK(S.characters[0].residues == std::vector<int>{0, 0});
    CHECK(S.characters[1].residues == std::vector<int>{0, 1});
    CHECK(S.characters[0].norm() == 0);
    CHECK(S.characters[1].norm() == 1);
    CHECK_THROWS_AS(validate_weights(WeightVector({2, 2})), ValidationError);
    auto S2 = validate_weights(WeightVector({1, 1, 2}));
    CHECK(S2.characters.size() == 2);
}

TEST_CASE("line cohomology examples") {
    auto S = validate_weights(WeightVector({1, 2}));
    CHECK(line_cohomology(S, 4) == std::vector<int>{3, 0});
    // oracle for k = -5: monomials i + 2j = 5 with i,j >= 1: (1,2),(3,1) -> 2
    CHECK(line_cohomology(S, -5) == std::vector<int>{0, 2});
    auto S2 = validate_weights(WeightVector({1, 1, 2}));
    CHECK(line_cohomology(S2, -4) == std::vector<int>{0, 0, 1});
}

TEST_CASE("serre duality for random well-formed weights") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> nd(1, 3), ad(1, 6);
    int found = 0;
    while (found < 10) {
        std::vector<int> ws(static_cast<std::size_t>(nd(rng)) + 1);
        for (auto& a : ws) a = ad(rng);
        WeightVector w(ws);
        if (!w.well_formed()) continue;
        ++found;
        auto S = validate_weights(w);
        for (int k = -12; k <= 12; ++k) {
            auto h = line_cohomology(S, k);
            auto hd = line_cohomology(S, -k - S.sigma());
            for (int q = 0; q <= S.n(); ++q)
                CHECK(h[static_cast<std::size_t>(q)] ==
                      hd[static_cast<std::size_t>(S.n() - q)]);
        }
    }
}

TEST_CASE("module cohomology of twists reduces to line cohomology") {
    auto S = validate_weights(WeightVector({1, 2}));
    for (int j : {-2, 0, 1, 3})
        for (int k = -5; k <= 5; ++k)
            CHECK(module_cohomology(S, s_twist(S.weights, j), k, 12) ==
                  line_cohomology(S, k + j));
}

TEST_CASE("module cohomology of the stacky point") {
    auto S = validate_weights(WeightVector({1, 2}));
    GradedModule pt = s_mod_x0(S.weights);
    for (int k = -6; k <= 6; ++k) {
        std::vector<int> expect{(k % 2 == 0) ? 1 : 0, 0};
        CHECK(module_cohomology(S, pt, k, 12) == expect);
    }
}

TEST_CASE("module cohomology of a finite-length module vanishes") {
    // irrelevant-ideal quotient: sheaf is zero, so all h^q = 0
    WeightVector w({1, 1});
    PolyMatrix rel(1);
    rel[0] = {poly_parse("x0", 2), poly_parse("x1", 2)};
    GradedModule k(Grading::weighted(w), FreeModule{{0}, {}}, rel, {1, 1});
    auto S = validate_weights(w);
    for (int t = -3; t <= 3; ++t)
        CHECK(module_cohomology(S, k, t, 10) == std::vector<int>{0, 0});
}

TEST_CASE("eigensheaf rank identity") {
    for (auto wv : {std::vector<int>{1, 2}, {1, 1, 2}, {2, 3}}) {
        WeightVector w(wv);
        Grading s = Grading::weighted(w), t = Grading::cover(w);
        for (int k = 0; k <= 10; ++k) {
            int lhs = 0;
            for (const auto& chi : all_characters(w)) lhs += monomial_count(s, k - chi.norm());
            CHECK(lhs == monomial_count(t, k));
        }
    }
}

TEST_CASE("bott_eigen on straight projective lines and planes") {
    auto S1 = validate_weights(WeightVector({1, 1}));
    auto b = bott_eigen(S1, 1, 2);
    REQUIRE(b.size() == 1);
    CHECK(b.begin()->second == std::vector<int>{1, 0});

    auto S2 = validate_weights(WeightVector({1, 1, 1}));
    auto b2 = bott_eigen(S2, 1, 2);
    int h0 = 0, rest = 0;
    for (auto& [chi, hv] : b2) {
        h0 += hv[0];
        rest += hv[1] + hv[2];
    }
    CHECK(h0 == 3);
    CHECK(rest == 0);
}

TEST_CASE("bott_eigen H^1(Omega^1) carries the trivial character") {
    // On the cover of P(1,2): the class of Omega^1 is Aut-invariant, so with the
    // form indices carrying their characters the eigenvalue is trivial. (The
    // K-theory reconstruction in the acceptance suite pins this convention.)
    auto S = validate_weights(WeightVector({1, 2}));
    auto b = bott_eigen(S, 1, 0);
    REQUIRE(b.size() == 1);
    CHECK(b.begin()->first.residues == std::vector<int>{0, 0});
    CHECK(b.begin()->second == std::vector<int>{0, 1});
}

TEST_CASE("bott character completeness") {
    // character-blind sums match the classical Bott numbers
    for (auto wv : {std::vector<int>{1, 1, 2}, {2, 3, 5}}) {
    auto S2 = validate_weights(WeightVector(wv));
    int n = 2;
    for (int p = 0; p <= n; ++p)
        for (int t = -4; t <= 4; ++t) {
            std::vector<int> total(static_cast<std::size_t>(n) + 1, 0);
            for (auto& [chi, hv] : bott_eigen(S2, p, t))
                for (int q = 0; q <= n; ++q) total[static_cast<std::size_t>(q)] += hv[static_cast<std::size_t>(q)];
            // Bott: h^0 = C(t-1,p)C(t+n-p,n) for t > p; h^p(Omega^p) = 1 at t=0;
            // h^n dual; all else zero.
            std::vector<int> expect(static_cast<std::size_t>(n) + 1, 0);
            if (t > p) expect[0] = static_cast<int>(binom(t - 1, p) * binom(t + n - p, t));
            if (t == 0) expect[static_cast<std::size_t>(p)] = 1;
            if (-t > n - p)
                expect[static_cast<std::size_t>(n)] =
                    static_cast<int>(binom(-t - 1, n - p) * binom(-t + p, -t));
            CHECK(total == expect);
        }
    }
}

TEST_CASE("bott p=0 q=0 count") {
    auto S = validate_weights(WeightVector({1, 1, 1}));
    for (int t = 0; t <= 4; ++t) {
        int h0 = 0;
        for (auto& [chi, hv] : bott_eigen(S, 0, t)) h0 += hv[0];
        CHECK(h0 == static_cast<int>(binom(2 + t, 2)));
    }
}

TEST_CASE("beilinson_E1 for the structure sheaf") {
    auto S1 = validate_weights(WeightVector({1, 1}));
    auto t = beilinson_E1(S1, s_twist(S1.weights, 0));
    REQUIRE(t.entries.size() == 1);
    auto key = t.entries.begin()->first;
    CHECK(key.p == 0);
    CHECK(key.q == 0);
    CHECK(key.chi.norm() == 0);
    CHECK(t.entries.begin()->second == 1);

    auto S12 = validate_weights(WeightVector({1, 2}));
    auto t2 = beilinson_E1(S12, s_twist(S12.weights, 0));
    REQUIRE(t2.entries.size() == 1);
    CHECK(t2.entries.begin()->first.p == 0);
    CHECK(t2.entries.begin()->first.q == 0);
    CHECK(t2.entries.begin()->first.chi.trivial());

    GradedModule zero(Grading::weighted(S12.weights), FreeModule{{}, {}}, PolyMatrix{}, {});
    CHECK(beilinson_E1(S12, zero).entries.empty());
}

TEST_CASE("beilinson_E1 of twists matches bott_eigen") {
    auto S = validate_weights(WeightVector({1, 2}));
    for (int m : {1, 2, -1}) {
        auto table = beilinson_E1(S, s_twist(S.weights, m));
        for (int pp = 0; pp <= 1; ++pp) {
            auto bott = bott_eigen(S, pp, pp + m);
            std::map<E1Key, int> expect;
            for (auto& [chi, hv] : bott)
                for (int q = 0; q <= 1; ++q)
                    if (hv[static_cast<std::size_t>(q)] != 0)
                        expect[{-pp, q, char_neg(chi, S.weights)}] =
                            hv[static_cast<std::size_t>(q)];
            for (auto& [key, v] : expect) {
                REQUIRE(table.entries.count(key));
                CHECK(table.entries.at(key) == v);
            }
            for (auto& [key, v] : table.entries)
                if (key.p == -pp) CHECK(expect.count(key));
        }
    }
    // one P^2-cover case: w=(1,1,2), a = S(1)
    auto S3 = validate_weights(WeightVector({1, 1, 2}));
    for (int m : {1}) {
        auto table = beilinson_E1(S3, s_twist(S3.weights, m));
        for (int pp = 0; pp <= 2; ++pp) {
            auto bott = bott_eigen(S3, pp, pp + m);
            std::map<E1Key, int> expect;
            for (auto& [chi, hv] : bott)
                for (int q = 0; q <= 2; ++q)
                    if (hv[static_cast<std::size_t>(q)] != 0)
                        expect[{-pp, q, char_neg(chi, S3.weights)}] =
                            hv[static_cast<std::size_t>(q)];
            for (auto& [key, v] : expect) {
                REQUIRE(table.entries.count(key));
                CHECK(table.entries.at(key) == v);
            }
            for (auto& [key, v] : table.entries)
                if (key.p == -pp) CHECK(expect.count(key));
        }
    }
}

TEST_CASE("K-theory reconstruction for w=(1,2)") {
    auto S = validate_weights(WeightVector({1, 2}));
    struct Case {
        GradedModule a;
        const char* name;
    };
    std::vector<GradedModule> cases;
    cases.push_back(s_twist(S.weights, 0));
    cases.push_back(s_twist(S.weights, 1));
    cases.push_back(s_twist(S.weights, -1));
    cases.push_back(s_mod_x0(S.weights));
    cases.push_back(s_mod_x0(S.weights, 1));
    for (const auto& a : cases) {
        auto table = beilinson_E1(S, a);
        for (int k = -4; k <= 4; ++k) {
            long lhs = chi_euler(S, a, k, 14);
            long rhs = 0;
            for (auto& [key, v] : table.entries) {
                int sign = ((key.p + key.q) % 2 == 0) ? 1 : -1;
                rhs += sign * v * chi_euler_line(S, key.p - key.chi.norm() + k);
            }
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("left resolution on P^1") {
    auto S = validate_weights(WeightVector({1, 1}));
    auto cert = left_resolution(S, s_twist(S.weights, 2), 0, 10);
    CHECK(cert.strand_report.pass);
    CHECK(cert.complex.term(0).size() == 3);
    CHECK(cert.complex.term(1).size() == 2);
    CHECK(cert.complex.term(0).twists == std::vector<int>{0, 0, 0});
    CHECK(cert.complex.term(1).twists == std::vector<int>{1, 1});
    CHECK(check_complex(cert.complex).ok);

    auto cert0 = left_resolution(S, s_twist(S.weights, 0), 0, 8);
    CHECK(cert0.strand_report.pass);
    CHECK(cert0.complex.term(0).size() == 1);
    CHECK(cert0.complex.term(1).size() == 0);
}

TEST_CASE("left resolution vanishing failure raises exit-3 data") {
    auto S = validate_weights(WeightVector({1, 1}));
    try {
        left_resolution(S, s_twist(S.weights, -1), 0, 6);
        FAIL("expected VanishingError");
    } catch (const VanishingError& e) {
        CHECK(e.p == -1);
        CHECK(e.q == 1);
        CHECK(e.chi.trivial());
    }
}

TEST_CASE("left resolution on P(1,2)") {
    auto S = validate_weights(WeightVector({1, 2}));
    auto cert = left_resolution(S, s_twist(S.weights, 3), 0, 8);
    CHECK(cert.strand_report.pass);
    CHECK(check_complex(cert.complex).ok);
    // H dims from the prototype: term p=0 gets 4 generators, p=1 gets 3
    CHECK(cert.complex.term(0).size() == 4);
    CHECK(cert.complex.term(1).size() == 3);
    // twists p + |-chi|: H_0 basis = monomials of T_3 (chars 0,1,0,1);
    // H_1 basis is grouped by character: (0,0) then the two (0,1)s
    CHECK(cert.complex.term(0).twists == std::vector<int>{0, 1, 0, 1});
    CHECK(cert.complex.term(1).twists == std::vector<int>{1, 2, 2});
}

TEST_CASE("left resolution of a module (stacky point)") {
    auto S = validate_weights(WeightVector({1, 2}));
    GradedModule pt = s_mod_x0(S.weights, 0);
    auto cert = left_resolution(S, pt, 0, 8);
    CHECK(cert.strand_report.pass);
    CHECK(check_complex(cert.complex).ok);
}

TEST_CASE("right resolution on P^1") {
    auto S = validate_weights(WeightVector({1, 1}));
    auto cert = right_resolution(S, s_twist(S.weights, -2), 1, 8);
    CHECK(cert.strand_report.pass);
    CHECK(check_complex(cert.complex).ok);
    CHECK(cert.complex.term(1).size() == 2);  // O(-1)^2
    CHECK(cert.complex.term(0).size() == 1);  // O (x) H^1(O(-2))
    CHECK(cert.complex.term(1).twists == std::vector<int>{1, 1});
    CHECK(cert.complex.term(0).twists == std::vector<int>{0});

    // strand 0 genuinely fails (sections are left exact): document N0 = 1
    auto low = right_resolution(S, s_twist(S.weights, -2), 0, 0);
    CHECK_FALSE(low.strand_report.pass);
}

TEST_CASE("right resolution on P(1,2)") {
    auto S = validate_weights(WeightVector({1, 2}));
    auto cert = right_resolution(S, s_twist(S.weights, -3), 2, 8);
    CHECK(cert.strand_report.pass);
    CHECK(check_complex(cert.complex).ok);
    CHECK(cert.complex.term(1).size() == 3);
    CHECK(cert.complex.term(0).size() == 2);
}

TEST_CASE("left and right resolutions are dual shapes") {
    auto S = validate_weights(WeightVector({1, 1}));
    auto left = left_resolution(S, s_twist(S.weights, 2), 0, 8);
    auto right = right_resolution(S, s_twist(S.weights, -2 - S.n()), 1, 8);
    // left of S(2): terms (3, 2); right of S(-3): terms (D_1, D_0) = (3, 2)
    CHECK(left.complex.term(0).size() == right.complex.term(1).size());
    CHECK(left.complex.term(1).size() == right.complex.term(0).size());
}

TEST_CASE("right resolution needs dual vanishing") {
    auto S = validate_weights(WeightVector({1, 1}));
    CHECK_THROWS_AS(right_resolution(S, s_twist(S.weights, 1), 0, 6), VanishingError);
}

TEST_CASE("stabilizer cover") {
    auto S = validate_weights(WeightVector({1, 2}));
    auto cov = stabilizer_cover(S);
    REQUIRE(cov.size() == 2);
    CHECK(cov[0] == std::pair<int, int>{0, 0});
    CHECK(cov[1] == std::pair<int, int>{1, 1});

    auto S1 = validate_weights(WeightVector({1, 1, 1}));
    for (auto& [i, j0] : stabilizer_cover(S1)) CHECK(j0 == 0);

    auto S23 = validate_weights(WeightVector({2, 3}));
    auto cov23 = stabilizer_cover(S23);
    CHECK(cov23[1] == std::pair<int, int>{1, 2});  // mu_3, tangent {2}: needs two steps
    CHECK(cov23[0] == std::pair<int, int>{0, 1});  // mu_2, tangent {1}: one step
}

TEST_CASE("left resolution rejects presentations that hide sections") {
    // the point sheaf twisted by -2: its sections live below the presentation's
    // degree range, so the construction must refuse rather than resolve the
    // truncation
    auto S = validate_weights(WeightVector({1, 2}));
    GradedModule pt = s_mod_x0(S.weights);
    CHECK_THROWS_AS(left_resolution(S, pt.twist(-2), 0, 8), ValidationError);
    auto cert = left_resolution(S, pt.twist(2), 0, 8);
    CHECK(cert.strand_report.pass);
}

TEST_CASE("cover cohomology of a thickened point splits by character") {
    WeightVector w({1, 2});
    Grading tr = Grading::cover(w);
    PolyMatrix rel(1);
    rel[0] = {poly_parse("x0^2", 2)};
    GradedModule thick(tr, FreeModule{{0}, {char_zero(w)}}, rel, {2});
    for (int k = -2; k <= 2; ++k) {
        auto coh = module_cohomology_cover(w, thick.twist(k), 0, 12);
        int h0 = 0, h1 = 0;
        for (auto& [chi, hv] : coh) {
            h0 += hv[0];
            h1 += hv[1];
        }
        CHECK(h0 == 2);  // length-two point: one section in each character
        CHECK(h1 == 0);
        CHECK(coh.size() == 2);
    }
}

TEST_CASE("bott numbers on P^3") {
    auto S = validate_weights(WeightVector({1, 1, 1, 1}));
    auto total = [&](int p, int t) {
        std::vector<int> tot(4, 0);
        for (auto& [chi, hv] : bott_eigen(S, p, t))
            for (int q = 0; q <= 3; ++q) tot[static_cast<std::size_t>(q)] += hv[static_cast<std::size_t>(q)];
        return tot;
    };
    CHECK(total(0, 2) == std::vector<int>{10, 0, 0, 0});
    CHECK(total(1, 2) == std::vector<int>{6, 0, 0, 0});
    CHECK(total(1, 0) == std::vector<int>{0, 1, 0, 0});
    CHECK(total(2, 0) == std::vector<int>{0, 0, 1, 0});
    CHECK(total(2, -2) == std::vector<int>{0, 0, 0, 6});
    CHECK(total(3, -1) == std::vector<int>{0, 0, 0, 4});
    CHECK(total(3, 0) == std::vector<int>{0, 0, 0, 1});
    CHECK(total(1, 1) == std::vector<int>{0, 0, 0, 0});
}
