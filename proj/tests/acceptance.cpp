// Acceptance suite: one line per criterion, exit nonzero if any fails.
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "wps/beilinson.hpp"
#include "wps/convolution.hpp"
#include "wps/jobs.hpp"
#include "wps/koszul.hpp"

using namespace wps;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void verdict(int num, const std::string& what, bool ok, const std::string& extra = "") {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << num << ": " << what;
    if (!extra.empty()) std::cout << " [" << extra << "]";
    std::cout << std::endl;
    if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

GradedModule s_twist(const WeightVector& w, int m) {
    return GradedModule::free_module(Grading::weighted(w), {-m});
}

std::shared_ptr<GradedAlgebra> poly_ring(std::vector<int> w) {
    return std::make_shared<GradedAlgebra>(Grading::weighted(WeightVector(std::move(w))),
                                           std::vector<Polynomial>{});
}

// ---------- criterion 1 ----------
void criterion1() {
    auto S = validate_weights(WeightVector({1, 1}));
    bool ok = true;
    double worst = 0;
    for (int m = 0; m <= 5; ++m) {
        auto t0 = std::chrono::steady_clock::now();
        auto cert = left_resolution(S, s_twist(S.weights, m), 0, 10);
        double dt = seconds_since(t0);
        worst = std::max(worst, dt);
        ok = ok && cert.strand_report.pass;
        ok = ok && static_cast<int>(cert.complex.term(1).size()) == m;
        ok = ok && static_cast<int>(cert.complex.term(0).size()) == m + 1;
        ok = ok && dt < 1.0;
    }
    std::ostringstream ex;
    ex << "slowest m took " << worst << "s";
    verdict(1, "Beilinson/P^1 baseline, a = S(m), m = 0..5, strands 0..10", ok, ex.str());
}

// ---------- criterion 2 ----------
void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream detail;
    for (auto wv : {std::vector<int>{1, 2}, {1, 1, 2}}) {
        auto S = validate_weights(WeightVector(wv));
        for (int m = -3; m <= 6; ++m) {
            try {
                auto cert = left_resolution(S, s_twist(S.weights, m), 0, 8);
                ok = ok && cert.strand_report.pass;
                if (!cert.strand_report.pass) detail << " strand-fail m=" << m;
            } catch (const VanishingError& e) {
                // hypothesis failure must identify the violating entry; the
                // CLI pathway turns this into exit 3 (checked in criterion 9)
                bool sane = e.q > 0 && e.p <= 0 && e.p >= -S.n();
                ok = ok && sane && m < 0;
                if (!(sane && m < 0)) detail << " unexpected-vanishing-fail m=" << m;
            }
        }
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 10.0;
    std::ostringstream ex;
    ex << dt << "s" << detail.str();
    verdict(2, "weighted left resolutions, w=(1,2) and (1,1,2), m in [-3,6]", ok, ex.str());
}

// ---------- criterion 3 ----------
void criterion3() {
    bool ok = true;
    for (int n = 1; n <= 3; ++n) {
        KoszulData K(poly_ring(std::vector<int>(static_cast<std::size_t>(n) + 1, 1)));
        ok = ok && koszul_check(K, 4, 6).pass;
    }
    KoszulData KV(std::make_shared<VeroneseAlgebra>(poly_ring({1, 1}), 2));
    ok = ok && koszul_check(KV, 4, 6).pass;
    std::vector<int> bdims;
    for (int m = 0; m <= 4; ++m) bdims.push_back(KV.dim_b(m));
    ok = ok && bdims == std::vector<int>{1, 3, 4, 4, 4};
    auto cubic = std::make_shared<GradedAlgebra>(
        Grading::weighted(WeightVector({1, 1, 1})),
        std::vector<Polynomial>{poly_parse("x0^3 + x1^3 + x2^3", 3)});
    KoszulData KC(cubic);
    auto rep = koszul_check(KC, 3, 4);
    ok = ok && !rep.pass && rep.first_failure && rep.first_failure->second == 3;
    verdict(3, "koszulness suite (polynomial rings, Veronese 1,3,4,4,4; cubic fails at k=3)",
            ok);
}

// ---------- criterion 4 ----------
void criterion4() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    KoszulData K(poly_ring({1, 1}));
    for (int k = 0; k <= 5 && ok; ++k)
        for (int l = 0; l <= 5 && ok; ++l) ok = diagonal_strand_check(K, k, l).pass;
    KoszulData KV(std::make_shared<VeroneseAlgebra>(poly_ring({1, 1}), 2));
    for (int k = 0; k <= 4 && ok; ++k)
        for (int l = 0; l <= 4 && ok; ++l) ok = diagonal_strand_check(KV, k, l).pass;
    double dt = seconds_since(t0);
    ok = ok && dt < 30.0;
    std::ostringstream ex;
    ex << dt << "s";
    verdict(4, "resolution of the diagonal (P^1 bidegrees <= 5; Veronese bidegrees <= 4)", ok,
            ex.str());
}

// ---------- criterion 5 ----------
void criterion5() {
    bool ok = true;
    WeightVector w({1, 2});
    for (int k = 0; k <= 4 && ok; ++k)
        for (int l = 0; l <= 4 && ok; ++l) ok = equivariant_strand_check(w, k, l).pass;
    Grading s = Grading::weighted(w), t = Grading::cover(w);
    for (int k = 0; k <= 10; ++k) {
        int lhs = 0;
        for (const auto& chi : all_characters(w)) lhs += monomial_count(s, k - chi.norm());
        ok = ok && lhs == monomial_count(t, k);
    }
    verdict(5, "equivariant diagonal w=(1,2), bidegrees <= 4, eigensheaf identity k <= 10", ok);
}

// ---------- criterion 6 ----------
void criterion6() {
    auto S = validate_weights(WeightVector({1, 2}));
    std::vector<GradedModule> cases;
    cases.push_back(s_twist(S.weights, 0));
    cases.push_back(s_twist(S.weights, 1));
    cases.push_back(s_twist(S.weights, -1));
    PolyMatrix rel(1);
    rel[0] = {poly_parse("x0", 2)};
    GradedModule pt(Grading::weighted(S.weights), FreeModule{{0}, {}}, rel, {1});
    cases.push_back(pt);
    cases.push_back(pt.twist(1));
    bool ok = true;
    for (const auto& a : cases) {
        auto table = beilinson_E1(S, a);
        for (int k = -4; k <= 4; ++k) {
            long lhs = chi_euler(S, a, k, 16);
            long rhs = 0;
            for (const auto& [key, v] : table.entries) {
                int sign = ((key.p + key.q) % 2 == 0) ? 1 : -1;
                rhs += sign * v * chi_euler_line(S, key.p - key.chi.norm() + k);
            }
            ok = ok && lhs == rhs;
        }
    }
    verdict(6, "K-theory reconstruction from E_1, w=(1,2), five sheaves, k in [-4,4]", ok);
}

// ---------- criterion 7 ----------
void criterion7() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(929);
    std::uniform_int_distribution<int> nd(1, 3), ad(1, 6);
    bool ok = true;
    int found = 0;
    while (found < 20) {
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
                ok = ok && h[static_cast<std::size_t>(q)] ==
                               hd[static_cast<std::size_t>(S.n() - q)];
        }
        for (const auto& chi : all_characters(w)) {
            int support_sum = 0;
            for (int i : chi.support()) support_sum += w.weights[static_cast<std::size_t>(i)];
            ok = ok && chi.norm() + char_neg(chi, w).norm() == support_sum;
        }
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 5.0;
    std::ostringstream ex;
    ex << dt << "s";
    verdict(7, "duality and character invariants on 20 random well-formed weight vectors", ok,
            ex.str());
}

// ---------- criterion 8 ----------
void criterion8() {
    bool ok = true;
    Grading g = Grading::weighted(WeightVector({1, 1}));
    DegreeWindow win{0, 6};

    struct Test3 {
        std::vector<FreeComplex> seq;
        std::vector<ChainMap> maps;
    };
    std::vector<Test3> tests;
    // Koszul complex of (x0, x1)
    {
        Test3 t;
        t.seq.resize(3);
        t.seq[0] = single_free(g, 0, 0);
        FreeComplex a1;
        a1.ring = g;
        a1.terms[0] = FreeModule{{1, 1}, {}};
        t.seq[1] = a1;
        t.seq[2] = single_free(g, 2, 0);
        ChainMap d1{&t.seq[1], &t.seq[0], {}, 0};
        d1.parts[0] = {{poly_parse("x0", 2), poly_parse("x1", 2)}};
        ChainMap d2{&t.seq[2], &t.seq[1], {}, 0};
        d2.parts[0] = {{poly_parse("x1", 2)}, {poly_parse("-1*x0", 2)}};
        t.maps = {d1, d2};
        tests.push_back(std::move(t));
    }
    // a chain of multiplications with zero composite: S(-3) -x1-> S(-2) -0-> S
    {
        Test3 t;
        t.seq.resize(3);
        t.seq[0] = single_free(g, 0, 0);
        t.seq[1] = single_free(g, 2, 0);
        t.seq[2] = single_free(g, 3, 0);
        ChainMap d1{&t.seq[1], &t.seq[0], {}, 0};
        d1.parts[0] = {{Polynomial(2)}};
        ChainMap d2{&t.seq[2], &t.seq[1], {}, 0};
        d2.parts[0] = {{poly_parse("x1", 2)}};
        t.maps = {d1, d2};
        tests.push_back(std::move(t));
    }
    // two-step complex with nontrivial homology everywhere:
    // S(-4) -x0x1-> S(-2) -x0^2-> S has d^2 = x0^3 x1 != 0, so adjust: use
    // S(-4) -x1^2-> S(-2) -x0^2-> S with d1 o d2 = x0^2 x1^2 != 0 — not a complex;
    // instead use the Koszul relations on (x0^2, x1^2)
    {
        Test3 t;
        t.seq.resize(3);
        t.seq[0] = single_free(g, 0, 0);
        FreeComplex a1;
        a1.ring = g;
        a1.terms[0] = FreeModule{{2, 2}, {}};
        t.seq[1] = a1;
        t.seq[2] = single_free(g, 4, 0);
        ChainMap d1{&t.seq[1], &t.seq[0], {}, 0};
        d1.parts[0] = {{poly_parse("x0^2", 2), poly_parse("x1^2", 2)}};
        ChainMap d2{&t.seq[2], &t.seq[1], {}, 0};
        d2.parts[0] = {{poly_parse("x1^2", 2)}, {poly_parse("-1*x0^2", 2)}};
        t.maps = {d1, d2};
        tests.push_back(std::move(t));
    }

    for (auto& t : tests) {
        auto cones = right_convolution(t.seq, t.maps, win, 4, Bracketing::IteratedCone);
        auto total = right_convolution(t.seq, t.maps, win, 4, Bracketing::Totalization);
        ok = ok && check_complex(cones.result).ok && check_complex(total.result).ok;
        for (int i = -1; i <= 4; ++i)
            for (int d = win.lo; d <= win.hi; ++d)
                ok = ok && homology_strand(cones.result, i, d) ==
                               homology_strand(total.result, i, d);
        // hypothesis table computed, and satisfied for these strict sheaf cases
        ok = ok && cones.hypothesis_ok && !cones.hypothesis_report.empty();
    }

    // cone(id) acyclic in all tested strands
    {
        FreeComplex k;
        k.ring = g;
        k.terms[0] = FreeModule{{0}, {}};
        k.terms[1] = FreeModule{{1, 1}, {}};
        k.terms[2] = FreeModule{{2}, {}};
        k.diffs[1] = {{poly_parse("x0", 2), poly_parse("x1", 2)}};
        k.diffs[2] = {{poly_parse("x1", 2)}, {poly_parse("-1*x0", 2)}};
        ChainMap id{&k, &k, {}, 0};
        for (int i = 0; i <= 2; ++i) {
            const FreeModule& t = k.term(i);
            PolyMatrix m(t.size(), std::vector<Polynomial>(t.size(), Polynomial(2)));
            for (std::size_t j = 0; j < t.size(); ++j)
                m[j][j] = Polynomial::constant(2, Rational(1));
            id.parts[i] = std::move(m);
        }
        FreeComplex cn = cone(id);
        for (int i = -1; i <= 4; ++i)
            for (int d = 0; d <= 6; ++d) ok = ok && homology_strand(cn, i, d) == 0;
    }
    verdict(8, "convolution calculus: strict 3-term complexes, re-bracketing, cone(id)", ok);
}

// ---------- criterion 9 ----------
std::pair<int, std::string> run_binary(const std::string& bin, const std::string& args) {
    std::string cmd = bin + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int rc = pclose(pipe);
    return {WEXITSTATUS(rc), out};
}

void criterion9(const std::string& bin, const std::string& jobs_dir) {
    bool ok = true;
    std::ostringstream detail;
    std::vector<fs::path> jobs;
    for (const auto& e : fs::directory_iterator(jobs_dir))
        if (e.path().extension() == ".json") jobs.push_back(e.path());
    std::sort(jobs.begin(), jobs.end());
    if (jobs.empty()) {
        verdict(9, "CLI determinism and exit codes", false, "no job files found");
        return;
    }
    std::set<int> seen_codes;
    for (const auto& job : jobs) {
        for (const std::string fmt : {"machine", "human"}) {
            auto r1 = run_binary(bin, "--format " + fmt + " " + job.string());
            auto r2 = run_binary(bin, "--format " + fmt + " " + job.string());
            if (r1 != r2) {
                ok = false;
                detail << " nondeterministic:" << job.filename().string();
            }
            seen_codes.insert(r1.first);
            std::string name = job.filename().string();
            int expect = 0;
            if (name.rfind("fail_validation", 0) == 0) expect = 2;
            else if (name.rfind("fail_hypothesis", 0) == 0) expect = 3;
            else if (name.rfind("fail_bound", 0) == 0) expect = 4;
            if (r1.first != expect) {
                ok = false;
                detail << " wrong-exit:" << name << "=" << r1.first;
            }
        }
    }
    // stored golden outputs: byte equality against the committed files
    fs::path golden = fs::path(jobs_dir).parent_path() / "golden";
    if (fs::exists(golden)) {
        for (const auto& e : fs::directory_iterator(golden)) {
            std::string name = e.path().filename().string();
            std::string job, fmt;
            if (auto pos = name.find(".machine.json"); pos != std::string::npos) {
                job = name.substr(0, pos);
                fmt = "machine";
            } else if (auto pos2 = name.find(".human.txt"); pos2 != std::string::npos) {
                job = name.substr(0, pos2);
                fmt = "human";
            } else {
                continue;
            }
            std::ifstream in(e.path());
            std::ostringstream want;
            want << in.rdbuf();
            auto got = run_binary(bin, "--format " + fmt + " " +
                                           (fs::path(jobs_dir) / (job + ".json")).string());
            if (got.second != want.str()) {
                ok = false;
                detail << " golden-drift:" << name;
            }
        }
    }

    // usage error: unknown flag -> exit 1
    auto usage = run_binary(bin, "--definitely-not-a-flag");
    seen_codes.insert(usage.first);
    if (usage.first != 1) {
        ok = false;
        detail << " usage-exit=" << usage.first;
    }
    for (int c : {0, 1, 2, 3, 4})
        if (!seen_codes.count(c)) {
            ok = false;
            detail << " missing-exit-code=" << c;
        }
    verdict(9, "CLI determinism (byte equality across runs) and exit-code matrix", ok,
            detail.str());
}

} // namespace

int main(int argc, char** argv) {
    std::string bin = WPSTACK_BIN;
    std::string jobs = WPSTACK_JOBS;
    if (argc > 1) bin = argv[1];
    if (argc > 2) jobs = argv[2];
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9(bin, jobs);
    if (g_failures == 0) {
        std::cout << "ACCEPTANCE: all 9 criteria passed" << std::endl;
        return 0;
    }
    std::cout << "ACCEPTANCE: " << g_failures << " criteria FAILED" << std::endl;
    return 1;
}
