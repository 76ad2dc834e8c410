#include "wps/beilinson.hpp"

#include <algorithm>
#include <sstream>

namespace wps {

namespace {

std::vector<std::vector<int>> subsets_of(int n1, int p) {
    std::vector<std::vector<int>> out;
    if (p < 0 || p > n1) return out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == p) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= n1 - (p - static_cast<int>(cur.size())); ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

Character subset_char(const std::vector<int>& I, const WeightVector& w) {
    Character c = char_zero(w);
    for (int i : I) c.residues[static_cast<std::size_t>(i)] =
        (c.residues[static_cast<std::size_t>(i)] + 1) % w.weights[static_cast<std::size_t>(i)];
    return c;
}

// Exterior-times-module space Lam^p (x) (a^#)_d with contraction data.
struct ExtSpace {
    std::vector<std::vector<int>> subsets;   // Lam^p basis
    int module_dim = 0;
    std::vector<Character> chars;            // of the tensor basis (I, u)
    std::size_t size() const { return subsets.size() * static_cast<std::size_t>(module_dim); }
};

ExtSpace ext_space(const WeightVector& w, const GradedModule& asharp, int p, int d) {
    ExtSpace s;
    s.subsets = subsets_of(static_cast<int>(w.vars()), p);
    s.module_dim = asharp.piece_dim(d);
    auto mchars = asharp.piece_characters(d);
    for (const auto& I : s.subsets) {
        Character ci = subset_char(I, w);
        for (int u = 0; u < s.module_dim; ++u)
            s.chars.push_back(char_add(ci, mchars[static_cast<std::size_t>(u)], w));
    }
    return s;
}

// Euler map Lam^p (x) (a^#)_d -> Lam^{p-1} (x) (a^#)_{d+1}:
// e_I (x) u -> sum_{i in I} sign * e_{I\i} (x) x~_i u.
Matrix euler_map(const WeightVector& w, const GradedModule& asharp, int p, int d) {
    ExtSpace src = ext_space(w, asharp, p, d);
    ExtSpace tgt = ext_space(w, asharp, p - 1, d + 1);
    Matrix M(tgt.size(), src.size());
    if (p == 0) return M;
    std::map<std::vector<int>, std::size_t> tpos;
    for (std::size_t t = 0; t < tgt.subsets.size(); ++t) tpos[tgt.subsets[t]] = t;
    std::vector<Matrix> mult;
    for (std::size_t i = 0; i < w.vars(); ++i)
        mult.push_back(asharp.mult_matrix(Polynomial::variable(w.vars(), i), d));
    for (std::size_t si = 0; si < src.subsets.size(); ++si) {
        const auto& I = src.subsets[si];
        for (std::size_t j = 0; j < I.size(); ++j) {
            int i = I[static_cast<std::size_t>(j)];
            std::vector<int> J = I;
            J.erase(J.begin() + static_cast<std::ptrdiff_t>(j));
            std::size_t tj = tpos.at(J);
            Rational sgn((j % 2 == 0) ? 1 : -1);
            const Matrix& mm = mult[static_cast<std::size_t>(i)];
            for (int u = 0; u < src.module_dim; ++u)
                for (int v = 0; v < tgt.module_dim; ++v) {
                    const Rational& x = mm.at(static_cast<std::size_t>(v),
                                              static_cast<std::size_t>(u));
                    if (x != 0)
                        M.at(tj * static_cast<std::size_t>(tgt.module_dim) +
                                 static_cast<std::size_t>(v),
                             si * static_cast<std::size_t>(src.module_dim) +
                                 static_cast<std::size_t>(u)) += sgn * x;
                }
        }
    }
    return M;
}

// H^0-model: kernel of the Euler map on Lam^p (x) (a^#)_0; char-pure basis.
std::vector<CharVector> h0_space(const WeightVector& w, const GradedModule& asharp, int p) {
    ExtSpace src = ext_space(w, asharp, p, 0);
    if (p == 0) {
        std::vector<CharVector> out;
        for (std::size_t i = 0; i < src.size(); ++i) {
            CharVector cv;
            cv.character = src.chars[i];
            cv.coords.assign(src.size(), Rational(0));
            cv.coords[i] = 1;
            out.push_back(std::move(cv));
        }
        return out;
    }
    ExtSpace tgt = ext_space(w, asharp, p - 1, 1);
    Matrix M = euler_map(w, asharp, p, 0);
    return kernel_by_char(M, src.chars, tgt.chars);
}

// Plain contraction by e_i^* (no module multiplication), expressed on H-bases:
// returns matrices contr[i]: H_p -> H_{p-1}.
std::vector<Matrix> contraction_on_h(const WeightVector& w, const GradedModule& asharp, int p,
                                     const std::vector<CharVector>& Hp,
                                     const std::vector<CharVector>& Hp1) {
    ExtSpace src = ext_space(w, asharp, p, 0);
    ExtSpace tgt = ext_space(w, asharp, p - 1, 0);
    std::map<std::vector<int>, std::size_t> tpos;
    for (std::size_t t = 0; t < tgt.subsets.size(); ++t) tpos[tgt.subsets[t]] = t;
    std::vector<std::vector<Rational>> h1_cols;
    for (const auto& cv : Hp1) h1_cols.push_back(cv.coords);
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < w.vars(); ++i) {
        Matrix C(Hp1.size(), Hp.size());
        for (std::size_t vi = 0; vi < Hp.size(); ++vi) {
            std::vector<Rational> img(tgt.size(), Rational(0));
            bool nonzero = false;
            for (std::size_t idx = 0; idx < Hp[vi].coords.size(); ++idx) {
                const Rational& x = Hp[vi].coords[idx];
                if (x == 0) continue;
                std::size_t si = idx / static_cast<std::size_t>(src.module_dim);
                std::size_t u = idx % static_cast<std::size_t>(src.module_dim);
                const auto& I = src.subsets[si];
                auto pos = std::find(I.begin(), I.end(), static_cast<int>(i));
                if (pos == I.end()) continue;
                std::size_t j = static_cast<std::size_t>(pos - I.begin());
                std::vector<int> J = I;
                J.erase(J.begin() + static_cast<std::ptrdiff_t>(j));
                Rational sgn((j % 2 == 0) ? 1 : -1);
                img[tpos.at(J) * static_cast<std::size_t>(tgt.module_dim) + u] += sgn * x;
                nonzero = true;
            }
            if (!nonzero) continue;
            auto coeffs = solve_in_span(h1_cols, img);
            if (!coeffs)
                throw std::logic_error("contraction left the section space");
            for (std::size_t r = 0; r < coeffs->size(); ++r)
                if ((*coeffs)[r] != 0) C.at(r, vi) = (*coeffs)[r];
        }
        out.push_back(std::move(C));
    }
    return out;
}

// Downstairs monomial of an upstairs entry monomial mu between invariant
// blocks: gamma = mu + rep(-chi_src) - rep(-chi_tgt), beta_j = gamma_j / a_j.
Monomial downstairs_monomial(const WeightVector& w, const Monomial& mu,
                             const Character& chi_src, const Character& chi_tgt) {
    Character ms = char_neg(chi_src, w), mt = char_neg(chi_tgt, w);
    Monomial beta(w.vars(), 0);
    for (std::size_t j = 0; j < w.vars(); ++j) {
        int gamma = mu[j] + ms.residues[j] - mt.residues[j];
        if (gamma < 0 || gamma % w.weights[j] != 0)
            throw std::logic_error("invariant-block entry is not a weighted monomial");
        beta[j] = gamma / w.weights[j];
    }
    return beta;
}

// Tensor product of presented modules over the same ring.
GradedModule tensor_presentation(const GradedModule& A, const GradedModule& B) {
    const Grading& ring = A.ring();
    WeightVector mods(ring.char_moduli);
    FreeModule gens;
    for (std::size_t i = 0; i < A.gens().size(); ++i)
        for (std::size_t j = 0; j < B.gens().size(); ++j) {
            gens.twists.push_back(A.gens().twists[i] + B.gens().twists[j]);
            gens.chars.push_back(
                char_add(A.gens().gen_char(ring, i), B.gens().gen_char(ring, j), mods));
        }
    PolyMatrix rel(gens.size());
    std::vector<int> rdegs;
    std::size_t acols = A.relations().empty() ? 0 : A.relations()[0].size();
    std::size_t bcols = B.relations().empty() ? 0 : B.relations()[0].size();
    auto row_of = [&](std::size_t i, std::size_t j) { return i * B.gens().size() + j; };
    // A-relations tensor B-generators
    for (std::size_t k = 0; k < acols; ++k)
        for (std::size_t j = 0; j < B.gens().size(); ++j) {
            for (std::size_t i = 0; i < A.gens().size(); ++i)
                for (std::size_t jj = 0; jj < B.gens().size(); ++jj)
                    rel[row_of(i, jj)].push_back(jj == j ? A.relations()[i][k]
                                                         : Polynomial(ring.vars()));
            rdegs.push_back(A.relation_degrees()[k] + B.gens().twists[j]);
        }
    // A-generators tensor B-relations
    for (std::size_t i = 0; i < A.gens().size(); ++i)
        for (std::size_t k = 0; k < bcols; ++k) {
            for (std::size_t ii = 0; ii < A.gens().size(); ++ii)
                for (std::size_t j = 0; j < B.gens().size(); ++j)
                    rel[row_of(ii, j)].push_back(ii == i ? B.relations()[j][k]
                                                         : Polynomial(ring.vars()));
            rdegs.push_back(B.relation_degrees()[k] + A.gens().twists[i]);
        }
    return GradedModule(ring, std::move(gens), std::move(rel), std::move(rdegs));
}

// Presented Omega^p_gr over T: generators Lam^{p+1} in degree p+1, relations
// the Koszul matrix from Lam^{p+2}. (p >= 1; p = 0 is T itself.)
GradedModule omega_presented(const StackDescriptor& S, int p) {
    Grading ring = S.tring();
    const WeightVector& w = S.weights;
    std::size_t nv = ring.vars();
    if (p == 0) return GradedModule::free_module(ring, {0}, {char_zero(w)});
    auto gens_sub = subsets_of(static_cast<int>(nv), p + 1);
    auto rels_sub = subsets_of(static_cast<int>(nv), p + 2);
    FreeModule gens;
    for (const auto& I : gens_sub) {
        gens.twists.push_back(p + 1);
        gens.chars.push_back(subset_char(I, w));
    }
    PolyMatrix rel(gens.size());
    std::vector<int> rdegs;
    std::map<std::vector<int>, std::size_t> gpos;
    for (std::size_t i = 0; i < gens_sub.size(); ++i) gpos[gens_sub[i]] = i;
    for (const auto& K : rels_sub) {
        std::vector<Polynomial> col(gens.size(), Polynomial(nv));
        for (std::size_t j = 0; j < K.size(); ++j) {
            std::vector<int> I = K;
            I.erase(I.begin() + static_cast<std::ptrdiff_t>(j));
            Rational sgn((j % 2 == 0) ? 1 : -1);
            col[gpos.at(I)] =
                Polynomial::variable(nv, static_cast<std::size_t>(K[j])) * sgn;
        }
        for (std::size_t i = 0; i < gens.size(); ++i) rel[i].push_back(col[i]);
        rdegs.push_back(p + 2);
    }
    return GradedModule(ring, std::move(gens), std::move(rel), std::move(rdegs));
}

int default_bound(const GradedModule& W, int n) {
    int mx = 0;
    for (int g : W.gens().twists) mx = std::max(mx, g);
    for (int r : W.relation_degrees()) mx = std::max(mx, r);
    return mx + n + 3;
}

} // namespace

GradedModule pullback_cover(const StackDescriptor& S, const GradedModule& a) {
    Grading tring = S.tring();
    std::size_t nv = tring.vars();
    auto lift_poly = [&](const Polynomial& f) {
        Polynomial out(nv);
        for (const auto& [m, c] : f.terms()) {
            Monomial mm(nv, 0);
            for (std::size_t i = 0; i < nv; ++i)
                mm[i] = m[i] * S.weights.weights[i];
            out.add_term(mm, c);
        }
        return out;
    };
    FreeModule gens;
    gens.twists = a.gens().twists;
    gens.chars.assign(gens.twists.size(), char_zero(S.weights));
    PolyMatrix rel(gens.size());
    for (std::size_t i = 0; i < a.gens().size(); ++i)
        for (std::size_t k = 0; k < (a.relations().empty() ? 0 : a.relations()[i].size()); ++k)
            rel[i].push_back(lift_poly(a.relations()[i][k]));
    std::vector<Character> rchars(a.relation_degrees().size(), char_zero(S.weights));
    return GradedModule(tring, std::move(gens), std::move(rel), a.relation_degrees(),
                        std::move(rchars));
}

std::map<Character, std::vector<int>> bott_eigen(const StackDescriptor& S, int p, int t) {
    const WeightVector& w = S.weights;
    int n = S.n();
    if (p < 0 || p > n) throw std::invalid_argument("bott_eigen needs 0 <= p <= n");
    Grading tring = S.tring();
    std::map<Character, std::vector<int>> out;
    auto add = [&](const Character& chi, int q, int v) {
        if (v == 0) return;
        auto& vec = out[chi];
        if (vec.empty()) vec.assign(static_cast<std::size_t>(n) + 1, 0);
        vec[static_cast<std::size_t>(q)] += v;
    };
    // h^0 block: kernel of the Euler strand on Lam^p (x) T_{t-p}
    if (t - p >= 0) {
        GradedModule tw = GradedModule::free_module(tring, {p - t}, {char_zero(w)});
        for (const auto& cv : h0_space(w, tw, p)) add(cv.character, 0, 1);
    }
    // h^n block by Serre duality: h^n(Om^p(t))^chi = h^0(Om^{n-p}(-t))^{-chi}
    if (-t - (n - p) >= 0) {
        GradedModule tw = GradedModule::free_module(tring, {(n - p) + t}, {char_zero(w)});
        for (const auto& cv : h0_space(w, tw, n - p)) add(char_neg(cv.character, w), n, 1);
    }
    // h^p(Om^p) = 1 at the trivial character (interior p only; the ends are
    // covered by the kernel/duality blocks)
    if (t == 0 && p > 0 && p < n) add(char_zero(w), p, 1);
    return out;
}

int CohomologyTable::max_q_nonzero() const {
    int mq = -1;
    for (const auto& [k, v] : entries)
        if (v != 0) mq = std::max(mq, k.q);
    return mq;
}

CohomologyTable beilinson_E1(const StackDescriptor& S, const GradedModule& a,
                             int degree_bound) {
    CohomologyTable table;
    if (a.gens().size() == 0) return table;
    const WeightVector& w = S.weights;
    int n = S.n();
    GradedModule asharp = pullback_cover(S, a);
    for (int pp = 0; pp <= n; ++pp) {
        GradedModule W = (pp == 0)
                             ? asharp
                             : tensor_presentation(omega_presented(S, pp).twist(pp), asharp);
        int bound = degree_bound > 0 ? degree_bound : default_bound(W, n);
        auto coh = module_cohomology_cover(w, W, 0, bound);
        for (const auto& [c, hv] : coh)
            for (int q = 0; q <= n; ++q)
                if (hv[static_cast<std::size_t>(q)] != 0)
                    table.entries[{-pp, q, char_neg(c, w)}] = hv[static_cast<std::size_t>(q)];
    }
    return table;
}

namespace {

// Build the downstairs complex + report for either direction.
struct DownstairsGen {
    Character chi;   // upstairs character of the generator
    int ttwist;      // upstairs T-twist
};

// Convert one upstairs layer structure into a FreeComplex over weighted S.
// terms[p] lists generators; entries[p] maps term p -> p-1 as (row, col) ->
// list of (variable monomial mu, coefficient).
struct UpstairsComplex {
    std::vector<std::vector<DownstairsGen>> gens;  // index p = 0..n
    // entry polynomials as upstairs monomial/coefficient pairs
    std::vector<std::vector<std::vector<std::vector<std::pair<Monomial, Rational>>>>> entries;
    // entries[p][row][col] with row in gens[p-1], col in gens[p]
};

FreeComplex to_downstairs(const StackDescriptor& S, const UpstairsComplex& up) {
    const WeightVector& w = S.weights;
    FreeComplex out;
    out.ring = S.sring();
    for (std::size_t p = 0; p < up.gens.size(); ++p) {
        if (up.gens[p].empty()) continue;
        FreeModule t;
        for (const auto& g : up.gens[p]) {
            t.twists.push_back(g.ttwist + char_neg(g.chi, w).norm());
            t.chars.push_back(char_zero(WeightVector(out.ring.char_moduli)));
        }
        out.terms[static_cast<int>(p)] = std::move(t);
    }
    for (std::size_t p = 1; p < up.gens.size(); ++p) {
        if (up.gens[p].empty() || up.gens[p - 1].empty()) continue;
        PolyMatrix m(up.gens[p - 1].size(),
                     std::vector<Polynomial>(up.gens[p].size(), Polynomial(w.vars())));
        for (std::size_t r = 0; r < up.gens[p - 1].size(); ++r)
            for (std::size_t c = 0; c < up.gens[p].size(); ++c)
                for (const auto& [mu, coef] : up.entries[p][r][c]) {
                    Monomial beta =
                        downstairs_monomial(w, mu, up.gens[p][c].chi, up.gens[p - 1][r].chi);
                    m[r][c].add_term(beta, coef);
                }
        out.diffs[static_cast<int>(p)] = std::move(m);
    }
    return out;
}

} // namespace

ResolutionCertificate left_resolution(const StackDescriptor& S, const GradedModule& a,
                                      int win_lo, int win_hi, int degree_bound) {
    const WeightVector& w = S.weights;
    int n = S.n();
    ResolutionCertificate cert;
    cert.left = true;
    cert.window_lo = win_lo;
    cert.window_hi = win_hi;
    cert.vanishing_table = beilinson_E1(S, a, degree_bound);
    for (const auto& [key, v] : cert.vanishing_table.entries)
        if (key.q > 0 && v != 0) {
            std::ostringstream os;
            os << "vanishing violated at (p,q,chi)=(" << key.p << "," << key.q << ","
               << key.chi.str() << ")";
            throw VanishingError(os.str(), key.p, key.q, key.chi);
        }

    GradedModule asharp = pullback_cover(S, a);
    std::vector<std::vector<CharVector>> H(static_cast<std::size_t>(n) + 1);
    for (int p = 0; p <= n; ++p) H[static_cast<std::size_t>(p)] = h0_space(w, asharp, p);

    // shape guard against the q = 0 row of the table
    for (int p = 0; p <= n; ++p) {
        std::map<Character, int> blocks;
        for (const auto& cv : H[static_cast<std::size_t>(p)]) blocks[cv.character] += 1;
        std::map<Character, int> expect;
        for (const auto& [key, v] : cert.vanishing_table.entries)
            if (key.p == -p && key.q == 0) expect[char_neg(key.chi, w)] = v;
        if (blocks != expect)
            throw ValidationError(
                "the presentation does not carry the sheaf's sections at form degree p=" +
                std::to_string(p) +
                " (saturation defect); present the target in saturated form");
    }

    UpstairsComplex up;
    up.gens.resize(static_cast<std::size_t>(n) + 1);
    up.entries.resize(static_cast<std::size_t>(n) + 1);
    for (int p = 0; p <= n; ++p)
        for (const auto& cv : H[static_cast<std::size_t>(p)])
            up.gens[static_cast<std::size_t>(p)].push_back({cv.character, p});
    for (int p = 1; p <= n; ++p) {
        auto contr = contraction_on_h(w, asharp, p, H[static_cast<std::size_t>(p)],
                                      H[static_cast<std::size_t>(p - 1)]);
        auto& E = up.entries[static_cast<std::size_t>(p)];
        E.assign(up.gens[static_cast<std::size_t>(p - 1)].size(),
                 std::vector<std::vector<std::pair<Monomial, Rational>>>(
                     up.gens[static_cast<std::size_t>(p)].size()));
        for (std::size_t i = 0; i < w.vars(); ++i) {
            Monomial mu(w.vars(), 0);
            mu[i] = 1;
            for (std::size_t r = 0; r < E.size(); ++r)
                for (std::size_t c = 0; c < E[r].size(); ++c) {
                    const Rational& x = contr[i].at(r, c);
                    if (x != 0) E[r][c].emplace_back(mu, x);
                }
        }
    }
    cert.complex = to_downstairs(S, up);

    // augmentation F_0 -> a: generator v (element of (a^#)_0) maps to the
    // downstairs class of its coordinates.
    FreePieceBasis a0 = free_piece(asharp.ring(), asharp.gens(), 0);
    auto a0_full_basis = asharp.piece_basis(0);
    cert.augmentation.assign(a.gens().size(),
                             std::vector<Polynomial>(H[0].size(), Polynomial(w.vars())));
    for (std::size_t c = 0; c < H[0].size(); ++c) {
        // H_0 coordinates live on the quotient basis of (a^#)_0
        for (std::size_t bi = 0; bi < H[0][c].coords.size(); ++bi) {
            const Rational& x = H[0][c].coords[bi];
            if (x == 0) continue;
            auto [gen, mu] = a0_full_basis[bi];
            Monomial beta = downstairs_monomial(w, mu, H[0][c].character, char_zero(w));
            cert.augmentation[gen][c].add_term(beta, x);
        }
    }

    // strand checks over the window: ... -> (F_1)_d -> (F_0)_d -> a_d -> 0
    for (int d = win_lo; d <= win_hi; ++d) {
        // augmentation strand: free piece of F_0 -> a_d
        const FreeModule& F0 = cert.complex.term(0);
        FreePieceBasis fb = free_piece(cert.complex.ring, F0, d);
        FreePieceBasis ab = free_piece(a.ring(), a.gens(), d);
        std::map<std::pair<std::size_t, Monomial>, std::size_t> apos;
        for (std::size_t i = 0; i < ab.size(); ++i) apos[ab.elems[i]] = i;
        Matrix aug_free(ab.size(), fb.size());
        for (std::size_t cidx = 0; cidx < fb.size(); ++cidx) {
            auto [j, mono] = fb.elems[cidx];
            for (std::size_t r = 0; r < a.gens().size(); ++r)
                for (const auto& [m, coef] : cert.augmentation[r][j].terms())
                    aug_free.at(apos.at({r, mono_mul(m, mono)}), cidx) += coef;
        }
        // project rows to the a_d piece
        Matrix aug(static_cast<std::size_t>(a.piece_dim(d)), fb.size());
        for (std::size_t cidx = 0; cidx < fb.size(); ++cidx) {
            std::vector<Rational> v(ab.size());
            for (std::size_t r = 0; r < ab.size(); ++r) v[r] = aug_free.at(r, cidx);
            auto red = a.project(d, std::move(v));
            for (std::size_t r = 0; r < red.size(); ++r) aug.at(r, cidx) = red[r];
        }
        int top = n;
        for (int p = top; p >= -1; --p) {
            StrandRow row;
            row.position = p;
            row.degree = d;
            row.character = char_zero(w);
            if (p >= 0) {
                row.dim_term = cert.complex.term_dim(p, d);
                Matrix out_m = (p > 0) ? cert.complex.strand(p, d) : aug;
                int kdim = row.dim_term - static_cast<int>(out_m.rank());
                int irank = (p < top) ? static_cast<int>(cert.complex.strand(p + 1, d).rank()) : 0;
                row.dim_kernel = kdim;
                row.dim_image_in = irank;
                row.exact = (kdim == irank);
            } else {
                row.dim_term = a.piece_dim(d);
                row.dim_kernel = 0;
                row.dim_image_in = static_cast<int>(aug.rank());
                row.exact = (row.dim_image_in == row.dim_term);
            }
            cert.strand_report.add(row);
        }
    }
    cert.strand_report.context = "left_resolution";
    return cert;
}

ResolutionCertificate right_resolution(const StackDescriptor& S, const GradedModule& a,
                                       int win_lo, int win_hi, int degree_bound) {
    const WeightVector& w = S.weights;
    int n = S.n();
    if (!a.relations().empty() && !(a.relations()[0].empty()))
        throw std::invalid_argument(
            "right_resolution supports free modules (sums of twists) only");
    ResolutionCertificate cert;
    cert.left = false;
    cert.window_lo = win_lo;
    cert.window_hi = win_hi;
    cert.vanishing_table = beilinson_E1(S, a, degree_bound);
    for (const auto& [key, v] : cert.vanishing_table.entries)
        if (key.q < n && v != 0) {
            std::ostringstream os;
            os << "vanishing violated at (p,q,chi)=(" << key.p << "," << key.q << ","
               << key.chi.str() << ")";
            throw VanishingError(os.str(), key.p, key.q, key.chi);
        }

    Grading tring = S.tring();
    // per free summand a_j = S(m_j): dual data from b^#_j = T(-m_j - n)
    UpstairsComplex up;
    up.gens.resize(static_cast<std::size_t>(n) + 1);
    up.entries.resize(static_cast<std::size_t>(n) + 1);
    // remember per term the (summand, dual index) for the augmentation
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> labels(
        static_cast<std::size_t>(n) + 1);
    std::vector<std::vector<std::vector<CharVector>>> Hdual(a.gens().size());
    for (std::size_t j = 0; j < a.gens().size(); ++j) {
        GradedModule bsharp =
            GradedModule::free_module(tring, {n - a.gens().twists[j]}, {char_zero(w)});
        Hdual[j].resize(static_cast<std::size_t>(n) + 1);
        for (int pp = 0; pp <= n; ++pp) Hdual[j][static_cast<std::size_t>(pp)] =
            h0_space(w, bsharp, pp);
    }
    for (int p = 0; p <= n; ++p)
        for (std::size_t j = 0; j < a.gens().size(); ++j) {
            const auto& Hs = Hdual[j][static_cast<std::size_t>(n - p)];
            for (std::size_t hidx = 0; hidx < Hs.size(); ++hidx) {
                up.gens[static_cast<std::size_t>(p)].push_back(
                    {char_neg(Hs[hidx].character, w), p});
                labels[static_cast<std::size_t>(p)].emplace_back(j, hidx);
            }
        }
    for (int p = 1; p <= n; ++p) {
        auto& E = up.entries[static_cast<std::size_t>(p)];
        E.assign(up.gens[static_cast<std::size_t>(p - 1)].size(),
                 std::vector<std::vector<std::pair<Monomial, Rational>>>(
                     up.gens[static_cast<std::size_t>(p)].size()));
        for (std::size_t j = 0; j < a.gens().size(); ++j) {
            // contraction on the dual data of summand j (same module as Hdual[j])
            GradedModule bsharp = GradedModule::free_module(
                tring, {n - a.gens().twists[j]}, {char_zero(w)});
            auto contr = contraction_on_h(w, bsharp, n - p + 1,
                                          Hdual[j][static_cast<std::size_t>(n - p + 1)],
                                          Hdual[j][static_cast<std::size_t>(n - p)]);
            for (std::size_t i = 0; i < w.vars(); ++i) {
                Monomial mu(w.vars(), 0);
                mu[i] = 1;
                for (std::size_t r = 0; r < E.size(); ++r) {
                    if (labels[static_cast<std::size_t>(p - 1)][r].first != j) continue;
                    std::size_t hu = labels[static_cast<std::size_t>(p - 1)][r].second;
                    for (std::size_t c = 0; c < E[r].size(); ++c) {
                        if (labels[static_cast<std::size_t>(p)][c].first != j) continue;
                        std::size_t hv = labels[static_cast<std::size_t>(p)][c].second;
                        // dual of contr: entry (dual of h_u in H_{n-p+1}, dual of h_v in H_{n-p})
                        const Rational& x = contr[i].at(hv, hu);
                        if (x != 0) E[r][c].emplace_back(mu, x);
                    }
                }
            }
        }
    }
    cert.complex = to_downstairs(S, up);

    // augmentation a -> D_n: rows = D_n generators, cols = a generators;
    // entry = (the dual-basis monomial of H'_0) as a downstairs monomial.
    cert.augmentation.assign(up.gens[static_cast<std::size_t>(n)].size(),
                             std::vector<Polynomial>(a.gens().size(), Polynomial(w.vars())));
    Grading tg = tring;
    for (std::size_t r = 0; r < up.gens[static_cast<std::size_t>(n)].size(); ++r) {
        auto [j, hidx] = labels[static_cast<std::size_t>(n)][r];
        const auto& Hs = Hdual[j][0];  // H'_0 = piece basis of T_{-m_j - n}
        // coordinates of the basis vector pick out one monomial
        const auto& cv = Hs[hidx];
        auto basis = monomial_basis(tg, a.gens().twists[j] - n);
        for (std::size_t bi = 0; bi < cv.coords.size(); ++bi) {
            if (cv.coords[bi] == 0) continue;
            Monomial mu = basis[bi];
            Monomial beta = downstairs_monomial(w, mu, char_zero(w),
                                                up.gens[static_cast<std::size_t>(n)][r].chi);
            cert.augmentation[r][j].add_term(beta, cv.coords[bi]);
        }
    }

    // strand checks: 0 -> a_d -> (D_n)_d -> ... -> (D_0)_d -> 0
    for (int d = win_lo; d <= win_hi; ++d) {
        const FreeModule& Dn = cert.complex.term(n);
        FreePieceBasis db = free_piece(cert.complex.ring, Dn, d);
        FreePieceBasis ab = free_piece(a.ring(), a.gens(), d);
        std::map<std::pair<std::size_t, Monomial>, std::size_t> dpos;
        for (std::size_t i = 0; i < db.size(); ++i) dpos[db.elems[i]] = i;
        Matrix aug(db.size(), ab.size());
        for (std::size_t cidx = 0; cidx < ab.size(); ++cidx) {
            auto [j, mono] = ab.elems[cidx];
            for (std::size_t r = 0; r < Dn.size(); ++r)
                for (const auto& [m, coef] : cert.augmentation[r][j].terms())
                    aug.at(dpos.at({r, mono_mul(m, mono)}), cidx) += coef;
        }
        {
            StrandRow row;  // injectivity at a
            row.position = n + 1;
            row.degree = d;
            row.character = char_zero(w);
            row.dim_term = static_cast<int>(ab.size());
            row.dim_kernel = static_cast<int>(ab.size()) - static_cast<int>(aug.rank());
            row.dim_image_in = 0;
            row.exact = (row.dim_kernel == 0);
            cert.strand_report.add(row);
        }
        for (int p = n; p >= 0; --p) {
            StrandRow row;
            row.position = p;
            row.degree = d;
            row.character = char_zero(w);
            row.dim_term = cert.complex.term_dim(p, d);
            Matrix out_m = cert.complex.strand(p, d);  // D_p -> D_{p-1} (zero if p=0)
            int kdim = (p > 0) ? row.dim_term - static_cast<int>(out_m.rank()) : row.dim_term;
            int irank = (p < n) ? static_cast<int>(cert.complex.strand(p + 1, d).rank())
                                : static_cast<int>(aug.rank());
            row.dim_kernel = kdim;
            row.dim_image_in = irank;
            row.exact = (kdim == irank);
            cert.strand_report.add(row);
        }
    }
    cert.strand_report.context = "right_resolution";
    return cert;
}

std::vector<std::pair<int, int>> stabilizer_cover(const StackDescriptor& S) {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < S.weights.vars(); ++i) {
        int a = S.weights.weights[i];
        if (a == 1) {
            out.emplace_back(static_cast<int>(i), 0);
            continue;
        }
        std::vector<int> tangent;
        for (std::size_t j = 0; j < S.weights.vars(); ++j)
            if (j != i) tangent.push_back(S.weights.weights[j] % a);
        std::vector<bool> covered(static_cast<std::size_t>(a), false);
        covered[0] = true;
        std::vector<bool> layer(static_cast<std::size_t>(a), false);
        layer[0] = true;
        int j0 = 0;
        int have = 1;
        for (int step = 1; have < a && step <= a * static_cast<int>(tangent.size()) + 1;
             ++step) {
            std::vector<bool> next(static_cast<std::size_t>(a), false);
            for (int r = 0; r < a; ++r) {
                if (!layer[static_cast<std::size_t>(r)]) continue;
                for (int t : tangent) next[static_cast<std::size_t>((r + t) % a)] = true;
            }
            layer = next;
            bool grew = false;
            for (int r = 0; r < a; ++r)
                if (layer[static_cast<std::size_t>(r)] && !covered[static_cast<std::size_t>(r)]) {
                    covered[static_cast<std::size_t>(r)] = true;
                    ++have;
                    grew = true;
                }
            if (grew) j0 = step;
        }
        if (have < a)
            throw std::logic_error("tangent characters do not generate the stabilizer dual");
        out.emplace_back(static_cast<int>(i), j0);
    }
    return out;
}

} // namespace wps
