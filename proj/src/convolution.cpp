#include "wps/convolution.hpp"

#include <stdexcept>

namespace wps {

namespace {

// Hom complex of two bounded complexes of frees:
// Hom_k = (+)_i Hom(F_i, G_{i+k}); D: Hom_k -> Hom_{k-1},
// (D phi)_i = d_G o phi_i - (-1)^k phi_{i-1} o d_F.
// The degree-d strand of Hom(S(-a), S(-b)) is S_{a + d - b}.
struct HomStrand {
    // basis of Hom_k at internal degree d: triples (i, s in F_i, t in G_{i+k}, monomial)
    struct Slot {
        int i;
        std::size_t s, t;
        int mono_deg;
        std::size_t offset;  // start in the coordinate vector
        std::size_t count;
    };
    std::vector<Slot> slots;
    std::size_t dim = 0;
};

HomStrand hom_strand(const FreeComplex& F, const FreeComplex& G, int k, int d) {
    HomStrand out;
    for (int i = F.lo(); i <= F.hi(); ++i) {
        const FreeModule& fi = F.term(i);
        const FreeModule& gk = G.term(i + k);
        for (std::size_t s = 0; s < fi.size(); ++s)
            for (std::size_t t = 0; t < gk.size(); ++t) {
                int md = fi.twists[s] + d - gk.twists[t];
                int c = monomial_count(F.ring, md);
                if (c == 0) continue;
                out.slots.push_back({i, s, t, md, out.dim, static_cast<std::size_t>(c)});
                out.dim += static_cast<std::size_t>(c);
            }
    }
    return out;
}

// Matrix of D: Hom_k(d) -> Hom_{k-1}(d).
Matrix hom_differential(const FreeComplex& F, const FreeComplex& G, int k, int d) {
    HomStrand src = hom_strand(F, G, k, d);
    HomStrand tgt = hom_strand(F, G, k - 1, d);
    Matrix M(tgt.dim, src.dim);
    const Grading& ring = F.ring;
    int sign = (k % 2 == 0) ? 1 : -1;
    auto add_block = [&](const HomStrand::Slot& to, const HomStrand::Slot& from,
                         const Polynomial& p, int scalar, bool left_compose) {
        // left_compose: new phi component = p * old (multiplication by p raises the
        // monomial degree from from.mono_deg to to.mono_deg)
        if (p.is_zero()) return;
        Matrix mm = mult_map(ring, p, from.mono_deg);
        (void)left_compose;
        for (std::size_t c = 0; c < from.count; ++c)
            for (std::size_t r = 0; r < to.count; ++r)
                if (mm.at(r, c) != 0)
                    M.at(to.offset + r, from.offset + c) += Rational(scalar) * mm.at(r, c);
    };
    for (const auto& from : src.slots) {
        // d_G o phi: component at (i, s, u): sum over t of dG[u][t] * phi(i,s,t)
        auto dg = G.diffs.find(from.i + k);
        if (dg != G.diffs.end()) {
            const FreeModule& gtgt = G.term(from.i + k - 1);
            for (const auto& to : tgt.slots) {
                if (to.i != from.i || to.s != from.s) continue;
                if (to.t >= gtgt.size()) continue;
                add_block(to, from, dg->second[to.t][from.t], 1, true);
            }
        }
        // phi_{i-1} o d_F: component at (i', s', t) with i' = from.i + 1 in target index:
        // (phi o dF)_{i'} (gen s') = sum_s phi_{i'-1}(dF[s][s']) so the target slot has
        // i = from.i + 1 and same t.
        auto df = F.diffs.find(from.i + 1);
        if (df != F.diffs.end()) {
            for (const auto& to : tgt.slots) {
                if (to.i != from.i + 1 || to.t != from.t) continue;
                add_block(to, from, df->second[from.s][to.s], -sign, false);
            }
        }
    }
    return M;
}

} // namespace

int hom_derived(const FreeComplex& F, const FreeComplex& G, int r, DegreeWindow window) {
    if (F.empty() || G.empty()) return 0;
    int slot = -r;  // chain maps F -> G[r] live in homological slot -r
    int total = 0;
    for (int d = window.lo; d <= window.hi; ++d) {
        Matrix out = hom_differential(F, G, slot, d);
        Matrix in = hom_differential(F, G, slot + 1, d);
        int dim_r = static_cast<int>(hom_strand(F, G, slot, d).dim);
        total += dim_r - static_cast<int>(out.rank()) - static_cast<int>(in.rank());
    }
    return total;
}

FreeComplex totalization(const std::vector<FreeComplex>& seq,
                         const std::vector<ChainMap>& maps, int shift) {
    if (seq.empty()) throw std::invalid_argument("empty convolution input");
    const Grading& ring = seq[0].ring;
    std::size_t nv = ring.vars();
    int m = static_cast<int>(seq.size()) - 1;
    // component (p, j) lands at index p + j + shift; order blocks by p then j
    FreeComplex out;
    out.ring = ring;
    // collect per total-index layout: list of (p, internal index j)
    std::map<int, std::vector<std::pair<int, int>>> layout;
    int ilo = 0, ihi = 0;
    bool first = true;
    for (int p = 0; p <= m; ++p) {
        if (seq[p].empty()) continue;
        for (int j = seq[p].lo(); j <= seq[p].hi(); ++j) {
            if (seq[p].term(j).twists.empty()) continue;
            int t = p + j + shift;
            layout[t].emplace_back(p, j);
            if (first || t < ilo) ilo = t;
            if (first || t > ihi) ihi = t;
            first = false;
        }
    }
    // term assembly with block offsets
    std::map<int, std::map<std::pair<int, int>, std::size_t>> offsets;
    for (auto& [t, blocks] : layout) {
        FreeModule tm;
        for (auto& [p, j] : blocks) {
            offsets[t][{p, j}] = tm.size();
            const FreeModule& b = seq[p].term(j);
            for (std::size_t col = 0; col < b.size(); ++col) {
                tm.twists.push_back(b.twists[col]);
                tm.chars.push_back(b.gen_char(ring, col));
            }
        }
        out.terms[t] = std::move(tm);
    }
    for (auto& [t, blocks] : layout) {
        if (!out.terms.count(t - 1)) continue;
        std::size_t rows = out.terms[t - 1].size();
        std::size_t cols = out.terms[t].size();
        PolyMatrix mat(rows, std::vector<Polynomial>(cols, Polynomial(nv)));
        bool nonzero = false;
        for (auto& [p, j] : blocks) {
            std::size_t co = offsets[t][{p, j}];
            const FreeModule& src = seq[p].term(j);
            // internal differential: (p, j) -> (p, j-1)
            auto di = seq[p].diffs.find(j);
            if (di != seq[p].diffs.end() && offsets[t - 1].count({p, j - 1})) {
                std::size_t ro = offsets[t - 1][{p, j - 1}];
                for (std::size_t r = 0; r < seq[p].term(j - 1).size(); ++r)
                    for (std::size_t c = 0; c < src.size(); ++c)
                        if (!di->second[r][c].is_zero()) {
                            mat[ro + r][co + c] = di->second[r][c];
                            nonzero = true;
                        }
            }
            // external differential: (p, j) -> (p-1, j), sign (-1)^p
            if (p >= 1 && offsets[t - 1].count({p - 1, j})) {
                auto fp = maps[p - 1].parts.find(j);  // maps[p-1] : a_p -> a_{p-1}
                if (fp != maps[p - 1].parts.end()) {
                    std::size_t ro = offsets[t - 1][{p - 1, j}];
                    int sgn = (p % 2 == 0) ? 1 : -1;
                    for (std::size_t r = 0; r < seq[p - 1].term(j).size(); ++r)
                        for (std::size_t c = 0; c < src.size(); ++c)
                            if (!fp->second[r][c].is_zero()) {
                                mat[ro + r][co + c] =
                                    mat[ro + r][co + c] + fp->second[r][c] * Rational(sgn);
                                nonzero = true;
                            }
                }
            }
        }
        if (nonzero) out.diffs[t] = std::move(mat);
    }
    return out;
}

namespace {

void validate_strictness(const std::vector<FreeComplex>& seq,
                         const std::vector<ChainMap>& maps) {
    int m = static_cast<int>(seq.size()) - 1;
    if (static_cast<int>(maps.size()) != m)
        throw std::invalid_argument("need exactly one chain map per adjacent pair");
    for (int p = 0; p < m; ++p) {
        // maps[p] : seq[p+1] -> seq[p]; validated against the sequence itself
        ChainMap bound{&seq[p + 1], &seq[p], maps[p].parts, maps[p].twist};
        bound.validate();
    }
    for (const auto& c : seq) {
        auto v = check_complex(c);
        if (!v.ok) throw std::invalid_argument("convolution input: " + v.message);
    }
    std::size_t nv = seq[0].ring.vars();
    for (int p = 0; p + 1 < m; ++p) {
        // composite a_{p+2} -> a_{p+1} -> a_p must vanish: "not a complex of complexes"
        const ChainMap& hi = maps[p + 1];
        const ChainMap& lo = maps[p];
        int jlo = seq[p + 2].lo(), jhi = seq[p + 2].hi();
        for (int j = jlo; j <= jhi; ++j) {
            auto h = hi.parts.find(j);
            auto l = lo.parts.find(j);
            if (h == hi.parts.end() || l == lo.parts.end()) continue;
            PolyMatrix prod = poly_mat_mul(l->second, h->second, nv);
            for (auto& row : prod)
                for (auto& e : row)
                    if (!e.is_zero())
                        throw std::invalid_argument("not a complex of complexes");
        }
    }
}

std::vector<HypothesisRow> hypothesis_table(const std::vector<FreeComplex>& seq,
                                            DegreeWindow window, int r_max, bool* ok) {
    std::vector<HypothesisRow> rows;
    int m = static_cast<int>(seq.size()) - 1;
    *ok = true;
    for (int p = m; p >= 0; --p)
        for (int q = 0; q < p; ++q)
            for (int r = 1; r <= r_max; ++r) {
                int dim = hom_derived(seq[p], seq[q], r, window);
                rows.push_back({p, q, r, dim});
                if (dim != 0) *ok = false;
            }
    return rows;
}

} // namespace

ConvolutionTrace right_convolution(const std::vector<FreeComplex>& seq,
                                   const std::vector<ChainMap>& maps,
                                   DegreeWindow window, int r_max, Bracketing order) {
    validate_strictness(seq, maps);
    int m = static_cast<int>(seq.size()) - 1;
    const Grading& ring = seq[0].ring;
    int n = static_cast<int>(ring.vars()) - 1;
    if (r_max < 0) r_max = m + n + 2;
    ConvolutionTrace trace;
    trace.window = window;
    trace.hypothesis_report = hypothesis_table(seq, window, r_max, &trace.hypothesis_ok);

    if (m == 0) {
        trace.result = seq[0];
        return trace;
    }

    if (order == Bracketing::Totalization) {
        trace.result = totalization(seq, maps, 0);
        return trace;
    }
    // cone the two leftmost terms repeatedly; a_0 stays untouched
    FreeComplex cur = seq[m];
    std::map<int, PolyMatrix> cur_map = maps[m - 1].parts;  // cur -> seq[m-1]
    for (int p = m - 1; p >= 0; --p) {
        ChainMap f{&cur, &seq[p], cur_map, 0};
        FreeComplex cn = cone(f);
        trace.intermediates.push_back(cn);
        if (p == 0) {
            trace.result = std::move(cn);
            break;
        }
        // induced map cone -> seq[p-1]: zero on the shifted part, d_p on seq[p]
        std::map<int, PolyMatrix> nxt;
        for (int j = cn.lo(); j <= cn.hi(); ++j) {
            const FreeModule& src = cn.term(j);
            const FreeModule& tgt = seq[p - 1].term(j);
            if (src.twists.empty() || tgt.twists.empty()) continue;
            PolyMatrix mmat(tgt.size(),
                            std::vector<Polynomial>(src.size(), Polynomial(ring.vars())));
            std::size_t shifted_cols = cur.term(j - 1).size();
            auto dp = maps[p - 1].parts.find(j);
            if (dp != maps[p - 1].parts.end())
                for (std::size_t r = 0; r < tgt.size(); ++r)
                    for (std::size_t c2 = 0; c2 < seq[p].term(j).size(); ++c2)
                        mmat[r][shifted_cols + c2] = dp->second[r][c2];
            nxt[j] = std::move(mmat);
        }
        cur = std::move(cn);
        cur_map = std::move(nxt);
    }
    return trace;
}

ConvolutionTrace left_convolution(const std::vector<FreeComplex>& seq,
                                  const std::vector<ChainMap>& maps,
                                  DegreeWindow window, int r_max) {
    validate_strictness(seq, maps);
    int m = static_cast<int>(seq.size()) - 1;
    const Grading& ring = seq[0].ring;
    int n = static_cast<int>(ring.vars()) - 1;
    if (r_max < 0) r_max = m + n + 2;
    ConvolutionTrace trace;
    trace.window = window;
    trace.hypothesis_report = hypothesis_table(seq, window, r_max, &trace.hypothesis_ok);
    if (m == 0) {
        trace.result = seq[0];
        return trace;
    }
    // intermediates a'_p = totalization of (a_p .. a_0) with a_p at index 0
    for (int p = 1; p <= m; ++p) {
        std::vector<FreeComplex> sub(seq.begin(), seq.begin() + p + 1);
        std::vector<ChainMap> submaps(maps.begin(), maps.begin() + p);
        trace.intermediates.push_back(totalization(sub, submaps, -p));
    }
    trace.result = trace.intermediates.back();
    return trace;
}

} // namespace wps
