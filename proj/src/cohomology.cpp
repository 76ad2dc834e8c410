#include "wps/cohomology.hpp"
#include "wps/resolution.hpp"

#include <sstream>

namespace wps {

StackDescriptor validate_weights(const WeightVector& w) {
    auto bad = w.well_formed_violation();
    if (bad) {
        std::ostringstream os;
        os << "weights " << w.str() << " not well formed: the subset omitting index " << *bad
           << " has a common factor";
        throw ValidationError(os.str());
    }
    return StackDescriptor{w, all_characters(w)};
}

std::vector<int> line_cohomology(const StackDescriptor& S, int k) {
    Grading g = S.sring();
    std::vector<int> h(static_cast<std::size_t>(S.n()) + 1, 0);
    h[0] = monomial_count(g, k);
    h[static_cast<std::size_t>(S.n())] += monomial_count(g, -k - S.sigma());
    return h;
}

namespace {

// Dual complex of a resolution: D^p = Hom(F_p, S(-sigma)); returns the free
// modules and transposed polynomial matrices D^{p-1} -> D^p.
struct DualComplex {
    std::vector<FreeModule> terms;   // index p = 0..len
    std::vector<PolyMatrix> maps;    // maps[p] : D^{p-1} -> D^p (p >= 1)
};

DualComplex dualize(const Resolution& res, int sigma, const WeightVector& mods) {
    DualComplex out;
    int len = res.length;
    for (int p = 0; p <= len; ++p) {
        const FreeModule& F = res.complex.term(p);
        FreeModule D;
        for (std::size_t j = 0; j < F.size(); ++j) {
            D.twists.push_back(sigma - F.twists[j]);
            D.chars.push_back(char_neg(F.gen_char(res.complex.ring, j), mods));
        }
        out.terms.push_back(std::move(D));
    }
    for (int p = 1; p <= len; ++p) {
        const PolyMatrix& d = res.complex.diffs.at(p);  // F_p -> F_{p-1}
        const FreeModule& Fp = res.complex.term(p);
        const FreeModule& Fq = res.complex.term(p - 1);
        PolyMatrix t(Fp.size(), std::vector<Polynomial>(Fq.size(),
                                                        Polynomial(res.complex.ring.vars())));
        for (std::size_t i = 0; i < Fq.size(); ++i)
            for (std::size_t j = 0; j < Fp.size(); ++j) t[j][i] = d[i][j];
        out.maps.push_back(std::move(t));
    }
    return out;
}

// H^p of the dual complex strand at internal degree delta, split by character.
// ext[p][chi] with chi ranging over the acting group.
std::vector<std::map<Character, int>> ext_by_char(const Grading& ring,
                                                  const DualComplex& D, int delta) {
    WeightVector mods(ring.char_moduli);
    int len = static_cast<int>(D.terms.size()) - 1;
    std::vector<std::map<Character, int>> ext(static_cast<std::size_t>(len) + 1);
    for (int p = 0; p <= len; ++p) {
        FreePieceBasis basis = free_piece(ring, D.terms[static_cast<std::size_t>(p)], delta);
        // group indices by character
        std::map<Character, std::vector<std::size_t>> blocks;
        for (std::size_t i = 0; i < basis.size(); ++i) blocks[basis.chars[i]].push_back(i);
        Matrix out_m(0, 0), in_m(0, 0);
        bool have_out = false, have_in = false;
        if (p < len) {
            out_m = strand_matrix(ring, D.terms[static_cast<std::size_t>(p)],
                                  D.terms[static_cast<std::size_t>(p + 1)],
                                  D.maps[static_cast<std::size_t>(p)], delta);
            have_out = true;
        }
        if (p >= 1) {
            in_m = strand_matrix(ring, D.terms[static_cast<std::size_t>(p - 1)],
                                 D.terms[static_cast<std::size_t>(p)],
                                 D.maps[static_cast<std::size_t>(p - 1)], delta);
            have_in = true;
        }
        FreePieceBasis tgt_basis =
            p < len ? free_piece(ring, D.terms[static_cast<std::size_t>(p + 1)], delta)
                    : FreePieceBasis{};
        FreePieceBasis src_basis =
            p >= 1 ? free_piece(ring, D.terms[static_cast<std::size_t>(p - 1)], delta)
                   : FreePieceBasis{};
        for (auto& [chi, idx] : blocks) {
            int kdim;
            if (have_out) {
                std::vector<std::size_t> rows;
                for (std::size_t i = 0; i < tgt_basis.size(); ++i)
                    if (tgt_basis.chars[i] == chi) rows.push_back(i);
                Matrix sub = out_m.submatrix(rows, idx);
                kdim = static_cast<int>(idx.size()) - static_cast<int>(sub.rank());
            } else {
                kdim = static_cast<int>(idx.size());
            }
            int irank = 0;
            if (have_in) {
                std::vector<std::size_t> cols;
                for (std::size_t i = 0; i < src_basis.size(); ++i)
                    if (src_basis.chars[i] == chi) cols.push_back(i);
                Matrix sub = in_m.submatrix(idx, cols);
                irank = static_cast<int>(sub.rank());
            }
            int v = kdim - irank;
            if (v != 0) ext[static_cast<std::size_t>(p)][chi] = v;
        }
    }
    return ext;
}

} // namespace

std::vector<int> module_cohomology(const StackDescriptor& S, const GradedModule& M,
                                   int k, int degree_bound) {
    Grading g = S.sring();
    int n = S.n();
    Resolution res = free_resolution(M, n + 1, degree_bound);
    if (!res.complete)
        throw BoundExhausted("resolution bound exhausted below degree " +
                             std::to_string(degree_bound), degree_bound);
    DualComplex D = dualize(res, S.sigma(), WeightVector(g.char_moduli));
    auto ext = ext_by_char(g, D, -k);
    auto ext_at = [&](int p) {
        if (p < 0 || p >= static_cast<int>(ext.size())) return 0;
        int s = 0;
        for (auto& [chi, v] : ext[static_cast<std::size_t>(p)]) s += v;
        return s;
    };
    std::vector<int> h(static_cast<std::size_t>(n) + 1, 0);
    h[static_cast<std::size_t>(n)] = ext_at(0);
    for (int q = 1; q < n; ++q) h[static_cast<std::size_t>(q)] = ext_at(n - q);
    h[0] = M.piece_dim(k) - ext_at(n + 1) + ext_at(n);
    return h;
}

std::map<Character, std::vector<int>> module_cohomology_cover(const WeightVector& w,
                                                              const GradedModule& W,
                                                              int k, int degree_bound) {
    Grading g = Grading::cover(w);
    int n = w.n();
    int sigma_t = n + 1;
    Resolution res = free_resolution(W, n + 1, degree_bound);
    if (!res.complete)
        throw BoundExhausted("resolution bound exhausted below degree " +
                             std::to_string(degree_bound), degree_bound);
    DualComplex D = dualize(res, sigma_t, w);
    auto ext = ext_by_char(g, D, -k);
    Character rho = char_zero(w);
    for (std::size_t i = 0; i < w.vars(); ++i) rho.residues[i] = 1 % w.weights[i];

    // rule: H^i_m(W)^chi_k corresponds to Ext^{n+1-i} classes of character -chi-rho
    auto ext_chi = [&](int p, const Character& chi) {
        if (p < 0 || p >= static_cast<int>(ext.size())) return 0;
        Character c = char_neg(char_add(chi, rho, w), w);
        auto it = ext[static_cast<std::size_t>(p)].find(c);
        return it == ext[static_cast<std::size_t>(p)].end() ? 0 : it->second;
    };

    std::map<Character, std::vector<int>> out;
    std::map<Character, int> wk;  // dim W_k per character
    {
        auto chars = W.piece_characters(k);
        for (auto& c : chars) wk[c] += 1;
    }
    for (const auto& chi : all_characters(w)) {
        std::vector<int> h(static_cast<std::size_t>(n) + 1, 0);
        h[static_cast<std::size_t>(n)] = ext_chi(0, chi);
        for (int q = 1; q < n; ++q) h[static_cast<std::size_t>(q)] = ext_chi(n - q, chi);
        int naive = wk.count(chi) ? wk[chi] : 0;
        h[0] = naive - ext_chi(n + 1, chi) + ext_chi(n, chi);
        bool nonzero = false;
        for (int v : h) nonzero = nonzero || v != 0;
        if (nonzero) out[chi] = std::move(h);
    }
    return out;
}

long chi_euler(const StackDescriptor& S, const GradedModule& M, int k, int degree_bound) {
    auto h = module_cohomology(S, M, k, degree_bound);
    long v = 0;
    for (std::size_t q = 0; q < h.size(); ++q) v += (q % 2 == 0 ? h[q] : -h[q]);
    return v;
}

long chi_euler_line(const StackDescriptor& S, int k) {
    auto h = line_cohomology(S, k);
    long v = 0;
    for (std::size_t q = 0; q < h.size(); ++q) v += (q % 2 == 0 ? h[q] : -h[q]);
    return v;
}

} // namespace wps
