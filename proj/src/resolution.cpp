#include "wps/resolution.hpp"
#include "wps/algebra.hpp"

#include <algorithm>

namespace wps {

namespace {

// multiply a free-piece coordinate vector by the variable x_i (free level)
std::vector<Rational> mult_var(const Grading& g, const FreeModule& f, int d, int i,
                               const std::vector<Rational>& v) {
    FreePieceBasis src = free_piece(g, f, d);
    int a = g.degrees[static_cast<std::size_t>(i)];
    FreePieceBasis tgt = free_piece(g, f, d + a);
    std::map<std::pair<std::size_t, Monomial>, std::size_t> pos;
    for (std::size_t k = 0; k < tgt.size(); ++k) pos[tgt.elems[k]] = k;
    std::vector<Rational> out(tgt.size(), Rational(0));
    for (std::size_t k = 0; k < src.size(); ++k) {
        if (v[k] == 0) continue;
        Monomial m = src.elems[k].second;
        m[static_cast<std::size_t>(i)] += 1;
        out[pos.at({src.elems[k].first, m})] += v[k];
    }
    return out;
}

} // namespace

Resolution free_resolution(const GradedModule& M, int max_steps, int degree_bound) {
    const Grading& ring = M.ring();
    int pres_max = 0;
    bool has_any = false;
    for (int g : M.gens().twists) { pres_max = has_any ? std::max(pres_max, g) : g; has_any = true; }
    for (int r : M.relation_degrees()) { pres_max = has_any ? std::max(pres_max, r) : r; has_any = true; }
    if (has_any && degree_bound < pres_max)
        throw BoundExhausted("bound exhausted: presentation lives in degree " +
                             std::to_string(pres_max) + " above degree bound " +
                             std::to_string(degree_bound), pres_max);
    if (max_steps < 0) throw std::invalid_argument("max_steps must be >= 0");

    Resolution res;
    res.complex.ring = ring;
    if (M.gens().size() == 0) { res.complete = true; return res; }

    int dmin = *std::min_element(M.gens().twists.begin(), M.gens().twists.end());

    // ---- step 0: minimal generators of M ----
    FreeModule F0;
    for (int d = dmin; d <= degree_bound; ++d) {
        int dim = M.piece_dim(d);
        if (dim == 0) continue;
        Span span(static_cast<std::size_t>(dim));
        for (std::size_t i = 0; i < ring.vars(); ++i) {
            int dd = d - ring.degrees[i];
            if (dd < dmin || M.piece_dim(dd) == 0) continue;
            Matrix mm = M.mult_matrix(Polynomial::variable(ring.vars(), i), dd);
            for (std::size_t c = 0; c < mm.cols(); ++c) {
                std::vector<Rational> col(mm.rows());
                for (std::size_t r = 0; r < mm.rows(); ++r) col[r] = mm.at(r, c);
                span.add(std::move(col));
            }
        }
        auto chars = M.piece_characters(d);
        for (int k = 0; k < dim; ++k) {
            std::vector<Rational> e(static_cast<std::size_t>(dim), Rational(0));
            e[static_cast<std::size_t>(k)] = 1;
            if (span.add(e)) {
                F0.twists.push_back(d);
                F0.chars.push_back(chars[static_cast<std::size_t>(k)]);
                res.aug_targets.emplace_back(d, static_cast<std::size_t>(k));
            }
        }
    }
    res.complex.terms[0] = F0;
    res.length = 0;

    // strand matrix of the augmentation F_0 -> M at degree d
    auto augmentation_strand = [&](int d) {
        FreePieceBasis fb = free_piece(ring, F0, d);
        Matrix A(static_cast<std::size_t>(M.piece_dim(d)), fb.size());
        for (std::size_t c = 0; c < fb.size(); ++c) {
            auto [j, mono] = fb.elems[c];
            Polynomial pm = Polynomial::monomial(mono);
            Matrix mm = M.mult_matrix(pm, F0.twists[j]);
            std::size_t bi = res.aug_targets[j].second;
            for (std::size_t r = 0; r < mm.rows(); ++r) A.at(r, c) = mm.at(r, bi);
        }
        return A;
    };

    FreeModule prev = F0;
    for (int step = 1; step <= max_steps; ++step) {
        const FreeModule cur = prev;
        int cmin = cur.twists.empty()
                       ? degree_bound + 1
                       : *std::min_element(cur.twists.begin(), cur.twists.end());
        FreeModule Fnew;
        PolyMatrix diff(cur.size());
        std::map<int, std::vector<std::vector<Rational>>> ker_by_deg;
        for (int d = cmin; d <= degree_bound; ++d) {
            FreePieceBasis fb = free_piece(ring, cur, d);
            if (fb.size() == 0) { ker_by_deg[d] = {}; continue; }
            Matrix phi = (step == 1) ? augmentation_strand(d)
                                     : strand_matrix(ring, cur, res.complex.term(step - 2),
                                                     res.complex.diffs.at(step - 1), d);
            std::vector<Character> tchars =
                (step == 1) ? M.piece_characters(d)
                            : free_piece(ring, res.complex.term(step - 2), d).chars;
            auto kerv = kernel_by_char(phi, fb.chars, tchars);
            std::vector<std::vector<Rational>> kvecs;
            for (auto& cv : kerv) kvecs.push_back(cv.coords);
            // minimal generators: complement of sum_i x_i * K_{d - a_i}
            Span span(fb.size());
            for (std::size_t i = 0; i < ring.vars(); ++i) {
                int dd = d - ring.degrees[i];
                auto it = ker_by_deg.find(dd);
                if (it == ker_by_deg.end()) continue;
                for (const auto& kv : it->second)
                    span.add(mult_var(ring, cur, dd, static_cast<int>(i), kv));
            }
            for (auto& cv : kerv) {
                if (span.add(cv.coords)) {
                    Fnew.twists.push_back(d);
                    Fnew.chars.push_back(cv.character);
                    auto col = coords_to_column(ring, cur, cv.coords, d);
                    for (std::size_t r = 0; r < cur.size(); ++r) diff[r].push_back(col[r]);
                }
            }
            ker_by_deg[d] = std::move(kvecs);
        }
        if (Fnew.twists.empty()) {
            res.complete = true;
            break;
        }
        res.complex.terms[step] = Fnew;
        res.complex.diffs[step] = std::move(diff);
        res.length = step;
        prev = std::move(Fnew);
    }
    if (!res.complete) {
        // the kernel may vanish beyond the last computed step anyway
        const FreeModule& last = res.complex.term(res.length);
        bool any = false;
        int lmin = last.twists.empty() ? degree_bound + 1
                                       : *std::min_element(last.twists.begin(), last.twists.end());
        for (int d = lmin; d <= degree_bound && !any; ++d) {
            if (free_piece_dim(ring, last, d) == 0) continue;
            Matrix phi = (res.length == 0)
                             ? augmentation_strand(d)
                             : strand_matrix(ring, last, res.complex.term(res.length - 1),
                                             res.complex.diffs.at(res.length), d);
            if (!kernel(phi).empty()) any = true;
        }
        res.complete = !any;
    }
    return res;
}

} // namespace wps
