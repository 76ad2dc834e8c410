#include "wps/complex.hpp"

#include <stdexcept>

namespace wps {

namespace {
const FreeModule kEmpty{};
}

int FreeComplex::lo() const {
    int v = 0;
    bool first = true;
    for (const auto& [i, t] : terms)
        if (!t.twists.empty() && (first || i < v)) { v = i; first = false; }
    return v;
}

int FreeComplex::hi() const {
    int v = 0;
    bool first = true;
    for (const auto& [i, t] : terms)
        if (!t.twists.empty() && (first || i > v)) { v = i; first = false; }
    return v;
}

const FreeModule& FreeComplex::term(int i) const {
    auto it = terms.find(i);
    return it == terms.end() ? kEmpty : it->second;
}

int FreeComplex::term_dim(int i, int d) const {
    return free_piece_dim(ring, term(i), d);
}

Matrix FreeComplex::strand(int i, int d) const {
    const FreeModule& src = term(i);
    const FreeModule& tgt = term(i - 1);
    auto it = diffs.find(i);
    if (it == diffs.end() || src.twists.empty() || tgt.twists.empty())
        return Matrix(free_piece_dim(ring, tgt, d), free_piece_dim(ring, src, d));
    return strand_matrix(ring, src, tgt, it->second, d);
}

FreeComplex FreeComplex::shifted(int s) const {
    FreeComplex out;
    out.ring = ring;
    for (const auto& [i, t] : terms) out.terms[i + s] = t;
    for (const auto& [i, m] : diffs) {
        PolyMatrix sm = m;
        if (s % 2 != 0)
            for (auto& row : sm)
                for (auto& e : row) e = -e;
        out.diffs[i + s] = std::move(sm);
    }
    return out;
}

FreeComplex FreeComplex::twisted(int t) const {
    FreeComplex out = *this;
    for (auto& [i, term] : out.terms)
        for (auto& g : term.twists) g += t;
    return out;
}

PolyMatrix poly_mat_mul(const PolyMatrix& a, const PolyMatrix& b, std::size_t nvars) {
    std::size_t rows = a.size();
    std::size_t mid = b.size();
    std::size_t cols = mid == 0 ? 0 : b[0].size();
    PolyMatrix r(rows, std::vector<Polynomial>(cols, Polynomial(nvars)));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < mid; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < cols; ++j)
                if (!b[k][j].is_zero()) r[i][j] = r[i][j] + a[i][k] * b[k][j];
        }
    return r;
}

ComplexVerdict check_complex(const FreeComplex& f) {
    ComplexVerdict v;
    for (const auto& [i, m] : f.diffs) {
        const FreeModule& src = f.term(i);
        const FreeModule& tgt = f.term(i - 1);
        if (m.size() != tgt.size() || (!m.empty() && m[0].size() != src.size())) {
            return {false, "differential shape mismatch", i};
        }
        for (std::size_t r = 0; r < m.size(); ++r)
            for (std::size_t c = 0; c < m[r].size(); ++c) {
                int want = src.twists[c] - tgt.twists[r];
                if (!m[r][c].is_homogeneous_of(f.ring, want))
                    return {false, "entry (" + std::to_string(r) + "," + std::to_string(c) +
                                       ") not homogeneous of degree " + std::to_string(want),
                            i};
            }
    }
    for (const auto& [i, m] : f.diffs) {
        auto next = f.diffs.find(i + 1);
        if (next == f.diffs.end()) continue;
        PolyMatrix prod = poly_mat_mul(m, next->second, f.ring.vars());
        for (std::size_t r = 0; r < prod.size(); ++r)
            for (std::size_t c = 0; c < prod[r].size(); ++c)
                if (!prod[r][c].is_zero())
                    return {false, "d o d != 0 at entry (" + std::to_string(r) + "," +
                                       std::to_string(c) + ")", i + 1};
    }
    return v;
}

void ChainMap::validate() const {
    for (const auto& [i, m] : parts) {
        const FreeModule& src = source->term(i);
        const FreeModule& tgt = target->term(i);
        if (m.size() != tgt.size() || (!m.empty() && m[0].size() != src.size()))
            throw std::invalid_argument("chain map shape mismatch at index " + std::to_string(i));
        for (std::size_t r = 0; r < m.size(); ++r)
            for (std::size_t c = 0; c < m[r].size(); ++c)
                if (!m[r][c].is_homogeneous_of(source->ring,
                                               src.twists[c] - (tgt.twists[r] - twist)))
                    throw std::invalid_argument("chain map entry not homogeneous at index " +
                                                std::to_string(i));
    }
    // exact commutation: f_{i-1} d^src_i = d^tgt_i f_i
    int lo = std::min(source->lo(), target->lo());
    int hi = std::max(source->hi(), target->hi());
    for (int i = lo; i <= hi + 1; ++i) {
        auto get_part = [&](int k) -> PolyMatrix {
            auto it = parts.find(k);
            if (it != parts.end()) return it->second;
            return PolyMatrix(target->term(k).size(),
                              std::vector<Polynomial>(source->term(k).size(),
                                                      Polynomial(source->ring.vars())));
        };
        auto get_diff = [&](const FreeComplex& f, int k) -> PolyMatrix {
            auto it = f.diffs.find(k);
            if (it != f.diffs.end()) return it->second;
            return PolyMatrix(f.term(k - 1).size(),
                              std::vector<Polynomial>(f.term(k).size(),
                                                      Polynomial(f.ring.vars())));
        };
        PolyMatrix lhs = poly_mat_mul(get_part(i - 1), get_diff(*source, i), source->ring.vars());
        PolyMatrix rhs = poly_mat_mul(get_diff(*target, i), get_part(i), source->ring.vars());
        std::size_t rows = target->term(i - 1).size();
        std::size_t cols = source->term(i).size();
        auto at = [](const PolyMatrix& m, std::size_t r, std::size_t c) {
            if (r < m.size() && c < m[r].size()) return m[r][c];
            return Polynomial();
        };
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                if (!(at(lhs, r, c) == at(rhs, r, c)))
                    throw std::invalid_argument("chain map does not commute at index " +
                                                std::to_string(i));
    }
}

FreeComplex cone(const ChainMap& f) {
    f.validate();
    if (f.twist != 0) throw std::invalid_argument("cone needs an untwisted chain map");
    const FreeComplex& A = *f.source;
    const FreeComplex& B = *f.target;
    FreeComplex out;
    out.ring = A.ring;
    int lo = std::min(A.lo() + 1, B.lo());
    int hi = std::max(A.hi() + 1, B.hi());
    for (int i = lo; i <= hi; ++i) {
        FreeModule t;
        const FreeModule& a = A.term(i - 1);
        const FreeModule& b = B.term(i);
        t.twists = a.twists;
        t.twists.insert(t.twists.end(), b.twists.begin(), b.twists.end());
        for (std::size_t j = 0; j < a.size(); ++j) t.chars.push_back(a.gen_char(A.ring, j));
        for (std::size_t j = 0; j < b.size(); ++j) t.chars.push_back(b.gen_char(A.ring, j));
        if (!t.twists.empty()) out.terms[i] = std::move(t);
    }
    std::size_t nv = A.ring.vars();
    for (int i = lo; i <= hi; ++i) {
        const FreeModule& a_src = A.term(i - 1);
        const FreeModule& b_src = B.term(i);
        const FreeModule& a_tgt = A.term(i - 2);
        const FreeModule& b_tgt = B.term(i - 1);
        std::size_t rows = a_tgt.size() + b_tgt.size();
        std::size_t cols = a_src.size() + b_src.size();
        if (rows == 0 || cols == 0) continue;
        PolyMatrix m(rows, std::vector<Polynomial>(cols, Polynomial(nv)));
        auto da = A.diffs.find(i - 1);
        if (da != A.diffs.end())
            for (std::size_t r = 0; r < a_tgt.size(); ++r)
                for (std::size_t c = 0; c < a_src.size(); ++c) m[r][c] = -da->second[r][c];
        auto fp = f.parts.find(i - 1);
        if (fp != f.parts.end())
            for (std::size_t r = 0; r < b_tgt.size(); ++r)
                for (std::size_t c = 0; c < a_src.size(); ++c)
                    m[a_tgt.size() + r][c] = fp->second[r][c];
        auto db = B.diffs.find(i);
        if (db != B.diffs.end())
            for (std::size_t r = 0; r < b_tgt.size(); ++r)
                for (std::size_t c = 0; c < b_src.size(); ++c)
                    m[a_tgt.size() + r][a_src.size() + c] = db->second[r][c];
        out.diffs[i] = std::move(m);
    }
    return out;
}

int homology_strand(const FreeComplex& f, int i, int d) {
    Matrix out = f.strand(i, d);
    Matrix in = f.strand(i + 1, d);
    int dim_i = f.term_dim(i, d);
    int k = dim_i - static_cast<int>(out.rank());
    return k - static_cast<int>(in.rank());
}

FreeComplex single_free(const Grading& g, int t, int at_index) {
    FreeComplex f;
    f.ring = g;
    FreeModule m;
    m.twists = {t};
    f.terms[at_index] = std::move(m);
    return f;
}

} // namespace wps
