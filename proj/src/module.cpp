#include "wps/module.hpp"

#include <sstream>
#include <stdexcept>
#include <set>

namespace wps {

Character FreeModule::gen_char(const Grading& g, std::size_t j) const {
    if (j < chars.size()) return chars[j];
    return Character{std::vector<int>(g.vars(), 0)};
}

FreePieceBasis free_piece(const Grading& g, const FreeModule& f, int d) {
    FreePieceBasis out;
    WeightVector mods(g.char_moduli);
    for (std::size_t j = 0; j < f.size(); ++j) {
        Character cj = f.gen_char(g, j);
        for (const auto& m : monomial_basis(g, d - f.twists[j])) {
            out.elems.emplace_back(j, m);
            out.chars.push_back(char_add(cj, character_of(g, m), mods));
        }
    }
    return out;
}

int free_piece_dim(const Grading& g, const FreeModule& f, int d) {
    int s = 0;
    for (std::size_t j = 0; j < f.size(); ++j) s += monomial_count(g, d - f.twists[j]);
    return s;
}

Matrix strand_matrix(const Grading& g, const FreeModule& src, const FreeModule& tgt,
                     const PolyMatrix& entries, int d) {
    FreePieceBasis sb = free_piece(g, src, d);
    FreePieceBasis tb = free_piece(g, tgt, d);
    std::map<std::pair<std::size_t, Monomial>, std::size_t> pos;
    for (std::size_t i = 0; i < tb.size(); ++i) pos[tb.elems[i]] = i;
    Matrix M(tb.size(), sb.size());
    for (std::size_t c = 0; c < sb.size(); ++c) {
        auto [j, mono] = sb.elems[c];
        for (std::size_t i = 0; i < tgt.size(); ++i) {
            const Polynomial& e = entries[i][j];
            for (const auto& [m, coef] : e.terms()) {
                auto it = pos.find({i, mono_mul(m, mono)});
                if (it == pos.end()) throw std::logic_error("strand image out of basis");
                M.at(it->second, c) += coef;
            }
        }
    }
    return M;
}

std::vector<Rational> column_coords(const Grading& g, const FreeModule& f,
                                    const std::vector<Polynomial>& col, int d) {
    FreePieceBasis b = free_piece(g, f, d);
    std::map<std::pair<std::size_t, Monomial>, std::size_t> pos;
    for (std::size_t i = 0; i < b.size(); ++i) pos[b.elems[i]] = i;
    std::vector<Rational> v(b.size(), Rational(0));
    for (std::size_t j = 0; j < f.size(); ++j)
        for (const auto& [m, c] : col[j].terms()) {
            auto it = pos.find({j, m});
            if (it == pos.end()) throw std::invalid_argument("column not homogeneous of the degree");
            v[it->second] = c;
        }
    return v;
}

std::vector<Polynomial> coords_to_column(const Grading& g, const FreeModule& f,
                                         const std::vector<Rational>& v, int d) {
    FreePieceBasis b = free_piece(g, f, d);
    std::vector<Polynomial> col(f.size(), Polynomial(g.vars()));
    for (std::size_t i = 0; i < b.size(); ++i)
        if (v[i] != 0) col[b.elems[i].first].add_term(b.elems[i].second, v[i]);
    return col;
}

GradedModule::GradedModule(Grading ring, FreeModule gens, PolyMatrix relations,
                           std::vector<int> relation_degrees,
                           std::vector<Character> relation_chars)
    : ring_(std::move(ring)), gens_(std::move(gens)), rel_(std::move(relations)),
      rel_degs_(std::move(relation_degrees)), rel_chars_(std::move(relation_chars)) {
    if (!rel_.empty() && rel_.size() != gens_.size())
        throw std::invalid_argument("relation matrix must have one row per generator");
    std::size_t cols = rel_.empty() ? 0 : rel_[0].size();
    if (cols != rel_degs_.size())
        throw std::invalid_argument("relation column degree count mismatch");
    for (std::size_t j = 0; j < gens_.size(); ++j)
        for (std::size_t k = 0; k < cols; ++k) {
            const Polynomial& e = rel_[j][k];
            if (!e.is_homogeneous_of(ring_, rel_degs_[k] - gens_.twists[j]))
                throw std::invalid_argument("inhomogeneous presentation entry (" +
                                            std::to_string(j) + "," + std::to_string(k) + ")");
        }
    if (!ring_.trivial_action()) {
        // relation columns must be eigenvectors so that pieces stay graded by
        // the character group
        WeightVector mods(ring_.char_moduli);
        for (std::size_t k = 0; k < cols; ++k) {
            std::optional<Character> col_char;
            for (std::size_t j = 0; j < gens_.size(); ++j) {
                if (rel_[j][k].is_zero()) continue;
                auto pc = rel_[j][k].pure_character(ring_);
                if (!pc)
                    throw std::invalid_argument("relation entry mixes characters at (" +
                                                std::to_string(j) + "," + std::to_string(k) + ")");
                Character total = char_add(*pc, gens_.gen_char(ring_, j), mods);
                if (!col_char)
                    col_char = total;
                else if (!(*col_char == total))
                    throw std::invalid_argument("relation column " + std::to_string(k) +
                                                " mixes characters");
            }
        }
    }
}

GradedModule GradedModule::free_module(Grading ring, std::vector<int> twists,
                                       std::vector<Character> chars) {
    std::size_t ngens = twists.size();
    return GradedModule(std::move(ring), FreeModule{std::move(twists), std::move(chars)},
                        PolyMatrix(ngens), {});
}

const GradedModule::Piece& GradedModule::piece(int d) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = pieces_.find(d);
    if (it != pieces_.end()) return it->second;

    Piece p;
    p.full = free_piece(ring_, gens_, d);
    std::map<std::pair<std::size_t, Monomial>, std::size_t> pos;
    for (std::size_t i = 0; i < p.full.size(); ++i) pos[p.full.elems[i]] = i;

    std::vector<std::vector<Rational>> rows;
    std::size_t cols = rel_.empty() ? 0 : rel_[0].size();
    for (std::size_t k = 0; k < cols; ++k)
        for (const auto& mono : monomial_basis(ring_, d - rel_degs_[k])) {
            std::vector<Rational> row(p.full.size(), Rational(0));
            for (std::size_t j = 0; j < gens_.size(); ++j)
                for (const auto& [m, c] : rel_[j][k].terms())
                    row[pos.at({j, mono_mul(m, mono)})] += c;
            rows.push_back(std::move(row));
        }
    if (!rows.empty()) {
        Matrix M(rows.size(), p.full.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < p.full.size(); ++j) M.at(i, j) = rows[i][j];
        RrefResult rr = rref(M);
        p.pivots = rr.pivot_columns;
        for (std::size_t i = 0; i < rr.rank; ++i) {
            std::vector<Rational> row(p.full.size());
            for (std::size_t j = 0; j < p.full.size(); ++j) row[j] = rr.echelon.at(i, j);
            p.echelon.push_back(std::move(row));
        }
    }
    std::set<std::size_t> pivset(p.pivots.begin(), p.pivots.end());
    for (std::size_t i = 0; i < p.full.size(); ++i)
        if (!pivset.count(i)) p.quotient_idx.push_back(i);
    return pieces_.emplace(d, std::move(p)).first->second;
}

int GradedModule::piece_dim(int d) const {
    return static_cast<int>(piece(d).quotient_idx.size());
}

std::vector<std::pair<std::size_t, Monomial>> GradedModule::piece_basis(int d) const {
    const Piece& p = piece(d);
    std::vector<std::pair<std::size_t, Monomial>> out;
    for (auto i : p.quotient_idx) out.push_back(p.full.elems[i]);
    return out;
}

std::vector<Character> GradedModule::piece_characters(int d) const {
    const Piece& p = piece(d);
    std::vector<Character> out;
    for (auto i : p.quotient_idx) out.push_back(p.full.chars[i]);
    return out;
}

std::vector<Rational> GradedModule::project(int d, std::vector<Rational> v) const {
    const Piece& p = piece(d);
    for (std::size_t i = 0; i < p.echelon.size(); ++i) {
        const Rational& x = v[p.pivots[i]];
        if (x != 0) {
            Rational f = x;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * p.echelon[i][j];
        }
    }
    std::vector<Rational> out;
    out.reserve(p.quotient_idx.size());
    for (auto i : p.quotient_idx) out.push_back(v[i]);
    return out;
}

std::vector<Rational> GradedModule::lift_basis(int d, std::size_t i) const {
    const Piece& p = piece(d);
    std::vector<Rational> v(p.full.size(), Rational(0));
    v[p.quotient_idx[i]] = 1;
    return v;
}

std::vector<std::vector<Rational>> GradedModule::relation_span(int d) const {
    return piece(d).echelon;
}

Matrix GradedModule::mult_matrix(const Polynomial& f, int d) const {
    auto e = f.homogeneous_degree(ring_);
    if (!e) throw std::invalid_argument("inhomogeneous multiplier");
    int dt = d + (f.is_zero() ? 0 : *e);
    const Piece& ps = piece(d);
    const Piece& pt = piece(dt);
    std::map<std::pair<std::size_t, Monomial>, std::size_t> pos;
    for (std::size_t i = 0; i < pt.full.size(); ++i) pos[pt.full.elems[i]] = i;
    Matrix M(pt.quotient_idx.size(), ps.quotient_idx.size());
    for (std::size_t c = 0; c < ps.quotient_idx.size(); ++c) {
        auto [j, mono] = ps.full.elems[ps.quotient_idx[c]];
        std::vector<Rational> v(pt.full.size(), Rational(0));
        for (const auto& [m, coef] : f.terms()) v[pos.at({j, mono_mul(m, mono)})] += coef;
        auto red = project(dt, std::move(v));
        for (std::size_t r = 0; r < red.size(); ++r) M.at(r, c) = red[r];
    }
    return M;
}

GradedModule GradedModule::twist(int j) const {
    // twist(M, j)_k = M_{j+k}
    FreeModule g = gens_;
    for (auto& t : g.twists) t -= j;
    std::vector<int> rd = rel_degs_;
    for (auto& t : rd) t -= j;
    return GradedModule(ring_, std::move(g), rel_, std::move(rd), rel_chars_);
}

std::string GradedModule::describe() const {
    std::ostringstream os;
    os << "coker(" << (rel_.empty() ? 0 : rel_[0].size()) << " cols -> gens[";
    for (std::size_t j = 0; j < gens_.size(); ++j) os << (j ? "," : "") << gens_.twists[j];
    os << "])";
    return os.str();
}

void GradedMap::validate() const {
    for (std::size_t i = 0; i < target->gens().size(); ++i)
        for (std::size_t j = 0; j < source->gens().size(); ++j) {
            int want = source->gens().twists[j] + shift - target->gens().twists[i];
            if (!entries[i][j].is_homogeneous_of(source->ring(), want))
                throw std::invalid_argument("graded map entry (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") not homogeneous of degree " +
                                            std::to_string(want));
        }
}

Matrix GradedMap::piece_matrix(int d) const {
    const Grading& g = source->ring();
    int dt = d + shift;
    auto sb_full = free_piece(g, source->gens(), d);
    std::map<std::pair<std::size_t, Monomial>, std::size_t> spos;
    for (std::size_t i = 0; i < sb_full.size(); ++i) spos[sb_full.elems[i]] = i;
    auto tp_full = free_piece(g, target->gens(), dt);
    std::map<std::pair<std::size_t, Monomial>, std::size_t> pos;
    for (std::size_t i = 0; i < tp_full.size(); ++i) pos[tp_full.elems[i]] = i;
    auto image_of_free = [&](const std::vector<Rational>& fv) {
        std::vector<Rational> v(tp_full.size(), Rational(0));
        for (std::size_t c = 0; c < fv.size(); ++c) {
            if (fv[c] == 0) continue;
            auto [j, mono] = sb_full.elems[c];
            for (std::size_t i = 0; i < target->gens().size(); ++i)
                for (const auto& [m, coef] : entries[i][j].terms())
                    v[pos.at({i, mono_mul(m, mono)})] += fv[c] * coef;
        }
        return v;
    };
    // compatibility with relations at this degree
    for (const auto& row : source->relation_span(d)) {
        auto img = target->project(dt, image_of_free(row));
        for (const auto& x : img)
            if (x != 0)
                throw std::invalid_argument("map not compatible with source relations at degree " +
                                            std::to_string(d));
    }
    auto sb = source->piece_basis(d);
    Matrix M(target->piece_dim(dt), sb.size());
    for (std::size_t c = 0; c < sb.size(); ++c) {
        auto v = image_of_free(source->lift_basis(d, c));
        auto red = target->project(dt, std::move(v));
        for (std::size_t r = 0; r < red.size(); ++r) M.at(r, c) = red[r];
    }
    return M;
}

std::vector<std::vector<Rational>> GradedMap::kernel_piece(int d) const {
    return kernel(piece_matrix(d));
}

} // namespace wps
