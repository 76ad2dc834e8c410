#include "wps/algebra.hpp"

#include <sstream>
#include <stdexcept>
#include <set>

namespace wps {

std::vector<Character> PieceAlgebra::piece_characters(int d) const {
    return std::vector<Character>(static_cast<std::size_t>(std::max(0, dim(d))),
                                  char_zero(action_group()));
}

GradedAlgebra::GradedAlgebra(Grading g, std::vector<Polynomial> relations)
    : grading_(std::move(g)), relations_(std::move(relations)) {
    for (const auto& r : relations_) {
        auto d = r.homogeneous_degree(grading_);
        if (!d || r.is_zero())
            throw std::invalid_argument("algebra relation must be nonzero homogeneous");
        if (*d < 1)
            throw std::invalid_argument("algebra relation in degree < 1 (A_0 must stay Q)");
        relation_degrees_.push_back(*d);
    }
}

const GradedAlgebra::Piece& GradedAlgebra::piece(int d) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = pieces_.find(d);
    if (it != pieces_.end()) return it->second;

    Piece p;
    p.full_basis = monomial_basis(grading_, d);
    std::map<Monomial, std::size_t> pos;
    for (std::size_t i = 0; i < p.full_basis.size(); ++i) pos[p.full_basis[i]] = i;

    std::vector<std::vector<Rational>> rows;
    for (std::size_t ri = 0; ri < relations_.size(); ++ri) {
        int rd = relation_degrees_[ri];
        for (const auto& mono : monomial_basis(grading_, d - rd)) {
            std::vector<Rational> row(p.full_basis.size(), Rational(0));
            for (const auto& [m, c] : relations_[ri].terms()) row[pos.at(mono_mul(mono, m))] += c;
            rows.push_back(std::move(row));
        }
    }
    if (!rows.empty()) {
        Matrix M(rows.size(), p.full_basis.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < p.full_basis.size(); ++j) M.at(i, j) = rows[i][j];
        RrefResult rr = rref(M);
        p.pivots = rr.pivot_columns;
        for (std::size_t i = 0; i < rr.rank; ++i) {
            std::vector<Rational> row(p.full_basis.size());
            for (std::size_t j = 0; j < p.full_basis.size(); ++j) row[j] = rr.echelon.at(i, j);
            p.echelon.push_back(std::move(row));
        }
    }
    std::set<std::size_t> pivset(p.pivots.begin(), p.pivots.end());
    for (std::size_t i = 0; i < p.full_basis.size(); ++i)
        if (!pivset.count(i)) {
            p.quotient_idx.push_back(i);
            p.basis.push_back(p.full_basis[i]);
        }
    return pieces_.emplace(d, std::move(p)).first->second;
}

int GradedAlgebra::dim(int d) const {
    if (d < 0) return 0;
    return static_cast<int>(piece(d).basis.size());
}

std::vector<Monomial> GradedAlgebra::piece_basis(int d) const {
    if (d < 0) return {};
    return piece(d).basis;
}

std::vector<Rational> GradedAlgebra::reduce(int d, std::vector<Rational> v) const {
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
    for (auto idx : p.quotient_idx) out.push_back(v[idx]);
    return out;
}

Matrix GradedAlgebra::mult_table(int d, int e) const {
    const Piece& pd = piece(d);
    const Piece& pe = piece(e);
    const Piece& pt = piece(d + e);
    std::map<Monomial, std::size_t> pos;
    for (std::size_t i = 0; i < pt.full_basis.size(); ++i) pos[pt.full_basis[i]] = i;
    Matrix M(pt.basis.size(), pd.basis.size() * pe.basis.size());
    for (std::size_t i = 0; i < pd.basis.size(); ++i)
        for (std::size_t j = 0; j < pe.basis.size(); ++j) {
            std::vector<Rational> v(pt.full_basis.size(), Rational(0));
            v[pos.at(mono_mul(pd.basis[i], pe.basis[j]))] = 1;
            auto red = reduce(d + e, std::move(v));
            for (std::size_t r = 0; r < red.size(); ++r)
                M.at(r, i * pe.basis.size() + j) = red[r];
        }
    return M;
}

std::vector<Character> GradedAlgebra::piece_characters(int d) const {
    std::vector<Character> out;
    for (const auto& m : piece_basis(d)) out.push_back(character_of(grading_, m));
    return out;
}

std::string GradedAlgebra::describe() const {
    std::ostringstream os;
    os << "S(";
    for (std::size_t i = 0; i < grading_.degrees.size(); ++i)
        os << (i ? "," : "") << grading_.degrees[i];
    os << ")";
    if (!relations_.empty()) os << "/(" << relations_.size() << " relations)";
    return os.str();
}

VeroneseAlgebra::VeroneseAlgebra(std::shared_ptr<const PieceAlgebra> base, int step)
    : base_(std::move(base)), step_(step) {
    if (step_ < 1) throw std::invalid_argument("veronese step must be >= 1");
}

int VeroneseAlgebra::dim(int d) const {
    if (d < 0) return 0;
    return base_->dim(d * step_);
}

Matrix VeroneseAlgebra::mult_table(int d, int e) const {
    return base_->mult_table(d * step_, e * step_);
}

std::vector<Character> VeroneseAlgebra::piece_characters(int d) const {
    return base_->piece_characters(d * step_);
}

std::string VeroneseAlgebra::describe() const {
    std::ostringstream os;
    os << base_->describe() << "^(" << step_ << ")";
    return os.str();
}

std::vector<Character> tensor_characters(const std::vector<Character>& v,
                                         const std::vector<Character>& w,
                                         const WeightVector& mods) {
    std::vector<Character> out;
    out.reserve(v.size() * w.size());
    for (const auto& a : v)
        for (const auto& b : w) out.push_back(char_add(a, b, mods));
    return out;
}

std::vector<CharVector> kernel_by_char(const Matrix& m,
                                       const std::vector<Character>& src_chars,
                                       const std::vector<Character>& tgt_chars) {
    std::map<Character, std::vector<std::size_t>> src_blocks, tgt_blocks;
    for (std::size_t j = 0; j < src_chars.size(); ++j) src_blocks[src_chars[j]].push_back(j);
    for (std::size_t i = 0; i < tgt_chars.size(); ++i) tgt_blocks[tgt_chars[i]].push_back(i);
    // graded check: entries between mismatched characters must vanish
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0 && !(tgt_chars[i] == src_chars[j]))
                throw std::logic_error("matrix is not character-graded");
    std::vector<CharVector> out;
    for (const auto& [chi, cols] : src_blocks) {
        std::vector<std::size_t> rows;
        auto it = tgt_blocks.find(chi);
        if (it != tgt_blocks.end()) rows = it->second;
        Matrix sub = m.submatrix(rows, cols);
        for (auto& kv : kernel(sub)) {
            CharVector cv;
            cv.character = chi;
            cv.coords.assign(src_chars.size(), Rational(0));
            for (std::size_t j = 0; j < cols.size(); ++j) cv.coords[cols[j]] = kv[j];
            out.push_back(std::move(cv));
        }
    }
    return out;
}

} // namespace wps
