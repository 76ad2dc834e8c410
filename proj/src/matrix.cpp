#include "wps/matrix.hpp"

#include <stdexcept>

namespace wps {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& v = at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) {
                const Rational& w = other.at(k, j);
                if (w != 0) r.at(i, j) += v * w;
            }
        }
    return r;
}

bool Matrix::operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& row_idx,
                         const std::vector<std::size_t>& col_idx) const {
    Matrix r(row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i)
        for (std::size_t j = 0; j < col_idx.size(); ++j)
            r.at(i, j) = at(row_idx[i], col_idx[j]);
    return r;
}

std::size_t Matrix::rank() const { return rref(*this).rank; }

RrefResult rref(const Matrix& m) {
    RrefResult out;
    Matrix r = m;
    const std::size_t rows = r.rows(), cols = r.cols();
    std::size_t lead = 0;
    for (std::size_t c = 0; c < cols && lead < rows; ++c) {
        std::size_t piv = lead;
        while (piv < rows && r.at(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != lead)
            for (std::size_t j = 0; j < cols; ++j) std::swap(r.at(piv, j), r.at(lead, j));
        Rational inv = r.at(lead, c);
        for (std::size_t j = c; j < cols; ++j) r.at(lead, j) /= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == lead || r.at(i, c) == 0) continue;
            Rational f = r.at(i, c);
            for (std::size_t j = c; j < cols; ++j) r.at(i, j) -= f * r.at(lead, j);
        }
        out.pivot_columns.push_back(c);
        ++lead;
    }
    out.rank = out.pivot_columns.size();
    out.echelon = std::move(r);

    std::vector<bool> is_pivot(cols, false);
    for (auto c : out.pivot_columns) is_pivot[c] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < out.rank; ++i)
            v[out.pivot_columns[i]] = -out.echelon.at(i, f);
        out.kernel_basis.push_back(std::move(v));
    }
    return out;
}

std::vector<std::vector<Rational>> kernel(const Matrix& m) {
    if (m.cols() == 0) return {};
    if (m.rows() == 0) {
        std::vector<std::vector<Rational>> basis;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::vector<Rational> v(m.cols(), Rational(0));
            v[j] = 1;
            basis.push_back(std::move(v));
        }
        return basis;
    }
    return rref(m).kernel_basis;
}

std::optional<std::vector<Rational>> solve_in_span(
    const std::vector<std::vector<Rational>>& basis,
    const std::vector<Rational>& target) {
    const std::size_t n = target.size();
    if (basis.empty()) {
        for (const auto& x : target)
            if (x != 0) return std::nullopt;
        return std::vector<Rational>{};
    }
    Matrix aug(n, basis.size() + 1);
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) aug.at(i, j) = basis[j][i];
    for (std::size_t i = 0; i < n; ++i) aug.at(i, basis.size()) = target[i];
    RrefResult rr = rref(aug);
    for (auto c : rr.pivot_columns)
        if (c == basis.size()) return std::nullopt;
    std::vector<Rational> coeff(basis.size(), Rational(0));
    for (std::size_t i = 0; i < rr.pivot_columns.size(); ++i)
        coeff[rr.pivot_columns[i]] = rr.echelon.at(i, basis.size());
    return coeff;
}

void Span::reduce(std::vector<Rational>& v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& x = v[pivots_[i]];
        if (x != 0) {
            Rational f = x;
            for (std::size_t j = 0; j < dim_; ++j) v[j] -= f * rows_[i][j];
        }
    }
}

bool Span::add(std::vector<Rational> v) {
    reduce(v);
    std::size_t p = 0;
    while (p < dim_ && v[p] == 0) ++p;
    if (p == dim_) return false;
    Rational inv = v[p];
    for (auto& x : v) x /= inv;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Rational f = rows_[i][p];
        if (f != 0)
            for (std::size_t j = 0; j < dim_; ++j) rows_[i][j] -= f * v[j];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
}

bool Span::contains(std::vector<Rational> v) const {
    reduce(v);
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

} // namespace wps
