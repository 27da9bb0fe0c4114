#include "qw/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace qw {

DenseOperator DenseOperator::operator*(const DenseOperator& rhs) const {
    if (dim_ != rhs.dim_) throw std::invalid_argument("DenseOperator: dimension mismatch");
    DenseOperator out(dim_);
    for (int i = 0; i < dim_; ++i) {
        for (int k = 0; k < dim_; ++k) {
            const cdouble a = at(i, k);
            if (a == cdouble{0.0, 0.0}) continue;
            for (int j = 0; j < dim_; ++j) out.at(i, j) += a * rhs.at(k, j);
        }
    }
    return out;
}

DenseOperator DenseOperator::operator-(const DenseOperator& rhs) const {
    if (dim_ != rhs.dim_) throw std::invalid_argument("DenseOperator: dimension mismatch");
    DenseOperator out(dim_);
    for (std::size_t i = 0; i < m_.size(); ++i) out.m_[i] = m_[i] - rhs.m_[i];
    return out;
}

DenseOperator DenseOperator::operator+(const DenseOperator& rhs) const {
    if (dim_ != rhs.dim_) throw std::invalid_argument("DenseOperator: dimension mismatch");
    DenseOperator out(dim_);
    for (std::size_t i = 0; i < m_.size(); ++i) out.m_[i] = m_[i] + rhs.m_[i];
    return out;
}

DenseOperator DenseOperator::scaled(cdouble s) const {
    DenseOperator out(dim_);
    for (std::size_t i = 0; i < m_.size(); ++i) out.m_[i] = s * m_[i];
    return out;
}

DenseOperator DenseOperator::adjoint() const {
    DenseOperator out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out.at(j, i) = std::conj(at(i, j));
    return out;
}

std::vector<cdouble> DenseOperator::apply(std::span<const cdouble> v) const {
    if (static_cast<int>(v.size()) != dim_)
        throw std::invalid_argument("DenseOperator::apply: vector size mismatch");
    std::vector<cdouble> out(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) {
        cdouble s{0.0, 0.0};
        for (int j = 0; j < dim_; ++j) s += at(i, j) * v[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = s;
    }
    return out;
}

double DenseOperator::max_abs() const {
    double m = 0.0;
    for (const auto& v : m_) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const DenseOperator& a, const DenseOperator& b) {
    return (a - b).max_abs();
}

double max_abs_diff_interior(const DenseOperator& a, const DenseOperator& b, int margin_sites) {
    if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff_interior: dimension mismatch");
    const int d = a.dim() / 2;
    double m = 0.0;
    for (int x = margin_sites; x < d - margin_sites; ++x) {
        for (int s = 0; s < 2; ++s) {
            const int col = 2 * x + s;
            for (int row = 0; row < a.dim(); ++row)
                m = std::max(m, std::abs(a.at(row, col) - b.at(row, col)));
        }
    }
    return m;
}

double max_abs_diff_excluding_wrap_columns(const DenseOperator& a, const DenseOperator& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("max_abs_diff_excluding_wrap_columns: dimension mismatch");
    const int d = a.dim() / 2;
    const int wrap_up = 2 * (d - 1);  // x = d-1, spin +
    const int wrap_dn = 1;            // x = 0, spin -
    double m = 0.0;
    for (int col = 0; col < a.dim(); ++col) {
        if (col == wrap_up || col == wrap_dn) continue;
        for (int row = 0; row < a.dim(); ++row)
            m = std::max(m, std::abs(a.at(row, col) - b.at(row, col)));
    }
    return m;
}

}  // namespace qw
