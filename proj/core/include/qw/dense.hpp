#pragma once

#include <complex>
#include <vector>

#include "qw/state.hpp"

namespace qw {

// Small dense complex matrix, row-major, basis ordering identical to
// StateVector (index 2x + s). Only the verification path uses it.
class DenseOperator {
public:
    DenseOperator() = default;
    explicit DenseOperator(int dim) : dim_(dim), m_(static_cast<std::size_t>(dim) * dim) {}

    static DenseOperator identity(int dim) {
        DenseOperator out(dim);
        for (int i = 0; i < dim; ++i) out.at(i, i) = 1.0;
        return out;
    }

    int dim() const { return dim_; }

    cdouble& at(int r, int c) { return m_[static_cast<std::size_t>(r) * dim_ + c]; }
    const cdouble& at(int r, int c) const { return m_[static_cast<std::size_t>(r) * dim_ + c]; }

    DenseOperator operator*(const DenseOperator& rhs) const;
    DenseOperator operator-(const DenseOperator& rhs) const;
    DenseOperator operator+(const DenseOperator& rhs) const;
    DenseOperator scaled(cdouble s) const;
    DenseOperator adjoint() const;

    std::vector<cdouble> apply(std::span<const cdouble> v) const;

    // max |entry|
    double max_abs() const;

private:
    int dim_ = 0;
    std::vector<cdouble> m_;
};

double max_abs_diff(const DenseOperator& a, const DenseOperator& b);

// max |entry| over all rows but only the columns whose site index lies in
// [margin, d - margin): used when an identity holds everywhere except where
// an l-step product can cross the cycle seam.
double max_abs_diff_interior(const DenseOperator& a, const DenseOperator& b, int margin_sites);

// max |entry| over all columns except the two the shift wraps (x = d-1 for
// spin +, x = 0 for spin -).
double max_abs_diff_excluding_wrap_columns(const DenseOperator& a, const DenseOperator& b);

}  // namespace qw
