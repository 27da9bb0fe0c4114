#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qw {

// Dense row-major real matrix; rows are time slices, columns are sites.
struct RealMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;

    RealMatrix() = default;
    RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    std::span<double> row(std::size_t r) { return {a.data() + r * cols, cols}; }
    std::span<const double> row(std::size_t r) const { return {a.data() + r * cols, cols}; }

    void add(const RealMatrix& other) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += other.a[i];
    }

    void scale(double s) {
        for (double& v : a) v *= s;
    }

    bool operator==(const RealMatrix&) const = default;
};

}  // namespace qw
