#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "segmarket/rational.hpp"

namespace segmarket {

// Dense row-major matrix. Small by construction (K <= a dozen in practice).
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    const std::vector<T>& data() const noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;

inline RationalMatrix operator+(RationalMatrix lhs, const RationalMatrix& rhs) {
    for (std::size_t r = 0; r < lhs.rows(); ++r)
        for (std::size_t c = 0; c < lhs.cols(); ++c) lhs(r, c) += rhs(r, c);
    return lhs;
}

inline RationalMatrix operator-(RationalMatrix lhs, const RationalMatrix& rhs) {
    for (std::size_t r = 0; r < lhs.rows(); ++r)
        for (std::size_t c = 0; c < lhs.cols(); ++c) lhs(r, c) -= rhs(r, c);
    return lhs;
}

inline RationalMatrix operator*(const Rational& s, RationalMatrix m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) *= s;
    return m;
}

inline bool is_zero(const RationalMatrix& m) {
    for (const auto& v : m.data())
        if (v != 0) return false;
    return true;
}

/// Exact Gauss-Jordan solve of A x = b. Returns nullopt when the system is
/// inconsistent; free variables (rank-deficient A) are set to zero.
inline std::optional<std::vector<Rational>> solve_linear_system(RationalMatrix a, std::vector<Rational> b) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && a(pr, c) == 0) ++pr;
        if (pr == rows) continue;
        if (pr != r) {
            for (std::size_t k = 0; k < cols; ++k) std::swap(a(pr, k), a(r, k));
            std::swap(b[pr], b[r]);
        }
        const Rational inv = 1 / a(r, c);
        for (std::size_t k = c; k < cols; ++k) a(r, k) *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            const Rational f = a(i, c);
            for (std::size_t k = c; k < cols; ++k) a(i, k) -= f * a(r, k);
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    std::vector<Rational> x(cols);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
    return x;
}

}  // namespace segmarket
