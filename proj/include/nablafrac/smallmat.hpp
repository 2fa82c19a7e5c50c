#pragma once

#include <cassert>
#include <optional>
#include <utility>
#include <vector>

#include "nablafrac/errors.hpp"
#include "nablafrac/rational.hpp"

namespace nablafrac {

/// Dense row-major matrix for the desk-scale boundary systems (N <= 8).
/// Works over double and over Rat; elimination over Rat is exact.
template <typename T>
class Mat {
public:
    Mat() = default;
    Mat(long rows, long cols, T init = T(0))
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows * cols), init) {}

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    T& operator()(long i, long j) { return data_[static_cast<size_t>(i * cols_ + j)]; }
    const T& operator()(long i, long j) const { return data_[static_cast<size_t>(i * cols_ + j)]; }

private:
    long rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

inline Mat<double> to_double(const Mat<Rat>& m) {
    Mat<double> out(m.rows(), m.cols());
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
    return out;
}

inline Mat<long double> to_long_double(const Mat<Rat>& m) {
    Mat<long double> out(m.rows(), m.cols());
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).convert_to<long double>();
    return out;
}

namespace detail {
template <typename T>
T abs_value(const T& x) {
    using std::abs;
    return abs(x);
}
} // namespace detail

/// Determinant by Gaussian elimination with partial pivoting. Exact over Rat.
template <typename T>
T determinant(Mat<T> m) {
    assert(m.rows() == m.cols());
    const long n = m.rows();
    T det = T(1);
    for (long col = 0; col < n; ++col) {
        long piv = col;
        for (long r = col + 1; r < n; ++r)
            if (detail::abs_value(m(r, col)) > detail::abs_value(m(piv, col))) piv = r;
        if (m(piv, col) == T(0)) return T(0);
        if (piv != col) {
            for (long j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        for (long r = col + 1; r < n; ++r) {
            T factor = m(r, col) / m(col, col);
            for (long j = col; j < n; ++j) m(r, j) -= factor * m(col, j);
        }
    }
    return det;
}

/// Solve m x = rhs by partial-pivot elimination. Returns nothing when a
/// pivot vanishes (exactly over Rat, below tol relative over double).
template <typename T>
std::optional<std::vector<T>> solve(Mat<T> m, std::vector<T> rhs) {
    assert(m.rows() == m.cols());
    assert(static_cast<long>(rhs.size()) == m.rows());
    const long n = m.rows();
    for (long col = 0; col < n; ++col) {
        long piv = col;
        for (long r = col + 1; r < n; ++r)
            if (detail::abs_value(m(r, col)) > detail::abs_value(m(piv, col))) piv = r;
        if (m(piv, col) == T(0)) return std::nullopt;
        if (piv != col) {
            for (long j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
            std::swap(rhs[static_cast<size_t>(piv)], rhs[static_cast<size_t>(col)]);
        }
        for (long r = col + 1; r < n; ++r) {
            T factor = m(r, col) / m(col, col);
            for (long j = col; j < n; ++j) m(r, j) -= factor * m(col, j);
            rhs[static_cast<size_t>(r)] -= factor * rhs[static_cast<size_t>(col)];
        }
    }
    std::vector<T> x(static_cast<size_t>(n), T(0));
    for (long i = n - 1; i >= 0; --i) {
        T sum = rhs[static_cast<size_t>(i)];
        for (long j = i + 1; j < n; ++j) sum -= m(i, j) * x[static_cast<size_t>(j)];
        x[static_cast<size_t>(i)] = sum / m(i, i);
    }
    return x;
}

} // namespace nablafrac
