#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nablafrac/errors.hpp"

namespace nablafrac {

/// A point t = base + offset on an integer-offset grid. The real base is
/// carried along but all index arithmetic stays in integers, so t - s is
/// exact whenever both points share a base.
struct GridPoint {
    double base = 0.0;
    long   offset = 0;

    double value() const { return base + static_cast<double>(offset); }

    friend GridPoint operator+(GridPoint p, long d) { return {p.base, p.offset + d}; }
    friend GridPoint operator-(GridPoint p, long d) { return {p.base, p.offset - d}; }
    friend bool operator==(GridPoint a, GridPoint b) {
        return a.base == b.base && a.offset == b.offset;
    }
};

/// Integer difference t - s. Both points must share the same base.
inline long operator-(GridPoint t, GridPoint s) {
    assert(t.base == s.base);
    return t.offset - s.offset;
}

/// The finite domain {base + lo, ..., base + hi}.
struct Grid {
    double base = 0.0;
    long   lo = 0;
    long   hi = 0;

    Grid() = default;
    Grid(double base_, long lo_, long hi_) : base(base_), lo(lo_), hi(hi_) {
        if (lo > hi) {
            throw std::invalid_argument("Grid: lo (" + std::to_string(lo) +
                                        ") exceeds hi (" + std::to_string(hi) + ")");
        }
    }

    long size() const { return hi - lo + 1; }
    bool contains(long n) const { return n >= lo && n <= hi; }
    GridPoint point(long n) const { return {base, n}; }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.base == b.base && a.lo == b.lo && a.hi == b.hi;
    }
};

/// Backward jump within the domain starting at `a`: rho(t) = max{a, t-1}.
inline long rho(long t, long a) { return t - 1 > a ? t - 1 : a; }

/// A real-valued function on a finite grid. Evaluation outside [lo, hi]
/// throws; there is no silent extrapolation.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(Grid grid, std::vector<double> values)
        : grid_(grid), values_(std::move(values)) {
        if (static_cast<long>(values_.size()) != grid_.size()) {
            throw std::invalid_argument(
                "GridFunction: " + std::to_string(values_.size()) + " values for a grid of " +
                std::to_string(grid_.size()) + " points");
        }
    }

    /// Zero function on the given grid.
    static GridFunction zeros(Grid grid) {
        return GridFunction(grid, std::vector<double>(static_cast<size_t>(grid.size()), 0.0));
    }

    /// Build from a callable sampled at every offset in [lo, hi].
    template <typename F>
    static GridFunction sample(Grid grid, F&& f) {
        std::vector<double> v;
        v.reserve(static_cast<size_t>(grid.size()));
        for (long n = grid.lo; n <= grid.hi; ++n) v.push_back(f(n));
        return GridFunction(grid, std::move(v));
    }

    const Grid& grid() const { return grid_; }

    double operator()(long n) const {
        check(n);
        return values_[static_cast<size_t>(n - grid_.lo)];
    }
    double operator()(GridPoint t) const {
        assert(t.base == grid_.base);
        return (*this)(t.offset);
    }

    double& at(long n) {
        check(n);
        return values_[static_cast<size_t>(n - grid_.lo)];
    }

    const std::vector<double>& values() const { return values_; }

    /// Restriction to [lo, hi] (must be inside the current grid).
    GridFunction restrict_to(long lo, long hi) const {
        if (lo < grid_.lo || hi > grid_.hi) {
            throw InsufficientDomain("restrict_to: requested [" + std::to_string(lo) + ", " +
                                     std::to_string(hi) + "] outside grid [" +
                                     std::to_string(grid_.lo) + ", " + std::to_string(grid_.hi) + "]");
        }
        std::vector<double> v(values_.begin() + (lo - grid_.lo), values_.begin() + (hi - grid_.lo + 1));
        return GridFunction(Grid(grid_.base, lo, hi), std::move(v));
    }

private:
    void check(long n) const {
        if (!grid_.contains(n)) {
            throw std::out_of_range("GridFunction: offset " + std::to_string(n) +
                                    " outside grid [" + std::to_string(grid_.lo) + ", " +
                                    std::to_string(grid_.hi) + "]");
        }
    }

    Grid grid_;
    std::vector<double> values_;
};

} // namespace nablafrac
