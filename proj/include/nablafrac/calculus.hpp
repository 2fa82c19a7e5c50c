#pragma once

#include "nablafrac/grid.hpp"
#include "nablafrac/rational.hpp"
#include "nablafrac/special.hpp"

namespace nablafrac {

/// Fractional order nu > 0 with its ceiling N. Orders within 1e-9 of an
/// integer are snapped so the integer-order shortcuts apply exactly.
struct Order {
    double nu = 1.0;
    long   n_ceil = 1;

    static Order of(double nu) {
        if (!(nu > 0.0)) {
            throw std::invalid_argument("Order: nu must be positive, got " + std::to_string(nu));
        }
        Order o;
        if (auto n = nearest_integer(nu)) {
            o.nu = static_cast<double>(*n);
            o.n_ceil = *n;
        } else {
            o.nu = nu;
            o.n_ceil = static_cast<long>(std::ceil(nu));
        }
        return o;
    }

    bool is_integer() const { return nu == static_cast<double>(n_ceil); }
};

/// Whether an operator result is reported on its natural domain N_{a+1}
/// or extended by the convention value 0 on {a-k : k >= 0}. The extension
/// must be requested explicitly; Green's function assembly relies on it.
enum class Extension { natural, zero_below_base };

/// N-th order nabla difference on the shrunken grid [lo+N, hi].
/// order 0 returns f unchanged.
GridFunction nabla_diff(const GridFunction& f, long order);

/// Single backward difference of f at point t (t and t-1 must be in range).
inline double nabla_at(const GridFunction& f, long t) { return f(t) - f(t - 1); }

/// i-th backward difference of f at point t via the binomial expansion.
double nabla_at(const GridFunction& f, long t, long order);

/// Nabla definite integral of f from c to d (offsets on f's grid):
/// sum_{t=c+1}^{d} f(t) for d > c, zero for d = c, negated reverse sum otherwise.
double nabla_integral(const GridFunction& f, long c, long d);

/// Nabla fractional sum of order nu >= 0 based at a (an offset on f's grid):
/// (nabla_a^{-nu} f)(t) = sum_{s=a+1}^{t} H_{nu-1}(t, s-1) f(s) on [a+1, hi].
/// nu = 0 is the identity. With Extension::zero_below_base the result grid
/// is widened down to ext_lo <= a with the convention value 0 on [ext_lo, a].
GridFunction frac_sum(const GridFunction& f, double nu, long a,
                      Extension ext = Extension::natural, long ext_lo = 0);

/// Nabla Caputo fractional difference of order nu,
/// (nabla_{a*}^{nu} f)(t) = (nabla_a^{-(N-nu)} nabla^N f)(t) on [a+1, hi].
/// f must be defined down to a-N+1. Extension as for frac_sum.
GridFunction caputo_diff(const GridFunction& f, Order order, long a,
                         Extension ext = Extension::natural, long ext_lo = 0);

} // namespace nablafrac
