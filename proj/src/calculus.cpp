#include "nablafrac/calculus.hpp"

#include <cmath>
#include <string>

namespace nablafrac {

GridFunction nabla_diff(const GridFunction& f, long order) {
    if (order < 0) throw std::invalid_argument("nabla_diff: negative order");
    if (f.grid().size() < order + 1) {
        throw InsufficientDomain("nabla_diff: order " + std::to_string(order) +
                                 " needs " + std::to_string(order + 1) + " points, grid has " +
                                 std::to_string(f.grid().size()));
    }
    GridFunction g = f;
    for (long k = 0; k < order; ++k) {
        const Grid& gr = g.grid();
        GridFunction next = GridFunction::sample(Grid(gr.base, gr.lo + 1, gr.hi),
                                                 [&](long n) { return g(n) - g(n - 1); });
        g = std::move(next);
    }
    return g;
}

double nabla_at(const GridFunction& f, long t, long order) {
    double sum = 0.0;
    for (long i = 0; i <= order; ++i) {
        double c = to_double(Rat(binomial(order, i)));
        sum += (i % 2 == 0 ? c : -c) * f(t - i);
    }
    return sum;
}

double nabla_integral(const GridFunction& f, long c, long d) {
    if (c == d) return 0.0;
    long lo = std::min(c, d), hi = std::max(c, d);
    if (lo + 1 < f.grid().lo || hi > f.grid().hi) {
        throw InsufficientDomain("nabla_integral: range (" + std::to_string(lo) + ", " +
                                 std::to_string(hi) + "] outside grid [" +
                                 std::to_string(f.grid().lo) + ", " + std::to_string(f.grid().hi) + "]");
    }
    double sum = 0.0;
    for (long t = lo + 1; t <= hi; ++t) sum += f(t);
    return d > c ? sum : -sum;
}

namespace {

GridFunction extend_below(const GridFunction& f, long a, Extension ext, long ext_lo) {
    if (ext == Extension::natural) return f;
    if (ext_lo > a) {
        throw std::invalid_argument("extension must start at or below the base point");
    }
    GridFunction out = GridFunction::zeros(Grid(f.grid().base, ext_lo, f.grid().hi));
    for (long n = f.grid().lo; n <= f.grid().hi; ++n) out.at(n) = f(n);
    return out;
}

} // namespace

GridFunction frac_sum(const GridFunction& f, double nu, long a, Extension ext, long ext_lo) {
    if (nu < 0.0) {
        throw std::invalid_argument("frac_sum: negative order " + std::to_string(nu) +
                                    " (use caputo_diff for differences)");
    }
    if (a + 1 < f.grid().lo || f.grid().hi < a + 1) {
        throw InsufficientDomain("frac_sum: f not defined on [a+1, hi] for a = " + std::to_string(a));
    }
    const long hi = f.grid().hi;
    GridFunction result;
    if (auto n = nearest_integer(nu); n && *n == 0) {
        result = f.restrict_to(a + 1, hi);
    } else {
        result = GridFunction::sample(Grid(f.grid().base, a + 1, hi), [&](long t) {
            double sum = 0.0;
            for (long s = a + 1; s <= t; ++s) sum += monomial(nu - 1.0, t - s + 1) * f(s);
            return sum;
        });
    }
    return extend_below(result, a, ext, ext_lo);
}

GridFunction caputo_diff(const GridFunction& f, Order order, long a, Extension ext, long ext_lo) {
    const long N = order.n_ceil;
    if (f.grid().lo > a - N + 1 || f.grid().hi < a + 1) {
        throw InsufficientDomain("caputo_diff: order ceiling " + std::to_string(N) +
                                 " needs f on [a-N+1, hi] around a = " + std::to_string(a));
    }
    GridFunction dN = nabla_diff(f.restrict_to(a - N + 1, f.grid().hi), N);
    if (order.is_integer()) {
        return extend_below(dN.restrict_to(a + 1, f.grid().hi), a, ext, ext_lo);
    }
    return frac_sum(dN, static_cast<double>(N) - order.nu, a, ext, ext_lo);
}

} // namespace nablafrac
