#include "nablafrac/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nablafrac {

IvpSpec IvpSpec::with_derivatives(Order order, long a, GridFunction h, std::vector<double> c) {
    IvpSpec s;
    s.order = order;
    s.a = a;
    s.h = std::move(h);
    s.style = Style::derivative_at_a;
    s.init = std::move(c);
    s.validate();
    return s;
}

IvpSpec IvpSpec::with_point_values(Order order, long a, GridFunction h, std::vector<double> A,
                                   std::optional<GridFunction> q) {
    IvpSpec s;
    s.order = order;
    s.a = a;
    s.h = std::move(h);
    s.style = Style::point_values;
    s.init = std::move(A);
    s.q = std::move(q);
    s.validate();
    return s;
}

void IvpSpec::validate() const {
    const long N = order.n_ceil;
    if (static_cast<long>(init.size()) != N) {
        throw std::invalid_argument("IvpSpec: expected " + std::to_string(N) +
                                    " initial values, got " + std::to_string(init.size()));
    }
    if (q && style != Style::point_values) {
        throw std::invalid_argument("IvpSpec: potential q requires point-value initial conditions");
    }
    if (h.grid().lo > a + 1 || h.grid().hi < a + 1) {
        throw InsufficientDomain("IvpSpec: rhs must cover [a+1, b]");
    }
    if (q) {
        if (q->grid().lo > a + 1 || q->grid().hi < h.grid().hi) {
            throw InsufficientDomain("IvpSpec: q must cover [a+1, b]");
        }
        if (q->grid().base != h.grid().base) {
            throw std::invalid_argument("IvpSpec: q and h bases differ");
        }
    }
}

BvpSpec BvpSpec::homogeneous(Order order, double base, long a, long b, long k,
                             std::vector<long> j_orders) {
    BvpSpec s;
    s.order = order;
    s.base = base;
    s.a = a;
    s.b = b;
    s.k = k;
    s.j_orders = std::move(j_orders);
    s.left_values.assign(static_cast<size_t>(k), 0.0);
    s.right_values.assign(s.j_orders.size(), 0.0);
    s.h = GridFunction::zeros(Grid(base, a + 1, b));
    s.validate();
    return s;
}

void BvpSpec::validate() const {
    const long N = order.n_ceil;
    if (!(order.nu > 1.0)) {
        throw std::invalid_argument("BvpSpec: nu must exceed 1");
    }
    if (k < 1 || k > N - 1) {
        throw std::invalid_argument("BvpSpec: k = " + std::to_string(k) +
                                    " outside {1, ..., N-1} with N = " + std::to_string(N));
    }
    if (static_cast<long>(j_orders.size()) != N - k) {
        throw std::invalid_argument("BvpSpec: expected " + std::to_string(N - k) +
                                    " right-side orders, got " + std::to_string(j_orders.size()));
    }
    for (size_t m = 0; m < j_orders.size(); ++m) {
        if (j_orders[m] < 0 || j_orders[m] > N - 1) {
            throw std::invalid_argument("BvpSpec: j order " + std::to_string(j_orders[m]) +
                                        " outside {0, ..., N-1}");
        }
        if (m > 0 && j_orders[m] <= j_orders[m - 1]) {
            throw std::invalid_argument("BvpSpec: j orders must be strictly increasing");
        }
    }
    const long span_min = std::max<long>(1, j_orders.back() - N + k + 1);
    if (b - a < span_min) {
        throw std::invalid_argument("BvpSpec: b-a = " + std::to_string(b - a) +
                                    " below admissible minimum " + std::to_string(span_min));
    }
    if (static_cast<long>(left_values.size()) != k ||
        left_values.size() + right_values.size() != static_cast<size_t>(N)) {
        throw std::invalid_argument("BvpSpec: boundary value counts do not match k and N-k");
    }
    if (h.grid().base != base || h.grid().lo > a + 1 || h.grid().hi < b) {
        throw InsufficientDomain("BvpSpec: rhs must cover [a+1, b] on the shared base");
    }
}

std::vector<GridFunction> general_solution_basis(Order order, long a, Grid t_range) {
    const long N = order.n_ceil;
    std::vector<GridFunction> basis;
    basis.reserve(static_cast<size_t>(N));
    for (long p = 0; p < N; ++p) {
        basis.push_back(GridFunction::sample(
            t_range, [&](long t) { return basis_value(N, a, p, t); }));
    }
    return basis;
}

namespace {

GridFunction ivp_solve_point_values(const IvpSpec& spec) {
    const long N = spec.order.n_ceil;
    const long a = spec.a;
    const long b = spec.h.grid().hi;
    const Grid out_grid(spec.h.grid().base, a - N + 1, b);
    std::vector<double> x(static_cast<size_t>(out_grid.size()), 0.0);
    auto idx = [&](long t) { return static_cast<size_t>(t - out_grid.lo); };

    for (long i = 0; i < N; ++i) x[idx(a - i)] = spec.init[static_cast<size_t>(i)];

    const bool integer_order = spec.order.is_integer();
    for (long t = a + 1; t <= b; ++t) {
        double qx = spec.q ? (*spec.q)(t) * x[idx(t - 1)] : 0.0;
        double known = 0.0;
        if (integer_order) {
            for (long i = 1; i <= N; ++i) {
                double c = to_double(Rat(binomial(N, i)));
                known += (i % 2 == 0 ? c : -c) * x[idx(t - i)];
            }
        } else {
            const double kernel_order = static_cast<double>(N) - spec.order.nu - 1.0;
            // Leading coefficient H_{N-nu-1}(t, t-1) is identically 1, so the
            // step stays explicit; verify rather than assume.
            const double lead = monomial(kernel_order, 1);
            if (std::abs(lead - 1.0) > 1e-12) {
                throw std::logic_error("ivp_solve: leading coefficient drifted from 1");
            }
            for (long s = a + 1; s <= t; ++s) {
                double kern = monomial(kernel_order, t - s + 1);
                long i_min = (s == t) ? 1 : 0;
                double inner = 0.0;
                for (long i = i_min; i <= N; ++i) {
                    double c = to_double(Rat(binomial(N, i)));
                    inner += (i % 2 == 0 ? c : -c) * x[idx(s - i)];
                }
                known += kern * inner;
            }
        }
        x[idx(t)] = spec.h(t) - qx - known;
    }
    return GridFunction(out_grid, std::move(x));
}

} // namespace

GridFunction ivp_solve(const IvpSpec& spec) {
    spec.validate();
    if (spec.style == IvpSpec::Style::point_values) return ivp_solve_point_values(spec);

    const long N = spec.order.n_ceil;
    const long a = spec.a;
    const long b = spec.h.grid().hi;
    GridFunction particular =
        frac_sum(spec.h, spec.order.nu, a, Extension::zero_below_base, a - N + 1);
    return GridFunction::sample(Grid(spec.h.grid().base, a - N + 1, b), [&](long t) {
        double sum = particular(t);
        for (long p = 0; p < N; ++p) {
            sum += spec.init[static_cast<size_t>(p)] * monomial(static_cast<double>(p), t - a);
        }
        return sum;
    });
}

Mat<Rat> matrix_D(const BvpSpec& spec) {
    spec.validate();
    const long N = spec.order.n_ceil;
    const long size = N - spec.k;
    Mat<Rat> D(size, size);
    for (long m = 0; m < size; ++m) {
        for (long p = spec.k; p < N; ++p) {
            D(m, p - spec.k) = monomial_rat(p - spec.j_orders[static_cast<size_t>(m)],
                                            spec.b - spec.a + N - p);
        }
    }
    return D;
}

Rat vandermonde_check(const BvpSpec& spec) {
    spec.validate();
    const long n = spec.order.n_ceil - spec.k;
    Mat<Rat> E(n, n);
    for (long m = 0; m < n; ++m) {
        Rat base = Rat(-spec.j_orders[static_cast<size_t>(m)]);
        for (long c = 0; c < n; ++c) {
            Rat v = 1;
            for (long e = 0; e < n - 1 - c; ++e) v *= base;
            E(m, c) = v;
        }
    }
    Rat direct = determinant(E);

    Rat closed = ((n * (n - 1) / 2) % 2 == 0) ? Rat(1) : Rat(-1);
    for (size_t p = 0; p < spec.j_orders.size(); ++p) {
        for (size_t r = p + 1; r < spec.j_orders.size(); ++r) {
            closed *= Rat(spec.j_orders[p] - spec.j_orders[r]);
        }
    }
    if (direct != closed) {
        throw std::logic_error("vandermonde_check: direct determinant disagrees with closed form");
    }
    return direct;
}

Mat<Rat> boundary_matrix_M(const BvpSpec& spec) {
    spec.validate();
    const long N = spec.order.n_ceil;
    Mat<Rat> M(N, N);
    for (long i = 0; i < spec.k; ++i) {
        for (long p = 0; p < N; ++p) {
            // nabla^i H_p(t, a-N+p) at t = alpha reduces to H_{p-i}(alpha, a-N+p).
            M(i, p) = monomial_rat(p - i, spec.k - p);
        }
    }
    for (long m = 0; m < N - spec.k; ++m) {
        for (long p = 0; p < N; ++p) {
            M(spec.k + m, p) = monomial_rat(p - spec.j_orders[static_cast<size_t>(m)],
                                            spec.b - spec.a + N - p);
        }
    }
    return M;
}

namespace {

/// Exact fractional sum of integer order nu >= 1 with the zero convention
/// on [a-N+1, a]; values indexed from a-N+1.
std::vector<Rat> rational_particular(const GridFunction& h, long nu, long a, long N, long b) {
    std::vector<Rat> part(static_cast<size_t>(b - (a - N + 1) + 1), Rat(0));
    auto idx = [&](long t) { return static_cast<size_t>(t - (a - N + 1)); };
    for (long t = a + 1; t <= b; ++t) {
        Rat sum = 0;
        for (long s = a + 1; s <= t; ++s) sum += monomial_rat(nu - 1, t - s + 1) * Rat(h(s));
        part[idx(t)] = sum;
    }
    return part;
}

Rat nabla_at_rat(const std::vector<Rat>& x, long lo, long t, long order) {
    Rat sum = 0;
    for (long i = 0; i <= order; ++i) {
        Rat c(binomial(order, i));
        sum += (i % 2 == 0 ? c : -c) * x[static_cast<size_t>(t - i - lo)];
    }
    return sum;
}

/// Fractional particular solution in extended precision, zero-extended on
/// [lo, a]; the boundary rows difference it up to N-1 times, which feeds
/// the ill-conditioned corner of the boundary system.
std::vector<long double> particular_long(const GridFunction& h, double nu, long a, long lo, long b) {
    std::vector<long double> part(static_cast<size_t>(b - lo + 1), 0.0L);
    for (long t = a + 1; t <= b; ++t) {
        long double sum = 0.0L;
        for (long s = a + 1; s <= t; ++s) {
            sum += monomial_l(nu - 1.0, t - s + 1) * static_cast<long double>(h(s));
        }
        part[static_cast<size_t>(t - lo)] = sum;
    }
    return part;
}

long double nabla_at_long(const std::vector<long double>& x, long lo, long t, long order) {
    long double sum = 0.0L;
    for (long i = 0; i <= order; ++i) {
        long double c = Rat(binomial(order, i)).convert_to<long double>();
        sum += (i % 2 == 0 ? c : -c) * x[static_cast<size_t>(t - i - lo)];
    }
    return sum;
}

BvpSolution bvp_solve_exact(const BvpSpec& spec) {
    const long N = spec.order.n_ceil;
    const long a = spec.a, b = spec.b, k = spec.k;
    const long lo = a - N + 1;
    auto part = rational_particular(spec.h, N, a, N, b);

    Mat<Rat> M = boundary_matrix_M(spec);
    std::vector<Rat> rhs(static_cast<size_t>(N));
    for (long i = 0; i < k; ++i) {
        rhs[static_cast<size_t>(i)] =
            Rat(spec.left_values[static_cast<size_t>(i)]) - nabla_at_rat(part, lo, spec.alpha(), i);
    }
    for (long m = 0; m < N - k; ++m) {
        rhs[static_cast<size_t>(k + m)] =
            Rat(spec.right_values[static_cast<size_t>(m)]) -
            nabla_at_rat(part, lo, b, spec.j_orders[static_cast<size_t>(m)]);
    }
    auto d = solve(M, rhs);
    if (!d) throw SingularSystem("bvp_solve_direct: exact boundary system is singular");

    BvpSolution out;
    out.d.resize(static_cast<size_t>(N));
    for (long p = 0; p < N; ++p) out.d[static_cast<size_t>(p)] = to_double((*d)[static_cast<size_t>(p)]);
    out.x = GridFunction::sample(Grid(spec.base, lo, b), [&](long t) {
        Rat sum = part[static_cast<size_t>(t - lo)];
        for (long p = 0; p < N; ++p) sum += (*d)[static_cast<size_t>(p)] * basis_value_rat(N, a, p, t);
        return to_double(sum);
    });
    return out;
}

} // namespace

BvpSolution bvp_solve_direct(const BvpSpec& spec) {
    spec.validate();
    if (spec.order.is_integer()) return bvp_solve_exact(spec);

    const long N = spec.order.n_ceil;
    const long a = spec.a, b = spec.b, k = spec.k;
    const long lo = a - N + 1;

    Mat<Rat> M_exact = boundary_matrix_M(spec);
    if (determinant(M_exact) == 0) {
        throw SingularSystem("bvp_solve_direct: boundary system is singular");
    }
    auto part = particular_long(spec.h, spec.order.nu, a, lo, b);

    std::vector<long double> rhs(static_cast<size_t>(N));
    for (long i = 0; i < k; ++i) {
        rhs[static_cast<size_t>(i)] =
            static_cast<long double>(spec.left_values[static_cast<size_t>(i)]) -
            nabla_at_long(part, lo, spec.alpha(), i);
    }
    for (long m = 0; m < N - k; ++m) {
        rhs[static_cast<size_t>(k + m)] =
            static_cast<long double>(spec.right_values[static_cast<size_t>(m)]) -
            nabla_at_long(part, lo, b, spec.j_orders[static_cast<size_t>(m)]);
    }
    auto d = solve(to_long_double(M_exact), rhs);
    if (!d) throw SingularSystem("bvp_solve_direct: pivoting failed on a nonsingular system");

    BvpSolution out;
    out.d.resize(static_cast<size_t>(N));
    for (long p = 0; p < N; ++p) {
        out.d[static_cast<size_t>(p)] = static_cast<double>((*d)[static_cast<size_t>(p)]);
    }
    out.x = GridFunction::sample(Grid(spec.base, lo, b), [&](long t) {
        long double sum = part[static_cast<size_t>(t - lo)];
        for (long p = 0; p < N; ++p) {
            sum += (*d)[static_cast<size_t>(p)] *
                   basis_value_rat(N, a, p, t).convert_to<long double>();
        }
        return static_cast<double>(sum);
    });
    return out;
}

} // namespace nablafrac
