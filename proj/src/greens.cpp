#include "nablafrac/greens.hpp"

#include <cmath>

namespace nablafrac {

namespace {

/// -nabla^{j_m} H_{nu-1}(b, rho(s)) = -H_{nu-1-j_m}(b, s-1), the right-side
/// data of the auxiliary BVP that defines u(., s).
double u_right_data(const BvpSpec& spec, long j, long s) {
    return -monomial(spec.order.nu - 1.0 - static_cast<double>(j), spec.b - s + 1);
}

long double u_right_data_long(const BvpSpec& spec, long j, long s) {
    return -monomial_l(spec.order.nu - 1.0 - static_cast<double>(j), spec.b - s + 1);
}

Rat u_right_data_rat(const BvpSpec& spec, long j, long s) {
    return -monomial_rat(spec.order.n_ceil - 1 - j, spec.b - s + 1);
}

} // namespace

GreensKernel greens_kernel(const BvpSpec& spec) {
    spec.validate();
    const long N = spec.order.n_ceil;
    const long a = spec.a, b = spec.b, k = spec.k;

    GreensKernel kern;
    kern.spec = spec;
    kern.t_lo = a - N + 1;
    kern.t_hi = b;
    kern.s_lo = a + 1;
    kern.s_hi = b;
    const long nt = kern.t_hi - kern.t_lo + 1;
    const long ns = kern.s_hi - kern.s_lo + 1;
    kern.table = Mat<double>(nt, ns);
    kern.u_table = Mat<double>(nt, ns);

    Mat<Rat> D = matrix_D(spec);
    kern.beta = to_double(determinant(D));
    if (kern.beta == 0.0) throw SingularSystem("greens_kernel: det D vanished");

    const bool exact = spec.order.is_integer();
    Mat<long double> D_long = to_long_double(D);

    for (long s = kern.s_lo; s <= kern.s_hi; ++s) {
        // Coefficients of u(., s) on the basis H_p(t, a-N+p), p = k..N-1.
        std::vector<long double> coeff(static_cast<size_t>(N - k));
        if (exact) {
            std::vector<Rat> rhs(static_cast<size_t>(N - k));
            for (long m = 0; m < N - k; ++m) {
                rhs[static_cast<size_t>(m)] =
                    u_right_data_rat(spec, spec.j_orders[static_cast<size_t>(m)], s);
            }
            auto c = solve(D, rhs);
            if (!c) throw SingularSystem("greens_kernel: exact D-system solve failed");
            for (size_t i = 0; i < c->size(); ++i) coeff[i] = (*c)[i].convert_to<long double>();
        } else {
            std::vector<long double> rhs(static_cast<size_t>(N - k));
            for (long m = 0; m < N - k; ++m) {
                rhs[static_cast<size_t>(m)] =
                    u_right_data_long(spec, spec.j_orders[static_cast<size_t>(m)], s);
            }
            auto c = solve(D_long, rhs);
            if (!c) throw SingularSystem("greens_kernel: D-system solve failed");
            coeff = *c;
        }

        for (long t = kern.t_lo; t <= kern.t_hi; ++t) {
            long double u = 0.0L;
            for (long p = k; p < N; ++p) {
                u += coeff[static_cast<size_t>(p - k)] *
                     basis_value_rat(N, a, p, t).convert_to<long double>();
            }
            kern.u_table(t - kern.t_lo, s - kern.s_lo) = static_cast<double>(u);
            long double g = u;
            if (t >= rho(s, a)) g += monomial_l(spec.order.nu - 1.0, t - s + 1);
            kern.table(t - kern.t_lo, s - kern.s_lo) = static_cast<double>(g);
        }
    }
    return kern;
}

double greens_u_det(const BvpSpec& spec, long t, long s) {
    spec.validate();
    const long N = spec.order.n_ceil;
    const long n = N - spec.k;

    Mat<double> bordered(n + 1, n + 1);
    bordered(0, 0) = 0.0;
    for (long p = spec.k; p < N; ++p) {
        bordered(0, p - spec.k + 1) = basis_value(N, spec.a, p, t);
    }
    Mat<Rat> D = matrix_D(spec);
    for (long m = 0; m < n; ++m) {
        bordered(m + 1, 0) = -u_right_data(spec, spec.j_orders[static_cast<size_t>(m)], s);
        for (long c = 0; c < n; ++c) bordered(m + 1, c + 1) = to_double(D(m, c));
    }
    return determinant(bordered) / to_double(determinant(D));
}

GreensKernel greens_closed_form(Order order, long j, double base, long a, long b) {
    const long N = order.n_ceil;
    if (!(order.nu > 1.0)) throw std::invalid_argument("greens_closed_form: nu must exceed 1");
    if (j < 0 || j > N - 1) throw std::invalid_argument("greens_closed_form: j outside {0,...,N-1}");
    if (b - a < std::max<long>(1, j)) {
        throw std::invalid_argument("greens_closed_form: b-a below admissible minimum");
    }

    GreensKernel kern;
    kern.spec = BvpSpec::homogeneous(order, base, a, b, N - 1, {j});
    kern.t_lo = a - N + 1;
    kern.t_hi = b;
    kern.s_lo = a + 1;
    kern.s_hi = b;
    const long nt = kern.t_hi - kern.t_lo + 1;
    const long ns = kern.s_hi - kern.s_lo + 1;
    kern.table = Mat<double>(nt, ns);
    kern.u_table = Mat<double>(nt, ns);
    kern.beta = to_double(determinant(matrix_D(kern.spec)));

    const long double denom = monomial_l(static_cast<double>(N - j - 1), b - a + 1);
    for (long s = kern.s_lo; s <= kern.s_hi; ++s) {
        const long double right = monomial_l(order.nu - static_cast<double>(j) - 1.0, b - s + 1);
        for (long t = kern.t_lo; t <= kern.t_hi; ++t) {
            const long double ratio =
                monomial_l(static_cast<double>(N - 1), t - a + 1) * right / denom;
            kern.u_table(t - kern.t_lo, s - kern.s_lo) = static_cast<double>(ratio);
            long double g = ratio;
            if (t >= rho(s, a)) g -= monomial_l(order.nu - 1.0, t - s + 1);
            kern.table(t - kern.t_lo, s - kern.s_lo) = static_cast<double>(g);
        }
    }
    return kern;
}

GridFunction solve_via_greens(const GreensKernel& kernel, const GridFunction& h) {
    if (h.grid().base != kernel.spec.base || h.grid().lo > kernel.s_lo || h.grid().hi < kernel.s_hi) {
        throw InsufficientDomain("solve_via_greens: h must cover [a+1, b] on the kernel's base");
    }
    return GridFunction::sample(Grid(kernel.spec.base, kernel.t_lo, kernel.t_hi), [&](long t) {
        double sum = 0.0;
        for (long s = kernel.s_lo; s <= kernel.s_hi; ++s) sum += kernel.at(t, s) * h(s);
        return sum;
    });
}

GridFunction solve_nonhomogeneous_full(const BvpSpec& spec) {
    spec.validate();
    BvpSpec homogeneous_eq = spec;
    homogeneous_eq.h = GridFunction::zeros(Grid(spec.base, spec.a + 1, spec.b));
    GridFunction w = bvp_solve_direct(homogeneous_eq).x;

    GreensKernel kern = greens_kernel(spec);
    GridFunction kernel_part = solve_via_greens(kern, spec.h);
    return GridFunction::sample(w.grid(), [&](long t) { return w(t) + kernel_part(t); });
}

} // namespace nablafrac
