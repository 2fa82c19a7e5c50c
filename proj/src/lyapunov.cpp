#include "nablafrac/lyapunov.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <string>

#include "nablafrac/rational.hpp"
#include "nablafrac/special.hpp"

namespace nablafrac {

namespace {

void require_gamma(double gamma) {
    if (!(gamma > 1.0) || !(gamma <= 2.0 + 1e-12)) {
        throw std::invalid_argument("gamma = " + std::to_string(gamma) + " outside (1, 2]");
    }
}

void require_pattern(Order order, long a, long b, const BoundaryPattern& pattern) {
    const long N = order.n_ceil;
    if (!(order.nu > 2.0)) {
        throw std::invalid_argument("boundary pattern requires nu > 2");
    }
    if (b - a < N - 1) {
        throw std::invalid_argument("boundary pattern requires b-a >= N-1");
    }
    if (static_cast<long>(pattern.c_sides.size()) != N - 2) {
        throw std::invalid_argument("boundary pattern: expected " + std::to_string(N - 2) +
                                    " c_i placements, got " + std::to_string(pattern.c_sides.size()));
    }
}

double signed_binomial(long n, long i) {
    double c = to_double(Rat(binomial(n, i)));
    return i % 2 == 0 ? c : -c;
}

/// Row of coefficients for nabla^order x at point t over unknowns
/// x(lo), ..., x(hi).
void add_difference_row(Eigen::MatrixXd& m, long row, long lo, long t, long order) {
    for (long l = 0; l <= order; ++l) {
        m(row, t - l - lo) += signed_binomial(order, l);
    }
}

/// The n x n homogeneous system of the weighted equation plus pattern
/// boundary conditions, unknowns x(a-N+1), ..., x(b). Boundary rows first.
Eigen::MatrixXd assemble_weighted_system(Order order, long a, long b, const GridFunction& q,
                                         const BoundaryPattern& pattern) {
    const long N = order.n_ceil;
    const long lo = a - N + 1;
    const long n = b - a + N;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);

    add_difference_row(m, 0, lo, a - 1, N - 2);
    add_difference_row(m, 1, lo, b, N - pattern.r());
    for (long i = 0; i <= N - 3; ++i) {
        long c_i = pattern.c_sides[static_cast<size_t>(i)] == Side::left ? a - 1 : b;
        add_difference_row(m, 2 + i, lo, c_i, i);
    }

    const bool integer_order = order.is_integer();
    for (long t = a + 1; t <= b; ++t) {
        const long row = N + (t - a - 1);
        if (integer_order) {
            for (long i = 0; i <= N; ++i) m(row, t - i - lo) += signed_binomial(N, i);
        } else {
            const double kernel_order = static_cast<double>(N) - order.nu - 1.0;
            for (long s = a + 1; s <= t; ++s) {
                const double kern = monomial(kernel_order, t - s + 1);
                for (long i = 0; i <= N; ++i) m(row, s - i - lo) += kern * signed_binomial(N, i);
            }
        }
        m(row, t - 1 - lo) += q(t);
    }
    return m;
}

Eigen::MatrixXd boundary_constraints(Order order, long a, long b, const BoundaryPattern& pattern) {
    const long N = order.n_ceil;
    const long lo = a - N + 1;
    const long n = b - a + N;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(N, n);
    add_difference_row(c, 0, lo, a - 1, N - 2);
    add_difference_row(c, 1, lo, b, N - pattern.r());
    for (long i = 0; i <= N - 3; ++i) {
        long c_i = pattern.c_sides[static_cast<size_t>(i)] == Side::left ? a - 1 : b;
        add_difference_row(c, 2 + i, lo, c_i, i);
    }
    return c;
}

} // namespace

double constant_A(double gamma, long a, long b) {
    require_gamma(gamma);
    if (b <= a) throw std::invalid_argument("constant_A: b must exceed a");
    const double first = monomial(gamma - 1.0, b - a) / monomial(1.0, b - a + 1) *
                         monomial(2.0, b - a + 1);
    const double second = monomial(gamma, b - a);
    return std::max(first, second);
}

double greens_integral(double gamma, long j, long a, long b, long t, long s, IntegralSide side) {
    require_gamma(gamma);
    if (j != 0 && j != 1) throw std::invalid_argument("greens_integral: j must be 0 or 1");
    if (b - a < std::max<long>(1, j)) throw std::invalid_argument("greens_integral: span too small");
    if (t < a - 1 || t > b) throw std::invalid_argument("greens_integral: t outside [a-1, b]");
    if (s < a + 1 || s > b) throw std::invalid_argument("greens_integral: s outside [a+1, b]");

    const double ratio = monomial(gamma - static_cast<double>(j) - 1.0, b - s + 1) /
                         monomial(1.0 - static_cast<double>(j), b - a + 1);
    if (side == IntegralSide::left) {
        double value = ratio * monomial(2.0, t - a + 1);
        if (t >= s) value -= monomial(gamma, t - s + 1);
        return value;
    }
    double value = ratio * (monomial(2.0, b - a + 1) - monomial(2.0, t - a + 1));
    value -= monomial(gamma, b - s + 1);
    if (t >= s) value += monomial(gamma, t - s + 1);
    return value;
}

double lyapunov_threshold(Order order, long a, long b, LyapunovVariant variant) {
    const long N = order.n_ceil;
    if (!(order.nu > 2.0)) throw std::invalid_argument("lyapunov_threshold: nu must exceed 2");
    if (b - a < N - 1) throw std::invalid_argument("lyapunov_threshold: b-a must be at least N-1");

    double width = 1.0;
    for (long i = 0; i < N - 2; ++i) width *= static_cast<double>(b - a + 1);

    if (variant == LyapunovVariant::conjugate_A) {
        const double gamma = order.nu - static_cast<double>(N) + 2.0;
        return 1.0 / (constant_A(gamma, a, b) * width);
    }
    return 1.0 / (monomial(2.0, b - a + 1) * width);
}

bool check_nontrivial(Order order, double base, long a, long b, const GridFunction& q,
                      const BoundaryPattern& pattern) {
    require_pattern(order, a, b, pattern);
    if (q.grid().base != base || q.grid().lo > a + 1 || q.grid().hi < b) {
        throw InsufficientDomain("check_nontrivial: q must cover [a+1, b]");
    }
    Eigen::MatrixXd m = assemble_weighted_system(order, a, b, q, pattern);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    return sv(sv.size() - 1) < 1e-10 * sv(0);
}

CriticalInstance synth_critical_instance(Order order, double base, long a, long b,
                                         const BoundaryPattern& pattern, std::uint64_t seed) {
    require_pattern(order, a, b, pattern);
    const long N = order.n_ceil;
    const long lo = a - N + 1;
    const long n = b - a + N;

    Eigen::MatrixXd c = boundary_constraints(order, a, b, pattern);
    Eigen::MatrixXd gram = c * c.transpose();
    auto gram_solver = gram.ldlt();

    // A unit vector orthogonal to the constraint null space marks a point
    // where every admissible x vanishes; rejection sampling can never win.
    for (long t = a; t <= b - 1; ++t) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
        e(t - lo) = 1.0;
        Eigen::VectorXd proj = e - c.transpose() * gram_solver.solve(c * e);
        if (proj.norm() < 1e-8) {
            throw SynthesisBlocked("synth_critical_instance: pattern forces x(" +
                                   std::to_string(t) + ") = 0; no instance can be planted");
        }
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> box(-1.0, 1.0);

    constexpr int kBudget = 1000;
    for (int attempt = 0; attempt < kBudget; ++attempt) {
        Eigen::VectorXd y(n);
        for (long i = 0; i < n; ++i) y(i) = box(rng);
        Eigen::VectorXd x = y - c.transpose() * gram_solver.solve(c * y);

        bool ok = true;
        for (long t = a; t <= b - 1 && ok; ++t) {
            if (std::abs(x(t - lo)) < 0.05) ok = false;
        }
        if (!ok) continue;

        if ((c * x).cwiseAbs().maxCoeff() > 1e-10) {
            throw std::logic_error("synth_critical_instance: constraint projection failed");
        }

        GridFunction xf(Grid(base, lo, b), std::vector<double>(x.data(), x.data() + n));
        GridFunction cx = caputo_diff(xf, order, a);
        GridFunction q = GridFunction::sample(Grid(base, a + 1, b),
                                              [&](long t) { return -cx(t) / xf(t - 1); });
        return {std::move(q), std::move(xf)};
    }
    throw std::runtime_error("synth_critical_instance: retry budget of " +
                             std::to_string(kBudget) + " draws exhausted");
}

bool uniqueness_sufficient(Order order, double base, long a, long b, const GridFunction& q, int r) {
    if (r != 1 && r != 2) throw std::invalid_argument("uniqueness_sufficient: r must be 1 or 2");
    (void)base;
    double integral = 0.0;
    for (long t = a + 1; t <= b; ++t) integral += std::abs(q(t));
    const LyapunovVariant variant =
        r == 2 ? LyapunovVariant::conjugate_A : LyapunovVariant::focal_H2;
    return integral < lyapunov_threshold(order, a, b, variant);
}

GridFunction solve_pattern_bvp(Order order, double base, long a, long b, const GridFunction& q,
                               const BoundaryPattern& pattern, const PatternData& data,
                               const GridFunction& f) {
    require_pattern(order, a, b, pattern);
    const long N = order.n_ceil;
    const long lo = a - N + 1;
    const long n = b - a + N;
    if (static_cast<long>(data.c_values.size()) != N - 2) {
        throw std::invalid_argument("solve_pattern_bvp: expected " + std::to_string(N - 2) +
                                    " c_i values");
    }

    Eigen::MatrixXd m = assemble_weighted_system(order, a, b, q, pattern);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(0) = data.left_value;
    rhs(1) = data.right_value;
    for (long i = 0; i <= N - 3; ++i) rhs(2 + i) = data.c_values[static_cast<size_t>(i)];
    for (long t = a + 1; t <= b; ++t) rhs(N + (t - a - 1)) = f(t);

    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (!lu.isInvertible()) {
        throw SingularSystem("solve_pattern_bvp: weighted boundary system is singular");
    }
    Eigen::VectorXd x = lu.solve(rhs);
    return GridFunction(Grid(base, lo, b), std::vector<double>(x.data(), x.data() + n));
}

LyapunovReport lyapunov_report(Order order, double base, long a, long b, const GridFunction& q,
                               const BoundaryPattern& pattern) {
    require_pattern(order, a, b, pattern);
    const long N = order.n_ceil;

    LyapunovReport rep;
    rep.nu = order.nu;
    rep.n_ceil = N;
    rep.base = base;
    rep.a = a;
    rep.b = b;
    rep.r = pattern.r();
    rep.c_sides = pattern.c_sides;
    rep.gamma = order.nu - static_cast<double>(N) + 2.0;
    rep.A_value = constant_A(rep.gamma, a, b);
    rep.threshold_kind = pattern.variant;
    rep.threshold = lyapunov_threshold(order, a, b, pattern.variant);
    rep.short_chain = (N == 3);

    rep.q_integral = 0.0;
    for (long t = a + 1; t <= b; ++t) rep.q_integral += std::abs(q(t));

    rep.nontrivial_exists = check_nontrivial(order, base, a, b, q, pattern);
    rep.inequality_holds = rep.q_integral >= rep.threshold - 1e-12 * std::abs(rep.threshold);
    return rep;
}

} // namespace nablafrac
