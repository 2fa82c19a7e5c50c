#pragma once

#include <optional>
#include <vector>

#include "nablafrac/calculus.hpp"
#include "nablafrac/grid.hpp"
#include "nablafrac/smallmat.hpp"

namespace nablafrac {

/// Initial value problem for the Caputo difference. Two initial-condition
/// styles exist and exactly one is set:
///   derivative_at_a: nabla^k x(a) = c_k for k = 0..N-1,
///   point_values:    x(a-i) = A_i for i = 0..N-1, optionally with a
///                    potential q multiplying x(t-1) in the equation.
struct IvpSpec {
    enum class Style { derivative_at_a, point_values };

    Order order;
    long  a = 0;
    GridFunction h;                  // right-hand side on [a+1, b]
    Style style = Style::derivative_at_a;
    std::vector<double> init;        // c_k or A_i, length N
    std::optional<GridFunction> q;   // only with point_values

    static IvpSpec with_derivatives(Order order, long a, GridFunction h, std::vector<double> c);
    static IvpSpec with_point_values(Order order, long a, GridFunction h, std::vector<double> A,
                                     std::optional<GridFunction> q = std::nullopt);

    void validate() const;
};

/// Two-point (k, N-k) boundary value problem: k derivative conditions
/// of orders 0..k-1 at alpha = a-N+k and N-k conditions of orders
/// j_1 < ... < j_{N-k} at b. Requires nu > 1 and
/// b - a >= max{1, j_{N-k} - N + k + 1}.
struct BvpSpec {
    Order order;
    double base = 0.0;
    long a = 0, b = 0;
    long k = 1;
    std::vector<long> j_orders;
    std::vector<double> left_values;    // A_i, length k
    std::vector<double> right_values;   // B_{j_m}, length N-k
    GridFunction h;                     // on [a+1, b]

    long n() const { return order.n_ceil; }
    long alpha() const { return a - order.n_ceil + k; }

    /// All data slots zero; used for kernels and determinant sweeps.
    static BvpSpec homogeneous(Order order, double base, long a, long b, long k,
                               std::vector<long> j_orders);

    void validate() const;
};

/// The N solutions H_p(t, a-N+p), p = 0..N-1, of the homogeneous equation,
/// sampled on t_range (which must share t_range.base with the caller's grid).
std::vector<GridFunction> general_solution_basis(Order order, long a, Grid t_range);

/// Basis element H_p(t, a-N+p) at a single offset.
inline double basis_value(long N, long a, long p, long t) {
    return monomial(static_cast<double>(p), t - (a - N + p));
}
inline Rat basis_value_rat(long N, long a, long p, long t) {
    return monomial_rat(p, t - (a - N + p));
}

/// Solve the IVP. Derivative style uses the variation-of-constants formula
/// x = sum H_k(t,a) c_k + frac_sum(h); point-value style marches forward in
/// t, which is explicit because the newest unknown always has coefficient 1.
/// The result lives on [a-N+1, b].
GridFunction ivp_solve(const IvpSpec& spec);

/// The (N-k) x (N-k) right-boundary matrix with entries
/// nabla^{j_m} H_p(b, a-N+p) = H_{p-j_m}(b, a-N+p), p = k..N-1. Exact.
Mat<Rat> matrix_D(const BvpSpec& spec);

/// Determinant of the Vandermonde-type power matrix in (-j_m), computed
/// directly and via the closed form (-1)^{n(n-1)/2} prod_{p<r} (j_p - j_r).
/// The two routes are asserted equal; the (integer) value is returned.
Rat vandermonde_check(const BvpSpec& spec);

/// The full N x N boundary system: k rows of nabla^i at alpha over the
/// basis, then N-k rows of nabla^{j_m} at b. Exact.
Mat<Rat> boundary_matrix_M(const BvpSpec& spec);

struct BvpSolution {
    GridFunction x;          // on [a-N+1, b]
    std::vector<double> d;   // basis coefficients, p = 0..N-1
};

/// Direct solve of the nonhomogeneous (k, N-k) BVP through the boundary
/// system M d = data. Integer orders run entirely in exact arithmetic.
/// Throws SingularSystem if M degenerates; existence-uniqueness theory
/// rules that out for admissible specs, so it is a bug signal.
BvpSolution bvp_solve_direct(const BvpSpec& spec);

} // namespace nablafrac
