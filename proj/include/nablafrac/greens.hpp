#pragma once

#include "nablafrac/bvp.hpp"

namespace nablafrac {

/// Kernels built by greens_closed_form solve the negated equation
/// -caputo x = h, while greens_kernel solves +caputo w = h. All
/// cross-checks between the two routes go through this one constant.
inline constexpr double closed_form_sign = -1.0;

/// Green's kernel for a (k, N-k) BVP, materialized as dense tables over
/// t in [a-N+1, b] and s in [a+1, b] together with its u-part and
/// beta = det D. For t <= rho(s) the kernel equals u(t,s); for
/// t >= rho(s) it is u(t,s) + H_{nu-1}(t, rho(s)), the branches agreeing
/// at t = rho(s).
struct GreensKernel {
    BvpSpec spec;            // boundary-data slots are ignored
    long t_lo = 0, t_hi = 0;
    long s_lo = 0, s_hi = 0;
    Mat<double> table;       // G(t, s)
    Mat<double> u_table;     // u(t, s)
    double beta = 0.0;       // det D

    double at(long t, long s) const { return table(t - t_lo, s - s_lo); }
    double u_at(long t, long s) const { return u_table(t - t_lo, s - s_lo); }
};

/// Determinant-based construction: for each s, the u coefficients solve
/// the D-system with right side -nabla^{j_m} H_{nu-1}(b, rho(s)).
GreensKernel greens_kernel(const BvpSpec& spec);

/// Cross-check route: u(t,s) as the bordered determinant divided by det D,
/// evaluated entry by entry rather than through the linear solve.
double greens_u_det(const BvpSpec& spec, long t, long s);

/// Closed-form (N-1, 1) kernel
///   G(t,s) = H_{N-1}(t,a-1) H_{nu-j-1}(b,rho(s)) / H_{N-j-1}(b,a-1)
///            - H_{nu-1}(t,rho(s)) [the latter term only for t >= rho(s)].
/// Note the sign convention: this kernel inverts -caputo, not +caputo.
GreensKernel greens_closed_form(Order order, long j, double base, long a, long b);

/// w(t) = sum_{s=a+1}^{b} G(t,s) h(s): the solution of the nonhomogeneous
/// equation under homogeneous boundary conditions.
GridFunction solve_via_greens(const GreensKernel& kernel, const GridFunction& h);

/// Homogeneous-equation interpolant of the boundary values plus the kernel
/// integral of h: the full nonhomogeneous solve.
GridFunction solve_nonhomogeneous_full(const BvpSpec& spec);

} // namespace nablafrac
