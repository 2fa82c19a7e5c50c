#pragma once

#include <cstdint>
#include <vector>

#include "nablafrac/calculus.hpp"
#include "nablafrac/grid.hpp"

namespace nablafrac {

/// Which right-endpoint condition the boundary pattern carries, and hence
/// which threshold applies: conjugate_A pairs nabla^{N-2} x(b) = 0 with the
/// 1/(A (b-a+1)^{N-2}) bound (r = 2); focal_H2 pairs nabla^{N-1} x(b) = 0
/// with the 1/(H_2(b,a-1) (b-a+1)^{N-2}) bound (r = 1).
enum class LyapunovVariant { conjugate_A, focal_H2 };

enum class Side { left, right };   // c_i placed at a-1 or at b

/// Boundary conditions for the weighted equation of order nu > 2:
/// nabla^{N-2} x(a-1) = 0, nabla^{N-r} x(b) = 0, and nabla^i x(c_i) = 0
/// for i = 0..N-3 with each c_i at a-1 or b.
struct BoundaryPattern {
    LyapunovVariant variant = LyapunovVariant::conjugate_A;
    std::vector<Side> c_sides;   // length N-2

    int r() const { return variant == LyapunovVariant::conjugate_A ? 2 : 1; }

    static BoundaryPattern all_left(LyapunovVariant v, long n_ceil) {
        return {v, std::vector<Side>(static_cast<size_t>(n_ceil - 2), Side::left)};
    }
};

/// A = max{ H_{gamma-1}(b,a)/H_1(b,a-1) * H_2(b,a-1), H_gamma(b,a) } for
/// 1 < gamma <= 2.
double constant_A(double gamma, long a, long b);

enum class IntegralSide { left, right };

/// Closed form of the running integral of the order-gamma (1,1) kernel:
/// left is the integral over tau in (a-1, t], right over (t, b]. The
/// magnitude is bounded by A for j = 0 and by H_2(b,a-1) for j = 1.
double greens_integral(double gamma, long j, long a, long b, long t, long s, IntegralSide side);

/// The threshold that the integral of |q| must reach for a nontrivial
/// solution to exist. Requires nu > 2 and b-a >= N-1.
double lyapunov_threshold(Order order, long a, long b, LyapunovVariant variant);

/// Whether the homogeneous weighted BVP admits a nontrivial solution,
/// decided by rank-deficiency of the assembled linear system at relative
/// singular-value cutoff 1e-10.
bool check_nontrivial(Order order, double base, long a, long b, const GridFunction& q,
                      const BoundaryPattern& pattern);

struct CriticalInstance {
    GridFunction q;
    GridFunction x;   // the planted nontrivial solution
};

/// The boundary pattern forces x(t) = 0 at some t in [a, b-1] (consecutive
/// low-order conditions at b cascade into the interior), so no planted
/// solution can stay clear of zero where the potential divides by it.
class SynthesisBlocked : public std::runtime_error {
public:
    explicit SynthesisBlocked(const std::string& what) : std::runtime_error(what) {}
};

/// Plant a nontrivial solution: sample x in [-1,1]^n, project onto the
/// boundary-condition null space, reject until |x| >= 0.05 on [a, b-1],
/// then read off q(t) = -caputo(x)(t) / x(t-1). Throws SynthesisBlocked
/// when the pattern structurally forbids such an x, and a plain
/// runtime_error when the finite retry budget runs out.
CriticalInstance synth_critical_instance(Order order, double base, long a, long b,
                                         const BoundaryPattern& pattern, std::uint64_t seed);

/// Sufficient condition for unique solvability of the nonhomogeneous
/// weighted BVP: the integral of |q| lies strictly under the threshold of
/// the variant matching r (r = 2 conjugate_A, r = 1 focal_H2).
bool uniqueness_sufficient(Order order, double base, long a, long b, const GridFunction& q, int r);

/// Boundary data for the nonhomogeneous pattern BVP.
struct PatternData {
    double left_value = 0.0;              // nabla^{N-2} x(a-1)
    double right_value = 0.0;             // nabla^{N-r} x(b)
    std::vector<double> c_values;         // nabla^i x(c_i), i = 0..N-3
};

/// Direct dense solve of the nonhomogeneous weighted BVP. Throws
/// SingularSystem when the assembled matrix degenerates.
GridFunction solve_pattern_bvp(Order order, double base, long a, long b, const GridFunction& q,
                               const BoundaryPattern& pattern, const PatternData& data,
                               const GridFunction& f);

struct LyapunovReport {
    double nu = 0.0;
    long   n_ceil = 0;
    double base = 0.0;
    long   a = 0, b = 0;
    int    r = 2;
    std::vector<Side> c_sides;
    double gamma = 0.0;             // nu - N + 2
    double A_value = 0.0;
    double q_integral = 0.0;
    double threshold = 0.0;
    LyapunovVariant threshold_kind = LyapunovVariant::conjugate_A;
    bool   nontrivial_exists = false;
    bool   inequality_holds = false;
    bool   short_chain = false;     // N = 3: no iterated integrations in the bound
    std::uint64_t seed = 0;

    /// Theorem content: nontrivial_exists must imply inequality_holds.
    bool refuted() const { return nontrivial_exists && !inequality_holds; }
};

LyapunovReport lyapunov_report(Order order, double base, long a, long b, const GridFunction& q,
                               const BoundaryPattern& pattern);

} // namespace nablafrac
