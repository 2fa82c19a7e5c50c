#pragma once

#include "nablafrac/grid.hpp"
#include "nablafrac/rational.hpp"

namespace nablafrac {

/// log|Gamma(x)| together with the sign of Gamma(x).
/// Negative non-integer arguments go through the reflection formula.
struct SignedLogGamma {
    double log_abs;
    int    sign;   // +1 or -1
};
SignedLogGamma signed_lgamma(double x);

/// Generalized rising function t^{rise r}.
///
/// Four cases over the nonpositive integers Z<=0:
///   Gamma(t+r)/Gamma(t)            if neither t+r nor t is in Z<=0,
///   0                              if t is in Z<=0 but t+r is not,
///   (-1)^r (-t)!/(-t-r)!           if both are in Z<=0 (r an integer),
///   undefined                      if t+r is in Z<=0 but t is not.
///
/// Integer arguments are routed through exact arithmetic, so e.g.
/// rising(3, 2) is exactly 12. Throws UndefinedRising in the fourth case
/// and std::domain_error when both arguments are nonpositive integers but
/// r is not an integer (the case-3 formula presupposes integer r).
double rising(double t, double r);

/// Exact rising function for integer arguments.
Rat rising_rat(long t, long r);

/// Nabla Taylor monomial H_nu at integer separation m = t - s:
/// H_nu = m^{rise nu} / Gamma(nu + 1). Exact for integer nu.
double monomial(double nu, long m);

/// Extended-precision monomial. The boundary systems at N = 6, b-a = 12
/// amplify input roundoff by ~1e8, so the solver paths keep an unbroken
/// long double chain from here through their final assembly.
long double monomial_l(double nu, long m);

/// Exact monomial for integer order p. For p <= -1 the value is 0 wherever
/// defined; separations 1 <= m <= -p fall on the undefined rising case.
Rat monomial_rat(long p, long m);

/// H_nu(t, s) on grid points sharing a base.
inline double taylor_monomial(double nu, GridPoint t, GridPoint s) {
    return monomial(nu, t - s);
}

} // namespace nablafrac
