#include "nablafrac/special.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace nablafrac {

namespace {

bool nonpositive_integer(double x, std::optional<long>& out) {
    auto n = nearest_integer(x);
    if (n && *n <= 0) {
        out = n;
        return true;
    }
    return false;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

} // namespace

SignedLogGamma signed_lgamma(double x) {
    if (x > 0.0) return {std::lgamma(x), +1};
    // Gamma(x) Gamma(1-x) = pi / sin(pi x), x < 0 non-integer.
    double s = std::sin(std::numbers::pi * x);
    double log_abs = std::log(std::numbers::pi / std::abs(s)) - std::lgamma(1.0 - x);
    return {log_abs, s > 0.0 ? +1 : -1};
}

Rat rising_rat(long t, long r) {
    if (r >= 0) {
        // t (t+1) ... (t+r-1); covers cases 1-3 uniformly for integer t.
        BigInt p = 1;
        for (long i = 0; i < r; ++i) p *= (t + i);
        return Rat(p);
    }
    // Gamma(t+r)/Gamma(t) = 1 / ((t-1)(t-2)...(t+r)).
    BigInt p = 1;
    for (long i = 1; i <= -r; ++i) {
        long factor = t - i;
        if (factor == 0) {
            throw UndefinedRising("rising(" + std::to_string(t) + ", " + std::to_string(r) +
                                  "): t+r is a nonpositive integer while t is not");
        }
        p *= factor;
    }
    return Rat(1) / Rat(p);
}

double rising(double t, double r) {
    auto ti = nearest_integer(t);
    auto ri = nearest_integer(r);
    if (ti && ri) return to_double(rising_rat(*ti, *ri));

    std::optional<long> dummy;
    bool t_npi = nonpositive_integer(t, dummy);
    bool tr_npi = nonpositive_integer(t + r, dummy);

    if (t_npi && tr_npi) {
        // Both nonpositive integers forces r integer; non-integer r means the
        // inputs are inconsistent, not merely outside case 1.
        throw std::domain_error("rising(" + fmt(t) + ", " + fmt(r) +
                                "): nonpositive-integer case requires integer r");
    }
    if (t_npi) return 0.0;
    if (tr_npi) {
        throw UndefinedRising("rising(" + fmt(t) + ", " + fmt(r) +
                              "): t+r is a nonpositive integer while t is not");
    }
    auto num = signed_lgamma(t + r);
    auto den = signed_lgamma(t);
    return num.sign * den.sign * std::exp(num.log_abs - den.log_abs);
}

Rat monomial_rat(long p, long m) {
    if (p >= 0) return rising_rat(m, p) / Rat(factorial(p));
    // Order p = -k: 1/Gamma(1-k) vanishes, so H is 0 wherever the rising
    // part is defined; rising_rat throws on the genuinely undefined strip.
    (void)rising_rat(m, p);
    return Rat(0);
}

double monomial(double nu, long m) {
    auto p = nearest_integer(nu);
    if (p) return to_double(monomial_rat(*p, m));
    if (m <= 0) return 0.0; // case 2: m in Z<=0, m+nu not an integer
    auto num = signed_lgamma(static_cast<double>(m) + nu);
    auto den = signed_lgamma(static_cast<double>(m));
    auto fac = signed_lgamma(nu + 1.0);
    return num.sign * den.sign * fac.sign * std::exp(num.log_abs - den.log_abs - fac.log_abs);
}

namespace {

struct SignedLogGammaL {
    long double log_abs;
    int sign;
};

SignedLogGammaL signed_lgamma_l(long double x) {
    if (x > 0.0L) return {std::lgamma(x), +1};
    const long double pi = 3.14159265358979323846264338327950288L;
    long double s = std::sin(pi * x);
    long double log_abs = std::log(pi / std::abs(s)) - std::lgamma(1.0L - x);
    return {log_abs, s > 0.0L ? +1 : -1};
}

} // namespace

long double monomial_l(double nu, long m) {
    auto p = nearest_integer(nu);
    if (p) return monomial_rat(*p, m).convert_to<long double>();
    if (m <= 0) return 0.0L;
    auto num = signed_lgamma_l(static_cast<long double>(m) + static_cast<long double>(nu));
    auto den = signed_lgamma_l(static_cast<long double>(m));
    auto fac = signed_lgamma_l(static_cast<long double>(nu) + 1.0L);
    return num.sign * den.sign * fac.sign * std::exp(num.log_abs - den.log_abs - fac.log_abs);
}

} // namespace nablafrac
