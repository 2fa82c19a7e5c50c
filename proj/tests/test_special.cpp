#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nablafrac/special.hpp"

using namespace nablafrac;

namespace {
double rel(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}
} // namespace

TEST_CASE("rising function: frozen values against factorial-ratio oracles") {
    // Gamma(5)/Gamma(3) = 24/2.
    CHECK(rising(3.0, 2.0) == 12.0);
    CHECK(to_double(rising_rat(3, 2)) == 12.0);

    // Base in Z<=0, shifted base not: the zero case.
    CHECK(rising(0.0, 2.5) == 0.0);
    CHECK(rising(-3.0, 0.5) == 0.0);

    CHECK(rising(1.0, 0.0) == 1.0);
    CHECK(rising(4.7, 0.0) == doctest::Approx(1.0).epsilon(1e-14));

    // Both nonpositive integers: (-1)^{-1} * 2!/3!.
    CHECK(to_double(rising_rat(-2, -1)) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    CHECK(rising(-2.0, -1.0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("rising function: undefined and inconsistent cases are rejected") {
    CHECK_THROWS_AS(rising(0.5, -1.5), UndefinedRising);    // t+r = -1, t not integer
    CHECK_THROWS_AS(rising(2.0, -2.0), UndefinedRising);    // t+r = 0 with integer args
    CHECK_THROWS_AS(rising_rat(1, -1), UndefinedRising);
    CHECK_THROWS_AS(rising_rat(3, -5), UndefinedRising);

    // t and t+r both read as nonpositive integers while r does not read as
    // an integer: the case-3 formula cannot apply.
    CHECK_THROWS_AS(rising(-2.0 + 0.9e-9, -1.0 - 1.8e-9), std::domain_error);
}

TEST_CASE("rising function: Gamma recurrence t^{rise r+1} = (t+r) t^{rise r}") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-4.0, 6.0);
    long tested = 0;
    while (tested < 400) {
        double t = dist(rng), r = dist(rng);
        double lhs, rhs;
        try {
            lhs = rising(t, r + 1.0);
            rhs = (t + r) * rising(t, r);
        } catch (const std::exception&) {
            continue;   // outside the mutually-defined region
        }
        CHECK(rel(lhs, rhs) < 1e-11);
        ++tested;
    }
}

TEST_CASE("rising function: exact on integer arguments, matches float path") {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<long> dist(-6, 9);
    for (int i = 0; i < 300; ++i) {
        long t = dist(rng), r = dist(rng);
        Rat exact;
        try {
            exact = rising_rat(t, r);
        } catch (const UndefinedRising&) {
            CHECK_THROWS_AS(rising(static_cast<double>(t), static_cast<double>(r)), UndefinedRising);
            continue;
        }
        CHECK(rising(static_cast<double>(t), static_cast<double>(r)) == to_double(exact));
    }
}

TEST_CASE("taylor monomial: frozen values") {
    // H_0 is identically 1.
    for (long m = -5; m <= 20; ++m) CHECK(monomial(0.0, m) == 1.0);

    // H_2 at separation 5: 5*6/2.
    CHECK(monomial(2.0, 5) == 15.0);
    CHECK(to_double(monomial_rat(2, 5)) == 15.0);

    // H_{1/2} at separation 4: Gamma(4.5)/(Gamma(4) Gamma(1.5)) = 35/16,
    // recomputed here straight from the Gamma function.
    const double oracle = std::tgamma(4.5) / (std::tgamma(4.0) * std::tgamma(1.5));
    CHECK(rel(oracle, 35.0 / 16.0) < 1e-14);
    CHECK(rel(monomial(0.5, 4), oracle) < 1e-13);
    CHECK(rel(monomial(0.5, 4), 2.1875) < 1e-13);

    // H_mu vanishes at zero separation for mu != 0.
    CHECK(monomial(3.0, 0) == 0.0);
    CHECK(monomial(0.5, 0) == 0.0);
    CHECK(monomial(-0.5, 0) == 0.0);

    // Negative-integer order inside the undefined strip propagates the error.
    CHECK_THROWS_AS(monomial(-1.0, 1), UndefinedRising);
    CHECK_THROWS_AS(monomial_rat(-2, 2), UndefinedRising);
}

TEST_CASE("taylor monomial: integer orders agree with the exact path") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> pd(0, 6), md(-8, 20);
    for (int i = 0; i < 400; ++i) {
        long p = pd(rng), m = md(rng);
        CHECK(monomial(static_cast<double>(p), m) == to_double(monomial_rat(p, m)));
    }
}

TEST_CASE("taylor monomial: power rule nabla H_mu = H_{mu-1}") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> mud(-1.0, 5.0);
    int sampled = 0;
    while (sampled < 60) {
        double mu = mud(rng);
        if (auto n = nearest_integer(mu, 1e-6)) {
            if (*n == 0) continue;   // H_{-1} is undefined at unit separation
            mu = static_cast<double>(*n);
        }
        for (long t = 1; t <= 20; ++t) {
            double lhs = monomial(mu, t) - monomial(mu, t - 1);
            CHECK(rel(lhs, monomial(mu - 1.0, t)) < 1e-10);
        }
        ++sampled;
    }
}

TEST_CASE("taylor monomial: summation rules reach H_{mu+1}") {
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> mud(-1.0, 5.0);
    for (int i = 0; i < 60; ++i) {
        const double mu = mud(rng);
        double acc = 0.0;
        for (long t = 1; t <= 20; ++t) {
            acc += monomial(mu, t);   // integral of H_mu(s, a)
            CHECK(rel(acc, monomial(mu + 1.0, t)) < 1e-10);

            double conv = 0.0;        // integral of H_mu(t, rho(s))
            for (long s = 1; s <= t; ++s) conv += monomial(mu, t - s + 1);
            CHECK(rel(conv, monomial(mu + 1.0, t)) < 1e-10);
        }
    }
}

TEST_CASE("taylor monomial: H_{-k} vanishes beyond the undefined strip") {
    for (long k = 1; k <= 6; ++k) {
        for (long m = k + 1; m <= k + 20; ++m) {
            CHECK(monomial(static_cast<double>(-k), m) == 0.0);
            CHECK(monomial_rat(-k, m) == 0);
        }
    }
}

TEST_CASE("taylor monomial: sign and monotonicity on the kernel orientation") {
    // H_alpha(t, rho(s)) over separations m = t - rho(s).
    const double alphas[] = {-0.9, -0.5, -0.1, 0.0, 0.3, 1.0, 1.7, 2.0, 3.5};
    for (double alpha : alphas) {
        for (long m = 0; m <= 21; ++m) {
            const double v = monomial(alpha, m);
            if (m >= 0) CHECK(v >= 0.0);          // nonnegative from rho(s) on
            if (m >= 1) CHECK(v > 0.0);           // strictly positive from s on
        }
        for (long m = 0; m <= 20; ++m) {
            const double here = monomial(alpha, m);
            const double next_t = monomial(alpha, m + 1);
            if (alpha >= 0.0) CHECK(next_t >= here);            // nondecreasing in t
            if (alpha > 0.0 && m >= 1) CHECK(next_t > here);    // increasing in t from s
            if (alpha < 0.0 && m >= 2) CHECK(next_t < here);    // decreasing in t past s
        }
    }
    // Behavior in s: stepping s up by one shrinks the separation by one.
    for (double alpha : alphas) {
        if (alpha > 0.0) {
            for (long m = 1; m <= 21; ++m) CHECK(monomial(alpha, m) > monomial(alpha, m - 1));
        }
        if (alpha < 0.0) {
            for (long m = 2; m <= 21; ++m) CHECK(monomial(alpha, m) < monomial(alpha, m - 1));
        }
    }
}

TEST_CASE("taylor monomial: order comparison 0 < nu <= mu") {
    std::mt19937_64 rng(16);
    std::uniform_real_distribution<double> d(0.05, 5.0);
    for (int i = 0; i < 200; ++i) {
        double nu = d(rng), mu = d(rng);
        if (nu > mu) std::swap(nu, mu);
        for (long m = 0; m <= 20; ++m) {
            CHECK(monomial(nu, m) <= monomial(mu, m) * (1.0 + 1e-12) + 1e-15);
        }
    }
}

TEST_CASE("signed log-Gamma handles negative arguments by reflection") {
    auto g = signed_lgamma(-0.5);
    CHECK(g.sign == -1);
    CHECK(rel(std::exp(g.log_abs), 2.0 * std::sqrt(std::numbers::pi)) < 1e-13);

    auto h = signed_lgamma(-1.5);
    CHECK(h.sign == +1);
    CHECK(rel(std::exp(h.log_abs), 4.0 * std::sqrt(std::numbers::pi) / 3.0) < 1e-13);
}
