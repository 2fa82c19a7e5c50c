#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "nablafrac/calculus.hpp"

using namespace nablafrac;

namespace {
double rel(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}
} // namespace

TEST_CASE("nabla_diff: quadratic telescoping and the binomial identity") {
    GridFunction f(Grid(0.0, 1, 4), {1.0, 4.0, 9.0, 16.0});
    GridFunction d1 = nabla_diff(f, 1);
    CHECK(d1.grid().lo == 2);
    CHECK(d1.values() == std::vector<double>{3.0, 5.0, 7.0});

    GridFunction sq = GridFunction::sample(Grid(0.0, -2, 8), [](long n) { return double(n * n); });
    GridFunction d2 = nabla_diff(sq, 2);
    for (long t = d2.grid().lo; t <= d2.grid().hi; ++t) CHECK(d2(t) == 2.0);

    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    GridFunction g = GridFunction::sample(Grid(0.0, 0, 12), [&](long) { return dist(rng); });
    GridFunction d3 = nabla_diff(g, 3);
    for (long t = 3; t <= 12; ++t) {
        double want = g(t) - 3.0 * g(t - 1) + 3.0 * g(t - 2) - g(t - 3);
        CHECK(rel(d3(t), want) < 1e-14);
    }
}

TEST_CASE("nabla_diff: order zero is the identity, short grids are rejected") {
    GridFunction f(Grid(0.0, 0, 2), {1.0, 2.0, 3.0});
    CHECK(nabla_diff(f, 0).values() == f.values());
    CHECK_THROWS_AS(nabla_diff(f, 3), InsufficientDomain);
    CHECK_THROWS_AS(nabla_diff(f, -1), std::invalid_argument);
}

TEST_CASE("nabla_integral: counting, empty range, antisymmetry") {
    GridFunction ones = GridFunction::sample(Grid(0.0, 0, 5), [](long) { return 1.0; });
    CHECK(nabla_integral(ones, 0, 5) == 5.0);
    CHECK(nabla_integral(ones, 2, 2) == 0.0);

    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    GridFunction f = GridFunction::sample(Grid(0.0, -4, 9), [&](long) { return dist(rng); });
    for (int i = 0; i < 50; ++i) {
        long c = std::uniform_int_distribution<long>(-4, 9)(rng);
        long d = std::uniform_int_distribution<long>(-4, 9)(rng);
        CHECK(nabla_integral(f, c, d) == -nabla_integral(f, d, c));
    }
    // c = -5 is fine: the sum starts at c+1 = -4, the grid edge.
    double edge_sum = 0.0;
    for (long t = -4; t <= 3; ++t) edge_sum += f(t);
    CHECK(nabla_integral(f, -5, 3) == edge_sum);
    CHECK_THROWS_AS(nabla_integral(f, -6, 3), InsufficientDomain);
    CHECK_THROWS_AS(nabla_integral(f, 0, 10), InsufficientDomain);
}

TEST_CASE("fundamental theorem: integral equals antidifference increment") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> vals(-9, 9);
    // Integer-valued samples keep every double operation exact.
    GridFunction f = GridFunction::sample(Grid(0.0, 0, 15), [&](long) { return double(vals(rng)); });
    std::vector<double> F{0.0};
    for (long t = 1; t <= 15; ++t) F.push_back(F.back() + f(t));
    CHECK(nabla_integral(f, 0, 15) == F[15] - F[0]);
}

TEST_CASE("Leibniz formula for the nabla integral, exact in rationals") {
    std::mt19937_64 rng(24);
    std::uniform_int_distribution<long> num(-12, 12), den(1, 7);
    const long a = 0, M = 9;
    std::map<std::pair<long, long>, Rat> f;
    for (long t = a; t <= a + M; ++t) {
        for (long tau = a + 1; tau <= a + M; ++tau) f[{t, tau}] = Rat(num(rng), den(rng));
    }
    auto g = [&](long t) {
        Rat acc = 0;
        for (long tau = a + 1; tau <= t; ++tau) acc += f[{t, tau}];
        return acc;
    };
    for (long t = a + 1; t <= a + M; ++t) {
        Rat rhs = 0;
        for (long tau = a + 1; tau <= t; ++tau) rhs += f[{t, tau}] - f[{t - 1, tau}];
        rhs += f[{rho(t, a), t}];
        CHECK(g(t) - g(t - 1) == rhs);
    }
}

TEST_CASE("frac_sum: order one is the cumulative sum") {
    std::mt19937_64 rng(25);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    GridFunction f = GridFunction::sample(Grid(0.0, 1, 12), [&](long) { return dist(rng); });
    GridFunction s = frac_sum(f, 1.0, 0);
    double acc = 0.0;
    for (long t = 1; t <= 12; ++t) {
        acc += f(t);
        CHECK(rel(s(t), acc) < 1e-13);
    }
}

TEST_CASE("frac_sum: half order of the constant one hits the monomial values") {
    GridFunction ones = GridFunction::sample(Grid(0.0, 1, 8), [](long) { return 1.0; });
    GridFunction s = frac_sum(ones, 0.5, 0);
    for (long t = 1; t <= 8; ++t) CHECK(rel(s(t), monomial(0.5, t)) < 1e-12);
    CHECK(rel(s(4), 2.1875) < 1e-12);
}

TEST_CASE("frac_sum: order zero is the identity, negative orders are rejected") {
    GridFunction f(Grid(0.0, 0, 4), {9.0, 1.0, 2.0, 3.0, 4.0});
    GridFunction s = frac_sum(f, 0.0, 0);
    CHECK(s.grid().lo == 1);
    CHECK(s.values() == std::vector<double>{1.0, 2.0, 3.0, 4.0});
    CHECK_THROWS_AS(frac_sum(f, -0.5, 0), std::invalid_argument);
}

TEST_CASE("frac_sum: the zero convention below the base point is opt-in") {
    GridFunction f = GridFunction::sample(Grid(0.0, 1, 6), [](long n) { return double(n); });
    GridFunction natural = frac_sum(f, 0.7, 0);
    CHECK(natural.grid().lo == 1);
    CHECK_THROWS_AS(natural(0), std::out_of_range);

    GridFunction extended = frac_sum(f, 0.7, 0, Extension::zero_below_base, -2);
    CHECK(extended.grid().lo == -2);
    for (long t = -2; t <= 0; ++t) CHECK(extended(t) == 0.0);
    for (long t = 1; t <= 6; ++t) CHECK(extended(t) == natural(t));
}

TEST_CASE("caputo_diff: annihilates the shifted Taylor monomials") {
    for (double nu : {1.5, 2.5, 3.3}) {
        const Order order = Order::of(nu);
        const long N = order.n_ceil;
        for (long p = 0; p < N; ++p) {
            GridFunction f = GridFunction::sample(
                Grid(0.0, -N + 1, 10),
                [&](long t) { return monomial(double(p), t - (-N + p)); });
            GridFunction c = caputo_diff(f, order, 0);
            for (long t = 1; t <= 10; ++t) CHECK(std::abs(c(t)) < 1e-10);
        }
    }
}

TEST_CASE("caputo_diff: integer order collapses to the plain difference") {
    std::mt19937_64 rng(26);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (long N : {1L, 2L, 3L}) {
        GridFunction f = GridFunction::sample(Grid(0.0, -N + 1, 9), [&](long) { return dist(rng); });
        GridFunction c = caputo_diff(f, Order::of(double(N)), 0);
        GridFunction d = nabla_diff(f, N);
        for (long t = 1; t <= 9; ++t) CHECK(c(t) == d(t));
    }
}

TEST_CASE("caputo_diff: constants are annihilated, short domains rejected") {
    GridFunction c7 = GridFunction::sample(Grid(0.0, -1, 8), [](long) { return 7.0; });
    GridFunction out = caputo_diff(c7, Order::of(1.5), 0);
    for (long t = 1; t <= 8; ++t) CHECK(out(t) == 0.0);

    GridFunction shallow = GridFunction::sample(Grid(0.0, 0, 8), [](long) { return 1.0; });
    CHECK_THROWS_AS(caputo_diff(shallow, Order::of(1.5), 0), InsufficientDomain);
}

TEST_CASE("caputo_diff inverts frac_sum on the natural domain") {
    std::mt19937_64 rng(27);
    std::uniform_real_distribution<double> dist(-4.0, 4.0);
    for (double nu : {0.7, 1.5, 2.2, 3.9}) {
        const Order order = Order::of(nu);
        GridFunction h = GridFunction::sample(Grid(0.0, 1, 11), [&](long) { return dist(rng); });
        GridFunction F = frac_sum(h, nu, 0, Extension::zero_below_base, -order.n_ceil + 1);
        GridFunction back = caputo_diff(F, order, 0);
        for (long t = 1; t <= 11; ++t) CHECK(rel(back(t), h(t)) < 1e-10);
    }
}

TEST_CASE("Order snaps near-integer inputs and rejects nonpositive ones") {
    Order snapped = Order::of(2.0 + 4e-10);
    CHECK(snapped.n_ceil == 2);
    CHECK(snapped.is_integer());
    CHECK(snapped.nu == 2.0);

    Order frac = Order::of(2.3);
    CHECK(frac.n_ceil == 3);
    CHECK(!frac.is_integer());

    CHECK_THROWS_AS(Order::of(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Order::of(-1.5), std::invalid_argument);
}

TEST_CASE("grid points subtract to exact integer offsets") {
    Grid g(2.5, -3, 9);
    GridPoint t = g.point(7), s = g.point(-2);
    CHECK(t - s == 9);
    CHECK(t.value() == 9.5);
    CHECK((t - 3).offset == 4);
    CHECK((s + 2) == g.point(0));
    CHECK(taylor_monomial(0.5, g.point(4), g.point(0)) == monomial(0.5, 4));
    CHECK(taylor_monomial(2.0, g.point(4), g.point(-1)) == 15.0);
}

TEST_CASE("GridFunction rejects out-of-range evaluation") {
    GridFunction f(Grid(0.0, -1, 2), {1.0, 2.0, 3.0, 4.0});
    CHECK(f(-1) == 1.0);
    CHECK_THROWS_AS(f(3), std::out_of_range);
    CHECK_THROWS_AS(f(-2), std::out_of_range);
    CHECK_THROWS_AS(GridFunction(Grid(0.0, 0, 3), {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Grid(0.0, 2, 1), std::invalid_argument);
}
