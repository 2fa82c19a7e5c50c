#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "nablafrac/greens.hpp"
#include "nablafrac/io.hpp"

using namespace nablafrac;

namespace {

double rel(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

double table_scale(const GreensKernel& k) {
    double scale = 1.0;
    for (long t = k.t_lo; t <= k.t_hi; ++t) {
        for (long s = k.s_lo; s <= k.s_hi; ++s) scale = std::max(scale, std::abs(k.at(t, s)));
    }
    return scale;
}

/// j-th backward difference down a kernel column at fixed s.
double nabla_t(const GreensKernel& k, long t, long s, long j) {
    double sum = 0.0;
    for (long i = 0; i <= j; ++i) {
        double c = to_double(Rat(binomial(j, i)));
        sum += (i % 2 == 0 ? c : -c) * k.at(t - i, s);
    }
    return sum;
}

} // namespace

TEST_CASE("greens_kernel: frozen second-order values and the sign registry") {
    // nu = 2, k = 1, j = {0}, a = 0, b = 3. The closed form gives +1 at
    // (t,s) = (1,2); the determinant kernel carries the opposite sign.
    BvpSpec spec = BvpSpec::homogeneous(Order::of(2.0), 0.0, 0, 3, 1, {0});
    GreensKernel det = greens_kernel(spec);
    GreensKernel cf = greens_closed_form(Order::of(2.0), 0, 0.0, 0, 3);

    CHECK(rel(cf.at(1, 2), 1.0) < 1e-13);
    CHECK(rel(det.at(1, 2), closed_form_sign * 1.0) < 1e-13);
    CHECK(det.beta == doctest::Approx(4.0));   // det D = H_1(3, -1)

    for (long t = det.t_lo; t <= det.t_hi; ++t) {
        for (long s = det.s_lo; s <= det.s_hi; ++s) {
            CHECK(rel(det.at(t, s), closed_form_sign * cf.at(t, s)) < 1e-12);
        }
    }

    // u-branch values on t <= rho(s): (t+1)(4-s)/4 for the closed form.
    for (long s = 1; s <= 3; ++s) {
        for (long t = -1; t <= s - 1; ++t) {
            CHECK(rel(cf.at(t, s), double(t + 1) * double(4 - s) / 4.0) < 1e-13);
        }
    }
}

TEST_CASE("greens_kernel: left boundary conditions hold columnwise") {
    std::mt19937_64 rng(41);
    for (double nu : {1.7, 2.5, 3.5, 4.0}) {
        const Order order = Order::of(nu);
        const long N = order.n_ceil;
        for (long k = 1; k <= N - 1; ++k) {
            std::vector<long> j;
            for (long m = 0; m < N - k; ++m) j.push_back(m);   // j = 0..N-k-1
            BvpSpec spec = BvpSpec::homogeneous(order, 0.0, 0, 7, k, j);
            GreensKernel kern = greens_kernel(spec);
            const long alpha = spec.alpha();
            for (long s = kern.s_lo; s <= kern.s_hi; ++s) {
                for (long i = 0; i < k; ++i) {
                    CHECK(std::abs(nabla_t(kern, alpha, s, i)) < 1e-10 * table_scale(kern));
                }
            }
        }
        (void)rng;
    }
}

TEST_CASE("greens_kernel: right boundary differences cancel") {
    for (double nu : {1.5, 2.5, 3.5}) {
        const Order order = Order::of(nu);
        const long N = order.n_ceil;
        for (long k = 1; k <= N - 1; ++k) {
            std::vector<long> j;
            for (long m = 0; m < N - k; ++m) j.push_back(k + m);   // highest N-k orders
            BvpSpec spec = BvpSpec::homogeneous(order, 0.0, 0, 8, k, j);
            GreensKernel kern = greens_kernel(spec);
            for (long s = kern.s_lo; s <= kern.s_hi; ++s) {
                for (long jm : j) {
                    CHECK(std::abs(nabla_t(kern, kern.t_hi, s, jm)) < 1e-9 * table_scale(kern));
                }
            }
        }
    }
}

TEST_CASE("greens_kernel: branches agree at t = rho(s)") {
    for (double nu : {1.5, 2.0, 2.5, 3.7}) {
        const Order order = Order::of(nu);
        BvpSpec spec = BvpSpec::homogeneous(order, 0.0, 0, 6, order.n_ceil - 1, {0});
        GreensKernel kern = greens_kernel(spec);
        for (long s = kern.s_lo; s <= kern.s_hi; ++s) {
            const long t = s - 1;   // rho(s) for s >= a+1
            CHECK(kern.at(t, s) == kern.u_at(t, s));
            // The added monomial vanishes there, so v(t,s) = u(t,s) exactly.
            CHECK(monomial(order.nu - 1.0, 0) == 0.0);
        }
    }
}

TEST_CASE("greens_closed_form: vanishing rows below the base point") {
    for (double nu : {2.5, 3.7}) {
        const Order order = Order::of(nu);
        const long N = order.n_ceil;
        GreensKernel cf = greens_closed_form(order, 0, 0.0, 0, 6);
        for (long t = -N + 1; t <= -1; ++t) {
            for (long s = 1; s <= 6; ++s) {
                if (t <= s - 1) CHECK(cf.at(t, s) == 0.0);
            }
        }
    }
}

TEST_CASE("greens_closed_form validates parameters") {
    CHECK_THROWS_AS(greens_closed_form(Order::of(2.5), 3, 0.0, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(greens_closed_form(Order::of(2.5), 2, 0.0, 0, 1), std::invalid_argument);
}

TEST_CASE("bordered-determinant route reproduces the linear-solve u") {
    for (double nu : {1.6, 2.5, 3.4, 4.0}) {
        const Order order = Order::of(nu);
        const long N = order.n_ceil;
        for (long k = 1; k <= N - 1; ++k) {
            std::vector<long> j;
            for (long m = 0; m < N - k; ++m) j.push_back(m);   // lowest N-k orders
            BvpSpec spec = BvpSpec::homogeneous(order, 0.0, 0, 6, k, j);
            GreensKernel kern = greens_kernel(spec);
            const double scale = table_scale(kern);
            for (long t = kern.t_lo; t <= kern.t_hi; ++t) {
                for (long s = kern.s_lo; s <= kern.s_hi; ++s) {
                    CHECK(std::abs(greens_u_det(spec, t, s) - kern.u_at(t, s)) < 1e-9 * scale);
                }
            }
        }
    }
}

TEST_CASE("solve_via_greens: zero forcing, impulse column, direct agreement") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    BvpSpec spec = BvpSpec::homogeneous(Order::of(2.5), 0.0, 0, 7, 1, {0, 1});
    GreensKernel kern = greens_kernel(spec);

    GridFunction zero = GridFunction::zeros(Grid(0.0, 1, 7));
    GridFunction w0 = solve_via_greens(kern, zero);
    for (long t = w0.grid().lo; t <= w0.grid().hi; ++t) CHECK(w0(t) == 0.0);

    for (long s0 = 1; s0 <= 7; ++s0) {
        GridFunction impulse = GridFunction::zeros(Grid(0.0, 1, 7));
        impulse.at(s0) = 1.0;
        GridFunction w = solve_via_greens(kern, impulse);
        for (long t = kern.t_lo; t <= kern.t_hi; ++t) CHECK(w(t) == kern.at(t, s0));
    }

    for (int draw = 0; draw < 10; ++draw) {
        BvpSpec with_h = spec;
        with_h.h = GridFunction::sample(Grid(0.0, 1, 7), [&](long) { return dist(rng); });
        BvpSolution direct = bvp_solve_direct(with_h);
        GridFunction w = solve_via_greens(kern, with_h.h);
        for (long t = kern.t_lo; t <= kern.t_hi; ++t) CHECK(rel(w(t), direct.x(t)) < 1e-9);
    }
}

TEST_CASE("solve_nonhomogeneous_full: reductions and direct agreement") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (double nu : {2.2, 3.0}) {
        const Order order = Order::of(nu);
        const long N = order.n_ceil;
        BvpSpec spec = BvpSpec::homogeneous(order, 0.0, 0, 6, N - 1, {1});

        // Zero boundary values: reduces to the kernel integral.
        spec.h = GridFunction::sample(Grid(0.0, 1, 6), [&](long) { return dist(rng); });
        GridFunction full = solve_nonhomogeneous_full(spec);
        GridFunction kernel_only = solve_via_greens(greens_kernel(spec), spec.h);
        for (long t = full.grid().lo; t <= full.grid().hi; ++t) {
            CHECK(rel(full(t), kernel_only(t)) < 1e-12);
        }

        // Zero forcing: reduces to the homogeneous interpolant.
        BvpSpec interp = BvpSpec::homogeneous(order, 0.0, 0, 6, N - 1, {1});
        for (auto& v : interp.left_values) v = dist(rng);
        for (auto& v : interp.right_values) v = dist(rng);
        GridFunction fullh = solve_nonhomogeneous_full(interp);
        BvpSolution direct = bvp_solve_direct(interp);
        for (long t = fullh.grid().lo; t <= fullh.grid().hi; ++t) {
            CHECK(rel(fullh(t), direct.x(t)) < 1e-10);
        }

        // Random everything agrees with the direct route.
        BvpSpec rand_spec = interp;
        rand_spec.h = spec.h;
        GridFunction fullr = solve_nonhomogeneous_full(rand_spec);
        BvpSolution directr = bvp_solve_direct(rand_spec);
        for (long t = fullr.grid().lo; t <= fullr.grid().hi; ++t) {
            CHECK(rel(fullr(t), directr.x(t)) < 1e-9);
        }
    }
}

TEST_CASE("kernel export: CSV shape and JSON payload") {
    BvpSpec spec = BvpSpec::homogeneous(Order::of(2.5), 0.0, 0, 4, 2, {0});
    GreensKernel kern = greens_kernel(spec);

    std::ostringstream csv;
    io::write_kernel_csv(csv, kern);
    std::istringstream lines(csv.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "t,1,2,3,4");
    long rows = 0;
    for (std::string line; std::getline(lines, line);) ++rows;
    CHECK(rows == kern.t_hi - kern.t_lo + 1);

    nlohmann::json j = io::kernel_to_json(kern);
    CHECK(j.at("beta").get<double>() == kern.beta);
    CHECK(j.at("spec").at("k").get<long>() == 2);
    CHECK(j.at("table").size() ==
          size_t((kern.t_hi - kern.t_lo + 1) * (kern.s_hi - kern.s_lo + 1)));
}
