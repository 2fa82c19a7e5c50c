// Command-line front end: operator evaluation, IVP/BVP solvers, Green's
// kernels, Lyapunov reports, and the self-verification harness.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "nablafrac/bvp.hpp"
#include "nablafrac/greens.hpp"
#include "nablafrac/io.hpp"
#include "nablafrac/lyapunov.hpp"
#include "nablafrac/verify.hpp"

namespace nf = nablafrac;

namespace {

struct Common {
    std::string format = "json";
    std::string output;
    std::uint64_t seed = 7;

    nf::io::Format fmt() const {
        return format == "csv" ? nf::io::Format::csv : nf::io::Format::json;
    }
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output", c.output, "write to file instead of stdout");
    cmd->add_option("--seed", c.seed, "seed printed into reports");
}

void emit(const Common& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.output);
    if (!out) throw std::runtime_error("cannot open output file '" + c.output + "'");
    out << text;
}

/// b - a must be a positive integer; returns the offset of b with base a.
long span_offset(double a, double b) {
    auto d = nf::nearest_integer(b - a);
    if (!d || *d <= 0) {
        throw CLI::ValidationError("--b", "b - a must be a positive integer");
    }
    return *d;
}

nf::GridFunction load_fn(const std::string& path, double base) {
    auto fmt = path.size() > 4 && path.substr(path.size() - 4) == ".csv" ? nf::io::Format::csv
                                                                         : nf::io::Format::json;
    return nf::io::load_grid_function(path, fmt, base);
}

std::string render_fn(const Common& c, const nf::GridFunction& f) {
    std::ostringstream os;
    if (c.fmt() == nf::io::Format::csv) {
        nf::io::write_grid_function_csv(os, f);
    } else {
        os << nf::io::grid_function_to_json(f).dump(2) << '\n';
    }
    return os.str();
}

struct EvalArgs {
    Common common;
    std::string op;
    double t = 0, r = 0, s = 0, nu = 0, a = 0;
    long order = 1, c = 0, d = 0;
    std::string input;
    bool extended = false;
};

int run_eval(const EvalArgs& e) {
    auto scalar = [&](double value) {
        std::ostringstream os;
        if (e.common.fmt() == nf::io::Format::csv) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", value);
            os << "value\n" << buf << '\n';
        } else {
            os << nlohmann::json{{"value", value}}.dump(2) << '\n';
        }
        emit(e.common, os.str());
        return 0;
    };

    if (e.op == "rising") return scalar(nf::rising(e.t, e.r));
    if (e.op == "monomial") {
        auto diff = nf::nearest_integer(e.t - e.s);
        if (!diff) throw CLI::ValidationError("--t", "t - s must be an integer");
        return scalar(nf::monomial(e.nu, *diff));
    }

    nf::GridFunction f = load_fn(e.input, e.a);
    if (e.op == "nabla-diff") {
        emit(e.common, render_fn(e.common, nf::nabla_diff(f, e.order)));
        return 0;
    }
    if (e.op == "nabla-integral") return scalar(nf::nabla_integral(f, e.c, e.d));

    const auto ext = e.extended ? nf::Extension::zero_below_base : nf::Extension::natural;
    if (e.op == "frac-sum") {
        long ext_lo = -nf::Order::of(std::max(e.nu, 1.0)).n_ceil + 1;
        emit(e.common, render_fn(e.common, nf::frac_sum(f, e.nu, 0, ext, e.extended ? ext_lo : 0)));
        return 0;
    }
    if (e.op == "caputo") {
        nf::Order order = nf::Order::of(e.nu);
        long ext_lo = -order.n_ceil + 1;
        emit(e.common, render_fn(e.common, nf::caputo_diff(f, order, 0, ext, e.extended ? ext_lo : 0)));
        return 0;
    }
    throw CLI::ValidationError("--op", "unknown operation '" + e.op + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nabla Caputo discrete fractional calculus toolkit"};
    app.require_subcommand(1);

    // ---- eval ----
    EvalArgs eval;
    auto* cmd_eval = app.add_subcommand("eval", "evaluate a single operator");
    cmd_eval->add_option("--op", eval.op, "rising|monomial|nabla-diff|nabla-integral|frac-sum|caputo")
        ->required();
    cmd_eval->add_option("--t", eval.t, "first argument (rising/monomial)");
    cmd_eval->add_option("--r", eval.r, "rising exponent");
    cmd_eval->add_option("--s", eval.s, "monomial base point");
    cmd_eval->add_option("--nu", eval.nu, "fractional order");
    cmd_eval->add_option("--a", eval.a, "operator base point (file offsets are relative to it)");
    cmd_eval->add_option("--order", eval.order, "integer difference order");
    cmd_eval->add_option("--c", eval.c, "integral lower point (offset)");
    cmd_eval->add_option("--d", eval.d, "integral upper point (offset)");
    cmd_eval->add_option("--input", eval.input, "grid function file (.csv or .json)");
    cmd_eval->add_flag("--extended", eval.extended, "expose the zero convention below the base point");
    add_common(cmd_eval, eval.common);

    // ---- solve-ivp ----
    Common ivp_common;
    double ivp_nu = 1.5, ivp_a = 0, ivp_b = 0;
    std::string ivp_h, ivp_q;
    bool ivp_h_zero = false;
    std::vector<double> ivp_c, ivp_A;
    auto* cmd_ivp = app.add_subcommand("solve-ivp", "solve an initial value problem");
    cmd_ivp->add_option("--nu", ivp_nu, "order nu > 0")->required();
    cmd_ivp->add_option("--a", ivp_a, "base point a")->required();
    cmd_ivp->add_option("--b", ivp_b, "right endpoint b")->required();
    cmd_ivp->add_option("--rhs", ivp_h, "right-hand side grid function file");
    cmd_ivp->add_flag("--h-zero", ivp_h_zero, "use h identically zero");
    cmd_ivp->add_option("--c", ivp_c, "derivative initial values c_0,...,c_{N-1}")->delimiter(',');
    cmd_ivp->add_option("--A", ivp_A, "point initial values A_0,...,A_{N-1}")->delimiter(',');
    cmd_ivp->add_option("--q", ivp_q, "potential grid function file (point style only)");
    add_common(cmd_ivp, ivp_common);

    // ---- solve-bvp ----
    Common bvp_common;
    double bvp_nu = 2.5, bvp_a = 0, bvp_b = 0;
    long bvp_k = 1;
    std::vector<long> bvp_j;
    std::vector<double> bvp_left, bvp_right;
    std::string bvp_h;
    bool bvp_h_zero = false;
    auto* cmd_bvp = app.add_subcommand("solve-bvp", "solve a (k, N-k) boundary value problem");
    cmd_bvp->add_option("--nu", bvp_nu, "order nu > 1")->required();
    cmd_bvp->add_option("--a", bvp_a, "base point a")->required();
    cmd_bvp->add_option("--b", bvp_b, "right endpoint b")->required();
    cmd_bvp->add_option("--k", bvp_k, "number of left conditions")->required();
    cmd_bvp->add_option("--j", bvp_j, "right condition orders j_1<...<j_{N-k}")
        ->required()->delimiter(',');
    cmd_bvp->add_option("--left", bvp_left, "left values A_0,...,A_{k-1}")->delimiter(',');
    cmd_bvp->add_option("--right", bvp_right, "right values B_{j_1},...")->delimiter(',');
    cmd_bvp->add_option("--rhs", bvp_h, "right-hand side grid function file");
    cmd_bvp->add_flag("--h-zero", bvp_h_zero, "use h identically zero");
    add_common(cmd_bvp, bvp_common);

    // ---- greens ----
    Common greens_common;
    double g_nu = 2.5, g_a = 0, g_b = 0;
    long g_k = 1;
    std::vector<long> g_j;
    bool g_closed = false;
    auto* cmd_greens = app.add_subcommand("greens", "materialize a Green's kernel");
    cmd_greens->add_option("--nu", g_nu, "order nu > 1")->required();
    cmd_greens->add_option("--a", g_a, "base point a")->required();
    cmd_greens->add_option("--b", g_b, "right endpoint b")->required();
    cmd_greens->add_option("--k", g_k, "number of left conditions");
    cmd_greens->add_option("--j", g_j, "right condition orders")->required()->delimiter(',');
    cmd_greens->add_flag("--closed-form", g_closed,
                         "use the (N-1,1) closed form (solves the negated equation)");
    add_common(cmd_greens, greens_common);

    // ---- lyapunov ----
    Common ly_common;
    double ly_nu = 2.5, ly_a = 0, ly_b = 0;
    std::string ly_variant = "conjugate_A", ly_q, ly_sides;
    auto* cmd_ly = app.add_subcommand("lyapunov", "evaluate the Lyapunov inequality report");
    cmd_ly->add_option("--nu", ly_nu, "order nu > 2")->required();
    cmd_ly->add_option("--a", ly_a, "base point a")->required();
    cmd_ly->add_option("--b", ly_b, "right endpoint b")->required();
    cmd_ly->add_option("--variant", ly_variant, "conjugate_A or focal_H2")
        ->check(CLI::IsMember({"conjugate_A", "focal_H2"}));
    cmd_ly->add_option("--q", ly_q, "potential grid function file")->required();
    cmd_ly->add_option("--c-sides", ly_sides,
                       "placements of the order-i conditions, e.g. 'llr' (default all left)");
    add_common(cmd_ly, ly_common);

    // ---- verify ----
    Common ver_common;
    bool ver_parallel = false;
    auto* cmd_ver = app.add_subcommand("verify", "run the full acceptance/property suite");
    cmd_ver->add_flag("--parallel", ver_parallel, "parallelize sweeps (capped by NABLA_FRAC_THREADS)");
    add_common(cmd_ver, ver_common);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_eval) return run_eval(eval);

        if (*cmd_ivp) {
            long span = span_offset(ivp_a, ivp_b);
            nf::Order order = nf::Order::of(ivp_nu);
            nf::GridFunction h = ivp_h_zero || ivp_h.empty()
                                     ? nf::GridFunction::zeros(nf::Grid(ivp_a, 1, span))
                                     : load_fn(ivp_h, ivp_a);
            if (!ivp_c.empty() == !ivp_A.empty()) {
                throw CLI::ValidationError("--c/--A", "exactly one initial-condition style is required");
            }
            nf::IvpSpec spec =
                ivp_c.empty()
                    ? nf::IvpSpec::with_point_values(
                          order, 0, h, ivp_A,
                          ivp_q.empty() ? std::nullopt
                                        : std::optional<nf::GridFunction>(load_fn(ivp_q, ivp_a)))
                    : nf::IvpSpec::with_derivatives(order, 0, h, ivp_c);
            emit(ivp_common, render_fn(ivp_common, nf::ivp_solve(spec)));
            return 0;
        }

        if (*cmd_bvp) {
            long span = span_offset(bvp_a, bvp_b);
            nf::BvpSpec spec = nf::BvpSpec::homogeneous(nf::Order::of(bvp_nu), bvp_a, 0, span,
                                                        bvp_k, bvp_j);
            if (!bvp_left.empty()) spec.left_values = bvp_left;
            if (!bvp_right.empty()) spec.right_values = bvp_right;
            if (!bvp_h_zero && !bvp_h.empty()) spec.h = load_fn(bvp_h, bvp_a);
            spec.validate();
            nf::BvpSolution sol = nf::bvp_solve_direct(spec);
            if (bvp_common.fmt() == nf::io::Format::csv) {
                emit(bvp_common, render_fn(bvp_common, sol.x));
            } else {
                nlohmann::json j = nf::io::grid_function_to_json(sol.x);
                j["d"] = sol.d;
                emit(bvp_common, j.dump(2) + "\n");
            }
            return 0;
        }

        if (*cmd_greens) {
            long span = span_offset(g_a, g_b);
            nf::Order order = nf::Order::of(g_nu);
            nf::GreensKernel kern;
            if (g_closed) {
                if (g_j.size() != 1) {
                    throw CLI::ValidationError("--j", "closed form takes a single j order");
                }
                kern = nf::greens_closed_form(order, g_j[0], g_a, 0, span);
            } else {
                kern = nf::greens_kernel(
                    nf::BvpSpec::homogeneous(order, g_a, 0, span, g_k, g_j));
            }
            std::ostringstream os;
            if (greens_common.fmt() == nf::io::Format::csv) {
                nf::io::write_kernel_csv(os, kern);
            } else {
                os << nf::io::kernel_to_json(kern).dump(2) << '\n';
            }
            emit(greens_common, os.str());
            return 0;
        }

        if (*cmd_ly) {
            long span = span_offset(ly_a, ly_b);
            nf::Order order = nf::Order::of(ly_nu);
            nf::BoundaryPattern pattern =
                nf::BoundaryPattern::all_left(nf::io::variant_from_name(ly_variant), order.n_ceil);
            if (!ly_sides.empty()) {
                if (static_cast<long>(ly_sides.size()) != order.n_ceil - 2) {
                    throw CLI::ValidationError("--c-sides", "expected " +
                                                                std::to_string(order.n_ceil - 2) +
                                                                " placement characters");
                }
                for (size_t i = 0; i < ly_sides.size(); ++i) {
                    if (ly_sides[i] != 'l' && ly_sides[i] != 'r') {
                        throw CLI::ValidationError("--c-sides", "placements must be 'l' or 'r'");
                    }
                    pattern.c_sides[i] = ly_sides[i] == 'l' ? nf::Side::left : nf::Side::right;
                }
            }
            nf::GridFunction q = load_fn(ly_q, ly_a);
            nf::LyapunovReport rep = nf::lyapunov_report(order, ly_a, 0, span, q, pattern);
            rep.seed = ly_common.seed;
            std::ostringstream os;
            if (ly_common.fmt() == nf::io::Format::csv) {
                nf::io::write_report_csv(os, rep, true);
            } else {
                os << nf::io::report_to_json(rep).dump(2) << '\n';
            }
            emit(ly_common, os.str());
            return rep.refuted() ? 1 : 0;
        }

        if (*cmd_ver) {
            nf::verify::Options opt;
            opt.seed = ver_common.seed;
            opt.parallel = ver_parallel;
            std::ostringstream os;
            os << "seed " << opt.seed << '\n';
            bool ok = nf::verify::report(nf::verify::run_all(opt), os);
            emit(ver_common, os.str());
            return ok ? 0 : 1;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
