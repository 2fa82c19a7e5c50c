#include "nablafrac/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace nablafrac::io {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

[[noreturn]] void csv_error(size_t row, const std::string& what) {
    throw std::invalid_argument("csv row " + std::to_string(row) + ": " + what);
}

} // namespace

GridFunction read_grid_function_csv(std::istream& in, double base) {
    std::string line;
    size_t row = 0;
    if (!std::getline(in, line)) throw std::invalid_argument("csv: empty input");
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "n,value") csv_error(row, "expected header 'n,value', got '" + line + "'");

    std::map<long, double> entries;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) csv_error(row, "missing comma");
        long n = 0;
        double v = 0.0;
        bool n_ok = false, v_ok = false;
        size_t n_used = 0, v_used = 0;
        const std::string ns = line.substr(0, comma), vs = line.substr(comma + 1);
        try {
            n = std::stol(ns, &n_used);
            n_ok = true;
            v = std::stod(vs, &v_used);
            v_ok = true;
        } catch (const std::invalid_argument&) {
            csv_error(row, "unparsable number in '" + line + "'");
        } catch (const std::out_of_range&) {
            csv_error(row, "number out of range in '" + line + "'");
        }
        if (!n_ok || n_used != ns.size()) csv_error(row, "trailing characters in offset field");
        if (!v_ok || v_used != vs.size()) csv_error(row, "trailing characters in value field");
        if (entries.count(n)) csv_error(row, "duplicate offset n=" + std::to_string(n));
        entries[n] = v;
    }
    if (entries.empty()) throw std::invalid_argument("csv: no data rows");

    const long lo = entries.begin()->first;
    const long hi = entries.rbegin()->first;
    std::string missing;
    for (long n = lo; n <= hi; ++n) {
        if (!entries.count(n)) missing += (missing.empty() ? "" : ", ") + std::to_string(n);
    }
    if (!missing.empty()) throw std::invalid_argument("csv: missing offsets: " + missing);

    std::vector<double> values;
    values.reserve(entries.size());
    for (auto& [n, v] : entries) values.push_back(v);
    return GridFunction(Grid(base, lo, hi), std::move(values));
}

void write_grid_function_csv(std::ostream& out, const GridFunction& f) {
    out << "n,value\n";
    for (long n = f.grid().lo; n <= f.grid().hi; ++n) {
        out << n << ',' << num(f(n)) << '\n';
    }
}

nlohmann::json grid_function_to_json(const GridFunction& f) {
    return {{"a", f.grid().base},
            {"lo", f.grid().lo},
            {"hi", f.grid().hi},
            {"values", f.values()}};
}

GridFunction grid_function_from_json(const nlohmann::json& j) {
    for (const char* key : {"a", "lo", "hi", "values"}) {
        if (!j.contains(key)) {
            throw std::invalid_argument(std::string("grid function json: missing field '") + key + "'");
        }
    }
    Grid grid(j.at("a").get<double>(), j.at("lo").get<long>(), j.at("hi").get<long>());
    auto values = j.at("values").get<std::vector<double>>();
    if (static_cast<long>(values.size()) != grid.size()) {
        throw std::invalid_argument("grid function json: " + std::to_string(values.size()) +
                                 " values for " + std::to_string(grid.size()) + " grid points");
    }
    return GridFunction(grid, std::move(values));
}

GridFunction parse_grid_function(std::istream& in, Format fmt, double base) {
    if (fmt == Format::csv) return read_grid_function_csv(in, base);
    nlohmann::json j = nlohmann::json::parse(in);
    return grid_function_from_json(j);
}

GridFunction load_grid_function(const std::string& path, Format fmt, double base) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return parse_grid_function(in, fmt, base);
}

void write_kernel_csv(std::ostream& out, const GreensKernel& kern) {
    out << "t";
    for (long s = kern.s_lo; s <= kern.s_hi; ++s) out << ',' << s;
    out << '\n';
    for (long t = kern.t_lo; t <= kern.t_hi; ++t) {
        out << t;
        for (long s = kern.s_lo; s <= kern.s_hi; ++s) out << ',' << num(kern.at(t, s));
        out << '\n';
    }
}

nlohmann::json kernel_to_json(const GreensKernel& kern) {
    std::vector<double> table, u_table;
    for (long t = kern.t_lo; t <= kern.t_hi; ++t) {
        for (long s = kern.s_lo; s <= kern.s_hi; ++s) {
            table.push_back(kern.at(t, s));
            u_table.push_back(kern.u_at(t, s));
        }
    }
    return {{"spec",
             {{"nu", kern.spec.order.nu},
              {"base", kern.spec.base},
              {"a", kern.spec.a},
              {"b", kern.spec.b},
              {"k", kern.spec.k},
              {"j", kern.spec.j_orders}}},
            {"t_lo", kern.t_lo},
            {"t_hi", kern.t_hi},
            {"s_lo", kern.s_lo},
            {"s_hi", kern.s_hi},
            {"beta", kern.beta},
            {"table", table},
            {"u_table", u_table}};
}

const char* variant_name(LyapunovVariant v) {
    return v == LyapunovVariant::conjugate_A ? "conjugate_A" : "focal_H2";
}

LyapunovVariant variant_from_name(const std::string& name) {
    if (name == "conjugate_A") return LyapunovVariant::conjugate_A;
    if (name == "focal_H2") return LyapunovVariant::focal_H2;
    throw std::invalid_argument("unknown variant '" + name + "' (conjugate_A or focal_H2)");
}

nlohmann::json report_to_json(const LyapunovReport& rep) {
    std::vector<std::string> sides;
    for (Side s : rep.c_sides) sides.emplace_back(s == Side::left ? "left" : "right");
    return {{"nu", rep.nu},
            {"N", rep.n_ceil},
            {"base", rep.base},
            {"a", rep.a},
            {"b", rep.b},
            {"r", rep.r},
            {"c_sides", sides},
            {"gamma", rep.gamma},
            {"A_value", rep.A_value},
            {"q_integral", rep.q_integral},
            {"threshold", rep.threshold},
            {"threshold_kind", variant_name(rep.threshold_kind)},
            {"nontrivial_exists", rep.nontrivial_exists},
            {"inequality_holds", rep.inequality_holds},
            {"short_chain_n3", rep.short_chain},
            {"seed", rep.seed}};
}

void write_report_csv(std::ostream& out, const LyapunovReport& rep, bool with_header) {
    if (with_header) out << "nu,N,a,b,pattern,q_integral,threshold,ratio,nontrivial,holds\n";
    out << num(rep.nu) << ',' << rep.n_ceil << ',' << rep.a << ',' << rep.b << ','
        << variant_name(rep.threshold_kind) << ',' << num(rep.q_integral) << ','
        << num(rep.threshold) << ',' << num(rep.q_integral / rep.threshold) << ','
        << (rep.nontrivial_exists ? 1 : 0) << ',' << (rep.inequality_holds ? 1 : 0) << '\n';
}

} // namespace nablafrac::io
