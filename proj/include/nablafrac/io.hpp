#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "nablafrac/greens.hpp"
#include "nablafrac/grid.hpp"
#include "nablafrac/lyapunov.hpp"

namespace nablafrac::io {

enum class Format { json, csv };

/// CSV dialect: comma separator, '.' decimal point, LF line endings,
/// mandatory "n,value" header; n is the integer offset from the base.
GridFunction read_grid_function_csv(std::istream& in, double base);
void write_grid_function_csv(std::ostream& out, const GridFunction& f);

/// JSON schema: {"a": base, "lo": lo, "hi": hi, "values": [...]}.
/// Serialization round-trips doubles bit-exactly.
nlohmann::json grid_function_to_json(const GridFunction& f);
GridFunction grid_function_from_json(const nlohmann::json& j);

GridFunction load_grid_function(const std::string& path, Format fmt, double base);
GridFunction parse_grid_function(std::istream& in, Format fmt, double base);

/// Kernel matrix with a header row of s offsets and a leading column of
/// t offsets.
void write_kernel_csv(std::ostream& out, const GreensKernel& kern);
nlohmann::json kernel_to_json(const GreensKernel& kern);

nlohmann::json report_to_json(const LyapunovReport& rep);
void write_report_csv(std::ostream& out, const LyapunovReport& rep, bool with_header);

const char* variant_name(LyapunovVariant v);
LyapunovVariant variant_from_name(const std::string& name);

} // namespace nablafrac::io
