#pragma once

// Plain-text I/O shared by the command-line tool: lossless number formatting,
// CSV tables with a commented parameter header, key/value config files and
// error records.

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ucshock/error.hpp"
#include "ucshock/kinetics.hpp"
#include "ucshock/pde.hpp"
#include "ucshock/psystem.hpp"
#include "ucshock/shooting.hpp"

namespace ucshock::io {

// 17 significant digits, enough to round-trip any double.
std::string format_double(double x);

// Ordered so output never depends on insertion order.
using ParamMap = std::map<std::string, std::string>;

// Accepts either a flat JSON object or lines of `key = value` with `#`
// comments; values may be quoted.  Throws Error(InvalidConfig) naming every
// malformed line.
ParamMap parse_config(std::string_view text);
ParamMap read_config_file(const std::string& path);

// Throws Error(InvalidConfig) listing every key of params not in allowed.
void reject_unknown(const ParamMap& params, const std::vector<std::string>& allowed,
                    std::string_view context);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  // "# key = value" lines ahead of the column row.
  void header(const std::vector<std::pair<std::string, std::string>>& params);
  void columns(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  // Mixed text and numbers; numbers already formatted by the caller.
  void row_text(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
};

nlohmann::json error_record(ErrorKind kind, std::string_view message);

// JSON forms of the result types; each *_from_json inverts the matching
// to_json exactly.
nlohmann::json to_json(const kinetics::KineticPoint& p);
kinetics::KineticPoint kinetic_point_from_json(const nlohmann::json& j);

nlohmann::json to_json(const psystem::PSystemLocusPoint& p);
psystem::PSystemLocusPoint psys_point_from_json(const nlohmann::json& j);

nlohmann::json to_json(const shooting::OrbitResult& orbit);
shooting::OrbitResult orbit_from_json(const nlohmann::json& j);

nlohmann::json to_json(const pde::FrontReport& report);
pde::FrontReport front_report_from_json(const nlohmann::json& j);

}  // namespace ucshock::io
