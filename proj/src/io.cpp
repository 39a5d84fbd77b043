#include "ucshock/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace ucshock::io {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

// Strips a trailing comment unless the # sits inside quotes.
std::string strip_comment(std::string_view line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      return std::string(line.substr(0, i));
    }
  }
  return std::string(line);
}

ParamMap parse_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, "config: JSON config must be an object");
  ParamMap out;
  std::vector<std::string> bad;
  for (const auto& [key, value] : j.items()) {
    if (value.is_string()) {
      out[key] = value.get<std::string>();
    } else if (value.is_number_integer()) {
      out[key] = std::to_string(value.get<long long>());
    } else if (value.is_number()) {
      out[key] = format_double(value.get<double>());
    } else if (value.is_boolean()) {
      out[key] = value.get<bool>() ? "true" : "false";
    } else {
      bad.push_back(key);
    }
  }
  if (!bad.empty()) {
    std::string msg = "config: values must be scalars:";
    for (const auto& k : bad) msg += " " + k;
    throw Error(ErrorKind::InvalidConfig, msg);
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ParamMap parse_config(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json(text);

  ParamMap out;
  std::vector<std::string> problems;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    // Section headers carry no meaning here; tolerate them so TOML files load.
    if (body.front() == '[' && body.back() == ']') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      problems.push_back("line " + std::to_string(line_no) + ": expected key = value");
      continue;
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = unquote(trim(std::string_view(body).substr(eq + 1)));
    if (key.empty()) {
      problems.push_back("line " + std::to_string(line_no) + ": empty key");
    } else if (out.count(key)) {
      problems.push_back("line " + std::to_string(line_no) + ": duplicate key " + key);
    } else {
      out[key] = value;
    }
  }
  if (!problems.empty()) {
    std::string msg = "config:";
    for (const auto& p : problems) msg += " " + p + ";";
    msg.pop_back();
    throw Error(ErrorKind::InvalidConfig, msg);
  }
  return out;
}

ParamMap read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidConfig, "config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void reject_unknown(const ParamMap& params, const std::vector<std::string>& allowed,
                    std::string_view context) {
  std::vector<std::string> unknown;
  for (const auto& [key, value] : params) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) unknown.push_back(key);
  }
  if (unknown.empty()) return;
  std::string msg = std::string(context) + ": unknown key(s):";
  for (const auto& k : unknown) msg += " " + k;
  throw Error(ErrorKind::InvalidConfig, msg);
}

void CsvWriter::header(const std::vector<std::pair<std::string, std::string>>& params) {
  for (const auto& [key, value] : params) out_ << "# " << key << " = " << value << '\n';
}

void CsvWriter::columns(const std::vector<std::string>& names) { row_text(names); }

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    out_ << format_double(values[i]);
  }
  out_ << '\n';
}

void CsvWriter::row_text(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

nlohmann::json error_record(ErrorKind kind, std::string_view message) {
  return {{"error", {{"kind", std::string(to_string(kind))}, {"message", std::string(message)}}}};
}

nlohmann::json to_json(const kinetics::KineticPoint& p) {
  return {{"a", p.a},         {"branch", kinetics::to_string(p.branch)},
          {"u_minus", p.u_minus}, {"u_zero", p.u_zero},
          {"u_plus", p.u_plus},   {"s", p.s},
          {"gamma", p.gamma},     {"at_half", p.at_half},
          {"at_tilde", p.at_tilde}};
}

kinetics::KineticPoint kinetic_point_from_json(const nlohmann::json& j) {
  kinetics::KineticPoint p;
  p.a = j.at("a").get<double>();
  const auto branch = j.at("branch").get<std::string>();
  if (branch != "plus" && branch != "minus") {
    throw Error(ErrorKind::InvalidConfig, "branch: expected plus or minus, got " + branch);
  }
  p.branch = branch == "plus" ? kinetics::Branch::Plus : kinetics::Branch::Minus;
  p.u_minus = j.at("u_minus").get<double>();
  p.u_zero = j.at("u_zero").get<double>();
  p.u_plus = j.at("u_plus").get<double>();
  p.s = j.at("s").get<double>();
  p.gamma = j.at("gamma").get<double>();
  p.at_half = j.at("at_half").get<bool>();
  p.at_tilde = j.at("at_tilde").get<bool>();
  return p;
}

nlohmann::json to_json(const psystem::PSystemLocusPoint& p) {
  return {{"b", p.b},           {"A", p.A},         {"u_minus", p.u_minus},
          {"u_plus", p.u_plus}, {"u_zero", p.u_zero}, {"s", p.s},
          {"k", p.k},           {"v_minus", p.v_minus}, {"v_plus", p.v_plus},
          {"at_threshold", p.at_threshold}};
}

psystem::PSystemLocusPoint psys_point_from_json(const nlohmann::json& j) {
  psystem::PSystemLocusPoint p;
  p.b = j.at("b").get<double>();
  p.A = j.at("A").get<double>();
  p.u_minus = j.at("u_minus").get<double>();
  p.u_plus = j.at("u_plus").get<double>();
  p.u_zero = j.at("u_zero").get<double>();
  p.s = j.at("s").get<double>();
  p.k = j.at("k").get<double>();
  p.v_minus = j.at("v_minus").get<double>();
  p.v_plus = j.at("v_plus").get<double>();
  p.at_threshold = j.at("at_threshold").get<bool>();
  return p;
}

nlohmann::json to_json(const shooting::OrbitResult& orbit) {
  nlohmann::json xi = nlohmann::json::array();
  nlohmann::json u = nlohmann::json::array();
  nlohmann::json v = nlohmann::json::array();
  for (const auto& p : orbit.trajectory) {
    xi.push_back(p.xi);
    u.push_back(p.u);
    v.push_back(p.v);
  }
  return {{"verdict", shooting::to_string(orbit.verdict)},
          {"terminal_distance", orbit.terminal_distance},
          {"xi", xi},
          {"u", u},
          {"v", v}};
}

shooting::OrbitResult orbit_from_json(const nlohmann::json& j) {
  shooting::OrbitResult orbit;
  const auto verdict = j.at("verdict").get<std::string>();
  bool known = false;
  for (auto v : {shooting::Verdict::Connects, shooting::Verdict::MissesAbove,
                 shooting::Verdict::MissesBelow, shooting::Verdict::Diverges}) {
    if (shooting::to_string(v) == verdict) {
      orbit.verdict = v;
      known = true;
    }
  }
  if (!known) throw Error(ErrorKind::InvalidConfig, "verdict: unknown value " + verdict);
  orbit.terminal_distance = j.at("terminal_distance").get<double>();
  const auto xi = j.at("xi").get<std::vector<double>>();
  const auto u = j.at("u").get<std::vector<double>>();
  const auto v = j.at("v").get<std::vector<double>>();
  if (xi.size() != u.size() || u.size() != v.size()) {
    throw Error(ErrorKind::InvalidConfig, "trajectory: xi, u, v lengths differ");
  }
  for (std::size_t i = 0; i < xi.size(); ++i) orbit.trajectory.push_back({xi[i], u[i], v[i]});
  return orbit;
}

nlohmann::json to_json(const pde::FrontReport& report) {
  nlohmann::json plateaus = nlohmann::json::array();
  for (const auto& p : report.plateaus) {
    plateaus.push_back({{"value", p.value}, {"x_begin", p.x_begin}, {"x_end", p.x_end}});
  }
  nlohmann::json fronts = nlohmann::json::array();
  for (const auto& f : report.fronts) {
    fronts.push_back({{"position", f.position},
                      {"conservative_position", f.conservative_position},
                      {"left_value", f.left_value},
                      {"right_value", f.right_value}});
  }
  return {{"plateaus", plateaus}, {"fronts", fronts}};
}

pde::FrontReport front_report_from_json(const nlohmann::json& j) {
  pde::FrontReport r;
  for (const auto& p : j.at("plateaus")) {
    r.plateaus.push_back({p.at("value").get<double>(), p.at("x_begin").get<double>(),
                          p.at("x_end").get<double>()});
  }
  for (const auto& f : j.at("fronts")) {
    r.fronts.push_back({f.at("position").get<double>(),
                        f.at("conservative_position").get<double>(),
                        f.at("left_value").get<double>(), f.at("right_value").get<double>()});
  }
  return r;
}

}  // namespace ucshock::io
