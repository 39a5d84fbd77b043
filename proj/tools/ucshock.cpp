// Command-line front end: kinetics, phase, riemann, simulate, psystem.
//
// Parameters resolve as built-in defaults < preset < config file < flags, and
// every output starts with the fully resolved parameter set.  Results are
// assembled in memory and written only on success, so a failing run leaves no
// partial file behind.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ucshock/error.hpp"
#include "ucshock/io.hpp"
#include "ucshock/kinetics.hpp"
#include "ucshock/model.hpp"
#include "ucshock/pde.hpp"
#include "ucshock/phaseplane.hpp"
#include "ucshock/psystem.hpp"
#include "ucshock/riemann.hpp"

namespace {

using nlohmann::json;
using ucshock::Error;
using ucshock::ErrorKind;
using ucshock::io::format_double;
using ucshock::io::ParamMap;

enum class Format { Csv, Json };

struct Key {
  std::string name;
  std::string fallback;
  std::string help;
};

struct CommandSpec {
  std::string name;
  std::string description;
  Format default_format;
  std::vector<Key> keys;
};

const std::string kGammaFig = format_double(1.0 / std::sqrt(6.0));

std::vector<CommandSpec> command_specs() {
  return {
      {"kinetics",
       "undercompressive locus points (u_-, u_0, u_+, s) by branch",
       Format::Csv,
       {{"gamma", kGammaFig, "comma-separated list of gamma = beta/sqrt(mu)"},
        {"sweep-a", "", "lo:hi:step in a = -u_-/u_+ (default: whole locus)"},
        {"n", "50", "points per branch when no sweep is given"},
        {"branch", "both", "plus | minus | both"}}},
      {"phase",
       "traveling-wave orbit (xi, u, v) for a shock pair",
       Format::Csv,
       {{"gamma", kGammaFig, "gamma = beta/sqrt(mu)"},
        {"u-minus", "kinetic", "left state, or 'kinetic' for the kinetic partner of u-plus"},
        {"u-plus", "-0.8", "right state"},
        {"kind", "auto", "auto | saddle | lax"},
        {"seed-offset", "1e-08", "distance of the manifold seed from the saddle"},
        {"connect-tol", "1e-06", "splitting gap accepted as a connection"}}},
      {"riemann",
       "Riemann solution, or the pattern map over a (u_L, u_R) grid",
       Format::Json,
       {{"gamma", kGammaFig, "gamma = beta/sqrt(mu)"},
        {"uL", "0.4", "left state"},
        {"uR", "-0.8", "right state"},
        {"plane", "false", "classify the whole (u_L, u_R) grid instead"},
        {"grid-n", "121", "nodes per axis for the plane"},
        {"grid-min", "-1.2", "smallest state on the plane grid"},
        {"grid-max", "1.2", "largest state on the plane grid"},
        {"samples", "0", "also tabulate u(x/t) at this many points (single solve)"}}},
      {"simulate",
       "finite-difference run of u_t + (u - u^3)_x = beta u_xx + mu u_xxt",
       Format::Csv,
       {{"beta", "0.1", "dissipation"},
        {"mu", "0.06", "dispersion (mu < 0 allowed, ill-posed)"},
        {"x-min", "-30", "left end"},
        {"x-max", "60", "right end"},
        {"nx", "4001", "grid points"},
        {"dt", "0.02", "time step"},
        {"t-end", "50", "final time"},
        {"bc", "dirichlet", "dirichlet | neumann | periodic"},
        {"initial", "riemann", "riemann | traveling-wave"},
        {"uL", "0.4", "left state of the smoothed step"},
        {"uR", "-0.8", "right state of the smoothed step"},
        {"steepness", "gamma", "tanh steepness, or 'gamma' for beta/sqrt(mu)"},
        {"a", "0.5", "locus parameter of the traveling-wave seed"},
        {"branch", "minus", "locus branch of the traveling-wave seed"},
        {"x0", "0", "centre of the traveling-wave seed"},
        {"upwind", "0", "Rusanov blend weight in the flux"},
        {"output-every", "2", "snapshot interval"},
        {"track-every", "0.25", "interval of the front records behind the speed fits"},
        {"stride", "1", "write every stride-th grid point to CSV"},
        {"exec", "parallel", "serial | parallel"}}},
      {"psystem",
       "undercompressive traveling waves of the p-system",
       Format::Csv,
       {{"A", "4", "dispersion coefficient (> 0)"},
        {"b", "", "single ratio u_+/u_- (overrides b-range)"},
        {"b-range", "-0.75:-0.5:0.01", "lo:hi:step in b"},
        {"v-minus", "0", "second component on the left"},
        {"shoot", "true", "verify each point by shooting"}}},
  };
}

struct Preset {
  std::string name;
  std::string command;
  ParamMap params;
};

std::vector<Preset> presets() {
  std::string fig2_gammas;
  for (int n = 1; n <= 9; ++n) {
    if (n > 1) fig2_gammas += ",";
    fig2_gammas += format_double(n / 10.0 * std::sqrt(3.0 / 8.0));
  }
  return {
      {"fig1", "kinetics", {{"gamma", kGammaFig}, {"sweep-a", "0.5:0.66:0.01"}}},
      {"fig2", "kinetics", {{"gamma", fig2_gammas}, {"n", "100"}}},
      {"fig3", "riemann", {{"gamma", kGammaFig}, {"plane", "true"}}},
      {"fig4", "simulate", {{"uL", "0.4"}, {"uR", "-0.8"}, {"t-end", "50"}, {"output-every", "2"}}},
      {"fig5", "psystem", {{"A", "4"}, {"b-range", "-0.75:-0.5:0.01"}}},
  };
}

// Typed reads over the resolved strings; every problem is collected so the
// final error names all offending fields at once.
class Params {
 public:
  explicit Params(const ParamMap& values) : values_(values) {}

  const std::string& text(const std::string& key) const { return values_.at(key); }

  double number(const std::string& key) {
    const auto v = parse_double(text(key));
    if (!v) problems_.push_back(key + ": not a number '" + text(key) + "'");
    return v.value_or(0.0);
  }

  int integer(const std::string& key) {
    const std::string& s = text(key);
    int out = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      problems_.push_back(key + ": not an integer '" + s + "'");
    }
    return out;
  }

  bool flag(const std::string& key) {
    const std::string& s = text(key);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    problems_.push_back(key + ": expected true or false, got '" + s + "'");
    return false;
  }

  std::string choice(const std::string& key, const std::vector<std::string>& allowed) {
    const std::string& s = text(key);
    if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
      std::string msg = key + ": '" + s + "' not one of";
      for (const auto& a : allowed) msg += " " + a;
      problems_.push_back(msg);
    }
    return s;
  }

  std::vector<double> list(const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(text(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto v = parse_double(item);
      if (!v) {
        problems_.push_back(key + ": not a number '" + item + "'");
        return {};
      }
      out.push_back(*v);
    }
    if (out.empty()) problems_.push_back(key + ": empty list");
    return out;
  }

  // lo:hi:step, inclusive of hi up to rounding.
  std::vector<double> sweep(const std::string& key) {
    std::vector<double> parts;
    std::stringstream ss(text(key));
    std::string item;
    while (std::getline(ss, item, ':')) {
      const auto v = parse_double(item);
      if (!v) break;
      parts.push_back(*v);
    }
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
      problems_.push_back(key + ": expected lo:hi:step with lo <= hi and step > 0, got '" +
                          text(key) + "'");
      return {};
    }
    std::vector<double> out;
    const double lo = parts[0], hi = parts[1], step = parts[2];
    const long count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) {
      double v = lo + static_cast<double>(i) * step;
      if (std::abs(v - hi) < 1e-9 * step) v = hi;
      out.push_back(std::min(v, hi));
    }
    return out;
  }

  void problem(const std::string& msg) { problems_.push_back(msg); }

  void finish() const {
    if (problems_.empty()) return;
    std::string msg = "invalid parameters:";
    for (const auto& p : problems_) msg += " " + p + ";";
    msg.pop_back();
    throw Error(ErrorKind::InvalidConfig, msg);
  }

 private:
  static std::optional<double> parse_double(const std::string& raw) {
    const auto first = raw.find_first_not_of(" \t");
    const auto last = raw.find_last_not_of(" \t");
    if (first == std::string::npos) return std::nullopt;
    const char* b = raw.data() + first;
    const char* e = raw.data() + last + 1;
    if (*b == '+') ++b;
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || ptr != e) return std::nullopt;
    return out;
  }

  const ParamMap& values_;
  std::vector<std::string> problems_;
};

struct Run {
  std::string command;
  ParamMap params;  // resolved
  Format format;
};

void write_header(ucshock::io::CsvWriter& csv, const Run& run,
                  const std::vector<std::pair<std::string, std::string>>& extra = {}) {
  std::vector<std::pair<std::string, std::string>> lines{{"command", run.command}};
  for (const auto& [k, v] : run.params) lines.emplace_back(k, v);
  for (const auto& e : extra) lines.push_back(e);
  csv.header(lines);
}

json json_header(const Run& run) {
  json params = json::object();
  for (const auto& [k, v] : run.params) params[k] = v;
  return {{"command", run.command}, {"parameters", params}};
}

std::string run_kinetics(const Run& run) {
  Params p(run.params);
  const auto gammas = p.list("gamma");
  const bool sweeping = !p.text("sweep-a").empty();
  const auto a_values = sweeping ? p.sweep("sweep-a") : std::vector<double>{};
  const int n = p.integer("n");
  const std::string branch = p.choice("branch", {"both", "plus", "minus"});
  if (!sweeping && n < 2) p.problem("n: must be at least 2");
  p.finish();

  using ucshock::kinetics::Branch;
  std::vector<Branch> branches;
  if (branch != "minus") branches.push_back(Branch::Plus);
  if (branch != "plus") branches.push_back(Branch::Minus);

  std::ostringstream out;
  ucshock::io::CsvWriter csv(out);
  json loci = json::array();
  if (run.format == Format::Csv) {
    write_header(csv, run);
    csv.columns({"gamma", "branch", "a", "u_minus", "u_zero", "u_plus", "s", "f_minus", "f_plus"});
  }
  for (double gamma : gammas) {
    const double a_tilde = ucshock::kinetics::a_tilde(gamma);
    std::vector<ucshock::kinetics::KineticPoint> points;
    if (sweeping) {
      for (Branch b : branches) {
        for (double a : a_values) points.push_back(ucshock::kinetics::locus_point(a, gamma, b));
      }
    } else {
      for (const auto& kp : ucshock::kinetics::sample_locus(gamma, n)) {
        if (std::find(branches.begin(), branches.end(), kp.branch) != branches.end()) {
          points.push_back(kp);
        }
      }
    }
    if (run.format == Format::Csv) {
      for (const auto& kp : points) {
        csv.row_text({format_double(gamma), std::string(ucshock::kinetics::to_string(kp.branch)),
                      format_double(kp.a), format_double(kp.u_minus), format_double(kp.u_zero),
                      format_double(kp.u_plus), format_double(kp.s),
                      format_double(ucshock::model::flux(kp.u_minus)),
                      format_double(ucshock::model::flux(kp.u_plus))});
      }
    } else {
      const auto bounds = ucshock::kinetics::u_plus_bounds(gamma);
      json pts = json::array();
      for (const auto& kp : points) pts.push_back(ucshock::io::to_json(kp));
      loci.push_back({{"gamma", gamma},
                      {"a_tilde", a_tilde},
                      {"u_plus_bounds", {bounds.lower, bounds.upper}},
                      {"points", pts}});
    }
  }
  if (run.format == Format::Json) {
    json doc = json_header(run);
    doc["loci"] = loci;
    out << doc.dump(2) << '\n';
  }
  return out.str();
}

std::string run_phase(const Run& run) {
  Params p(run.params);
  const double gamma = p.number("gamma");
  const double u_plus = p.number("u-plus");
  const bool kinetic = p.text("u-minus") == "kinetic";
  const double u_minus_given = kinetic ? 0.0 : p.number("u-minus");
  const std::string kind = p.choice("kind", {"auto", "saddle", "lax"});
  ucshock::shooting::ShootOptions opts;
  opts.seed_offset = p.number("seed-offset");
  opts.connect_tol = p.number("connect-tol");
  if (!(gamma > 0.0)) p.problem("gamma: must be positive");
  if (!(opts.seed_offset > 0.0)) p.problem("seed-offset: must be positive");
  if (!(opts.connect_tol > 0.0)) p.problem("connect-tol: must be positive");
  p.finish();

  const double u_minus = kinetic ? ucshock::kinetics::kinetic_u_minus(u_plus, gamma) : u_minus_given;
  const auto shock = ucshock::model::classify_shock(u_minus, u_plus);
  std::string used = kind;
  if (used == "auto") {
    if (shock.kind == ucshock::model::ShockKind::UndercompressiveCandidate) {
      used = "saddle";
    } else if (shock.kind == ucshock::model::ShockKind::Lax) {
      used = "lax";
    } else {
      throw Error(ErrorKind::Domain, "pair (" + format_double(u_minus) + ", " +
                                         format_double(u_plus) + ") is a " +
                                         std::string(ucshock::model::to_string(shock.kind)) +
                                         " shock; no traveling wave to trace");
    }
  }
  const auto orbit = used == "saddle" ? ucshock::phaseplane::shoot_shock(u_minus, u_plus, gamma, opts)
                                      : ucshock::phaseplane::lax_profile(u_minus, u_plus, gamma, opts);
  const bool connects = orbit.verdict == ucshock::shooting::Verdict::Connects;
  // NaN when no saddle-saddle orbit was found; Lax profiles are off the parabola.
  const double residual = used == "saddle" && connects
                              ? ucshock::phaseplane::parabola_residual(orbit, u_minus, u_plus)
                              : std::numeric_limits<double>::quiet_NaN();

  std::ostringstream out;
  if (run.format == Format::Csv) {
    ucshock::io::CsvWriter csv(out);
    write_header(csv, run,
                 {{"resolved u_minus", format_double(u_minus)},
                  {"speed", format_double(shock.speed)},
                  {"shock_kind", std::string(ucshock::model::to_string(shock.kind))},
                  {"shot", used},
                  {"verdict", std::string(ucshock::shooting::to_string(orbit.verdict))},
                  {"terminal_distance", format_double(orbit.terminal_distance)},
                  {"parabola_residual", std::isnan(residual) ? "n/a" : format_double(residual)}});
    csv.columns({"xi", "u", "v"});
    for (const auto& s : orbit.trajectory) csv.row({s.xi, s.u, s.v});
  } else {
    json doc = json_header(run);
    doc["u_minus"] = u_minus;
    doc["u_plus"] = u_plus;
    doc["speed"] = shock.speed;
    doc["shock_kind"] = ucshock::model::to_string(shock.kind);
    doc["shot"] = used;
    doc["orbit"] = ucshock::io::to_json(orbit);
    doc["parabola_residual"] = std::isnan(residual) ? json(nullptr) : json(residual);
    out << doc.dump(2) << '\n';
  }
  return out.str();
}

std::string run_riemann(const Run& run) {
  Params p(run.params);
  const double gamma = p.number("gamma");
  const bool plane = p.flag("plane");
  ucshock::riemann::PlaneGrid grid;
  grid.n = p.integer("grid-n");
  grid.u_min = p.number("grid-min");
  grid.u_max = p.number("grid-max");
  const double u_L = p.number("uL");
  const double u_R = p.number("uR");
  const int samples = p.integer("samples");
  if (!(gamma > 0.0)) p.problem("gamma: must be positive");
  if (grid.n < 1) p.problem("grid-n: must be at least 1");
  if (!(grid.u_max > grid.u_min)) p.problem("grid-max: must exceed grid-min");
  if (samples < 0 || samples == 1) p.problem("samples: must be 0 or at least 2");
  p.finish();

  std::ostringstream out;
  ucshock::io::CsvWriter csv(out);
  if (plane) {
    const auto map = ucshock::riemann::classify_plane(gamma, grid);
    if (run.format == Format::Csv) {
      write_header(csv, run);
      csv.columns({"u_L", "u_R", "pattern"});
      for (int i = 0; i < grid.n; ++i) {
        for (int j = 0; j < grid.n; ++j) {
          csv.row_text({format_double(grid.node(i)), format_double(grid.node(j)), map.at(i, j)});
        }
      }
    } else {
      json doc = json_header(run);
      json nodes = json::array();
      for (int i = 0; i < grid.n; ++i) nodes.push_back(grid.node(i));
      json rows = json::array();
      for (int i = 0; i < grid.n; ++i) {
        json row = json::array();
        for (int j = 0; j < grid.n; ++j) row.push_back(map.at(i, j));
        rows.push_back(row);
      }
      doc["nodes"] = nodes;
      doc["labels"] = rows;  // labels[i][j]: u_L = nodes[i], u_R = nodes[j]
      out << doc.dump(2) << '\n';
    }
    return out.str();
  }

  const auto sol = ucshock::riemann::solve(u_L, u_R, gamma);
  // Similarity profile over a window that covers every wave.
  std::vector<std::pair<double, double>> profile;
  if (samples > 0) {
    double lo = -1.0, hi = 1.0;
    for (const auto& w : sol.waves) {
      lo = std::min(lo, w.speed_lo);
      hi = std::max(hi, w.speed_hi);
    }
    const double pad = 0.1 * (hi - lo);
    lo -= pad;
    hi += pad;
    for (int i = 0; i < samples; ++i) {
      const double r = lo + (hi - lo) * i / (samples - 1);
      profile.emplace_back(r, ucshock::riemann::evaluate(sol, r));
    }
  }
  if (run.format == Format::Csv) {
    std::string flags;
    for (const auto& f : sol.flags) flags += (flags.empty() ? "" : ";") + f;
    write_header(csv, run, {{"pattern", sol.pattern}, {"flags", flags}});
    csv.columns({"kind", "left_state", "right_state", "speed_lo", "speed_hi", "sonic"});
    for (const auto& w : sol.waves) {
      csv.row_text({std::string(ucshock::riemann::to_string(w.kind)), format_double(w.left_state),
                    format_double(w.right_state), format_double(w.speed_lo),
                    format_double(w.speed_hi), w.sonic ? "true" : "false"});
    }
    if (!profile.empty()) {
      out << '\n';
      csv.columns({"r", "u"});
      for (const auto& [r, u] : profile) csv.row({r, u});
    }
  } else {
    json doc = json_header(run);
    doc["solution"] = ucshock::riemann::to_json(sol);
    if (!profile.empty()) {
      json r = json::array(), u = json::array();
      for (const auto& [ri, ui] : profile) {
        r.push_back(ri);
        u.push_back(ui);
      }
      doc["profile"] = {{"r", r}, {"u", u}};
    }
    out << doc.dump(2) << '\n';
  }
  return out.str();
}

std::string run_simulate(Run run) {
  Params p(run.params);
  ucshock::pde::SimConfig cfg;
  cfg.beta = p.number("beta");
  cfg.mu = p.number("mu");
  cfg.x_min = p.number("x-min");
  cfg.x_max = p.number("x-max");
  cfg.nx = p.integer("nx");
  cfg.dt = p.number("dt");
  cfg.t_end = p.number("t-end");
  const std::string bc = p.choice("bc", {"dirichlet", "neumann", "periodic"});
  const std::string initial = p.choice("initial", {"riemann", "traveling-wave"});
  const double u_L = p.number("uL");
  const double u_R = p.number("uR");
  const bool steep_gamma = p.text("steepness") == "gamma";
  const double steepness = steep_gamma ? 0.0 : p.number("steepness");
  const double a = p.number("a");
  const std::string branch = p.choice("branch", {"plus", "minus"});
  const double x0 = p.number("x0");
  cfg.upwind_blend = p.number("upwind");
  const double every = p.number("output-every");
  const double track_every = p.number("track-every");
  const int stride = p.integer("stride");
  const std::string exec = p.choice("exec", {"serial", "parallel"});
  if (!(every > 0.0)) p.problem("output-every: must be positive");
  if (!(track_every > 0.0)) p.problem("track-every: must be positive");
  if (stride < 1) p.problem("stride: must be at least 1");
  const double gamma = cfg.mu > 0.0 ? cfg.beta / std::sqrt(cfg.mu) : 0.0;
  if (steep_gamma && !(gamma > 0.0)) p.problem("steepness: 'gamma' needs beta > 0 and mu > 0");
  if (initial == "traveling-wave" && !(gamma > 0.0)) p.problem("initial: traveling-wave needs mu > 0");
  cfg.initial = ucshock::pde::SmoothedRiemann{u_L, u_R, steep_gamma ? gamma : steepness};
  if (bc == "periodic") cfg.bc = ucshock::pde::Boundary::Periodic;
  for (const auto& problem : cfg.problems()) p.problem(problem);
  p.finish();

  if (steep_gamma) run.params["steepness"] = format_double(gamma);
  cfg.bc = ucshock::pde::boundary_from_string(bc);
  cfg.exec = exec == "serial" ? ucshock::pde::Exec::Serial : ucshock::pde::Exec::Parallel;
  std::optional<ucshock::riemann::RiemannSolution> predicted;
  if (initial == "riemann") {
    if (gamma > 0.0) predicted = ucshock::riemann::solve(u_L, u_R, gamma);
  } else {
    const auto kp = ucshock::kinetics::locus_point(
        a, gamma, branch == "plus" ? ucshock::kinetics::Branch::Plus : ucshock::kinetics::Branch::Minus);
    cfg.initial = ucshock::pde::TravelingWaveSeed{kp, x0};
  }
  // Callbacks fire on both grids; only multiples of output-every become snapshots.
  auto on_grid = [](double t, double h) { return std::abs(t / h - std::round(t / h)) < 1e-9; };
  for (double h : {every, track_every}) {
    for (long k = 1; k * h < cfg.t_end - 1e-12; ++k) cfg.output_times.push_back(k * h);
  }
  std::sort(cfg.output_times.begin(), cfg.output_times.end());
  cfg.output_times.erase(std::unique(cfg.output_times.begin(), cfg.output_times.end(),
                                     [](double x, double y) { return std::abs(x - y) < 1e-9; }),
                         cfg.output_times.end());
  cfg.validate();

  std::ostringstream out;
  ucshock::io::CsvWriter csv(out);
  if (run.format == Format::Csv) {
    write_header(csv, run);
    csv.columns({"t", "x", "u"});
  }
  ucshock::pde::FrontTracker tracker;
  json snapshots = json::array();
  std::optional<double> mass0;
  const auto final_state = ucshock::pde::simulate(cfg, [&](const ucshock::pde::SimState& s) {
    if (!mass0) mass0 = ucshock::pde::mass(s, cfg.bc);
    const bool last_call = s.t >= cfg.t_end - 1e-9;
    if (on_grid(s.t, track_every) || last_call) tracker.record(s);
    if (!(s.t == 0.0 || on_grid(s.t, every) || last_call)) return;
    if (run.format == Format::Csv) {
      for (std::size_t i = 0; i < s.u.size(); i += static_cast<std::size_t>(stride)) {
        csv.row({s.t, s.x(i), s.u[i]});
      }
    } else {
      json snap = ucshock::io::to_json(ucshock::pde::detect_fronts(s));
      snap["t"] = s.t;
      snapshots.push_back(snap);
    }
  });

  if (run.format == Format::Json) {
    json doc = json_header(run);
    doc["gamma"] = gamma;
    if (predicted) doc["riemann_prediction"] = ucshock::riemann::to_json(*predicted);
    doc["snapshots"] = snapshots;
    doc["final"] = ucshock::io::to_json(tracker.reports().back());
    doc["final_time"] = final_state.t;
    auto speeds = [&](ucshock::pde::FrontMeasure m) {
      json arr = json::array();
      for (double v : tracker.speeds(0.5, m)) arr.push_back(std::isfinite(v) ? json(v) : json(nullptr));
      return arr;
    };
    doc["front_speeds"] = {{"steepest", speeds(ucshock::pde::FrontMeasure::Steepest)},
                           {"conservative", speeds(ucshock::pde::FrontMeasure::Conservative)}};
    doc["mass"] = {{"initial", *mass0}, {"final", ucshock::pde::mass(final_state, cfg.bc)}};
    out << doc.dump(2) << '\n';
  }
  return out.str();
}

std::string run_psystem(const Run& run) {
  Params p(run.params);
  const double A = p.number("A");
  const bool single = !p.text("b").empty();
  const std::vector<double> bs = single ? std::vector<double>{p.number("b")} : p.sweep("b-range");
  const double v_minus = p.number("v-minus");
  const bool shoot = p.flag("shoot");
  p.finish();

  std::vector<ucshock::psystem::PSystemLocusPoint> points;
  for (double b : bs) points.push_back(ucshock::psystem::psys_locus(b, A, v_minus));
  std::vector<ucshock::psystem::PSystemOrbit> orbits(points.size());
  if (shoot) {
    for (std::size_t i = 0; i < points.size(); ++i) orbits[i] = ucshock::psystem::psys_shoot(points[i]);
  }

  std::ostringstream out;
  if (run.format == Format::Csv) {
    ucshock::io::CsvWriter csv(out);
    write_header(csv, run, {{"threshold", format_double(ucshock::psystem::psys_threshold(A))}});
    std::vector<std::string> cols{"b", "A", "u_minus", "u_plus", "u_zero", "s", "k", "v_minus", "v_plus"};
    if (shoot) cols.insert(cols.end(), {"verdict", "reversed", "parabola_residual"});
    csv.columns(cols);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& q = points[i];
      std::vector<std::string> cells{format_double(q.b),      format_double(q.A),
                                     format_double(q.u_minus), format_double(q.u_plus),
                                     format_double(q.u_zero),  format_double(q.s),
                                     format_double(q.k),       format_double(q.v_minus),
                                     format_double(q.v_plus)};
      if (shoot) {
        cells.push_back(std::string(ucshock::shooting::to_string(orbits[i].orbit.verdict)));
        cells.push_back(orbits[i].reversed ? "true" : "false");
        cells.push_back(format_double(orbits[i].parabola_residual));
      }
      csv.row_text(cells);
    }
  } else {
    json doc = json_header(run);
    doc["threshold"] = ucshock::psystem::psys_threshold(A);
    json arr = json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
      json entry = {{"point", ucshock::io::to_json(points[i])}};
      if (shoot) {
        entry["verdict"] = ucshock::shooting::to_string(orbits[i].orbit.verdict);
        entry["reversed"] = orbits[i].reversed;
        const double r = orbits[i].parabola_residual;
        entry["parabola_residual"] = std::isfinite(r) ? json(r) : json(nullptr);
      }
      arr.push_back(entry);
    }
    doc["points"] = arr;
    out << doc.dump(2) << '\n';
  }
  return out.str();
}

std::string dispatch(const Run& run) {
  if (run.command == "kinetics") return run_kinetics(run);
  if (run.command == "phase") return run_phase(run);
  if (run.command == "riemann") return run_riemann(run);
  if (run.command == "simulate") return run_simulate(run);
  return run_psystem(run);
}

int fail(ErrorKind kind, const std::string& message) {
  std::cerr << ucshock::io::error_record(kind, message).dump() << '\n';
  return kind == ErrorKind::InvalidConfig ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  const auto specs = command_specs();
  const auto preset_list = presets();

  CLI::App app{"Undercompressive shocks: kinetic locus, traveling waves, Riemann solver, PDE runs"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  std::string preset_name, config_path, format_name, output_path;
  std::vector<std::string> preset_names;
  for (const auto& pr : preset_list) preset_names.push_back(pr.name);
  app.add_option("--preset", preset_name, "figure preset")->check(CLI::IsMember(preset_names));
  app.add_option("--config", config_path, "key = value or JSON file with command parameters");
  app.add_option("--format", format_name, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output,-o", output_path, "output file (default stdout)");

  std::map<std::string, std::map<std::string, std::string>> flag_values;
  std::map<std::string, CLI::App*> subs;
  for (const auto& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.description);
    subs[spec.name] = sub;
    auto& store = flag_values[spec.name];
    for (const auto& key : spec.keys) {
      std::string help = key.help;
      if (!key.fallback.empty()) help += " [" + key.fallback + "]";
      sub->add_option("--" + key.name, store[key.name], help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(ErrorKind::InvalidConfig, e.what());
  }

  try {
    const Preset* preset = nullptr;
    for (const auto& pr : preset_list) {
      if (pr.name == preset_name) preset = &pr;
    }
    std::string command;
    for (const auto& [name, sub] : subs) {
      if (sub->parsed()) command = name;
    }
    if (command.empty()) {
      if (!preset) {
        std::cout << app.help();
        return 2;
      }
      command = preset->command;
    } else if (preset && preset->command != command) {
      throw Error(ErrorKind::InvalidConfig,
                  "preset: " + preset->name + " belongs to '" + preset->command + "', not '" +
                      command + "'");
    }
    const CommandSpec& spec =
        *std::find_if(specs.begin(), specs.end(), [&](const CommandSpec& s) { return s.name == command; });

    Run run;
    run.command = command;
    for (const auto& key : spec.keys) run.params[key.name] = key.fallback;
    std::vector<std::string> allowed;
    for (const auto& key : spec.keys) allowed.push_back(key.name);
    if (preset) {
      for (const auto& [k, v] : preset->params) run.params[k] = v;
    }
    if (!config_path.empty()) {
      const ParamMap file = ucshock::io::read_config_file(config_path);
      ucshock::io::reject_unknown(file, allowed, "config " + config_path);
      for (const auto& [k, v] : file) run.params[k] = v;
    }
    for (const auto& key : spec.keys) {
      if (subs[command]->count("--" + key.name)) run.params[key.name] = flag_values[command][key.name];
    }
    run.format = format_name.empty() ? spec.default_format
                                     : (format_name == "json" ? Format::Json : Format::Csv);

    const std::string text = dispatch(run);
    if (output_path.empty()) {
      std::cout << text;
      std::cout.flush();
    } else {
      std::ofstream file(output_path, std::ios::binary);
      if (!file) throw Error(ErrorKind::InvalidConfig, "output: cannot open " + output_path);
      file << text;
      if (!file) throw Error(ErrorKind::InvalidConfig, "output: write failed for " + output_path);
    }
    return 0;
  } catch (const Error& e) {
    return fail(e.kind(), e.what());
  } catch (const std::exception& e) {
    return fail(ErrorKind::InvalidConfig, e.what());
  }
}
