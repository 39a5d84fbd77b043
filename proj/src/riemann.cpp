#include "ucshock/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ucshock/error.hpp"
#include "ucshock/model.hpp"
#include "ucshock/phaseplane.hpp"

namespace ucshock::riemann {

namespace {

Wave rarefaction(double left, double right) {
  Wave w;
  w.kind = WaveKind::Rarefaction;
  w.left_state = left;
  w.right_state = right;
  w.speed_lo = model::char_speed(left);
  w.speed_hi = model::char_speed(right);
  return w;
}

Wave shock(WaveKind kind, double left, double right) {
  Wave w;
  w.kind = kind;
  w.left_state = left;
  w.right_state = right;
  w.speed_lo = w.speed_hi = model::rh_speed(left, right);
  w.sonic = std::abs(w.speed_lo - model::char_speed(left)) <= kSonicTol ||
            std::abs(w.speed_lo - model::char_speed(right)) <= kSonicTol;
  return w;
}

Wave negated(Wave w) {
  w.left_state = -w.left_state;
  w.right_state = -w.right_state;
  return w;
}

// Convex-hull construction for u_R <= 0.  Below zero the flux is convex,
// above it concave, so at most one shock appears and it is the last wave.
std::vector<Wave> classical_canonical(double u_L, double u_R) {
  std::vector<Wave> waves;
  if (u_L == u_R) return waves;
  if (u_L < u_R) {
    waves.push_back(rarefaction(u_L, u_R));
  } else if (u_L <= 0.0) {
    waves.push_back(shock(WaveKind::LaxShock, u_L, u_R));
  } else {
    // The shock from the tangency point -u_R/2 is sonic on its left.
    // Fans thinner than rounding are dropped so mirrored data give mirrored
    // solutions.
    const double tangent = -0.5 * u_R;
    if (u_L <= tangent + 1e-12 * std::max(1.0, std::abs(u_R))) {
      waves.push_back(shock(WaveKind::LaxShock, u_L, u_R));
    } else if (tangent == u_R) {
      waves.push_back(rarefaction(u_L, u_R));
    } else {
      waves.push_back(rarefaction(u_L, tangent));
      waves.push_back(shock(WaveKind::LaxShock, tangent, u_R));
    }
  }
  return waves;
}

std::vector<Wave> classical_waves(double u_L, double u_R) {
  if (u_R <= 0.0) return classical_canonical(u_L, u_R);
  std::vector<Wave> waves = classical_canonical(-u_L, -u_R);
  for (Wave& w : waves) w = negated(w);
  return waves;
}

bool speeds_ordered(const std::vector<Wave>& waves) {
  for (std::size_t i = 1; i < waves.size(); ++i) {
    if (waves[i].speed_lo < waves[i - 1].speed_hi - kSonicTol) return false;
  }
  return true;
}

void require_finite(double u_L, double u_R) {
  if (!std::isfinite(u_L) || !std::isfinite(u_R)) {
    throw Error(ErrorKind::Domain, "Riemann data must be finite");
  }
}

// Nonclassical construction for u_R <= 0; returns the waves in canonical
// orientation and appends audit flags.
std::vector<Wave> solve_canonical(double u_L, double u_R, double gamma,
                                  std::vector<std::string>& flags) {
  std::vector<Wave> waves = classical_canonical(u_L, u_R);
  if (waves.empty() || !waves.back().is_shock() || gamma >= kinetics::gamma_max()) return waves;
  const Wave& candidate = waves.back();
  // Jumps below the classification tolerance are characteristic; nothing to
  // check and no kinetic wave can replace them.
  if (model::classify_shock(candidate.left_state, candidate.right_state).kind ==
      model::ShockKind::Characteristic) {
    return waves;
  }
  if (phaseplane::lax_admissible(candidate.left_state, candidate.right_state, gamma)) {
    return waves;
  }

  kinetics::KineticPoint kp;
  try {
    kp = kinetics::kinetic_point_for_u_plus(u_R, gamma);
  } catch (const Error&) {
    flags.push_back("lax_profile_missing_without_kinetic_partner");
    return waves;
  }
  const double u_mid = kp.u_minus;
  std::vector<Wave> nonclassical = classical_waves(u_L, u_mid);
  nonclassical.push_back(shock(WaveKind::UndercompressiveShock, u_mid, u_R));
  if (!speeds_ordered(nonclassical)) {
    flags.push_back("nonclassical_speeds_unordered_kept_classical");
    return waves;
  }
  flags.push_back(std::string("kinetic_branch=") + std::string(kinetics::to_string(kp.branch)));
  if (kp.at_half) flags.push_back("kinetic_endpoint_a_half");
  if (kp.at_tilde) flags.push_back("kinetic_endpoint_a_tilde");
  return nonclassical;
}

RiemannSolution assemble(double u_L, double u_R, double gamma, std::vector<Wave> waves,
                         std::vector<std::string> flags) {
  RiemannSolution sol;
  sol.u_L = u_L;
  sol.u_R = u_R;
  sol.gamma = gamma;
  sol.waves = std::move(waves);
  sol.pattern = pattern_label(sol.waves);
  sol.flags = std::move(flags);
  for (const Wave& w : sol.waves) {
    if (w.sonic) {
      sol.flags.push_back("sonic_attachment");
      break;
    }
  }
  return sol;
}

}  // namespace

std::string_view to_string(WaveKind kind) {
  switch (kind) {
    case WaveKind::Rarefaction: return "rarefaction";
    case WaveKind::LaxShock: return "lax_shock";
    case WaveKind::UndercompressiveShock: return "undercompressive_shock";
  }
  return "unknown";
}

WaveKind wave_kind_from_string(std::string_view name) {
  for (WaveKind k : {WaveKind::Rarefaction, WaveKind::LaxShock, WaveKind::UndercompressiveShock}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorKind::InvalidConfig, "unknown wave kind '" + std::string(name) + "'");
}

std::string pattern_label(const std::vector<Wave>& waves) {
  if (waves.empty()) return "C";
  std::string label;
  for (const Wave& w : waves) {
    switch (w.kind) {
      case WaveKind::Rarefaction: label += "R"; break;
      case WaveKind::LaxShock: label += "S"; break;
      case WaveKind::UndercompressiveShock: label += "Σ"; break;
    }
  }
  return label;
}

RiemannSolution solve_classical(double u_L, double u_R) {
  require_finite(u_L, u_R);
  return assemble(u_L, u_R, 0.0, classical_waves(u_L, u_R), {"classical_only"});
}

RiemannSolution solve(double u_L, double u_R, double gamma) {
  require_finite(u_L, u_R);
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    std::ostringstream msg;
    msg << "gamma must be positive and finite (got " << gamma << ")";
    throw Error(ErrorKind::Domain, msg.str());
  }
  std::vector<std::string> flags;
  if (gamma >= kinetics::gamma_max()) flags.push_back("classical_only");
  // The flux is odd, so u -> -u maps solutions to solutions with the same speeds.
  const bool mirror = u_R > 0.0;
  std::vector<Wave> waves = mirror ? solve_canonical(-u_L, -u_R, gamma, flags)
                                   : solve_canonical(u_L, u_R, gamma, flags);
  if (mirror) {
    for (Wave& w : waves) w = negated(w);
  }
  return assemble(u_L, u_R, gamma, std::move(waves), std::move(flags));
}

double fan_state(double r, double sign) {
  const double u = std::sqrt(std::max(0.0, (1.0 - r) / 3.0));
  return sign < 0.0 ? -u : u;
}

double evaluate(const RiemannSolution& sol, double r) {
  double state = sol.u_L;
  for (const Wave& w : sol.waves) {
    if (w.is_shock()) {
      if (r < w.speed_lo) return state;
      state = w.right_state;
      continue;
    }
    if (r < w.speed_lo) return state;
    if (r < w.speed_hi) {
      const double u = fan_state(r, w.left_state + w.right_state);
      return std::clamp(u, std::min(w.left_state, w.right_state),
                        std::max(w.left_state, w.right_state));
    }
    state = w.right_state;
  }
  return state;
}

PatternMap classify_plane(double gamma, const PlaneGrid& grid) {
  if (grid.n < 1 || !(grid.u_max >= grid.u_min)) {
    throw Error(ErrorKind::Domain, "pattern grid needs n >= 1 and u_max >= u_min");
  }
  PatternMap map;
  map.grid = grid;
  map.gamma = gamma;
  const long n = grid.n;
  map.labels.assign(static_cast<std::size_t>(n * n), std::string());
#pragma omp parallel for schedule(dynamic, 8)
  for (long cell = 0; cell < n * n; ++cell) {
    const int i = static_cast<int>(cell / n);
    const int j = static_cast<int>(cell % n);
    map.labels[static_cast<std::size_t>(cell)] =
        solve(grid.node(i), grid.node(j), gamma).pattern;
  }
  return map;
}

nlohmann::json to_json(const RiemannSolution& sol) {
  nlohmann::json waves = nlohmann::json::array();
  for (const Wave& w : sol.waves) {
    waves.push_back({{"kind", to_string(w.kind)},
                     {"left_state", w.left_state},
                     {"right_state", w.right_state},
                     {"speed_lo", w.speed_lo},
                     {"speed_hi", w.speed_hi},
                     {"sonic", w.sonic}});
  }
  return {{"u_L", sol.u_L}, {"u_R", sol.u_R},     {"gamma", sol.gamma},
          {"pattern", sol.pattern}, {"waves", waves}, {"flags", sol.flags}};
}

RiemannSolution solution_from_json(const nlohmann::json& j) {
  RiemannSolution sol;
  sol.u_L = j.at("u_L").get<double>();
  sol.u_R = j.at("u_R").get<double>();
  sol.gamma = j.at("gamma").get<double>();
  sol.pattern = j.at("pattern").get<std::string>();
  sol.flags = j.at("flags").get<std::vector<std::string>>();
  for (const auto& jw : j.at("waves")) {
    Wave w;
    w.kind = wave_kind_from_string(jw.at("kind").get<std::string>());
    w.left_state = jw.at("left_state").get<double>();
    w.right_state = jw.at("right_state").get<double>();
    w.speed_lo = jw.at("speed_lo").get<double>();
    w.speed_hi = jw.at("speed_hi").get<double>();
    w.sonic = jw.at("sonic").get<bool>();
    sol.waves.push_back(w);
  }
  return sol;
}

}  // namespace ucshock::riemann
