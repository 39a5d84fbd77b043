#include "ucshock/shooting.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ucshock/error.hpp"

namespace ucshock::shooting {

namespace {

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

Vec2 unit_eigenvector(double lambda, double orientation) {
  const double norm = std::hypot(1.0, lambda);
  const double flip = sign_of(orientation);
  return {flip / norm, flip * lambda / norm};
}

// Time in [view.t0, view.t1] where the interpolated u hits `level`.
double locate_crossing(const ode::StepView& view, double level) {
  double lo = view.t0;
  double hi = view.t1;
  const double g_lo = view.y0[0] - level;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = view.interpolate(mid)[0] - level;
    if ((g < 0.0) == (g_lo < 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

enum class Exit { None, Section, Turned, PassedTarget, Box, Exhausted };

struct Leg {
  std::vector<OrbitSample> samples;
  Exit exit = Exit::None;
  double section_time = 0.0;
  double section_v = 0.0;
  double min_target_distance = std::numeric_limits<double>::infinity();
};

}  // namespace

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Connects: return "connects";
    case Verdict::MissesAbove: return "misses_above";
    case Verdict::MissesBelow: return "misses_below";
    case Verdict::Diverges: return "diverges";
  }
  return "unknown";
}

std::pair<double, double> DampedField::real_eigenvalues(double u) const {
  const double disc = damping * damping + 4.0 * force_du(u);
  if (disc < 0.0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan};
  }
  const double root = std::sqrt(disc);
  return {0.5 * (damping + root), 0.5 * (damping - root)};
}

OrbitResult connect_saddles(const DampedField& field, double from, double to, double middle,
                            const ShootOptions& opts) {
  // A saddle-node (zero eigenvalue, as at the a = 1/2 end of the kinetic locus)
  // still has a hyperbolic direction to shoot along.
  for (double u : {from, to}) {
    if (!(field.force_du(u) > -1e-10)) {
      std::ostringstream msg;
      msg << "equilibrium u = " << u << " is not a saddle";
      throw Error(ErrorKind::NotSaddle, msg.str());
    }
  }
  const double dir = sign_of(to - from);
  const double section = to + opts.section_fraction * (middle - to);

  auto outside_box = [&](const Vec2& y) {
    return !std::isfinite(y[0]) || !std::isfinite(y[1]) || std::abs(y[0]) > opts.box_u ||
           std::abs(y[1]) > opts.box_v;
  };

  // Forward along the unstable manifold of `from`.
  Leg fwd;
  {
    const Vec2 e = unit_eigenvector(field.real_eigenvalues(from).first, dir);
    const Vec2 y0{from + opts.seed_offset * e[0], opts.seed_offset * e[1]};
    fwd.samples.push_back({0.0, y0[0], y0[1]});
    bool crossed = false;
    auto observer = [&](const ode::StepView& s) {
      fwd.samples.push_back({s.t1, s.y1[0], s.y1[1]});
      fwd.min_target_distance =
          std::min(fwd.min_target_distance, std::hypot(s.y1[0] - to, s.y1[1]));
      if (outside_box(s.y1)) {
        fwd.exit = Exit::Box;
        return true;
      }
      if (!crossed && (s.y1[0] - section) * dir >= 0.0) {
        crossed = true;
        fwd.section_time = locate_crossing(s, section);
        fwd.section_v = s.interpolate(fwd.section_time)[1];
      }
      if (s.y1[1] * dir <= 0.0) {
        fwd.exit = Exit::Turned;
        return true;
      }
      if ((s.y1[0] - to) * dir >= 0.0) {
        fwd.exit = Exit::PassedTarget;
        return true;
      }
      return false;
    };
    ode::integrate(field, y0, opts.xi_max, opts.tol, observer);
    if (fwd.exit == Exit::None) fwd.exit = Exit::Exhausted;
    if (!crossed) fwd.section_time = -1.0;
  }

  // Backward along the stable manifold of `to`.
  Leg bwd;
  {
    const Vec2 e = unit_eigenvector(field.real_eigenvalues(to).second, -dir);
    const Vec2 y0{to + opts.seed_offset * e[0], opts.seed_offset * e[1]};
    bwd.samples.push_back({0.0, y0[0], y0[1]});
    auto reversed = [&](const Vec2& y) {
      const Vec2 f = field(y);
      return Vec2{-f[0], -f[1]};
    };
    auto observer = [&](const ode::StepView& s) {
      bwd.samples.push_back({s.t1, s.y1[0], s.y1[1]});
      if (outside_box(s.y1)) {
        bwd.exit = Exit::Box;
        return true;
      }
      if ((s.y1[0] - section) * dir <= 0.0) {
        bwd.exit = Exit::Section;
        bwd.section_time = locate_crossing(s, section);
        bwd.section_v = s.interpolate(bwd.section_time)[1];
        return true;
      }
      if (s.y1[1] * dir <= 0.0) {
        bwd.exit = Exit::Turned;
        return true;
      }
      return false;
    };
    ode::integrate(reversed, y0, opts.xi_max, opts.tol, observer);
    if (bwd.exit == Exit::None) bwd.exit = Exit::Exhausted;
  }

  OrbitResult result;
  const bool both_on_section = fwd.section_time >= 0.0 && bwd.exit == Exit::Section;
  if (both_on_section) {
    const double gap = fwd.section_v - bwd.section_v;
    result.terminal_distance = std::abs(gap);
    if (result.terminal_distance < opts.connect_tol) {
      result.verdict = Verdict::Connects;
    } else {
      result.verdict = gap > 0.0 ? Verdict::MissesAbove : Verdict::MissesBelow;
    }
  } else {
    result.terminal_distance = fwd.min_target_distance;
    switch (fwd.exit) {
      case Exit::Box:
      case Exit::Exhausted:
      case Exit::None:
      case Exit::Section:
        result.verdict = Verdict::Diverges;
        break;
      case Exit::Turned:
        result.verdict = dir < 0.0 ? Verdict::MissesAbove : Verdict::MissesBelow;
        break;
      case Exit::PassedTarget:
        result.verdict = dir < 0.0 ? Verdict::MissesBelow : Verdict::MissesAbove;
        break;
    }
  }

  if (result.verdict == Verdict::Connects) {
    for (const auto& p : fwd.samples) {
      if (p.xi >= fwd.section_time) break;
      result.trajectory.push_back(p);
    }
    result.trajectory.push_back({fwd.section_time, section, fwd.section_v});
    for (auto it = bwd.samples.rbegin(); it != bwd.samples.rend(); ++it) {
      if (it->xi >= bwd.section_time) continue;
      result.trajectory.push_back(
          {fwd.section_time + (bwd.section_time - it->xi), it->u, it->v});
    }
  } else {
    result.trajectory = std::move(fwd.samples);
  }
  return result;
}

}  // namespace ucshock::shooting
