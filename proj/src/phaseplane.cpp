#include "ucshock/phaseplane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ucshock/error.hpp"
#include "ucshock/model.hpp"

namespace ucshock::phaseplane {

namespace {

constexpr double kSonicTol = 1e-10;

void require_positive_speed(double s) {
  if (!(s > 0.0)) {
    std::ostringstream msg;
    msg << "traveling-wave rescaling needs s > 0 (got s = " << s
        << "); for s = 0 the equation degenerates to first order";
    throw Error(ErrorKind::DegenerateSpeed, msg.str());
  }
}

// Potential with V' = c and V(u_minus) = 0.
double potential(const TWProblem& prob, double u) {
  const double um = prob.u_minus;
  const double shift = um * um * um - um;
  auto antiderivative = [&](double x) {
    const double d = x - um;
    return 0.25 * x * x * x * x - 0.5 * x * x - shift * x + 0.5 * prob.s * d * d;
  };
  return antiderivative(u) - antiderivative(um);
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

bool strictly_between(double x, double a, double b) {
  return std::min(a, b) < x && x < std::max(a, b);
}

OrbitResult lax_impl(double u_minus, double u_plus, double gamma, const ShootOptions& opts,
                     bool stop_when_trapped) {
  if (!(gamma > 0.0)) throw Error(ErrorKind::Domain, "Lax profiles need gamma > 0");
  const model::ShockPair pair = model::classify_shock(u_minus, u_plus);
  const double s = pair.speed;
  const bool sonic_left = std::abs(s - model::char_speed(u_minus)) <= kSonicTol;
  const bool sonic_right = std::abs(s - model::char_speed(u_plus)) <= kSonicTol;
  if (pair.kind == model::ShockKind::Characteristic ||
      (pair.kind != model::ShockKind::Lax && !sonic_left && !sonic_right)) {
    std::ostringstream msg;
    msg << "(" << u_minus << ", " << u_plus << ") is not a Lax shock";
    throw Error(ErrorKind::Domain, msg.str());
  }
  if (sonic_right && !sonic_left) {
    // Degenerate target; decide on the neighbouring strict Lax shock.
    const double delta = 1e-6 * std::max(1.0, std::abs(u_plus));
    for (double shifted : {u_plus - delta, u_plus + delta}) {
      if (model::classify_shock(u_minus, shifted).kind == model::ShockKind::Lax) {
        return lax_impl(u_minus, shifted, gamma, opts, stop_when_trapped);
      }
    }
    throw Error(ErrorKind::Domain, "sonic shock has no strict Lax neighbour");
  }

  OrbitResult result;
  if (std::abs(s) < 1e-12) {
    // First-order profile equation; u_minus is the middle equilibrium so no
    // root of the cubic separates the two states.
    result.verdict = Verdict::Connects;
    return result;
  }

  const double u_other = -(u_minus + u_plus);
  auto outside_box = [&](const Vec2& y) {
    return !std::isfinite(y[0]) || !std::isfinite(y[1]) || std::abs(y[0]) > opts.box_u ||
           std::abs(y[1]) > opts.box_v;
  };
  const TWProblem prob = TWProblem::make(gamma, s, u_minus);
  const double margin_scale = 1e-12;

  if (s > 0.0) {
    const shooting::DampedField field = damped_field(prob);
    if (!field.is_saddle(u_plus)) throw Error(ErrorKind::NotSaddle, "Lax target is not a saddle");
    const double dir = sign_of(u_minus - u_plus);  // backward-time direction
    const double stable = field.real_eigenvalues(u_plus).second;
    const double norm = std::hypot(1.0, stable);
    const Vec2 y0{u_plus + opts.seed_offset * dir / norm,
                  opts.seed_offset * dir * stable / norm};
    const double e_crit = std::min(-potential(prob, u_plus), -potential(prob, u_other));
    const double margin = margin_scale * (1.0 + std::abs(e_crit));

    std::vector<OrbitSample> samples{{0.0, y0[0], y0[1]}};
    bool trapped = false;
    bool decided = false;
    double distance = std::hypot(y0[0] - u_minus, y0[1]);
    auto reversed = [&](const Vec2& y) {
      const Vec2 f = field(y);
      return Vec2{-f[0], -f[1]};
    };
    auto observer = [&](const ode::StepView& st) {
      samples.push_back({st.t1, st.y1[0], st.y1[1]});
      distance = std::hypot(st.y1[0] - u_minus, st.y1[1]);
      if (outside_box(st.y1)) {
        result.verdict = Verdict::Diverges;
        decided = true;
        return true;
      }
      // Escape past the other saddle (for a sonic shock, past the double root).
      const double barrier = sonic_left ? u_minus : u_other;
      if ((st.y1[0] - barrier) * dir > 0.0 && st.y1[1] * dir < 0.0) {
        result.verdict = dir < 0.0 ? Verdict::MissesAbove : Verdict::MissesBelow;
        decided = true;
        return true;
      }
      if (distance < opts.connect_tol) {
        result.verdict = Verdict::Connects;
        decided = true;
        return true;
      }
      if (!sonic_left && !trapped && strictly_between(st.y1[0], u_plus, u_other)) {
        const double energy = 0.5 * st.y1[1] * st.y1[1] - potential(prob, st.y1[0]);
        if (energy < e_crit - margin) {
          trapped = true;
          if (stop_when_trapped) {
            result.verdict = Verdict::Connects;
            decided = true;
            return true;
          }
        }
      }
      return false;
    };
    const double xi_max = sonic_left ? std::min(opts.xi_max, 1000.0) : opts.xi_max;
    ode::integrate(reversed, y0, xi_max, opts.tol, observer);
    if (!decided) result.verdict = (trapped || sonic_left) ? Verdict::Connects : Verdict::Diverges;
    result.terminal_distance = distance;
    result.trajectory.reserve(samples.size());
    for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
      result.trajectory.push_back({-it->xi, it->u, it->v});
    }
    return result;
  }

  // s < 0: with xi = (x - s t) / sqrt(mu |s|) the field is v' = -(g/sqrt|s|) v - c(u);
  // the left (middle) state is a saddle and the right state a stable node.
  const double damping = gamma / std::sqrt(-s);
  shooting::DampedField field;
  field.damping = -damping;
  field.force = [prob](double u) { return -prob.cubic(u); };
  field.force_du = [prob](double u) { return -prob.cubic_du(u); };
  const double dir = sign_of(u_plus - u_minus);
  Vec2 y0;
  if (sonic_left) {
    // Saddle-node: leave along the centre manifold v ~ -c(u) / damping, whose
    // drift is only quadratic, so the seed sits further out.
    const double u0 = u_minus + 1e-4 * dir;
    y0 = {u0, -prob.cubic(u0) / damping};
  } else {
    if (!field.is_saddle(u_minus)) throw Error(ErrorKind::NotSaddle, "Lax source is not a saddle");
    const double unstable = field.real_eigenvalues(u_minus).first;
    const double norm = std::hypot(1.0, unstable);
    y0 = {u_minus + opts.seed_offset * dir / norm, opts.seed_offset * dir * unstable / norm};
  }
  std::vector<OrbitSample> samples{{0.0, y0[0], y0[1]}};
  bool trapped = false;
  bool decided = false;
  double distance = std::hypot(y0[0] - u_plus, y0[1]);
  auto observer = [&](const ode::StepView& st) {
    samples.push_back({st.t1, st.y1[0], st.y1[1]});
    distance = std::hypot(st.y1[0] - u_plus, st.y1[1]);
    if (outside_box(st.y1)) {
      result.verdict = Verdict::Diverges;
      decided = true;
      return true;
    }
    if (distance < opts.connect_tol) {
      result.verdict = Verdict::Connects;
      decided = true;
      return true;
    }
    if (!trapped && (st.y1[0] - u_minus) * dir > 0.0) {
      // Energy v^2/2 + V(u) decreases from V(u_minus) = 0.
      const double energy = 0.5 * st.y1[1] * st.y1[1] + potential(prob, st.y1[0]);
      if (energy < -margin_scale) {
        trapped = true;
        if (stop_when_trapped) {
          result.verdict = Verdict::Connects;
          decided = true;
          return true;
        }
      }
    }
    return false;
  };
  ode::integrate(field, y0, opts.xi_max, opts.tol, observer);
  if (!decided) result.verdict = trapped ? Verdict::Connects : Verdict::Diverges;
  result.terminal_distance = distance;
  result.trajectory = std::move(samples);
  return result;
}

}  // namespace

TWProblem TWProblem::make(double gamma, double s, double u_minus) {
  TWProblem prob;
  prob.gamma = gamma;
  prob.s = s;
  prob.u_minus = u_minus;
  prob.equilibria = phaseplane::equilibria(u_minus, s);
  return prob;
}

TWProblem TWProblem::for_shock(double u_minus, double u_plus, double gamma) {
  return make(gamma, model::rh_speed(u_minus, u_plus), u_minus);
}

double TWProblem::cubic(double u) const {
  return (u - u_minus) * (u * u + u * u_minus + u_minus * u_minus - 1.0 + s);
}

double TWProblem::cubic_du(double u) const { return 3.0 * u * u - 1.0 + s; }

std::vector<double> equilibria(double u_minus, double s) {
  std::vector<double> roots{u_minus};
  double disc = 4.0 * (1.0 - s) - 3.0 * u_minus * u_minus;
  if (disc > -1e-14) {
    const double root = std::sqrt(std::max(disc, 0.0));
    roots.push_back(0.5 * (-u_minus + root));
    roots.push_back(0.5 * (-u_minus - root));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
              roots.end());
  return roots;
}

Vec2 vector_field(double u, double v, const TWProblem& prob) {
  require_positive_speed(prob.s);
  return {v, prob.gamma / std::sqrt(prob.s) * v + prob.cubic(u)};
}

Eigenpair eigenvalues(double u, const TWProblem& prob) {
  require_positive_speed(prob.s);
  const double trace = prob.gamma / std::sqrt(prob.s);
  const std::complex<double> root =
      std::sqrt(std::complex<double>(trace * trace + 4.0 * (prob.s - 1.0 + 3.0 * u * u), 0.0));
  return {0.5 * (trace + root), 0.5 * (trace - root)};
}

shooting::DampedField damped_field(const TWProblem& prob) {
  require_positive_speed(prob.s);
  shooting::DampedField field;
  field.damping = prob.gamma / std::sqrt(prob.s);
  field.force = [prob](double u) { return prob.cubic(u); };
  field.force_du = [prob](double u) { return prob.cubic_du(u); };
  return field;
}

OrbitResult shoot_unstable(const TWProblem& prob, double from, double toward,
                           const ShootOptions& opts) {
  const shooting::DampedField field = damped_field(prob);
  double middle = 0.5 * (from + toward);
  for (double e : prob.equilibria) {
    if (strictly_between(e, from, toward)) middle = e;
  }
  return shooting::connect_saddles(field, from, toward, middle, opts);
}

OrbitResult shoot_shock(double u_minus, double u_plus, double gamma, const ShootOptions& opts) {
  const TWProblem prob = TWProblem::for_shock(u_minus, u_plus, gamma);
  return shoot_unstable(prob, u_minus, u_plus, opts);
}

OrbitResult lax_profile(double u_minus, double u_plus, double gamma, const ShootOptions& opts) {
  return lax_impl(u_minus, u_plus, gamma, opts, false);
}

bool lax_admissible(double u_minus, double u_plus, double gamma) {
  return lax_impl(u_minus, u_plus, gamma, ShootOptions{}, true).verdict == Verdict::Connects;
}

double parabola_residual(const OrbitResult& orbit, double u_minus, double u_plus) {
  const double k = (u_minus > u_plus ? 1.0 : -1.0) / std::sqrt(2.0);
  double worst = 0.0;
  for (const auto& p : orbit.trajectory) {
    worst = std::max(worst, std::abs(p.v - k * (p.u - u_minus) * (p.u - u_plus)));
  }
  return worst;
}

}  // namespace ucshock::phaseplane
