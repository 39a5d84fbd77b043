#include "ucshock/psystem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ucshock/error.hpp"

namespace ucshock::psystem {

namespace {

constexpr double kThresholdB = -0.5;

void require_positive_A(double A) {
  if (!(A > 0.0) || !std::isfinite(A)) {
    std::ostringstream msg;
    msg << "A must be positive (got " << A << "); use psys_symmetry for A < 0";
    throw Error(ErrorKind::Domain, msg.str());
  }
}

double u_minus_of_b(double b, double A) {
  return 2.0 * std::sqrt(b * b + b + 1.0) / (9.0 * A * (1.0 + b) * (1.0 + b));
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

PSystemLocusPoint psys_pair(double u_minus, double u_plus, double A, double v_minus) {
  if (A == 0.0 || !std::isfinite(A)) throw Error(ErrorKind::Domain, "A must be finite and nonzero");
  PSystemLocusPoint p;
  p.A = A;
  p.u_minus = u_minus;
  p.u_plus = u_plus;
  p.b = u_minus != 0.0 ? u_plus / u_minus : std::numeric_limits<double>::quiet_NaN();
  p.u_zero = -(u_minus + u_plus);
  p.s = -sign_of(A) * std::sqrt(u_plus * u_plus + u_plus * u_minus + u_minus * u_minus);
  p.k = 1.0 / std::sqrt(-2.0 * A * p.s);
  p.v_minus = v_minus;
  p.v_plus = v_minus - p.s * (u_plus - u_minus);
  return p;
}

PSystemLocusPoint psys_locus(double b, double A, double v_minus) {
  require_positive_A(A);
  if (!(b > -1.0 && b <= kThresholdB)) {
    std::ostringstream msg;
    msg << "b = " << b << " outside (-1, -1/2]: b <= -1 is excluded by the energy inequality, "
        << "b > -1/2 leaves fewer than three equilibria";
    throw Error(ErrorKind::Domain, msg.str());
  }
  const double um = u_minus_of_b(b, A);
  PSystemLocusPoint p = psys_pair(um, b * um, A, v_minus);
  p.b = b;
  p.at_threshold = b == kThresholdB;
  return p;
}

double psys_threshold(double A) {
  require_positive_A(A);
  return 4.0 * std::sqrt(3.0) / (9.0 * A);
}

double psys_kinetic_u_plus(double u_minus, double A) {
  const double threshold = psys_threshold(A);
  if (!(u_minus > threshold) || !std::isfinite(u_minus)) {
    std::ostringstream msg;
    msg << "u_minus = " << u_minus << " must exceed 4 sqrt(3)/(9A) = " << threshold;
    throw Error(ErrorKind::Domain, msg.str());
  }
  // u_-(b) decreases from +inf at b = -1 to the threshold at b = -1/2.
  double lo = -1.0;
  double hi = kThresholdB;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= -1.0) break;
    if (u_minus_of_b(mid, A) > u_minus) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi) * u_minus;
}

shooting::DampedField psys_field(const PSystemLocusPoint& point) {
  const double s = point.s;
  const double A = point.A;
  const double um = point.u_minus;
  shooting::DampedField field;
  field.damping = 1.0 / A;
  field.force = [=](double u) {
    return (s * s * (u - um) - (u * u * u - um * um * um)) / (s * A);
  };
  field.force_du = [=](double u) { return (s * s - 3.0 * u * u) / (s * A); };
  return field;
}

PSystemOrbit psys_shoot(const PSystemLocusPoint& point, const shooting::ShootOptions& opts) {
  if (!(point.s * point.A < 0.0)) {
    std::ostringstream msg;
    msg << "no saddles: s A = " << point.s * point.A << " must be negative";
    throw Error(ErrorKind::NotSaddle, msg.str());
  }
  // u = L u~, xi = xi~ / L, w = L^2 w~ maps the profile equation onto itself
  // with A -> A L, so every point is shot at |u_-| = 1 and mapped back.
  const double L = std::abs(point.u_minus);
  if (!(L > 0.0) || !std::isfinite(L)) throw Error(ErrorKind::Domain, "u_minus must be nonzero");
  const PSystemLocusPoint unit = psys_pair(point.u_minus / L, point.u_plus / L, point.A * L);
  const shooting::DampedField field = psys_field(unit);

  PSystemOrbit out;
  out.orbit = shooting::connect_saddles(field, unit.u_minus, unit.u_plus, unit.u_zero, opts);
  if (out.orbit.verdict != shooting::Verdict::Connects) {
    shooting::OrbitResult back =
        shooting::connect_saddles(field, unit.u_plus, unit.u_minus, unit.u_zero, opts);
    if (back.verdict == shooting::Verdict::Connects) {
      out.orbit = std::move(back);
      out.reversed = true;
    }
  }
  out.parabola_residual = out.orbit.verdict == shooting::Verdict::Connects
                              ? psys_parabola_residual(out.orbit, unit)
                              : std::numeric_limits<double>::quiet_NaN();
  for (auto& p : out.orbit.trajectory) {
    p.xi /= L;
    p.u *= L;
    p.v *= L * L;
  }
  return out;
}

double psys_parabola_residual(const shooting::OrbitResult& orbit, const PSystemLocusPoint& point) {
  // Strictly between the roots (u - u_-)(u - u_+) < 0, so k and w have
  // opposite signs along the orbit.
  double w_sum = 0.0;
  for (const auto& p : orbit.trajectory) w_sum += p.v;
  const double k = -sign_of(w_sum) * std::abs(point.k);
  double worst = 0.0;
  for (const auto& p : orbit.trajectory) {
    worst = std::max(worst, std::abs(p.v - k * (p.u - point.u_minus) * (p.u - point.u_plus)));
  }
  return worst;
}

PSystemLocusPoint psys_symmetry(const PSystemLocusPoint& point, Symmetry which) {
  PSystemLocusPoint q = point;
  q.k = -point.k;
  q.v_minus = -point.v_minus;
  q.v_plus = -point.v_plus;
  if (which == Symmetry::OddMap) {
    q.u_minus = -point.u_minus;
    q.u_plus = -point.u_plus;
    q.u_zero = -point.u_zero;
  } else {
    q.A = -point.A;
    q.s = -point.s;
  }
  return q;
}

double LocusCheck::worst() const {
  return std::max({speed_residual, sum_residual, k_residual, sk_residual, formula_residual,
                   rh_residual});
}

LocusCheck psys_check(const PSystemLocusPoint& p) {
  LocusCheck c;
  const double um = p.u_minus;
  const double up = p.u_plus;
  c.speed_residual = std::abs(p.s * p.s - (up * up + up * um + um * um));
  c.sum_residual = std::abs(p.u_zero + up + um);
  c.k_residual = std::abs(p.k * p.k + 1.0 / (2.0 * p.A * p.s));
  c.sk_residual = std::abs(std::abs(p.s * p.k) - 1.5 * std::abs(um + up));
  c.formula_residual = std::abs(std::abs(um) - u_minus_of_b(p.b, std::abs(p.A)));
  c.rh_residual = std::abs(p.v_plus - p.v_minus + p.s * (up - um));
  c.saddle_condition = p.s * p.A < 0.0 && p.s * p.s < 3.0 * um * um && p.s * p.s < 3.0 * up * up;
  c.ratio_in_range = p.b > -1.0 && p.b <= kThresholdB;
  return c;
}

std::vector<PSystemLocusPoint> psys_locus_table(const std::vector<double>& b_values,
                                                const std::vector<double>& A_values) {
  // Validate up front; exceptions must not escape the parallel region.
  for (double A : A_values) require_positive_A(A);
  for (double b : b_values) psys_locus(b, 1.0);
  const long nb = static_cast<long>(b_values.size());
  const long n = nb * static_cast<long>(A_values.size());
  std::vector<PSystemLocusPoint> table(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (long idx = 0; idx < n; ++idx) {
    table[static_cast<std::size_t>(idx)] =
        psys_locus(b_values[static_cast<std::size_t>(idx % nb)],
                   A_values[static_cast<std::size_t>(idx / nb)]);
  }
  return table;
}

}  // namespace ucshock::psystem
