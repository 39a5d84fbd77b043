#include "ucshock/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ucshock/error.hpp"
#include "ucshock/model.hpp"

namespace ucshock::kinetics {

namespace {

constexpr double kEndpointTol = 1e-12;

void require_locus(double gamma) {
  if (gamma >= gamma_max()) {
    std::ostringstream msg;
    msg << "no undercompressive locus for gamma ≥ sqrt(3/8) (gamma = " << gamma << ")";
    throw Error(ErrorKind::NoLocus, msg.str());
  }
  if (!(gamma > 0.0)) {
    std::ostringstream msg;
    msg << "no undercompressive locus for gamma = " << gamma << " (needs gamma > 0)";
    throw Error(ErrorKind::NoLocus, msg.str());
  }
}

double branch_sign(Branch branch) { return branch == Branch::Plus ? 1.0 : -1.0; }

// u_plus on a branch; D is clamped at zero to absorb rounding at a_tilde.
double branch_u_plus(double a, double gamma, Branch branch) {
  const double d = std::max(discriminant(a, gamma), 0.0);
  return -std::sqrt((1.0 + branch_sign(branch) * std::sqrt(d)) / (2.0 * (1.0 - a + a * a)));
}

template <class F>
double bisect(F&& g, double lo, double hi, double tol) {
  double g_lo = g(lo);
  const double g_hi = g(hi);
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  // Roots at an endpoint can round to the wrong sign; take the closer end.
  if ((g_lo < 0.0) == (g_hi < 0.0)) return std::abs(g_lo) <= std::abs(g_hi) ? lo : hi;
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = g(mid);
    if (g_mid == 0.0) return mid;
    if ((g_mid < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double gamma_max() { return std::sqrt(3.0 / 8.0); }

std::string_view to_string(Branch branch) { return branch == Branch::Plus ? "plus" : "minus"; }

double discriminant(double a, double gamma) {
  if (std::abs(a - 1.0) < 1e-15) throw Error(ErrorKind::Pole, "D(a, gamma) has a pole at a = 1");
  const double am1 = a - 1.0;
  return 1.0 - (8.0 / 9.0) * gamma * gamma * (1.0 + a / (am1 * am1));
}

double a_tilde(double gamma) {
  require_locus(gamma);
  const double k = 8.0 * gamma * gamma / 9.0;
  return (k - 2.0 + std::sqrt(k * (4.0 - 3.0 * k))) / (2.0 * (k - 1.0));
}

KineticPoint locus_point(double a, double gamma, Branch branch) {
  require_locus(gamma);
  const double at = a_tilde(gamma);
  if (a < 0.5 - kEndpointTol || a > at + kEndpointTol) {
    std::ostringstream msg;
    msg << "a = " << a << " outside [1/2, " << at << "]";
    throw Error(ErrorKind::Domain, msg.str());
  }
  a = std::clamp(a, 0.5, at);
  if (discriminant(a, gamma) < -1e-12) throw Error(ErrorKind::NoLocus, "D(a, gamma) < 0");

  KineticPoint p;
  p.a = a;
  p.branch = branch;
  p.gamma = gamma;
  p.u_plus = branch_u_plus(a, gamma, branch);
  p.u_minus = -a * p.u_plus;
  p.u_zero = -(p.u_minus + p.u_plus);
  p.s = model::rh_speed(p.u_minus, p.u_plus);
  p.at_half = a == 0.5;
  p.at_tilde = a == at;
  return p;
}

UPlusBounds u_plus_bounds(double gamma) {
  require_locus(gamma);
  const double root = std::sqrt(1.0 - 8.0 * gamma * gamma / 3.0);
  return {-std::sqrt(2.0 / 3.0 * (1.0 + root)), -std::sqrt(2.0 / 3.0 * (1.0 - root))};
}

KineticPoint kinetic_point_for_u_plus(double u_plus, double gamma) {
  const UPlusBounds bounds = u_plus_bounds(gamma);
  if (u_plus < bounds.lower - kEndpointTol || u_plus > bounds.upper + kEndpointTol) {
    std::ostringstream msg;
    msg << "u_plus = " << u_plus << " has no undercompressive partner (admissible range ["
        << bounds.lower << ", " << bounds.upper << "])";
    throw Error(ErrorKind::NoConnection, msg.str());
  }
  const double at = a_tilde(gamma);
  const double merge = branch_u_plus(at, gamma, Branch::Plus);
  // u_plus^(+) increases from bounds.lower to merge, u_plus^(-) decreases from
  // bounds.upper to merge.
  const Branch branch = u_plus <= merge ? Branch::Plus : Branch::Minus;
  const double a = bisect(
      [&](double x) { return branch_u_plus(x, gamma, branch) - u_plus; }, 0.5, at, 1e-14);
  KineticPoint p = locus_point(a, gamma, branch);
  // Report the requested right state exactly; a carries the bisection error.
  p.u_plus = u_plus;
  p.u_minus = -a * u_plus;
  p.u_zero = -(p.u_minus + p.u_plus);
  p.s = model::rh_speed(p.u_minus, p.u_plus);
  return p;
}

double kinetic_u_minus(double u_plus, double gamma) {
  return kinetic_point_for_u_plus(u_plus, gamma).u_minus;
}

std::vector<double> kinetic_u_plus_candidates(double u_minus, double gamma) {
  std::vector<double> found;
  if (!(gamma > 0.0) || !(gamma < gamma_max()) || !(u_minus > 0.0)) return found;
  const double at = a_tilde(gamma);
  constexpr int kSamples = 4000;
  for (Branch branch : {Branch::Plus, Branch::Minus}) {
    auto excess = [&](double a) { return -a * branch_u_plus(a, gamma, branch) - u_minus; };
    double a_prev = 0.5;
    double g_prev = excess(a_prev);
    if (g_prev == 0.0) found.push_back(branch_u_plus(a_prev, gamma, branch));
    for (int i = 1; i <= kSamples; ++i) {
      const double a = 0.5 + (at - 0.5) * i / kSamples;
      const double g = excess(a);
      if (g == 0.0) {
        found.push_back(branch_u_plus(a, gamma, branch));
      } else if ((g < 0.0) != (g_prev < 0.0) && g_prev != 0.0) {
        const double root = bisect(excess, a_prev, a, 1e-15);
        found.push_back(branch_u_plus(root, gamma, branch));
      }
      a_prev = a;
      g_prev = g;
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end(),
                          [](double x, double y) { return std::abs(x - y) < 1e-9; }),
              found.end());
  return found;
}

std::pair<double, double> u_minus_range(double gamma) {
  const double at = a_tilde(gamma);
  double lo = 1e300;
  double hi = -1e300;
  constexpr int kSamples = 4000;
  for (Branch branch : {Branch::Plus, Branch::Minus}) {
    for (int i = 0; i <= kSamples; ++i) {
      const double a = 0.5 + (at - 0.5) * i / kSamples;
      const double um = -a * branch_u_plus(a, gamma, branch);
      lo = std::min(lo, um);
      hi = std::max(hi, um);
    }
  }
  return {lo, hi};
}

double entropy_integral(double u_minus, double u_plus) {
  const double s = model::rh_speed(u_minus, u_plus);
  const double shift = u_minus * u_minus * u_minus - u_minus;
  auto antiderivative = [&](double u) {
    const double d = u - u_minus;
    return 0.25 * u * u * u * u - 0.5 * u * u - shift * u + 0.5 * s * d * d;
  };
  return antiderivative(u_minus) - antiderivative(u_plus);
}

double locus_residual(double u_minus, double u_plus, double gamma) {
  const double q = 1.0 - (u_plus * u_plus + u_minus * u_plus + u_minus * u_minus);
  return std::sqrt(std::max(q, 0.0)) * (u_plus + u_minus) + std::sqrt(2.0) / 3.0 * gamma;
}

double zero_dissipation_partner(double u_minus) { return -u_minus; }

std::vector<KineticPoint> sample_locus(double gamma, int n_per_branch) {
  return sample_locus(gamma, n_per_branch, 0.5, a_tilde(gamma));
}

std::vector<KineticPoint> sample_locus(double gamma, int n_per_branch, double a_lo,
                                       double a_hi) {
  if (n_per_branch < 1) throw Error(ErrorKind::Domain, "need at least one sample per branch");
  std::vector<KineticPoint> points(2 * static_cast<std::size_t>(n_per_branch));
  const double step = n_per_branch > 1 ? (a_hi - a_lo) / (n_per_branch - 1) : 0.0;
  // Validate serially so an exception never escapes the parallel region.
  locus_point(a_lo, gamma, Branch::Plus);
  locus_point(a_hi, gamma, Branch::Plus);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < 2 * n_per_branch; ++i) {
    const Branch branch = i < n_per_branch ? Branch::Plus : Branch::Minus;
    const int j = i % n_per_branch;
    const double a = j == n_per_branch - 1 ? a_hi : a_lo + step * j;
    points[static_cast<std::size_t>(i)] = locus_point(a, gamma, branch);
  }
  return points;
}

}  // namespace ucshock::kinetics
