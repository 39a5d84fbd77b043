#pragma once

// Traveling waves u(x - s t) of the regularized scalar law, written in the
// rescaled variable xi = (x - s t) / sqrt(mu s):
//
//   u' = v,   v' = (gamma / sqrt(s)) v + c(u),
//   c(u) = u^3 - u - (u_-^3 - u_-) + s (u - u_-).

#include <complex>
#include <vector>

#include "ucshock/shooting.hpp"

namespace ucshock::phaseplane {

using shooting::OrbitResult;
using shooting::OrbitSample;
using shooting::ShootOptions;
using shooting::Verdict;
using ode::Vec2;

struct TWProblem {
  double gamma = 0.0;
  double s = 0.0;
  double u_minus = 0.0;
  std::vector<double> equilibria;  // ascending

  static TWProblem make(double gamma, double s, double u_minus);
  // Speed from the Rankine-Hugoniot condition between the two states.
  static TWProblem for_shock(double u_minus, double u_plus, double gamma);

  double cubic(double u) const;
  double cubic_du(double u) const;
  bool has_three_equilibria() const { return equilibria.size() == 3; }
};

// u_minus together with the real roots of u^2 + u_- u + u_-^2 = 1 - s, ascending,
// repeated roots listed once.
std::vector<double> equilibria(double u_minus, double s);

// Throws Error(DegenerateSpeed) for s <= 0.
Vec2 vector_field(double u, double v, const TWProblem& prob);

struct Eigenpair {
  std::complex<double> plus;
  std::complex<double> minus;
};

// Throws Error(DegenerateSpeed) for s <= 0.
Eigenpair eigenvalues(double u, const TWProblem& prob);

// Field as a DampedField for the shooting engine (s > 0).
shooting::DampedField damped_field(const TWProblem& prob);

// Heteroclinic shot from the saddle `from` toward the saddle `toward`.
OrbitResult shoot_unstable(const TWProblem& prob, double from, double toward,
                           const ShootOptions& opts = {});

// Saddle-saddle check for a shock pair (u_minus, u_plus), speed from RH.
OrbitResult shoot_shock(double u_minus, double u_plus, double gamma,
                        const ShootOptions& opts = {});

// Profile of a Lax shock: the stable manifold of the right saddle is followed
// backward until it is captured by the left node (Connects) or escapes past
// the third equilibrium.  Negative speeds use the mirrored field, for which
// the left state is the saddle.  Throws Error(Domain) unless the pair is a
// Lax shock (sonic contacts allowed).
OrbitResult lax_profile(double u_minus, double u_plus, double gamma,
                        const ShootOptions& opts = {});

// Same decision as lax_profile, stopping as soon as capture is certified by
// the energy v^2/2 - V(u) dropping below both saddle levels.
bool lax_admissible(double u_minus, double u_plus, double gamma);

// max |v - k (u - u_-)(u - u_+)|, k = +-1/sqrt(2) with the sign of u_- - u_+.
double parabola_residual(const OrbitResult& orbit, double u_minus, double u_plus);

}  // namespace ucshock::phaseplane
