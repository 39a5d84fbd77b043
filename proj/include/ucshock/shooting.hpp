#pragma once

// Shooting along invariant manifolds of planar fields u' = v, v' = d v + g(u).
// Both the scalar traveling-wave system and the p-system reduce to this form.

#include <functional>
#include <string_view>
#include <vector>

#include "ucshock/ode.hpp"

namespace ucshock::shooting {

using ode::Vec2;

struct DampedField {
  double damping = 0.0;                    // d, the constant trace of the Jacobian
  std::function<double(double)> force;     // g(u)
  std::function<double(double)> force_du;  // g'(u)

  Vec2 operator()(const Vec2& y) const { return {y[1], damping * y[1] + force(y[0])}; }
  // Eigenvalue pair (larger first) of [[0, 1], [g'(u), d]]; NaN when complex.
  std::pair<double, double> real_eigenvalues(double u) const;
  bool is_saddle(double u) const { return force_du(u) > 0.0; }
};

enum class Verdict { Connects, MissesAbove, MissesBelow, Diverges };

std::string_view to_string(Verdict verdict);

struct OrbitSample {
  double xi, u, v;
};

struct OrbitResult {
  std::vector<OrbitSample> trajectory;
  Verdict verdict = Verdict::Diverges;
  // Connections between saddles: splitting gap |v_unstable - v_stable| on the
  // matching section.  Node captures: distance to the node at the end.
  double terminal_distance = 0.0;
};

struct ShootOptions {
  ode::Tolerances tol{};
  double seed_offset = 1e-8;
  double connect_tol = 1e-6;
  double box_u = 3.0;
  double box_v = 10.0;
  double xi_max = 5000.0;
  // Relative position of the matching section between target (0) and the
  // middle equilibrium (1).
  double section_fraction = 0.5;
};

// Unstable manifold of the saddle `from` against the stable manifold of the
// saddle `to`; `middle` is the equilibrium between them.  "Above" means the
// unstable manifold meets the section at larger v than the stable one.
OrbitResult connect_saddles(const DampedField& field, double from, double to, double middle,
                            const ShootOptions& opts);

}  // namespace ucshock::shooting
