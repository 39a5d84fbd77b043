#pragma once

// Traveling waves of the p-system u_t - v_x = 0, v_t - (u^3)_x = v_xx - A u_xxt
// (unit small parameter).  With u' = w the profile equation reads
//
//   s A w' = s w + s^2 (u - u_-) - (u^3 - u_-^3),
//
// and the undercompressive waves form the one-parameter family u_+ = b u_-,
// -1 < b < -1/2.  The fixed convention is A > 0, u_- > 0, s < 0; the other
// sign combinations come from psys_symmetry.

#include <vector>

#include "ucshock/shooting.hpp"

namespace ucshock::psystem {

struct PSystemLocusPoint {
  double b = -0.75;
  double A = 1.0;
  double u_minus = 0.0;
  double u_plus = 0.0;
  double u_zero = 0.0;
  double s = 0.0;
  double k = 0.0;  // parabola coefficient, |k| = 1/sqrt(-2 A s)
  double v_minus = 0.0;
  double v_plus = 0.0;
  bool at_threshold = false;  // b = -1/2, where u_+ and u_0 coalesce
};

// Throws Error(Domain) unless A > 0 and -1 < b <= -1/2.  The closed end
// b = -1/2 is the degenerate threshold point (flagged).
PSystemLocusPoint psys_locus(double b, double A, double v_minus = 0.0);

// 4 sqrt(3) / (9 A); throws Error(Domain) for A <= 0.
double psys_threshold(double A);

// Unique u_+ in (-u_-, -u_-/2).  Throws Error(Domain) unless u_- exceeds the
// threshold strictly.
double psys_kinetic_u_plus(double u_minus, double A);

// Arbitrary pair with speed -sign(A) sqrt(u_+^2 + u_+ u_- + u_-^2) and the
// parabola coefficient of the locus formula; used for off-locus probes.
PSystemLocusPoint psys_pair(double u_minus, double u_plus, double A, double v_minus = 0.0);

// Field of the profile equation as u' = w, w' = w / A + g(u).
shooting::DampedField psys_field(const PSystemLocusPoint& point);

struct PSystemOrbit {
  shooting::OrbitResult orbit;
  // The connection found runs from u_+ to u_- (ascending in xi) rather than
  // from u_- to u_+.
  bool reversed = false;
  // NaN unless the orbit connects.  This and orbit.terminal_distance are
  // measured in units normalised to |u_-| = 1; the trajectory is in the
  // original units.
  double parabola_residual = 0.0;
};

// Saddle-saddle shot between u_- and u_+ in both orientations.  Throws
// Error(NotSaddle) when s A >= 0 or either end state is not a saddle.  The
// profile equation is invariant under u -> L u, xi -> xi / L, A -> A / L, so
// the shot is done at |u_-| = 1 where all points are of unit size.
PSystemOrbit psys_shoot(const PSystemLocusPoint& point, const shooting::ShootOptions& opts = {});

// max |w - k (u - u_-)(u - u_+)| along the orbit, with the sign of k taken
// from the orientation of the orbit.
double psys_parabola_residual(const shooting::OrbitResult& orbit, const PSystemLocusPoint& point);

enum class Symmetry { OddMap, AFlip };

// OddMap: (u, v) -> (-u, -v).  AFlip: A -> -A, s -> -s, v -> -v (xi -> -xi).
// Both reverse the sign of k and leave b unchanged.
PSystemLocusPoint psys_symmetry(const PSystemLocusPoint& point, Symmetry which);

struct LocusCheck {
  double speed_residual = 0.0;     // |s^2 - (u_+^2 + u_+ u_- + u_-^2)|
  double sum_residual = 0.0;       // |u_0 + u_+ + u_-|
  double k_residual = 0.0;         // |k^2 + 1/(2 A s)|
  double sk_residual = 0.0;        // ||s k| - (3/2)|u_- + u_+||
  double formula_residual = 0.0;   // |u_-| against the closed form in b and |A|
  double rh_residual = 0.0;        // |v_+ - v_- + s (u_+ - u_-)|
  bool saddle_condition = false;   // s A < 0 and s^2 < 3 u_+-^2
  bool ratio_in_range = false;     // -1 < b <= -1/2

  double worst() const;
};

// Sign-agnostic membership test, so it also applies to symmetric images.
LocusCheck psys_check(const PSystemLocusPoint& point);

// Every (b, A) combination, A-major; evaluated in parallel.
std::vector<PSystemLocusPoint> psys_locus_table(const std::vector<double>& b_values,
                                                const std::vector<double>& A_values);

}  // namespace ucshock::psystem
