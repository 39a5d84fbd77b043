#pragma once

// Closed-form locus of saddle-saddle (undercompressive) traveling waves for
// the cubic flux with Burgers dissipation and BBM-type dispersion.
//
// The locus is parametrized by the ratio a = -u_minus / u_plus on two
// branches (sign choice in front of sqrt(D)).  For 0 < gamma < sqrt(3/8) the
// parameter runs over 1/2 <= a <= a_tilde(gamma); both endpoints are included
// and the branches merge at a_tilde.

#include <string_view>
#include <utility>
#include <vector>

namespace ucshock::kinetics {

// Upper limit sqrt(3/8) on gamma for the existence of any undercompressive wave.
double gamma_max();

enum class Branch { Plus, Minus };

std::string_view to_string(Branch branch);

struct KineticPoint {
  double a = 0.5;
  Branch branch = Branch::Plus;
  double u_minus = 0.0;
  double u_zero = 0.0;
  double u_plus = 0.0;
  double s = 0.0;
  double gamma = 0.0;
  bool at_half = false;   // a == 1/2, where the locus meets u_minus = -u_plus / 2
  bool at_tilde = false;  // a == a_tilde, where the two branches merge
};

struct UPlusBounds {
  double lower = 0.0;  // most negative admissible u_plus (Plus branch at a = 1/2)
  double upper = 0.0;  // least negative admissible u_plus (Minus branch at a = 1/2)
};

// D(a, gamma) = 1 - (8/9) gamma^2 (1 + a / (a-1)^2).  Throws Error(Pole) at a = 1.
double discriminant(double a, double gamma);

// Largest a with D(a, gamma) >= 0.  Throws Error(NoLocus) unless 0 < gamma < sqrt(3/8).
double a_tilde(double gamma);

// Throws Error(NoLocus) for gamma outside (0, sqrt(3/8)), Error(Domain) for
// a outside [1/2, a_tilde].
KineticPoint locus_point(double a, double gamma, Branch branch);

UPlusBounds u_plus_bounds(double gamma);

// Unique left state joined to u_plus by an undercompressive wave.  Inverts the
// monotone branch maps a -> u_plus by bisection.  Throws Error(NoConnection)
// when u_plus lies outside u_plus_bounds (closed interval).
double kinetic_u_minus(double u_plus, double gamma);
KineticPoint kinetic_point_for_u_plus(double u_plus, double gamma);

// Every u_plus paired with u_minus on the locus (0, 1 or 2 values), ascending.
std::vector<double> kinetic_u_plus_candidates(double u_minus, double gamma);

// Range of u_minus values reached by the locus.
std::pair<double, double> u_minus_range(double gamma);

// Integral over [u_plus, u_minus] of the traveling-wave cubic
// c(u) = u^3 - u - (u_-^3 - u_-) + s (u - u_-), s the chord speed.
double entropy_integral(double u_minus, double u_plus);

// Residual of sqrt(1 - (u+^2 + u- u+ + u-^2)) (u+ + u-) + (sqrt 2 / 3) gamma.
double locus_residual(double u_minus, double u_plus, double gamma);

// Without dissipation the parabola condition collapses to u_plus = -u_minus.
double zero_dissipation_partner(double u_minus);

// n_per_branch evenly spaced a-values in [a_lo, a_hi] on each branch, Plus
// first.  The first overload spans the whole locus [1/2, a_tilde].
std::vector<KineticPoint> sample_locus(double gamma, int n_per_branch);
std::vector<KineticPoint> sample_locus(double gamma, int n_per_branch, double a_lo,
                                       double a_hi);

}  // namespace ucshock::kinetics
