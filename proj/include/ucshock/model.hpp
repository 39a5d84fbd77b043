#pragma once

// Flux and shock algebra for u_t + (u - u^3)_x = beta u_xx + mu u_xxt.

#include <complex>
#include <string_view>

namespace ucshock::model {

// Absolute tolerance for the O(1) comparisons made when classifying shocks.
inline constexpr double kClassifyTol = 1e-12;

struct ScalarParams {
  double beta = 0.0;
  double mu = 1.0;

  // beta / sqrt(mu); requires mu > 0.
  double gamma() const;

  // Throws Error(Domain) unless beta >= 0 and mu > 0.
  static ScalarParams make(double beta, double mu);
  // Picks beta = gamma * sqrt(mu).
  static ScalarParams from_gamma(double gamma, double mu);
};

enum class ShockKind { Lax, UndercompressiveCandidate, Inadmissible, Characteristic };

std::string_view to_string(ShockKind kind);

struct ShockPair {
  double u_minus = 0.0;
  double u_plus = 0.0;
  double speed = 0.0;
  ShockKind kind = ShockKind::Characteristic;
  // Set when the speed equals a one-sided characteristic speed (sonic contact).
  bool sonic = false;
};

constexpr double flux(double u) { return u - u * u * u; }

constexpr double char_speed(double u) { return 1.0 - 3.0 * u * u; }

// Second derivative of the flux; the flux is convex for u < 0, concave for u > 0.
constexpr double flux_curvature(double u) { return -6.0 * u; }

// Chord slope of the flux between the two states (Rankine-Hugoniot speed).
constexpr double rh_speed(double u_minus, double u_plus) {
  return 1.0 - (u_plus * u_plus + u_plus * u_minus + u_minus * u_minus);
}

ShockPair classify_shock(double u_minus, double u_plus);

// Growth rate of the Fourier mode exp(i xi x + lambda t) linearized about u_bar.
// Throws Error(Pole) when 1 + mu xi^2 vanishes (possible only for mu < 0).
std::complex<double> dispersion_lambda(double u_bar, double beta, double mu, double xi);

}  // namespace ucshock::model
