#include "ucshock/model.hpp"

#include <cmath>
#include <sstream>

#include "ucshock/error.hpp"

namespace ucshock {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Pole: return "pole";
    case ErrorKind::NoLocus: return "no_locus";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::NoConnection: return "no_connection";
    case ErrorKind::DegenerateSpeed: return "degenerate_speed";
    case ErrorKind::NotSaddle: return "not_saddle";
    case ErrorKind::SolverBreakdown: return "solver_breakdown";
    case ErrorKind::InvalidConfig: return "invalid_config";
  }
  return "unknown";
}

namespace model {

double ScalarParams::gamma() const {
  if (!(mu > 0.0)) throw Error(ErrorKind::Domain, "gamma = beta/sqrt(mu) needs mu > 0");
  return beta / std::sqrt(mu);
}

ScalarParams ScalarParams::make(double beta, double mu) {
  if (!(beta >= 0.0)) throw Error(ErrorKind::Domain, "beta must be non-negative");
  if (!(mu > 0.0)) throw Error(ErrorKind::Domain, "mu must be positive");
  return ScalarParams{beta, mu};
}

ScalarParams ScalarParams::from_gamma(double gamma, double mu) {
  return make(gamma * std::sqrt(mu), mu);
}

std::string_view to_string(ShockKind kind) {
  switch (kind) {
    case ShockKind::Lax: return "lax";
    case ShockKind::UndercompressiveCandidate: return "undercompressive_candidate";
    case ShockKind::Inadmissible: return "inadmissible";
    case ShockKind::Characteristic: return "characteristic";
  }
  return "unknown";
}

ShockPair classify_shock(double u_minus, double u_plus) {
  ShockPair pair{u_minus, u_plus, rh_speed(u_minus, u_plus), ShockKind::Inadmissible, false};
  if (std::abs(u_minus - u_plus) <= kClassifyTol) {
    pair.kind = ShockKind::Characteristic;
    return pair;
  }
  const double left = char_speed(u_minus);
  const double right = char_speed(u_plus);
  const double s = pair.speed;
  pair.sonic = std::abs(s - left) <= kClassifyTol || std::abs(s - right) <= kClassifyTol;
  if (right + kClassifyTol < s && s < left - kClassifyTol) {
    pair.kind = ShockKind::Lax;
  } else if (s > left + kClassifyTol && s > right + kClassifyTol) {
    pair.kind = ShockKind::UndercompressiveCandidate;
  }
  return pair;
}

std::complex<double> dispersion_lambda(double u_bar, double beta, double mu, double xi) {
  const double denom = 1.0 + mu * xi * xi;
  if (std::abs(denom) < 1e-14) {
    std::ostringstream msg;
    msg << "dispersion relation has a pole at xi = " << xi << " (mu = " << mu << ")";
    throw Error(ErrorKind::Pole, msg.str());
  }
  const std::complex<double> numer(-beta * xi * xi, -xi * char_speed(u_bar));
  return numer / denom;
}

}  // namespace model
}  // namespace ucshock
