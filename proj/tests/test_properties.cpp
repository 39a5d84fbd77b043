// Randomized properties.  Generators are plain distributions over fixed
// seeds so every run sees the same cases.

#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ucshock/kinetics.hpp"
#include "ucshock/model.hpp"
#include "ucshock/pde.hpp"
#include "ucshock/psystem.hpp"
#include "ucshock/riemann.hpp"

using namespace ucshock;
using doctest::Approx;

namespace {

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  bool coin() { return std::bernoulli_distribution(0.5)(rng); }

  // Mostly interior values, with exact grid values mixed in so ties and
  // symmetric pairs get exercised.
  double state() {
    if (std::uniform_int_distribution<int>(0, 4)(rng) == 0) {
      return std::uniform_int_distribution<int>(-12, 12)(rng) / 10.0;
    }
    return uniform(-1.2, 1.2);
  }
  double gamma() { return uniform(0.02, 0.99) * kinetics::gamma_max(); }
  kinetics::Branch branch() { return coin() ? kinetics::Branch::Plus : kinetics::Branch::Minus; }
};

constexpr int kCases = 300;

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("flux and shock classification are odd-symmetric") {
    Gen g(1);
    for (int n = 0; n < kCases; ++n) {
      const double a = g.state(), b = g.state();
      CHECK(model::flux(-a) == -model::flux(a));
      CHECK(model::char_speed(-a) == model::char_speed(a));
      const auto p = model::classify_shock(a, b), q = model::classify_shock(-a, -b);
      CHECK(p.kind == q.kind);
      CHECK(p.speed == q.speed);
      CHECK(p.sonic == q.sonic);
      const double beta = g.uniform(0.0, 1.0), mu = g.uniform(0.01, 1.0), xi = g.uniform(-5.0, 5.0);
      CHECK(model::dispersion_lambda(a, beta, mu, xi) == model::dispersion_lambda(-a, beta, mu, xi));
      CHECK(model::dispersion_lambda(a, beta, mu, xi).real() <= 0.0);
      const auto lam = model::dispersion_lambda(a, beta, mu, xi);
      const auto ref = oracle::dispersion(a, beta, mu, xi);
      CHECK(std::abs(lam - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
    }
  }

  TEST_CASE("Lax classification brackets characteristic speeds") {
    Gen g(2);
    for (int n = 0; n < kCases; ++n) {
      const double a = g.state(), b = g.state();
      if (std::abs(a - b) < 1e-6) continue;
      const auto p = model::classify_shock(a, b);
      const double s = oracle::chord_speed(a, b);
      const double la = oracle::flux_prime(a), lb = oracle::flux_prime(b);
      const double tol = 1e-9;
      if (la > s + tol && s > lb + tol) CHECK(p.kind == model::ShockKind::Lax);
      if (s > la + tol && s > lb + tol) CHECK(p.kind == model::ShockKind::UndercompressiveCandidate);
      if (la + tol < s && s + tol < lb) CHECK(p.kind == model::ShockKind::Inadmissible);
    }
  }

  TEST_CASE("locus points satisfy the locus identities") {
    Gen g(3);
    for (int n = 0; n < kCases; ++n) {
      const double gamma = g.gamma();
      const double at = kinetics::a_tilde(gamma);
      const double a = g.uniform(0.5, at);
      const auto kp = kinetics::locus_point(a, gamma, g.branch());
      CHECK(std::abs(kp.u_minus + kp.u_zero + kp.u_plus) <= 1e-12);
      CHECK(std::abs(kp.u_zero - oracle::u_zero(kp.s, gamma)) <= 1e-10);
      CHECK(std::abs(oracle::locus_equation(kp.u_minus, kp.u_plus, gamma)) <= 1e-10);
      CHECK(kp.s == Approx(oracle::chord_speed(kp.u_minus, kp.u_plus)).epsilon(1e-12));
      CHECK(oracle::D(a, gamma) >= -1e-12);
      // Saddle at both ends: s exceeds both characteristic speeds.
      CHECK(kp.s >= oracle::flux_prime(kp.u_minus) - 1e-10);
      CHECK(kp.s >= oracle::flux_prime(kp.u_plus) - 1e-10);
      CHECK(kinetics::kinetic_u_minus(kp.u_plus, gamma) == Approx(kp.u_minus).epsilon(1e-9));
      const auto candidates = kinetics::kinetic_u_plus_candidates(kp.u_minus, gamma);
      bool found = false;
      for (double up : candidates) found = found || std::abs(up - kp.u_plus) < 1e-7;
      CHECK(found);
    }
  }

  TEST_CASE("a_tilde agrees with bisection and closed form") {
    Gen g(4);
    for (int n = 0; n < kCases; ++n) {
      const double gamma = g.gamma();
      CHECK(kinetics::a_tilde(gamma) == Approx(oracle::a_tilde_bisect(gamma)).epsilon(1e-10));
      CHECK(kinetics::a_tilde(gamma) == Approx(oracle::a_tilde_closed(gamma)).epsilon(1e-10));
      const auto bounds = kinetics::u_plus_bounds(gamma);
      const auto ref = oracle::endpoint_u_plus(gamma);
      CHECK(std::abs(bounds.lower - ref.first) <= 1e-12);
      CHECK(std::abs(bounds.upper - ref.second) <= 1e-12);
    }
  }

  TEST_CASE("Riemann solutions mirror under u -> -u") {
    Gen g(5);
    const double gamma = 1.0 / std::sqrt(6.0);
    for (int n = 0; n < kCases; ++n) {
      const double ul = g.state(), ur = g.state();
      const auto p = riemann::solve(ul, ur, gamma);
      const auto q = riemann::solve(-ul, -ur, gamma);
      CHECK(p.pattern == q.pattern);
      REQUIRE(p.waves.size() == q.waves.size());
      for (std::size_t i = 0; i < p.waves.size(); ++i) {
        CHECK(p.waves[i].kind == q.waves[i].kind);
        CHECK(p.waves[i].left_state == Approx(-q.waves[i].left_state).epsilon(1e-12));
        CHECK(p.waves[i].right_state == Approx(-q.waves[i].right_state).epsilon(1e-12));
        CHECK(p.waves[i].speed_lo == Approx(q.waves[i].speed_lo).epsilon(1e-12));
        CHECK(p.waves[i].speed_hi == Approx(q.waves[i].speed_hi).epsilon(1e-12));
        if (p.waves[i].kind == riemann::WaveKind::UndercompressiveShock) {
          // Canonical orientation has u_+ < 0.
          const double sign = p.waves[i].right_state < 0.0 ? 1.0 : -1.0;
          CHECK(std::abs(oracle::locus_equation(sign * p.waves[i].left_state,
                                                sign * p.waves[i].right_state, gamma)) < 1e-8);
        }
      }
      for (double r : {-2.0, -0.3, 0.1, 0.5, 0.9, 2.0}) {
        CHECK(riemann::evaluate(p, r) == Approx(-riemann::evaluate(q, r)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("PDE evolution commutes with u -> -u") {
    Gen g(6);
    for (int n = 0; n < 4; ++n) {
      const double ul = g.state(), ur = g.state(), k = g.uniform(0.3, 2.0);
      pde::SimConfig cfg;
      cfg.x_min = -10.0;
      cfg.x_max = 10.0;
      cfg.nx = 201;
      cfg.dt = 0.02;
      cfg.t_end = 0.5;
      cfg.bc = n % 2 ? pde::Boundary::Neumann : pde::Boundary::DirichletFarField;
      cfg.initial = pde::SmoothedRiemann{ul, ur, k};
      const auto a = pde::simulate(cfg);
      cfg.initial = pde::SmoothedRiemann{-ul, -ur, k};
      const auto b = pde::simulate(cfg);
      for (std::size_t i = 0; i < a.u.size(); ++i) CHECK(a.u[i] == -b.u[i]);
    }
  }

  TEST_CASE("p-system locus and symmetries") {
    Gen g(7);
    for (int n = 0; n < kCases; ++n) {
      const double b = g.uniform(-0.99, -0.5), A = std::exp(g.uniform(std::log(0.1), std::log(10.0)));
      const auto p = psystem::psys_locus(b, A, g.uniform(-1.0, 1.0));
      const auto ref = oracle::psystem(b, A);
      CHECK(p.u_minus == Approx(ref.u_minus).epsilon(1e-12));
      CHECK(p.k == Approx(ref.k).epsilon(1e-12));
      // Residuals are absolute and u_- grows without bound as b -> -1.
      const double tol = 1e-13 * std::max(1.0, p.u_minus * p.u_minus);
      CHECK(psystem::psys_check(p).worst() < tol);
      for (auto which : {psystem::Symmetry::OddMap, psystem::Symmetry::AFlip}) {
        const auto q = psystem::psys_symmetry(p, which);
        CHECK(psystem::psys_check(q).worst() < tol);
        CHECK(psystem::psys_check(q).saddle_condition);
        CHECK(q.s * q.A < 0.0);
      }
      if (b < -0.5) CHECK(psystem::psys_kinetic_u_plus(p.u_minus, A) == Approx(p.u_plus).epsilon(1e-9));
    }
  }
}
