#pragma once

// Method-of-lines solver for the pseudo-parabolic equation
//
//   u_t + (u - u^3)_x = beta u_xx + mu u_xxt
//
// on a uniform grid.  Each right-hand-side evaluation solves
// (I - mu D2) w = beta D2 u - D1 f(u) for w = u_t, and classical RK4 advances
// u.  Spatial loops run either serially or with OpenMP; both variants perform
// the same floating-point operations per grid point, so their results are
// bitwise identical.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ucshock/kinetics.hpp"
#include "ucshock/tridiagonal.hpp"

namespace ucshock::pde {

enum class Boundary { DirichletFarField, Neumann, Periodic };
enum class Exec { Serial, Parallel };

std::string_view to_string(Boundary bc);
Boundary boundary_from_string(std::string_view name);

// u(x, 0) = ((u_R - u_L) tanh(steepness x) + (u_R + u_L)) / 2
struct SmoothedRiemann {
  double u_L = 0.0;
  double u_R = 0.0;
  double steepness = 1.0;
};

// Exact undercompressive profile m - d tanh(d xi / sqrt 2), xi = (x - x0) / sqrt(mu s).
struct TravelingWaveSeed {
  kinetics::KineticPoint point;
  double x0 = 0.0;
};

struct Custom {
  std::function<double(double)> profile;
};

using Initial = std::variant<SmoothedRiemann, TravelingWaveSeed, Custom>;

struct SimConfig {
  double beta = 0.1;
  double mu = 0.06;
  double x_min = -30.0;
  double x_max = 60.0;
  int nx = 4001;
  double dt = 0.02;
  double t_end = 50.0;
  Boundary bc = Boundary::DirichletFarField;
  Initial initial = SmoothedRiemann{0.4, -0.8, 0.4082482904638631};
  // Weight of Rusanov dissipation blended into the central flux (0 = off).
  double upwind_blend = 0.0;
  Exec exec = Exec::Parallel;
  std::vector<double> output_times;

  // Periodic grids omit x_max (it is identified with x_min).
  double dx() const;
  double x(int i) const { return x_min + i * dx(); }
  // Throws Error(InvalidConfig) listing every offending field.  mu < 0 is
  // accepted (ill-posed backward-diffusion regime, used to exhibit growth).
  void validate() const;
  // "field: reason" for every violated constraint; empty when valid.
  std::vector<std::string> problems() const;
};

struct SimState {
  double t = 0.0;
  double dx = 0.0;
  double x_min = 0.0;
  std::vector<double> u;

  double x(std::size_t i) const { return x_min + static_cast<double>(i) * dx; }
};

SimState initial_profile(const SimConfig& cfg);

namespace kernels {

// beta D2 u - D1 F(u) at every node, with boundary rows for bc.  The
// Dirichlet rows are zero.
void assemble_rhs(Exec exec, const SimConfig& cfg, double dx, const std::vector<double>& u,
                  std::vector<double>& rhs);

// out = base + h * k
void axpy(Exec exec, const std::vector<double>& base, double h, const std::vector<double>& k,
          std::vector<double>& out);

// u += h/6 (k1 + 2 k2 + 2 k3 + k4)
void rk4_combine(Exec exec, double h, const std::vector<double>& k1,
                 const std::vector<double>& k2, const std::vector<double>& k3,
                 const std::vector<double>& k4, std::vector<double>& u);

}  // namespace kernels

// Holds the factored operator I - mu D2 and stage buffers.
class Stepper {
 public:
  explicit Stepper(const SimConfig& cfg);

  // du/dt for the current profile.
  void time_derivative(const std::vector<double>& u, std::vector<double>& w) const;
  void step(SimState& state) const;
  const SimConfig& config() const { return cfg_; }

 private:
  SimConfig cfg_;
  double dx_;
  std::variant<tridiagonal::LU, tridiagonal::CyclicLU> solver_;
  mutable std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

// One RK4 step; factors the operator on each call, prefer Stepper in loops.
SimState step(const SimState& state, const SimConfig& cfg);

// Runs to t_end.  on_output fires at t = 0, at each configured output time
// (rounded to the step grid) and at t_end.
SimState simulate(const SimConfig& cfg,
                  const std::function<void(const SimState&)>& on_output = {});

// Trapezoidal integral of u (plain sum for periodic grids).
double mass(const SimState& state, Boundary bc);

struct Plateau {
  double value = 0.0;  // median over the run
  double x_begin = 0.0;
  double x_end = 0.0;
};

struct Front {
  double position = 0.0;  // steepest gradient
  // Location of the step between the two plateau values that carries the same
  // mass as u between the neighbouring plateau centres (outer edges for the
  // first and last plateau).  Moves at the Rankine-Hugoniot speed of the
  // plateau values while the profile itself may still be relaxing.
  double conservative_position = 0.0;
  double left_value = 0.0;  // plateau values on either side
  double right_value = 0.0;
};

enum class FrontMeasure { Steepest, Conservative };

struct FrontReport {
  std::vector<Plateau> plateaus;  // left to right
  std::vector<Front> fronts;      // between consecutive plateaus
};

struct FrontOptions {
  // Nodes with |u_{i+1} - u_i| < plateau_tol * dx belong to plateaus.
  double plateau_tol = 2e-3;
  // Runs shorter than this (in x) are ignored.
  double min_plateau_length = 0.5;
  // Neighbouring plateaus closer than this in value are merged.
  double merge_tol = 5e-3;
};

FrontReport detect_fronts(const SimState& state, const FrontOptions& opts = {});

// Position of max |u_x| in [x_lo, x_hi], refined by a parabola through the
// neighbouring difference quotients.
double steepest_point(const SimState& state, double x_lo, double x_hi);
// First x in [x_lo, x_hi] where u crosses level (linear interpolation).
std::optional<double> level_crossing(const SimState& state, double level, double x_lo,
                                     double x_hi);
// Median of u over [x_lo, x_hi].
double median_value(const SimState& state, double x_lo, double x_hi);
// Trapezoidal integral of u over the nodes in [x_lo, x_hi].
double integral(const SimState& state, double x_lo, double x_hi);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LineFit fit_line(const std::vector<double>& t, const std::vector<double>& x);

// Records detect_fronts at successive times and fits front speeds over the
// trailing fraction of the record.  Fronts are matched by index, so only the
// trailing records with the final front count enter the fit.
class FrontTracker {
 public:
  explicit FrontTracker(FrontOptions opts = {}) : opts_(opts) {}

  void record(const SimState& state);
  // Speeds of the fronts present in the last record; NaN when fewer than two
  // records qualify.
  std::vector<double> speeds(double trailing_fraction = 0.5,
                             FrontMeasure measure = FrontMeasure::Steepest) const;
  const std::vector<FrontReport>& reports() const { return reports_; }
  const std::vector<double>& times() const { return times_; }

 private:
  FrontOptions opts_;
  std::vector<double> times_;
  std::vector<FrontReport> reports_;
};

// Complex amplitude of exp(i xi x) in a periodic profile, scaled so a pure
// mode a cos(xi x) returns |a|.
double mode_amplitude(const SimState& state, double xi);

}  // namespace ucshock::pde
