#pragma once

// Riemann problem for u_t + (u - u^3)_x = 0 with shocks restricted to those
// carrying a traveling-wave profile of the dissipative-dispersive equation.
//
// The solver first builds the classical (Oleinik) solution.  If its shock has
// no Lax profile, that shock is replaced by the undercompressive wave ending
// at u_R, whose left state comes from the kinetic function, and the data
// between u_L and that left state are joined classically.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ucshock/kinetics.hpp"

namespace ucshock::riemann {

enum class WaveKind { Rarefaction, LaxShock, UndercompressiveShock };

std::string_view to_string(WaveKind kind);
WaveKind wave_kind_from_string(std::string_view name);

struct Wave {
  WaveKind kind = WaveKind::LaxShock;
  double left_state = 0.0;
  double right_state = 0.0;
  double speed_lo = 0.0;  // equal to speed_hi for shocks
  double speed_hi = 0.0;
  bool sonic = false;     // shock speed equals a characteristic speed within 1e-10

  bool is_shock() const { return kind != WaveKind::Rarefaction; }
};

struct RiemannSolution {
  double u_L = 0.0;
  double u_R = 0.0;
  double gamma = 0.0;
  std::vector<Wave> waves;
  // R, S and Σ (UTF-8) in left-to-right order; "C" for constant data.
  std::string pattern = "C";
  // Audit trail: kinetic branch used, classical fallbacks, sonic attachments.
  std::vector<std::string> flags;
};

inline constexpr double kSonicTol = 1e-10;

// Throws Error(Domain) for non-finite data or gamma <= 0.  For
// gamma >= sqrt(3/8) the classical solution is returned.
RiemannSolution solve(double u_L, double u_R, double gamma);

// Classical solution ignoring traveling-wave admissibility.
RiemannSolution solve_classical(double u_L, double u_R);

// State at x/t = r.  At a shock the right state is returned.
double evaluate(const RiemannSolution& sol, double r);

// Fan state with characteristic speed r, on the side of zero given by sign.
double fan_state(double r, double sign);

std::string pattern_label(const std::vector<Wave>& waves);

struct PlaneGrid {
  double u_min = -1.2;
  double u_max = 1.2;
  int n = 121;  // nodes per axis

  double node(int i) const { return n == 1 ? u_min : u_min + (u_max - u_min) * i / (n - 1); }
};

struct PatternMap {
  PlaneGrid grid;
  double gamma = 0.0;
  // labels[i * n + j] for u_L = node(i), u_R = node(j).
  std::vector<std::string> labels;

  const std::string& at(int i, int j) const { return labels[static_cast<std::size_t>(i) * grid.n + j]; }
};

// Cells are independent and solved in parallel; the result does not depend
// on the schedule.
PatternMap classify_plane(double gamma, const PlaneGrid& grid);

nlohmann::json to_json(const RiemannSolution& sol);
RiemannSolution solution_from_json(const nlohmann::json& j);

}  // namespace ucshock::riemann
