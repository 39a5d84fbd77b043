#include "ucshock/pde.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <type_traits>

#include "ucshock/error.hpp"
#include "ucshock/model.hpp"

namespace ucshock::pde {

namespace {

template <class Body>
void for_each_node(Exec exec, long n, Body&& body) {
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) body(i);
  } else {
    for (long i = 0; i < n; ++i) body(i);
  }
}

// Central flux at the face between two states, optionally blended with
// Rusanov dissipation.
inline double face_flux(double a, double b, double blend) {
  double flux = 0.5 * (model::flux(a) + model::flux(b));
  if (blend != 0.0) {
    const double speed =
        std::max(std::abs(model::char_speed(a)), std::abs(model::char_speed(b)));
    flux -= blend * 0.5 * speed * (b - a);
  }
  return flux;
}

tridiagonal::Bands operator_bands(const SimConfig& cfg, double dx) {
  const std::size_t n = static_cast<std::size_t>(cfg.nx);
  tridiagonal::Bands a(n);
  const double c = cfg.mu / (dx * dx);
  for (std::size_t i = 0; i < n; ++i) {
    a.lower[i] = -c;
    a.diag[i] = 1.0 + 2.0 * c;
    a.upper[i] = -c;
  }
  a.lower[0] = 0.0;
  a.upper[n - 1] = 0.0;
  switch (cfg.bc) {
    case Boundary::DirichletFarField:
      a.diag[0] = a.diag[n - 1] = 1.0;
      a.upper[0] = 0.0;
      a.lower[n - 1] = 0.0;
      break;
    case Boundary::Neumann:
      // Mirror ghosts u_{-1} = u_1, u_n = u_{n-2}.
      a.upper[0] = -2.0 * c;
      a.lower[n - 1] = -2.0 * c;
      break;
    case Boundary::Periodic:
      break;
  }
  return a;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<long>(mid), v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + static_cast<long>(mid)));
  }
  return m;
}

std::pair<long, long> index_window(const SimState& s, double x_lo, double x_hi) {
  const long n = static_cast<long>(s.u.size());
  long lo = static_cast<long>(std::ceil((x_lo - s.x_min) / s.dx - 1e-9));
  long hi = static_cast<long>(std::floor((x_hi - s.x_min) / s.dx + 1e-9));
  lo = std::clamp(lo, 0L, n - 1);
  hi = std::clamp(hi, 0L, n - 1);
  return {lo, hi};
}

}  // namespace

std::string_view to_string(Boundary bc) {
  switch (bc) {
    case Boundary::DirichletFarField: return "dirichlet";
    case Boundary::Neumann: return "neumann";
    case Boundary::Periodic: return "periodic";
  }
  return "unknown";
}

Boundary boundary_from_string(std::string_view name) {
  for (Boundary b : {Boundary::DirichletFarField, Boundary::Neumann, Boundary::Periodic}) {
    if (to_string(b) == name) return b;
  }
  throw Error(ErrorKind::InvalidConfig,
              "bc: unknown boundary '" + std::string(name) + "' (dirichlet|neumann|periodic)");
}

double SimConfig::dx() const {
  const double span = x_max - x_min;
  return bc == Boundary::Periodic ? span / nx : span / (nx - 1);
}

void SimConfig::validate() const {
  const std::vector<std::string> list = problems();
  if (list.empty()) return;
  std::ostringstream msg;
  msg << "invalid simulation config:";
  for (const auto& p : list) msg << "\n  " << p;
  throw Error(ErrorKind::InvalidConfig, msg.str());
}

std::vector<std::string> SimConfig::problems() const {
  std::vector<std::string> problems;
  auto bad = [&](const std::string& field, const std::string& why) {
    problems.push_back(field + ": " + why);
  };
  if (!(beta > 0.0) || !std::isfinite(beta)) bad("beta", "must be positive");
  if (!std::isfinite(mu) || mu == 0.0) bad("mu", "must be finite and nonzero");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min)) {
    bad("x_min/x_max", "need x_max > x_min");
  }
  if (nx < 3) bad("nx", "must be at least 3");
  if (!(dt > 0.0) || !std::isfinite(dt)) bad("dt", "must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) bad("t_end", "must be non-negative");
  if (!(upwind_blend >= 0.0 && upwind_blend <= 1.0)) bad("upwind_blend", "must lie in [0, 1]");
  for (double t : output_times) {
    if (!(t >= 0.0 && t <= t_end)) {
      bad("output_times", "entries must lie in [0, t_end]");
      break;
    }
  }
  if (const auto* sr = std::get_if<SmoothedRiemann>(&initial)) {
    if (!(sr->steepness > 0.0)) bad("steepness", "must be positive");
    if (!std::isfinite(sr->u_L) || !std::isfinite(sr->u_R)) bad("u_L/u_R", "must be finite");
  } else if (const auto* tw = std::get_if<TravelingWaveSeed>(&initial)) {
    if (!(tw->point.s > 0.0)) bad("seed", "traveling-wave seed needs s > 0");
    if (!(mu > 0.0)) bad("mu", "traveling-wave seed needs mu > 0");
  } else if (!std::get<Custom>(initial).profile) {
    bad("initial", "custom profile is empty");
  }
  return problems;
}

SimState initial_profile(const SimConfig& cfg) {
  cfg.validate();
  SimState s;
  s.dx = cfg.dx();
  s.x_min = cfg.x_min;
  s.u.resize(static_cast<std::size_t>(cfg.nx));
  const std::size_t n = s.u.size();
  std::visit(
      [&](const auto& init) {
        using T = std::decay_t<decltype(init)>;
        for (std::size_t i = 0; i < n; ++i) {
          const double x = s.x(i);
          if constexpr (std::is_same_v<T, SmoothedRiemann>) {
            s.u[i] = 0.5 * ((init.u_R - init.u_L) * std::tanh(init.steepness * x) +
                            (init.u_R + init.u_L));
          } else if constexpr (std::is_same_v<T, TravelingWaveSeed>) {
            const auto& p = init.point;
            const double m = 0.5 * (p.u_minus + p.u_plus);
            const double d = 0.5 * (p.u_minus - p.u_plus);
            const double xi = (x - init.x0) / std::sqrt(cfg.mu * p.s);
            s.u[i] = m - d * std::tanh(d * xi / std::numbers::sqrt2);
          } else {
            s.u[i] = init.profile(x);
          }
        }
        if constexpr (std::is_same_v<T, SmoothedRiemann>) {
          if (cfg.bc == Boundary::DirichletFarField) {
            s.u.front() = init.u_L;
            s.u.back() = init.u_R;
          }
        } else if constexpr (std::is_same_v<T, TravelingWaveSeed>) {
          if (cfg.bc == Boundary::DirichletFarField) {
            s.u.front() = init.point.u_minus;
            s.u.back() = init.point.u_plus;
          }
        }
      },
      cfg.initial);
  return s;
}

namespace kernels {

void assemble_rhs(Exec exec, const SimConfig& cfg, double dx, const std::vector<double>& u,
                  std::vector<double>& rhs) {
  const long n = static_cast<long>(u.size());
  rhs.resize(u.size());
  const double diff = cfg.beta / (dx * dx);
  const double inv_dx = 1.0 / dx;
  const double blend = cfg.upwind_blend;
  const Boundary bc = cfg.bc;
  const double* p = u.data();
  double* out = rhs.data();
  for_each_node(exec, n, [=](long i) {
    long im = i - 1;
    long ip = i + 1;
    if (i == 0 || i == n - 1) {
      if (bc == Boundary::DirichletFarField) {
        out[i] = 0.0;
        return;
      }
      if (bc == Boundary::Neumann) {
        if (i == 0) im = 1;
        if (i == n - 1) ip = n - 2;
      } else {
        if (i == 0) im = n - 1;
        if (i == n - 1) ip = 0;
      }
    }
    const double ul = p[im];
    const double uc = p[i];
    const double ur = p[ip];
    const double flux_diff = face_flux(uc, ur, blend) - face_flux(ul, uc, blend);
    out[i] = diff * (ur - 2.0 * uc + ul) - inv_dx * flux_diff;
  });
}

void axpy(Exec exec, const std::vector<double>& base, double h, const std::vector<double>& k,
          std::vector<double>& out) {
  out.resize(base.size());
  const double* b = base.data();
  const double* kk = k.data();
  double* o = out.data();
  for_each_node(exec, static_cast<long>(base.size()), [=](long i) { o[i] = b[i] + h * kk[i]; });
}

void rk4_combine(Exec exec, double h, const std::vector<double>& k1,
                 const std::vector<double>& k2, const std::vector<double>& k3,
                 const std::vector<double>& k4, std::vector<double>& u) {
  const double w = h / 6.0;
  const double* a = k1.data();
  const double* b = k2.data();
  const double* c = k3.data();
  const double* d = k4.data();
  double* o = u.data();
  for_each_node(exec, static_cast<long>(u.size()),
                [=](long i) { o[i] += w * (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]); });
}

}  // namespace kernels

Stepper::Stepper(const SimConfig& cfg) : cfg_(cfg), dx_(cfg.dx()) {
  cfg_.validate();
  const tridiagonal::Bands bands = operator_bands(cfg_, dx_);
  if (cfg_.bc == Boundary::Periodic) {
    const double c = -cfg_.mu / (dx_ * dx_);
    solver_ = tridiagonal::CyclicLU(bands, c, c);
  } else {
    solver_ = tridiagonal::LU(bands);
  }
}

void Stepper::time_derivative(const std::vector<double>& u, std::vector<double>& w) const {
  kernels::assemble_rhs(cfg_.exec, cfg_, dx_, u, w);
  std::visit([&](const auto& s) { s.solve(w); }, solver_);
}

void Stepper::step(SimState& state) const {
  const double h = cfg_.dt;
  const Exec ex = cfg_.exec;
  time_derivative(state.u, k1_);
  kernels::axpy(ex, state.u, 0.5 * h, k1_, tmp_);
  time_derivative(tmp_, k2_);
  kernels::axpy(ex, state.u, 0.5 * h, k2_, tmp_);
  time_derivative(tmp_, k3_);
  kernels::axpy(ex, state.u, h, k3_, tmp_);
  time_derivative(tmp_, k4_);
  kernels::rk4_combine(ex, h, k1_, k2_, k3_, k4_, state.u);
  state.t += h;
}

SimState step(const SimState& state, const SimConfig& cfg) {
  SimState next = state;
  Stepper(cfg).step(next);
  return next;
}

SimState simulate(const SimConfig& cfg, const std::function<void(const SimState&)>& on_output) {
  SimState state = initial_profile(cfg);
  const Stepper stepper(cfg);
  const long n_steps = std::lround(cfg.t_end / cfg.dt);
  std::vector<long> marks;
  for (double t : cfg.output_times) marks.push_back(std::lround(t / cfg.dt));
  marks.push_back(n_steps);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  std::size_t next = 0;
  auto emit = [&](long k) {
    while (next < marks.size() && marks[next] <= k) {
      if (marks[next] == k && on_output) on_output(state);
      ++next;
    }
  };
  if (on_output) on_output(state);
  if (!marks.empty() && marks.front() == 0) ++next;
  for (long k = 1; k <= n_steps; ++k) {
    stepper.step(state);
    // Keep the clock on the step grid instead of accumulating rounding.
    state.t = static_cast<double>(k) * cfg.dt;
    emit(k);
  }
  return state;
}

double mass(const SimState& state, Boundary bc) {
  double total = 0.0;
  for (double v : state.u) total += v;
  if (bc != Boundary::Periodic && !state.u.empty()) {
    total -= 0.5 * (state.u.front() + state.u.back());
  }
  return total * state.dx;
}

FrontReport detect_fronts(const SimState& state, const FrontOptions& opts) {
  FrontReport report;
  const std::size_t n = state.u.size();
  if (n < 2) return report;
  const double threshold = opts.plateau_tol * state.dx;

  struct Run {
    std::size_t first, last;  // node indices, inclusive
  };
  std::vector<Run> runs;
  std::size_t i = 0;
  while (i + 1 < n) {
    if (std::abs(state.u[i + 1] - state.u[i]) >= threshold) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && std::abs(state.u[j + 1] - state.u[j]) < threshold) ++j;
    if (static_cast<double>(j - i) * state.dx >= opts.min_plateau_length) runs.push_back({i, j});
    i = j + 1;
  }

  auto run_median = [&](const Run& r) {
    return median_of(std::vector<double>(state.u.begin() + static_cast<long>(r.first),
                                         state.u.begin() + static_cast<long>(r.last) + 1));
  };
  std::vector<Run> merged;
  std::vector<double> values;
  for (const Run& r : runs) {
    const double v = run_median(r);
    if (!merged.empty() && std::abs(v - values.back()) < opts.merge_tol) {
      merged.back().last = r.last;
      values.back() = run_median(merged.back());
      continue;
    }
    merged.push_back(r);
    values.push_back(v);
  }

  for (std::size_t k = 0; k < merged.size(); ++k) {
    report.plateaus.push_back({values[k], state.x(merged[k].first), state.x(merged[k].last)});
  }
  const std::size_t m = merged.size();
  for (std::size_t k = 0; k + 1 < m; ++k) {
    Front f;
    f.position = steepest_point(state, state.x(merged[k].last), state.x(merged[k + 1].first));
    f.left_value = values[k];
    f.right_value = values[k + 1];
    const Plateau& left = report.plateaus[k];
    const Plateau& right = report.plateaus[k + 1];
    const double a = k == 0 ? left.x_begin : 0.5 * (left.x_begin + left.x_end);
    const double b = k + 2 == m ? right.x_end : 0.5 * (right.x_begin + right.x_end);
    f.conservative_position =
        (integral(state, a, b) - f.right_value * b + f.left_value * a) /
        (f.left_value - f.right_value);
    report.fronts.push_back(f);
  }
  return report;
}

double steepest_point(const SimState& state, double x_lo, double x_hi) {
  const auto [lo, hi] = index_window(state, x_lo, x_hi);
  if (hi <= lo) return 0.5 * (x_lo + x_hi);
  auto slope = [&](long k) { return std::abs(state.u[k + 1] - state.u[k]); };
  long best = lo;
  for (long k = lo; k < hi; ++k) {
    if (slope(k) > slope(best)) best = k;
  }
  double offset = 0.0;
  if (best > lo && best + 1 < hi) {
    const double gm = slope(best - 1);
    const double g0 = slope(best);
    const double gp = slope(best + 1);
    const double curv = gm - 2.0 * g0 + gp;
    if (curv < 0.0) offset = std::clamp(0.5 * (gm - gp) / curv, -0.5, 0.5);
  }
  return state.x(static_cast<std::size_t>(best)) + (0.5 + offset) * state.dx;
}

std::optional<double> level_crossing(const SimState& state, double level, double x_lo,
                                     double x_hi) {
  const auto [lo, hi] = index_window(state, x_lo, x_hi);
  for (long k = lo; k < hi; ++k) {
    const double a = state.u[k] - level;
    const double b = state.u[k + 1] - level;
    if (a == 0.0) return state.x(static_cast<std::size_t>(k));
    if ((a < 0.0) != (b < 0.0)) {
      return state.x(static_cast<std::size_t>(k)) + state.dx * a / (a - b);
    }
  }
  return std::nullopt;
}

double median_value(const SimState& state, double x_lo, double x_hi) {
  const auto [lo, hi] = index_window(state, x_lo, x_hi);
  return median_of(
      std::vector<double>(state.u.begin() + lo, state.u.begin() + std::max(lo, hi) + 1));
}

double integral(const SimState& state, double x_lo, double x_hi) {
  const auto [lo, hi] = index_window(state, x_lo, x_hi);
  double total = 0.0;
  for (long k = lo; k < hi; ++k) total += 0.5 * (state.u[k] + state.u[k + 1]);
  return total * state.dx;
}

LineFit fit_line(const std::vector<double>& t, const std::vector<double>& x) {
  const std::size_t n = std::min(t.size(), x.size());
  LineFit fit;
  if (n == 0) return fit;
  double mt = 0.0, mx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mt += t[i];
    mx += x[i];
  }
  mt /= static_cast<double>(n);
  mx /= static_cast<double>(n);
  double stt = 0.0, stx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    stt += (t[i] - mt) * (t[i] - mt);
    stx += (t[i] - mt) * (x[i] - mx);
  }
  fit.slope = stt > 0.0 ? stx / stt : std::numeric_limits<double>::quiet_NaN();
  fit.intercept = mx - fit.slope * mt;
  return fit;
}

void FrontTracker::record(const SimState& state) {
  times_.push_back(state.t);
  reports_.push_back(detect_fronts(state, opts_));
}

std::vector<double> FrontTracker::speeds(double trailing_fraction, FrontMeasure measure) const {
  if (reports_.empty()) return {};
  const std::size_t count = reports_.back().fronts.size();
  const double t_last = times_.back();
  const double t_start = t_last - trailing_fraction * (t_last - times_.front());
  std::size_t first = reports_.size() - 1;
  while (first > 0 && times_[first - 1] >= t_start && reports_[first - 1].fronts.size() == count) {
    --first;
  }
  std::vector<double> out(count, std::numeric_limits<double>::quiet_NaN());
  if (reports_.size() - first < 2) return out;
  for (std::size_t f = 0; f < count; ++f) {
    std::vector<double> ts, xs;
    for (std::size_t r = first; r < reports_.size(); ++r) {
      const Front& fr = reports_[r].fronts[f];
      ts.push_back(times_[r]);
      xs.push_back(measure == FrontMeasure::Steepest ? fr.position : fr.conservative_position);
    }
    out[f] = fit_line(ts, xs).slope;
  }
  return out;
}

double mode_amplitude(const SimState& state, double xi) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < state.u.size(); ++i) {
    acc += state.u[i] * std::polar(1.0, -xi * state.x(i));
  }
  return 2.0 * std::abs(acc) / static_cast<double>(state.u.size());
}

}  // namespace ucshock::pde
