// Serial against OpenMP timings for the PDE kernels and a full RK4 step.
// Both variants run on identical inputs and their outputs are compared
// bitwise before any timing is reported.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include <CLI11.hpp>

#include "ucshock/pde.hpp"

namespace {

using ucshock::pde::Exec;

double seconds_per_call(const std::function<void()>& fn, int reps) {
  fn();  // warm-up
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void report(const char* what, int nx, double serial, double parallel, bool equal) {
  std::printf("%-14s nx=%-8d serial %10.3f us   parallel %10.3f us   speedup %5.2f   %s\n", what, nx,
              serial * 1e6, parallel * 1e6, serial / parallel, equal ? "bitwise-equal" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP kernels"};
  std::vector<int> sizes{4001, 64001, 1000001};
  int reps = 20;
  app.add_option("--nx", sizes, "grid sizes");
  app.add_option("--reps", reps, "timed repetitions per measurement");
  CLI11_PARSE(app, argc, argv);

  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
  bool all_equal = true;
  for (int nx : sizes) {
    ucshock::pde::SimConfig cfg;
    cfg.nx = nx;
    cfg.dt = 0.5 * cfg.dx();
    const ucshock::pde::SimState start = ucshock::pde::initial_profile(cfg);
    const double dx = start.dx;

    std::vector<double> rhs_s(start.u.size()), rhs_p(start.u.size());
    const double t_rhs_s = seconds_per_call(
        [&] { ucshock::pde::kernels::assemble_rhs(Exec::Serial, cfg, dx, start.u, rhs_s); }, reps);
    const double t_rhs_p = seconds_per_call(
        [&] { ucshock::pde::kernels::assemble_rhs(Exec::Parallel, cfg, dx, start.u, rhs_p); }, reps);
    const bool rhs_equal = rhs_s == rhs_p;
    report("assemble_rhs", nx, t_rhs_s, t_rhs_p, rhs_equal);

    ucshock::pde::SimConfig cfg_s = cfg, cfg_p = cfg;
    cfg_s.exec = Exec::Serial;
    cfg_p.exec = Exec::Parallel;
    const ucshock::pde::Stepper step_s(cfg_s), step_p(cfg_p);
    ucshock::pde::SimState a = start, b = start;
    const double t_step_s = seconds_per_call([&] { step_s.step(a); }, reps);
    const double t_step_p = seconds_per_call([&] { step_p.step(b); }, reps);
    const bool step_equal = a.u == b.u;
    report("rk4 step", nx, t_step_s, t_step_p, step_equal);
    all_equal = all_equal && rhs_equal && step_equal;
  }
  return all_equal ? 0 : 1;
}
