#include "ucshock/tridiagonal.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "ucshock/error.hpp"

namespace ucshock::tridiagonal {

namespace {

[[noreturn]] void breakdown(std::size_t row) {
  std::ostringstream msg;
  msg << "zero pivot in tridiagonal factorization at row " << row;
  throw Error(ErrorKind::SolverBreakdown, msg.str());
}

}  // namespace

LU::LU(const Bands& a) {
  const std::size_t n = a.size();
  if (n == 0) return;
  d_ = a.diag;
  u1_.assign(n, 0.0);
  u2_.assign(n, 0.0);
  l_.assign(n, 0.0);
  swap_.assign(n, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) u1_[i] = a.upper[i];
  std::vector<double> sub(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) sub[i] = a.lower[i];

  // Same elimination order as LAPACK dgttrf.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d_[i]) >= std::abs(sub[i + 1])) {
      if (d_[i] == 0.0) breakdown(i);
      const double m = sub[i + 1] / d_[i];
      l_[i] = m;
      d_[i + 1] -= m * u1_[i];
    } else {
      // Swap rows i and i+1.
      const double m = d_[i] / sub[i + 1];
      swap_[i] = 1;
      l_[i] = m;
      d_[i] = sub[i + 1];
      const double tmp = d_[i + 1];
      d_[i + 1] = u1_[i] - m * tmp;
      if (i + 2 < n) {
        u2_[i] = u1_[i + 1];
        u1_[i + 1] = -m * u2_[i];
      }
      u1_[i] = tmp;
    }
  }
  if (d_[n - 1] == 0.0) breakdown(n - 1);
}

void LU::solve(std::vector<double>& b) const {
  const std::size_t n = d_.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (swap_[i]) {
      const double tmp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = tmp - l_[i] * b[i];
    } else {
      b[i + 1] -= l_[i] * b[i];
    }
  }
  if (n == 0) return;
  b[n - 1] /= d_[n - 1];
  if (n == 1) return;
  b[n - 2] = (b[n - 2] - u1_[n - 2] * b[n - 1]) / d_[n - 2];
  for (std::size_t k = n - 2; k-- > 0;) {
    b[k] = (b[k] - u1_[k] * b[k + 1] - u2_[k] * b[k + 2]) / d_[k];
  }
}

CyclicLU::CyclicLU(const Bands& a, double top_right, double bottom_left) {
  const std::size_t n = a.size();
  if (n < 3) throw Error(ErrorKind::Domain, "cyclic tridiagonal system needs n >= 3");
  // A = A' + u v^T with u = (g, 0, ..., 0, bottom_left), v = (1, 0, ..., 0, top_right / g).
  const double g = a.diag[0] == 0.0 ? 1.0 : -a.diag[0];
  Bands modified = a;
  modified.diag[0] -= g;
  modified.diag[n - 1] -= bottom_left * top_right / g;
  lu_ = LU(modified);
  z_.assign(n, 0.0);
  z_[0] = g;
  z_[n - 1] = bottom_left;
  lu_.solve(z_);
  v_last_ = top_right / g;
  denom_ = 1.0 + z_[0] + v_last_ * z_[n - 1];
  if (denom_ == 0.0) breakdown(0);
}

void CyclicLU::solve(std::vector<double>& b) const {
  lu_.solve(b);
  const std::size_t n = b.size();
  const double factor = (b[0] + v_last_ * b[n - 1]) / denom_;
  for (std::size_t i = 0; i < n; ++i) b[i] -= factor * z_[i];
}

std::vector<double> multiply(const Bands& a, const std::vector<double>& x) {
  const std::size_t n = a.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = a.diag[i] * x[i];
    if (i > 0) acc += a.lower[i] * x[i - 1];
    if (i + 1 < n) acc += a.upper[i] * x[i + 1];
    y[i] = acc;
  }
  return y;
}

}  // namespace ucshock::tridiagonal
