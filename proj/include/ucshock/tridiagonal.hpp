#pragma once

// Tridiagonal systems: LU with partial pivoting, factored once and reused for
// many right-hand sides.  Pivoting matters for the backward-diffusion case
// mu < 0, where I - mu D2 loses diagonal dominance.

#include <vector>

namespace ucshock::tridiagonal {

struct Bands {
  std::vector<double> lower;  // lower[i] = A(i, i-1), lower[0] unused
  std::vector<double> diag;
  std::vector<double> upper;  // upper[i] = A(i, i+1), upper[n-1] unused

  explicit Bands(std::size_t n = 0) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}
  std::size_t size() const { return diag.size(); }
};

class LU {
 public:
  LU() = default;
  // Throws Error(SolverBreakdown) on an exactly singular pivot.
  explicit LU(const Bands& a);

  // Overwrites b with the solution of A x = b.
  void solve(std::vector<double>& b) const;
  std::size_t size() const { return d_.size(); }

 private:
  std::vector<double> l_;    // multipliers
  std::vector<double> d_;    // U diagonal
  std::vector<double> u1_;   // U first superdiagonal
  std::vector<double> u2_;   // U second superdiagonal (fill-in from row swaps)
  std::vector<char> swap_;   // row i swapped with i+1 at step i
};

// A with the extra corner entries A(0, n-1) = top_right and
// A(n-1, 0) = bottom_left, solved by Sherman-Morrison on top of LU.
class CyclicLU {
 public:
  CyclicLU() = default;
  CyclicLU(const Bands& a, double top_right, double bottom_left);

  void solve(std::vector<double>& b) const;
  std::size_t size() const { return lu_.size(); }

 private:
  LU lu_;
  std::vector<double> z_;  // A'^{-1} u for the rank-one correction
  double v_last_ = 0.0;    // v = (1, 0, ..., 0, v_last)
  double denom_ = 1.0;
};

// y = A x for checking residuals.
std::vector<double> multiply(const Bands& a, const std::vector<double>& x);

}  // namespace ucshock::tridiagonal
