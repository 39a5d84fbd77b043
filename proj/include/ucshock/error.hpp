#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ucshock {

enum class ErrorKind {
  Pole,             // singular denominator (dispersion pole, D(a) at a = 1)
  NoLocus,          // no undercompressive locus for these parameters
  Domain,           // argument outside the admissible parameter range
  NoConnection,     // requested state has no kinetic partner
  DegenerateSpeed,  // traveling-wave rescaling needs s > 0
  NotSaddle,        // shooting requested from a non-saddle equilibrium
  SolverBreakdown,  // zero pivot in a linear solve
  InvalidConfig,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ucshock
