// Shared value types and the error model used across the library.
#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eqw {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Default upper limit on the problem size n for the moment -> root pipeline.
/// Beyond it the moment -> node map is conditioned badly enough that even the
/// 1024-bit tier stops settling.
inline constexpr int kDefaultMaxN = 60;

/// Magnitude beyond which an elementary symmetric polynomial is treated as
/// an overflow of the Newton-Girard recurrence.
inline constexpr double kSigmaOverflow = 1e150;

enum class ErrorKind {
  // input validation
  InvalidArgument,
  DegenerateInput,
  ZeroF0,
  KernelGap,
  ZeroG0,
  DegenerateInterval,
  EvenN,
  HypothesisFailed,
  OutsideDisk,
  PoleHit,
  RadiusExceeded,
  ZeroBaseNonpositive,
  RealOnlyKernel,
  // numerical failure
  NonConvergence,
  ConditioningError,
  IllConditioned,
  Unsolvable,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for the kinds that signal a numerical failure rather than bad input.
bool is_numerical(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when the root finder misses its residual target. Carries the
/// best roots found so far and the residual they achieve.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, ComplexVector roots, double residual)
      : Error(ErrorKind::NonConvergence, what), roots_(std::move(roots)), residual_(residual) {}

  const ComplexVector& roots() const noexcept { return roots_; }
  double residual() const noexcept { return residual_; }

 private:
  ComplexVector roots_;
  double residual_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const char* what) {
  if (!condition) fail(kind, what);
}

}  // namespace eqw
