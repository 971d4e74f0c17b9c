// Pade (multiple) interpolation at z = 0 by equal-weight sums
//
//   H_n(z; h) = (mu/n) sum_k h(l_k z),   f(z) - H_n(z; h) = O(z^(n+1)).
#pragma once

#include <limits>
#include <span>
#include <variant>

#include "eqw/kernels.hpp"
#include "eqw/powersums.hpp"

namespace eqw {

/// Taylor coefficients c_0..c_M; M is the truncation order.
class TaylorSeries {
 public:
  explicit TaylorSeries(ComplexVector coefficients);

  static TaylorSeries exp(int order);
  static TaylorSeries cos(int order);
  /// 1/(z-1) = -sum z^m.
  static TaylorSeries geometric(int order);

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const Complex& operator[](int m) const { return coeffs_.at(static_cast<std::size_t>(m)); }
  std::span<const Complex> coefficients() const noexcept { return coeffs_; }
  TaylorSeries truncated(int order) const;

  /// Horner evaluation of the truncated sum.
  Complex operator()(Complex z) const noexcept;

  friend bool operator==(const TaylorSeries&, const TaylorSeries&) = default;

 private:
  ComplexVector coeffs_;
};

/// r_m = f_m / h_m, with r_m = 0 whenever f_m = 0. Index 0..n.
class RatioSequence {
 public:
  explicit RatioSequence(ComplexVector ratios);

  int n() const noexcept { return static_cast<int>(ratios_.size()) - 1; }
  const Complex& operator[](int m) const { return ratios_.at(static_cast<std::size_t>(m)); }
  std::span<const Complex> values() const noexcept { return ratios_; }

 private:
  ComplexVector ratios_;
};

struct ExpKernel {
  friend bool operator==(ExpKernel, ExpKernel) = default;
};

/// h(z) = 1/(z-1).
struct GeometricKernel {
  friend bool operator==(GeometricKernel, GeometricKernel) = default;
};

/// A kernel known only through its Taylor series, trusted for |w| <= radius.
struct TaylorKernel {
  TaylorSeries series;
  double radius = std::numeric_limits<double>::infinity();
  friend bool operator==(const TaylorKernel&, const TaylorKernel&) = default;
};

using Kernel = std::variant<ExpKernel, GeometricKernel, TaylorKernel>;

/// Taylor coefficients h_0..h_order. Throws InvalidArgument if a TaylorKernel
/// is shorter than requested.
TaylorSeries kernel_series(const Kernel& h, int order);

/// h(w). PoleHit for the geometric kernel within 1e-12 of w = 1,
/// RadiusExceeded for a TaylorKernel beyond its radius.
Complex evaluate_kernel(const Kernel& h, Complex w);

/// Value of a TaylorKernel truncation together with a bound on the
/// neglected tail, assuming the coefficients decay like their largest
/// radius-scaled magnitude. Exact kernels report a zero tail.
struct KernelValue {
  Complex value;
  double tail_bound;
};
KernelValue evaluate_kernel_with_tail(const Kernel& h, Complex w);

class PadeInterpolant {
 public:
  /// Throws InvalidArgument if mu = 0.
  /// `wide`, when given, holds the same nodes beyond double (escalated solves)
  /// and is used for evaluation.
  PadeInterpolant(Complex mu, NodeSet nodes, Kernel kernel, double moment_residual = 0.0,
                  std::shared_ptr<const detail::WideNodes> wide = nullptr);

  Complex mu() const noexcept { return mu_; }
  const NodeSet& nodes() const noexcept { return nodes_; }
  const Kernel& kernel() const noexcept { return kernel_; }
  int n() const noexcept { return nodes_.n(); }
  double moment_residual() const noexcept { return moment_residual_; }
  const std::shared_ptr<const detail::WideNodes>& wide() const noexcept { return wide_; }

 private:
  Complex mu_;
  NodeSet nodes_;
  Kernel kernel_;
  double moment_residual_;
  std::shared_ptr<const detail::WideNodes> wide_;
};

/// Ratios r_0..r_n. Throws ZeroF0 for f_0 = 0 (factor out z^l first) and
/// KernelGap when some h_m = 0 while f_m != 0.
RatioSequence check_compatibility(const TaylorSeries& f, const TaylorSeries& h, int n);

/// mu = r_0 and the nodes solving S_m = (n/r_0) r_m, m = 1..n.
PadeInterpolant solve_pade(const TaylorSeries& f, const Kernel& h, int n,
                           const MomentOptions& options = {});

/// (mu/n) sum_k h(l_k z).
Complex evaluate(const PadeInterpolant& H, Complex z);

/// Batch evaluation; out.size() must equal points.size().
void evaluate(const PadeInterpolant& H, std::span<const Complex> points, std::span<Complex> out,
              kernels::Exec exec = kernels::Exec::Auto);

/// Coefficient m is h_m (mu/n) S_m, with S_0 = n.
TaylorSeries taylor_of_interpolant(const PadeInterpolant& H, int up_to);

/// 2|r_0| n^2 |az|^(n+1) / (1 - (1+eps_n) a|z|), eps_n in closed form.
/// Caller attests |r_m| <= (|r_0|/n) a^m for m <= n and |h_m| <= 1 for m > n.
/// OutsideDisk unless |z| < 1/((1+eps_n) a).
double remainder_envelope_a(double r0_abs, double a, int n, double z_abs);

/// 2|r_0| |(1+2 gamma) a z|^(n+1) / (1 - (1+2 gamma) a|z|)^2.
/// Caller attests |r_m| <= (|r_0|/n) gamma m a^m and |h_m| <= 1 for m > n.
/// OutsideDisk unless |z| < 1/((1+2 gamma) a).
double remainder_envelope_b(double r0_abs, double gamma, double a, int n, double z_abs);

}  // namespace eqw
