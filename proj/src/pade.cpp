#include "eqw/pade.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "eqw/bounds.hpp"
#include "extended.hpp"

namespace eqw {

TaylorSeries::TaylorSeries(ComplexVector coefficients) : coeffs_(std::move(coefficients)) {
  require(!coeffs_.empty(), ErrorKind::InvalidArgument, "Taylor series needs at least c_0");
  for (const Complex& c : coeffs_)
    require(std::isfinite(c.real()) && std::isfinite(c.imag()), ErrorKind::InvalidArgument,
            "Taylor coefficients must be finite");
}

TaylorSeries TaylorSeries::exp(int order) {
  require(order >= 0, ErrorKind::InvalidArgument, "order must be nonnegative");
  ComplexVector c(static_cast<std::size_t>(order) + 1);
  double term = 1.0;
  for (int m = 0; m <= order; ++m) {
    if (m > 0) term /= m;
    c[static_cast<std::size_t>(m)] = term;
  }
  return TaylorSeries(std::move(c));
}

TaylorSeries TaylorSeries::cos(int order) {
  TaylorSeries e = exp(order);
  ComplexVector c(e.coefficients().begin(), e.coefficients().end());
  for (int m = 0; m <= order; ++m) {
    auto& cm = c[static_cast<std::size_t>(m)];
    if (m % 2 == 1)
      cm = 0.0;
    else if (m % 4 == 2)
      cm = -cm;
  }
  return TaylorSeries(std::move(c));
}

TaylorSeries TaylorSeries::geometric(int order) {
  require(order >= 0, ErrorKind::InvalidArgument, "order must be nonnegative");
  return TaylorSeries(ComplexVector(static_cast<std::size_t>(order) + 1, Complex{-1.0, 0.0}));
}

TaylorSeries TaylorSeries::truncated(int order) const {
  require(order >= 0 && order <= this->order(), ErrorKind::InvalidArgument,
          "truncation order out of range");
  return TaylorSeries(ComplexVector(coeffs_.begin(), coeffs_.begin() + order + 1));
}

Complex TaylorSeries::operator()(Complex z) const noexcept {
  Complex acc = coeffs_.back();
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * z + coeffs_[k];
  return acc;
}

RatioSequence::RatioSequence(ComplexVector ratios) : ratios_(std::move(ratios)) {
  require(!ratios_.empty(), ErrorKind::InvalidArgument, "ratio sequence needs r_0");
  require(ratios_[0] != Complex{0.0, 0.0}, ErrorKind::InvalidArgument, "r_0 must be nonzero");
}

TaylorSeries kernel_series(const Kernel& h, int order) {
  if (std::holds_alternative<ExpKernel>(h)) return TaylorSeries::exp(order);
  if (std::holds_alternative<GeometricKernel>(h)) return TaylorSeries::geometric(order);
  const TaylorKernel& t = std::get<TaylorKernel>(h);
  if (t.series.order() < order)
    fail(ErrorKind::InvalidArgument, "kernel series has order " + std::to_string(t.series.order()) +
                                         ", need " + std::to_string(order));
  return t.series.truncated(order);
}

namespace {

constexpr double kPoleTolerance = 1e-12;

void check_argument(const Kernel& h, Complex w) {
  if (std::holds_alternative<GeometricKernel>(h)) {
    if (std::abs(w - 1.0) <= kPoleTolerance)
      fail(ErrorKind::PoleHit, "argument hits the pole of 1/(z-1)");
  } else if (const auto* t = std::get_if<TaylorKernel>(&h)) {
    if (std::abs(w) > t->radius) fail(ErrorKind::RadiusExceeded, "argument outside kernel radius");
  }
}

// Argument already validated.
Complex kernel_value(const Kernel& h, Complex w) noexcept {
  if (std::holds_alternative<ExpKernel>(h)) return std::exp(w);
  if (std::holds_alternative<GeometricKernel>(h)) return 1.0 / (w - 1.0);
  return std::get<TaylorKernel>(h).series(w);
}

void wide_kernel_sum(const PadeInterpolant& H, std::span<const Complex> points, std::span<Complex> out,
                     bool parallel) {
  using R = detail::WideReal;
  using C = detail::WideComplex;
  const detail::WideNodes& nodes = *H.wide();
  if (std::holds_alternative<ExpKernel>(H.kernel())) {
    const auto h = [](const C& w) {
      const R r = boost::multiprecision::exp(w.re);
      return C{r * boost::multiprecision::cos(w.im), r * boost::multiprecision::sin(w.im)};
    };
    detail::wide_node_sum(H.mu(), nodes, h, points, out, parallel);
  } else if (std::holds_alternative<GeometricKernel>(H.kernel())) {
    const auto h = [](const C& w) { return C{R(1), R(0)} / (w - C{R(1), R(0)}); };
    detail::wide_node_sum(H.mu(), nodes, h, points, out, parallel);
  } else {
    std::vector<C> c;
    for (const Complex& v : std::get<TaylorKernel>(H.kernel()).series.coefficients()) c.push_back(detail::lift<R>(v));
    const auto h = [&c](const C& w) {
      C acc = c.back();
      for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * w + c[k];
      return acc;
    };
    detail::wide_node_sum(H.mu(), nodes, h, points, out, parallel);
  }
}

}  // namespace

Complex evaluate_kernel(const Kernel& h, Complex w) {
  check_argument(h, w);
  return kernel_value(h, w);
}

KernelValue evaluate_kernel_with_tail(const Kernel& h, Complex w) {
  const Complex value = evaluate_kernel(h, w);
  const auto* t = std::get_if<TaylorKernel>(&h);
  if (t == nullptr) return KernelValue{value, 0.0};
  const auto c = t->series.coefficients();
  const int order = t->series.order();
  const double wa = std::abs(w);
  if (!std::isfinite(t->radius)) {
    // No radius: the last retained term is the only available estimate.
    return KernelValue{value, std::abs(c.back()) * std::pow(wa, order + 1)};
  }
  const double q = wa / t->radius;
  if (q >= 1.0) return KernelValue{value, std::numeric_limits<double>::infinity()};
  double scale = 0.0;  // max_m |c_m| radius^m
  for (int m = 0; m <= order; ++m)
    scale = std::max(scale, std::abs(c[static_cast<std::size_t>(m)]) * std::pow(t->radius, m));
  return KernelValue{value, scale * std::pow(q, order + 1) / (1.0 - q)};
}

PadeInterpolant::PadeInterpolant(Complex mu, NodeSet nodes, Kernel kernel, double moment_residual,
                                 std::shared_ptr<const detail::WideNodes> wide)
    : mu_(mu),
      nodes_(std::move(nodes)),
      kernel_(std::move(kernel)),
      moment_residual_(moment_residual),
      wide_(std::move(wide)) {
  require(mu_ != Complex{0.0, 0.0}, ErrorKind::InvalidArgument, "mu must be nonzero");
  require(!wide_ || wide_->values.size() == static_cast<std::size_t>(nodes_.n()), ErrorKind::InvalidArgument,
          "wide nodes must match the node count");
}

RatioSequence check_compatibility(const TaylorSeries& f, const TaylorSeries& h, int n) {
  require(n >= 1, ErrorKind::InvalidArgument, "n must be at least 1");
  require(f.order() >= n && h.order() >= n, ErrorKind::InvalidArgument,
          "f and h need Taylor coefficients through order n");
  if (f[0] == Complex{0.0, 0.0})
    fail(ErrorKind::ZeroF0, "f_0 = 0; divide f by its leading power of z first");
  ComplexVector r(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) {
    if (f[m] == Complex{0.0, 0.0}) {
      r[static_cast<std::size_t>(m)] = 0.0;
    } else if (h[m] == Complex{0.0, 0.0}) {
      fail(ErrorKind::KernelGap, "h_" + std::to_string(m) + " = 0 but f_" + std::to_string(m) + " != 0");
    } else {
      r[static_cast<std::size_t>(m)] = f[m] / h[m];
    }
  }
  return RatioSequence(std::move(r));
}

PadeInterpolant solve_pade(const TaylorSeries& f, const Kernel& h, int n, const MomentOptions& options) {
  require(n >= 1, ErrorKind::InvalidArgument, "n must be at least 1");
  const RatioSequence r = check_compatibility(f, kernel_series(h, n), n);
  const Complex r0 = r[0];
  ComplexVector s(static_cast<std::size_t>(n));
  for (int m = 1; m <= n; ++m) s[static_cast<std::size_t>(m - 1)] = (static_cast<double>(n) / r0) * r[m];
  NewtonSolution sol = solve_newton_moment_problem(MomentSequence(std::move(s)), options);
  return PadeInterpolant(r0, std::move(sol.nodes), h, sol.moment_residual, std::move(sol.wide));
}

Complex evaluate(const PadeInterpolant& H, Complex z) {
  Complex out;
  evaluate(H, std::span<const Complex>(&z, 1), std::span<Complex>(&out, 1), kernels::Exec::Serial);
  return out;
}

void evaluate(const PadeInterpolant& H, std::span<const Complex> points, std::span<Complex> out,
              kernels::Exec exec) {
  require(points.size() == out.size(), ErrorKind::InvalidArgument, "output size must match points");
  const auto nodes = H.nodes().values();
  for (const Complex& z : points)
    for (const Complex& l : nodes) check_argument(H.kernel(), l * z);
  const Kernel& h = H.kernel();
  if (H.wide()) {
    wide_kernel_sum(H, points, out, kernels::use_parallel(exec, points.size() * nodes.size() * 16));
    return;
  }
  const auto value = [&h](Complex w) noexcept { return kernel_value(h, w); };
  kernels::node_sum(exec, value, H.mu() / static_cast<double>(H.n()), nodes, points, out);
}

TaylorSeries taylor_of_interpolant(const PadeInterpolant& H, int up_to) {
  require(up_to >= 0, ErrorKind::InvalidArgument, "up_to must be nonnegative");
  const TaylorSeries h = kernel_series(H.kernel(), up_to);
  const ComplexVector S = power_sums_from_zero(H.nodes().values(), up_to);
  const Complex w = H.mu() / static_cast<double>(H.n());
  ComplexVector c(static_cast<std::size_t>(up_to) + 1);
  for (int m = 0; m <= up_to; ++m) c[static_cast<std::size_t>(m)] = h[m] * w * S[static_cast<std::size_t>(m)];
  return TaylorSeries(std::move(c));
}

namespace {

void check_envelope_args(double r0_abs, double a, int n, double z_abs) {
  require(n >= 2, ErrorKind::InvalidArgument, "envelope needs n >= 2");
  require(r0_abs >= 0.0 && a >= 0.0 && z_abs >= 0.0, ErrorKind::InvalidArgument,
          "envelope arguments must be nonnegative");
}

}  // namespace

double remainder_envelope_a(double r0_abs, double a, int n, double z_abs) {
  check_envelope_args(r0_abs, a, n, z_abs);
  const double q = (1.0 + epsilon_closed(n)) * a * z_abs;
  if (!(q < 1.0)) fail(ErrorKind::OutsideDisk, "|z| >= 1/((1+eps_n) a)");
  const double nn = static_cast<double>(n);
  return 2.0 * r0_abs * nn * nn * std::pow(a * z_abs, n + 1) / (1.0 - q);
}

double remainder_envelope_b(double r0_abs, double gamma, double a, int n, double z_abs) {
  check_envelope_args(r0_abs, a, n, z_abs);
  require(gamma > 0.0, ErrorKind::InvalidArgument, "gamma must be positive");
  const double q = (1.0 + 2.0 * gamma) * a * z_abs;
  if (!(q < 1.0)) fail(ErrorKind::OutsideDisk, "|z| >= 1/((1+2 gamma) a)");
  return 2.0 * r0_abs * std::pow(q, n + 1) / ((1.0 - q) * (1.0 - q));
}

}  // namespace eqw
