#include "eqw/apps.hpp"

#include <cmath>
#include <vector>

namespace eqw {

std::string_view to_string(QuadratureVariant v) noexcept {
  return v == QuadratureVariant::Standard ? "standard" : "shifted";
}

MomentSequence chebyshev_moments(int n, QuadratureVariant variant) {
  require(n >= 1, ErrorKind::InvalidArgument, "n must be at least 1");
  ComplexVector num(static_cast<std::size_t>(n));
  std::vector<double> den(static_cast<std::size_t>(n));
  for (int m = 1; m <= n; ++m) {
    const bool odd = m % 2 == 1;
    num[static_cast<std::size_t>(m - 1)] =
        (variant == QuadratureVariant::Standard && odd) ? 0.0 : static_cast<double>(n);
    den[static_cast<std::size_t>(m - 1)] = m + 1.0;
  }
  return MomentSequence::quotients(std::move(num), std::move(den));
}

QuadratureRule chebyshev_nodes(int n, QuadratureVariant variant, const MomentOptions& options) {
  NewtonSolution sol = solve_newton_moment_problem(chebyshev_moments(n, variant), options);
  const double weight = (variant == QuadratureVariant::Standard ? 2.0 : 1.0) / n;
  return QuadratureRule{std::move(sol.nodes), weight, variant, n, sol.moment_residual};
}

bool all_nodes_real(const NodeSet& nodes, double tol) {
  for (const Complex& l : nodes.values())
    if (std::abs(l.imag()) > tol * std::max(1.0, std::abs(l))) return false;
  return true;
}

Integrand Integrand::complex(std::function<Complex(Complex)> f) {
  Integrand out;
  out.complex_ = std::move(f);
  return out;
}

Integrand Integrand::real_only(std::function<double(double)> f) {
  Integrand out;
  out.real_ = std::move(f);
  return out;
}

Complex Integrand::operator()(Complex w) const {
  if (real_) return real_(w.real());
  return complex_(w);
}

Complex integrate(const QuadratureRule& rule, const Integrand& h, double x, kernels::Exec exec) {
  require(x > 0.0 && std::isfinite(x), ErrorKind::InvalidArgument, "x must be positive");
  if (!h.accepts_complex() && !all_nodes_real(rule.nodes, 1e-12))
    fail(ErrorKind::RealOnlyKernel, "rule has complex nodes but the integrand is real only");
  const Complex point{x, 0.0};
  Complex out;
  kernels::node_sum(exec, h, rule.weight * x, rule.nodes.values(), std::span<const Complex>(&point, 1),
                    std::span<Complex>(&out, 1));
  return out;
}

double DiffFormula::envelope(double z_abs) const {
  return remainder_envelope_b(t, gamma, a, n, z_abs);
}

Complex DiffFormula::apply(const std::function<Complex(Complex)>& h, Complex z) const {
  Complex acc{0.0, 0.0};
  for (const Complex& l : nodes.values()) acc += h(l * z);
  return t * (-h(Complex{0.0, 0.0}) + acc / static_cast<double>(n));
}

DiffFormula diff_formula(double t, int n, const MomentOptions& options) {
  require(n >= 2, ErrorKind::InvalidArgument, "diff formula needs n >= 2");
  require(t >= 1.0 && std::isfinite(t), ErrorKind::InvalidArgument, "diff formula needs t >= 1");
  ComplexVector num(static_cast<std::size_t>(n));
  std::vector<double> den(static_cast<std::size_t>(n), t);
  for (int m = 1; m <= n; ++m) num[static_cast<std::size_t>(m - 1)] = static_cast<double>(n) * m;
  NewtonSolution sol =
      solve_newton_moment_problem(MomentSequence::quotients(std::move(num), std::move(den)), options);
  const double a = std::pow(t, -1.0 / n);
  return DiffFormula{t, n, t, std::move(sol.nodes), (2.0 * n + 1.0) * a, static_cast<double>(n), a,
                     sol.moment_residual};
}

ExpInterpolant exp_sum_for_reciprocal(int n, const MomentOptions& options) {
  require(n >= 1, ErrorKind::InvalidArgument, "n must be at least 1");
  ComplexVector num(static_cast<std::size_t>(n) + 1, Complex{1.0, 0.0});
  std::vector<double> den(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) den[static_cast<std::size_t>(m)] = m + 1.0;
  return solve_equal_weight_prony(SampleTable::quotients(std::move(num), std::move(den)), options);
}

}  // namespace eqw
