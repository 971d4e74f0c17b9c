#include "eqw/prony.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "eqw/bounds.hpp"
#include "extended.hpp"

namespace eqw {

SampleTable::SampleTable(ComplexVector values) : values_(std::move(values)) {
  require(values_.size() >= 2, ErrorKind::InvalidArgument, "table needs g(0)..g(n) with n >= 1");
  for (const Complex& v : values_)
    require(std::isfinite(v.real()) && std::isfinite(v.imag()), ErrorKind::InvalidArgument,
            "table values must be finite");
  if (values_[0] == Complex{0.0, 0.0}) fail(ErrorKind::ZeroG0, "g(0) must be nonzero");
}

SampleTable SampleTable::quotients(ComplexVector numerators, std::vector<double> denominators) {
  require(numerators.size() == denominators.size(), ErrorKind::InvalidArgument,
          "numerator and denominator counts differ");
  ComplexVector values(numerators.size());
  for (std::size_t m = 0; m < values.size(); ++m) {
    require(denominators[m] != 0.0 && std::isfinite(denominators[m]), ErrorKind::InvalidArgument,
            "table denominators must be finite and nonzero");
    values[m] = numerators[m] / denominators[m];
  }
  SampleTable out(std::move(values));
  out.numerators_ = std::move(numerators);
  out.denominators_ = std::move(denominators);
  return out;
}

MomentSequence SampleTable::moments() const {
  const int n = this->n();
  const double nd = static_cast<double>(n);
  if (!denominators_.empty() && numerators_[0].imag() == 0.0) {
    // s_m = n p_m q_0 / (p_0 q_m)
    ComplexVector num(static_cast<std::size_t>(n));
    std::vector<double> den(static_cast<std::size_t>(n));
    for (int m = 1; m <= n; ++m) {
      num[static_cast<std::size_t>(m - 1)] = nd * denominators_[0] * numerators_[static_cast<std::size_t>(m)];
      den[static_cast<std::size_t>(m - 1)] = numerators_[0].real() * denominators_[static_cast<std::size_t>(m)];
    }
    return MomentSequence::quotients(std::move(num), std::move(den));
  }
  ComplexVector s(static_cast<std::size_t>(n));
  for (int m = 1; m <= n; ++m) s[static_cast<std::size_t>(m - 1)] = (nd / values_[0]) * values_[static_cast<std::size_t>(m)];
  return MomentSequence(std::move(s));
}

Frequency Frequency::log_of(Complex base) {
  if (base == Complex{0.0, 0.0}) return neg_infinity();
  return Frequency(std::log(base));
}

Complex Frequency::value() const {
  if (neg_inf_) fail(ErrorKind::InvalidArgument, "frequency is -infinity");
  return value_;
}

ExpInterpolant::ExpInterpolant(Complex mu, NodeSet bases, std::optional<Grid> grid, double moment_residual,
                               std::shared_ptr<const detail::WideNodes> wide)
    : mu_(mu), bases_(std::move(bases)), grid_(grid), moment_residual_(moment_residual), wide_(std::move(wide)) {
  require(!wide_ || wide_->values.size() == bases_.values().size(), ErrorKind::InvalidArgument,
          "extended bases must match the bases");
  require(mu_ != Complex{0.0, 0.0}, ErrorKind::InvalidArgument, "mu must be nonzero");
  if (grid_) {
    require(std::isfinite(grid_->a) && std::isfinite(grid_->b), ErrorKind::InvalidArgument,
            "grid ends must be finite");
    if (!(grid_->b > grid_->a)) fail(ErrorKind::DegenerateInterval, "grid needs b > a");
  }
  frequencies_.reserve(static_cast<std::size_t>(bases_.n()));
  for (const Complex& l : bases_.values()) frequencies_.push_back(Frequency::log_of(l));
}

Complex ExpInterpolant::to_unit(Complex z) const noexcept {
  if (!grid_) return z;
  return (z - grid_->a) * (static_cast<double>(n()) / (grid_->b - grid_->a));
}

ExpInterpolant solve_equal_weight_prony(const SampleTable& g, const MomentOptions& options) {
  NewtonSolution sol = solve_newton_moment_problem(g.moments(), options);
  return ExpInterpolant(g[0], std::move(sol.nodes), std::nullopt, sol.moment_residual, std::move(sol.wide));
}

namespace {

void check_zero_bases(const ExpInterpolant& H, std::span<const Complex> unit_points) {
  const bool has_zero = std::any_of(H.frequencies().begin(), H.frequencies().end(),
                                    [](const Frequency& f) { return f.is_neg_infinity(); });
  if (!has_zero) return;
  for (const Complex& z : unit_points)
    if (z != Complex{0.0, 0.0} && !(z.real() > 0.0))
      fail(ErrorKind::ZeroBaseNonpositive, "zero base raised to a power with Re z <= 0");
}

}  // namespace

Complex evaluate_exp(const ExpInterpolant& H, Complex z) {
  Complex out;
  evaluate_exp(H, std::span<const Complex>(&z, 1), std::span<Complex>(&out, 1), kernels::Exec::Serial);
  return out;
}

void evaluate_exp(const ExpInterpolant& H, std::span<const Complex> points, std::span<Complex> out,
                  kernels::Exec exec) {
  require(points.size() == out.size(), ErrorKind::InvalidArgument, "output size must match points");
  ComplexVector unit(points.size());
  std::transform(points.begin(), points.end(), unit.begin(), [&H](Complex z) { return H.to_unit(z); });
  check_zero_bases(H, unit);

  if (H.wide()) {
    ComplexVector branch;
    for (const Frequency& f : H.frequencies()) branch.push_back(f.is_neg_infinity() ? Complex{} : f.value());
    detail::wide_exp_sum(H.mu(), *H.wide(), branch, unit, out, kernels::use_parallel(exec, unit.size() * 64));
    return;
  }

  // node_sum multiplies node by point; pass log l_k as the node and exp as the
  // kernel. A zero base becomes a marker node whose term is 0 (Re z > 0) or 1 (z = 0).
  ComplexVector logs;
  logs.reserve(H.frequencies().size());
  std::size_t zeros = 0;
  for (const Frequency& f : H.frequencies()) {
    if (f.is_neg_infinity())
      ++zeros;
    else
      logs.push_back(f.value());
  }
  const Complex weight = H.mu() / static_cast<double>(H.n());
  kernels::node_sum(exec, [](Complex w) noexcept { return std::exp(w); }, weight,
                    std::span<const Complex>(logs), std::span<const Complex>(unit), out);
  if (zeros > 0)
    for (std::size_t i = 0; i < unit.size(); ++i)
      if (unit[i] == Complex{0.0, 0.0}) out[i] += weight * static_cast<double>(zeros);
}

ExpInterpolant rescale_to_grid(std::span<const Complex> g_values, double a, double b,
                               const MomentOptions& options) {
  require(std::isfinite(a) && std::isfinite(b), ErrorKind::InvalidArgument, "grid ends must be finite");
  if (!(b > a)) fail(ErrorKind::DegenerateInterval, "grid needs b > a");
  const SampleTable table(ComplexVector(g_values.begin(), g_values.end()));
  const ExpInterpolant unit = solve_equal_weight_prony(table, options);
  ComplexVector bases(unit.bases().values().begin(), unit.bases().values().end());
  return ExpInterpolant(unit.mu(), NodeSet(std::move(bases)), Grid{a, b}, unit.moment_residual(), unit.wide());
}

BoundReport node_bounds_prony(const SampleTable& g, const PronyHypothesis& hypothesis) {
  const int n = g.n();
  require(n >= 2, ErrorKind::InvalidArgument, "node bounds need n >= 2");
  BoundReport report;
  report.n = n;
  report.epsilon_n = epsilon_closed(n);
  const double base = std::abs(g[0]) / n;
  double gamma = 0.0;
  if (const auto* geo = std::get_if<GeometricHypothesis>(&hypothesis)) {
    report.a = geo->a;
  } else {
    const auto& ar = std::get<ArithmeticHypothesis>(hypothesis);
    require(ar.gamma > 0.0, ErrorKind::InvalidArgument, "gamma must be positive");
    report.a = ar.a;
    gamma = ar.gamma;
  }
  require(report.a > 0.0 && std::isfinite(report.a), ErrorKind::InvalidArgument, "a must be positive");
  report.gamma = gamma;

  double slack = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= n; ++m) {
    double allowed = base * std::pow(report.a, m);
    if (gamma > 0.0) allowed *= gamma * m;
    const double value = std::abs(g[m]);
    // A few ulps of room so that tables built from the bound itself pass.
    if (value > allowed * (1.0 + 1e-12))
      fail(ErrorKind::HypothesisFailed,
           "|g(" + std::to_string(m) + ")| exceeds the declared hypothesis");
    slack = std::min(slack, (allowed - value) / base);
  }
  report.hypothesis_slack = slack;

  if (gamma == 0.0) {
    report.max_base_bound = (1.0 + report.epsilon_n) * report.a;
    report.re_lambda_bound = std::log(report.a) + report.epsilon_n;
  } else {
    report.max_base_bound = (1.0 + 2.0 * gamma) * report.a;
    report.re_lambda_bound = std::log(report.a) + std::log1p(2.0 * gamma);
  }
  return report;
}

WeightedMoments::WeightedMoments(ComplexVector moments) : moments_(std::move(moments)) {
  require(!moments_.empty() && moments_.size() % 2 == 0, ErrorKind::InvalidArgument,
          "weighted moments need s_0..s_(2n-1)");
  for (const Complex& v : moments_)
    require(std::isfinite(v.real()) && std::isfinite(v.imag()), ErrorKind::InvalidArgument,
            "moments must be finite");
}

std::string_view to_string(UnsolvableReason reason) noexcept {
  switch (reason) {
    case UnsolvableReason::DegreeDeficient: return "DegreeDeficient";
    case UnsolvableReason::RepeatedRoots: return "RepeatedRoots";
  }
  return "unknown";
}

ClassicalResult solve_classical_prony(const WeightedMoments& s, const ClassicalOptions& options) {
  using Mat = Eigen::MatrixXcd;
  using Vec = Eigen::VectorXcd;
  const int n = s.n();

  Mat hankel(n, n);
  Vec rhs(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) hankel(i, j) = s[i + j];
    rhs(i) = -s[i + n];
  }
  const Eigen::JacobiSVD<Mat> svd(hankel, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double ratio = sv(0) > 0.0 ? sv(n - 1) / sv(0) : 0.0;
  if (ratio < options.rank_tol)
    return Unsolvable{UnsolvableReason::DegreeDeficient, ratio,
                      "Hankel determinant vanishes: generating polynomial has degree < n"};

  const Vec q = svd.solve(rhs);
  ComplexVector coeffs(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j < n; ++j) coeffs[static_cast<std::size_t>(j)] = q(j);
  coeffs[static_cast<std::size_t>(n)] = 1.0;
  const RootResult roots = find_roots(ComplexPolynomial(std::move(coeffs)), options.roots);
  const ComplexVector& l = roots.roots;

  double top = 1.0;
  for (const Complex& z : l) top = std::max(top, std::abs(z));
  double closest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) closest = std::min(closest, std::abs(l[static_cast<std::size_t>(i)] - l[static_cast<std::size_t>(j)]) / top);
  if (n >= 2 && closest < options.separation_tol)
    return Unsolvable{UnsolvableReason::RepeatedRoots, closest,
                      "generating polynomial has repeated roots"};

  Mat vander(n, n);
  Vec head(n);
  for (int k = 0; k < n; ++k) {
    Complex power{1.0, 0.0};
    for (int m = 0; m < n; ++m) {
      vander(m, k) = power;
      power *= l[static_cast<std::size_t>(k)];
    }
  }
  for (int m = 0; m < n; ++m) head(m) = s[m];
  const Vec mu = vander.colPivHouseholderQr().solve(head);

  double scale = 1.0;
  for (const Complex& v : s.values()) scale = std::max(scale, std::abs(v));
  double worst = 0.0;
  ComplexVector power(static_cast<std::size_t>(n), Complex{1.0, 0.0});
  for (int m = 0; m < 2 * n; ++m) {
    Complex acc{0.0, 0.0};
    for (int k = 0; k < n; ++k) {
      acc += mu(k) * power[static_cast<std::size_t>(k)];
      power[static_cast<std::size_t>(k)] *= l[static_cast<std::size_t>(k)];
    }
    worst = std::max(worst, std::abs(acc - s[m]) / scale);
  }
  if (!(worst <= options.residual_tol))
    fail(ErrorKind::IllConditioned, "Vandermonde fit misses the moments (relative residual " +
                                        std::to_string(worst) + ")");

  ClassicalSolution out;
  out.bases = l;
  out.weights.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out.weights[static_cast<std::size_t>(k)] = mu(k);
  for (const Complex& z : l) out.frequencies.push_back(Frequency::log_of(z));
  out.residual = worst;
  return out;
}

}  // namespace eqw
