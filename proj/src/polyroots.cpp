#include "eqw/polyroots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace eqw {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double max_scaled_residual(const ComplexPolynomial& p, std::span<const Complex> roots) {
  double worst = 0.0;
  for (const Complex& r : roots) {
    double res = kernels::newton_step(p.coefficients(), r).residual;
    // Also the plain Horner value, which is what callers will measure.
    const double direct = std::abs(p(r)) / p.residual_scale(r);
    if (std::isfinite(direct) && std::isfinite(p.residual_scale(r))) res = std::max(res, direct);
    worst = std::max(worst, std::isfinite(res) ? res : std::numeric_limits<double>::infinity());
  }
  return worst;
}

// Radix-2 diagonal balancing of a dense matrix (row/column norm equalisation).
// Powers of two keep the similarity transform exact.
void balance(Eigen::MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  bool done = false;
  for (int pass = 0; pass < 100 && !done; ++pass) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

// Polishes roots that are well separated from every other root. Members of
// a cluster are left alone: at the noise floor an iteration would scatter
// them and destroy the symmetric functions the eigenvalues preserve.
int polish_isolated(const ComplexPolynomial& p, ComplexVector& roots, const RootOptions& options,
                    int budget) {
  const std::size_t n = roots.size();
  std::vector<unsigned char> frozen(n, 0);
  ComplexVector corrections(n);
  std::vector<double> residuals(n);
  int sweeps = 0;
  for (; sweeps < budget; ++sweeps) {
    kernels::aberth_sweep(options.exec, p.coefficients(), roots, frozen, corrections,
                          residuals);
    bool moved = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (frozen[j] != 0) continue;
      const Complex step = corrections[j];
      if (step == Complex{0.0, 0.0}) {
        frozen[j] = 1;
        continue;
      }
      double separation = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i)
        if (i != j) separation = std::min(separation, std::abs(roots[j] - roots[i]));
      if (!(std::abs(step) <= 1e-2 * separation)) {
        frozen[j] = 1;
        continue;
      }
      const Complex candidate = roots[j] - step;
      const double candidate_res = kernels::newton_step(p.coefficients(), candidate).residual;
      if (!finite(candidate) || !(candidate_res <= residuals[j])) {
        frozen[j] = 1;
        continue;
      }
      if (std::abs(step) <= 4.0 * kEps * std::abs(roots[j])) frozen[j] = 1;
      roots[j] = candidate;
      moved = true;
    }
    if (!moved) break;
  }
  return sweeps;
}

bool companion_roots(const ComplexPolynomial& p, ComplexVector& roots) {
  const int n = p.degree();
  const auto c = p.coefficients();
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<std::size_t>(i)] / p.leading();
  balance(companion);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) return false;
  roots.assign(solver.eigenvalues().begin(), solver.eigenvalues().end());
  return std::all_of(roots.begin(), roots.end(), finite);
}

int aberth_roots(const ComplexPolynomial& p, ComplexVector& roots, const RootOptions& options) {
  const std::size_t n = static_cast<std::size_t>(p.degree());
  const auto c = p.coefficients();
  // Fujiwara's bound: unlike the Cauchy radius 1 + max|c_k/c_n| it stays of
  // the order of the largest root when the coefficients are large.
  double radius = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    double q = std::abs(c[n - k] / p.leading());
    if (k == n) q *= 0.5;
    radius = std::max(radius, std::pow(q, 1.0 / static_cast<double>(k)));
  }
  radius = radius > 0.0 ? 2.0 * radius : 1.0;

  constexpr double phase = 0.4;
  roots.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    roots[j] = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                          static_cast<double>(n) + phase);

  std::vector<unsigned char> frozen(n, 0);
  ComplexVector corrections(n);
  std::vector<double> residuals(n);
  double best_step = std::numeric_limits<double>::infinity();
  int stalled = 0;
  int sweep = 0;
  for (; sweep < options.max_iter; ++sweep) {
    kernels::aberth_sweep(options.exec, c, roots, frozen, corrections, residuals);
    double max_res = 0.0;
    double max_step = 0.0;
    bool all_frozen = true;
    for (std::size_t j = 0; j < n; ++j) {
      max_res = std::max(max_res, residuals[j]);
      if (frozen[j] != 0) continue;
      const double step = std::abs(corrections[j]);
      roots[j] -= corrections[j];
      max_step = std::max(max_step, step / std::max(1.0, std::abs(roots[j])));
      if (step <= 4.0 * kEps * std::abs(roots[j]) || residuals[j] == 0.0)
        frozen[j] = 1;
      else
        all_frozen = false;
    }
    if (all_frozen) break;
    if (max_res <= options.tol) {
      // Converged in residual; keep going only while the steps still shrink.
      if (max_step < 0.5 * best_step) {
        best_step = max_step;
        stalled = 0;
      } else if (++stalled >= 3) {
        break;
      }
    }
  }
  return sweep + 1;
}

}  // namespace

ComplexPolynomial::ComplexPolynomial(ComplexVector coefficients) : coeffs_(std::move(coefficients)) {
  require(!coeffs_.empty(), ErrorKind::DegenerateInput, "polynomial has no coefficients");
  require(std::all_of(coeffs_.begin(), coeffs_.end(), finite), ErrorKind::DegenerateInput,
          "polynomial has non-finite coefficients");
  require(std::any_of(coeffs_.begin(), coeffs_.end(),
                      [](Complex z) { return z != Complex{0.0, 0.0}; }),
          ErrorKind::DegenerateInput, "zero polynomial");
  require(coeffs_.back() != Complex{0.0, 0.0}, ErrorKind::DegenerateInput,
          "leading coefficient is zero");
}

Complex ComplexPolynomial::operator()(Complex z) const noexcept {
  Complex acc = coeffs_.back();
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * z + coeffs_[k];
  return acc;
}

double ComplexPolynomial::coefficient_scale() const noexcept {
  double s = 1.0;
  for (const Complex& c : coeffs_) s = std::max(s, std::abs(c));
  return s;
}

double ComplexPolynomial::residual_scale(Complex z) const noexcept {
  const double za = std::abs(z);
  double bound = std::abs(coeffs_.back());
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) bound = bound * za + std::abs(coeffs_[k]);
  return bound;
}

bool canonical_less(const Complex& a, const Complex& b) noexcept {
  if (a.real() != b.real()) return a.real() < b.real();
  if (a.imag() != b.imag()) return a.imag() < b.imag();
  return std::abs(a) < std::abs(b);
}

void canonical_sort(ComplexVector& roots) { std::sort(roots.begin(), roots.end(), canonical_less); }

ComplexPolynomial polynomial_from_roots(std::span<const Complex> roots) {
  ComplexVector c{Complex{1.0, 0.0}};
  for (const Complex& r : roots) {
    ComplexVector next(c.size() + 1, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return ComplexPolynomial(std::move(c));
}

RootResult find_roots(const ComplexPolynomial& p, const RootOptions& options) {
  require(p.degree() >= 1, ErrorKind::DegenerateInput, "polynomial degree must be at least 1");
  require(options.tol > 0.0, ErrorKind::InvalidArgument, "tolerance must be positive");
  require(options.max_iter >= 1, ErrorKind::InvalidArgument, "max_iter must be at least 1");

  const auto c = p.coefficients();
  std::size_t zeros = 0;
  while (c[zeros] == Complex{0.0, 0.0}) ++zeros;

  RootResult result;
  result.roots.assign(zeros, Complex{0.0, 0.0});
  const std::size_t rest = static_cast<std::size_t>(p.degree()) - zeros;
  if (rest == 1) {
    result.roots.push_back(-c[zeros] / c[zeros + 1]);
  } else if (rest > 1) {
    const ComplexPolynomial reduced(ComplexVector(c.begin() + static_cast<std::ptrdiff_t>(zeros), c.end()));
    ComplexVector found;
    bool have = false;
    if (options.method == RootMethod::Companion && companion_roots(reduced, found)) {
      result.iterations = polish_isolated(reduced, found, options, std::min(options.max_iter, 64));
      have = true;
    }
    if (!have) result.iterations = aberth_roots(reduced, found, options);
    result.roots.insert(result.roots.end(), found.begin(), found.end());
  }

  canonical_sort(result.roots);
  result.max_residual = max_scaled_residual(p, result.roots);
  if (!(result.max_residual <= options.tol))
    throw NonConvergence("root residual " + std::to_string(result.max_residual) +
                             " above tolerance " + std::to_string(options.tol),
                         result.roots, result.max_residual);
  return result;
}

}  // namespace eqw
