#include "eqw/kernels.hpp"

#include <cmath>

#ifdef EQW_HAVE_OPENMP
#include <omp.h>
#endif

namespace eqw::kernels {

bool openmp_enabled() noexcept {
#ifdef EQW_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() noexcept {
#ifdef EQW_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

NewtonStep newton_step(std::span<const Complex> coeffs, Complex z) noexcept {
  const std::size_t n = coeffs.size() - 1;
  const double za = std::abs(z);
  if (za <= 1.0) {
    Complex p = coeffs[n];
    Complex dp{0.0, 0.0};
    double bound = std::abs(coeffs[n]);
    for (std::size_t k = n; k-- > 0;) {
      dp = dp * z + p;
      p = p * z + coeffs[k];
      bound = bound * za + std::abs(coeffs[k]);
    }
    const double residual = bound > 0.0 ? std::abs(p) / bound : 0.0;
    if (dp == Complex{0.0, 0.0}) return {Complex{0.0, 0.0}, residual, p != Complex{0.0, 0.0}};
    return {p / dp, residual, false};
  }
  // P(z) = z^n Q(w) with w = 1/z and Q(w) = sum_k c_k w^(n-k).
  const Complex w = 1.0 / z;
  const double wa = 1.0 / za;
  Complex q = coeffs[0];
  Complex dq{0.0, 0.0};
  double bound = std::abs(coeffs[0]);
  for (std::size_t k = 1; k <= n; ++k) {
    dq = dq * w + q;
    q = q * w + coeffs[k];
    bound = bound * wa + std::abs(coeffs[k]);
  }
  const double residual = bound > 0.0 ? std::abs(q) / bound : 0.0;
  const Complex denom = static_cast<double>(n) * q - w * dq;
  if (denom == Complex{0.0, 0.0}) return {Complex{0.0, 0.0}, residual, q != Complex{0.0, 0.0}};
  return {z * q / denom, residual, false};
}

namespace {

// Weierstrass (Durand-Kerner) step p(z_j) / (c_n prod_{i != j} (z_j - z_i)).
Complex weierstrass_step(std::span<const Complex> coeffs, std::span<const Complex> roots,
                         std::size_t j) noexcept {
  const std::size_t n = coeffs.size() - 1;
  const Complex z = roots[j];
  Complex p = coeffs[n];
  for (std::size_t k = n; k-- > 0;) p = p * z + coeffs[k];
  Complex denom = coeffs[n];
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (i != j) denom *= z - roots[i];
  if (denom == Complex{0.0, 0.0} || !std::isfinite(std::abs(p / denom))) return Complex{0.0, 0.0};
  return p / denom;
}

inline void aberth_one(std::span<const Complex> coeffs, std::span<const Complex> roots,
                       std::span<const unsigned char> frozen,
                       std::span<Complex> corrections, std::span<double> residuals,
                       std::size_t j) noexcept {
  const NewtonStep step = newton_step(coeffs, roots[j]);
  residuals[j] = step.residual;
  if (frozen[j] != 0 || step.residual == 0.0) {
    corrections[j] = Complex{0.0, 0.0};
    return;
  }
  Complex repulsion{0.0, 0.0};
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (i != j) repulsion += 1.0 / (roots[j] - roots[i]);
  const Complex denom = 1.0 - step.ratio * repulsion;
  Complex correction = step.ratio / denom;
  if (step.stationary || denom == Complex{0.0, 0.0} || !std::isfinite(correction.real()) ||
      !std::isfinite(correction.imag()))
    correction = weierstrass_step(coeffs, roots, j);
  corrections[j] = correction;
}

}  // namespace

void aberth_sweep_serial(std::span<const Complex> coeffs, std::span<const Complex> roots,
                         std::span<const unsigned char> frozen,
                         std::span<Complex> corrections, std::span<double> residuals) noexcept {
  for (std::size_t j = 0; j < roots.size(); ++j)
    aberth_one(coeffs, roots, frozen, corrections, residuals, j);
}

void aberth_sweep_omp(std::span<const Complex> coeffs, std::span<const Complex> roots,
                      std::span<const unsigned char> frozen,
                      std::span<Complex> corrections, std::span<double> residuals) noexcept {
  const auto count = static_cast<std::ptrdiff_t>(roots.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < count; ++j)
    aberth_one(coeffs, roots, frozen, corrections, residuals, static_cast<std::size_t>(j));
}

}  // namespace eqw::kernels
