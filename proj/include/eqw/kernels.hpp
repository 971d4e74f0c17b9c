// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP variant; both perform the same floating point operations per output
// element in the same order, so their results agree bit for bit.
#pragma once

#include <cstddef>
#include <span>

#include "eqw/core.hpp"

namespace eqw::kernels {

enum class Exec { Serial, Parallel, Auto };

/// Work size at which Exec::Auto switches to the OpenMP variant.
inline constexpr std::size_t kParallelThreshold = 96;

bool openmp_enabled() noexcept;
int max_threads() noexcept;

inline bool use_parallel(Exec exec, std::size_t work) noexcept {
  if (exec == Exec::Auto) return work >= kParallelThreshold;
  return exec == Exec::Parallel;
}

/// Newton ratio P(z)/P'(z) together with the relative backward error
/// |P(z)| / sum_k |c_k| |z|^k of z.
///
/// For |z| > 1 the reversed polynomial is evaluated at 1/z so that neither
/// the value nor the ratio overflows.
struct NewtonStep {
  Complex ratio;
  double residual;
  bool stationary;  // P'(z) vanished; ratio is meaningless
};

NewtonStep newton_step(std::span<const Complex> coeffs, Complex z) noexcept;

/// One Jacobi sweep of the Aberth-Ehrlich iteration over all roots.
///
/// corrections[j] receives the step for roots[j] (new root = old - step);
/// residuals[j] the backward error at the old position. Where the Aberth
/// denominator degenerates a Weierstrass step is used instead. Entries with
/// frozen[j] != 0 get a zero correction but their residual is still filled.
void aberth_sweep_serial(std::span<const Complex> coeffs, std::span<const Complex> roots,
                         std::span<const unsigned char> frozen,
                         std::span<Complex> corrections, std::span<double> residuals) noexcept;

void aberth_sweep_omp(std::span<const Complex> coeffs, std::span<const Complex> roots,
                      std::span<const unsigned char> frozen,
                      std::span<Complex> corrections, std::span<double> residuals) noexcept;

inline void aberth_sweep(Exec exec, std::span<const Complex> coeffs, std::span<const Complex> roots,
                         std::span<const unsigned char> frozen,
                         std::span<Complex> corrections, std::span<double> residuals) noexcept {
  if (use_parallel(exec, roots.size() * roots.size()))
    aberth_sweep_omp(coeffs, roots, frozen, corrections, residuals);
  else
    aberth_sweep_serial(coeffs, roots, frozen, corrections, residuals);
}

/// out[i] = weight * sum_k h(nodes[k] * points[i]), summed in k order.
template <class Kernel>
void node_sum_serial(const Kernel& h, Complex weight, std::span<const Complex> nodes,
                     std::span<const Complex> points, std::span<Complex> out) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    Complex acc{0.0, 0.0};
    for (const Complex& node : nodes) acc += h(node * points[i]);
    out[i] = weight * acc;
  }
}

template <class Kernel>
void node_sum_omp(const Kernel& h, Complex weight, std::span<const Complex> nodes,
                  std::span<const Complex> points, std::span<Complex> out) {
  const auto count = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    Complex acc{0.0, 0.0};
    for (const Complex& node : nodes) acc += h(node * points[static_cast<std::size_t>(i)]);
    out[static_cast<std::size_t>(i)] = weight * acc;
  }
}

template <class Kernel>
void node_sum(Exec exec, const Kernel& h, Complex weight, std::span<const Complex> nodes,
              std::span<const Complex> points, std::span<Complex> out) {
  if (use_parallel(exec, points.size() * nodes.size() / 8))
    node_sum_omp(h, weight, nodes, points, out);
  else
    node_sum_serial(h, weight, nodes, points, out);
}

}  // namespace eqw::kernels
