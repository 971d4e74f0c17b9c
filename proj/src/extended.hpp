// Extended precision Newton moment solve and evaluation (internal).
#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <memory>
#include <span>
#include <vector>

#include "eqw/core.hpp"

namespace eqw::detail {

namespace mp = boost::multiprecision;

template <unsigned Bits>
using Real = mp::number<mp::cpp_bin_float<Bits, mp::digit_base_2>, mp::et_off>;

// Minimal complex arithmetic over a multiprecision real.
template <class R>
struct Cx {
  R re{0};
  R im{0};

  friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator*(const Cx& a, const Cx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cx operator*(const R& s, const Cx& a) { return {s * a.re, s * a.im}; }
  friend Cx operator/(const Cx& a, const Cx& b) {
    const R d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  R norm() const { return re * re + im * im; }
  R abs() const { return mp::sqrt(norm()); }
  bool is_zero() const { return re == 0 && im == 0; }
};

template <class R>
Cx<R> lift(Complex z) {
  return {R(z.real()), R(z.imag())};
}

template <class R>
Complex lower(const Cx<R>& z) {
  return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

inline constexpr unsigned kWideBits = 256;
using WideReal = Real<kWideBits>;
using WideComplex = Cx<WideReal>;

// Nodes of an escalated solve, kept beyond double so that sums of large
// powers can still be formed to full double accuracy.
struct WideNodes {
  std::vector<WideComplex> values;
};

struct ExtendedSolve {
  ComplexVector nodes;      // rounded to double
  std::shared_ptr<WideNodes> wide;  // same nodes, kWideBits
  double working_residual;  // max_m |S_m - s_m| / max(1, max|s_m|), in working precision
  int iterations;
};

/// Newton-Girard and Aberth iteration carried out with `bits` of mantissa
/// (one of 128, 256, 512, 1024). The moments are numerators[m-1] /
/// denominators[m-1], divided in working precision; an empty denominator
/// list means all ones. `seeds` are the starting points.
ExtendedSolve solve_moments_extended(std::span<const Complex> numerators,
                                     std::span<const double> denominators,
                                     std::span<const Complex> seeds, int bits, int max_iter);

inline constexpr int kExtendedTiers[] = {128, 256, 512, 1024};

/// out[i] = (mu/n) sum_k l_k^{z_i} with l_k^z = exp(z Log l_k), in kWideBits.
/// `branch` holds Log of each node rounded to double; the wide logarithm is
/// taken on the same sheet. Zero nodes follow the evaluate_exp convention
/// (the caller has rejected points where they are undefined).
void wide_exp_sum(Complex mu, const WideNodes& nodes, std::span<const Complex> branch,
                  std::span<const Complex> points, std::span<Complex> out, bool parallel);

/// out[i] = (mu/n) sum_k h(l_k z_i) with h applied to WideComplex arguments.
template <class Kernel>
void wide_node_sum(Complex mu, const WideNodes& nodes, const Kernel& h, std::span<const Complex> points,
                   std::span<Complex> out, bool parallel) {
  using R = WideReal;
  const std::size_t n = nodes.values.size();
  const WideComplex weight = R(1) / R(static_cast<unsigned>(n)) * lift<R>(mu);
  const auto count = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const WideComplex z = lift<R>(points[static_cast<std::size_t>(i)]);
    WideComplex acc{};
    for (const WideComplex& l : nodes.values) acc = acc + h(l * z);
    out[static_cast<std::size_t>(i)] = lower(weight * acc);
  }
}

}  // namespace eqw::detail
