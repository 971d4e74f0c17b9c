// All roots of a complex polynomial.
#pragma once

#include <span>

#include "eqw/core.hpp"
#include "eqw/kernels.hpp"

namespace eqw {

/// Polynomial with complex coefficients stored in ascending degree order.
/// The leading coefficient is never zero.
class ComplexPolynomial {
 public:
  /// Throws DegenerateInput for an empty list, the zero polynomial or a zero
  /// leading coefficient.
  explicit ComplexPolynomial(ComplexVector coefficients);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Complex> coefficients() const noexcept { return coeffs_; }
  const Complex& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  Complex leading() const noexcept { return coeffs_.back(); }
  bool is_monic() const noexcept { return coeffs_.back() == Complex{1.0, 0.0}; }

  /// Horner evaluation.
  Complex operator()(Complex z) const noexcept;

  /// max(1, max_k |c_k|).
  double coefficient_scale() const noexcept;

  /// Residual normaliser used by the root finder at z: sum_k |c_k| |z|^k,
  /// so that |P(z)| / residual_scale(z) is the relative backward error.
  double residual_scale(Complex z) const noexcept;

  friend bool operator==(const ComplexPolynomial&, const ComplexPolynomial&) = default;

 private:
  ComplexVector coeffs_;
};

enum class RootMethod {
  /// Eigenvalues of the balanced companion matrix, then Aberth polishing of
  /// the isolated roots. Default: keeps the power sums of clustered roots.
  Companion,
  /// Aberth-Ehrlich simultaneous iteration from a circle of Fujiwara radius.
  Aberth,
};

struct RootOptions {
  double tol = 1e-12;
  int max_iter = 500;
  RootMethod method = RootMethod::Companion;
  kernels::Exec exec = kernels::Exec::Auto;
};

struct RootResult {
  ComplexVector roots;      // with multiplicity, canonical order
  double max_residual = 0;  // max_j |P(r_j)| / residual_scale(r_j)
  int iterations = 0;
};

/// Finds every root of p.
///
/// Succeeds when max_residual <= tol; otherwise throws NonConvergence with the
/// best roots found. Exact zero roots (vanishing low order coefficients) are
/// deflated exactly. Roots come back sorted by real part, then imaginary
/// part, then magnitude.
RootResult find_roots(const ComplexPolynomial& p, const RootOptions& options = {});

/// Sorts roots into the canonical order used by find_roots.
void canonical_sort(ComplexVector& roots);
bool canonical_less(const Complex& a, const Complex& b) noexcept;

/// Polynomial with the given roots, leading coefficient 1.
ComplexPolynomial polynomial_from_roots(std::span<const Complex> roots);

}  // namespace eqw
