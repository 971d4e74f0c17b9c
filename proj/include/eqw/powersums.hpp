// Power sums, elementary symmetric polynomials and the Newton moment problem
//
//   find the multiset {l_1..l_n} with  sum_k l_k^m = s_m,  m = 1..n.
//
// The solution always exists and is unique: Newton-Girard turns the moments
// into elementary symmetric polynomials, whose monic polynomial has exactly
// the wanted multiset as its roots.
#pragma once

#include <memory>
#include <span>
#include <vector>

#include "eqw/core.hpp"
#include "eqw/polyroots.hpp"

namespace eqw {

namespace detail {
struct WideNodes;
}

/// Moments s_1..s_n of a Newton moment problem. Index m is 1-based.
///
/// A sequence may also remember an exact quotient form s_m = p_m / q_m with
/// p_m, q_m exactly representable. The extended precision solver then divides
/// in working precision instead of starting from the rounded s_m, which
/// matters because the moment -> node map can amplify a one-ulp input change
/// by many orders of magnitude.
class MomentSequence {
 public:
  explicit MomentSequence(ComplexVector moments);

  /// s_m = numerators[m-1] / denominators[m-1].
  static MomentSequence quotients(ComplexVector numerators, std::vector<double> denominators);

  int n() const noexcept { return static_cast<int>(moments_.size()); }
  const Complex& at(int m) const { return moments_.at(static_cast<std::size_t>(m - 1)); }
  std::span<const Complex> values() const noexcept { return moments_; }

  bool has_exact_form() const noexcept { return !denominators_.empty(); }
  std::span<const Complex> numerators() const noexcept { return numerators_; }
  std::span<const double> denominators() const noexcept { return denominators_; }

  friend bool operator==(const MomentSequence&, const MomentSequence&) = default;

 private:
  ComplexVector moments_;
  ComplexVector numerators_;
  std::vector<double> denominators_;
};

/// Unordered multiset of complex nodes, stored in canonical root order.
class NodeSet {
 public:
  explicit NodeSet(ComplexVector nodes);

  int n() const noexcept { return static_cast<int>(nodes_.size()); }
  const Complex& operator[](int k) const { return nodes_.at(static_cast<std::size_t>(k)); }
  std::span<const Complex> values() const noexcept { return nodes_; }
  double max_abs() const noexcept;

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  ComplexVector nodes_;
};

/// sigma_1..sigma_n. Index m is 1-based.
class SymmetricPolys {
 public:
  explicit SymmetricPolys(ComplexVector sigmas) : sigmas_(std::move(sigmas)) {}

  int n() const noexcept { return static_cast<int>(sigmas_.size()); }
  const Complex& at(int m) const { return sigmas_.at(static_cast<std::size_t>(m - 1)); }
  std::span<const Complex> values() const noexcept { return sigmas_; }

 private:
  ComplexVector sigmas_;
};

/// Newton-Girard recurrence, evaluated in increasing m.
SymmetricPolys newton_girard(const MomentSequence& s);

/// S_m = sum_k l_k^m for m = 1..up_to.
MomentSequence power_sums_of(const NodeSet& nodes, int up_to);

/// Same, with S_0 = n prepended (index m holds S_m).
ComplexVector power_sums_from_zero(std::span<const Complex> nodes, int up_to);

/// l^n - sigma_1 l^(n-1) + ... + (-1)^n sigma_n, ascending coefficients.
ComplexPolynomial unitary_polynomial(const SymmetricPolys& sigma);

enum class Precision {
  /// Newton-Girard and root finding in binary64 only.
  Double,
  /// binary64 first; when the relative moment residual of that answer
  /// exceeds kAdaptiveResidual, or the sequence carries an exact quotient
  /// form (n >= 2), redo the solve at 128, 256, 512 and 1024 bits until two
  /// consecutive tiers agree after rounding to double.
  Adaptive,
};

/// Relative moment residual below which a binary64 solve is accepted.
inline constexpr double kAdaptiveResidual = 1e-11;

struct MomentOptions {
  RootOptions roots{};
  int max_n = kDefaultMaxN;
  Precision precision = Precision::Adaptive;
  /// Replace a group of nodes by one repeated point when that brings the
  /// moment residual to rounding level: an m-fold node comes back from any
  /// finite precision root finder as a ring of radius ~ eps^(1/m).
  bool merge_clusters = true;
};

struct NewtonSolution {
  NodeSet nodes;
  double moment_residual;  // max_m |S_m(nodes) - s_m|, evaluated in binary64
  double working_residual;  // same, relative to max(1, max|s_m|), in the working precision
  double root_residual;    // find_roots residual (binary64 stage)
  int iterations;
  int precision_bits = 53;  // mantissa bits of the stage that produced nodes
  bool settled = true;      // false if the top tier still disagreed with the one below
  /// Escalated solves only: the nodes in extended precision, in the order of
  /// nodes.values().
  std::shared_ptr<const detail::WideNodes> wide;
};

/// Solves the Newton moment problem. Throws InvalidArgument above the
/// precision cap, ConditioningError when some |sigma_m| exceeds
/// kSigmaOverflow, and NonConvergence from the root finder (Double mode).
NewtonSolution solve_newton_moment_problem(const MomentSequence& s, const MomentOptions& options = {});

/// Bottleneck distance of a greedy matching between two multisets of equal
/// size: pairs are taken closest first.
double multiset_distance(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace eqw
