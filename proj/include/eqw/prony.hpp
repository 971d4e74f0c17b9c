// Prony (exponential) interpolation of a table {m, g(m)}, m = 0..n, by
//
//   H_n(z) = (mu/n) sum_k exp(lambda_k z) = (mu/n) sum_k l_k^z,
//
// plus the classical weighted solver sum_k mu_k l_k^m = s_m, m = 0..2n-1.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "eqw/kernels.hpp"
#include "eqw/powersums.hpp"

namespace eqw {

/// g(0)..g(n). Throws ZeroG0 if g(0) = 0.
class SampleTable {
 public:
  explicit SampleTable(ComplexVector values);

  /// g(m) = numerators[m] / denominators[m], kept in that exact form for the
  /// extended precision solver.
  static SampleTable quotients(ComplexVector numerators, std::vector<double> denominators);

  int n() const noexcept { return static_cast<int>(values_.size()) - 1; }
  const Complex& operator[](int m) const { return values_.at(static_cast<std::size_t>(m)); }
  std::span<const Complex> values() const noexcept { return values_; }

  /// s_m = (n/g(0)) g(m), m = 1..n.
  MomentSequence moments() const;

 private:
  ComplexVector values_;
  ComplexVector numerators_;
  std::vector<double> denominators_;
};

/// lambda = Log l on the principal branch, or the tagged value -infinity
/// for l = 0. Never stored as a floating point -inf.
class Frequency {
 public:
  explicit Frequency(Complex value) : value_(value) {}
  static Frequency neg_infinity() noexcept { return Frequency(); }
  static Frequency log_of(Complex base);

  bool is_neg_infinity() const noexcept { return neg_inf_; }
  /// Throws InvalidArgument for -infinity.
  Complex value() const;

  friend bool operator==(const Frequency&, const Frequency&) = default;

 private:
  Frequency() : neg_inf_(true) {}
  Complex value_{0.0, 0.0};
  bool neg_inf_ = false;
};

/// Interpolation on x_m = a + (b-a) m/n instead of m.
struct Grid {
  double a;
  double b;
};

class ExpInterpolant {
 public:
  /// `wide`, if given, holds the same bases in extended precision (same
  /// order); evaluation then runs in that precision.
  ExpInterpolant(Complex mu, NodeSet bases, std::optional<Grid> grid = std::nullopt,
                 double moment_residual = 0.0, std::shared_ptr<const detail::WideNodes> wide = nullptr);

  Complex mu() const noexcept { return mu_; }
  const NodeSet& bases() const noexcept { return bases_; }
  const std::vector<Frequency>& frequencies() const noexcept { return frequencies_; }
  const std::optional<Grid>& grid() const noexcept { return grid_; }
  int n() const noexcept { return bases_.n(); }
  double moment_residual() const noexcept { return moment_residual_; }
  const std::shared_ptr<const detail::WideNodes>& wide() const noexcept { return wide_; }

  /// Maps an argument to the unit grid: n(z-a)/(b-a), or z itself.
  Complex to_unit(Complex z) const noexcept;

 private:
  Complex mu_;
  NodeSet bases_;
  std::vector<Frequency> frequencies_;
  std::optional<Grid> grid_;
  double moment_residual_;
  std::shared_ptr<const detail::WideNodes> wide_;
};

/// mu = g(0), bases from S_m = (n/g(0)) g(m), frequencies their principal logs.
ExpInterpolant solve_equal_weight_prony(const SampleTable& g, const MomentOptions& options = {});

/// (mu/n) sum_k exp(z Log l_k), after the grid substitution. A zero base
/// contributes 1 at z = 0 and 0 for Re z > 0; elsewhere it is undefined and
/// ZeroBaseNonpositive is thrown.
Complex evaluate_exp(const ExpInterpolant& H, Complex z);

void evaluate_exp(const ExpInterpolant& H, std::span<const Complex> points, std::span<Complex> out,
                  kernels::Exec exec = kernels::Exec::Auto);

/// Solves for g(0)..g(n) sampled at a + (b-a) m/n. DegenerateInterval if b <= a.
ExpInterpolant rescale_to_grid(std::span<const Complex> g_values, double a, double b,
                               const MomentOptions& options = {});

/// |g(m)| <= (|g(0)|/n) a^m, m = 1..n.
struct GeometricHypothesis {
  double a;
};

/// |g(m)| <= (|g(0)|/n) gamma m a^m, m = 1..n.
struct ArithmeticHypothesis {
  double gamma;
  double a;
};

using PronyHypothesis = std::variant<GeometricHypothesis, ArithmeticHypothesis>;

struct BoundReport {
  int n = 0;
  double epsilon_n = 0.0;      // closed form, geometric case
  double a = 0.0;
  double gamma = 0.0;          // 0 for the geometric hypothesis
  double v = 1.0;
  double max_base_bound = 0.0;  // bound on max|l_k|
  double re_lambda_bound = 0.0;  // bound on Re lambda_k
  double hypothesis_slack = 0.0;  // min over m of bound_m - |g(m)|, relative to |g(0)|/n
};

/// Bounds on the bases and frequencies implied by a hypothesis on the table.
/// HypothesisFailed if the data violate it.
BoundReport node_bounds_prony(const SampleTable& g, const PronyHypothesis& hypothesis);

/// s_0..s_(2n-1).
class WeightedMoments {
 public:
  explicit WeightedMoments(ComplexVector moments);

  int n() const noexcept { return static_cast<int>(moments_.size()) / 2; }
  const Complex& operator[](int m) const { return moments_.at(static_cast<std::size_t>(m)); }
  std::span<const Complex> values() const noexcept { return moments_; }

 private:
  ComplexVector moments_;
};

struct ClassicalOptions {
  double rank_tol = 1e-10;        // sigma_min / sigma_max of the Hankel matrix
  double separation_tol = 1e-6;   // min |l_i - l_j| / max(1, max|l|)
  double residual_tol = 1e-8;     // all 2n equations, relative to max(1, max|s|)
  RootOptions roots{};
};

struct ClassicalSolution {
  ComplexVector weights;  // mu_k
  ComplexVector bases;    // l_k, canonical order
  std::vector<Frequency> frequencies;
  double residual;        // relative, over m = 0..2n-1
};

enum class UnsolvableReason { DegreeDeficient, RepeatedRoots };

std::string_view to_string(UnsolvableReason reason) noexcept;

struct Unsolvable {
  UnsolvableReason reason;
  double measure;  // the statistic that failed its threshold
  std::string detail;
};

using ClassicalResult = std::variant<ClassicalSolution, Unsolvable>;

/// Weighted Prony fit with pairwise distinct bases. Returns Unsolvable when
/// the generating polynomial drops degree or has repeated roots; throws
/// IllConditioned if the fitted model misses the moments.
ClassicalResult solve_classical_prony(const WeightedMoments& s, const ClassicalOptions& options = {});

}  // namespace eqw
