// Node bounds for the Newton moment problem and the epsilon_n equation.
#pragma once

#include <cstdint>

#include "eqw/kernels.hpp"
#include "eqw/polyroots.hpp"
#include "eqw/powersums.hpp"

namespace eqw {

/// Root of x^2 - (1-x)^(n+1) = 0 in (0,1) and its closed-form majorant
/// 2(ln n - ln ln n)/n.
struct EpsilonN {
  int n;
  double epsilon_exact;
  double epsilon_closed;
  int iterations;  // bisection steps used
};

/// E(x) = x^2 - (1-x)^(n+1). Strictly increasing on [0,1].
double epsilon_function(double x, int n);

double epsilon_closed(int n);

/// Bisection on [0,1] to absolute tolerance 1e-14 (at most 200 steps).
EpsilonN solve_epsilon_equation(int n);

/// (1 + epsilon_closed(n)) a: bound on max|l_k| when |S_m| <= a^m, m = 1..n.
double theorem1_bound(double a, int n);

/// Hypothesis |S_m| <= gamma m^v a^m for m = 1..n.
struct BoundParams {
  double a = 1.0;
  double gamma = 1.0;
  double v = 0.0;
};

struct RatioNodeBound {
  double sharp;   // ((1+gamma) n^((v-1)/(n-1)) + gamma) a
  double coarse;  // (1 + 2 gamma) a
};

RatioNodeBound theorem2_bound(const BoundParams& p, int n);

/// gamma m^(v-1) (1+gamma)^(m-1) a^m: the matching bound on |sigma_m|.
double sigma_bound(const BoundParams& p, int m);

/// l^n - l^(n-1) + 2/n for odd n >= 3. Its roots have S_1 = .. = S_(n-1) = 1
/// and S_n = -1. Throws EvenN for even n.
ComplexPolynomial tightness_polynomial(int n);

struct TrialReport {
  int n = 0;
  double a = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  double bound = 0.0;             // theorem1_bound(a, n)
  double theorem2_sharp = 0.0;    // theorem 2 with gamma = 1, v = 0
  int violations = 0;             // trials with max|l_k| > bound + 1e-8
  int combined_violations = 0;    // trials above min(bound, theorem2_sharp) + 1e-8
  double max_ratio = 0.0;         // max over trials of max|l_k| / a (max|l_k| if a = 0)
  double max_moment_residual = 0.0;
};

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr double kBoundSlack = 1e-8;

/// Draws s_m uniformly in the disk |s_m| <= a^m, solves the moment problem
/// and checks max|l_k| <= (1 + eps_n) a. Trial t uses its own generator seeded
/// from (seed, t), so the result does not depend on how trials are spread
/// over threads.
TrialReport verify_bound_randomized(int n, double a, int trials, std::uint64_t seed = kDefaultSeed,
                                    kernels::Exec exec = kernels::Exec::Auto);

/// Moments of trial t, exactly as verify_bound_randomized draws them.
MomentSequence random_disk_moments(int n, double a, std::uint64_t seed, int trial);

}  // namespace eqw
