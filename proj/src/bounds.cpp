#include "eqw/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <vector>

namespace eqw {

double epsilon_function(double x, int n) { return x * x - std::pow(1.0 - x, n + 1); }

double epsilon_closed(int n) {
  require(n >= 2, ErrorKind::InvalidArgument, "epsilon_n needs n >= 2");
  const double ln = std::log(static_cast<double>(n));
  return 2.0 * (ln - std::log(ln)) / n;
}

EpsilonN solve_epsilon_equation(int n) {
  require(n >= 2, ErrorKind::InvalidArgument, "epsilon_n needs n >= 2");
  double lo = 0.0;  // E(0) = -1
  double hi = 1.0;  // E(1) = 1
  int it = 0;
  while (it < 200 && hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (epsilon_function(mid, n) < 0.0)
      lo = mid;
    else
      hi = mid;
    ++it;
  }
  return EpsilonN{n, 0.5 * (lo + hi), epsilon_closed(n), it};
}

double theorem1_bound(double a, int n) {
  require(a >= 0.0, ErrorKind::InvalidArgument, "a must be nonnegative");
  return (1.0 + epsilon_closed(n)) * a;
}

namespace {

void check_params(const BoundParams& p) {
  require(p.a >= 0.0 && std::isfinite(p.a), ErrorKind::InvalidArgument, "a must be nonnegative");
  require(p.gamma > 0.0 && std::isfinite(p.gamma), ErrorKind::InvalidArgument,
          "gamma must be positive");
  require(p.v >= 0.0 && p.v <= 1.0, ErrorKind::InvalidArgument, "v must lie in [0,1]");
}

}  // namespace

RatioNodeBound theorem2_bound(const BoundParams& p, int n) {
  require(n >= 2, ErrorKind::InvalidArgument, "theorem 2 bound needs n >= 2");
  check_params(p);
  const double shrink = std::pow(static_cast<double>(n), (p.v - 1.0) / (n - 1));
  return RatioNodeBound{((1.0 + p.gamma) * shrink + p.gamma) * p.a, (1.0 + 2.0 * p.gamma) * p.a};
}

double sigma_bound(const BoundParams& p, int m) {
  require(m >= 1, ErrorKind::InvalidArgument, "m must be at least 1");
  check_params(p);
  return p.gamma * std::pow(static_cast<double>(m), p.v - 1.0) * std::pow(1.0 + p.gamma, m - 1) *
         std::pow(p.a, m);
}

ComplexPolynomial tightness_polynomial(int n) {
  require(n >= 3, ErrorKind::InvalidArgument, "tightness polynomial needs n >= 3");
  if (n % 2 == 0) fail(ErrorKind::EvenN, "tightness polynomial is defined for odd n only");
  ComplexVector c(static_cast<std::size_t>(n) + 1, Complex{0.0, 0.0});
  c[0] = 2.0 / n;
  c[static_cast<std::size_t>(n) - 1] = -1.0;
  c[static_cast<std::size_t>(n)] = 1.0;
  return ComplexPolynomial(std::move(c));
}

MomentSequence random_disk_moments(int n, double a, std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ComplexVector s(static_cast<std::size_t>(n));
  double radius = 1.0;
  for (int m = 1; m <= n; ++m) {
    radius *= a;
    const double r = radius * std::sqrt(unit(rng));
    const double phase = 2.0 * std::numbers::pi * unit(rng);
    s[static_cast<std::size_t>(m - 1)] = std::polar(r, phase);
  }
  return MomentSequence(std::move(s));
}

namespace {

struct TrialOutcome {
  double max_abs = 0.0;
  double residual = 0.0;
};

TrialOutcome run_trial(int n, double a, std::uint64_t seed, int trial) {
  const NewtonSolution sol = solve_newton_moment_problem(random_disk_moments(n, a, seed, trial));
  return TrialOutcome{sol.nodes.max_abs(), sol.moment_residual};
}

}  // namespace

TrialReport verify_bound_randomized(int n, double a, int trials, std::uint64_t seed,
                                    kernels::Exec exec) {
  require(n >= 2, ErrorKind::InvalidArgument, "verify-bounds needs n >= 2");
  require(trials >= 1, ErrorKind::InvalidArgument, "trials must be at least 1");
  require(a >= 0.0 && std::isfinite(a), ErrorKind::InvalidArgument, "a must be nonnegative");

  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(trials));
  // Each trial costs about n^2 root-finder work; compare against the
  // threshold the way the other kernels do.
  const bool parallel = kernels::use_parallel(exec, static_cast<std::size_t>(trials) * 8);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (int t = 0; t < trials; ++t) {
      try {
        outcomes[static_cast<std::size_t>(t)] = run_trial(n, a, seed, t);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    }
  } else {
    for (int t = 0; t < trials; ++t) outcomes[static_cast<std::size_t>(t)] = run_trial(n, a, seed, t);
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  TrialReport report;
  report.n = n;
  report.a = a;
  report.trials = trials;
  report.seed = seed;
  report.bound = theorem1_bound(a, n);
  report.theorem2_sharp = theorem2_bound(BoundParams{a, 1.0, 0.0}, n).sharp;
  const double combined = std::min(report.bound, report.theorem2_sharp);
  for (const TrialOutcome& o : outcomes) {
    if (o.max_abs > report.bound + kBoundSlack) ++report.violations;
    if (o.max_abs > combined + kBoundSlack) ++report.combined_violations;
    report.max_ratio = std::max(report.max_ratio, a > 0.0 ? o.max_abs / a : o.max_abs);
    report.max_moment_residual = std::max(report.max_moment_residual, o.residual);
  }
  return report;
}

}  // namespace eqw
