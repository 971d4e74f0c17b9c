#include <doctest.h>

#include <numbers>
#include <random>

#include "eqw/apps.hpp"
#include "eqw/bounds.hpp"
#include "eqw/prony.hpp"
#include "support/oracles.hpp"

using namespace eqw;

namespace {

SampleTable linear_table(int n) {
  ComplexVector g;
  for (int m = 0; m <= n; ++m) g.push_back(m + 1.0);
  return SampleTable(g);
}

double table_error(const ExpInterpolant& H, const SampleTable& g) {
  double worst = 0.0;
  for (int m = 0; m <= g.n(); ++m) worst = std::max(worst, std::abs(evaluate_exp(H, double(m)) - g[m]));
  return worst;
}

}  // namespace

TEST_CASE("sample table validation") {
  try {
    SampleTable({0.0, 1.0});
    FAIL("expected ZeroG0");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroG0);
  }
  CHECK_THROWS_AS(SampleTable({1.0}), Error);
  CHECK_THROWS_AS(SampleTable({1.0, std::nan("")}), Error);
  const SampleTable t({2.0, 3.0, 4.0});
  CHECK(t.n() == 2);
  const MomentSequence s = t.moments();
  CHECK(s.at(1) == Complex(3.0));
  CHECK(s.at(2) == Complex(4.0));
}

TEST_CASE("frequencies") {
  CHECK(Frequency::neg_infinity().is_neg_infinity());
  CHECK_THROWS_AS(Frequency::neg_infinity().value(), Error);
  CHECK(Frequency::log_of(0.0).is_neg_infinity());
  const Frequency f = Frequency::log_of(-1.0);
  CHECK(std::abs(f.value() - Complex(0.0, std::numbers::pi)) < 1e-15);
  CHECK(Frequency::log_of(1.0).value() == Complex(0.0));
}

TEST_CASE("constant table") {
  for (const Complex c : {Complex(3.0), Complex(-1.0, 2.0)}) {
    for (int n : {1, 4, 10, 30}) {
      const SampleTable g(ComplexVector(static_cast<std::size_t>(n) + 1, c));
      const ExpInterpolant H = solve_equal_weight_prony(g);
      CHECK(H.mu() == c);
      for (const Complex& l : H.bases().values()) CHECK(std::abs(l - 1.0) < 1e-12);
      for (const Frequency& f : H.frequencies()) CHECK(std::abs(f.value()) < 1e-12);
      for (const Complex z : {Complex(0.5), Complex(-2.0, 1.0), Complex(7.0)}) CHECK(std::abs(evaluate_exp(H, z) - c) < 1e-11);
    }
  }
}

TEST_CASE("alternating table gives Chebyshev nodes") {
  for (int n : {2, 5, 9}) {
    ComplexVector g;
    for (int m = 0; m <= n; ++m) g.push_back((1.0 + (m % 2 == 0 ? 1.0 : -1.0)) / (m + 1.0));
    const ExpInterpolant H = solve_equal_weight_prony(SampleTable(g));
    CHECK(H.mu() == Complex(2.0));
    const QuadratureRule rule = chebyshev_nodes(n, QuadratureVariant::Standard);
    CHECK(oracle::matched_distance(H.bases().values(), rule.nodes.values()) < 1e-12);
  }
}

TEST_CASE("linear table m + 1") {
  // 120 digit references: max|l_k| and min Re lambda_k
  struct Ref {
    int n;
    double max_abs;
    double min_re;
  };
  for (const Ref& ref : {Ref{20, 4.0860035, -0.086813}, Ref{50, 4.3543163, -0.593215}}) {
    const ExpInterpolant H = solve_equal_weight_prony(linear_table(ref.n));
    double lo = 1e300;
    for (const Frequency& f : H.frequencies()) lo = std::min(lo, f.value().real());
    CHECK(std::abs(H.bases().max_abs() - ref.max_abs) < 1e-6);
    CHECK(std::abs(lo - ref.min_re) < 1e-6);
  }
  for (int n : {5, 10, 20, 50}) {
    const SampleTable g = linear_table(n);
    const ExpInterpolant H = solve_equal_weight_prony(g);
    CHECK(H.mu() == Complex(1.0));
    CHECK(H.bases().max_abs() < 4.5);
    double lo = 1e300, hi = -1e300;
    for (const Frequency& f : H.frequencies()) {
      lo = std::min(lo, f.value().real());
      hi = std::max(hi, f.value().real());
    }
    MESSAGE("m+1 table, n = " << n << ": max|l| = " << H.bases().max_abs() << ", Re lambda in [" << lo << ", " << hi << "]");
    CHECK(hi < 1.5);
    // Re lambda > 0 holds for small n only; from n = 20 on bases inside the
    // unit circle appear.
    if (n <= 10) CHECK(lo > 0.0);
    CHECK(table_error(H, g) < 1e-8 * (n + 1));
  }
}

TEST_CASE("reciprocal table") {
  int threshold = 0;
  for (int n = 1; n <= 60; ++n) {
    const ExpInterpolant H = exp_sum_for_reciprocal(n);
    const bool ok = H.bases().max_abs() <= 1.0 + 3.0 * std::log(double(n)) / n;
    if (!ok) threshold = n + 1;
    if (n >= 30) CHECK(ok);
    if (n <= 30) {
      ComplexVector g;
      for (int m = 0; m <= n; ++m) g.push_back(1.0 / (m + 1.0));
      CHECK(table_error(H, SampleTable(g)) < 1e-8);
      const QuadratureRule rule = chebyshev_nodes(n, QuadratureVariant::Shifted);
      CHECK(oracle::matched_distance(H.bases().values(), rule.nodes.values()) < 1e-9);
    }
  }
  MESSAGE("max|l| <= 1 + 3 ln n / n for every n >= " << std::max(threshold, 1) << " (checked to 60)");
  CHECK(threshold <= 30);
  CHECK(std::abs(exp_sum_for_reciprocal(30).bases().max_abs() - 0.98801233) < 1e-8);
  const ExpInterpolant one = exp_sum_for_reciprocal(1);
  CHECK(one.mu() == Complex(1.0));
  CHECK(std::abs(one.bases()[0] - 0.5) < 1e-16);
  CHECK(evaluate_exp(one, 0.0) == Complex(1.0));
  CHECK(std::abs(evaluate_exp(one, 1.0) - 0.5) < 1e-16);
}

TEST_CASE("random tables are interpolated") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 20;
    ComplexVector g;
    g.push_back(oracle::disk_point(rng, 9.0) + Complex(1.0, 0.0));
    for (int m = 1; m <= n; ++m) g.push_back(oracle::disk_point(rng, 10.0));
    const SampleTable table(g);
    const ExpInterpolant H = solve_equal_weight_prony(table);
    double top = 0.0;
    for (const Complex& v : g) top = std::max(top, std::abs(v));
    CAPTURE(trial);
    CHECK(table_error(H, table) <= 1e-7 * top);
    for (std::size_t k = 0; k < H.frequencies().size(); ++k) {
      const Frequency& f = H.frequencies()[k];
      if (f.is_neg_infinity()) continue;
      CHECK(std::abs(f.value().imag()) <= std::numbers::pi);
      CHECK(std::abs(std::exp(f.value()) - H.bases()[static_cast<int>(k)]) <= 1e-12 * std::max(1.0, std::abs(H.bases()[static_cast<int>(k)])));
    }
  }
}

TEST_CASE("zero base") {
  // bases {0, 1}: g = 1, 1/2, 1/2
  const ExpInterpolant H = solve_equal_weight_prony(SampleTable({1.0, 0.5, 0.5}));
  REQUIRE(H.frequencies()[0].is_neg_infinity());
  CHECK(evaluate_exp(H, 0.0) == Complex(1.0));
  CHECK(std::abs(evaluate_exp(H, 1.0) - 0.5) < 1e-16);
  CHECK(std::abs(evaluate_exp(H, Complex(0.5, 3.0)) - 0.5) < 1e-16);
  try {
    evaluate_exp(H, -1.0);
    FAIL("expected ZeroBaseNonpositive");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroBaseNonpositive);
  }
  CHECK_THROWS_AS(evaluate_exp(H, Complex(0.0, 1.0)), Error);
}

TEST_CASE("grid rescaling") {
  const ComplexVector g{2.0, 1.0, 3.0, -1.0};
  const ExpInterpolant unit = solve_equal_weight_prony(SampleTable(g));
  const ExpInterpolant same = rescale_to_grid(g, 0.0, 3.0);
  for (const Complex z : {Complex(0.3), Complex(1.7, 0.2), Complex(2.5)}) CHECK(evaluate_exp(same, z) == evaluate_exp(unit, z));

  const ExpInterpolant c = rescale_to_grid(ComplexVector(5, 4.0), 2.0, 5.0);
  for (double x = 2.0; x <= 5.0; x += 0.25) CHECK(std::abs(evaluate_exp(c, x) - 4.0) < 1e-12);

  const ExpInterpolant lin = rescale_to_grid(ComplexVector{1.0, 2.0, 3.0, 4.0, 5.0}, 0.0, 1.0);
  for (int m = 0; m <= 4; ++m) CHECK(std::abs(evaluate_exp(lin, m / 4.0) - (m + 1.0)) < 1e-10);
  CHECK(lin.grid().has_value());

  try {
    rescale_to_grid(g, 1.0, 1.0);
    FAIL("expected DegenerateInterval");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateInterval);
  }
  CHECK_THROWS_AS(rescale_to_grid(ComplexVector{0.0, 1.0}, 0.0, 1.0), Error);
}

TEST_CASE("node bounds for tables") {
  const int n = 6;
  const SampleTable constant(ComplexVector(n + 1, 2.5));
  const BoundReport r = node_bounds_prony(constant, GeometricHypothesis{double(n)});
  CHECK(r.re_lambda_bound == doctest::Approx(std::log(double(n)) + epsilon_closed(n)));
  for (const Frequency& f : solve_equal_weight_prony(constant).frequencies()) CHECK(f.value().real() <= r.re_lambda_bound);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int m_n = 2 + trial % 15;
    ComplexVector g{Complex(1.0, 0.0)};
    for (int m = 1; m <= m_n; ++m) g.push_back(oracle::disk_point(rng, 1.0 / m_n));
    const SampleTable table(g);
    const BoundReport b = node_bounds_prony(table, GeometricHypothesis{1.0});
    CHECK(b.re_lambda_bound == doctest::Approx(epsilon_closed(m_n)));
    const ExpInterpolant H = solve_equal_weight_prony(table);
    CHECK(H.bases().max_abs() <= b.max_base_bound + 1e-8);
    for (const Frequency& f : H.frequencies())
      if (!f.is_neg_infinity()) CHECK(f.value().real() <= b.re_lambda_bound + 1e-8);
  }

  for (int m_n : {5, 10, 20}) {
    const SampleTable lin = linear_table(m_n);
    const BoundReport b = node_bounds_prony(lin, ArithmeticHypothesis{2.0 * m_n, 1.0});
    CHECK(b.max_base_bound == doctest::Approx(1.0 + 4.0 * m_n));
    CHECK(b.re_lambda_bound == doctest::Approx(std::log(1.0 + 4.0 * m_n)));
    CHECK(solve_equal_weight_prony(lin).bases().max_abs() <= b.max_base_bound);
  }

  try {
    node_bounds_prony(linear_table(5), GeometricHypothesis{1.0});
    FAIL("expected HypothesisFailed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::HypothesisFailed);
  }
}

TEST_CASE("classical solver on the equal-weight fixtures") {
  for (int n : {2, 3, 5}) {
    const ClassicalResult constant = solve_classical_prony(WeightedMoments(ComplexVector(2 * n, 1.5)));
    REQUIRE(std::holds_alternative<Unsolvable>(constant));
    CHECK(std::get<Unsolvable>(constant).reason == UnsolvableReason::DegreeDeficient);
    // s_m = (m + 1) 1^m: the double root 1 at n = 2, a rank 2 Hankel matrix beyond
    ComplexVector lin;
    for (int m = 0; m < 2 * n; ++m) lin.push_back(m + 1.0);
    const ClassicalResult linear = solve_classical_prony(WeightedMoments(lin));
    REQUIRE(std::holds_alternative<Unsolvable>(linear));
    CHECK(std::get<Unsolvable>(linear).reason ==
          (n == 2 ? UnsolvableReason::RepeatedRoots : UnsolvableReason::DegreeDeficient));
  }
  // n = 1 has no repeated root to find, the constant table is solvable there
  CHECK(std::holds_alternative<ClassicalSolution>(solve_classical_prony(WeightedMoments({1.0, 1.0}))));
}

TEST_CASE("classical solver detects a repeated root") {
  // s_m = (m + 1) 2^m: generating polynomial (l - 2)^2
  ComplexVector s;
  for (int m = 0; m < 4; ++m) s.push_back((m + 1.0) * std::pow(2.0, m));
  const ClassicalResult r = solve_classical_prony(WeightedMoments(s));
  REQUIRE(std::holds_alternative<Unsolvable>(r));
  CHECK(std::get<Unsolvable>(r).reason == UnsolvableReason::RepeatedRoots);
}

TEST_CASE("classical planted model") {
  ComplexVector s;
  for (int m = 0; m < 4; ++m) s.push_back(std::pow(0.5, m) + 2.0 * std::pow(3.0, m));
  const ClassicalResult r = solve_classical_prony(WeightedMoments(s));
  REQUIRE(std::holds_alternative<ClassicalSolution>(r));
  const ClassicalSolution& sol = std::get<ClassicalSolution>(r);
  CHECK(std::abs(sol.bases[0] - 0.5) < 1e-8);
  CHECK(std::abs(sol.bases[1] - 3.0) < 1e-8);
  CHECK(std::abs(sol.weights[0] - 1.0) < 1e-8);
  CHECK(std::abs(sol.weights[1] - 2.0) < 1e-8);
  CHECK(sol.residual < 1e-12);
}

TEST_CASE("classical round trip for separated bases") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    ComplexVector l, w;
    while (static_cast<int>(l.size()) < n) {
      const Complex z = oracle::disk_point(rng, 1.5);
      bool far = true;
      for (const Complex& y : l) far = far && std::abs(z - y) >= 1e-3;
      if (far && std::abs(z) > 0.1) l.push_back(z);
    }
    for (int k = 0; k < n; ++k) w.push_back(Complex(1.0, 0.0) + oracle::disk_point(rng, 0.5));
    ComplexVector s(static_cast<std::size_t>(2 * n), 0.0);
    for (int m = 0; m < 2 * n; ++m)
      for (int k = 0; k < n; ++k) s[static_cast<std::size_t>(m)] += w[static_cast<std::size_t>(k)] * std::pow(l[static_cast<std::size_t>(k)], m);
    ClassicalOptions o;
    o.separation_tol = 1e-4;
    o.rank_tol = 1e-14;
    const ClassicalResult r = solve_classical_prony(WeightedMoments(s), o);
    CAPTURE(trial);
    REQUIRE(std::holds_alternative<ClassicalSolution>(r));
    const ClassicalSolution& sol = std::get<ClassicalSolution>(r);
    CHECK(oracle::matched_distance(sol.bases, l) < 1e-7);
    double werr = 0.0;
    for (int k = 0; k < n; ++k) {
      // pair each planted weight with the recovered base closest to its own
      std::size_t best = 0;
      for (std::size_t j = 0; j < sol.bases.size(); ++j)
        if (std::abs(sol.bases[j] - l[static_cast<std::size_t>(k)]) < std::abs(sol.bases[best] - l[static_cast<std::size_t>(k)])) best = j;
      werr = std::max(werr, std::abs(sol.weights[best] - w[static_cast<std::size_t>(k)]));
    }
    CHECK(werr < 1e-7);
  }
}

TEST_CASE("weighted moments validation") {
  CHECK_THROWS_AS(WeightedMoments({1.0, 2.0, 3.0}), Error);
  CHECK_THROWS_AS(WeightedMoments(ComplexVector{}), Error);
}
