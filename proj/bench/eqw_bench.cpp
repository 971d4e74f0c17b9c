// Serial reference vs OpenMP kernels: timing and bitwise agreement.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <vector>

#include "eqw/bounds.hpp"
#include "eqw/kernels.hpp"
#include "eqw/pade.hpp"
#include "eqw/polyroots.hpp"

using namespace eqw;
using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
  }
  return best;
}

bool same_bits(const ComplexVector& a, const ComplexVector& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(Complex)) == 0;
}

void report(const char* name, double serial, double parallel, bool equal) {
  std::printf("%-28s serial %10.4f ms   omp %10.4f ms   speedup %5.2fx   %s\n", name, serial * 1e3,
              parallel * 1e3, serial / parallel, equal ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("openmp %s, %d thread(s)\n", kernels::openmp_enabled() ? "on" : "off", kernels::max_threads());
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int failures = 0;

  for (const int n : {64, 256, 1024}) {
    ComplexVector roots(static_cast<std::size_t>(n));
    for (auto& z : roots) z = {u(rng), u(rng)};
    const ComplexPolynomial p = polynomial_from_roots(roots);
    ComplexVector guess(roots);
    for (auto& z : guess) z += Complex{1e-3 * u(rng), 1e-3 * u(rng)};
    const std::vector<unsigned char> frozen(static_cast<std::size_t>(n), 0);
    ComplexVector cs(static_cast<std::size_t>(n));
    ComplexVector co(static_cast<std::size_t>(n));
    std::vector<double> rs(static_cast<std::size_t>(n));
    std::vector<double> ro(static_cast<std::size_t>(n));
    const double ts = best_of(5, [&] { kernels::aberth_sweep_serial(p.coefficients(), guess, frozen, cs, rs); });
    const double to = best_of(5, [&] { kernels::aberth_sweep_omp(p.coefficients(), guess, frozen, co, ro); });
    const bool eq = same_bits(cs, co) && std::memcmp(rs.data(), ro.data(), rs.size() * sizeof(double)) == 0;
    failures += eq ? 0 : 1;
    char name[64];
    std::snprintf(name, sizeof name, "aberth_sweep n=%d", n);
    report(name, ts, to, eq);
  }

  {
    ComplexVector nodes(40);
    for (auto& z : nodes) z = {u(rng), u(rng)};
    ComplexVector points(20000);
    for (auto& z : points) z = {2 * u(rng), 2 * u(rng)};
    ComplexVector os(points.size());
    ComplexVector oo(points.size());
    const auto h = [](Complex w) noexcept { return std::exp(w); };
    const double ts = best_of(5, [&] { kernels::node_sum_serial(h, 0.5, nodes, points, os); });
    const double to = best_of(5, [&] { kernels::node_sum_omp(h, 0.5, nodes, points, oo); });
    const bool eq = same_bits(os, oo);
    failures += eq ? 0 : 1;
    report("node_sum 40 x 20000", ts, to, eq);
  }

  {
    TrialReport rs;
    TrialReport ro;
    const double ts = best_of(1, [&] { rs = verify_bound_randomized(20, 1.0, 400, 42, kernels::Exec::Serial); });
    const double to = best_of(1, [&] { ro = verify_bound_randomized(20, 1.0, 400, 42, kernels::Exec::Parallel); });
    const bool eq = rs.max_ratio == ro.max_ratio && rs.violations == ro.violations &&
                    rs.max_moment_residual == ro.max_moment_residual;
    failures += eq ? 0 : 1;
    report("verify_bounds n=20 x 400", ts, to, eq);
  }
  return failures == 0 ? 0 : 1;
}
