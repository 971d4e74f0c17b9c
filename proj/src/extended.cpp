#include "extended.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace eqw::detail {

namespace {

template <unsigned Bits>
ExtendedSolve solve_tier(std::span<const Complex> numerators, std::span<const double> denominators,
                         std::span<const Complex> seeds, int max_iter) {
  using R = Real<Bits>;
  using C = Cx<R>;
  const std::size_t n = numerators.size();

  std::vector<C> s(n + 1);
  for (std::size_t m = 1; m <= n; ++m) {
    s[m] = lift<R>(numerators[m - 1]);
    if (!denominators.empty()) {
      const R q(denominators[m - 1]);
      s[m] = C{s[m].re / q, s[m].im / q};
    }
  }

  std::vector<C> sigma(n + 1);
  sigma[1] = s[1];
  for (std::size_t m = 2; m <= n; ++m) {
    C acc = s[m];
    for (std::size_t j = 1; j < m; ++j) {
      const C term = s[m - j] * sigma[j];
      acc = (j % 2 == 1) ? acc - term : acc + term;
    }
    const R lead = R((m % 2 == 0) ? -1 : 1) / R(static_cast<unsigned>(m));
    sigma[m] = lead * acc;
  }

  // Monic coefficients, ascending.
  std::vector<C> c(n + 1);
  c[n] = C{R(1), R(0)};
  for (std::size_t m = 1; m <= n; ++m) c[n - m] = (m % 2 == 0) ? sigma[m] : C{} - sigma[m];

  std::vector<C> z(n);
  for (std::size_t j = 0; j < n; ++j) z[j] = lift<R>(seeds[j]);
  // Coincident seeds would make the Aberth repulsion singular.
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if ((z[j] - z[i]).is_zero()) {
        const R bump = R(1e-3) * (R(1) + z[j].abs());
        z[j] = z[j] + C{bump * R(static_cast<unsigned>(j + 1)), bump};
      }

  const R unit = mp::ldexp(R(1), -static_cast<int>(Bits));
  const R stop = unit * R(4096);
  // |p(z)| below this multiple of unit * sum |c_k||z|^k is rounding noise.
  const R floor = unit * R(static_cast<unsigned>(64 * n));
  std::vector<R> cabs(n + 1);
  for (std::size_t k = 0; k <= n; ++k) cabs[k] = c[k].abs();
  std::vector<unsigned char> done(n, 0);
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    bool all_done = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (done[j] != 0) continue;
      C p = c[n];
      C dp{};
      R bound = cabs[n];
      const R zabs = z[j].abs();
      for (std::size_t k = n; k-- > 0;) {
        dp = dp * z[j] + p;
        p = p * z[j] + c[k];
        bound = bound * zabs + cabs[k];
      }
      const bool at_noise = p.abs() <= floor * bound;
      if (p.is_zero()) {
        done[j] = 1;
        continue;
      }
      C correction;
      if (dp.is_zero()) {
        const R bump = R(1e-6) * (R(1) + z[j].abs());
        correction = C{bump, bump};
      } else {
        const C ratio = p / dp;
        C repulsion{};
        for (std::size_t i = 0; i < n; ++i)
          if (i != j) repulsion = repulsion + C{R(1), R(0)} / (z[j] - z[i]);
        const C denom = C{R(1), R(0)} - ratio * repulsion;
        correction = denom.is_zero() ? ratio : ratio / denom;
      }
      z[j] = z[j] - correction;  // Gauss-Seidel: later roots see the update
      const R mag = std::max(R(1), z[j].abs());
      if (at_noise || correction.abs() <= stop * mag)
        done[j] = 1;
      else
        all_done = false;
    }
    if (all_done) break;
  }

  // Moment residual of the working-precision roots.
  R worst = 0;
  R scale = 1;
  for (std::size_t m = 1; m <= n; ++m) scale = std::max(scale, s[m].abs());
  std::vector<C> power(z);
  for (std::size_t m = 1; m <= n; ++m) {
    C acc{};
    for (std::size_t k = 0; k < n; ++k) {
      acc = acc + power[k];
      power[k] = power[k] * z[k];
    }
    worst = std::max(worst, (acc - s[m]).abs());
  }

  ExtendedSolve out;
  out.nodes.reserve(n);
  out.wide = std::make_shared<WideNodes>();
  out.wide->values.reserve(n);
  for (const C& root : z) {
    out.nodes.push_back(lower(root));
    out.wide->values.push_back(WideComplex{static_cast<WideReal>(root.re), static_cast<WideReal>(root.im)});
  }
  out.working_residual = static_cast<double>(worst / scale);
  out.iterations = iter + 1;
  return out;
}

}  // namespace

ExtendedSolve solve_moments_extended(std::span<const Complex> numerators,
                                     std::span<const double> denominators,
                                     std::span<const Complex> seeds, int bits, int max_iter) {
  require(seeds.size() == numerators.size(), ErrorKind::InvalidArgument, "seed count must equal n");
  require(denominators.empty() || denominators.size() == numerators.size(),
          ErrorKind::InvalidArgument, "denominator count must equal n");
  switch (bits) {
    case 128: return solve_tier<128>(numerators, denominators, seeds, max_iter);
    case 256: return solve_tier<256>(numerators, denominators, seeds, max_iter);
    case 512: return solve_tier<512>(numerators, denominators, seeds, max_iter);
    case 1024: return solve_tier<1024>(numerators, denominators, seeds, max_iter);
    default: fail(ErrorKind::InvalidArgument, "unsupported working precision");
  }
}

void wide_exp_sum(Complex mu, const WideNodes& nodes, std::span<const Complex> branch,
                  std::span<const Complex> points, std::span<Complex> out, bool parallel) {
  using R = WideReal;
  using C = WideComplex;
  const std::size_t n = nodes.values.size();
  const R pi = boost::math::constants::pi<R>();
  std::vector<C> logs(n);
  std::vector<unsigned char> zero(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const C& l = nodes.values[k];
    if (l.is_zero()) {
      zero[k] = 1;
      continue;
    }
    R arg = mp::atan2(l.im, l.re);
    // stay on the sheet of the double frequency
    const double drift = static_cast<double>(arg) - branch[k].imag();
    if (drift > std::numbers::pi) arg -= 2 * pi;
    if (drift < -std::numbers::pi) arg += 2 * pi;
    logs[k] = C{mp::log(l.norm()) / 2, arg};
  }
  const C weight = C{R(mu.real()), R(mu.imag())} * C{R(1) / R(static_cast<unsigned>(n)), R(0)};
  const auto count = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const Complex zd = points[static_cast<std::size_t>(i)];
    const C z = lift<R>(zd);
    C acc{};
    for (std::size_t k = 0; k < n; ++k) {
      if (zero[k] != 0) {
        if (zd == Complex{0.0, 0.0}) acc = acc + C{R(1), R(0)};
        continue;
      }
      const C w = z * logs[k];
      const R r = mp::exp(w.re);
      acc = acc + C{r * mp::cos(w.im), r * mp::sin(w.im)};
    }
    out[static_cast<std::size_t>(i)] = lower(weight * acc);
  }
}

}  // namespace eqw::detail
