#include "eqw/powersums.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "extended.hpp"

namespace eqw {

MomentSequence::MomentSequence(ComplexVector moments) : moments_(std::move(moments)) {
  require(!moments_.empty(), ErrorKind::InvalidArgument, "moment sequence needs n >= 1");
}

MomentSequence MomentSequence::quotients(ComplexVector numerators, std::vector<double> denominators) {
  require(numerators.size() == denominators.size(), ErrorKind::InvalidArgument,
          "numerator and denominator counts differ");
  ComplexVector values(numerators.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    require(denominators[i] != 0.0 && std::isfinite(denominators[i]), ErrorKind::InvalidArgument,
            "moment denominators must be finite and nonzero");
    values[i] = numerators[i] / denominators[i];
  }
  MomentSequence out(std::move(values));
  out.numerators_ = std::move(numerators);
  out.denominators_ = std::move(denominators);
  return out;
}

NodeSet::NodeSet(ComplexVector nodes) : nodes_(std::move(nodes)) {
  require(!nodes_.empty(), ErrorKind::InvalidArgument, "node set needs n >= 1");
  canonical_sort(nodes_);
}

double NodeSet::max_abs() const noexcept {
  double m = 0.0;
  for (const Complex& z : nodes_) m = std::max(m, std::abs(z));
  return m;
}

SymmetricPolys newton_girard(const MomentSequence& s) {
  const int n = s.n();
  ComplexVector sigma(static_cast<std::size_t>(n));
  sigma[0] = s.at(1);
  for (int m = 2; m <= n; ++m) {
    Complex acc = s.at(m);
    double sign = -1.0;  // (-1)^j
    for (int j = 1; j < m; ++j) {
      acc += sign * s.at(m - j) * sigma[static_cast<std::size_t>(j - 1)];
      sign = -sign;
    }
    const double lead = (m % 2 == 0 ? -1.0 : 1.0) / static_cast<double>(m);
    sigma[static_cast<std::size_t>(m - 1)] = lead * acc;
  }
  return SymmetricPolys(std::move(sigma));
}

ComplexVector power_sums_from_zero(std::span<const Complex> nodes, int up_to) {
  ComplexVector sums(static_cast<std::size_t>(up_to) + 1, Complex{0.0, 0.0});
  sums[0] = Complex{static_cast<double>(nodes.size()), 0.0};
  for (const Complex& node : nodes) {
    Complex power{1.0, 0.0};
    for (int m = 1; m <= up_to; ++m) {
      power *= node;
      sums[static_cast<std::size_t>(m)] += power;
    }
  }
  return sums;
}

MomentSequence power_sums_of(const NodeSet& nodes, int up_to) {
  require(up_to >= 1, ErrorKind::InvalidArgument, "up_to must be at least 1");
  ComplexVector sums = power_sums_from_zero(nodes.values(), up_to);
  sums.erase(sums.begin());
  return MomentSequence(std::move(sums));
}

ComplexPolynomial unitary_polynomial(const SymmetricPolys& sigma) {
  const int n = sigma.n();
  ComplexVector c(static_cast<std::size_t>(n) + 1);
  c[static_cast<std::size_t>(n)] = Complex{1.0, 0.0};
  for (int m = 1; m <= n; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    c[static_cast<std::size_t>(n - m)] = sign * sigma.at(m);
  }
  return ComplexPolynomial(std::move(c));
}

namespace {

double moment_residual_of(std::span<const Complex> nodes, const MomentSequence& s) {
  const ComplexVector check = power_sums_from_zero(nodes, s.n());
  double residual = 0.0;
  for (int m = 1; m <= s.n(); ++m)
    residual = std::max(residual, std::abs(check[static_cast<std::size_t>(m)] - s.at(m)));
  return residual;
}

double moment_scale(const MomentSequence& s) {
  double scale = 1.0;
  for (const Complex& v : s.values()) scale = std::max(scale, std::abs(v));
  return scale;
}

constexpr double kUnit = 2.220446049250313e-16;

// max_m |S_m(nodes) - s_m| / (u sum_k |l_k|^m): the moment error in units of
// the rounding error of forming S_m from the nodes themselves.
double rounding_ratio(std::span<const Complex> nodes, const MomentSequence& s) {
  const ComplexVector check = power_sums_from_zero(nodes, s.n());
  ComplexVector abs_nodes;
  for (const Complex& z : nodes) abs_nodes.emplace_back(std::abs(z), 0.0);
  const ComplexVector size = power_sums_from_zero(abs_nodes, s.n());
  double worst = 0.0;
  for (int m = 1; m <= s.n(); ++m) {
    const auto i = static_cast<std::size_t>(m);
    const double err = std::abs(check[i] - s.at(m));
    if (err == 0.0) continue;
    const double unit = kUnit * size[i].real();
    worst = std::max(worst, unit > 0.0 ? err / unit : std::numeric_limits<double>::infinity());
  }
  return worst;
}

// Agglomerative clustering: node pairs are joined closest first and, after
// every join, the grown group is tried as a single point. A join is kept if
// the moments come out no worse than before (or within n rounding units);
// the merged set replaces the input only if it finally reproduces the
// moments to rounding level (ratio <= 64 n). An m-fold node comes back from a
// binary64 root finder as a ring of radius ~ eps^(1/m) that is itself only a
// rounding-level solution; with several rings the errors are correlated and
// collapsing one of them alone can make things worse, so the whole partition
// is tried as well.
void merge_clusters(ComplexVector& nodes, const MomentSequence& s, double& residual) {
  const std::size_t n = nodes.size();
  if (n < 2) return;
  const double dn = static_cast<double>(n);
  double current = rounding_ratio(nodes, s);

  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) pairs.emplace_back(std::abs(nodes[i] - nodes[j]), i, j);
  std::sort(pairs.begin(), pairs.end());

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const auto find = [&parent](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  ComplexVector working(nodes);
  bool changed = false;
  for (const auto& [d, i, j] : pairs) {
    const std::size_t ri = find(i);
    const std::size_t rj = find(j);
    if (ri == rj) continue;
    parent[ri] = rj;
    // The merged point takes whatever the other nodes leave of s_1.
    std::vector<std::size_t> group;
    Complex centre = s.at(1);
    for (std::size_t k = 0; k < n; ++k) {
      if (find(k) == rj)
        group.push_back(k);
      else
        centre -= working[k];
    }
    centre /= static_cast<double>(group.size());
    ComplexVector trial(working);
    for (const std::size_t k : group) trial[k] = centre;
    double ratio = rounding_ratio(trial, s);

    // Alternatively collapse every group of the partition at once, each to
    // its centroid, with the s_1 defect shared by all grouped nodes.
    ComplexVector joint(nodes);
    std::vector<Complex> sum(n, Complex{0.0, 0.0});
    std::vector<std::size_t> size(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
      sum[find(k)] += nodes[k];
      ++size[find(k)];
    }
    std::size_t grouped = 0;
    Complex defect = s.at(1);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t r = find(k);
      if (size[r] > 1) {
        joint[k] = sum[r] / static_cast<double>(size[r]);
        ++grouped;
      }
      defect -= joint[k];
    }
    const Complex shift = defect / static_cast<double>(grouped);
    for (std::size_t k = 0; k < n; ++k)
      if (size[find(k)] > 1) joint[k] += shift;
    const double joint_ratio = rounding_ratio(joint, s);
    if (joint_ratio < ratio) {
      trial = std::move(joint);
      ratio = joint_ratio;
    }

    if (ratio <= std::max(2.0 * current, dn)) {
      working = std::move(trial);
      current = ratio;
      changed = true;
    }
  }
  if (changed && current <= 64.0 * dn) {
    nodes = std::move(working);
    residual = moment_residual_of(nodes, s);
  }
}

}  // namespace

NewtonSolution solve_newton_moment_problem(const MomentSequence& s, const MomentOptions& options) {
  if (s.n() > options.max_n)
    fail(ErrorKind::InvalidArgument, "n = " + std::to_string(s.n()) + " exceeds the precision cap " +
                                         std::to_string(options.max_n));
  for (const Complex& v : s.values())
    require(std::isfinite(v.real()) && std::isfinite(v.imag()), ErrorKind::InvalidArgument,
            "moments must be finite");

  const SymmetricPolys sigma = newton_girard(s);
  for (int m = 1; m <= sigma.n(); ++m) {
    const double mag = std::abs(sigma.at(m));
    if (!(mag <= kSigmaOverflow))
      fail(ErrorKind::ConditioningError,
           "|sigma_" + std::to_string(m) + "| exceeds the overflow guard");
  }

  const ComplexPolynomial poly = unitary_polynomial(sigma);
  ComplexVector seeds;
  double root_residual = 0.0;
  int iterations = 0;
  try {
    const RootResult roots = find_roots(poly, options.roots);
    seeds = roots.roots;
    root_residual = roots.max_residual;
    iterations = roots.iterations;
  } catch (const NonConvergence& e) {
    if (options.precision == Precision::Double) throw;
    seeds = e.roots();
    root_residual = e.residual();
  }

  const double scale = moment_scale(s);
  double residual = moment_residual_of(seeds, s);
  if (options.merge_clusters) merge_clusters(seeds, s, residual);
  const bool exact = s.has_exact_form() && s.n() >= 2;
  if (options.precision == Precision::Double || (!exact && residual <= kAdaptiveResidual * scale))
    return NewtonSolution{NodeSet(seeds), residual, residual / scale, root_residual, iterations, 53, true, nullptr};

  std::span<const Complex> numerators = s.values();
  std::span<const double> denominators;
  if (s.has_exact_form()) {
    numerators = s.numerators();
    denominators = s.denominators();
  }

  // binary64 lost the moments: escalate until two tiers agree in double.
  ComplexVector previous;
  std::shared_ptr<detail::WideNodes> wide;
  int bits = 53;
  bool settled = false;
  double working = 0.0;
  for (const int tier : detail::kExtendedTiers) {
    const detail::ExtendedSolve solve = detail::solve_moments_extended(
        numerators, denominators, previous.empty() ? std::span<const Complex>(seeds) : previous,
        tier, std::max(options.roots.max_iter, 1000));
    iterations += solve.iterations;
    bits = tier;
    working = solve.working_residual;
    if (!previous.empty()) {
      double top = 1.0;
      for (const Complex& z : solve.nodes) top = std::max(top, std::abs(z));
      if (multiset_distance(solve.nodes, previous) <= 8.0 * 2.220446049250313e-16 * top) {
        previous = solve.nodes;
        wide = solve.wide;
        settled = true;
        break;
      }
    }
    previous = solve.nodes;
    wide = solve.wide;
  }
  double final_residual = moment_residual_of(previous, s);
  const ComplexVector unmerged = previous;
  if (options.merge_clusters) merge_clusters(previous, s, final_residual);
  // Merged nodes are only known in double.
  for (std::size_t k = 0; k < previous.size(); ++k)
    if (previous[k] != unmerged[k]) wide->values[k] = detail::lift<detail::WideReal>(previous[k]);

  std::vector<std::size_t> order(previous.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&previous](std::size_t i, std::size_t j) { return canonical_less(previous[i], previous[j]); });
  auto sorted = std::make_shared<detail::WideNodes>();
  for (const std::size_t k : order) sorted->values.push_back(wide->values[k]);
  NodeSet nodes(std::move(previous));
  return NewtonSolution{std::move(nodes), final_residual, working, root_residual, iterations, bits, settled, std::move(sorted)};
}

double multiset_distance(std::span<const Complex> a, std::span<const Complex> b) {
  require(a.size() == b.size(), ErrorKind::InvalidArgument, "multisets differ in size");
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  pairs.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) pairs.emplace_back(std::abs(a[i] - b[j]), i, j);
  std::sort(pairs.begin(), pairs.end());
  std::vector<bool> used_a(a.size(), false);
  std::vector<bool> used_b(b.size(), false);
  double worst = 0.0;
  std::size_t matched = 0;
  for (const auto& [d, i, j] : pairs) {
    if (used_a[i] || used_b[j]) continue;
    used_a[i] = used_b[j] = true;
    worst = std::max(worst, d);
    if (++matched == a.size()) break;
  }
  return worst;
}

}  // namespace eqw
