// Equal-weight Chebyshev quadrature, the differentiation formula and the
// exponential sum for 1/(z+1).
#pragma once

#include <functional>
#include <string>

#include "eqw/kernels.hpp"
#include "eqw/pade.hpp"
#include "eqw/powersums.hpp"
#include "eqw/prony.hpp"

namespace eqw {

enum class QuadratureVariant {
  Standard,  // (1/x) int_{-x}^{x} h ~ (2/n) sum h(l_k x)
  Shifted,   // (1/x) int_0^x h ~ (1/n) sum h(l_k x)
};

std::string_view to_string(QuadratureVariant v) noexcept;

struct QuadratureRule {
  NodeSet nodes;
  double weight;  // 2/n or 1/n
  QuadratureVariant variant;
  int n;
  double moment_residual;
};

/// Moments of the node problem: (n/2)(1+(-1)^m)/(m+1) or n/(m+1), in exact
/// quotient form.
MomentSequence chebyshev_moments(int n, QuadratureVariant variant);

/// Nodes depend only on n and the variant, never on the integrand.
QuadratureRule chebyshev_nodes(int n, QuadratureVariant variant, const MomentOptions& options = {});

/// Nodes with |Im l| <= tol * max(1, |l|) count as real.
bool all_nodes_real(const NodeSet& nodes, double tol = 1e-9);

/// Integrand for integrate(). A real-only integrand is evaluated at Re w and
/// refuses complex nodes.
class Integrand {
 public:
  static Integrand complex(std::function<Complex(Complex)> f);
  static Integrand real_only(std::function<double(double)> f);

  bool accepts_complex() const noexcept { return !real_; }
  Complex operator()(Complex w) const;

 private:
  std::function<Complex(Complex)> complex_;
  std::function<double(double)> real_;
};

/// x * weight * sum_k h(l_k x): the rule's approximation of the integral of
/// h over [-x, x] (standard) or [0, x] (shifted). RealOnlyKernel if h is real
/// only and some node is not real.
Complex integrate(const QuadratureRule& rule, const Integrand& h, double x,
                  kernels::Exec exec = kernels::Exec::Serial);

/// z h'(z) ~ t(-h(0) + (1/n) sum_k h(l_k z)), nodes from S_m = (n/t) m.
struct DiffFormula {
  double t;
  int n;
  double mu;  // = t
  NodeSet nodes;
  double node_bound;  // (2n+1) t^(-1/n)
  double gamma;       // n
  double a;           // t^(-1/n)
  double moment_residual;

  /// Remainder envelope in |z| (part (b) bound with gamma = n, a = t^(-1/n)).
  double envelope(double z_abs) const;

  /// The formula's approximation of z h'(z).
  Complex apply(const std::function<Complex(Complex)>& h, Complex z) const;
};

DiffFormula diff_formula(double t, int n, const MomentOptions& options = {});

/// Equal-weight Prony interpolant of {m, 1/(m+1)}, m = 0..n.
ExpInterpolant exp_sum_for_reciprocal(int n, const MomentOptions& options = {});

}  // namespace eqw
