#pragma once

#include "falva/grid.hpp"

namespace falva {

enum class OperatorKind {
  LeftIntegral,
  RightIntegral,
  LeftDerivative,
  RightDerivative,
  Combined,
  CombinedAdjointSide,
};

/// Left Riemann-Liouville fractional integral of order alpha > 0, computed by
/// product integration that is exact for piecewise-linear integrands against
/// the kernel (tau_j - s)^(alpha-1). The value at the first node is 0.
SampledFunction left_rl_integral(const SampledFunction& f, double alpha);

/// Mirror of left_rl_integral with kernel (s - tau_j)^(alpha-1); the value at
/// the last node is 0.
SampledFunction right_rl_integral(const SampledFunction& f, double alpha);

/// Left Riemann-Liouville fractional derivative of order alpha in (0, 1],
/// computed by the Grunwald-Letnikov scheme (first order). Functions with
/// f(a) != 0 carry an analytic (tau-a)^(-alpha) singularity at the left
/// endpoint; node 0 holds the scheme value and is excluded from interior
/// norms.
SampledFunction left_rl_derivative(const SampledFunction& f, double alpha);

/// Right-sided counterpart with the sign convention of the definition
/// (order-1 limit is -d/dtau). Node n-1 is the scheme-dependent endpoint.
SampledFunction right_rl_derivative(const SampledFunction& f, double alpha);

/// Combined derivative of order (alpha, beta):
///   (1 + i gamma)/2 * left - (1 - i gamma)/2 * right.
/// Sides with an exactly-zero coefficient are skipped, so the gamma = -i and
/// gamma = +i reductions reproduce the one-sided operators bit for bit.
SampledFunction combined_derivative(const SampledFunction& f, const OrderSpec& order);

/// The operator appearing on the adjoint side of integration by parts:
/// orders swapped and gamma negated.
SampledFunction combined_adjoint_side(const SampledFunction& g, const OrderSpec& order);

/// Dispatch by kind. One-sided kinds take their single order from
/// order.alpha() (left) or order.beta() (right).
SampledFunction apply_operator(OperatorKind kind, const SampledFunction& f,
                               const OrderSpec& order);

/// Integration-by-parts defect
///   integral(combined(f) * g) + integral(f * adjoint_side(g))
/// by trapezoidal quadrature. Requires f or g to vanish at both endpoints
/// (|boundary| <= 1e-12); tends to 0 under grid refinement for smooth data.
Complex ibp_defect(const SampledFunction& f, const SampledFunction& g,
                   const OrderSpec& order);

}  // namespace falva
