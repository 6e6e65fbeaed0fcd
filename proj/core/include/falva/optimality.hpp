#pragma once

#include "falva/action.hpp"
#include "falva/grid.hpp"

namespace falva {

/// Per-node residual of the optimality condition
///   dL/dq - adjoint_side(dL/dv) - ((1-alpha)/(t-tau)) dL/dv
/// with v the combined derivative of the path. Nodes where tau = t_obs (only
/// possible at the last node) carry a kernel pole; their residual is stored
/// with the pole term dropped and the node is listed in excluded_nodes. The
/// norm is the interior max.
struct ELResidual {
  SampledFunction values;
  double interior_max = 0.0;
  std::vector<std::size_t> excluded_nodes;
};

ELResidual el_residual(const SampledFunction& q, const Lagrangian& lagrangian,
                       const OrderSpec& order);

/// The decaying friction term ((alpha-1)/T) dL/dv with T = tau - t_obs.
/// Nodes with T = 0 are excluded and flagged (value set to 0).
struct FrictionForce {
  SampledFunction values;
  std::vector<double> shifted_time;  // T = tau - t_obs per node
  std::vector<std::size_t> excluded_nodes;
};

FrictionForce friction_force(const SampledFunction& q, const Lagrangian& lagrangian,
                             const OrderSpec& order);

/// Fractional momentum p(tau) = -dL/dv (t - tau)^(alpha-1). A kernel pole
/// (tau = t_obs with alpha < 1, only ever the last node) stores 0 at that
/// node; interior norms never see it.
SampledFunction fractional_momentum(const SampledFunction& q, const Lagrangian& lagrangian,
                                    const OrderSpec& order);

/// Interior-max norm of the adjoint-side operator applied to a candidate
/// constant of motion; zero in the limit iff C is conserved.
double constant_of_motion_defect(const SampledFunction& candidate, const OrderSpec& order);

}  // namespace falva
