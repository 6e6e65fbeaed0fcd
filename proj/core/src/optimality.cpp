#include "falva/optimality.hpp"

#include <cmath>

namespace falva {

namespace {

SampledFunction velocity_partial(const SampledFunction& q, const SampledFunction& v,
                                 const Lagrangian& lagrangian) {
  SampledFunction w = SampledFunction::zeros(q.grid(), q.dim());
  for (std::size_t j = 0; j < q.size(); ++j) {
    const CVec dv = lagrangian.d_v(v.at(j), q.at(j), q.grid().node(j));
    for (std::size_t c = 0; c < q.dim(); ++c) w.value(j, c) = dv[c];
  }
  return w;
}

}  // namespace

ELResidual el_residual(const SampledFunction& q, const Lagrangian& lagrangian,
                       const OrderSpec& order) {
  if (q.dim() != lagrangian.dim) {
    throw GridMismatchError("el_residual: path dimension does not match the Lagrangian");
  }
  const Grid& grid = q.grid();
  const std::size_t n = grid.size();
  const std::size_t d = q.dim();
  const double alpha = order.alpha();
  const double t = grid.t_obs();

  const SampledFunction v = combined_derivative(q, order);
  const SampledFunction w = velocity_partial(q, v, lagrangian);
  const SampledFunction adj = combined_adjoint_side(w, order);

  ELResidual out{SampledFunction::zeros(grid, d), 0.0, {}};
  for (std::size_t j = 0; j < n; ++j) {
    const double tau = grid.node(j);
    const CVec dq = lagrangian.d_q(v.at(j), q.at(j), tau);
    const bool pole = (alpha < 1.0) && (t - tau == 0.0);
    if (pole) out.excluded_nodes.push_back(j);
    const double friction_coef = (alpha == 1.0 || pole) ? 0.0 : (1.0 - alpha) / (t - tau);
    for (std::size_t c = 0; c < d; ++c) {
      out.values.value(j, c) =
          dq[c] - adj.value(j, c) - friction_coef * w.value(j, c);
    }
  }
  out.interior_max = interior_max_abs(out.values);
  return out;
}

FrictionForce friction_force(const SampledFunction& q, const Lagrangian& lagrangian,
                             const OrderSpec& order) {
  if (q.dim() != lagrangian.dim) {
    throw GridMismatchError("friction_force: path dimension does not match the Lagrangian");
  }
  const Grid& grid = q.grid();
  const std::size_t n = grid.size();
  const double alpha = order.alpha();
  const double t = grid.t_obs();

  const SampledFunction v = combined_derivative(q, order);
  const SampledFunction w = velocity_partial(q, v, lagrangian);

  FrictionForce out{SampledFunction::zeros(grid, q.dim()), std::vector<double>(n), {}};
  for (std::size_t j = 0; j < n; ++j) {
    const double shifted = grid.node(j) - t;
    out.shifted_time[j] = shifted;
    if (alpha == 1.0) continue;  // coefficient vanishes identically
    if (shifted == 0.0) {
      out.excluded_nodes.push_back(j);
      continue;
    }
    const double coef = (alpha - 1.0) / shifted;
    for (std::size_t c = 0; c < q.dim(); ++c) {
      out.values.value(j, c) = coef * w.value(j, c);
    }
  }
  return out;
}

SampledFunction fractional_momentum(const SampledFunction& q, const Lagrangian& lagrangian,
                                    const OrderSpec& order) {
  if (q.dim() != lagrangian.dim) {
    throw GridMismatchError(
        "fractional_momentum: path dimension does not match the Lagrangian");
  }
  const Grid& grid = q.grid();
  const double alpha = order.alpha();

  const SampledFunction v = combined_derivative(q, order);
  const SampledFunction w = velocity_partial(q, v, lagrangian);

  SampledFunction p = SampledFunction::zeros(grid, q.dim());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (alpha < 1.0 && grid.t_obs() - grid.node(j) == 0.0) continue;  // kernel pole
    const double kernel = kernel_at(grid, alpha, j);
    for (std::size_t c = 0; c < q.dim(); ++c) {
      p.value(j, c) = -w.value(j, c) * kernel;
    }
  }
  return p;
}

double constant_of_motion_defect(const SampledFunction& candidate, const OrderSpec& order) {
  return interior_max_abs(combined_adjoint_side(candidate, order));
}

}  // namespace falva
