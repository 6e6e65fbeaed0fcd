#pragma once

#include <cstdint>
#include <functional>

#include "falva/grid.hpp"
#include "falva/operators.hpp"

namespace falva {

using CPoint = std::span<const Complex>;

/// A Lagrangian L(v, q, tau) given with its first-slot and second-slot
/// partials. The value maps to the reals for physical (real) arguments; for
/// complex velocity arguments the complex value is kept and surfaced, since
/// the combined derivative of a real path is complex for general gamma.
struct Lagrangian {
  std::function<Complex(CPoint v, CPoint q, double tau)> value;
  std::function<CVec(CPoint v, CPoint q, double tau)> d_v;  // partial in the velocity slot
  std::function<CVec(CPoint v, CPoint q, double tau)> d_q;
  std::size_t dim = 1;
};

/// Convenience wrapper for scalar (d = 1) Lagrangians.
Lagrangian make_scalar_lagrangian(
    std::function<Complex(Complex v, Complex q, double tau)> value,
    std::function<Complex(Complex v, Complex q, double tau)> d_v,
    std::function<Complex(Complex v, Complex q, double tau)> d_q);

/// Checks the supplied partials against central finite differences of the
/// value at `probes` random real points (relative error <= 1e-5). Throws
/// PreconditionError on mismatch.
void validate_partials(const Lagrangian& lagrangian, std::uint64_t seed = 20240401,
                       std::size_t probes = 100);

/// Optimal-control data: Lagrangian, dynamics map phi(u, q, tau) with its
/// Jacobians (row-major d x d, entry [m*d + k] = d phi_m / d x_k), the order
/// spec and fixed boundary values.
struct ControlProblem {
  Lagrangian lagrangian;
  std::function<CVec(CPoint u, CPoint q, double tau)> phi;
  std::function<CVec(CPoint u, CPoint q, double tau)> d_u_phi;
  std::function<CVec(CPoint u, CPoint q, double tau)> d_q_phi;
  OrderSpec order;
  CVec q_a;
  CVec q_b;
  bool identity_in_u = false;  // phi(u, q, tau) == u
};

/// The calculus-of-variations special case phi(u, q, tau) = u.
ControlProblem make_cov_problem(Lagrangian lagrangian, OrderSpec order, CVec q_a,
                                CVec q_b);

/// Path, control and multiplier sharing one grid.
struct AugmentedState {
  AugmentedState(SampledFunction q_in, SampledFunction u_in, SampledFunction p_in);
  SampledFunction q;
  SampledFunction u;
  SampledFunction p;
};

/// Node weights w_j with  integral_a^b f(tau) (t - tau)^(alpha-1) dtau
/// ~= sum_j w_j f(tau_j), exact for piecewise-linear f. The integrable
/// singularity at tau = b (when t_obs = b) is absorbed into the last cell's
/// closed-form moments; the kernel itself is never evaluated at the pole.
std::vector<double> kernel_weights(const Grid& grid, double alpha);

/// Cell masses m_j = integral over [tau_{j-1}, tau_j] of (t - tau)^(alpha-1),
/// j = 1..n-1; entry 0 is 0.
std::vector<double> kernel_cell_masses(const Grid& grid, double alpha);

/// Pointwise kernel value (t - tau_j)^(alpha-1).
double kernel_at(const Grid& grid, double alpha, std::size_t node);

/// Fractional action: (1/Gamma(alpha)) integral L(Dq, q, tau) (t-tau)^(alpha-1).
/// The imaginary part is reported, not discarded.
Complex action_value(const SampledFunction& q, const Lagrangian& lagrangian,
                     const OrderSpec& order);

/// Control form of the action with an explicit control u in the first slot.
/// Does not check the dynamics constraint; see dynamics_defect.
Complex control_action_value(const SampledFunction& u, const SampledFunction& q,
                             const ControlProblem& problem);

/// Interior-max norm of combined_derivative(q) - phi(u, q, tau).
double dynamics_defect(const AugmentedState& state, const ControlProblem& problem);

/// Augmented action (1/Gamma(alpha)) integral [H(u,q,p,tau) - p . Dq] dtau,
/// with H = L.kernel + p.phi. The kernel-weighted L part uses product
/// integration; the smooth multiplier part uses the trapezoidal rule.
Complex augmented_action_value(const AugmentedState& state, const ControlProblem& problem);

}  // namespace falva
