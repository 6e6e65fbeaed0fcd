#pragma once

#include "falva/action.hpp"
#include "falva/grid.hpp"

namespace falva {

/// Interior-max defects of the Hamiltonian system and stationary condition:
///   dyn:         Dq - dH/dp            (= Dq - phi)
///   costate:     adjoint_side(p) + dH/dq
///   stationary:  dH/du
struct HamiltonianResiduals {
  double dyn_defect = 0.0;
  double costate_defect = 0.0;
  double stationarity_defect = 0.0;
};

/// H(u, q, p, tau) = L(u, q, tau) (t - tau)^(alpha-1) + p . phi(u, q, tau),
/// with a plain bilinear pairing (no conjugation). Throws NumericalError at
/// a kernel pole (tau = t_obs with alpha < 1).
Complex hamiltonian_value(CPoint u, CPoint q, CPoint p, double tau,
                          const ControlProblem& problem, const Grid& grid);

HamiltonianResiduals hamiltonian_system_residuals(const AugmentedState& state,
                                                  const ControlProblem& problem);

/// A point function of (q, p, tau) with supplied partials, suitable for the
/// Poisson bracket.
struct Observable {
  std::function<Complex(CPoint q, CPoint p, double tau)> value;
  std::function<CVec(CPoint q, CPoint p, double tau)> d_q;
  std::function<CVec(CPoint q, CPoint p, double tau)> d_p;
  std::size_t dim = 1;
};

/// {f, g} = df/dp . dg/dq - df/dq . dg/dp (the ordering used throughout this
/// library). Partials are validated by central finite differences at the
/// evaluation point; mismatch throws PreconditionError.
Complex poisson_bracket(const Observable& f, const Observable& g, CPoint q, CPoint p,
                        double tau);

/// For q-independent L and phi (probed at random points; q-dependence throws
/// PreconditionError), builds the costate solving the stationary condition
/// along the state and returns its constant-of-motion defect.
double corollary3_check(const ControlProblem& problem, const AugmentedState& state);

}  // namespace falva
