#pragma once

#include <optional>
#include <string>

#include "falva/action.hpp"
#include "falva/grid.hpp"

namespace falva {

struct SolveOptions {
  std::size_t max_iterations = 500;
  double gradient_tolerance = 1e-8;
  double shrink_factor = 0.5;        // backtracking step shrink
  double sufficient_decrease = 1e-4; // Armijo constant
  std::optional<SampledFunction> seed_path;
};

struct SolveReport {
  SampledFunction final_path;
  Complex final_action{0.0, 0.0};   // discrete objective at the returned path
  double gradient_norm = 0.0;       // interior max-abs of the discrete gradient
  std::size_t iterations = 0;
  bool converged = false;
  double el_residual_norm = 0.0;    // post-hoc, from the optimality module
  std::string method;
  std::vector<double> action_history;  // accepted objective values, non-increasing
};

/// Objective minimized by the direct method: the kernel-weighted Lagrangian
/// summed over grid cells aligned with the one-sided difference stencil
/// (cells [tau_{j-1}, tau_j] for gamma = -i, [tau_j, tau_{j+1}] for
/// gamma = +i). Only gamma in {-i, +i} is admitted: for other gamma the
/// action is complex-valued and minimization is undefined.
Complex discrete_action_value(const SampledFunction& q, const Lagrangian& lagrangian,
                              const OrderSpec& order);

/// Exact gradient of the real part of the discrete action with respect to
/// interior node values; endpoint slots are zero. The chain rule goes through
/// the discrete operator matrix, whose transpose is the negated adjoint-side
/// operator.
SampledFunction discrete_action_gradient(const SampledFunction& q,
                                         const Lagrangian& lagrangian,
                                         const OrderSpec& order);

/// Direct minimization over paths with pinned endpoints. Boundary values must
/// be real. Non-convergence is reported, not thrown; non-finite values throw
/// NumericalError with an iterate dump.
SolveReport minimize_action(const Lagrangian& lagrangian, const OrderSpec& order,
                            const Grid& grid, const CVec& q_a, const CVec& q_b,
                            const SolveOptions& options = {});

/// Scalar-path convenience overload.
SolveReport minimize_action(const Lagrangian& lagrangian, const OrderSpec& order,
                            const Grid& grid, double q_a, double q_b,
                            const SolveOptions& options = {});

}  // namespace falva
