#pragma once

#include <map>
#include <string>

#include "falva/action.hpp"
#include "falva/solver.hpp"

namespace falva {

/// L = (mass/2) v.v  (bilinear square, analytic in v).
Lagrangian make_free_lagrangian(double mass = 1.0);

/// L = (mass/2) v.v + (stiffness/2) q.q, the convex boundary-value form whose
/// order-one extremals are hyperbolic sines.
Lagrangian make_oscillator_lagrangian(double mass = 1.0, double stiffness = 1.0);

/// L = coupling (v.q) + (stiffness/2) q.q, linear in the velocity.
Lagrangian make_linear_velocity_lagrangian(double coupling = 1.0, double stiffness = 1.0);

/// name in {free, oscillator, linear-velocity}; unknown names or coefficient
/// keys are rejected with a DomainError naming the offender.
Lagrangian make_builtin_lagrangian(const std::string& name,
                                   const std::map<std::string, double>& coefficients);

/// Everything a CLI run needs, parsed from a JSON config file. Validation
/// reuses the Grid/OrderSpec invariants and names the offending field.
struct ProblemConfig {
  double a = 0.0;
  double b = 1.0;
  std::size_t n_points = 257;
  double t_obs = 1.0;
  double alpha = 1.0;
  double beta = 1.0;
  Complex gamma = kGammaLeftSided;
  std::string lagrangian_name = "free";
  std::map<std::string, double> coefficients;
  double q_a = 0.0;
  double q_b = 1.0;
  SolveOptions solver;
  std::string function_name = "identity";  // input for the operator table
  std::string output_dir;                  // optional; --out overrides

  Grid grid() const { return make_grid(a, b, n_points, t_obs); }
  OrderSpec order() const { return OrderSpec(alpha, beta, gamma); }
  Lagrangian lagrangian() const {
    return make_builtin_lagrangian(lagrangian_name, coefficients);
  }
};

ProblemConfig parse_problem_config(const std::string& json_text);
ProblemConfig load_problem_config(const std::string& path);

/// Named scalar test functions for the operator table:
/// zero, one, identity, square, cube, sin, cos, bridge (tau(1-tau) rescaled).
std::function<Complex(double)> named_function(const std::string& name, const Grid& grid);

}  // namespace falva
