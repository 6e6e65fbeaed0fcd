#include "falva/hamiltonian.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "falva/optimality.hpp"

namespace falva {

namespace {

// p^T J for a row-major d x d Jacobian: component k = sum_m p_m J[m*d + k].
CVec left_multiply(CPoint p, const CVec& jac, std::size_t d) {
  CVec out(d, Complex{0.0, 0.0});
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t k = 0; k < d; ++k) {
      out[k] += p[m] * jac[m * d + k];
    }
  }
  return out;
}

// Solves A x = b for a small dense complex system (partial pivoting).
CVec solve_dense(CVec a, CVec b, std::size_t d) {
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < d; ++r) {
      if (std::abs(a[r * d + col]) > std::abs(a[pivot * d + col])) pivot = r;
    }
    if (std::abs(a[pivot * d + col]) == 0.0) {
      throw NumericalError("corollary3_check: singular du-phi Jacobian");
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < d; ++c) std::swap(a[col * d + c], a[pivot * d + c]);
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t r = col + 1; r < d; ++r) {
      const Complex factor = a[r * d + col] / a[col * d + col];
      for (std::size_t c = col; c < d; ++c) a[r * d + c] -= factor * a[col * d + c];
      b[r] -= factor * b[col];
    }
  }
  CVec x(d);
  for (std::size_t ri = d; ri-- > 0;) {
    Complex acc = b[ri];
    for (std::size_t c = ri + 1; c < d; ++c) acc -= a[ri * d + c] * x[c];
    x[ri] = acc / a[ri * d + ri];
  }
  return x;
}

void validate_observable(const Observable& f, CPoint q, CPoint p, double tau,
                         const char* name) {
  const std::size_t d = f.dim;
  const double step = 1e-6;
  const CVec dq = f.d_q(q, p, tau);
  const CVec dp = f.d_p(q, p, tau);
  CVec qv(q.begin(), q.end());
  CVec pv(p.begin(), p.end());
  for (std::size_t k = 0; k < d; ++k) {
    CVec qp = qv, qm = qv;
    qp[k] += step;
    qm[k] -= step;
    const Complex fd_q = (f.value(qp, pv, tau) - f.value(qm, pv, tau)) / (2.0 * step);
    CVec pp = pv, pm = pv;
    pp[k] += step;
    pm[k] -= step;
    const Complex fd_p = (f.value(qv, pp, tau) - f.value(qv, pm, tau)) / (2.0 * step);
    const double denom_q = std::max({1.0, std::abs(dq[k]), std::abs(fd_q)});
    const double denom_p = std::max({1.0, std::abs(dp[k]), std::abs(fd_p)});
    if (std::abs(dq[k] - fd_q) > 1e-5 * denom_q ||
        std::abs(dp[k] - fd_p) > 1e-5 * denom_p) {
      throw PreconditionError(std::string("poisson_bracket: partials of ") + name +
                              " disagree with finite differences at the evaluation point");
    }
  }
}

}  // namespace

Complex hamiltonian_value(CPoint u, CPoint q, CPoint p, double tau,
                          const ControlProblem& problem, const Grid& grid) {
  const double alpha = problem.order.alpha();
  if (alpha < 1.0 && grid.t_obs() - tau == 0.0) {
    std::ostringstream os;
    os << "hamiltonian_value: kernel pole at tau = t_obs = " << tau;
    throw NumericalError(os.str());
  }
  const double kernel = std::pow(grid.t_obs() - tau, alpha - 1.0);
  Complex acc = problem.lagrangian.value(u, q, tau) * kernel;
  const CVec rhs = problem.phi(u, q, tau);
  for (std::size_t c = 0; c < u.size(); ++c) acc += p[c] * rhs[c];
  return acc;
}

HamiltonianResiduals hamiltonian_system_residuals(const AugmentedState& state,
                                                  const ControlProblem& problem) {
  const Grid& grid = state.q.grid();
  const std::size_t n = grid.size();
  const std::size_t d = state.q.dim();
  const double alpha = problem.order.alpha();
  const std::size_t margin = interior_margin(n);

  const SampledFunction v = combined_derivative(state.q, problem.order);
  const SampledFunction adj_p = combined_adjoint_side(state.p, problem.order);

  HamiltonianResiduals out;
  for (std::size_t j = margin; j + margin < n; ++j) {
    const double tau = grid.node(j);
    if (alpha < 1.0 && grid.t_obs() - tau == 0.0) continue;  // kernel pole node
    const double kernel = kernel_at(grid, alpha, j);

    const CVec phi = problem.phi(state.u.at(j), state.q.at(j), tau);
    const CVec d_u_l = problem.lagrangian.d_v(state.u.at(j), state.q.at(j), tau);
    const CVec d_q_l = problem.lagrangian.d_q(state.u.at(j), state.q.at(j), tau);
    const CVec jac_u = problem.d_u_phi(state.u.at(j), state.q.at(j), tau);
    const CVec jac_q = problem.d_q_phi(state.u.at(j), state.q.at(j), tau);
    const CVec p_jac_u = left_multiply(state.p.at(j), jac_u, d);
    const CVec p_jac_q = left_multiply(state.p.at(j), jac_q, d);

    for (std::size_t c = 0; c < d; ++c) {
      out.dyn_defect = std::max(out.dyn_defect, std::abs(v.value(j, c) - phi[c]));
      out.costate_defect = std::max(
          out.costate_defect,
          std::abs(adj_p.value(j, c) + d_q_l[c] * kernel + p_jac_q[c]));
      out.stationarity_defect = std::max(
          out.stationarity_defect, std::abs(d_u_l[c] * kernel + p_jac_u[c]));
    }
  }
  return out;
}

Complex poisson_bracket(const Observable& f, const Observable& g, CPoint q, CPoint p,
                        double tau) {
  if (f.dim != g.dim || f.dim != q.size() || f.dim != p.size()) {
    throw DomainError("poisson_bracket: dimension mismatch");
  }
  validate_observable(f, q, p, tau, "f");
  validate_observable(g, q, p, tau, "g");
  const CVec f_q = f.d_q(q, p, tau);
  const CVec f_p = f.d_p(q, p, tau);
  const CVec g_q = g.d_q(q, p, tau);
  const CVec g_p = g.d_p(q, p, tau);
  Complex acc{0.0, 0.0};
  for (std::size_t k = 0; k < f.dim; ++k) {
    acc += f_p[k] * g_q[k] - f_q[k] * g_p[k];
  }
  return acc;
}

double corollary3_check(const ControlProblem& problem, const AugmentedState& state) {
  const std::size_t d = problem.lagrangian.dim;
  const Grid& grid = state.q.grid();
  const double alpha = problem.order.alpha();

  // Probe q-independence of L and phi at random points.
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::uniform_real_distribution<double> tdist(grid.a(), grid.b());
  CVec u(d), q(d);
  for (int probe = 0; probe < 16; ++probe) {
    for (std::size_t k = 0; k < d; ++k) {
      u[k] = Complex{dist(rng), 0.0};
      q[k] = Complex{dist(rng), 0.0};
    }
    const double tau = tdist(rng);
    const CVec dql = problem.lagrangian.d_q(u, q, tau);
    for (const Complex& z : dql) {
      if (std::abs(z) > 1e-12) {
        throw PreconditionError("corollary3_check: Lagrangian depends on q");
      }
    }
    const CVec dqp = problem.d_q_phi(u, q, tau);
    for (const Complex& z : dqp) {
      if (std::abs(z) > 1e-12) {
        throw PreconditionError("corollary3_check: dynamics map depends on q");
      }
    }
  }

  // Costate solving the stationary condition along the state:
  //   p . d_u phi = -dL/du * kernel.
  SampledFunction p = SampledFunction::zeros(grid, d);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double tau = grid.node(j);
    if (alpha < 1.0 && grid.t_obs() - tau == 0.0) continue;
    const double kernel = kernel_at(grid, alpha, j);
    const CVec d_u_l = problem.lagrangian.d_v(state.u.at(j), state.q.at(j), tau);
    if (problem.identity_in_u) {
      for (std::size_t c = 0; c < d; ++c) p.value(j, c) = -d_u_l[c] * kernel;
      continue;
    }
    // Transpose of the row-major Jacobian gives J^T p = -dL/du * kernel.
    const CVec jac_u = problem.d_u_phi(state.u.at(j), state.q.at(j), tau);
    CVec a(d * d);
    CVec b(d);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) a[r * d + c] = jac_u[c * d + r];
      b[r] = -d_u_l[r] * kernel;
    }
    const CVec pj = solve_dense(std::move(a), std::move(b), d);
    for (std::size_t c = 0; c < d; ++c) p.value(j, c) = pj[c];
  }
  return constant_of_motion_defect(p, problem.order);
}

}  // namespace falva
