#include "falva/action.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <utility>

#include "falva/special.hpp"

namespace falva {

Lagrangian make_scalar_lagrangian(
    std::function<Complex(Complex v, Complex q, double tau)> value,
    std::function<Complex(Complex v, Complex q, double tau)> d_v,
    std::function<Complex(Complex v, Complex q, double tau)> d_q) {
  Lagrangian out;
  out.dim = 1;
  out.value = [value = std::move(value)](CPoint v, CPoint q, double tau) {
    return value(v[0], q[0], tau);
  };
  out.d_v = [d_v = std::move(d_v)](CPoint v, CPoint q, double tau) {
    return CVec{d_v(v[0], q[0], tau)};
  };
  out.d_q = [d_q = std::move(d_q)](CPoint v, CPoint q, double tau) {
    return CVec{d_q(v[0], q[0], tau)};
  };
  return out;
}

void validate_partials(const Lagrangian& lagrangian, std::uint64_t seed,
                       std::size_t probes) {
  const std::size_t d = lagrangian.dim;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::uniform_real_distribution<double> tdist(0.0, 1.0);
  const double step = 1e-6;

  CVec v(d), q(d);
  for (std::size_t probe = 0; probe < probes; ++probe) {
    for (std::size_t k = 0; k < d; ++k) {
      v[k] = Complex{dist(rng), 0.0};
      q[k] = Complex{dist(rng), 0.0};
    }
    const double tau = tdist(rng);
    const CVec dv = lagrangian.d_v(v, q, tau);
    const CVec dq = lagrangian.d_q(v, q, tau);
    for (std::size_t k = 0; k < d; ++k) {
      CVec vp = v, vm = v;
      vp[k] += step;
      vm[k] -= step;
      const Complex fd_v =
          (lagrangian.value(vp, q, tau) - lagrangian.value(vm, q, tau)) / (2.0 * step);
      CVec qp = q, qm = q;
      qp[k] += step;
      qm[k] -= step;
      const Complex fd_q =
          (lagrangian.value(v, qp, tau) - lagrangian.value(v, qm, tau)) / (2.0 * step);

      const double denom_v = std::max({1.0, std::abs(dv[k]), std::abs(fd_v)});
      const double denom_q = std::max({1.0, std::abs(dq[k]), std::abs(fd_q)});
      if (std::abs(dv[k] - fd_v) > 1e-5 * denom_v) {
        std::ostringstream os;
        os << "validate_partials: d_v[" << k << "] disagrees with finite differences"
           << " (analytic " << dv[k] << ", fd " << fd_v << ")";
        throw PreconditionError(os.str());
      }
      if (std::abs(dq[k] - fd_q) > 1e-5 * denom_q) {
        std::ostringstream os;
        os << "validate_partials: d_q[" << k << "] disagrees with finite differences"
           << " (analytic " << dq[k] << ", fd " << fd_q << ")";
        throw PreconditionError(os.str());
      }
    }
  }
}

ControlProblem make_cov_problem(Lagrangian lagrangian, OrderSpec order, CVec q_a,
                                CVec q_b) {
  const std::size_t d = lagrangian.dim;
  if (q_a.size() != d || q_b.size() != d) {
    throw DomainError("make_cov_problem: boundary values must have the Lagrangian dimension");
  }
  ControlProblem out{
      std::move(lagrangian),
      [](CPoint u, CPoint, double) { return CVec(u.begin(), u.end()); },
      [d](CPoint, CPoint, double) {
        CVec jac(d * d, Complex{0.0, 0.0});
        for (std::size_t k = 0; k < d; ++k) jac[k * d + k] = 1.0;
        return jac;
      },
      [d](CPoint, CPoint, double) { return CVec(d * d, Complex{0.0, 0.0}); },
      order,
      std::move(q_a),
      std::move(q_b),
      true,
  };
  return out;
}

AugmentedState::AugmentedState(SampledFunction q_in, SampledFunction u_in,
                               SampledFunction p_in)
    : q(std::move(q_in)), u(std::move(u_in)), p(std::move(p_in)) {
  require_same_grid(q, u, "AugmentedState");
  require_same_grid(q, p, "AugmentedState");
}

std::vector<double> kernel_weights(const Grid& grid, double alpha) {
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  const double t = grid.t_obs();
  std::vector<double> w(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double big = t - grid.node(k);
    const double small = t - grid.node(k + 1);
    const double m0 = (std::pow(big, alpha) - std::pow(small, alpha)) / alpha;
    const double m1 =
        big * m0 - (std::pow(big, alpha + 1.0) - std::pow(small, alpha + 1.0)) / (alpha + 1.0);
    w[k] += m0 - m1 / h;
    w[k + 1] += m1 / h;
  }
  return w;
}

std::vector<double> kernel_cell_masses(const Grid& grid, double alpha) {
  const std::size_t n = grid.size();
  const double t = grid.t_obs();
  std::vector<double> m(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    const double big = t - grid.node(j - 1);
    const double small = t - grid.node(j);
    m[j] = (std::pow(big, alpha) - std::pow(small, alpha)) / alpha;
  }
  return m;
}

double kernel_at(const Grid& grid, double alpha, std::size_t node) {
  return std::pow(grid.t_obs() - grid.node(node), alpha - 1.0);
}

Complex action_value(const SampledFunction& q, const Lagrangian& lagrangian,
                     const OrderSpec& order) {
  if (q.dim() != lagrangian.dim) {
    throw GridMismatchError("action_value: path dimension does not match the Lagrangian");
  }
  const SampledFunction v = combined_derivative(q, order);
  const std::vector<double> w = kernel_weights(q.grid(), order.alpha());
  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j < q.size(); ++j) {
    acc += w[j] * lagrangian.value(v.at(j), q.at(j), q.grid().node(j));
  }
  return acc / gamma_function(order.alpha());
}

Complex control_action_value(const SampledFunction& u, const SampledFunction& q,
                             const ControlProblem& problem) {
  require_same_grid(u, q, "control_action_value");
  if (q.dim() != problem.lagrangian.dim) {
    throw GridMismatchError("control_action_value: dimension does not match the Lagrangian");
  }
  const double alpha = problem.order.alpha();
  const std::vector<double> w = kernel_weights(q.grid(), alpha);
  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j < q.size(); ++j) {
    acc += w[j] * problem.lagrangian.value(u.at(j), q.at(j), q.grid().node(j));
  }
  return acc / gamma_function(alpha);
}

double dynamics_defect(const AugmentedState& state, const ControlProblem& problem) {
  const SampledFunction v = combined_derivative(state.q, problem.order);
  const std::size_t n = state.q.size();
  const std::size_t d = state.q.dim();
  const std::size_t m = interior_margin(n);
  double worst = 0.0;
  for (std::size_t j = m; j + m < n; ++j) {
    const CVec rhs = problem.phi(state.u.at(j), state.q.at(j), state.q.grid().node(j));
    for (std::size_t c = 0; c < d; ++c) {
      worst = std::max(worst, std::abs(v.value(j, c) - rhs[c]));
    }
  }
  return worst;
}

Complex augmented_action_value(const AugmentedState& state, const ControlProblem& problem) {
  const Grid& grid = state.q.grid();
  const std::size_t n = grid.size();
  const std::size_t d = state.q.dim();
  const double alpha = problem.order.alpha();
  const double h = grid.spacing();

  const SampledFunction v = combined_derivative(state.q, problem.order);
  const std::vector<double> w = kernel_weights(grid, alpha);

  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j < n; ++j) {
    const double tau = grid.node(j);
    acc += w[j] * problem.lagrangian.value(state.u.at(j), state.q.at(j), tau);

    const CVec rhs = problem.phi(state.u.at(j), state.q.at(j), tau);
    Complex pterm{0.0, 0.0};
    for (std::size_t c = 0; c < d; ++c) {
      pterm += state.p.value(j, c) * (rhs[c] - v.value(j, c));
    }
    const double trap = (j == 0 || j == n - 1) ? 0.5 * h : h;
    acc += trap * pterm;
  }
  return acc / gamma_function(alpha);
}

}  // namespace falva
