#include "falva/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "falva/optimality.hpp"
#include "falva/special.hpp"

namespace falva {

namespace {

bool is_left_sided(const OrderSpec& order) { return order.gamma() == kGammaLeftSided; }
bool is_right_sided(const OrderSpec& order) { return order.gamma() == kGammaRightSided; }

void require_minimizable(const OrderSpec& order, const char* who) {
  if (!is_left_sided(order) && !is_right_sided(order)) {
    throw DomainError(std::string(who) +
                      ": gamma must be -i or +i (real-action regimes); residual "
                      "evaluation accepts general gamma, minimization does not");
  }
}

// Cells of the objective sum: [first, last] node indices whose cell mass is
// masses[mass_index(j)].
struct CellLayout {
  std::size_t first;
  std::size_t last;   // inclusive
  bool left_sided;
  std::size_t mass_index(std::size_t j) const { return left_sided ? j : j + 1; }
};

CellLayout make_layout(const OrderSpec& order, std::size_t n) {
  if (is_left_sided(order)) return {1, n - 1, true};
  return {0, n - 2, false};
}

double real_objective(const SampledFunction& q, const Lagrangian& lagrangian,
                      const OrderSpec& order) {
  return discrete_action_value(q, lagrangian, order).real();
}

std::size_t interior_count(std::size_t n, std::size_t d) { return (n - 2) * d; }

void scatter_interior(const std::vector<double>& x, SampledFunction& q) {
  const std::size_t d = q.dim();
  for (std::size_t j = 1; j + 1 < q.size(); ++j) {
    for (std::size_t c = 0; c < d; ++c) {
      q.value(j, c) = Complex{x[(j - 1) * d + c], 0.0};
    }
  }
}

std::vector<double> gather_interior_gradient(const SampledFunction& grad) {
  const std::size_t d = grad.dim();
  std::vector<double> out(interior_count(grad.size(), d));
  for (std::size_t j = 1; j + 1 < grad.size(); ++j) {
    for (std::size_t c = 0; c < d; ++c) {
      out[(j - 1) * d + c] = grad.value(j, c).real();
    }
  }
  return out;
}

double max_abs(const std::vector<double>& x) {
  double worst = 0.0;
  for (double v : x) worst = std::max(worst, std::abs(v));
  return worst;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

std::string iterate_dump(const SampledFunction& q, std::size_t iteration, double action) {
  std::ostringstream os;
  os << "iteration " << iteration << ", action " << action << ", path head [";
  const std::size_t show = std::min<std::size_t>(q.size(), 5);
  for (std::size_t j = 0; j < show; ++j) {
    if (j) os << ", ";
    os << q.value(j, 0).real();
  }
  os << (q.size() > show ? ", ...]" : "]");
  return os.str();
}

}  // namespace

Complex discrete_action_value(const SampledFunction& q, const Lagrangian& lagrangian,
                              const OrderSpec& order) {
  require_minimizable(order, "discrete_action_value");
  if (q.dim() != lagrangian.dim) {
    throw GridMismatchError("discrete_action_value: dimension mismatch");
  }
  const Grid& grid = q.grid();
  const CellLayout cells = make_layout(order, grid.size());
  const std::vector<double> masses = kernel_cell_masses(grid, order.alpha());
  const SampledFunction v = combined_derivative(q, order);

  Complex acc{0.0, 0.0};
  for (std::size_t j = cells.first; j <= cells.last; ++j) {
    acc += masses[cells.mass_index(j)] *
           lagrangian.value(v.at(j), q.at(j), grid.node(j));
  }
  return acc / gamma_function(order.alpha());
}

SampledFunction discrete_action_gradient(const SampledFunction& q,
                                         const Lagrangian& lagrangian,
                                         const OrderSpec& order) {
  require_minimizable(order, "discrete_action_gradient");
  if (q.dim() != lagrangian.dim) {
    throw GridMismatchError("discrete_action_gradient: dimension mismatch");
  }
  const Grid& grid = q.grid();
  const std::size_t n = grid.size();
  const std::size_t d = q.dim();
  const CellLayout cells = make_layout(order, n);
  const std::vector<double> masses = kernel_cell_masses(grid, order.alpha());
  const double inv_gamma = 1.0 / gamma_function(order.alpha());

  const SampledFunction v = combined_derivative(q, order);

  // y_j = mass_j * dL/dv at cell j; the velocity part of the gradient is
  // M^T y = -adjoint_side(y), exact at the discrete level.
  SampledFunction y = SampledFunction::zeros(grid, d);
  SampledFunction dq_term = SampledFunction::zeros(grid, d);
  for (std::size_t j = cells.first; j <= cells.last; ++j) {
    const double mass = masses[cells.mass_index(j)];
    const double tau = grid.node(j);
    const CVec dv = lagrangian.d_v(v.at(j), q.at(j), tau);
    const CVec dql = lagrangian.d_q(v.at(j), q.at(j), tau);
    for (std::size_t c = 0; c < d; ++c) {
      y.value(j, c) = mass * dv[c];
      dq_term.value(j, c) = mass * dql[c];
    }
  }
  const SampledFunction transpose_apply = combined_adjoint_side(y, order);

  SampledFunction grad = SampledFunction::zeros(grid, d);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    for (std::size_t c = 0; c < d; ++c) {
      const Complex g =
          inv_gamma * (-transpose_apply.value(j, c) + dq_term.value(j, c));
      grad.value(j, c) = Complex{g.real(), 0.0};
    }
  }
  return grad;
}

SolveReport minimize_action(const Lagrangian& lagrangian, const OrderSpec& order,
                            const Grid& grid, const CVec& q_a, const CVec& q_b,
                            const SolveOptions& options) {
  require_minimizable(order, "minimize_action");
  const std::size_t d = lagrangian.dim;
  if (q_a.size() != d || q_b.size() != d) {
    throw DomainError("minimize_action: boundary values must match the Lagrangian dimension");
  }
  for (const Complex& z : q_a) {
    if (!std::isfinite(z.real()) || std::abs(z.imag()) > 1e-14) {
      throw DomainError("minimize_action: boundary values must be finite and real");
    }
  }
  for (const Complex& z : q_b) {
    if (!std::isfinite(z.real()) || std::abs(z.imag()) > 1e-14) {
      throw DomainError("minimize_action: boundary values must be finite and real");
    }
  }
  if (!(options.gradient_tolerance > 0.0)) {
    throw DomainError("minimize_action: gradient_tolerance must be positive");
  }
  if (!(options.shrink_factor > 0.0 && options.shrink_factor < 1.0)) {
    throw DomainError("minimize_action: shrink_factor must lie in (0, 1)");
  }
  if (!(options.sufficient_decrease > 0.0)) {
    throw DomainError("minimize_action: sufficient_decrease must be positive");
  }

  const std::size_t n = grid.size();
  SampledFunction q = SampledFunction::zeros(grid, d);
  if (options.seed_path) {
    const SampledFunction& seed = *options.seed_path;
    if (!(seed.grid() == grid) || seed.dim() != d) {
      throw DomainError("minimize_action: seed path must live on the solve grid");
    }
    q = seed;
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      const double s = static_cast<double>(j) / static_cast<double>(n - 1);
      for (std::size_t c = 0; c < d; ++c) {
        q.value(j, c) = (1.0 - s) * q_a[c] + s * q_b[c];
      }
    }
  }
  for (std::size_t c = 0; c < d; ++c) {
    q.value(0, c) = q_a[c];
    q.value(n - 1, c) = q_b[c];
  }

  std::vector<double> x(interior_count(n, d));
  for (std::size_t j = 1; j + 1 < n; ++j) {
    for (std::size_t c = 0; c < d; ++c) x[(j - 1) * d + c] = q.value(j, c).real();
  }

  auto evaluate = [&](const std::vector<double>& point, std::size_t iteration) {
    scatter_interior(point, q);
    const double f = real_objective(q, lagrangian, order);
    std::vector<double> g =
        gather_interior_gradient(discrete_action_gradient(q, lagrangian, order));
    if (!std::isfinite(f) || !std::all_of(g.begin(), g.end(),
                                          [](double v) { return std::isfinite(v); })) {
      throw NumericalError("minimize_action: non-finite action or gradient at " +
                           iterate_dump(q, iteration, f));
    }
    return std::make_pair(f, std::move(g));
  };

  SolveReport report{.final_path = SampledFunction::zeros(grid, d)};
  report.method = "lbfgs+wolfe";

  auto [f, g] = evaluate(x, 0);
  report.action_history.push_back(f);

  std::vector<double> best_x = x;
  double best_f = f;

  // L-BFGS two-loop recursion with a strong-Wolfe line search. The Wolfe
  // curvature test keeps the quasi-Newton steps near unit length, which is
  // what makes the ill-conditioned near-quadratic problems converge; the
  // sufficient-decrease and shrink parameters govern the interpolating
  // search below.
  constexpr std::size_t kMemory = 20;
  constexpr double kCurvature = 0.9;
  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;

  struct Probe {
    double step;
    double value;
    double slope;
    std::vector<double> point;
    std::vector<double> gradient;
  };

  std::size_t iteration = 0;
  bool converged = max_abs(g) <= options.gradient_tolerance;
  while (!converged && iteration < options.max_iterations) {
    // Two-loop recursion for the search direction.
    std::vector<double> direction = g;
    std::vector<double> alphas(s_hist.size());
    for (std::size_t idx = s_hist.size(); idx-- > 0;) {
      alphas[idx] = rho_hist[idx] * dot(s_hist[idx], direction);
      for (std::size_t i = 0; i < direction.size(); ++i) {
        direction[i] -= alphas[idx] * y_hist[idx][i];
      }
    }
    if (!s_hist.empty()) {
      const double gamma_scale =
          dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
      for (double& v : direction) v *= gamma_scale;
    }
    for (std::size_t idx = 0; idx < s_hist.size(); ++idx) {
      const double beta = rho_hist[idx] * dot(y_hist[idx], direction);
      for (std::size_t i = 0; i < direction.size(); ++i) {
        direction[i] += s_hist[idx][i] * (alphas[idx] - beta);
      }
    }
    for (double& v : direction) v = -v;

    double slope0 = dot(g, direction);
    if (!(slope0 < 0.0)) {
      // Not a descent direction; drop the memory and fall back to steepest descent.
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      direction = g;
      for (double& v : direction) v = -v;
      slope0 = -dot(g, g);
    }

    auto probe_at = [&](double step) {
      Probe probe;
      probe.step = step;
      probe.point.resize(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        probe.point[i] = x[i] + step * direction[i];
      }
      auto [ft, gt] = evaluate(probe.point, iteration + 1);
      probe.value = ft;
      probe.slope = dot(gt, direction);
      probe.gradient = std::move(gt);
      return probe;
    };
    auto wolfe_ok = [&](const Probe& probe) {
      return probe.value <= f + options.sufficient_decrease * probe.step * slope0 &&
             std::abs(probe.slope) <= kCurvature * std::abs(slope0);
    };
    // Secant/bisection zoom between a low point satisfying the decrease
    // condition and a high endpoint bracketing the minimum.
    auto zoom = [&](Probe lo, Probe hi, Probe& out) {
      for (int round = 0; round < 20; ++round) {
        double step = 0.5 * (lo.step + hi.step);
        const double denom = hi.slope - lo.slope;
        if (std::abs(denom) > 0.0) {
          const double secant = lo.step - lo.slope * (hi.step - lo.step) / denom;
          const double lower = std::min(lo.step, hi.step);
          const double upper = std::max(lo.step, hi.step);
          const double margin = 0.1 * (upper - lower);
          if (secant > lower + margin && secant < upper - margin) step = secant;
        }
        Probe mid = probe_at(step);
        if (wolfe_ok(mid)) {
          out = std::move(mid);
          return true;
        }
        if (mid.value > f + options.sufficient_decrease * mid.step * slope0 ||
            mid.value >= lo.value) {
          hi = std::move(mid);
        } else {
          if (mid.slope * (hi.step - lo.step) >= 0.0) hi = std::move(lo);
          lo = std::move(mid);
        }
        if (std::abs(hi.step - lo.step) <= 1e-16 * std::max(1.0, std::abs(lo.step))) {
          break;
        }
      }
      // Accept the best decrease seen even if the curvature test failed.
      if (lo.value < f) {
        out = std::move(lo);
        return true;
      }
      return false;
    };

    Probe accepted_probe;
    bool accepted = false;
    double step = s_hist.empty() ? 1.0 / std::max(1.0, max_abs(g)) : 1.0;
    Probe prev;
    prev.step = 0.0;
    prev.value = f;
    prev.slope = slope0;
    prev.point = x;
    prev.gradient = g;
    for (int round = 0; round < 12; ++round) {
      Probe trial = probe_at(step);
      if (trial.value > f + options.sufficient_decrease * step * slope0 ||
          (round > 0 && trial.value >= prev.value)) {
        accepted = zoom(std::move(prev), std::move(trial), accepted_probe);
        break;
      }
      if (wolfe_ok(trial)) {
        accepted_probe = std::move(trial);
        accepted = true;
        break;
      }
      if (trial.slope >= 0.0) {
        accepted = zoom(std::move(trial), std::move(prev), accepted_probe);
        break;
      }
      prev = std::move(trial);
      step /= options.shrink_factor;  // expand until the minimum is bracketed
    }
    if (!accepted) break;  // line search stalled; return the best iterate

    std::vector<double> s_vec(x.size()), y_vec(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      s_vec[i] = accepted_probe.point[i] - x[i];
      y_vec[i] = accepted_probe.gradient[i] - g[i];
    }
    const double sy = dot(s_vec, y_vec);
    if (sy > 1e-14 * dot(y_vec, y_vec)) {
      s_hist.push_back(std::move(s_vec));
      y_hist.push_back(std::move(y_vec));
      rho_hist.push_back(1.0 / sy);
      if (s_hist.size() > kMemory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }

    x = std::move(accepted_probe.point);
    f = accepted_probe.value;
    g = std::move(accepted_probe.gradient);
    ++iteration;
    report.action_history.push_back(f);
    if (f < best_f) {
      best_f = f;
      best_x = x;
    }
    converged = max_abs(g) <= options.gradient_tolerance;
  }

  scatter_interior(best_x, q);
  for (std::size_t c = 0; c < d; ++c) {
    q.value(0, c) = q_a[c];
    q.value(n - 1, c) = q_b[c];
  }
  report.final_path = q;
  report.final_action = discrete_action_value(q, lagrangian, order);
  report.gradient_norm =
      max_abs(gather_interior_gradient(discrete_action_gradient(q, lagrangian, order)));
  report.iterations = iteration;
  report.converged = report.gradient_norm <= options.gradient_tolerance;
  report.el_residual_norm = el_residual(q, lagrangian, order).interior_max;
  return report;
}

SolveReport minimize_action(const Lagrangian& lagrangian, const OrderSpec& order,
                            const Grid& grid, double q_a, double q_b,
                            const SolveOptions& options) {
  return minimize_action(lagrangian, order, grid, CVec{Complex{q_a, 0.0}},
                         CVec{Complex{q_b, 0.0}}, options);
}

}  // namespace falva
