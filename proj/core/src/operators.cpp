#include "falva/operators.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "falva/special.hpp"

namespace falva {

namespace {

// Grunwald-Letnikov weights g_k = (-1)^k C(alpha, k), via the standard
// recurrence g_k = g_{k-1} * (k - 1 - alpha) / k. For alpha = 1 only the
// first two are nonzero and the scheme degenerates to a first difference.
std::vector<double> gl_weights(double alpha, std::size_t n) {
  std::vector<double> g(n);
  g[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) {
    g[k] = g[k - 1] * ((static_cast<double>(k) - 1.0 - alpha) / static_cast<double>(k));
  }
  return g;
}

void require_integral_order(double alpha, const char* who) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError(std::string(who) + ": order must satisfy alpha > 0 (got " +
                      std::to_string(alpha) + ")");
  }
}

void require_derivative_order(double alpha, const char* who) {
  if (!(alpha > 0.0) || !(alpha <= 1.0)) {
    throw DomainError(std::string(who) + ": order must lie in (0, 1] (got " +
                      std::to_string(alpha) + ")");
  }
}

}  // namespace

SampledFunction left_rl_integral(const SampledFunction& f, double alpha) {
  require_integral_order(alpha, "left_rl_integral");
  const std::size_t n = f.size();
  const std::size_t d = f.dim();
  const double h = f.grid().spacing();
  const double scale = std::pow(h, alpha) / gamma_function(alpha + 2.0);

  // Product-trapezoidal weights for the Abel integral: exact when f is
  // piecewise linear on the grid.
  std::vector<double> p1(n + 1);  // m^(alpha+1)
  std::vector<double> pa(n);      // m^alpha
  for (std::size_t m = 0; m <= n; ++m) p1[m] = std::pow(static_cast<double>(m), alpha + 1.0);
  for (std::size_t m = 0; m < n; ++m) pa[m] = std::pow(static_cast<double>(m), alpha);
  std::vector<double> w(n);  // interior Toeplitz weight, index = j - k
  for (std::size_t m = 1; m < n; ++m) w[m] = p1[m + 1] - 2.0 * p1[m] + p1[m - 1];

  SampledFunction out = SampledFunction::zeros(f.grid(), d);
  for (std::size_t j = 1; j < n; ++j) {
    const double jd = static_cast<double>(j);
    const double b0 = p1[j - 1] - (jd - alpha - 1.0) * pa[j];
    for (std::size_t c = 0; c < d; ++c) {
      Complex acc = b0 * f.value(0, c);
      for (std::size_t k = 1; k + 1 <= j; ++k) acc += w[j - k] * f.value(k, c);
      acc += f.value(j, c);
      out.value(j, c) = scale * acc;
    }
  }
  return out;
}

SampledFunction right_rl_integral(const SampledFunction& f, double alpha) {
  require_integral_order(alpha, "right_rl_integral");
  const std::size_t n = f.size();
  const std::size_t d = f.dim();
  const double h = f.grid().spacing();
  const double scale = std::pow(h, alpha) / gamma_function(alpha + 2.0);

  std::vector<double> p1(n + 1);
  std::vector<double> pa(n);
  for (std::size_t m = 0; m <= n; ++m) p1[m] = std::pow(static_cast<double>(m), alpha + 1.0);
  for (std::size_t m = 0; m < n; ++m) pa[m] = std::pow(static_cast<double>(m), alpha);
  std::vector<double> w(n);
  for (std::size_t m = 1; m < n; ++m) w[m] = p1[m + 1] - 2.0 * p1[m] + p1[m - 1];

  SampledFunction out = SampledFunction::zeros(f.grid(), d);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const std::size_t span = n - 1 - j;  // reflected node index
    const double sd = static_cast<double>(span);
    const double b0 = p1[span - 1] - (sd - alpha - 1.0) * pa[span];
    for (std::size_t c = 0; c < d; ++c) {
      Complex acc = f.value(j, c);
      for (std::size_t k = j + 1; k + 1 < n; ++k) acc += w[k - j] * f.value(k, c);
      acc += b0 * f.value(n - 1, c);
      out.value(j, c) = scale * acc;
    }
  }
  return out;
}

SampledFunction left_rl_derivative(const SampledFunction& f, double alpha) {
  require_derivative_order(alpha, "left_rl_derivative");
  const std::size_t n = f.size();
  const std::size_t d = f.dim();
  const double scale = std::pow(f.grid().spacing(), -alpha);
  const std::vector<double> g = gl_weights(alpha, n);

  SampledFunction out = SampledFunction::zeros(f.grid(), d);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < d; ++c) {
      Complex acc{0.0, 0.0};
      for (std::size_t k = 0; k <= j; ++k) acc += g[k] * f.value(j - k, c);
      out.value(j, c) = scale * acc;
    }
  }
  return out;
}

SampledFunction right_rl_derivative(const SampledFunction& f, double alpha) {
  require_derivative_order(alpha, "right_rl_derivative");
  const std::size_t n = f.size();
  const std::size_t d = f.dim();
  const double scale = std::pow(f.grid().spacing(), -alpha);
  const std::vector<double> g = gl_weights(alpha, n);

  SampledFunction out = SampledFunction::zeros(f.grid(), d);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < d; ++c) {
      Complex acc{0.0, 0.0};
      for (std::size_t k = 0; j + k < n; ++k) acc += g[k] * f.value(j + k, c);
      out.value(j, c) = scale * acc;
    }
  }
  return out;
}

SampledFunction combined_derivative(const SampledFunction& f, const OrderSpec& order) {
  const Complex i{0.0, 1.0};
  const Complex c_left = 0.5 * (1.0 + i * order.gamma());
  const Complex c_right = -0.5 * (1.0 - i * order.gamma());

  SampledFunction out = SampledFunction::zeros(f.grid(), f.dim());
  if (c_left != Complex{0.0, 0.0}) {
    const SampledFunction left = left_rl_derivative(f, order.alpha());
    for (std::size_t m = 0; m < out.flat().size(); ++m) {
      out.flat()[m] += c_left * left.flat()[m];
    }
  }
  if (c_right != Complex{0.0, 0.0}) {
    const SampledFunction right = right_rl_derivative(f, order.beta());
    for (std::size_t m = 0; m < out.flat().size(); ++m) {
      out.flat()[m] += c_right * right.flat()[m];
    }
  }
  return out;
}

SampledFunction combined_adjoint_side(const SampledFunction& g, const OrderSpec& order) {
  return combined_derivative(g, OrderSpec(order.beta(), order.alpha(), -order.gamma()));
}

SampledFunction apply_operator(OperatorKind kind, const SampledFunction& f,
                               const OrderSpec& order) {
  switch (kind) {
    case OperatorKind::LeftIntegral:
      return left_rl_integral(f, order.alpha());
    case OperatorKind::RightIntegral:
      return right_rl_integral(f, order.beta());
    case OperatorKind::LeftDerivative:
      return left_rl_derivative(f, order.alpha());
    case OperatorKind::RightDerivative:
      return right_rl_derivative(f, order.beta());
    case OperatorKind::Combined:
      return combined_derivative(f, order);
    case OperatorKind::CombinedAdjointSide:
      return combined_adjoint_side(f, order);
  }
  throw DomainError("apply_operator: unknown operator kind");
}

Complex ibp_defect(const SampledFunction& f, const SampledFunction& g,
                   const OrderSpec& order) {
  require_same_grid(f, g, "ibp_defect");
  const std::size_t n = f.size();
  const std::size_t d = f.dim();

  auto vanishes_at_ends = [&](const SampledFunction& u) {
    for (std::size_t c = 0; c < d; ++c) {
      if (std::abs(u.value(0, c)) > 1e-12 || std::abs(u.value(n - 1, c)) > 1e-12) {
        return false;
      }
    }
    return true;
  };
  if (!vanishes_at_ends(f) && !vanishes_at_ends(g)) {
    throw PreconditionError(
        "ibp_defect: f or g must vanish at both endpoints (|value| <= 1e-12)");
  }

  const SampledFunction df = combined_derivative(f, order);
  const SampledFunction dg = combined_adjoint_side(g, order);

  const double h = f.grid().spacing();
  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j < n; ++j) {
    const double wt = (j == 0 || j == n - 1) ? 0.5 * h : h;
    Complex node{0.0, 0.0};
    for (std::size_t c = 0; c < d; ++c) {
      node += df.value(j, c) * g.value(j, c) + f.value(j, c) * dg.value(j, c);
    }
    acc += wt * node;
  }
  return acc;
}

}  // namespace falva
