#include "falva/grid.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace falva {

namespace {

std::string describe(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

Grid::Grid(double a, double b, std::size_t n_points, double t_obs)
    : a_(a), b_(b), t_obs_(t_obs), n_(n_points) {
  if (!(a < b)) {
    throw DomainError("Grid: interval start must satisfy a < b (got a=" + describe(a) +
                      ", b=" + describe(b) + ")");
  }
  if (n_points < 3) {
    throw DomainError("Grid: n_points must be at least 3 (got " +
                      std::to_string(n_points) + ")");
  }
  if (!(t_obs >= b)) {
    throw DomainError("Grid: observer time must satisfy t_obs >= b (got t_obs=" +
                      describe(t_obs) + ", b=" + describe(b) + ")");
  }
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(t_obs)) {
    throw DomainError("Grid: a, b, t_obs must be finite");
  }
  h_ = (b - a) / static_cast<double>(n_points - 1);
}

std::vector<double> Grid::nodes() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = node(j);
  return out;
}

Grid make_grid(double a, double b, std::size_t n_points, double t_obs) {
  return Grid(a, b, n_points, t_obs);
}

OrderSpec::OrderSpec(double alpha, double beta, Complex gamma)
    : alpha_(alpha), beta_(beta), gamma_(gamma) {
  if (!(alpha > 0.0) || !(alpha <= 1.0)) {
    throw DomainError("OrderSpec: alpha must lie in (0, 1] (got " + describe(alpha) + ")");
  }
  if (!(beta > 0.0) || !(beta <= 1.0)) {
    throw DomainError("OrderSpec: beta must lie in (0, 1] (got " + describe(beta) + ")");
  }
  if (!std::isfinite(gamma.real()) || !std::isfinite(gamma.imag())) {
    throw DomainError("OrderSpec: gamma must be finite");
  }
}

SampledFunction::SampledFunction(Grid grid, std::vector<Complex> values, std::size_t dim)
    : grid_(std::move(grid)), dim_(dim), values_(std::move(values)) {
  if (dim_ == 0) {
    throw DomainError("SampledFunction: vector dimension must be >= 1");
  }
  if (values_.size() != grid_.size() * dim_) {
    throw DomainError("SampledFunction: expected " +
                      std::to_string(grid_.size() * dim_) + " values, got " +
                      std::to_string(values_.size()));
  }
}

SampledFunction SampledFunction::zeros(const Grid& grid, std::size_t dim) {
  return SampledFunction(grid, std::vector<Complex>(grid.size() * dim, Complex{0.0, 0.0}),
                         dim);
}

SampledFunction sample(const std::function<Complex(double)>& fn, const Grid& grid) {
  std::vector<Complex> values(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    try {
      values[j] = fn(grid.node(j));
    } catch (const std::exception& e) {
      throw NumericalError("sample: evaluation failed at node " + std::to_string(j) +
                           " (tau=" + std::to_string(grid.node(j)) + "): " + e.what());
    }
  }
  return SampledFunction(grid, std::move(values), 1);
}

SampledFunction sample(const std::function<CVec(double)>& fn, const Grid& grid,
                       std::size_t dim) {
  std::vector<Complex> values(grid.size() * dim);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    CVec v;
    try {
      v = fn(grid.node(j));
    } catch (const std::exception& e) {
      throw NumericalError("sample: evaluation failed at node " + std::to_string(j) +
                           " (tau=" + std::to_string(grid.node(j)) + "): " + e.what());
    }
    if (v.size() != dim) {
      throw NumericalError("sample: node " + std::to_string(j) + " returned dimension " +
                           std::to_string(v.size()) + ", expected " + std::to_string(dim));
    }
    for (std::size_t k = 0; k < dim; ++k) values[j * dim + k] = v[k];
  }
  return SampledFunction(grid, std::move(values), dim);
}

std::size_t interior_margin(std::size_t n_points) {
  return static_cast<std::size_t>(
      std::ceil(0.05 * static_cast<double>(n_points)));
}

double interior_max_abs(const SampledFunction& f) {
  const std::size_t n = f.size();
  const std::size_t m = interior_margin(n);
  double worst = 0.0;
  for (std::size_t j = m; j + m < n; ++j) {
    for (std::size_t k = 0; k < f.dim(); ++k) {
      worst = std::max(worst, std::abs(f.value(j, k)));
    }
  }
  return worst;
}

double max_abs(const SampledFunction& f) {
  double worst = 0.0;
  for (const Complex& z : f.flat()) worst = std::max(worst, std::abs(z));
  return worst;
}

void require_same_grid(const SampledFunction& f, const SampledFunction& g,
                       const char* context) {
  if (!(f.grid() == g.grid())) {
    throw GridMismatchError(std::string(context) + ": inputs live on different grids");
  }
  if (f.dim() != g.dim()) {
    throw GridMismatchError(std::string(context) + ": inputs have different dimensions");
  }
}

}  // namespace falva
