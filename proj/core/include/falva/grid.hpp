#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "falva/errors.hpp"

namespace falva {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

/// Uniform discretization of the intrinsic-time interval [a, b], together
/// with the observer time t at which the action kernel (t - tau)^(alpha-1)
/// is anchored. t_obs >= b keeps the kernel real on the whole interval and
/// confines its singularity, if any, to tau = b.
class Grid {
 public:
  Grid(double a, double b, std::size_t n_points, double t_obs);

  double a() const { return a_; }
  double b() const { return b_; }
  double t_obs() const { return t_obs_; }
  std::size_t size() const { return n_; }
  double spacing() const { return h_; }
  double node(std::size_t j) const { return a_ + static_cast<double>(j) * h_; }
  std::vector<double> nodes() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double a_;
  double b_;
  double t_obs_;
  double h_;
  std::size_t n_;
};

Grid make_grid(double a, double b, std::size_t n_points, double t_obs);

/// Orders (alpha, beta) of the one-sided derivatives entering the combined
/// operator, plus the complex mixing parameter gamma. Orders are restricted
/// to (0, 1].
class OrderSpec {
 public:
  OrderSpec(double alpha, double beta, Complex gamma);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  Complex gamma() const { return gamma_; }

 private:
  double alpha_;
  double beta_;
  Complex gamma_;
};

/// gamma values at which the combined operator collapses to a single side:
/// kGammaLeftSided gives the left derivative, kGammaRightSided gives the
/// negated right derivative.
inline constexpr Complex kGammaLeftSided{0.0, -1.0};
inline constexpr Complex kGammaRightSided{0.0, 1.0};

/// Complex samples of a (possibly vector-valued) function on a Grid.
/// Storage is node-major: component k of node j sits at j*dim + k.
class SampledFunction {
 public:
  SampledFunction(Grid grid, std::vector<Complex> values, std::size_t dim = 1);

  static SampledFunction zeros(const Grid& grid, std::size_t dim = 1);

  const Grid& grid() const { return grid_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return grid_.size(); }

  std::span<const Complex> at(std::size_t node) const {
    return {values_.data() + node * dim_, dim_};
  }
  std::span<Complex> at(std::size_t node) {
    return {values_.data() + node * dim_, dim_};
  }
  Complex value(std::size_t node, std::size_t comp = 0) const {
    return values_[node * dim_ + comp];
  }
  Complex& value(std::size_t node, std::size_t comp = 0) {
    return values_[node * dim_ + comp];
  }
  std::span<const Complex> flat() const { return values_; }
  std::span<Complex> flat() { return values_; }

 private:
  Grid grid_;
  std::size_t dim_;
  std::vector<Complex> values_;
};

SampledFunction sample(const std::function<Complex(double)>& fn, const Grid& grid);
SampledFunction sample(const std::function<CVec(double)>& fn, const Grid& grid,
                       std::size_t dim);

/// Number of nodes excluded at each end of the grid when taking interior
/// norms: one-sided schemes put analytic endpoint singularities there. The
/// margin is a fixed 5% of the node count, rounded up.
std::size_t interior_margin(std::size_t n_points);

/// Max pointwise magnitude over interior nodes (all components).
double interior_max_abs(const SampledFunction& f);
/// Max pointwise magnitude over all nodes.
double max_abs(const SampledFunction& f);

void require_same_grid(const SampledFunction& f, const SampledFunction& g,
                       const char* context);

}  // namespace falva
