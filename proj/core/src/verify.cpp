#include "falva/verify.hpp"

#include <cmath>
#include <sstream>

#include "falva/operators.hpp"
#include "falva/optimality.hpp"
#include "falva/output.hpp"
#include "falva/problems.hpp"
#include "falva/solver.hpp"

namespace falva {

namespace {

std::string ladder_detail(std::span<const double> values) {
  std::ostringstream os;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << " ";
    os << format_float(values[i]);
  }
  return os.str();
}

bool strictly_decreasing(std::span<const double> values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] < values[i - 1])) return false;
  }
  return true;
}

double pointwise_max_diff(const SampledFunction& f, const SampledFunction& g) {
  double worst = 0.0;
  for (std::size_t m = 0; m < f.flat().size(); ++m) {
    worst = std::max(worst, std::abs(f.flat()[m] - g.flat()[m]));
  }
  return worst;
}

VerifyReport reductions_suite(std::uint64_t seed) {
  VerifyReport report{"reductions", seed, {}};
  std::mt19937_64 rng(seed);
  const Grid grid = make_grid(0.0, 1.0, 257, 1.0);
  const std::vector<std::pair<double, double>> orders = {
      {0.3, 0.7}, {0.5, 0.5}, {0.8, 0.4}, {1.0, 1.0}};
  for (int fi = 0; fi < 5; ++fi) {
    const SampledFunction f = sample_random_trig(grid, rng, false);
    for (const auto& [alpha, beta] : orders) {
      {
        const SampledFunction combined =
            combined_derivative(f, OrderSpec(alpha, beta, kGammaLeftSided));
        const SampledFunction left = left_rl_derivative(f, alpha);
        const double diff = pointwise_max_diff(combined, left);
        std::ostringstream name;
        name << "gamma=-i f" << fi << " alpha=" << alpha << " beta=" << beta;
        report.cases.push_back({name.str(), diff, 1e-13, diff <= 1e-13,
                                "combined vs left derivative, max pointwise"});
      }
      {
        const SampledFunction combined =
            combined_derivative(f, OrderSpec(alpha, beta, kGammaRightSided));
        SampledFunction right = right_rl_derivative(f, beta);
        for (Complex& z : right.flat()) z = -z;
        const double diff = pointwise_max_diff(combined, right);
        std::ostringstream name;
        name << "gamma=+i f" << fi << " alpha=" << alpha << " beta=" << beta;
        report.cases.push_back({name.str(), diff, 1e-13, diff <= 1e-13,
                                "combined vs negated right derivative, max pointwise"});
      }
    }
  }
  return report;
}

VerifyReport ibp_suite(std::uint64_t seed) {
  VerifyReport report{"ibp", seed, {}};
  const std::vector<std::pair<double, double>> orders = {{0.5, 0.5}, {0.7, 0.4}};
  const std::vector<Complex> gammas = {Complex{0.0, 0.0}, Complex{0.3, 0.0},
                                       kGammaLeftSided};
  const std::vector<std::size_t> ladder = {129, 257, 513, 1025};
  for (const auto& [alpha, beta] : orders) {
    for (const Complex gamma : gammas) {
      std::vector<double> defects;
      std::vector<double> spacings;
      for (const std::size_t n : ladder) {
        const Grid grid = make_grid(0.0, 1.0, n, 1.0);
        const SampledFunction f =
            sample([](double tau) { return Complex{tau * (1.0 - tau), 0.0}; }, grid);
        const SampledFunction g =
            sample([](double tau) { return Complex{std::cos(tau), 0.0}; }, grid);
        defects.push_back(std::abs(ibp_defect(f, g, OrderSpec(alpha, beta, gamma))));
        spacings.push_back(grid.spacing());
      }
      const bool pass = strictly_decreasing(defects) && defects.back() <= 5e-2;
      std::ostringstream name;
      name << "alpha=" << alpha << " beta=" << beta << " gamma=(" << gamma.real() << ","
           << gamma.imag() << ")";
      std::ostringstream detail;
      detail << "|defect| over n={129 257 513 1025}: " << ladder_detail(defects)
             << "; order " << format_float(estimate_order(spacings, defects));
      report.cases.push_back({name.str(), defects.back(), 5e-2, pass, detail.str()});
    }
  }
  return report;
}

VerifyReport constants_suite(std::uint64_t seed) {
  VerifyReport report{"constants", seed, {}};
  const std::vector<std::size_t> ladder = {129, 257, 513};
  for (const double alpha : {0.8, 0.9}) {
    const OrderSpec order(alpha, 1.0, kGammaLeftSided);
    const Lagrangian free = make_free_lagrangian();
    std::vector<double> defects;
    for (const std::size_t n : ladder) {
      const Grid grid = make_grid(0.0, 1.0, n, 2.0);
      SolveOptions options;
      options.max_iterations = 4000;
      options.gradient_tolerance = 1e-9;
      const SolveReport solve = minimize_action(free, order, grid, 0.0, 1.0, options);
      const SampledFunction p = fractional_momentum(solve.final_path, free, order);
      defects.push_back(constant_of_motion_defect(p, order));
    }
    const bool pass = strictly_decreasing(defects);
    std::ostringstream name;
    name << "momentum conservation alpha=" << alpha << " beta=1 gamma=-i";
    std::ostringstream detail;
    detail << "adjoint-side defect of the momentum over n={129 257 513}: "
           << ladder_detail(defects);
    report.cases.push_back({name.str(), defects.back(), defects.front(), pass,
                            detail.str()});
  }
  return report;
}

VerifyReport classical_limit_suite(std::uint64_t seed) {
  VerifyReport report{"classical-limit", seed, {}};
  const OrderSpec order(1.0, 1.0, kGammaLeftSided);
  const std::vector<std::size_t> ladder = {65, 129, 257};

  {
    const Lagrangian free = make_free_lagrangian();
    std::vector<double> norms;
    for (const std::size_t n : ladder) {
      const Grid grid = make_grid(0.0, 1.0, n, 1.0);
      const SampledFunction line =
          sample([](double tau) { return Complex{tau, 0.0}; }, grid);
      norms.push_back(el_residual(line, free, order).interior_max);
    }
    bool non_increasing = true;
    for (std::size_t i = 1; i < norms.size(); ++i) {
      if (norms[i] > norms[i - 1]) non_increasing = false;
    }
    const bool pass = non_increasing && norms.back() <= 1e-10;
    report.cases.push_back({"free particle, straight-line extremal", norms.back(), 1e-10,
                            pass,
                            "residual over n={65 129 257}: " + ladder_detail(norms)});
  }
  {
    const Lagrangian osc = make_oscillator_lagrangian();
    std::vector<double> norms;
    for (const std::size_t n : ladder) {
      const Grid grid = make_grid(0.0, 1.0, n, 1.0);
      const SampledFunction path = sample(
          [](double tau) { return Complex{std::sinh(tau) / std::sinh(1.0), 0.0}; }, grid);
      norms.push_back(el_residual(path, osc, order).interior_max);
    }
    const bool pass = strictly_decreasing(norms);
    report.cases.push_back({"oscillator, closed-form extremal", norms.back(),
                            norms.front(), pass,
                            "residual over n={65 129 257}: " + ladder_detail(norms)});
  }
  return report;
}

VerifyReport falva_limit_suite(std::uint64_t seed) {
  VerifyReport report{"falva-limit", seed, {}};
  std::mt19937_64 rng(seed);
  const Grid grid = make_grid(0.0, 1.0, 257, 2.0);
  const Lagrangian osc = make_oscillator_lagrangian();
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  const std::size_t margin = interior_margin(n);

  for (const double alpha : {0.5, 0.7, 0.9}) {
    const OrderSpec order(alpha, 1.0, kGammaRightSided);
    const SampledFunction q = sample_random_trig(grid, rng, false);
    const ELResidual residual = el_residual(q, osc, order);

    // Classical damped form, coded with plain index arithmetic: forward
    // difference velocity, backward difference of dL/dv, friction term.
    double worst = 0.0;
    std::vector<Complex> v(n, Complex{0.0, 0.0});
    for (std::size_t j = 0; j + 1 < n; ++j) v[j] = (q.value(j + 1) - q.value(j)) / h;
    v[n - 1] = -q.value(n - 1) / h;  // one-term endpoint stencil of the scheme
    std::vector<Complex> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = v[j];  // dL/dv of the oscillator, mass 1
    for (std::size_t j = margin; j + margin < n; ++j) {
      const double tau = grid.node(j);
      const Complex classical = q.value(j) - (w[j] - w[j - 1]) / h -
                                ((1.0 - alpha) / (grid.t_obs() - tau)) * w[j];
      worst = std::max(worst, std::abs(residual.values.value(j) - classical));
    }
    std::ostringstream name;
    name << "beta=1 gamma=+i alpha=" << alpha;
    report.cases.push_back({name.str(), worst, 1e-10, worst <= 1e-10,
                            "max interior |fractional residual - damped classical residual|"});
  }
  return report;
}

}  // namespace

bool VerifyReport::all_pass() const {
  for (const VerifyCase& c : cases) {
    if (!c.pass) return false;
  }
  return true;
}

VerifyReport run_verify_suite(const std::string& suite, std::uint64_t seed) {
  if (suite == "reductions") return reductions_suite(seed);
  if (suite == "ibp") return ibp_suite(seed);
  if (suite == "constants") return constants_suite(seed);
  if (suite == "classical-limit") return classical_limit_suite(seed);
  if (suite == "falva-limit") return falva_limit_suite(seed);
  throw DomainError("unknown verify suite '" + suite +
                    "' (expected reductions, ibp, constants, classical-limit or falva-limit)");
}

std::vector<std::string> verify_suite_names() {
  return {"reductions", "ibp", "constants", "classical-limit", "falva-limit"};
}

double estimate_order(std::span<const double> h, std::span<const double> err) {
  const std::size_t n = h.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double nd = static_cast<double>(n);
  return (nd * sxy - sx * sy) / (nd * sxx - sx * sx);
}

SampledFunction sample_random_trig(const Grid& grid, std::mt19937_64& rng,
                                   bool zero_boundary) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  constexpr int kModes = 4;
  std::vector<double> as(kModes), bs(kModes);
  for (int k = 0; k < kModes; ++k) {
    as[k] = dist(rng);
    bs[k] = zero_boundary ? 0.0 : dist(rng);
  }
  const double a = grid.a();
  const double width = grid.b() - grid.a();
  return sample(
      [=](double tau) {
        const double s = (tau - a) / width;
        double acc = 0.0;
        for (int k = 0; k < kModes; ++k) {
          const double freq = M_PI * static_cast<double>(k + 1);
          acc += as[k] * std::sin(freq * s) + bs[k] * std::cos(freq * s);
        }
        return Complex{acc, 0.0};
      },
      grid);
}

}  // namespace falva
