// Acceptance suite: every release criterion with its pinned tolerance, one
// pass/fail line per criterion. Exit status is the number of failures.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "falva/cli.hpp"
#include "falva/hamiltonian.hpp"
#include "falva/operators.hpp"
#include "falva/optimality.hpp"
#include "falva/problems.hpp"
#include "falva/solver.hpp"
#include "falva/verify.hpp"
#include "support/oracles.hpp"

using namespace falva;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, bool pass, const std::string& detail) {
  std::printf("criterion %02d [%s] %s: %s\n", number, pass ? "PASS" : "FAIL", label.c_str(),
              detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3e", x);
  return buffer;
}

double pointwise_max_diff(const SampledFunction& f, const SampledFunction& g) {
  double worst = 0.0;
  for (std::size_t m = 0; m < f.flat().size(); ++m) {
    worst = std::max(worst, std::abs(f.flat()[m] - g.flat()[m]));
  }
  return worst;
}

double interior_path_error(const SampledFunction& path,
                           const std::function<double(double)>& exact) {
  const std::size_t n = path.size();
  const std::size_t margin = interior_margin(n);
  double worst = 0.0;
  for (std::size_t j = margin; j + margin < n; ++j) {
    worst = std::max(worst,
                     std::abs(path.value(j) - Complex{exact(path.grid().node(j)), 0.0}));
  }
  return worst;
}

void c01_reduction_identities() {
  std::mt19937_64 rng(101);
  const Grid grid = make_grid(0.0, 1.0, 257, 1.0);
  const std::pair<double, double> orders[5] = {
      {0.3, 0.7}, {0.5, 0.5}, {0.8, 0.4}, {1.0, 1.0}, {0.6, 0.9}};
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const SampledFunction f = sample_random_trig(grid, rng, false);
    const auto [alpha, beta] = orders[i];
    worst = std::max(worst,
                     pointwise_max_diff(
                         combined_derivative(f, OrderSpec(alpha, beta, kGammaLeftSided)),
                         left_rl_derivative(f, alpha)));
    SampledFunction neg_right = right_rl_derivative(f, beta);
    for (Complex& z : neg_right.flat()) z = -z;
    worst = std::max(worst,
                     pointwise_max_diff(
                         combined_derivative(f, OrderSpec(alpha, beta, kGammaRightSided)),
                         neg_right));
  }
  criterion(1, "one-sided reduction identities", worst <= 1e-13,
            "max pointwise deviation " + fmt(worst) + " (tol 1e-13)");
}

void c02_power_rule_convergence() {
  bool pass = true;
  std::ostringstream detail;
  for (const double nu : {1.0, 2.0, 3.0}) {
    for (const double alpha : {0.3, 0.5, 0.8}) {
      std::vector<double> errors, spacings;
      for (const std::size_t n : {129u, 257u, 513u, 1025u}) {
        const Grid grid = make_grid(0.0, 1.0, n, 1.0);
        const SampledFunction f = sample(
            [nu](double tau) { return Complex{std::pow(tau, nu), 0.0}; }, grid);
        const SampledFunction deriv = left_rl_derivative(f, alpha);
        const std::size_t margin = interior_margin(n);
        double worst = 0.0;
        for (std::size_t j = margin; j + margin < n; ++j) {
          worst = std::max(worst,
                           std::abs(deriv.value(j) -
                                    Complex{oracle::power_rule_derivative(nu, alpha,
                                                                          grid.node(j)),
                                            0.0}));
        }
        errors.push_back(worst);
        spacings.push_back(grid.spacing());
      }
      const double order = estimate_order(spacings, errors);
      if (order < 0.8 || errors.back() > 5e-2) {
        pass = false;
        detail << "nu=" << nu << " alpha=" << alpha << " order=" << fmt(order)
               << " err=" << fmt(errors.back()) << "; ";
      }
    }
  }
  if (pass) detail << "all 9 cases: order >= 0.8 and error at n=1025 <= 5e-2";
  criterion(2, "power-rule convergence of the left derivative", pass, detail.str());
}

void c03_integration_by_parts() {
  bool pass = true;
  double worst_final = 0.0;
  for (const auto& [alpha, beta] :
       {std::pair{0.5, 0.5}, std::pair{0.7, 0.4}}) {
    for (const Complex gamma : {Complex{0.0, 0.0}, Complex{0.3, 0.0}, kGammaLeftSided}) {
      double previous = 1e300;
      for (const std::size_t n : {129u, 257u, 513u, 1025u}) {
        const Grid grid = make_grid(0.0, 1.0, n, 1.0);
        const SampledFunction f =
            sample([](double tau) { return Complex{tau * (1.0 - tau), 0.0}; }, grid);
        const SampledFunction g =
            sample([](double tau) { return Complex{std::cos(tau), 0.0}; }, grid);
        const double defect = std::abs(ibp_defect(f, g, OrderSpec(alpha, beta, gamma)));
        if (!(defect < previous)) pass = false;
        previous = defect;
        if (n == 1025) {
          worst_final = std::max(worst_final, defect);
          if (defect > 5e-2) pass = false;
        }
      }
    }
  }
  criterion(3, "integration-by-parts defect", pass,
            "monotone over the ladder; worst |defect| at n=1025 " + fmt(worst_final) +
                " (tol 5e-2)");
}

void c04_classical_free_particle() {
  const Grid grid = make_grid(0.0, 1.0, 257, 1.0);
  SolveOptions options;
  options.gradient_tolerance = 1e-9;
  options.max_iterations = 2000;
  const SolveReport report = minimize_action(
      make_free_lagrangian(), OrderSpec(1.0, 1.0, kGammaLeftSided), grid, 0.0, 1.0, options);

  const double path_dev = interior_path_error(report.final_path,
                                              [](double tau) { return tau; });
  const double action_dev = std::abs(report.final_action - Complex{0.5, 0.0});
  const bool pass =
      path_dev <= 1e-4 && action_dev <= 1e-3 && report.el_residual_norm <= 1e-6;
  criterion(4, "classical free-particle limit", pass,
            "path dev " + fmt(path_dev) + " (1e-4), action dev " + fmt(action_dev) +
                " (1e-3), residual " + fmt(report.el_residual_norm) + " (1e-6)");
}

void c05_classical_oscillator() {
  const Grid grid = make_grid(0.0, 1.0, 257, 1.0);
  SolveOptions options;
  options.gradient_tolerance = 1e-6;
  options.max_iterations = 2000;
  const SolveReport report =
      minimize_action(make_oscillator_lagrangian(), OrderSpec(1.0, 1.0, kGammaLeftSided),
                      grid, 0.0, 1.0, options);
  const double dev = interior_path_error(report.final_path, [](double tau) {
    return oracle::oscillator_extremal(1.0, 1.0, 0.0, 1.0, 0.0, 1.0, tau);
  });
  criterion(5, "classical oscillator limit", report.converged && dev <= 1e-3,
            "interior-max deviation from the closed form " + fmt(dev) + " (tol 1e-3)");
}

void c06_friction_decay() {
  const Lagrangian free = make_free_lagrangian();
  std::vector<double> magnitudes;
  for (const double t_obs : {2.0, 4.0, 8.0, 16.0}) {
    const Grid grid = make_grid(0.0, 1.0, 257, t_obs);
    const SampledFunction q = sample([](double tau) { return Complex{tau, 0.0}; }, grid);
    const FrictionForce force =
        friction_force(q, free, OrderSpec(0.5, 1.0, kGammaLeftSided));
    magnitudes.push_back(interior_max_abs(force.values));
  }
  bool pass = true;
  for (std::size_t i = 1; i < magnitudes.size(); ++i) {
    if (!(magnitudes[i] < magnitudes[i - 1])) pass = false;
  }
  if (!(magnitudes.back() <= magnitudes.front() / 8.0)) pass = false;
  criterion(6, "friction decay in the observer time", pass,
            "interior-max |F| over t={2,4,8,16}: " + fmt(magnitudes[0]) + " " +
                fmt(magnitudes[1]) + " " + fmt(magnitudes[2]) + " " + fmt(magnitudes[3]));
}

void c07_falva_reduction() {
  const Grid grid = make_grid(0.0, 1.0, 257, 2.0);
  const double h = grid.spacing();
  const double alpha = 0.6;
  const OrderSpec order(alpha, 1.0, kGammaRightSided);
  const Lagrangian osc = make_oscillator_lagrangian();
  std::mt19937_64 rng(707);
  const SampledFunction q = sample_random_trig(grid, rng, false);
  const ELResidual residual = el_residual(q, osc, order);

  // Independent classical form: forward-difference velocity, backward
  // difference of dL/dv, plus the decaying force term.
  const std::size_t margin = interior_margin(grid.size());
  double worst = 0.0;
  for (std::size_t j = margin; j + margin < grid.size(); ++j) {
    const Complex w_here = (q.value(j + 1) - q.value(j)) / h;
    const Complex w_prev = (q.value(j) - q.value(j - 1)) / h;
    const Complex classical = q.value(j) - (w_here - w_prev) / h -
                              ((1.0 - alpha) / (grid.t_obs() - grid.node(j))) * w_here;
    worst = std::max(worst, std::abs(residual.values.value(j) - classical));
  }
  criterion(7, "damped classical reduction at beta=1", worst <= 1e-10,
            "max pointwise gap " + fmt(worst) + " (tol 1e-10)");
}

void c08_momentum_conservation() {
  const OrderSpec order(0.8, 1.0, kGammaLeftSided);
  const Lagrangian free = make_free_lagrangian();
  std::vector<double> defects;
  for (const std::size_t n : {129u, 257u, 513u}) {
    const Grid grid = make_grid(0.0, 1.0, n, 2.0);
    SolveOptions options;
    options.max_iterations = 4000;
    options.gradient_tolerance = 1e-9;
    const SolveReport solve = minimize_action(free, order, grid, 0.0, 1.0, options);
    const SampledFunction p = fractional_momentum(solve.final_path, free, order);
    defects.push_back(constant_of_motion_defect(p, order));
  }
  const bool pass = defects[1] < defects[0] && defects[2] < defects[1];
  criterion(8, "fractional momentum conservation under refinement", pass,
            "adjoint-side defect over n={129,257,513}: " + fmt(defects[0]) + " " +
                fmt(defects[1]) + " " + fmt(defects[2]));
}

void c09_gradient_correctness() {
  struct Case {
    double alpha, beta;
    Complex gamma;
    Lagrangian lagrangian;
  };
  const Case cases[3] = {
      {0.55, 0.7, kGammaLeftSided, make_free_lagrangian(1.3)},
      {0.8, 1.0, kGammaRightSided, make_oscillator_lagrangian(0.9, 2.1)},
      {1.0, 0.4, kGammaLeftSided, make_linear_velocity_lagrangian(0.7, 1.4)},
  };
  std::mt19937_64 rng(909);
  double worst_rel = 0.0;
  for (const Case& c : cases) {
    const Grid grid = make_grid(0.0, 1.0, 65, 1.5);
    const OrderSpec order(c.alpha, c.beta, c.gamma);
    const SampledFunction q = sample_random_trig(grid, rng, false);
    const SampledFunction grad = discrete_action_gradient(q, c.lagrangian, order);
    std::uniform_int_distribution<std::size_t> pick(1, grid.size() - 2);
    for (int k = 0; k < 20; ++k) {
      const std::size_t m = pick(rng);
      const double delta = 1e-5 * std::max(1.0, std::abs(q.value(m).real()));
      SampledFunction qp = q, qm = q;
      qp.value(m) += delta;
      qm.value(m) -= delta;
      const double fd = (discrete_action_value(qp, c.lagrangian, order).real() -
                         discrete_action_value(qm, c.lagrangian, order).real()) /
                        (2.0 * delta);
      const double an = grad.value(m).real();
      worst_rel = std::max(worst_rel, std::abs(fd - an) /
                                          std::max({std::abs(fd), std::abs(an), 1e-12}));
    }
  }
  criterion(9, "analytic discrete gradient vs finite differences", worst_rel <= 1e-6,
            "worst relative error over 3 problems x 20 coordinates " + fmt(worst_rel) +
                " (tol 1e-6)");
}

void c10_variational_characterization() {
  const Grid grid = make_grid(0.0, 1.0, 257, 1.0);
  const OrderSpec order(0.9, 1.0, kGammaRightSided);
  const Lagrangian free = make_free_lagrangian();
  SolveOptions options;
  options.gradient_tolerance = 1e-7;
  options.max_iterations = 3000;
  const SolveReport report = minimize_action(free, order, grid, 0.0, 1.0, options);

  double scale = 0.0;
  for (const Complex& z : report.final_path.flat()) scale = std::max(scale, std::abs(z));

  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  bool pass = report.converged;
  double closest = 1e300;
  for (int trial = 0; trial < 100; ++trial) {
    SampledFunction perturbed = report.final_path;
    for (std::size_t j = 1; j + 1 < grid.size(); ++j) {
      perturbed.value(j) += Complex{0.01 * scale * dist(rng), 0.0};
    }
    const double norm = el_residual(perturbed, free, order).interior_max;
    closest = std::min(closest, norm);
    if (!(norm > report.el_residual_norm)) pass = false;
  }
  criterion(10, "minimizer beats 100 random 1% perturbations", pass,
            "minimizer residual " + fmt(report.el_residual_norm) +
                ", closest perturbation " + fmt(closest));
}

void c11_hamiltonian_consistency() {
  const Grid grid = make_grid(0.0, 1.0, 257, 1.0);
  const OrderSpec order(1.0, 1.0, kGammaLeftSided);
  const Lagrangian osc = make_oscillator_lagrangian();
  const ControlProblem problem =
      make_cov_problem(osc, order, {Complex{0.0, 0.0}}, {Complex{1.0, 0.0}});
  std::mt19937_64 rng(1111);
  const SampledFunction q = sample_random_trig(grid, rng, false);
  const SampledFunction u = combined_derivative(q, order);
  const SampledFunction p = fractional_momentum(q, osc, order);
  const AugmentedState state{q, u, p};

  const HamiltonianResiduals residuals = hamiltonian_system_residuals(state, problem);
  const ELResidual el = el_residual(q, osc, order);
  // At order one the kernel is 1, so the kernel-weighted residual norm is the
  // plain interior norm.
  const double gap = std::abs(residuals.costate_defect - el.interior_max);
  const bool pass = residuals.stationarity_defect <= 1e-15 &&
                    residuals.dyn_defect <= 1e-12 && gap <= 1e-10;
  criterion(11, "hamiltonian system consistency in the variational case", pass,
            "stationarity " + fmt(residuals.stationarity_defect) + " (1e-15), dynamics " +
                fmt(residuals.dyn_defect) + " (1e-12), costate vs residual gap " +
                fmt(gap) + " (1e-10)");
}

void c12_cli_determinism() {
  const fs::path base = fs::temp_directory_path() / "falva_acceptance_cli";
  fs::remove_all(base);
  fs::create_directories(base);
  const std::string cli = FALVA_CLI_PATH;
  auto run = [&](const std::string& out) {
    const std::string command = cli + " verify --suite reductions --seed 42 --out " +
                                (base / out).string() + " >/dev/null 2>&1";
    return WEXITSTATUS(std::system(command.c_str()));
  };
  auto slurp = [&](const std::string& out, const std::string& name) {
    std::ifstream in(base / out / name, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };
  const int rc1 = run("run1");
  const int rc2 = run("run2");
  const std::string table1 = slurp("run1", "verify_reductions.csv");
  const std::string table2 = slurp("run2", "verify_reductions.csv");
  const std::string report1 = slurp("run1", "report.json");
  const std::string report2 = slurp("run2", "report.json");
  const bool pass = rc1 == 0 && rc2 == 0 && !table1.empty() && table1 == table2 &&
                    report1 == report2;
  criterion(12, "seeded CLI runs are byte-identical", pass,
            "exit codes " + std::to_string(rc1) + "/" + std::to_string(rc2) + ", table " +
                std::to_string(table1.size()) + " bytes compared");
}

}  // namespace

int main() {
  c01_reduction_identities();
  c02_power_rule_convergence();
  c03_integration_by_parts();
  c04_classical_free_particle();
  c05_classical_oscillator();
  c06_friction_decay();
  c07_falva_reduction();
  c08_momentum_conservation();
  c09_gradient_correctness();
  c10_variational_characterization();
  c11_hamiltonian_consistency();
  c12_cli_determinism();

  std::printf("%s: %d of 12 criteria failed\n",
              failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", failures);
  return failures;
}
