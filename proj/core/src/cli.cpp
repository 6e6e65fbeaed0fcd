#include "falva/cli.hpp"

#include <sstream>

#include <json.hpp>

#include "falva/operators.hpp"
#include "falva/output.hpp"
#include "falva/solver.hpp"

namespace falva::cli {

namespace {

using nlohmann::json;

json order_json(const ProblemConfig& config) {
  return json{{"alpha", config.alpha},
              {"beta", config.beta},
              {"gamma", {config.gamma.real(), config.gamma.imag()}}};
}

json grid_json(const ProblemConfig& config) {
  return json{{"a", config.a},
              {"b", config.b},
              {"n_points", config.n_points},
              {"t_obs", config.t_obs}};
}

}  // namespace

int cmd_ops(const ProblemConfig& config, const std::filesystem::path& out_dir) {
  const Grid grid = config.grid();
  const OrderSpec order = config.order();
  const SampledFunction f = sample(named_function(config.function_name, grid), grid);

  const SampledFunction left = left_rl_derivative(f, order.alpha());
  const SampledFunction right = right_rl_derivative(f, order.beta());
  const SampledFunction combined = combined_derivative(f, order);

  std::ostringstream csv;
  csv << "node,input,left_derivative,right_derivative,combined_real,combined_imag\n";
  for (std::size_t j = 0; j < grid.size(); ++j) {
    csv << j << ',' << format_float(f.value(j).real()) << ','
        << format_float(left.value(j).real()) << ','
        << format_float(right.value(j).real()) << ','
        << format_float(combined.value(j).real()) << ','
        << format_float(combined.value(j).imag()) << '\n';
  }
  write_text_atomic(out_dir / "ops.csv", csv.str());

  json report{{"command", "ops"},
              {"function", config.function_name},
              {"grid", grid_json(config)},
              {"order", order_json(config)},
              {"table", "ops.csv"}};
  write_text_atomic(out_dir / "report.json", report.dump(2) + "\n");
  return kExitOk;
}

int cmd_minimize(const ProblemConfig& config, const std::filesystem::path& out_dir) {
  const Grid grid = config.grid();
  const OrderSpec order = config.order();
  const Lagrangian lagrangian = config.lagrangian();

  const SolveReport solve =
      minimize_action(lagrangian, order, grid, config.q_a, config.q_b, config.solver);

  std::ostringstream csv;
  csv << "node,tau,q_real,q_imag\n";
  for (std::size_t j = 0; j < grid.size(); ++j) {
    csv << j << ',' << format_float(grid.node(j)) << ','
        << format_float(solve.final_path.value(j).real()) << ','
        << format_float(solve.final_path.value(j).imag()) << '\n';
  }
  write_text_atomic(out_dir / "path.csv", csv.str());

  json report{{"command", "minimize"},
              {"grid", grid_json(config)},
              {"order", order_json(config)},
              {"lagrangian", config.lagrangian_name},
              {"boundary", {{"q_a", config.q_a}, {"q_b", config.q_b}}},
              {"method", solve.method},
              {"converged", solve.converged},
              {"iterations", solve.iterations},
              {"gradient_norm", solve.gradient_norm},
              {"final_action_real", solve.final_action.real()},
              {"final_action_imag", solve.final_action.imag()},
              {"el_residual_norm", solve.el_residual_norm},
              {"path_table", "path.csv"}};
  write_text_atomic(out_dir / "report.json", report.dump(2) + "\n");
  return solve.converged ? kExitOk : kExitNoConvergence;
}

int cmd_verify(const std::string& suite, std::uint64_t seed,
               const std::filesystem::path& out_dir) {
  const VerifyReport report = run_verify_suite(suite, seed);

  std::ostringstream csv;
  csv << "case,measured,threshold,pass,detail\n";
  for (const VerifyCase& c : report.cases) {
    csv << '"' << c.name << "\"," << format_float(c.measured) << ','
        << format_float(c.threshold) << ',' << (c.pass ? "1" : "0") << ",\"" << c.detail
        << "\"\n";
  }
  write_text_atomic(out_dir / ("verify_" + suite + ".csv"), csv.str());

  std::size_t passed = 0;
  for (const VerifyCase& c : report.cases) passed += c.pass ? 1 : 0;
  json sidecar{{"command", "verify"},
               {"suite", suite},
               {"seed", seed},
               {"cases", report.cases.size()},
               {"passed", passed},
               {"all_pass", report.all_pass()},
               {"table", "verify_" + suite + ".csv"}};
  write_text_atomic(out_dir / "report.json", sidecar.dump(2) + "\n");
  return report.all_pass() ? kExitOk : kExitNumerical;
}

}  // namespace falva::cli
