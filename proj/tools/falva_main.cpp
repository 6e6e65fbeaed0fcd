#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "falva/cli.hpp"

namespace {

std::filesystem::path resolve_out_dir(const std::string& out_flag,
                                      const std::string& config_output) {
  if (!out_flag.empty()) return out_flag;
  if (!config_output.empty()) return config_output;
  return ".";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"falva: fractional action-like variational calculus"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string suite;
  std::uint64_t seed = 0;

  CLI::App* ops = app.add_subcommand(
      "ops", "Tabulate one-sided and combined fractional derivatives of a named function");
  ops->add_option("--config", config_path, "Problem config (JSON)")->required();
  ops->add_option("--out", out_dir, "Output directory");

  CLI::App* minimize = app.add_subcommand(
      "minimize", "Direct minimization of the fractional action with fixed endpoints");
  minimize->add_option("--config", config_path, "Problem config (JSON)")->required();
  minimize->add_option("--out", out_dir, "Output directory");

  CLI::App* verify = app.add_subcommand(
      "verify", "Run a built-in verification suite and emit pass/fail per case");
  verify->add_option("--suite", suite, "reductions|ibp|constants|classical-limit|falva-limit")
      ->required();
  verify->add_option("--seed", seed, "Seed for randomized probes (recorded in the report)");
  verify->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return falva::cli::kExitUsage;
  }

  try {
    if (ops->parsed()) {
      const falva::ProblemConfig config = falva::load_problem_config(config_path);
      return falva::cli::cmd_ops(config, resolve_out_dir(out_dir, config.output_dir));
    }
    if (minimize->parsed()) {
      const falva::ProblemConfig config = falva::load_problem_config(config_path);
      return falva::cli::cmd_minimize(config, resolve_out_dir(out_dir, config.output_dir));
    }
    if (verify->parsed()) {
      return falva::cli::cmd_verify(suite, seed, resolve_out_dir(out_dir, ""));
    }
  } catch (const falva::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return falva::cli::kExitUsage;
  } catch (const falva::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return falva::cli::kExitUsage;
  } catch (const falva::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return falva::cli::kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return falva::cli::kExitNumerical;
  }
  return falva::cli::kExitUsage;
}
