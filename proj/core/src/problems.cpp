#include "falva/problems.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace falva {

namespace {

using nlohmann::json;

void require_keys(const std::map<std::string, double>& coefficients,
                  const std::set<std::string>& allowed, const std::string& name) {
  for (const auto& [key, _] : coefficients) {
    if (!allowed.contains(key)) {
      throw DomainError("lagrangian '" + name + "': unknown coefficient '" + key + "'");
    }
  }
}

double coefficient(const std::map<std::string, double>& coefficients,
                   const std::string& key, double fallback) {
  const auto it = coefficients.find(key);
  return it == coefficients.end() ? fallback : it->second;
}

}  // namespace

Lagrangian make_free_lagrangian(double mass) {
  return make_scalar_lagrangian(
      [mass](Complex v, Complex, double) { return 0.5 * mass * v * v; },
      [mass](Complex v, Complex, double) { return mass * v; },
      [](Complex, Complex, double) { return Complex{0.0, 0.0}; });
}

Lagrangian make_oscillator_lagrangian(double mass, double stiffness) {
  return make_scalar_lagrangian(
      [mass, stiffness](Complex v, Complex q, double) {
        return 0.5 * mass * v * v + 0.5 * stiffness * q * q;
      },
      [mass](Complex v, Complex, double) { return mass * v; },
      [stiffness](Complex, Complex q, double) { return stiffness * q; });
}

Lagrangian make_linear_velocity_lagrangian(double coupling, double stiffness) {
  return make_scalar_lagrangian(
      [coupling, stiffness](Complex v, Complex q, double) {
        return coupling * v * q + 0.5 * stiffness * q * q;
      },
      [coupling](Complex, Complex q, double) { return coupling * q; },
      [coupling, stiffness](Complex v, Complex q, double) {
        return coupling * v + stiffness * q;
      });
}

Lagrangian make_builtin_lagrangian(const std::string& name,
                                   const std::map<std::string, double>& coefficients) {
  if (name == "free") {
    require_keys(coefficients, {"mass"}, name);
    return make_free_lagrangian(coefficient(coefficients, "mass", 1.0));
  }
  if (name == "oscillator") {
    require_keys(coefficients, {"mass", "stiffness"}, name);
    return make_oscillator_lagrangian(coefficient(coefficients, "mass", 1.0),
                                      coefficient(coefficients, "stiffness", 1.0));
  }
  if (name == "linear-velocity") {
    require_keys(coefficients, {"coupling", "stiffness"}, name);
    return make_linear_velocity_lagrangian(coefficient(coefficients, "coupling", 1.0),
                                           coefficient(coefficients, "stiffness", 1.0));
  }
  throw DomainError("unknown lagrangian '" + name +
                    "' (expected free, oscillator or linear-velocity)");
}

namespace {

double get_number(const json& node, const std::string& path) {
  if (!node.is_number()) {
    throw DomainError("config: " + path + " must be a number");
  }
  return node.get<double>();
}

}  // namespace

ProblemConfig parse_problem_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("config: not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw DomainError("config: top level must be an object");

  ProblemConfig cfg;
  if (root.contains("grid")) {
    const json& g = root["grid"];
    if (g.contains("a")) cfg.a = get_number(g["a"], "grid.a");
    if (g.contains("b")) cfg.b = get_number(g["b"], "grid.b");
    if (g.contains("n_points")) {
      if (!g["n_points"].is_number_unsigned()) {
        throw DomainError("config: grid.n_points must be a non-negative integer");
      }
      cfg.n_points = g["n_points"].get<std::size_t>();
    }
    if (g.contains("t_obs")) cfg.t_obs = get_number(g["t_obs"], "grid.t_obs");
  }
  if (root.contains("order")) {
    const json& o = root["order"];
    if (o.contains("alpha")) cfg.alpha = get_number(o["alpha"], "order.alpha");
    if (o.contains("beta")) cfg.beta = get_number(o["beta"], "order.beta");
    if (o.contains("gamma")) {
      const json& g = o["gamma"];
      if (!g.is_array() || g.size() != 2 || !g[0].is_number() || !g[1].is_number()) {
        throw DomainError("config: order.gamma must be a [real, imag] pair");
      }
      cfg.gamma = Complex{g[0].get<double>(), g[1].get<double>()};
    }
  }
  if (root.contains("lagrangian")) {
    const json& l = root["lagrangian"];
    if (l.contains("name")) {
      if (!l["name"].is_string()) throw DomainError("config: lagrangian.name must be a string");
      cfg.lagrangian_name = l["name"].get<std::string>();
    }
    if (l.contains("coefficients")) {
      const json& c = l["coefficients"];
      if (!c.is_object()) throw DomainError("config: lagrangian.coefficients must be an object");
      for (const auto& [key, value] : c.items()) {
        cfg.coefficients[key] = get_number(value, "lagrangian.coefficients." + key);
      }
    }
  }
  if (root.contains("boundary")) {
    const json& b = root["boundary"];
    if (b.contains("q_a")) cfg.q_a = get_number(b["q_a"], "boundary.q_a");
    if (b.contains("q_b")) cfg.q_b = get_number(b["q_b"], "boundary.q_b");
  }
  if (root.contains("solver")) {
    const json& s = root["solver"];
    if (s.contains("max_iterations")) {
      if (!s["max_iterations"].is_number_unsigned()) {
        throw DomainError("config: solver.max_iterations must be a non-negative integer");
      }
      cfg.solver.max_iterations = s["max_iterations"].get<std::size_t>();
    }
    if (s.contains("gradient_tolerance")) {
      cfg.solver.gradient_tolerance =
          get_number(s["gradient_tolerance"], "solver.gradient_tolerance");
    }
    if (s.contains("shrink_factor")) {
      cfg.solver.shrink_factor = get_number(s["shrink_factor"], "solver.shrink_factor");
    }
    if (s.contains("sufficient_decrease")) {
      cfg.solver.sufficient_decrease =
          get_number(s["sufficient_decrease"], "solver.sufficient_decrease");
    }
  }
  if (root.contains("function")) {
    if (!root["function"].is_string()) throw DomainError("config: function must be a string");
    cfg.function_name = root["function"].get<std::string>();
  }
  if (root.contains("output")) {
    if (!root["output"].is_string()) throw DomainError("config: output must be a string");
    cfg.output_dir = root["output"].get<std::string>();
  }

  // Surface structural violations now, with the config vocabulary.
  try {
    cfg.grid();
  } catch (const DomainError& e) {
    throw DomainError(std::string("config: grid: ") + e.what());
  }
  try {
    cfg.order();
  } catch (const DomainError& e) {
    throw DomainError(std::string("config: order: ") + e.what());
  }
  try {
    cfg.lagrangian();
  } catch (const DomainError& e) {
    throw DomainError(std::string("config: lagrangian: ") + e.what());
  }
  if (!(cfg.solver.gradient_tolerance > 0.0)) {
    throw DomainError("config: solver.gradient_tolerance must be positive");
  }
  if (!(cfg.solver.shrink_factor > 0.0 && cfg.solver.shrink_factor < 1.0)) {
    throw DomainError("config: solver.shrink_factor must lie in (0, 1)");
  }
  if (!(cfg.solver.sufficient_decrease > 0.0)) {
    throw DomainError("config: solver.sufficient_decrease must be positive");
  }
  if (!std::isfinite(cfg.q_a) || !std::isfinite(cfg.q_b)) {
    throw DomainError("config: boundary values must be finite");
  }
  named_function(cfg.function_name, cfg.grid());
  return cfg;
}

ProblemConfig load_problem_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("config: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem_config(buffer.str());
}

std::function<Complex(double)> named_function(const std::string& name, const Grid& grid) {
  const double a = grid.a();
  const double width = grid.b() - grid.a();
  if (name == "zero") return [](double) { return Complex{0.0, 0.0}; };
  if (name == "one") return [](double) { return Complex{1.0, 0.0}; };
  if (name == "identity") return [](double tau) { return Complex{tau, 0.0}; };
  if (name == "square") return [](double tau) { return Complex{tau * tau, 0.0}; };
  if (name == "cube") return [](double tau) { return Complex{tau * tau * tau, 0.0}; };
  if (name == "sin") return [](double tau) { return Complex{std::sin(tau), 0.0}; };
  if (name == "cos") return [](double tau) { return Complex{std::cos(tau), 0.0}; };
  if (name == "bridge") {
    return [a, width](double tau) {
      const double s = (tau - a) / width;
      return Complex{s * (1.0 - s), 0.0};
    };
  }
  throw DomainError("config: unknown function '" + name +
                    "' (expected zero, one, identity, square, cube, sin, cos or bridge)");
}

}  // namespace falva
