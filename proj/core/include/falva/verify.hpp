#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "falva/grid.hpp"

namespace falva {

struct VerifyCase {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;  // ladders, orders, parameters
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<VerifyCase> cases;
  bool all_pass() const;
};

/// suite in {reductions, ibp, constants, classical-limit, falva-limit}.
/// Deterministic for a fixed seed.
VerifyReport run_verify_suite(const std::string& suite, std::uint64_t seed);

std::vector<std::string> verify_suite_names();

/// Least-squares slope of log(err) against log(h): the empirical convergence
/// order over a grid ladder.
double estimate_order(std::span<const double> h, std::span<const double> err);

/// Random trigonometric polynomial on the grid's interval; with zero_boundary
/// it is a pure sine series vanishing at both endpoints.
SampledFunction sample_random_trig(const Grid& grid, std::mt19937_64& rng,
                                   bool zero_boundary);

}  // namespace falva
