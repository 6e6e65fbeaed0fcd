#include <cmath>
#include <complex>

#include <doctest.h>

#include "falva/grid.hpp"
#include "falva/special.hpp"

using namespace falva;

TEST_CASE("make_grid produces the uniform nodes") {
  const Grid grid = make_grid(0.0, 1.0, 5, 1.0);
  const std::vector<double> expected = {0.0, 0.25, 0.5, 0.75, 1.0};
  const std::vector<double> nodes = grid.nodes();
  REQUIRE(nodes.size() == expected.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    CHECK(nodes[j] == doctest::Approx(expected[j]).epsilon(1e-15));
  }
  CHECK(grid.spacing() == doctest::Approx(0.25));
}

TEST_CASE("make_grid rejects invalid parameters with named constraints") {
  CHECK_THROWS_WITH_AS(make_grid(0.0, 1.0, 3, 0.5), doctest::Contains("t_obs"),
                       DomainError);
  CHECK_THROWS_WITH_AS(make_grid(2.0, 2.0, 5, 3.0), doctest::Contains("a < b"),
                       DomainError);
  CHECK_THROWS_WITH_AS(make_grid(0.0, 1.0, 2, 1.0), doctest::Contains("n_points"),
                       DomainError);
}

TEST_CASE("node spacing is uniform to rounding") {
  for (const auto& [a, b, n] : {std::tuple{-1.3, 2.7, 337}, {0.0, 10.0, 513},
                                {2.0, 3.0, 77}}) {
    const Grid grid = make_grid(a, b, static_cast<std::size_t>(n), b + 1.0);
    double worst = 0.0;
    for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
      worst = std::max(worst,
                       std::abs(grid.node(j + 1) - grid.node(j) - grid.spacing()));
    }
    CHECK(worst <= 1e-14 * (b - a));
  }
}

TEST_CASE("sample evaluates at the nodes with exact read-back") {
  const Grid grid = make_grid(0.0, 1.0, 5, 1.0);
  const SampledFunction sq = sample([](double tau) { return Complex{tau * tau, 0.0}; }, grid);
  const std::vector<double> expected = {0.0, 0.0625, 0.25, 0.5625, 1.0};
  for (std::size_t j = 0; j < 5; ++j) {
    // No interpolation: stored value is bit-identical to the evaluation.
    CHECK(sq.value(j) == Complex{grid.node(j) * grid.node(j), 0.0});
    CHECK(sq.value(j).real() == doctest::Approx(expected[j]));
  }

  const SampledFunction ones = sample([](double) { return Complex{1.0, 0.0}; }, grid);
  for (std::size_t j = 0; j < 5; ++j) CHECK(ones.value(j) == Complex{1.0, 0.0});

  const Grid grid3 = make_grid(0.0, 1.0, 3, 1.0);
  const SampledFunction imag = sample([](double tau) { return Complex{0.0, tau}; }, grid3);
  CHECK(imag.value(0) == Complex{0.0, 0.0});
  CHECK(imag.value(1) == Complex{0.0, 0.5});
  CHECK(imag.value(2) == Complex{0.0, 1.0});
}

TEST_CASE("sample reports the failing node") {
  const Grid grid = make_grid(0.0, 1.0, 5, 1.0);
  auto bad = [](double tau) -> Complex {
    if (tau >= 0.5) throw std::runtime_error("boom");
    return Complex{tau, 0.0};
  };
  CHECK_THROWS_WITH_AS(sample(bad, grid), doctest::Contains("node 2"), NumericalError);
}

TEST_CASE("vector-valued sampling keeps the stated dimension") {
  const Grid grid = make_grid(0.0, 1.0, 4, 1.0);
  const SampledFunction f = sample(
      [](double tau) { return CVec{Complex{tau, 0.0}, Complex{-tau, 1.0}}; }, grid, 2);
  CHECK(f.dim() == 2);
  CHECK(f.value(2, 0).real() == doctest::Approx(grid.node(2)));
  CHECK(f.value(2, 1).imag() == doctest::Approx(1.0));
}

TEST_CASE("gamma_function hits the classical values") {
  CHECK(gamma_function(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_function(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(gamma_function(5.0) == doctest::Approx(24.0).epsilon(1e-14));
}

TEST_CASE("gamma_function meets 1e-12 relative accuracy across the working range") {
  // Reference values to 19 significant digits.
  CHECK(gamma_function(0.1) == doctest::Approx(9.513507698668731836).epsilon(1e-12));
  CHECK(gamma_function(2.5) == doctest::Approx(1.329340388179137021).epsilon(1e-12));
  CHECK(gamma_function(7.5) == doctest::Approx(1871.254305797788346).epsilon(1e-12));
  CHECK(gamma_function(20.0) == doctest::Approx(121645100408832000.0).epsilon(1e-12));
}

TEST_CASE("gamma_function satisfies the recurrence on a sweep") {
  for (int i = 1; i <= 100; ++i) {
    const double x = 0.1 * static_cast<double>(i);
    const double lhs = gamma_function(x + 1.0);
    const double rhs = x * gamma_function(x);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs));
  }
}

TEST_CASE("gamma_function rejects poles") {
  CHECK_THROWS_AS(gamma_function(0.0), DomainError);
  CHECK_THROWS_AS(gamma_function(-1.0), DomainError);
  CHECK_THROWS_AS(gamma_function(-7.0), DomainError);
  CHECK_NOTHROW(gamma_function(-0.5));
}

TEST_CASE("order spec enforces the (0, 1] restriction") {
  CHECK_THROWS_AS(OrderSpec(0.0, 0.5, Complex{0, 0}), DomainError);
  CHECK_THROWS_AS(OrderSpec(1.2, 0.5, Complex{0, 0}), DomainError);
  CHECK_THROWS_AS(OrderSpec(0.5, -0.1, Complex{0, 0}), DomainError);
  CHECK_NOTHROW(OrderSpec(1.0, 1.0, Complex{0.3, -2.0}));
}

TEST_CASE("interior margin excludes 5% at each end") {
  CHECK(interior_margin(257) == 13);
  CHECK(interior_margin(100) == 5);
  const Grid grid = make_grid(0.0, 1.0, 100, 1.0);
  SampledFunction f = SampledFunction::zeros(grid);
  f.value(0) = 100.0;   // endpoint junk must not affect the interior norm
  f.value(4) = 50.0;
  f.value(95) = 50.0;
  f.value(50) = 2.0;
  CHECK(interior_max_abs(f) == doctest::Approx(2.0));
  CHECK(max_abs(f) == doctest::Approx(100.0));
}
