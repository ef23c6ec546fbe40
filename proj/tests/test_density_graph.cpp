#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "stieltjes/density_graph.hpp"
#include "stieltjes/errors.hpp"
#include "support/fixtures.hpp"

using namespace stieltjes;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PiecewiseMonotoneDensity uniform_density() {
  PiecewiseMonotoneDensity d;
  d.pieces.push_back({-1.0, 1.0, Direction::constant, 0.5, 0.5});
  return d;
}

// rho(x) = 5/16 (1+14x^2)(1-x^2)^2: increasing/decreasing pieces between the
// turning points at +-sqrt(2/7) and 0.
PiecewiseMonotoneDensity jacobi_density() {
  const double xm = std::sqrt(2.0 / 7.0);
  const double peak = 625.0 / 784.0;
  PiecewiseMonotoneDensity d;
  d.pieces.push_back({-1.0, -xm, Direction::increasing, 0.0, peak});
  d.pieces.push_back({-xm, 0.0, Direction::decreasing, peak, 0.3125});
  d.pieces.push_back({0.0, xm, Direction::increasing, 0.3125, peak});
  d.pieces.push_back({xm, 1.0, Direction::decreasing, peak, 0.0});
  return d;
}

// Two-cut density of the multicut fixture; values from the grid oracle.
PiecewiseMonotoneDensity multicut_density() {
  const double m1 = 0.13024329014197591;   // min of component 1 at x = -7/3
  const double M2 = 0.33323937013531296;   // max of component 2 at x ~ 1.89362
  PiecewiseMonotoneDensity d;
  d.pieces.push_back({-3.0, -7.0 / 3.0, Direction::decreasing, kInf, m1});
  d.pieces.push_back({-7.0 / 3.0, -1.0, Direction::increasing, m1, kInf});
  d.pieces.push_back({1.0, 1.89362, Direction::increasing, 0.0, M2});
  d.pieces.push_back({1.89362, 3.0, Direction::decreasing, M2, 0.0});
  return d;
}

PiecewiseMonotoneDensity arcsine_density() {
  const double mid = 1.0 / fixtures::kPi;
  PiecewiseMonotoneDensity d;
  d.pieces.push_back({-1.0, 0.0, Direction::decreasing, kInf, mid});
  d.pieces.push_back({0.0, 1.0, Direction::increasing, mid, kInf});
  return d;
}

}  // namespace

TEST_CASE("level_component_count: uniform has two jump crossings") {
  auto d = uniform_density();
  CHECK(level_component_count(d, 0.25) == 2);
  CHECK(level_component_count(d, 0.75) == 0);
  CHECK_THROWS_AS(level_component_count(d, 0.5), validation_error);  // critical
  CHECK_THROWS_AS(level_component_count(d, -1.0), validation_error);
}

TEST_CASE("level_component_count: explicit jump pieces change nothing") {
  auto d = uniform_density();
  PiecewiseMonotoneDensity with_jumps;
  with_jumps.pieces.push_back({-1.0, -1.0, Direction::constant, 0.0, 0.5});
  with_jumps.pieces.push_back(d.pieces[0]);
  with_jumps.pieces.push_back({1.0, 1.0, Direction::constant, 0.5, 0.0});
  for (double y : {0.1, 0.25, 0.49, 0.51, 0.9})
    CHECK(level_component_count(with_jumps, y) == level_component_count(d, y));
}

TEST_CASE("level_component_count: Jacobi density (grid oracle: 4 at y=0.5, 2 at y=0.2)") {
  auto d = jacobi_density();
  CHECK(level_component_count(d, 0.5) == 4);
  CHECK(level_component_count(d, 0.2) == 2);
  CHECK(level_component_count(d, 0.9) == 0);
}

TEST_CASE("inverse_count_bound: spec measures") {
  CHECK(inverse_count_bound(jacobi_density()).bound == 2);
  CHECK(inverse_count_bound(uniform_density()).bound == 1);
  CHECK(inverse_count_bound(multicut_density()).bound == 3);
  CHECK(inverse_count_bound(arcsine_density()).bound == 2);
}

TEST_CASE("inverse_count_bound: report fields") {
  auto rep = inverse_count_bound(jacobi_density());
  CHECK(rep.count_max == 4);
  CHECK(rep.witness_y > 0.3125);
  CHECK(rep.witness_y < 625.0 / 784.0);
  REQUIRE(rep.critical_values.size() == 2);
  CHECK(rep.critical_values[0] == doctest::Approx(0.3125));
  CHECK(rep.critical_values[1] == doctest::Approx(625.0 / 784.0));
}

TEST_CASE("bound is at least the number of support components") {
  // Remark-level invariant; multicut has 2 support components, bound 3.
  CHECK(inverse_count_bound(multicut_density()).bound >= 2);
}

TEST_CASE("count is constant between consecutive critical values") {
  auto d = jacobi_density();
  auto rep = inverse_count_bound(d);
  std::vector<double> edges{0.0};
  edges.insert(edges.end(), rep.critical_values.begin(), rep.critical_values.end());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double lo = edges[i], hi = edges[i + 1];
    int a = level_component_count(d, lo + 0.25 * (hi - lo));
    int b = level_component_count(d, lo + 0.50 * (hi - lo));
    int c = level_component_count(d, lo + 0.75 * (hi - lo));
    CHECK(a == b);
    CHECK(b == c);
  }
}

TEST_CASE("bound_from_samples") {
  // 1 - x^2 on [-1,1]: single maximum
  std::vector<double> xs, ys;
  for (int i = 0; i <= 200; ++i) {
    double x = -1.0 + 2.0 * i / 200.0;
    xs.push_back(x);
    ys.push_back(1.0 - x * x);
  }
  CHECK(bound_from_samples(xs, ys).bound == 1);

  // 5.1 density on 2001 points
  xs.clear();
  ys.clear();
  for (int i = 0; i <= 2000; ++i) {
    double x = -1.0 + 2.0 * i / 2000.0;
    xs.push_back(x);
    ys.push_back(5.0 / 16.0 * (1.0 + 14.0 * x * x) * std::pow(1.0 - x * x, 2));
  }
  CHECK(bound_from_samples(xs, ys).bound == 2);

  // all-zero samples
  std::vector<double> zs(xs.size(), 0.0);
  CHECK(bound_from_samples(xs, zs).bound == 0);

  // uniform samples: constant run with jumps at the ends
  std::vector<double> ux{-1.0, -0.5, 0.0, 0.5, 1.0}, uy(5, 0.5);
  CHECK(bound_from_samples(ux, uy).bound == 1);

  CHECK_THROWS_AS(bound_from_samples({0.0}, {1.0}), validation_error);
  CHECK_THROWS_AS(bound_from_samples({0.0, 0.0}, {1.0, 1.0}), validation_error);
  CHECK_THROWS_AS(bound_from_samples({0.0, 1.0}, {1.0, -1.0}), validation_error);
}

TEST_CASE("bound_from_samples matches inverse_count_bound on resolved samples") {
  auto d = jacobi_density();
  auto direct = inverse_count_bound(d);
  std::vector<double> xs, ys;
  for (int i = 0; i <= 4000; ++i) {
    double x = -1.0 + 2.0 * i / 4000.0;
    xs.push_back(x);
    ys.push_back(5.0 / 16.0 * (1.0 + 14.0 * x * x) * std::pow(1.0 - x * x, 2));
  }
  CHECK(bound_from_samples(xs, ys).bound == direct.bound);
}

TEST_CASE("validate flags inconsistent pieces") {
  PiecewiseMonotoneDensity d;
  d.pieces.push_back({0.0, 1.0, Direction::increasing, 1.0, 0.5});
  auto v = validate(d);
  REQUIRE(!v.empty());
  CHECK(v.front().find("direction-inconsistent") != std::string::npos);

  PiecewiseMonotoneDensity neg;
  neg.pieces.push_back({0.0, 1.0, Direction::constant, -0.5, -0.5});
  CHECK(!validate(neg).empty());
}
