#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stieltjes/errors.hpp"
#include "stieltjes/measure.hpp"
#include "stieltjes/quadrature.hpp"
#include "support/fixtures.hpp"

using namespace stieltjes;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("gauss-jacobi rules integrate the weight mass") {
  // Chebyshev-U closed form: int sqrt(1-x^2) = pi/2
  auto u = gauss_jacobi(0.5, 0.5, 64);
  CHECK(u->integrate([](double) { return 1.0; }) == doctest::Approx(kPi / 2).epsilon(1e-13));
  // Legendre
  auto leg = gauss_jacobi(0.0, 0.0, 32);
  CHECK(leg->integrate([](double) { return 1.0; }) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(leg->integrate([](double x) { return x * x; }) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  // Singular Jacobi weight of the two-cut measure: mass = 2 pi / sqrt(3)
  auto j = gauss_jacobi(-2.0 / 3.0, -1.0 / 3.0, 64);
  CHECK(j->integrate([](double) { return 1.0; }) ==
        doctest::Approx(2.0 * kPi / std::sqrt(3.0)).epsilon(1e-12));
  // Polynomial exactness with the (2,2) weight: int (1-x^2)^2 x^2 dx = 16/105
  auto j22 = gauss_jacobi(2.0, 2.0, 16);
  CHECK(j22->integrate([](double x) { return x * x; }) ==
        doctest::Approx(16.0 / 105.0).epsilon(1e-13));
}

TEST_CASE("validate accepts the standard fixtures") {
  CHECK(validate(fixtures::delta(0.0)).empty());
  CHECK(validate(fixtures::two_atoms()).empty());
  CHECK(validate(fixtures::uniform_measure()).empty());
  CHECK(validate(fixtures::jacobi_poly_measure()).empty());
  CHECK(validate(fixtures::multicut_measure()).empty());
  CHECK(validate(semicircle_measure(-2.0, 2.0)).empty());
}

TEST_CASE("validate reports named violations") {
  Measure dup{{{0.0, 0.5}, {0.0, 0.5}}, {}};
  auto v = validate(dup);
  REQUIRE(!v.empty());
  CHECK(v.front().find("duplicate-location") != std::string::npos);

  // Semicircle with Z chosen so the mass is 1/2.
  Measure half = semicircle_measure(-2.0, 2.0);
  half.components[0].normalization = 2.0;
  bool found = false;
  for (const auto& s : validate(half))
    if (s.find("mass-not-one") != std::string::npos) found = true;
  CHECK(found);

  Measure bad = semicircle_measure(-1.0, 1.0);
  bad.atoms.push_back({0.0, 0.1});  // atom on the component
  found = false;
  for (const auto& s : validate(bad))
    if (s.find("atom-on-component") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("density_eval: semicircle and Jacobi closed forms") {
  Measure sc = semicircle_measure(-2.0, 2.0);
  // sqrt(4 - x^2) / (2 pi)
  for (double x : {0.0, 0.7, -1.3, 1.9}) {
    CHECK(density_eval(sc, x) ==
          doctest::Approx(std::sqrt(4.0 - x * x) / (2.0 * kPi)).epsilon(1e-12));
  }
  CHECK(density_eval(sc, 0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-13));
  CHECK(density_eval(sc, 3.0) == 0.0);

  Measure jac = fixtures::jacobi_poly_measure();
  CHECK(density_eval(jac, 0.0) == doctest::Approx(0.3125).epsilon(1e-12));
  for (double x : {0.25, -0.6, 0.9}) {
    double expected = 5.0 / 16.0 * (1.0 + 14.0 * x * x) * (1.0 - x * x) * (1.0 - x * x);
    CHECK(density_eval(jac, x) == doctest::Approx(expected).epsilon(1e-12));
  }

  Measure atom = fixtures::delta(0.5);
  CHECK_THROWS_AS(density_eval(atom, 0.5), validation_error);
  CHECK(density_eval(atom, 0.25) == 0.0);
}

TEST_CASE("density_eval: multicut density matches the defining formula") {
  Measure m = fixtures::multicut_measure();
  double Z1 = 2.0 * kPi / std::sqrt(3.0);
  for (double x : {-2.9, -2.3333333333333335, -1.1}) {
    double expected = std::pow(x + 3.0, -1.0 / 3.0) * std::pow(-1.0 - x, -2.0 / 3.0) / (2.0 * Z1);
    CHECK(density_eval(m, x) == doctest::Approx(expected).epsilon(1e-10));
  }
  double Z2 = 4.398659690018487;  // quad oracle
  for (double x : {1.2, 1.89362, 2.8}) {
    double expected = std::sqrt((x - 1.0) * (3.0 - x)) * (2.0 + std::sin(x)) / (2.0 * Z2);
    CHECK(density_eval(m, x) == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("support hull and gaps") {
  Measure m = fixtures::multicut_measure();
  auto hull = support_hull(m);
  CHECK(hull.first == -3.0);
  CHECK(hull.second == 3.0);
  auto gaps = support_gaps(m);
  REQUIRE(gaps.size() == 1);
  CHECK(gaps[0].first == -1.0);
  CHECK(gaps[0].second == 1.0);

  Measure sc = semicircle_measure(-1.0, 1.0);
  CHECK(support_gaps(sc).empty());

  Measure mixed{{{0.0, 0.4}, {2.0, 0.3}}, {}};
  ACComponent c;
  c.lo = 3.0;
  c.hi = 4.0;
  c.coeffs = {4.0 / (kPi * 1.0) * 0.3 / 4.0 * 4.0};  // arbitrary, validity not needed here
  mixed.components.push_back(c);
  auto hull2 = support_hull(mixed);
  CHECK(hull2.first == 0.0);
  CHECK(hull2.second == 4.0);
  auto gaps2 = support_gaps(mixed);
  REQUIRE(gaps2.size() == 2);
  CHECK(gaps2[0] == std::pair<double, double>{0.0, 2.0});
  CHECK(gaps2[1] == std::pair<double, double>{2.0, 3.0});

  CHECK_THROWS_AS(support_hull(Measure{}), validation_error);
}

TEST_CASE("mp_measure: closed-form coefficients and structure") {
  Measure m4 = mp_measure(4.0);
  CHECK(m4.atoms.empty());
  REQUIRE(m4.components.size() == 1);
  const auto& c4 = m4.components[0];
  CHECK(c4.lo == doctest::Approx(1.0));
  CHECK(c4.hi == doctest::Approx(9.0));
  CHECK(c4.coeffs[0] == doctest::Approx(0.15915494309189535).epsilon(1e-14));
  CHECK(c4.coeffs[1] == doctest::Approx(-0.07957747154594767).epsilon(1e-14));
  CHECK(validate(m4).empty());

  Measure m25 = mp_measure(2.5);
  CHECK(m25.components[0].lo == doctest::Approx(0.33772233983162075).epsilon(1e-14));
  CHECK(m25.components[0].hi == doctest::Approx(6.662277660168381).epsilon(1e-14));
  CHECK(validate(m25).empty());

  Measure mhalf = mp_measure(0.5);
  REQUIRE(mhalf.atoms.size() == 1);
  CHECK(mhalf.atoms[0].location == 0.0);
  CHECK(mhalf.atoms[0].weight == doctest::Approx(0.5));
  CHECK(validate(mhalf).empty());
  // quadrature coefficients agree with the mirrored closed form
  for (int k = 0; k < 8; ++k)
    CHECK(mhalf.components[0].coeffs[k] ==
          doctest::Approx(fixtures::mp_phi_exact(0.5, k)).epsilon(1e-12));

  CHECK_THROWS_AS(mp_measure(-1.0), validation_error);
  CHECK_THROWS_AS(mp_measure(0.0), validation_error);
}

TEST_CASE("mp_measure coefficients satisfy the three-term recurrence") {
  for (double c : {4.0, 2.5, 1.5, 0.5}) {
    Measure m = mp_measure(c);
    const auto& phi = m.components[0].coeffs;
    double ratio = (1.0 + c) / std::sqrt(c);
    REQUIRE(phi.size() >= 10);
    for (std::size_t k = 2; k < 10; ++k)
      CHECK(phi[k] == doctest::Approx(-ratio * phi[k - 1] - phi[k - 2]).epsilon(1e-10));
  }
}

TEST_CASE("total mass is 1 for every fixture") {
  for (const Measure& m :
       {fixtures::uniform_measure(), fixtures::jacobi_poly_measure(),
        fixtures::multicut_measure(), mp_measure(0.5), mp_measure(2.5), mp_measure(4.0),
        semicircle_measure(-2.0, 2.0)}) {
    CHECK(total_mass(m) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("component mass against direct quadrature") {
  // generalOP: multicut component 1 carries mass 1/2
  Measure m = fixtures::multicut_measure();
  CHECK(component_mass(m.components[0]) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(component_mass(m.components[1]) == doctest::Approx(0.5).epsilon(1e-12));

  // direct Gauss-Jacobi integral of the density as an oracle
  auto rule = gauss_jacobi(-2.0 / 3.0, -1.0 / 3.0, 256);
  const auto& c1 = m.components[0];
  double mass = 0.0;
  for (std::size_t i = 0; i < rule->nodes.size(); ++i)
    mass += rule->weights[i] * basis_expansion_eval(c1, rule->nodes[i]);
  mass *= (c1.hi - c1.lo) / 2.0 / c1.normalization;
  CHECK(mass == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("project_coefficients reproduces polynomial expansions exactly") {
  // r(t) = 5/16 (1 + 14 t^2) in the monic Jacobi(2,2) basis: p_0 = 1, p_1 = t,
  // p_2 = t^2 - beta_1. Projection then evaluation must round-trip.
  Measure jac = fixtures::jacobi_poly_measure();
  const auto& c = jac.components[0];
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    double t = dist(rng);
    double expected = 5.0 / 16.0 * (1.0 + 14.0 * t * t);
    CHECK(basis_expansion_eval(c, t) == doctest::Approx(expected).epsilon(1e-13));
  }
}
