#pragma once

// Shared test measures and closed-form oracles.

#include <cmath>
#include <complex>

#include "stieltjes/measure.hpp"
#include "stieltjes/transforms.hpp"

namespace fixtures {

using stieltjes::ACComponent;
using stieltjes::Basis;
using stieltjes::Complex;
using stieltjes::Measure;

constexpr double kPi = 3.14159265358979323846;

/// rho(x) = 5/16 (1 + 14 x^2) (1 - x^2)^2 on [-1,1]: Jacobi(2,2) weight with
/// polynomial part 5/16 (1 + 14 x^2).
inline Measure jacobi_poly_measure() {
  ACComponent c;
  c.lo = -1.0;
  c.hi = 1.0;
  c.alpha = 2.0;
  c.beta = 2.0;
  c.basis = Basis::generalOP;
  c.recurrence = stieltjes::jacobi_recurrence(2.0, 2.0, 8);
  ACComponent proto = c;
  proto.coeffs = {1.0};
  c.coeffs = stieltjes::project_coefficients(
      proto, [](double t) { return 5.0 / 16.0 * (1.0 + 14.0 * t * t); }, 2);
  return Measure{{}, {c}};
}

/// Two-cut measure: 1/2 mu_1 + 1/2 mu_2 with
///   d mu_1 = (x+3)^(-1/3) (-1-x)^(-2/3) dx / Z1   on [-3,-1]
///   d mu_2 = (x-1)^(1/2) (3-x)^(1/2) (2+sin x) dx / Z2  on [1,3]
inline Measure multicut_measure() {
  ACComponent c1;
  c1.lo = -3.0;
  c1.hi = -1.0;
  c1.alpha = -2.0 / 3.0;  // exponent of (b - x) = (-1 - x)
  c1.beta = -1.0 / 3.0;   // exponent of (x - a) = (x + 3)
  c1.basis = Basis::generalOP;
  c1.recurrence = stieltjes::jacobi_recurrence(c1.alpha, c1.beta, 4);
  c1.coeffs = {1.0};
  c1.normalization = 2.0 * c1.recurrence->mu0;  // mass 1/2

  ACComponent c2;
  c2.lo = 1.0;
  c2.hi = 3.0;
  c2.alpha = 0.5;
  c2.beta = 0.5;
  c2.basis = Basis::chebyshevU;
  ACComponent proto = c2;
  proto.coeffs = {1.0};
  auto raw = stieltjes::project_coefficients(
      proto, [](double t) { return 2.0 + std::sin(t + 2.0); }, 48);
  // scale to mass 1/2: pi phi_0 (b-a)/4 = 1/2  =>  phi_0 = 1/pi
  double scale = (1.0 / kPi) / raw[0];
  for (auto& v : raw) v *= scale;
  while (raw.size() > 1 && std::abs(raw.back()) < 1e-17) raw.pop_back();
  c2.coeffs = raw;

  return Measure{{}, {c1, c2}};
}

/// Uniform distribution on [-1,1] as a Legendre-weight component.
inline Measure uniform_measure() {
  ACComponent c;
  c.lo = -1.0;
  c.hi = 1.0;
  c.alpha = 0.0;
  c.beta = 0.0;
  c.basis = Basis::generalOP;
  c.recurrence = stieltjes::jacobi_recurrence(0.0, 0.0, 8);
  c.coeffs = {0.5};
  return Measure{{}, {c}};
}

inline Measure two_atoms() { return Measure{{{-1.0, 0.5}, {1.0, 0.5}}, {}}; }

inline Measure delta(double x) { return Measure{{{x, 1.0}}, {}}; }

// Closed-form oracles.

/// Semicircle on [-2,2]: G(z) = (z - sqrt(z^2 - 4)) / 2.
inline Complex semicircle_g(Complex z) {
  return (z - 2.0 * stieltjes::sqrt_z2m1(z / 2.0)) / 2.0;
}
inline Complex semicircle_gprime(Complex z) {
  return 0.5 * (1.0 - z / (2.0 * stieltjes::sqrt_z2m1(z / 2.0)));
}

/// Uniform on [-1,1]: G(z) = log((z+1)/(z-1)) / 2, inverse coth.
inline Complex uniform_g(Complex z) { return 0.5 * std::log((z + 1.0) / (z - 1.0)); }
inline Complex coth(Complex z) {
  return (std::exp(2.0 * z) + 1.0) / (std::exp(2.0 * z) - 1.0);
}

/// Marchenko-Pastur with cumulant parameter c: left inverse 1/z + c/(1-z).
inline Complex mp_inverse(double c, Complex zeta) {
  return 1.0 / zeta + c / (1.0 - zeta);
}

/// Exact chebyshevU coefficients of MP(c): -(-sqrt(c))^{-(k+1)} / pi for
/// c > 1, and the mirrored -(-sqrt(c))^{k+1} / pi for c < 1.
inline double mp_phi_exact(double c, int k) {
  double s = std::sqrt(c);
  double mag = c > 1.0 ? std::pow(s, -(k + 1.0)) : std::pow(s, k + 1.0);
  return (k % 2 == 0 ? mag : -mag) / kPi;
}

}  // namespace fixtures
