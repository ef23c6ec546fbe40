#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "stieltjes/measure.hpp"

namespace stieltjes {

using Complex = std::complex<double>;

/// J(z) = (z + 1/z) / 2, bijection from the open unit disc to the plane slit
/// along [-1,1], with 0 going to infinity.
Complex joukowski(Complex z);

/// The branch of J^{-1} with modulus < 1. Rejects z on [-1,1], where the two
/// candidate branches both have modulus 1.
Complex joukowski_inv_disc(Complex z);

/// sqrt(z^2 - 1) as exp((log(z-1) + log(z+1)) / 2) with principal logs; the
/// branch cut is exactly [-1,1].
Complex sqrt_z2m1(Complex z);

/// M_{(a,b)}(z) = (b+a)/2 + (b-a) z / 2 and its inverse.
Complex affine_map(std::pair<double, double> interval, Complex z);
Complex affine_inv(std::pair<double, double> interval, Complex z);

/// Closest admissible distance from an evaluation point to the support.
inline constexpr double kSupportClearance = 1e-13;

/// G(z) = int d mu(x) / (z - x). Atoms contribute sum a_i / (z - x_i);
/// chebyshevU components use the closed form (pi/Z) sum phi_n w^{n+1} with
/// w = J^{-1}(M^{-1}(z)); generalOP components use adaptive Gauss-Jacobi
/// quadrature (node count doubles until 1e-12 agreement).
Complex stieltjes_transform(const Measure& m, Complex z);

/// G'(z), term-wise differentiation of the same closed forms/quadratures.
Complex stieltjes_derivative(const Measure& m, Complex z);

/// Boundary curve samples gamma_r(t_j) at t_j = 2 pi j / K, j = 0..K.
struct CurveSamples {
  double r = 0.0;
  std::vector<double> t;
  std::vector<Complex> points;
};

/// gamma_r(t) = G(M_{(a,b)}(J(r e^{it}))) over the support hull, for
/// 0 < r < 1. r = 1 is allowed only for a single-interval chebyshevU
/// measure, where the Plemelj boundary values have the closed form
/// (pi/Z) sum phi_n e^{i (n+1) t}. K >= 16.
CurveSamples gamma_curve(const Measure& m, double r, int K);

/// Winding number by summed principal argument increments. Errors if the
/// point sits on the curve, an increment reaches pi (under-sampled), or the
/// total is further than 0.1 from an integer.
int winding_number(const CurveSamples& curve, Complex zeta);
int winding_number(const std::vector<Complex>& closed_loop, Complex zeta);

}  // namespace stieltjes
