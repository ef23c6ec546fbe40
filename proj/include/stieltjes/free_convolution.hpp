#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "stieltjes/inverse.hpp"
#include "stieltjes/measure.hpp"
#include "stieltjes/transforms.hpp"

namespace stieltjes {

/// A continuation-tracked single-valued branch of G^{-1}. The first
/// evaluation (small |zeta|) is seeded by the z ~ 1/zeta asymptote; later
/// calls pick the root nearest the Newton-predicted continuation of the last
/// accepted (zeta, z) pair.
class InverseBranch {
 public:
  explicit InverseBranch(Measure measure, SolveOptions opts = {});

  Complex eval(Complex zeta);
  void reset() { last_.reset(); }

  const Measure& measure() const { return solver_.measure(); }

 private:
  InverseSolver solver_;
  std::optional<std::pair<Complex, Complex>> last_;  // (zeta, z)
};

struct HPoint {
  Complex h;       // G_a^{-1} + G_b^{-1} - 1/zeta
  Complex hprime;  // 1/G_a'(z_a) + 1/G_b'(z_b) + 1/zeta^2
  Complex za, zb;
};

HPoint h_eval(InverseBranch& a, InverseBranch& b, Complex zeta);

/// Edge images of the convolution: the real zeros zeta- < 0 < zeta+ of h',
/// located by a geometric scan for a sign change and bisection to 1e-13.
/// alpha = h(zeta-), beta = h(zeta+). Errors when no sign change exists
/// (the output is not a single-interval square-root measure).
struct EndpointResult {
  double alpha, beta;
  double zeta_minus, zeta_plus;
};
EndpointResult support_endpoints(const Measure& a, const Measure& b,
                                 const SolveOptions& opts = {});

/// Least-squares solve of sum_k phi_k pi w_j^{k+1} = zeta_j with column
/// equilibration; phi must come out real (imaginary parts < 1e-8).
struct RecoveredCoefficients {
  std::vector<double> phi;
  double condition;     // of the equilibrated Vandermonde matrix
  double max_residual;  // max_j |sum_k phi_k pi w_j^{k+1} - zeta_j|
};
RecoveredCoefficients recover_coefficients(const std::vector<std::pair<Complex, Complex>>& pairs,
                                           int m);

struct ConvolveOptions {
  int m = 40;            // highest recovered coefficient index
  int n_samples = 0;     // 0: 4 (m + 1); must be >= 2 (m + 1)
  double zeta_radius = 0.0;  // 0: 0.9 min(|zeta-|, |zeta+|)
  SolveOptions inversion;    // operand inversion parameters
};

struct ConvolutionResult {
  double lo = 0.0, hi = 0.0;   // recovered support [alpha, beta]
  std::vector<double> coeffs;  // chebyshevU coefficients of the output
  struct Diagnostics {
    double vandermonde_condition = 0.0;
    double max_recovery_residual = 0.0;
    double zeta_radius = 0.0;
    double zeta_minus = 0.0, zeta_plus = 0.0;
    double mass = 0.0;
    double min_density_probe = 0.0;
    double max_branch_drift = 0.0;  // max |z_j zeta_j - 1| over the samples
  } diagnostics;

  Measure as_measure() const;
};

/// mu_a boxplus mu_b for outputs that are single-interval square-root
/// measures: endpoints from h' = 0, zeta samples on a conjugate-symmetric
/// circle, coefficients by Vandermonde recovery in disc coordinates.
ConvolutionResult free_convolve(const Measure& a, const Measure& b,
                                const ConvolveOptions& opts = {});

}  // namespace stieltjes
