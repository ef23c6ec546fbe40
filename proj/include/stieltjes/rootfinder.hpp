#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace stieltjes {

using Complex = std::complex<double>;
using HolomorphicFn = std::function<Complex(Complex)>;

/// Trapezium-rule moments s_n = (1/2 pi i) oint z^n / f(z) dz on the unit
/// circle: s_n ~ (1/K) sum omega_j^{n+1} / f(omega_j).
struct MomentSequence {
  std::vector<Complex> values;  // s_0 .. s_{2M-1}
  int K = 0;
  double radius = 1.0;
};

struct HankelPencil {
  // H0[i][j] = s_{i+j}, H1[i][j] = s_{i+j+1}, 0-based, M x M (row-major).
  int M = 0;
  std::vector<Complex> H0;
  std::vector<Complex> H1;
};

struct RootCluster {
  Complex center;
  int multiplicity = 1;
  std::vector<Complex> members;
  double residual = 0.0;   // |f(center)| when f was available
  bool refined = false;
  bool refine_escaped = false;  // Newton left the disc; pencil value kept
};

MomentSequence trapezium_moments(const HolomorphicFn& f, int K, int M);
MomentSequence moments_from_values(const std::vector<Complex>& circle_values, int M);

HankelPencil hankel_pencil(const MomentSequence& m);

/// Numerical rank of H0 by singular-value thresholding: the count of
/// sigma_i > rank_tol * sigma_max. Separates genuine roots from the
/// arbitrary eigenvalues the pencil produces when M exceeds the root count.
int estimate_root_count(const HankelPencil& p, double rank_tol = 1e-10);

/// Eigenvalues of the rank-compressed pencil: with H0 = U S V*, the
/// eigenvalues of S_N^{-1} (U_N* H1 V_N). Sets *cond_warning when the
/// compression is ill-conditioned (cond > 1e12).
std::vector<Complex> pencil_roots(const HankelPencil& p, int N,
                                  std::string* cond_warning = nullptr);

struct RefineResult {
  Complex z;
  double residual = 0.0;
  int iterations = 0;
  bool escaped = false;  // iterate left |z| <= 1.05; input returned unchanged
};

/// Newton polish: at most 20 steps or |f| < 1e-13, central differences with
/// step 1e-7 max(1, |z0|) when f' is absent; returns the best iterate.
RefineResult refine(const HolomorphicFn& f, const HolomorphicFn* fprime, Complex z0);

struct DiscRootOptions {
  double rank_tol = 1e-10;
  double cluster_tol = 1e-6;
  bool do_refine = true;
  /// Error on winding/root-count disagreement or unresolvable winding;
  /// otherwise record a warning and keep going.
  bool strict = true;
};

struct DiscRootResult {
  std::vector<RootCluster> clusters;  // roots strictly inside the unit disc
  int estimated_count = 0;            // rank of H0
  std::optional<int> circle_winding;  // argument-principle count, when resolvable
  std::vector<std::string> warnings;
};

/// Full pipeline: moments -> pencil -> rank -> compressed eigenvalues ->
/// containment filter -> optional Newton refinement -> clustering, with the
/// argument-principle count along the circle as a consistency check.
DiscRootResult find_roots_unit_disc(const HolomorphicFn& f, int K, int M,
                                    const DiscRootOptions& opts = {});

/// Same pipeline starting from precomputed f(omega_j) values, j = 0..K-1.
/// f / fprime are optional and used for refinement and residuals.
DiscRootResult find_roots_from_values(const std::vector<Complex>& circle_values, int M,
                                      const DiscRootOptions& opts,
                                      const HolomorphicFn* f = nullptr,
                                      const HolomorphicFn* fprime = nullptr);

/// Roots of c[0] + c[1] z + ... + c[d] z^d via the companion matrix.
std::vector<Complex> companion_roots(const std::vector<Complex>& coeffs);

}  // namespace stieltjes
