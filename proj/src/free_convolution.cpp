#include "stieltjes/free_convolution.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "stieltjes/errors.hpp"
#include "stieltjes/quadrature.hpp"

namespace stieltjes {

namespace {

constexpr double kPi = 3.14159265358979323846;

double nearest_root(const RootReport& rep, Complex target, Complex* chosen) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : rep.roots) {
    double d = std::abs(r.z - target);
    if (d < best) {
      best = d;
      *chosen = r.z;
    }
  }
  return best;
}

}  // namespace

InverseBranch::InverseBranch(Measure measure, SolveOptions opts)
    : solver_(
          [&] {
            opts.residual_tol = std::min(opts.residual_tol, 1e-10);
            return InverseSolver(std::move(measure), opts);
          }()) {}

Complex InverseBranch::eval(Complex zeta) {
  if (zeta == Complex(0.0, 0.0))
    throw validation_error("InverseBranch: zeta = 0 is outside the branch domain");
  RootReport rep = solver_.solve(zeta);
  if (rep.roots.empty())
    throw numerical_error("InverseBranch: no inverse found at the requested zeta");

  Complex chosen;
  if (!last_) {
    Complex seed = 1.0 / zeta;
    nearest_root(rep, seed, &chosen);
    if (std::abs(chosen * zeta - 1.0) > 0.75)
      throw numerical_error(
          "InverseBranch: seed root is far from the 1/zeta asymptote; start at smaller |zeta|");
  } else {
    auto [zeta0, z0] = *last_;
    Complex predicted = z0;
    Complex gprime = stieltjes_derivative(solver_.measure(), z0);
    if (std::abs(gprime) > 1e-300) predicted = z0 + (zeta - zeta0) / gprime;
    double dist = nearest_root(rep, predicted, &chosen);
    double trust = 10.0 * std::abs(predicted - z0) + 1e-6 * std::max(1.0, std::abs(z0));
    if (dist > trust)
      throw numerical_error("InverseBranch: continuation lost the branch (step too large?)");
  }
  last_ = {zeta, chosen};
  return chosen;
}

HPoint h_eval(InverseBranch& a, InverseBranch& b, Complex zeta) {
  HPoint out;
  out.za = a.eval(zeta);
  out.zb = b.eval(zeta);
  out.h = out.za + out.zb - 1.0 / zeta;
  Complex ga = stieltjes_derivative(a.measure(), out.za);
  Complex gb = stieltjes_derivative(b.measure(), out.zb);
  out.hprime = 1.0 / ga + 1.0 / gb + 1.0 / (zeta * zeta);
  return out;
}

namespace {

// h'(zeta) for real zeta along one ray, with branch continuation handled by
// the caller-owned branches.
double hprime_real(InverseBranch& a, InverseBranch& b, double zeta) {
  HPoint p = h_eval(a, b, Complex(zeta, 0.0));
  if (std::abs(p.hprime.imag()) > 1e-6 * std::max(1.0, std::abs(p.hprime)))
    throw numerical_error("support_endpoints: h' is not real on the real axis");
  return p.hprime.real();
}

struct RayResult {
  double zeta_edge;
  double h_edge;
};

RayResult scan_ray(const Measure& ma, const Measure& mb, const SolveOptions& opts,
                   double sign) {
  InverseBranch a(ma, opts), b(mb, opts);
  const double start = 1e-6;
  const double growth = 1.25;

  double prev = sign * start;
  double fprev;
  try {
    fprev = hprime_real(a, b, prev);
  } catch (const std::exception&) {
    throw numerical_error("support_endpoints: h' evaluation failed near the origin");
  }
  if (fprev > 0.0)
    throw numerical_error("support_endpoints: h' does not start negative near 0");

  double lo = prev, hi = 0.0;
  bool bracketed = false;
  double step = growth;
  int evals = 0, shrinks = 0;
  while (evals < 400 && shrinks < 60) {
    double cur = prev * step;
    double fcur;
    try {
      fcur = hprime_real(a, b, cur);
      ++evals;
    } catch (const std::exception&) {
      // Overshot the invertible region; close in on it with smaller steps.
      step = std::sqrt(step);
      ++shrinks;
      if (step < 1.0 + 1e-9) break;
      continue;
    }
    if (fcur > 0.0) {
      lo = prev;
      hi = cur;
      bracketed = true;
      break;
    }
    prev = cur;
  }
  if (!bracketed)
    throw numerical_error(
        "support_endpoints: no sign change of h' on the ray; output is not a "
        "single-interval square-root measure");

  // Bisection; continuation steps stay inside [lo, hi].
  for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
    double mid = 0.5 * (lo + hi);
    double fmid = hprime_real(a, b, mid);
    if (fmid > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  double edge = 0.5 * (lo + hi);
  HPoint p = h_eval(a, b, Complex(edge, 0.0));
  return {edge, p.h.real()};
}

}  // namespace

EndpointResult support_endpoints(const Measure& a, const Measure& b,
                                 const SolveOptions& opts) {
  RayResult plus = scan_ray(a, b, opts, +1.0);
  RayResult minus = scan_ray(a, b, opts, -1.0);
  EndpointResult out;
  out.zeta_minus = minus.zeta_edge;
  out.zeta_plus = plus.zeta_edge;
  out.alpha = minus.h_edge;
  out.beta = plus.h_edge;
  if (!(out.alpha < out.beta))
    throw numerical_error("support_endpoints: recovered endpoints are not ordered");
  return out;
}

RecoveredCoefficients recover_coefficients(const std::vector<std::pair<Complex, Complex>>& pairs,
                                           int m) {
  if (m < 0) throw validation_error("recover_coefficients: m must be >= 0");
  const int rows = static_cast<int>(pairs.size());
  const int cols = m + 1;
  if (rows < cols)
    throw validation_error("recover_coefficients: need at least m + 1 sample pairs");
  for (const auto& [w, zeta] : pairs)
    if (!(std::abs(w) < 1.0))
      throw validation_error("recover_coefficients: disc coordinates must satisfy |w| < 1");

  Eigen::MatrixXcd V(rows, cols);
  Eigen::VectorXcd rhs(rows);
  for (int j = 0; j < rows; ++j) {
    Complex w = pairs[j].first;
    Complex p = kPi * w;
    for (int k = 0; k < cols; ++k) {
      V(j, k) = p;
      p *= w;
    }
    rhs(j) = pairs[j].second;
  }

  // Column equilibration keeps the conditioning diagnostic meaningful: raw
  // pi w^{k+1} columns decay geometrically for |w| < 1.
  Eigen::VectorXd colnorm(cols);
  for (int k = 0; k < cols; ++k) {
    double n = V.col(k).norm();
    if (n == 0.0) throw validation_error("recover_coefficients: zero Vandermonde column");
    colnorm(k) = n;
    V.col(k) /= n;
  }

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double cond = sv(0) / sv(sv.size() - 1);
  if (!(cond < 1e12))
    throw numerical_error(
        "recover_coefficients: Vandermonde system too ill-conditioned; use fewer "
        "coefficients or a different sampling radius");

  Eigen::VectorXcd scaled = svd.solve(rhs);
  RecoveredCoefficients out;
  out.condition = cond;
  out.phi.resize(cols);
  double max_imag = 0.0;
  for (int k = 0; k < cols; ++k) {
    Complex phi = scaled(k) / colnorm(k);
    max_imag = std::max(max_imag, std::abs(phi.imag()));
    out.phi[k] = phi.real();
  }
  if (max_imag > 1e-8)
    throw numerical_error("recover_coefficients: coefficients have non-real parts " +
                          std::to_string(max_imag) + "; sampling is not conjugate-symmetric");

  out.max_residual = 0.0;
  for (const auto& [w, zeta] : pairs) {
    Complex acc = 0.0;
    for (int k = cols - 1; k >= 0; --k) acc = acc * w + out.phi[k];
    acc *= kPi * w;
    out.max_residual = std::max(out.max_residual, std::abs(acc - zeta));
  }
  return out;
}

Measure ConvolutionResult::as_measure() const {
  ACComponent comp;
  comp.lo = lo;
  comp.hi = hi;
  comp.alpha = 0.5;
  comp.beta = 0.5;
  comp.basis = Basis::chebyshevU;
  comp.coeffs = coeffs;
  while (comp.coeffs.size() > 1 && comp.coeffs.back() == 0.0) comp.coeffs.pop_back();
  Measure m;
  m.components.push_back(std::move(comp));
  return m;
}

namespace {

bool is_single_atom(const Measure& m) {
  return m.components.empty() && m.atoms.size() == 1;
}

bool is_single_cheb_component(const Measure& m) {
  return m.atoms.empty() && m.components.size() == 1 &&
         m.components[0].basis == Basis::chebyshevU;
}

// mu boxplus delta_s is exact translation. The h' = 0 edge criterion is
// degenerate for a point-mass operand (1/G_delta' cancels 1/zeta^2
// identically, so the zero sits on the branch-domain boundary).
ConvolutionResult shifted_copy(const Measure& m, double s) {
  const auto& c = m.components[0];
  ConvolutionResult out;
  out.lo = c.lo + s;
  out.hi = c.hi + s;
  out.coeffs = c.coeffs;
  for (auto& phi : out.coeffs) phi /= c.normalization;
  out.diagnostics.vandermonde_condition = 1.0;
  out.diagnostics.mass = component_mass(c);
  ACComponent probe;
  probe.basis = Basis::chebyshevU;
  probe.coeffs = out.coeffs;
  double min_density = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 100; ++i) {
    double t = std::cos(kPi * i / 101.0);
    min_density = std::min(min_density, std::sqrt(1.0 - t * t) * basis_expansion_eval(probe, t));
  }
  out.diagnostics.min_density_probe = min_density;
  return out;
}

}  // namespace

ConvolutionResult free_convolve(const Measure& a, const Measure& b,
                                const ConvolveOptions& opts) {
  if (opts.m < 0) throw validation_error("free_convolve: m must be >= 0");
  int n_samples = opts.n_samples > 0 ? opts.n_samples : 4 * (opts.m + 1);
  if (n_samples < 2 * (opts.m + 1))
    throw validation_error("free_convolve: need n_samples >= 2 (m + 1)");

  if (is_single_atom(a) && is_single_cheb_component(b))
    return shifted_copy(b, a.atoms[0].location);
  if (is_single_atom(b) && is_single_cheb_component(a))
    return shifted_copy(a, b.atoms[0].location);

  EndpointResult edges = support_endpoints(a, b, opts.inversion);
  double radius = opts.zeta_radius > 0.0
                      ? opts.zeta_radius
                      : 0.9 * std::min(std::abs(edges.zeta_minus), std::abs(edges.zeta_plus));
  if (!(radius > 0.0) || radius >= std::min(std::abs(edges.zeta_minus),
                                            std::abs(edges.zeta_plus)))
    throw validation_error("free_convolve: zeta_radius must lie inside the edge images");

  InverseBranch ba(a, opts.inversion), bb(b, opts.inversion);
  // Seed both branches near the origin, then walk out to the sample circle.
  for (int k = 10; k >= 0; --k) {
    double zr = radius * std::pow(0.5, k);
    ba.eval(Complex(zr, 0.0));
    bb.eval(Complex(zr, 0.0));
  }

  ConvolutionResult out;
  out.diagnostics.zeta_radius = radius;
  out.diagnostics.zeta_minus = edges.zeta_minus;
  out.diagnostics.zeta_plus = edges.zeta_plus;
  out.lo = edges.alpha;
  out.hi = edges.beta;

  std::vector<std::pair<Complex, Complex>> pairs;
  pairs.reserve(n_samples);
  Complex prev_drift;
  bool have_prev = false;
  for (int j = 0; j < n_samples; ++j) {
    Complex zeta = std::polar(radius, 2.0 * kPi * j / n_samples);
    HPoint p = h_eval(ba, bb, zeta);

    // Identity validity: zeta in C^+/- must map to the opposite half plane.
    if (zeta.imag() > 1e-12 && !(p.h.imag() < 1e-10))
      throw numerical_error("free_convolve: subordination identity violated at sample " +
                            std::to_string(j));
    if (zeta.imag() < -1e-12 && !(p.h.imag() > -1e-10))
      throw numerical_error("free_convolve: subordination identity violated at sample " +
                            std::to_string(j));

    Complex drift = p.h * zeta;
    out.diagnostics.max_branch_drift =
        std::max(out.diagnostics.max_branch_drift, std::abs(drift - 1.0));
    if (have_prev && std::abs(drift - prev_drift) > 0.5)
      throw numerical_error("free_convolve: branch jump between adjacent samples");
    prev_drift = drift;
    have_prev = true;

    Complex w = joukowski_inv_disc(affine_inv({edges.alpha, edges.beta}, p.h));
    pairs.emplace_back(w, zeta);
  }

  RecoveredCoefficients rec = recover_coefficients(pairs, opts.m);
  out.coeffs = rec.phi;
  out.diagnostics.vandermonde_condition = rec.condition;
  out.diagnostics.max_recovery_residual = rec.max_residual;

  // Invariants of the recovered measure: unit mass, nonnegative density.
  out.diagnostics.mass = kPi * out.coeffs[0] * (out.hi - out.lo) / 4.0;
  if (std::abs(out.diagnostics.mass - 1.0) > 1e-8)
    throw numerical_error("free_convolve: recovered mass " +
                          std::to_string(out.diagnostics.mass) + " is not 1");
  ACComponent probe;
  probe.basis = Basis::chebyshevU;
  probe.coeffs = out.coeffs;
  double min_density = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 100; ++i) {
    double t = std::cos(kPi * i / 101.0);
    double v = std::sqrt(1.0 - t * t) * basis_expansion_eval(probe, t);
    min_density = std::min(min_density, v);
  }
  out.diagnostics.min_density_probe = min_density;
  if (min_density < -1e-8)
    throw numerical_error("free_convolve: recovered density is negative at a probe node");
  return out;
}

}  // namespace stieltjes
