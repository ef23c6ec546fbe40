#include "stieltjes/rootfinder.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "stieltjes/errors.hpp"

namespace stieltjes {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

MatrixXcd as_matrix(const std::vector<Complex>& data, int M) {
  MatrixXcd out(M, M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) out(i, j) = data[i * M + j];
  return out;
}

// Argument-principle count of zeros inside the unit circle from the sampled
// values; nullopt when the sampling cannot resolve the winding.
std::optional<int> circle_winding(const std::vector<Complex>& vals) {
  double total = 0.0;
  for (std::size_t j = 0; j < vals.size(); ++j) {
    Complex v0 = vals[j];
    Complex v1 = vals[(j + 1) % vals.size()];
    if (std::abs(v0) == 0.0 || std::abs(v1) == 0.0) return std::nullopt;
    double inc = std::arg(v1 / v0);
    if (std::abs(inc) >= kPi - 1e-9) return std::nullopt;
    total += inc;
  }
  double turns = total / (2.0 * kPi);
  double nearest = std::round(turns);
  if (std::abs(turns - nearest) >= 0.1) return std::nullopt;
  return static_cast<int>(nearest);
}

}  // namespace

MomentSequence moments_from_values(const std::vector<Complex>& vals, int M) {
  const int K = static_cast<int>(vals.size());
  if (M < 1) throw validation_error("moments: M must be positive");
  if (K < 2 * M) throw validation_error("moments: need K >= 2M quadrature points");
  for (const auto& v : vals)
    if (std::abs(v) <= 1e-14)
      throw numerical_error("moments: quadrature node too close to a zero of f");

  MomentSequence m;
  m.K = K;
  m.values.assign(2 * M, Complex(0.0, 0.0));
  for (int j = 0; j < K; ++j) {
    Complex omega = std::polar(1.0, 2.0 * kPi * j / K);
    Complex term = omega / vals[j];  // omega^{n+1} / f, built up by powers
    for (int n = 0; n < 2 * M; ++n) {
      m.values[n] += term;
      term *= omega;
    }
  }
  for (auto& v : m.values) v /= static_cast<double>(K);
  return m;
}

MomentSequence trapezium_moments(const HolomorphicFn& f, int K, int M) {
  if (K < 2) throw validation_error("moments: K must be at least 2");
  std::vector<Complex> vals(K);
  for (int j = 0; j < K; ++j) vals[j] = f(std::polar(1.0, 2.0 * kPi * j / K));
  return moments_from_values(vals, M);
}

HankelPencil hankel_pencil(const MomentSequence& m) {
  if (m.values.size() < 2 || m.values.size() % 2 != 0)
    throw validation_error("hankel_pencil: moment sequence length must be even and >= 2");
  HankelPencil p;
  p.M = static_cast<int>(m.values.size()) / 2;
  p.H0.resize(p.M * p.M);
  p.H1.resize(p.M * p.M);
  for (int i = 0; i < p.M; ++i)
    for (int j = 0; j < p.M; ++j) {
      p.H0[i * p.M + j] = m.values[i + j];
      p.H1[i * p.M + j] = m.values[i + j + 1];
    }
  return p;
}

int estimate_root_count(const HankelPencil& p, double rank_tol) {
  MatrixXcd H0 = as_matrix(p.H0, p.M);
  Eigen::JacobiSVD<MatrixXcd> svd(H0);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  int n = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_tol * sv(0)) ++n;
  return n;
}

std::vector<Complex> pencil_roots(const HankelPencil& p, int N, std::string* cond_warning) {
  if (N < 0 || N > p.M) throw validation_error("pencil_roots: need 0 <= N <= M");
  if (N == 0) return {};
  MatrixXcd H0 = as_matrix(p.H0, p.M);
  MatrixXcd H1 = as_matrix(p.H1, p.M);
  Eigen::JacobiSVD<MatrixXcd> svd(H0, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(0) <= 0.0) throw numerical_error("pencil_roots: zero moment matrix");
  if (cond_warning && sv(N - 1) > 0.0 && sv(0) / sv(N - 1) > 1e12)
    *cond_warning = "pencil compression ill-conditioned (cond > 1e12)";

  MatrixXcd U = svd.matrixU().leftCols(N);
  MatrixXcd V = svd.matrixV().leftCols(N);
  VectorXcd sinv(N);
  for (int i = 0; i < N; ++i) sinv(i) = 1.0 / sv(i);
  MatrixXcd A = sinv.asDiagonal() * (U.adjoint() * H1 * V);
  Eigen::ComplexEigenSolver<MatrixXcd> es(A, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw numerical_error("pencil_roots: eigenvalue iteration failed");
  std::vector<Complex> roots(N);
  for (int i = 0; i < N; ++i) roots[i] = es.eigenvalues()(i);
  return roots;
}

RefineResult refine(const HolomorphicFn& f, const HolomorphicFn* fprime, Complex z0) {
  const double initial = std::abs(f(z0));
  RefineResult best{z0, initial, 0, false};
  try {
    Complex z = z0;
    double fz = initial;
    for (int it = 0; it < 20 && fz >= 1e-13; ++it) {
      Complex derivative;
      if (fprime) {
        derivative = (*fprime)(z);
      } else {
        double h = 1e-7 * std::max(1.0, std::abs(z));
        derivative = (f(z + h) - f(z - h)) / (2.0 * h);
      }
      if (std::abs(derivative) < 1e-300) break;
      Complex next = z - f(z) / derivative;
      if (std::abs(next) > 1.05) return RefineResult{z0, initial, it, true};
      z = next;
      fz = std::abs(f(z));
      best.iterations = it + 1;
      if (fz < best.residual) {
        best.residual = fz;
        best.z = z;
      }
    }
  } catch (const std::exception&) {
    // An iterate walked onto the support or out of the evaluator's domain.
    return RefineResult{z0, initial, best.iterations, true};
  }
  return best;
}

DiscRootResult find_roots_from_values(const std::vector<Complex>& vals, int M,
                                      const DiscRootOptions& opts, const HolomorphicFn* f,
                                      const HolomorphicFn* fprime) {
  DiscRootResult out;
  MomentSequence m = moments_from_values(vals, M);
  HankelPencil pencil = hankel_pencil(m);
  out.estimated_count = estimate_root_count(pencil, opts.rank_tol);

  std::string cond_warning;
  std::vector<Complex> raw = pencil_roots(pencil, out.estimated_count, &cond_warning);
  if (!cond_warning.empty()) out.warnings.push_back(cond_warning);

  // Containment first, then polish. Roots a chart reports outside its disc
  // are the pencil's arbitrary values or genuinely unrecoverable.
  std::vector<Complex> kept;
  for (const auto& z : raw)
    if (std::abs(z) < 1.0) kept.push_back(z);

  std::vector<RootCluster> clusters;
  std::vector<bool> used(kept.size(), false);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (used[i]) continue;
    RootCluster c;
    c.members.push_back(kept[i]);
    used[i] = true;
    for (std::size_t j = i + 1; j < kept.size(); ++j) {
      if (!used[j] && std::abs(kept[j] - kept[i]) < opts.cluster_tol) {
        c.members.push_back(kept[j]);
        used[j] = true;
      }
    }
    c.multiplicity = static_cast<int>(c.members.size());
    Complex sum = 0.0;
    for (const auto& z : c.members) sum += z;
    c.center = sum / static_cast<double>(c.members.size());
    clusters.push_back(std::move(c));
  }

  if (f) {
    for (auto& c : clusters) {
      if (opts.do_refine) {
        RefineResult rr = refine(*f, fprime, c.center);
        c.refined = !rr.escaped;
        c.refine_escaped = rr.escaped;
        if (!rr.escaped && std::abs(rr.z) < 1.0) c.center = rr.z;
      }
      c.residual = std::abs((*f)(c.center));
    }
    // Refinement can merge neighbouring clusters onto one point.
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      for (std::size_t j = i + 1; j < clusters.size();) {
        if (std::abs(clusters[i].center - clusters[j].center) < opts.cluster_tol) {
          clusters[i].multiplicity += clusters[j].multiplicity;
          clusters[i].members.insert(clusters[i].members.end(),
                                     clusters[j].members.begin(), clusters[j].members.end());
          clusters.erase(clusters.begin() + j);
        } else {
          ++j;
        }
      }
    }
  }
  out.clusters = std::move(clusters);

  out.circle_winding = circle_winding(vals);
  int total_mult = 0;
  for (const auto& c : out.clusters) total_mult += c.multiplicity;
  if (!out.circle_winding) {
    if (opts.strict)
      throw numerical_error(
          "find_roots: argument-principle winding unresolved; increase K");
    out.warnings.push_back("circle winding unresolved (under-sampled)");
  } else if (*out.circle_winding != total_mult) {
    std::string msg = "find_roots: root count " + std::to_string(total_mult) +
                      " disagrees with argument-principle count " +
                      std::to_string(*out.circle_winding) + "; increase K";
    if (opts.strict) throw numerical_error(msg);
    out.warnings.push_back(msg);
  }
  return out;
}

DiscRootResult find_roots_unit_disc(const HolomorphicFn& f, int K, int M,
                                    const DiscRootOptions& opts) {
  if (K < 2) throw validation_error("find_roots_unit_disc: K must be at least 2");
  std::vector<Complex> vals(K);
  for (int j = 0; j < K; ++j) vals[j] = f(std::polar(1.0, 2.0 * kPi * j / K));
  return find_roots_from_values(vals, M, opts, &f, nullptr);
}

std::vector<Complex> companion_roots(const std::vector<Complex>& coeffs) {
  // Strip trailing coefficients that vanish relative to the largest one.
  double scale = 0.0;
  for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) throw validation_error("companion_roots: zero polynomial");
  std::size_t degree = coeffs.size();
  while (degree > 0 && std::abs(coeffs[degree - 1]) <= 1e-14 * scale) --degree;
  if (degree <= 1) return {};
  --degree;  // coeffs[degree] is the leading coefficient

  MatrixXcd A = MatrixXcd::Zero(degree, degree);
  for (std::size_t i = 1; i < degree; ++i) A(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < degree; ++i) A(i, degree - 1) = -coeffs[i] / coeffs[degree];
  Eigen::ComplexEigenSolver<MatrixXcd> es(A, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw numerical_error("companion_roots: eigenvalue iteration failed");
  std::vector<Complex> roots(degree);
  for (std::size_t i = 0; i < degree; ++i) roots[i] = es.eigenvalues()(static_cast<int>(i));
  return roots;
}

}  // namespace stieltjes
