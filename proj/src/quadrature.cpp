#include "stieltjes/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "stieltjes/errors.hpp"

// LAPACK: eigenvalues of a symmetric tridiagonal matrix, no eigenvectors.
extern "C" void dsterf_(const int* n, double* d, double* e, int* info);

namespace stieltjes {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Monic Jacobi recurrence p_{k+1} = (x - a_k) p_k - b_k p_{k-1}.
double jacobi_alpha_k(double a, double b, int k) {
  if (k == 0) {
    double s = a + b + 2.0;
    return (b - a) / s;
  }
  double s = 2.0 * k + a + b;
  return (b * b - a * a) / (s * (s + 2.0));
}

double jacobi_beta_k(double a, double b, int k) {
  if (k == 1) {
    double s = a + b;
    return 4.0 * (1.0 + a) * (1.0 + b) / ((s + 2.0) * (s + 2.0) * (s + 3.0));
  }
  double s = 2.0 * k + a + b;
  return 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
}

std::shared_ptr<const QuadratureRule> chebyshev_u_rule(int n) {
  auto rule = std::make_shared<QuadratureRule>();
  rule->nodes.resize(n);
  rule->weights.resize(n);
  for (int k = 1; k <= n; ++k) {
    double th = kPi * k / (n + 1);
    rule->nodes[n - k] = std::cos(th);
    double s = std::sin(th);
    rule->weights[n - k] = kPi / (n + 1) * s * s;
  }
  return rule;
}

std::shared_ptr<const QuadratureRule> golub_welsch(double a, double b, int n) {
  std::vector<double> diag(n), off(n > 1 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) diag[k] = jacobi_alpha_k(a, b, k);
  for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(jacobi_beta_k(a, b, k));

  int info = 0;
  dsterf_(&n, diag.data(), off.data(), &info);
  if (info != 0) throw numerical_error("gauss_jacobi: tridiagonal eigensolve failed");

  auto rule = std::make_shared<QuadratureRule>();
  rule->nodes = diag;  // ascending
  rule->weights.resize(n);

  // Christoffel numbers: w_i = 1 / sum_k phi_k(x_i)^2 with phi_k orthonormal.
  double mu0 = jacobi_weight_mass(a, b);
  std::vector<double> sb(n);
  sb[0] = 0.0;
  for (int k = 1; k < n; ++k) sb[k] = std::sqrt(jacobi_beta_k(a, b, k));
  for (int i = 0; i < n; ++i) {
    double x = rule->nodes[i];
    double pm = 0.0, pc = 1.0 / std::sqrt(mu0);
    double sum = pc * pc;
    for (int k = 0; k + 1 < n; ++k) {
      double pn = ((x - jacobi_alpha_k(a, b, k)) * pc - (k > 0 ? sb[k] : 0.0) * pm) / sb[k + 1];
      pm = pc;
      pc = pn;
      sum += pc * pc;
    }
    rule->weights[i] = 1.0 / sum;
  }
  return rule;
}

}  // namespace

double jacobi_weight_mass(double alpha, double beta) {
  if (alpha <= -1.0 || beta <= -1.0)
    throw validation_error("jacobi weight: exponents must be > -1");
  // 2^(a+b+1) Gamma(a+1) Gamma(b+1) / Gamma(a+b+2)
  double lg = (alpha + beta + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
              std::lgamma(beta + 1.0) - std::lgamma(alpha + beta + 2.0);
  return std::exp(lg);
}

std::shared_ptr<const QuadratureRule> gauss_jacobi(double alpha, double beta, int n) {
  if (n < 1) throw validation_error("gauss_jacobi: need at least one node");
  if (alpha <= -1.0 || beta <= -1.0)
    throw validation_error("gauss_jacobi: exponents must be > -1");

  static std::mutex mu;
  static std::map<std::tuple<double, double, int>, std::shared_ptr<const QuadratureRule>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({alpha, beta, n});
    if (it != cache.end()) return it->second;
  }

  std::shared_ptr<const QuadratureRule> rule;
  if (alpha == 0.5 && beta == 0.5)
    rule = chebyshev_u_rule(n);
  else
    rule = golub_welsch(alpha, beta, n);

  std::lock_guard<std::mutex> lock(mu);
  cache.insert({{alpha, beta, n}, rule});
  return rule;
}

}  // namespace stieltjes
