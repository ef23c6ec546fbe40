#pragma once

#include <memory>
#include <vector>

namespace stieltjes {

/// Nodes and weights on [-1,1] for a Jacobi weight (1-x)^alpha (1+x)^beta.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <typename Fn>
  double integrate(Fn&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// Total mass of the Jacobi weight, 2^(a+b+1) B(a+1, b+1).
double jacobi_weight_mass(double alpha, double beta);

/// n-point Gauss-Jacobi rule. alpha, beta > -1. Chebyshev-U (1/2, 1/2) has a
/// closed form; everything else goes through Golub-Welsch.
std::shared_ptr<const QuadratureRule> gauss_jacobi(double alpha, double beta, int n);

/// Doubling ladder used by adaptive transform evaluation: 32, 64, ..., cap.
inline constexpr int kQuadMinNodes = 32;
inline constexpr int kQuadMaxNodes = 1 << 16;

}  // namespace stieltjes
