#include "stieltjes/transforms.hpp"

#include <cmath>
#include <limits>

#include "stieltjes/errors.hpp"
#include "stieltjes/parallel.hpp"
#include "stieltjes/quadrature.hpp"

namespace stieltjes {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool on_cut(Complex z) { return z.imag() == 0.0 && std::abs(z.real()) <= 1.0; }

// Sum over components in mapped coordinates; shared by value and derivative.
Complex cheb_u_series(const ACComponent& c, Complex w) {
  Complex acc = 0.0;
  for (auto it = c.coeffs.rbegin(); it != c.coeffs.rend(); ++it) acc = acc * w + *it;
  return acc * w * kPi / c.normalization;
}

Complex cheb_u_series_derivative_in_w(const ACComponent& c, Complex w) {
  // d/dw of sum phi_n w^{n+1} = sum (n+1) phi_n w^n
  Complex acc = 0.0;
  for (std::size_t k = c.coeffs.size(); k-- > 0;)
    acc = acc * w + (static_cast<double>(k) + 1.0) * c.coeffs[k];
  return acc * kPi / c.normalization;
}

// Adaptive Gauss-Jacobi evaluation of int w(t) r(t) g(z - M(t)) dt where
// g is 1/(.) for the transform and 1/(.)^2 for the derivative.
template <bool Derivative>
Complex general_op_quadrature(const ACComponent& c, Complex z) {
  double half = (c.hi - c.lo) / 2.0;
  double mid = (c.hi + c.lo) / 2.0;
  auto eval_with = [&](int n) {
    auto rule = gauss_jacobi(c.alpha, c.beta, n);
    Complex acc = 0.0;
    for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
      double t = rule->nodes[i];
      Complex den = z - (mid + half * t);
      double rv = basis_expansion_eval(c, t);
      if constexpr (Derivative)
        acc += rule->weights[i] * rv / (den * den);
      else
        acc += rule->weights[i] * rv / den;
    }
    double sign = Derivative ? -1.0 : 1.0;
    return sign * acc * half / c.normalization;
  };
  int n = kQuadMinNodes;
  Complex prev = eval_with(n);
  for (n *= 2; n <= kQuadMaxNodes; n *= 2) {
    Complex cur = eval_with(n);
    if (std::abs(cur - prev) <= 1e-12 * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw numerical_error("stieltjes_transform: Gauss-Jacobi quadrature did not converge "
                        "(evaluation point too close to the support?)");
}

void require_off_support(const Measure& m, Complex z, const char* who) {
  if (support_distance(m, z.real(), z.imag()) < kSupportClearance)
    throw validation_error(std::string(who) + ": point is on the support");
}

}  // namespace

Complex joukowski(Complex z) {
  if (z == Complex(0.0, 0.0)) throw validation_error("joukowski: z = 0 maps to infinity");
  return 0.5 * (z + 1.0 / z);
}

Complex sqrt_z2m1(Complex z) {
  return std::exp(0.5 * (std::log(z - 1.0) + std::log(z + 1.0)));
}

Complex joukowski_inv_disc(Complex z) {
  if (on_cut(z))
    throw validation_error("joukowski_inv_disc: z lies on [-1,1]; both branches have modulus 1");
  Complex s = sqrt_z2m1(z);
  Complex w = z - s;
  // The two branches multiply to 1; keep the one inside the disc.
  if (std::abs(w) > 1.0) w = 1.0 / w;
  return w;
}

Complex affine_map(std::pair<double, double> interval, Complex z) {
  auto [a, b] = interval;
  if (!(a < b)) throw validation_error("affine_map: degenerate interval");
  return Complex((b + a) / 2.0, 0.0) + ((b - a) / 2.0) * z;
}

Complex affine_inv(std::pair<double, double> interval, Complex z) {
  auto [a, b] = interval;
  if (!(a < b)) throw validation_error("affine_inv: degenerate interval");
  return (2.0 * z - Complex(b + a, 0.0)) / (b - a);
}

Complex stieltjes_transform(const Measure& m, Complex z) {
  require_off_support(m, z, "stieltjes_transform");
  Complex acc = 0.0;
  for (const auto& a : m.atoms) acc += a.weight / (z - a.location);
  for (const auto& c : m.components) {
    if (c.basis == Basis::chebyshevU) {
      Complex w = joukowski_inv_disc(affine_inv({c.lo, c.hi}, z));
      acc += cheb_u_series(c, w);
    } else {
      acc += general_op_quadrature<false>(c, z);
    }
  }
  return acc;
}

Complex stieltjes_derivative(const Measure& m, Complex z) {
  require_off_support(m, z, "stieltjes_derivative");
  Complex acc = 0.0;
  for (const auto& a : m.atoms) {
    Complex d = z - a.location;
    acc -= a.weight / (d * d);
  }
  for (const auto& c : m.components) {
    if (c.basis == Basis::chebyshevU) {
      Complex s = affine_inv({c.lo, c.hi}, z);
      Complex w = joukowski_inv_disc(s);
      // dw/dz = -w / sqrt(s^2-1) * 2/(b-a)
      Complex dwdz = -w / sqrt_z2m1(s) * (2.0 / (c.hi - c.lo));
      acc += cheb_u_series_derivative_in_w(c, w) * dwdz;
    } else {
      acc += general_op_quadrature<true>(c, z);
    }
  }
  return acc;
}

CurveSamples gamma_curve(const Measure& m, double r, int K) {
  if (K < 16) throw validation_error("gamma_curve: K must be at least 16");
  if (!(r > 0.0) || r > 1.0) throw validation_error("gamma_curve: r must lie in (0, 1]");

  CurveSamples out;
  out.r = r;
  out.t.resize(K + 1);
  out.points.resize(K + 1);
  for (int j = 0; j <= K; ++j) out.t[j] = 2.0 * kPi * j / K;

  if (r == 1.0) {
    // Plemelj boundary values; closed form only for a lone chebyshevU component.
    if (!m.atoms.empty() || m.components.size() != 1 ||
        m.components[0].basis != Basis::chebyshevU)
      throw validation_error(
          "gamma_curve: r = 1 requires a single-interval chebyshevU measure; use r < 1");
    const auto& c = m.components[0];
    parallel_for(out.t.size(), [&](std::size_t j) {
      Complex w = std::polar(1.0, out.t[j]);
      out.points[j] = cheb_u_series(c, w);
    });
    return out;
  }

  auto [a, b] = support_hull(m);
  if (!(a < b))
    throw validation_error("gamma_curve: support hull is degenerate");
  std::vector<std::string> errors(out.t.size());
  parallel_for(out.t.size(), [&](std::size_t j) {
    Complex u = std::polar(r, out.t[j]);
    Complex z = affine_map({a, b}, joukowski(u));
    try {
      out.points[j] = stieltjes_transform(m, z);
    } catch (const std::exception& e) {
      errors[j] = e.what();
    }
  });
  for (const auto& e : errors)
    if (!e.empty()) throw validation_error("gamma_curve: " + e);
  return out;
}

int winding_number(const std::vector<Complex>& loop, Complex zeta) {
  if (loop.size() < 2) throw validation_error("winding_number: need a closed loop");
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < loop.size(); ++j) {
    Complex d0 = loop[j] - zeta;
    Complex d1 = loop[j + 1] - zeta;
    if (std::abs(d0) < 1e-13 || std::abs(d1) < 1e-13)
      throw validation_error("winding_number: point lies on the curve");
    double inc = std::arg(d1 / d0);
    if (std::abs(inc) >= kPi - 1e-9)
      throw numerical_error("winding_number: argument increment reached pi; curve under-sampled");
    total += inc;
  }
  double turns = total / (2.0 * kPi);
  double nearest = std::round(turns);
  if (std::abs(turns - nearest) >= 0.1)
    throw numerical_error("winding_number: rounding residual too large; curve under-sampled");
  return static_cast<int>(nearest);
}

int winding_number(const CurveSamples& curve, Complex zeta) {
  return winding_number(curve.points, zeta);
}

}  // namespace stieltjes
