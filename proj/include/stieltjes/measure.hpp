#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stieltjes {

struct Atom {
  double location = 0.0;
  double weight = 0.0;  // probability mass, > 0
};

enum class Basis { chebyshevU, generalOP };

/// Three-term recurrence for the basis polynomials, p_0 = 1:
///   x p_0 = a_0 p_0 + b_0 p_1
///   x p_n = c_{n-1} p_{n-1} + a_n p_n + b_n p_{n+1},  n >= 1
/// Row k stores (a_k, b_k, c_k); c_k couples p_k back into row k+1.
struct Recurrence {
  struct Row {
    double a = 0.0;
    double b = 1.0;
    double c = 0.0;
  };
  std::vector<Row> rows;
  double mu0 = 0.0;  // integral of p_0 w over [-1,1]
};

/// One interval of absolutely continuous support. In mapped coordinates
/// t in [-1,1] the density is w(t) r(t) / Z with Jacobi weight
/// w(t) = (1-t)^alpha (1+t)^beta and r(t) = sum_n coeffs[n] p_n(t).
struct ACComponent {
  double lo = -1.0;
  double hi = 1.0;
  double alpha = 0.5;
  double beta = 0.5;
  Basis basis = Basis::chebyshevU;
  std::optional<Recurrence> recurrence;  // required for generalOP
  std::vector<double> coeffs;            // phi_0 .. phi_m, phi_m != 0
  double normalization = 1.0;            // Z > 0
};

/// Atoms plus AC components on pairwise disjoint compact intervals,
/// total mass 1. Immutable by convention once built.
struct Measure {
  std::vector<Atom> atoms;
  std::vector<ACComponent> components;
};

/// Tolerances for the measure invariants; both configurable.
inline constexpr double kMassTolerance = 1e-10;
inline constexpr double kCoeffTruncation = 1e-16;

/// Evaluate the basis polynomials p_0..p_m at t and accumulate
/// sum coeffs[n] p_n(t). chebyshevU uses the U_k recurrence directly.
double basis_expansion_eval(const ACComponent& comp, double t);

/// Mass contributed by one component: only phi_0 survives orthogonality.
double component_mass(const ACComponent& comp);

double total_mass(const Measure& m);

/// Empty list iff every Measure invariant holds; each entry names the
/// failed invariant. Never throws.
std::vector<std::string> validate(const Measure& m);

/// Density at x: sum over components containing x of w(t) r(t) / Z,
/// zero outside all components. Throws validation_error at an atom.
double density_eval(const Measure& m, double x);

/// Convex hull [min support, max support] and the maximal open gaps inside it.
std::pair<double, double> support_hull(const Measure& m);
std::vector<std::pair<double, double>> support_gaps(const Measure& m);

/// Distance from the complex point (re, im) to the support.
double support_distance(const Measure& m, double re, double im);

/// Marchenko-Pastur distribution with free cumulants all equal to c, on
/// [(1-sqrt(c))^2, (1+sqrt(c))^2], plus a (1-c) atom at 0 when c < 1.
Measure mp_measure(double c);

/// Semicircle-type measure on [a,b]: single chebyshevU component with
/// phi_0 = 4 / (pi (b-a)).
Measure semicircle_measure(double a, double b);

/// Monic Jacobi basis recurrence for the weight (1-t)^alpha (1+t)^beta,
/// with `count` rows.
Recurrence jacobi_recurrence(double alpha, double beta, int count);

/// Least-squares-free projection: coefficients phi_0..phi_m of f in the
/// component's basis under its weight, phi_n = <f,p_n>_w / ||p_n||_w^2,
/// computed by Gauss-Jacobi quadrature with doubling until stable.
std::vector<double> project_coefficients(const ACComponent& prototype,
                                         const std::function<double(double)>& f, int m);

}  // namespace stieltjes
