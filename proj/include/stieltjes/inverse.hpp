#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "stieltjes/density_graph.hpp"
#include "stieltjes/measure.hpp"
#include "stieltjes/rootfinder.hpp"
#include "stieltjes/transforms.hpp"

namespace stieltjes {

enum class ChartKind { exterior, gap };

/// A conformal chart covering part of C \ support: the Joukowski exterior
/// chart over the hull, or a disc chart inside one support gap. Roots are
/// sought in |w| < 1 after pre-scaling by the contour radius r.
struct ChartSpec {
  ChartKind kind = ChartKind::exterior;
  double r = 0.99;
  int K = 1024;
  int M = 8;
  std::pair<double, double> gap{0.0, 0.0};  // used when kind == gap
};

struct InverseRoot {
  Complex z;
  int multiplicity = 1;
  double residual = 0.0;  // |G(z) - zeta|
  std::string chart;      // provenance: "exterior", "gap(c,d)", "pure-point", "sqrt-single"
};

struct RootReport {
  Complex zeta;
  std::vector<InverseRoot> roots;
  std::optional<int> bound;          // from inverse_count_bound when supplied
  std::optional<int> winding_check;  // Ind_{gamma_r}(zeta) when requested
  std::vector<std::string> warnings;
};

struct SolveOptions {
  double r = 0.99;
  int K = 0;              // 0: 1024, or 4096 when a component has a negative exponent
  int M = 0;              // 0: bound + 2 when a bound is supplied, else 8
  double residual_tol = 1e-8;
  double dedup_tol = 1e-8;
  double rank_tol = 1e-10;
  double cluster_tol = 1e-6;
  bool do_refine = true;
  bool strict = true;           // winding/count inconsistencies throw
  bool with_winding = false;    // cross-check exterior count against gamma_r
  std::optional<int> bound;     // upper bound N from the bound module
};

/// Finds all solutions of G(z) = zeta by running the contour root finder
/// under every chart. Chart quadrature evaluations of G depend only on
/// (measure, chart) and are cached across zeta queries.
class InverseSolver {
 public:
  InverseSolver(Measure measure, SolveOptions opts = {});

  RootReport solve(Complex zeta) const;

  const Measure& measure() const { return measure_; }
  const SolveOptions& options() const { return opts_; }

 private:
  struct ChartCache {
    ChartSpec spec;
    std::vector<Complex> gvals;  // G at the mapped contour nodes
  };

  RootReport solve_charts(Complex zeta) const;
  RootReport solve_pure_point(Complex zeta) const;
  const std::vector<ChartCache>& charts() const;

  Measure measure_;
  SolveOptions opts_;
  bool atoms_only_ = false;
  mutable std::once_flag charts_once_;
  mutable std::vector<ChartCache> charts_;
};

/// One-chart entry points.
std::vector<InverseRoot> inverses_exterior(const Measure& m, Complex zeta,
                                           const ChartSpec& chart);
std::vector<InverseRoot> inverses_gap(const Measure& m, Complex zeta, const ChartSpec& chart);

/// Chart union + dedup; one-shot convenience over InverseSolver.
RootReport all_inverses(const Measure& m, Complex zeta, const SolveOptions& opts = {});

/// Pure point measures: clears denominators and solves the degree-N
/// polynomial by companion matrix.
std::vector<InverseRoot> inverses_pure_point(const Measure& m, Complex zeta,
                                             double residual_tol = 1e-8);

/// Single-interval chebyshevU measures: solves
/// (pi/Z) sum phi_n w^{n+1} = zeta and keeps |w| < 1.
std::vector<InverseRoot> inverses_sqrt_single(const ACComponent& comp, Complex zeta,
                                              double residual_tol = 1e-8);

}  // namespace stieltjes
