#include "stieltjes/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stieltjes/errors.hpp"
#include "stieltjes/parallel.hpp"

namespace stieltjes {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string gap_label(std::pair<double, double> g) {
  return "gap(" + std::to_string(g.first) + "," + std::to_string(g.second) + ")";
}

// Contour node in chart coordinates -> point in the z plane.
Complex chart_point(const Measure& m, const ChartSpec& spec, Complex w) {
  if (spec.kind == ChartKind::exterior) {
    auto hull = support_hull(m);
    return affine_map(hull, joukowski(spec.r * w));
  }
  return affine_map(spec.gap, spec.r * w);
}

// dz/dw for the chain rule in refinement.
Complex chart_point_derivative(const Measure& m, const ChartSpec& spec, Complex w) {
  if (spec.kind == ChartKind::exterior) {
    auto hull = support_hull(m);
    Complex u = spec.r * w;
    Complex jprime = 0.5 * (1.0 - 1.0 / (u * u));
    return (hull.second - hull.first) / 2.0 * jprime * spec.r;
  }
  return Complex((spec.gap.second - spec.gap.first) / 2.0 * spec.r, 0.0);
}

void check_chart(const Measure& m, const ChartSpec& spec) {
  if (!(spec.r > 0.0 && spec.r < 1.0))
    throw validation_error("chart: contour radius must lie in (0,1)");
  if (spec.K < 2 * spec.M) throw validation_error("chart: need K >= 2M");
  if (spec.kind == ChartKind::gap) {
    auto [c, d] = spec.gap;
    if (!(c < d)) throw validation_error("gap chart: degenerate interval");
    bool inside_a_gap = false;
    for (auto g : support_gaps(m))
      if (c >= g.first && d <= g.second) inside_a_gap = true;
    if (!inside_a_gap)
      throw validation_error("gap chart: interval is not contained in a support gap");
  }
}

std::vector<Complex> chart_values(const Measure& m, const ChartSpec& spec) {
  std::vector<Complex> gvals(spec.K);
  std::vector<std::string> errors(spec.K);
  parallel_for(gvals.size(), [&](std::size_t j) {
    Complex w = std::polar(1.0, 2.0 * kPi * j / spec.K);
    try {
      gvals[j] = stieltjes_transform(m, chart_point(m, spec, w));
    } catch (const std::exception& e) {
      errors[j] = e.what();
    }
  });
  for (const auto& e : errors)
    if (!e.empty()) throw validation_error("chart evaluation: " + e);
  return gvals;
}

std::vector<InverseRoot> roots_from_chart(const Measure& m, const ChartSpec& spec,
                                          const std::vector<Complex>& gvals, Complex zeta,
                                          const DiscRootOptions& disc_opts,
                                          std::vector<std::string>* warnings) {
  if (spec.kind == ChartKind::exterior && zeta == Complex(0.0, 0.0))
    throw validation_error(
        "inverses_exterior: zeta = 0 has no inverse in the chart (G -> 0 only at infinity)");

  std::vector<Complex> fvals(gvals.size());
  for (std::size_t j = 0; j < gvals.size(); ++j) fvals[j] = gvals[j] - zeta;

  // w = 0 in the exterior chart is the removable singularity at infinity:
  // the function value there is -zeta and dF/dw = 4 r / (b - a).
  HolomorphicFn f = [&m, &spec, zeta](Complex w) {
    if (spec.kind == ChartKind::exterior && w == Complex(0.0, 0.0)) return -zeta;
    return stieltjes_transform(m, chart_point(m, spec, w)) - zeta;
  };
  HolomorphicFn fprime = [&m, &spec](Complex w) {
    if (spec.kind == ChartKind::exterior && w == Complex(0.0, 0.0)) {
      auto hull = support_hull(m);
      return Complex(4.0 * spec.r / (hull.second - hull.first), 0.0);
    }
    return stieltjes_derivative(m, chart_point(m, spec, w)) *
           chart_point_derivative(m, spec, w);
  };

  DiscRootResult res = find_roots_from_values(fvals, spec.M, disc_opts, &f, &fprime);
  if (warnings)
    for (auto& w : res.warnings) warnings->push_back(w);

  std::string label = spec.kind == ChartKind::exterior ? "exterior" : gap_label(spec.gap);
  std::vector<InverseRoot> out;
  for (const auto& c : res.clusters) {
    InverseRoot root;
    root.z = chart_point(m, spec, c.center);
    root.multiplicity = c.multiplicity;
    try {
      root.residual = std::abs(stieltjes_transform(m, root.z) - zeta);
    } catch (const validation_error&) {
      // Landed on the support; leave it to the residual contract to drop.
      root.residual = std::numeric_limits<double>::infinity();
    }
    root.chart = label;
    out.push_back(root);
  }
  return out;
}

int default_K(const Measure& m) {
  for (const auto& c : m.components)
    if (c.alpha < 0.0 || c.beta < 0.0) return 4096;
  return 1024;
}

}  // namespace

std::vector<InverseRoot> inverses_exterior(const Measure& m, Complex zeta,
                                           const ChartSpec& chart) {
  if (chart.kind != ChartKind::exterior)
    throw validation_error("inverses_exterior: chart kind must be exterior");
  check_chart(m, chart);
  auto gvals = chart_values(m, chart);
  return roots_from_chart(m, chart, gvals, zeta, {}, nullptr);
}

std::vector<InverseRoot> inverses_gap(const Measure& m, Complex zeta, const ChartSpec& chart) {
  if (chart.kind != ChartKind::gap)
    throw validation_error("inverses_gap: chart kind must be gap");
  check_chart(m, chart);
  auto gvals = chart_values(m, chart);
  return roots_from_chart(m, chart, gvals, zeta, {}, nullptr);
}

std::vector<InverseRoot> inverses_pure_point(const Measure& m, Complex zeta,
                                             double residual_tol) {
  if (!m.components.empty())
    throw validation_error("inverses_pure_point: measure must be atoms only");
  if (m.atoms.empty()) throw validation_error("inverses_pure_point: empty measure");
  const std::size_t n = m.atoms.size();
  if (zeta == Complex(0.0, 0.0) && n == 1)
    throw validation_error("inverses_pure_point: zeta = 0 has no solution for one atom");

  // zeta prod_j (z - x_j) - sum_i a_i prod_{j != i} (z - x_j), ascending coefficients.
  std::vector<Complex> poly(n + 1, Complex(0.0, 0.0));
  std::vector<Complex> full{1.0};
  for (const auto& a : m.atoms) {
    std::vector<Complex> next(full.size() + 1, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < full.size(); ++k) {
      next[k] += full[k] * (-a.location);
      next[k + 1] += full[k];
    }
    full = std::move(next);
  }
  for (std::size_t k = 0; k < full.size(); ++k) poly[k] += zeta * full[k];
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Complex> part{1.0};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<Complex> next(part.size() + 1, Complex(0.0, 0.0));
      for (std::size_t k = 0; k < part.size(); ++k) {
        next[k] += part[k] * (-m.atoms[j].location);
        next[k + 1] += part[k];
      }
      part = std::move(next);
    }
    for (std::size_t k = 0; k < part.size(); ++k) poly[k] -= m.atoms[i].weight * part[k];
  }

  std::vector<InverseRoot> out;
  for (const auto& z : companion_roots(poly)) {
    double resid;
    try {
      resid = std::abs(stieltjes_transform(m, z) - zeta);
    } catch (const validation_error&) {
      continue;  // root collapsed onto an atom
    }
    if (resid > residual_tol) continue;  // spurious (cancelled) root
    bool merged = false;
    for (auto& r : out)
      if (std::abs(r.z - z) < 1e-10) {
        ++r.multiplicity;
        merged = true;
      }
    if (!merged) out.push_back({z, 1, resid, "pure-point"});
  }
  return out;
}

std::vector<InverseRoot> inverses_sqrt_single(const ACComponent& comp, Complex zeta,
                                              double residual_tol) {
  if (comp.basis != Basis::chebyshevU)
    throw validation_error("inverses_sqrt_single: component must be chebyshevU");
  bool all_zero = true;
  for (double p : comp.coeffs)
    if (p != 0.0) all_zero = false;
  if (comp.coeffs.empty() || all_zero)
    throw validation_error("inverses_sqrt_single: all coefficients are zero");

  // (pi/Z) sum phi_n w^{n+1} - zeta = 0, ascending in w.
  std::vector<Complex> poly(comp.coeffs.size() + 1);
  poly[0] = -zeta;
  for (std::size_t k = 0; k < comp.coeffs.size(); ++k)
    poly[k + 1] = kPi * comp.coeffs[k] / comp.normalization;

  Measure single;
  single.components.push_back(comp);

  std::vector<InverseRoot> out;
  for (const auto& w : companion_roots(poly)) {
    if (!(std::abs(w) < 1.0)) continue;
    if (w == Complex(0.0, 0.0)) continue;  // image at infinity
    Complex z = affine_map({comp.lo, comp.hi}, joukowski(w));
    double resid;
    try {
      resid = std::abs(stieltjes_transform(single, z) - zeta);
    } catch (const validation_error&) {
      continue;  // |w| ~ 1, mapped onto the support
    }
    if (resid > residual_tol) continue;
    bool merged = false;
    for (auto& r : out)
      if (std::abs(r.z - z) < 1e-10) {
        ++r.multiplicity;
        merged = true;
      }
    if (!merged) out.push_back({z, 1, resid, "sqrt-single"});
  }
  return out;
}

InverseSolver::InverseSolver(Measure measure, SolveOptions opts)
    : measure_(std::move(measure)), opts_(opts) {
  auto violations = validate(measure_);
  if (!violations.empty())
    throw validation_error("InverseSolver: invalid measure: " + violations.front());
  atoms_only_ = measure_.components.empty();
  if (opts_.K == 0) opts_.K = default_K(measure_);
  if (opts_.M == 0) opts_.M = opts_.bound ? *opts_.bound + 2 : 8;
  if (opts_.M < 1) opts_.M = 1;
}

const std::vector<InverseSolver::ChartCache>& InverseSolver::charts() const {
  std::call_once(charts_once_, [this] {
    ChartSpec ext;
    ext.kind = ChartKind::exterior;
    ext.r = opts_.r;
    ext.K = opts_.K;
    ext.M = opts_.M;
    check_chart(measure_, ext);
    charts_.push_back({ext, chart_values(measure_, ext)});
    for (auto g : support_gaps(measure_)) {
      ChartSpec gap;
      gap.kind = ChartKind::gap;
      gap.gap = g;
      gap.r = opts_.r;
      gap.K = opts_.K;
      gap.M = opts_.M;
      charts_.push_back({gap, chart_values(measure_, gap)});
    }
  });
  return charts_;
}

RootReport InverseSolver::solve_pure_point(Complex zeta) const {
  RootReport rep;
  rep.zeta = zeta;
  rep.roots = inverses_pure_point(measure_, zeta, opts_.residual_tol);
  rep.bound = opts_.bound;
  return rep;
}

RootReport InverseSolver::solve_charts(Complex zeta) const {
  RootReport rep;
  rep.zeta = zeta;

  DiscRootOptions disc_opts;
  disc_opts.rank_tol = opts_.rank_tol;
  disc_opts.cluster_tol = opts_.cluster_tol;
  disc_opts.do_refine = opts_.do_refine;
  disc_opts.strict = opts_.strict;

  std::vector<InverseRoot> pool;
  for (const auto& cache : charts()) {
    auto roots = roots_from_chart(measure_, cache.spec, cache.gvals, zeta, disc_opts,
                                  &rep.warnings);
    pool.insert(pool.end(), roots.begin(), roots.end());
  }

  // Charts overlap near the gap-disc boundary; keep the lower-residual twin.
  std::sort(pool.begin(), pool.end(),
            [](const InverseRoot& a, const InverseRoot& b) { return a.residual < b.residual; });
  std::vector<InverseRoot> unique;
  for (const auto& r : pool) {
    bool dup = false;
    for (const auto& u : unique)
      if (std::abs(u.z - r.z) < opts_.dedup_tol) dup = true;
    if (!dup) unique.push_back(r);
  }

  std::size_t dropped = 0;
  for (const auto& r : unique) {
    if (r.residual <= opts_.residual_tol)
      rep.roots.push_back(r);
    else
      ++dropped;
  }
  if (dropped > 0)
    rep.warnings.push_back(std::to_string(dropped) +
                           " root(s) dropped by the residual contract");
  std::sort(rep.roots.begin(), rep.roots.end(), [](const InverseRoot& a, const InverseRoot& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });

  rep.bound = opts_.bound;
  if (rep.bound) {
    int total = 0;
    for (const auto& r : rep.roots) total += r.multiplicity;
    if (total > *rep.bound) {
      std::string msg = "root count " + std::to_string(total) + " exceeds bound " +
                        std::to_string(*rep.bound);
      if (opts_.strict) throw numerical_error("all_inverses: " + msg);
      rep.warnings.push_back(msg);
    }
  }

  if (opts_.with_winding) {
    CurveSamples gamma = gamma_curve(measure_, opts_.r, opts_.K);
    int ind = winding_number(gamma, zeta);
    rep.winding_check = ind;
    auto hull = support_hull(measure_);
    int outside = 0;
    for (const auto& r : rep.roots) {
      // Real roots in a gap pull back to the unit circle: inside the ellipse.
      Complex s = affine_inv(hull, r.z);
      double mod = (s.imag() == 0.0 && std::abs(s.real()) <= 1.0)
                       ? 1.0
                       : std::abs(joukowski_inv_disc(s));
      if (mod < opts_.r) outside += r.multiplicity;
    }
    if (outside != ind) {
      std::string msg = "winding check: " + std::to_string(outside) +
                        " roots outside the r-ellipse vs winding " + std::to_string(ind);
      if (opts_.strict) throw numerical_error("all_inverses: " + msg);
      rep.warnings.push_back(msg);
    }
  }
  return rep;
}

RootReport InverseSolver::solve(Complex zeta) const {
  return atoms_only_ ? solve_pure_point(zeta) : solve_charts(zeta);
}

RootReport all_inverses(const Measure& m, Complex zeta, const SolveOptions& opts) {
  return InverseSolver(m, opts).solve(zeta);
}

}  // namespace stieltjes
