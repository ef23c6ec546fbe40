#include "stieltjes/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "stieltjes/errors.hpp"
#include "stieltjes/quadrature.hpp"

namespace stieltjes {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

double map_to_unit(const ACComponent& c, double x) {
  return (2.0 * x - (c.hi + c.lo)) / (c.hi - c.lo);
}

double jacobi_weight(const ACComponent& c, double t) {
  return std::pow(1.0 - t, c.alpha) * std::pow(1.0 + t, c.beta);
}

}  // namespace

double basis_expansion_eval(const ACComponent& comp, double t) {
  const auto& phi = comp.coeffs;
  if (phi.empty()) return 0.0;
  if (comp.basis == Basis::chebyshevU) {
    // U_0 = 1, U_1 = 2t, U_{k+1} = 2t U_k - U_{k-1}
    double pm = 0.0, pc = 1.0, acc = phi[0];
    for (std::size_t k = 1; k < phi.size(); ++k) {
      double pn = 2.0 * t * pc - pm;
      pm = pc;
      pc = pn;
      acc += phi[k] * pc;
    }
    return acc;
  }
  if (!comp.recurrence)
    throw validation_error("generalOP component is missing its recurrence");
  const auto& rows = comp.recurrence->rows;
  if (rows.size() < phi.size())
    throw validation_error("recurrence has fewer rows than coefficients");
  double pm = 0.0, pc = 1.0, acc = phi[0];
  for (std::size_t k = 1; k < phi.size(); ++k) {
    const auto& row = rows[k - 1];
    // x p_{k-1} = c_{k-2} p_{k-2} + a_{k-1} p_{k-1} + b_{k-1} p_k
    double back = (k >= 2) ? rows[k - 2].c * pm : 0.0;
    double pn = ((t - row.a) * pc - back) / row.b;
    pm = pc;
    pc = pn;
    acc += phi[k] * pc;
  }
  return acc;
}

double component_mass(const ACComponent& comp) {
  if (comp.coeffs.empty()) return 0.0;
  double scale = (comp.hi - comp.lo) / 2.0 / comp.normalization;
  if (comp.basis == Basis::chebyshevU) return scale * comp.coeffs[0] * kPi / 2.0;
  if (!comp.recurrence)
    throw validation_error("generalOP component is missing its recurrence");
  return scale * comp.coeffs[0] * comp.recurrence->mu0;
}

double total_mass(const Measure& m) {
  double acc = 0.0;
  for (const auto& a : m.atoms) acc += a.weight;
  for (const auto& c : m.components) acc += component_mass(c);
  return acc;
}

std::vector<std::string> validate(const Measure& m) {
  std::vector<std::string> out;
  for (const auto& a : m.atoms) {
    if (!(a.weight > 0.0))
      out.push_back("atom-weight-nonpositive: atom at " + fmt(a.location));
    if (!std::isfinite(a.location) || !std::isfinite(a.weight))
      out.push_back("atom-nonfinite: atom at " + fmt(a.location));
  }
  for (std::size_t i = 0; i < m.atoms.size(); ++i)
    for (std::size_t j = i + 1; j < m.atoms.size(); ++j)
      if (m.atoms[i].location == m.atoms[j].location)
        out.push_back("duplicate-location: two atoms at " + fmt(m.atoms[i].location));

  for (const auto& c : m.components) {
    if (!(c.lo < c.hi))
      out.push_back("component-interval-degenerate: [" + fmt(c.lo) + ", " + fmt(c.hi) + "]");
    if (!(c.alpha > -1.0) || !(c.beta > -1.0))
      out.push_back("component-exponents-not-integrable: alpha/beta must be > -1");
    if (c.coeffs.empty())
      out.push_back("component-coeffs-empty");
    else if (c.coeffs.back() == 0.0)
      out.push_back("component-trailing-coefficient-zero");
    if (!(c.normalization > 0.0)) out.push_back("component-normalization-nonpositive");
    if (c.basis == Basis::generalOP) {
      if (!c.recurrence)
        out.push_back("component-recurrence-missing");
      else if (c.recurrence->rows.size() + 1 < c.coeffs.size())
        out.push_back("component-recurrence-too-short");
      else if (!(c.recurrence->mu0 > 0.0))
        out.push_back("component-mu0-nonpositive");
    } else if (c.alpha != 0.5 || c.beta != 0.5) {
      out.push_back("component-chebyshevU-exponents: expected alpha = beta = 1/2");
    }
  }

  // Pairwise disjoint intervals, atoms off every interval.
  for (std::size_t i = 0; i < m.components.size(); ++i) {
    for (std::size_t j = i + 1; j < m.components.size(); ++j) {
      const auto& a = m.components[i];
      const auto& b = m.components[j];
      if (a.lo <= b.hi && b.lo <= a.hi)
        out.push_back("component-intervals-overlap: [" + fmt(a.lo) + ", " + fmt(a.hi) +
                      "] and [" + fmt(b.lo) + ", " + fmt(b.hi) + "]");
    }
    for (const auto& at : m.atoms)
      if (at.location >= m.components[i].lo && at.location <= m.components[i].hi)
        out.push_back("atom-on-component: atom at " + fmt(at.location));
  }

  if (m.atoms.empty() && m.components.empty()) {
    out.push_back("measure-empty");
  } else {
    bool masses_ok = true;
    for (const auto& c : m.components)
      if (c.coeffs.empty() || (c.basis == Basis::generalOP && !c.recurrence) ||
          !(c.normalization > 0.0))
        masses_ok = false;
    if (masses_ok) {
      double mass = total_mass(m);
      if (std::abs(mass - 1.0) > kMassTolerance)
        out.push_back("mass-not-one: total mass " + fmt(mass));
    }
  }
  return out;
}

double density_eval(const Measure& m, double x) {
  for (const auto& a : m.atoms)
    if (x == a.location)
      throw validation_error("density_eval: x coincides with an atom at " + fmt(x));
  double acc = 0.0;
  for (const auto& c : m.components) {
    if (x < c.lo || x > c.hi) continue;
    double t = map_to_unit(c, x);
    t = std::clamp(t, -1.0, 1.0);
    acc += jacobi_weight(c, t) * basis_expansion_eval(c, t) / c.normalization;
  }
  return acc;
}

std::pair<double, double> support_hull(const Measure& m) {
  if (m.atoms.empty() && m.components.empty())
    throw validation_error("support_hull: empty measure");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& a : m.atoms) {
    lo = std::min(lo, a.location);
    hi = std::max(hi, a.location);
  }
  for (const auto& c : m.components) {
    lo = std::min(lo, c.lo);
    hi = std::max(hi, c.hi);
  }
  return {lo, hi};
}

std::vector<std::pair<double, double>> support_gaps(const Measure& m) {
  // Support pieces: component intervals plus degenerate atom intervals.
  std::vector<std::pair<double, double>> pieces;
  for (const auto& a : m.atoms) pieces.emplace_back(a.location, a.location);
  for (const auto& c : m.components) pieces.emplace_back(c.lo, c.hi);
  if (pieces.empty()) throw validation_error("support_gaps: empty measure");
  std::sort(pieces.begin(), pieces.end());
  std::vector<std::pair<double, double>> gaps;
  double cursor = pieces.front().second;
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    if (pieces[i].first > cursor) gaps.emplace_back(cursor, pieces[i].first);
    cursor = std::max(cursor, pieces[i].second);
  }
  return gaps;
}

double support_distance(const Measure& m, double re, double im) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : m.atoms)
    best = std::min(best, std::hypot(re - a.location, im));
  for (const auto& c : m.components) {
    double dx = 0.0;
    if (re < c.lo)
      dx = c.lo - re;
    else if (re > c.hi)
      dx = re - c.hi;
    best = std::min(best, std::hypot(dx, im));
  }
  return best;
}

Measure mp_measure(double c) {
  if (!(c > 0.0)) throw validation_error("mp_measure: c must be positive");
  double s = std::sqrt(c);
  ACComponent comp;
  comp.lo = (1.0 - s) * (1.0 - s);
  comp.hi = (1.0 + s) * (1.0 + s);
  comp.alpha = 0.5;
  comp.beta = 0.5;
  comp.basis = Basis::chebyshevU;

  constexpr int kMaxCoeffs = 8192;
  if (c > 1.0) {
    // phi_k = -(-sqrt(c))^{-(k+1)} / pi, truncated at the 1e-16 scale.
    double term = 1.0 / (kPi * s);  // |phi_0|
    std::vector<double> phi;
    double sign = 1.0;  // -(-1)^{k+1} for k even is +
    for (int k = 0; k < kMaxCoeffs && term >= kCoeffTruncation; ++k) {
      phi.push_back(sign * term);
      sign = -sign;
      term /= s;
    }
    if (term >= kCoeffTruncation)
      throw numerical_error("mp_measure: coefficient decay too slow near c = 1");
    comp.coeffs = std::move(phi);
    Measure m;
    m.components.push_back(std::move(comp));
    return m;
  }
  if (c == 1.0)
    throw numerical_error("mp_measure: c = 1 has no bounded chebyshevU expansion");

  // c < 1: (1-c) delta_0 plus nu_c with mass c; coefficients by quadrature
  // of r(t) = sqrt(c) / (pi (1 + c + 2 sqrt(c) t)) against U_k.
  int m_needed = static_cast<int>(std::ceil(
      2.0 * std::log(kPi * kCoeffTruncation) / std::log(c)));
  m_needed = std::min(std::max(m_needed, 4), kMaxCoeffs);
  ACComponent proto = comp;
  proto.coeffs = {1.0};  // placeholder so the prototype is well-formed
  auto r = [c, s](double t) { return s / (kPi * (1.0 + c + 2.0 * s * t)); };
  std::vector<double> phi = project_coefficients(proto, r, m_needed);
  while (phi.size() > 1 && std::abs(phi.back()) < kCoeffTruncation) phi.pop_back();
  comp.coeffs = std::move(phi);

  Measure m;
  m.atoms.push_back({0.0, 1.0 - c});
  m.components.push_back(std::move(comp));
  return m;
}

Measure semicircle_measure(double a, double b) {
  if (!(a < b)) throw validation_error("semicircle_measure: need a < b");
  ACComponent comp;
  comp.lo = a;
  comp.hi = b;
  comp.alpha = 0.5;
  comp.beta = 0.5;
  comp.basis = Basis::chebyshevU;
  comp.coeffs = {4.0 / (kPi * (b - a))};
  Measure m;
  m.components.push_back(std::move(comp));
  return m;
}

Recurrence jacobi_recurrence(double alpha, double beta, int count) {
  if (alpha <= -1.0 || beta <= -1.0)
    throw validation_error("jacobi_recurrence: exponents must be > -1");
  if (count < 1) throw validation_error("jacobi_recurrence: count must be positive");
  Recurrence rec;
  rec.mu0 = jacobi_weight_mass(alpha, beta);
  rec.rows.resize(count);
  auto alpha_k = [&](int k) {
    if (k == 0) return (beta - alpha) / (alpha + beta + 2.0);
    double s = 2.0 * k + alpha + beta;
    return (beta * beta - alpha * alpha) / (s * (s + 2.0));
  };
  auto beta_k = [&](int k) {
    if (k == 1) {
      double s = alpha + beta;
      return 4.0 * (1.0 + alpha) * (1.0 + beta) / ((s + 2.0) * (s + 2.0) * (s + 3.0));
    }
    double s = 2.0 * k + alpha + beta;
    return 4.0 * k * (k + alpha) * (k + beta) * (k + alpha + beta) /
           (s * s * (s + 1.0) * (s - 1.0));
  };
  for (int k = 0; k < count; ++k) {
    // monic: x p_k = p_{k+1} + alpha_k p_k + beta_k p_{k-1}
    rec.rows[k].a = alpha_k(k);
    rec.rows[k].b = 1.0;
    rec.rows[k].c = beta_k(k + 1);
  }
  return rec;
}

std::vector<double> project_coefficients(const ACComponent& prototype,
                                         const std::function<double(double)>& f, int m) {
  if (m < 0) throw validation_error("project_coefficients: m must be >= 0");

  auto project_with = [&](int n) {
    auto rule = gauss_jacobi(prototype.alpha, prototype.beta, n);
    std::vector<double> num(m + 1, 0.0), den(m + 1, 0.0);
    std::vector<double> pvals(m + 1);
    for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
      double t = rule->nodes[i];
      double wgt = rule->weights[i];
      // evaluate p_0..p_m at t
      if (prototype.basis == Basis::chebyshevU) {
        double pm = 0.0, pc = 1.0;
        pvals[0] = 1.0;
        for (int k = 1; k <= m; ++k) {
          double pn = 2.0 * t * pc - pm;
          pm = pc;
          pc = pn;
          pvals[k] = pc;
        }
      } else {
        if (!prototype.recurrence)
          throw validation_error("project_coefficients: generalOP needs a recurrence");
        const auto& rows = prototype.recurrence->rows;
        if (static_cast<int>(rows.size()) < m)
          throw validation_error("project_coefficients: recurrence too short");
        double pm = 0.0, pc = 1.0;
        pvals[0] = 1.0;
        for (int k = 1; k <= m; ++k) {
          const auto& row = rows[k - 1];
          double back = (k >= 2) ? rows[k - 2].c * pm : 0.0;
          double pn = ((t - row.a) * pc - back) / row.b;
          pm = pc;
          pc = pn;
          pvals[k] = pc;
        }
      }
      double fv = f(t);
      for (int k = 0; k <= m; ++k) {
        num[k] += wgt * fv * pvals[k];
        den[k] += wgt * pvals[k] * pvals[k];
      }
    }
    std::vector<double> phi(m + 1);
    for (int k = 0; k <= m; ++k) phi[k] = num[k] / den[k];
    return phi;
  };

  int n = std::max(kQuadMinNodes, 2 * (m + 1));
  std::vector<double> prev = project_with(n);
  for (n *= 2; n <= kQuadMaxNodes; n *= 2) {
    std::vector<double> cur = project_with(n);
    double diff = 0.0, scale = 1.0;
    for (int k = 0; k <= m; ++k) {
      diff = std::max(diff, std::abs(cur[k] - prev[k]));
      scale = std::max(scale, std::abs(cur[k]));
    }
    if (diff <= 1e-13 * scale) return cur;
    prev = std::move(cur);
  }
  throw numerical_error("project_coefficients: quadrature did not stabilize");
}

}  // namespace stieltjes
