#include "stieltjes/density_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "stieltjes/errors.hpp"

namespace stieltjes {

namespace {

bool sorted_and_disjoint(const std::vector<DensityPiece>& pieces) {
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i)
    if (pieces[i + 1].lo < pieces[i].hi) return false;
  return true;
}

// Vertical segments of the modified graph, one per breakpoint: the span of
// the chain of one-sided values meeting there (0 on gap sides).
struct Vertical {
  double lo, hi;
};

std::vector<Vertical> vertical_segments(const PiecewiseMonotoneDensity& d) {
  const auto& ps = d.pieces;
  std::set<double> breakpoints;
  for (const auto& p : ps) {
    breakpoints.insert(p.lo);
    breakpoints.insert(p.hi);
  }
  std::vector<Vertical> out;
  for (double x : breakpoints) {
    double lo = 0.0, hi = 0.0;
    bool left_covered = false, right_covered = false;
    auto chain = [&](double v) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    };
    lo = hi = 0.0;
    bool first = true;
    auto chain_init = [&](double v) {
      if (first) {
        lo = hi = v;
        first = false;
      } else {
        chain(v);
      }
    };
    for (const auto& p : ps) {
      if (p.hi == x && p.lo < x) {  // wide piece ending here
        chain_init(p.right_limit);
        left_covered = true;
      }
    }
    if (!left_covered) chain_init(0.0);
    for (const auto& p : ps) {
      if (p.lo == x && p.hi == x) {  // jump piece at x
        chain(p.left_limit);
        chain(p.right_limit);
      }
    }
    for (const auto& p : ps) {
      if (p.lo == x && p.hi > x) {  // wide piece starting here
        chain(p.left_limit);
        right_covered = true;
      }
    }
    if (!right_covered) chain(0.0);
    if (lo < hi) out.push_back({lo, hi});
  }
  return out;
}

std::vector<double> finite_limits(const PiecewiseMonotoneDensity& d) {
  std::set<double> vals{0.0};
  for (const auto& p : d.pieces) {
    if (std::isfinite(p.left_limit)) vals.insert(p.left_limit);
    if (std::isfinite(p.right_limit)) vals.insert(p.right_limit);
  }
  return {vals.begin(), vals.end()};
}

}  // namespace

std::vector<std::string> validate(const PiecewiseMonotoneDensity& d) {
  std::vector<std::string> out;
  for (const auto& p : d.pieces) {
    if (p.lo > p.hi) out.push_back("piece-interval-reversed");
    if (std::isnan(p.left_limit) || std::isnan(p.right_limit))
      out.push_back("piece-limit-nan");
    if (p.left_limit < 0.0 || p.right_limit < 0.0) out.push_back("piece-limit-negative");
    if (p.lo < p.hi) {
      if (p.direction == Direction::increasing && p.left_limit > p.right_limit)
        out.push_back("piece-direction-inconsistent");
      if (p.direction == Direction::decreasing && p.left_limit < p.right_limit)
        out.push_back("piece-direction-inconsistent");
      if (p.direction == Direction::constant &&
          (p.left_limit != p.right_limit || std::isinf(p.left_limit)))
        out.push_back("constant-piece-limits-invalid");
    }
  }
  if (!sorted_and_disjoint(d.pieces)) out.push_back("pieces-not-sorted-disjoint");
  return out;
}

int level_component_count(const PiecewiseMonotoneDensity& d, double y) {
  if (!(y > 0.0)) throw validation_error("level_component_count: y must be > 0");
  for (const auto& p : d.pieces)
    if (y == p.left_limit || y == p.right_limit)
      throw validation_error(
          "level_component_count: y is a critical value; perturb it");
  if (!sorted_and_disjoint(d.pieces))
    throw validation_error("level_component_count: pieces not sorted/disjoint");

  int count = 0;
  for (const auto& p : d.pieces) {
    if (p.lo == p.hi) continue;  // jumps are counted as vertical segments
    if (p.direction == Direction::constant) continue;  // value != y for non-critical y
    double lo = std::min(p.left_limit, p.right_limit);
    double hi = std::max(p.left_limit, p.right_limit);
    if (lo < y && y < hi) ++count;
  }
  for (const auto& v : vertical_segments(d))
    if (v.lo < y && y < v.hi) ++count;
  return count;
}

BoundReport inverse_count_bound(const PiecewiseMonotoneDensity& d) {
  BoundReport rep;
  std::vector<double> crit = finite_limits(d);
  for (double c : crit)
    if (c > 0.0) rep.critical_values.push_back(c);

  bool has_infinite = false;
  for (const auto& p : d.pieces)
    if (std::isinf(p.left_limit) || std::isinf(p.right_limit)) has_infinite = true;

  std::vector<double> pos{0.0};
  pos.insert(pos.end(), rep.critical_values.begin(), rep.critical_values.end());
  std::vector<double> probes;
  for (std::size_t i = 0; i + 1 < pos.size(); ++i)
    probes.push_back(0.5 * (pos[i] + pos[i + 1]));
  // One probe above the largest finite critical value; only unbounded pieces
  // can still contribute there, and the count is constant on that band.
  if (pos.size() > 1)
    probes.push_back(pos.back() + 1.0);
  else if (has_infinite)
    probes.push_back(1.0);

  rep.count_max = 0;
  rep.witness_y = probes.empty() ? 0.0 : probes.front();
  for (double y : probes) {
    int c = level_component_count(d, y);
    if (c > rep.count_max) {
      rep.count_max = c;
      rep.witness_y = y;
    }
  }
  rep.bound = (rep.count_max + 1) / 2;
  return rep;
}

PiecewiseMonotoneDensity pieces_from_samples(const std::vector<double>& xs,
                                             const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw validation_error("bound_from_samples: xs and ys sizes differ");
  if (xs.size() < 2) throw validation_error("bound_from_samples: need at least 2 samples");
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (!(xs[i] < xs[i + 1]))
      throw validation_error("bound_from_samples: xs must be strictly increasing");
  for (double y : ys)
    if (!(y >= 0.0)) throw validation_error("bound_from_samples: ys must be >= 0");

  PiecewiseMonotoneDensity d;
  auto dir_of = [](double a, double b) {
    if (b > a) return Direction::increasing;
    if (b < a) return Direction::decreasing;
    return Direction::constant;
  };
  std::size_t start = 0;
  Direction cur = dir_of(ys[0], ys[1]);
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    Direction next = dir_of(ys[i], ys[i + 1]);
    if (next != cur) {
      d.pieces.push_back({xs[start], xs[i], cur, ys[start], ys[i]});
      start = i;
      cur = next;
    }
  }
  d.pieces.push_back({xs[start], xs.back(), cur, ys[start], ys.back()});
  return d;
}

BoundReport bound_from_samples(const std::vector<double>& xs, const std::vector<double>& ys) {
  return inverse_count_bound(pieces_from_samples(xs, ys));
}

}  // namespace stieltjes
