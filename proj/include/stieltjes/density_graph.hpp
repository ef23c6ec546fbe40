#pragma once

#include <string>
#include <vector>

namespace stieltjes {

enum class Direction { increasing, decreasing, constant };

/// One monotone piece of a density. A zero-width piece (lo == hi) encodes a
/// jump point; its two limits are the one-sided values at that point.
/// Limits may be +infinity at boundaries of the support.
struct DensityPiece {
  double lo = 0.0;
  double hi = 0.0;
  Direction direction = Direction::constant;
  double left_limit = 0.0;   // limit approaching lo from inside the piece
  double right_limit = 0.0;  // limit approaching hi from inside the piece
};

/// Breakpoint description of a density on the whole line; the density is 0
/// outside the listed pieces. Pieces must be sorted and non-overlapping.
struct PiecewiseMonotoneDensity {
  std::vector<DensityPiece> pieces;
};

struct BoundReport {
  int bound = 0;      // N = ceil(max component count / 2)
  int count_max = 0;  // the achieved supremum of the level-set component count
  std::vector<double> critical_values;  // positive finite piece limits
  double witness_y = 0.0;               // probe achieving the supremum
};

std::vector<std::string> validate(const PiecewiseMonotoneDensity& d);

/// Number of connected components of {x : (x,y) in the modified graph}.
/// y must be positive and distinct from every finite piece limit; callers
/// probing near a critical value must perturb first.
int level_component_count(const PiecewiseMonotoneDensity& d, double y);

/// Horizontal-line-test bound on the number of inverses: the supremum of the
/// level component count over non-critical y > 0, evaluated at band midpoints
/// between consecutive critical values and once above the largest one.
BoundReport inverse_count_bound(const PiecewiseMonotoneDensity& d);

/// Builds a piecewise description from noiseless samples (sign changes of
/// successive differences; plateau runs collapse to constant pieces) and
/// delegates to inverse_count_bound. An estimate, not a certificate.
BoundReport bound_from_samples(const std::vector<double>& xs, const std::vector<double>& ys);

/// The intermediate piece list used by bound_from_samples.
PiecewiseMonotoneDensity pieces_from_samples(const std::vector<double>& xs,
                                             const std::vector<double>& ys);

}  // namespace stieltjes
