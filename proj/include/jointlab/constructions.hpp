#pragma once

// Generators for the extremal point/line configurations, each carrying the
// counts it is expected to produce.

#include "jointlab/incidence.hpp"

#include <string>
#include <utility>
#include <vector>

namespace jointlab {

struct PredictedCounts {
  std::size_t lines = 0;
  std::size_t points = 0;
  std::size_t joints = 0;
  std::size_t incidences = 0;
};

struct GeneratedInstance {
  Instance instance;
  PredictedCounts predicted;
  std::string label;  // e.g. "grid k=2"
  /// Extra exact quantities reported by some generators, as (key, value).
  std::vector<std::pair<std::string, std::string>> report;
};

/// Axis-parallel lines through {1..k}^3. k = 0 -> DegenerateInputError.
GeneratedInstance gen_grid(int k);
/// Points {1..N} x {1..2N^2} x {0}; lines y = a x + b, a in 1..N, b in 1..N^2.
GeneratedInstance gen_st_planar(int n);
/// Planar points on >= 2 planar lines, each with an added vertical line.
GeneratedInstance gen_joint_lb_small(int n);
/// The filtered planar configuration copied to z = 0..t-1, plus one vertical
/// line through each column of points.
GeneratedInstance gen_joint_lb_stacked(int n, int t);
/// Rulings of z = xy: (s, i, i s) and (j, s, j s) for i, j in 1..r, and their
/// r^2 crossing points.
GeneratedInstance gen_paraboloid(int r);
/// The k-grid with per-line point counts and per-plane line counts reported
/// against the square-root thresholds.
GeneratedInstance gen_bourgain_grid(int k);

}  // namespace jointlab
