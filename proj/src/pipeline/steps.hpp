#pragma once

// Pieces shared by the tracers.

#include "jointlab/pipeline.hpp"
#include "jointlab/polymethod.hpp"

#include <random>

namespace jointlab::steps {

/// Removal bookkeeping on top of a fixed incidence structure.
class LiveIncidence {
 public:
  explicit LiveIncidence(const IncidenceStructure& s);

  const IncidenceStructure& base() const { return *s_; }
  bool point_alive(std::size_t i) const { return point_alive_[i]; }
  bool line_alive(std::size_t j) const { return line_alive_[j]; }
  std::size_t mu(std::size_t i) const { return mu_[i]; }
  std::size_t nu(std::size_t j) const { return nu_[j]; }
  std::size_t incidences() const { return total_; }
  std::size_t alive_points() const { return alive_points_; }
  std::size_t alive_lines() const { return alive_lines_; }
  const std::vector<std::size_t>& points_on(std::size_t j) const { return points_on_[j]; }

  /// Each returns the live incidences destroyed.
  std::size_t remove_line(std::size_t j);
  std::size_t remove_point(std::size_t i);

  /// Live incidences recounted from scratch.
  std::size_t recount() const;
  Instance snapshot() const;

 private:
  const IncidenceStructure* s_;
  std::vector<std::vector<std::size_t>> points_on_;
  std::vector<bool> point_alive_, line_alive_;
  std::vector<std::size_t> mu_, nu_;
  std::size_t total_ = 0;
  std::size_t alive_points_ = 0, alive_lines_ = 0;
};

/// Exact Bernoulli(t) draws from a 64-bit Mersenne twister.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  bool draw(const Rational& t);

 private:
  std::mt19937_64 rng_;
};

Rational from_count(std::size_t n);

/// Distinct points at parameters 0, 1, ..., count - 1 along l.
std::vector<Point3> points_along(const Line3& l, std::size_t count);

/// Smallest s >= 0 with s^2 >= n.
std::size_t ceil_sqrt(std::size_t n);

struct PlaneSplit {
  std::vector<Plane3> planes;
  MultiPoly3 residual;
  std::vector<bool> line_in_plane;   // by structure line index
  std::vector<bool> point_in_plane;  // by structure point index
};

/// Linear factors of p and which live lines/points lie in their planes.
PlaneSplit split_by_planes(const MultiPoly3& p, const LiveIncidence& live);

struct LineCensusCounts {
  std::size_t crossing = 0, critical = 0, flat = 0, ordinary = 0;
};

LineCensusCounts classify_lines(const Surface& s, const std::vector<Line3>& lines);

/// Adds degree / census fields and the bound checks to `r`. Throws
/// InvariantError when an applicable bound fails.
void record_census(TraceRecord& r, const LineCensusCounts& c, int reduced_degree, int degree,
                   bool reduced_has_linear_factors);

void add_fit_fields(TraceRecord& r, const MultiPoly3& p, std::size_t fitted_points);

std::string join_planes(const std::vector<Plane3>& planes);

struct HypothesisOutcome {
  TraceRecord record;
  bool holds = true;
  std::string witness;  // empty when holds
};

/// Plane-richness and three-lines-per-point conditions on s.
HypothesisOutcome check_hypotheses(const IncidenceStructure& s, const Rational& b, int depth);

}  // namespace jointlab::steps
