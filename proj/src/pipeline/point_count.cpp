#include "jointlab/errors.hpp"
#include "steps.hpp"

#include <algorithm>

namespace jointlab {

namespace {

using steps::from_count;

constexpr int kMaxDepth = 16;

class PointCountTracer {
 public:
  explicit PointCountTracer(const PipelineConfig& cfg) : cfg_(cfg), sampler_(cfg.rng_seed) {}

  std::vector<TraceRecord> run(const Instance& inst) {
    TraceRecord h{"header", 0, {}, {}, {}, {}};
    h.add("procedure", std::string("point_count"));
    h.add("seed", std::to_string(cfg_.rng_seed));
    h.add("c", cfg_.c);
    h.add("t", cfg_.t);
    h.add("A", cfg_.A);
    h.add("b", cfg_.b);
    h.add("n0", cfg_.n0);
    h.add("note", std::string("desk scale: each step is checked exactly; the asymptotic regime is not reached"));
    for (const auto& ch : config_constraints(cfg_)) h.checks.push_back(ch);
    out_.push_back(std::move(h));
    level(inst, 0);
    return std::move(out_);
  }

 private:
  TraceRecord& emit(std::string step, int depth) {
    out_.push_back(TraceRecord{std::move(step), depth, {}, {}, {}, {}});
    return out_.back();
  }

  void level(const Instance& inst, int depth);

  const PipelineConfig& cfg_;
  steps::Sampler sampler_;
  std::vector<TraceRecord> out_;
};

void PointCountTracer::level(const Instance& inst, int depth) {
  const IncidenceStructure s = build(inst);
  const std::size_t n = s.lines().size();
  const std::size_t m = s.points().size();
  const Rational N = from_count(n), M = from_count(m);
  const Rational& c = cfg_.c;
  const Rational& t = cfg_.t;

  {
    TraceRecord& r = emit("level", depth);
    r.add("lines", n);
    r.add("points", m);
    r.add("incidences", s.incidences());
  }

  steps::HypothesisOutcome hyp = steps::check_hypotheses(s, cfg_.b, depth);
  if (!hyp.holds && depth == 0) throw HypothesisError(hyp.witness);
  out_.push_back(std::move(hyp.record));

  if (n <= cfg_.n0) {
    TraceRecord& r = emit("base_case", depth);
    r.add("lines", n);
    r.add("points", m);
    r.checks.push_back(make_check("points_within_line_pairs", M, "<=", N * (N - 1) / 2));
    r.checks.push_back(make_check("points_within_bound.squared", M * M, "<=", cfg_.A * cfg_.A * N * N * N));
    return;
  }

  // Pruning: drop lines with fewer than c sqrt(n) live points, with their points.
  steps::LiveIncidence live(s);
  const Rational threshold_sq = c * c * N;
  const std::size_t before = live.incidences();
  std::size_t charged = 0, lines_removed = 0, points_removed = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (!live.line_alive(j)) continue;
      const Rational nu = from_count(live.nu(j));
      if (nu * nu >= threshold_sq) continue;
      for (std::size_t i : live.points_on(j)) {
        if (!live.point_alive(i)) continue;
        charged += live.remove_point(i);
        ++points_removed;
      }
      charged += live.remove_line(j);
      ++lines_removed;
      changed = true;
    }
  }
  const std::size_t after = live.recount();
  const std::size_t n1 = live.alive_lines();
  std::size_t min_nu = 0, min_mu = 0;
  bool first_line = true, first_point = true;
  for (std::size_t j = 0; j < n; ++j) {
    if (!live.line_alive(j)) continue;
    min_nu = first_line ? live.nu(j) : std::min(min_nu, live.nu(j));
    first_line = false;
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!live.point_alive(i)) continue;
    min_mu = first_point ? live.mu(i) : std::min(min_mu, live.mu(i));
    first_point = false;
  }
  {
    TraceRecord& r = emit("pruning", depth);
    r.add("threshold.squared", threshold_sq);
    r.add("lines_removed", lines_removed);
    r.add("points_removed", points_removed);
    r.add("lines_left", n1);
    r.add("points_left", live.alive_points());
    r.add("incidences_before", before);
    r.add("incidences_after", after);
    r.add("incidences_charged", charged);
    const Check conserve = make_check("conservation", from_count(before), "=", from_count(after + charged));
    r.checks.push_back(conserve);
    const Rational pr = from_count(points_removed);
    r.checks.push_back(make_check("removed_points.squared", pr * pr, "<=", c * c * N * N * N));
    if (n1 > 0) {
      const Rational mn = from_count(min_nu);
      r.checks.push_back(make_check("survivor_line_points.squared", mn * mn, ">=", threshold_sq));
      r.checks.push_back(make_check("survivor_point_lines", from_count(min_mu), ">=", 3));
      const Rational l1 = from_count(n1);
      r.checks.push_back(make_check("lines_left_vs_2c_sqrt_n.squared", l1 * l1, ">=", 4 * c * c * N));
    }
    if (!conserve.holds) throw InvariantError("pruning conservation failed: " + serialize(r));
    if (hyp.holds && n1 > 0 && min_mu < 3) {
      throw InvariantError("pruning left a point on fewer than three lines: " + serialize(r));
    }
  }
  if (n1 == 0) {
    TraceRecord& r = emit("result", depth);
    r.add("outcome", std::string("pruned_empty"));
    r.add("points", m);
    r.add("points_removed_by_pruning", points_removed);
    r.checks.push_back(make_check("points_accounted", M, "=", from_count(points_removed + live.alive_points())));
    r.checks.push_back(make_check("points_within_bound.squared", M * M, "<=", cfg_.A * cfg_.A * N * N * N));
    return;
  }

  // Sampling lines with probability t until both sample properties hold.
  std::vector<std::size_t> alive_lines;
  for (std::size_t j = 0; j < n; ++j) {
    if (live.line_alive(j)) alive_lines.push_back(j);
  }
  const Rational L1 = from_count(n1);
  std::vector<bool> sampled(n, false);
  bool accepted = false;
  for (std::size_t attempt = 1; attempt <= cfg_.max_retries && !accepted; ++attempt) {
    std::fill(sampled.begin(), sampled.end(), false);
    std::size_t size = 0;
    for (std::size_t j : alive_lines) {
      if (sampler_.draw(t)) {
        sampled[j] = true;
        ++size;
      }
    }
    std::size_t min_hits = 0;
    bool first = true;
    for (std::size_t j : alive_lines) {
      std::size_t hits = 0;
      for (std::size_t i : live.points_on(j)) {
        if (!live.point_alive(i)) continue;
        for (std::size_t k : s.lines_at(i)) {
          if (live.line_alive(k) && sampled[k]) {
            ++hits;
            break;
          }
        }
      }
      min_hits = first ? hits : std::min(min_hits, hits);
      first = false;
    }
    TraceRecord& r = emit("sample", depth);
    r.add("attempt", attempt);
    r.add("sampled_lines", size);
    r.add("min_hits", min_hits);
    const Rational sz = from_count(size), mh = from_count(min_hits);
    const Check lo = make_check("sample_size_low", sz, ">=", t * L1 / 2);
    const Check hi = make_check("sample_size_high", sz, "<=", 2 * t * L1);
    const Check hits = make_check("hits_per_line.squared", mh * mh, ">=", (c * t / 2) * (c * t / 2) * N);
    r.checks.insert(r.checks.end(), {lo, hi, hits});
    accepted = lo.holds && hi.holds && hits.holds;
  }
  if (!accepted) {
    TraceRecord& r = emit("sampling_failure", depth);
    r.add("attempts", cfg_.max_retries);
    TraceRecord& res = emit("result", depth);
    res.add("outcome", std::string("sampling_failed"));
    res.add("points", m);
    return;
  }

  // S: ceil(sqrt(n)) points along each sampled line.
  const std::size_t per_line = steps::ceil_sqrt(n);
  std::vector<Point3> sample_points;
  std::vector<Line3> sampled_lines;
  for (std::size_t j : alive_lines) {
    if (!sampled[j]) continue;
    sampled_lines.push_back(s.lines()[j]);
    for (auto& a : steps::points_along(s.lines()[j], per_line)) sample_points.push_back(std::move(a));
  }
  std::sort(sample_points.begin(), sample_points.end());
  sample_points.erase(std::unique(sample_points.begin(), sample_points.end()), sample_points.end());
  {
    TraceRecord& r = emit("sample_points", depth);
    r.add("per_line", per_line);
    r.add("points", sample_points.size());
    const Rational sz = from_count(sample_points.size());
    r.checks.push_back(make_check("sample_points.squared", sz * sz, "<=", 4 * t * t * N * N * N));
  }

  const MultiPoly3 p = fit_vanishing_poly(sample_points);
  const int d = p.degree();
  const Rational D(d);
  {
    TraceRecord& r = emit("fit", depth);
    steps::add_fit_fields(r, p, sample_points.size());
    r.checks.push_back(make_check("degree_vs_sqrt_n.sixth", D * D * D * D * D * D, "<=", 9216 * t * t * N * N * N));
  }

  // p vanishes on a line once it has more than d zeros there.
  const bool sampled_prereq = per_line > static_cast<std::size_t>(d);
  {
    TraceRecord& r = emit("vanish_sampled", depth);
    const Check pre = make_check("points_per_sampled_line_exceed_degree", from_count(per_line), ">", D);
    r.checks.push_back(pre);
    if (sampled_prereq) {
      std::size_t ok = 0;
      for (const auto& l : sampled_lines) ok += vanishes_on_line(p, l) ? 1 : 0;
      r.add("claimed", sampled_lines.size());
      r.add("verified", ok);
      r.poly = p;
      r.vanishing_lines = sampled_lines;
      const Check v = make_check("all_claims_verified", from_count(ok), "=", from_count(sampled_lines.size()));
      r.checks.push_back(v);
      if (!v.holds) throw InvariantError("fitted polynomial misses a sampled line: " + serialize(r));
    } else {
      r.add("claimed", std::size_t{0});
      r.add("claim", std::string("withheld"));
    }
  }
  {
    TraceRecord& r = emit("vanish_all", depth);
    std::vector<Line3> claimed;
    std::size_t unclaimed = 0;
    if (sampled_prereq) {
      for (std::size_t j : alive_lines) {
        std::size_t zeros = 0;
        for (std::size_t i : live.points_on(j)) {
          if (!live.point_alive(i)) continue;
          for (std::size_t k : s.lines_at(i)) {
            if (live.line_alive(k) && sampled[k]) {
              ++zeros;
              break;
            }
          }
        }
        if (sampled[j] || zeros > static_cast<std::size_t>(d)) {
          claimed.push_back(s.lines()[j]);
        } else {
          ++unclaimed;
        }
      }
    } else {
      unclaimed = alive_lines.size();
    }
    std::size_t ok = 0;
    for (const auto& l : claimed) ok += vanishes_on_line(p, l) ? 1 : 0;
    r.add("claimed", claimed.size());
    r.add("unclaimed", unclaimed);
    r.add("verified", ok);
    const Check v = make_check("all_claims_verified", from_count(ok), "=", from_count(claimed.size()));
    r.checks.push_back(v);
    r.checks.push_back(make_check("min_points_per_line_vs_5d", from_count(min_nu), ">=", 5 * D));
    if (!claimed.empty()) {
      r.poly = p;
      r.vanishing_lines = std::move(claimed);
    }
    if (!v.holds) throw InvariantError("fitted polynomial misses a claimed line: " + serialize(r));
  }

  // Remove the planes of the linear factors with their lines and points.
  const steps::PlaneSplit split = steps::split_by_planes(p, live);
  std::size_t lines_in_planes = 0, points_in_planes = 0;
  for (std::size_t j = 0; j < n; ++j) lines_in_planes += split.line_in_plane[j] ? 1 : 0;
  for (std::size_t i = 0; i < m; ++i) points_in_planes += split.point_in_plane[i] ? 1 : 0;
  {
    TraceRecord& r = emit("planes", depth);
    r.add("count", split.planes.size());
    r.add("planes", steps::join_planes(split.planes));
    r.add("lines_in_planes", lines_in_planes);
    r.add("points_in_planes", points_in_planes);
    r.add("residual", poly_digest(split.residual));
    r.checks.push_back(make_check("planes_within_degree", from_count(split.planes.size()), "<=", D));
    r.checks.push_back(make_check("points_in_planes_vs_bnd", from_count(points_in_planes), "<=", cfg_.b * N * D));
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (split.point_in_plane[i]) live.remove_point(i);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (split.line_in_plane[j]) live.remove_line(j);
  }
  const std::size_t n_left = live.alive_lines();
  const std::size_t m_left = live.alive_points();
  std::vector<Line3> left_lines;
  std::vector<Point3> left_points;
  std::size_t left_min_mu = 3;
  for (std::size_t j = 0; j < n; ++j) {
    if (live.line_alive(j)) left_lines.push_back(s.lines()[j]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!live.point_alive(i)) continue;
    left_points.push_back(s.points()[i]);
    left_min_mu = std::min(left_min_mu, live.mu(i));
  }
  {
    TraceRecord& r = emit("plane_removal", depth);
    r.add("lines_left", n_left);
    r.add("points_left", m_left);
    const Check three = make_check("three_lines_per_point_left", from_count(m_left ? left_min_mu : 3), ">=", 3);
    r.checks.push_back(three);
    r.checks.push_back(make_check("fewer_lines", from_count(n_left), "<", N));
    if (!left_points.empty() && left_points.size() <= kRichestPlaneLimit) {
      const RichestPlane rp = richest_plane(left_points);
      const long dd = d;
      r.add("richest_plane_points", rp.count);
      r.checks.push_back(make_check("plane_points_vs_2d2_plus_pairs", from_count(rp.count), "<=",
                                    Rational(2 * dd * dd + dd * (dd - 1) / 2)));
      r.checks.push_back(make_check("plane_points_vs_4bd2", from_count(rp.count), "<=", 4 * cfg_.b * D * D));
    }
    if (hyp.holds && !three.holds) {
      throw InvariantError("plane removal left a point on fewer than three lines: " + serialize(r));
    }
  }
  {
    TraceRecord& r = emit("census", depth);
    const Surface reduced(split.residual);
    const auto counts = steps::classify_lines(reduced, left_lines);
    steps::record_census(r, counts, split.residual.degree(), d, false);
  }

  {
    TraceRecord& r = emit("recurse", depth);
    r.add("lines", n_left);
    r.add("points", m_left);
    const bool go = n_left > 0 && n_left < n && depth + 1 <= kMaxDepth;
    r.add("action", std::string(go ? "descend" : "stop"));
  }
  if (n_left > 0 && n_left < n && depth + 1 <= kMaxDepth) {
    level(Instance{left_points, left_lines}, depth + 1);
  }

  TraceRecord& r = emit("result", depth);
  r.add("outcome", std::string("completed"));
  r.add("points", m);
  r.add("points_removed_by_pruning", points_removed);
  r.add("points_in_planes", points_in_planes);
  r.add("points_left", m_left);
  r.checks.push_back(make_check("points_accounted", M, "=", from_count(points_removed + points_in_planes + m_left)));
  r.checks.push_back(make_check("points_within_bound.squared", M * M, "<=", cfg_.A * cfg_.A * N * N * N));
}

}  // namespace

std::vector<TraceRecord> trace_thm9(const Instance& inst, const PipelineConfig& cfg) {
  validate_config(cfg);
  return PointCountTracer(cfg).run(inst);
}

}  // namespace jointlab
