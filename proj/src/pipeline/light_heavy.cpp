#include "jointlab/errors.hpp"
#include "steps.hpp"

#include <algorithm>

namespace jointlab {

namespace {

using steps::from_count;

bool spans_space(const std::vector<const IVec3*>& dirs) {
  for (std::size_t a = 0; a < dirs.size(); ++a) {
    for (std::size_t b = a + 1; b < dirs.size(); ++b) {
      for (std::size_t c = b + 1; c < dirs.size(); ++c) {
        if (directions_independent(*dirs[a], *dirs[b], *dirs[c])) return true;
      }
    }
  }
  return false;
}

class LightHeavyTracer {
 public:
  explicit LightHeavyTracer(const PipelineConfig& cfg) : cfg_(cfg) {}

  std::vector<TraceRecord> run(const Instance& inst);

 private:
  TraceRecord& emit(std::string step) {
    out_.push_back(TraceRecord{std::move(step), 0, {}, {}, {}, {}});
    return out_.back();
  }

  const PipelineConfig& cfg_;
  std::vector<TraceRecord> out_;
};

std::vector<TraceRecord> LightHeavyTracer::run(const Instance& inst) {
  const IncidenceStructure s = build(inst);
  const std::size_t n = s.lines().size();
  const std::size_t m = s.points().size();
  const Rational N = from_count(n), M = from_count(m);
  const Rational n_cubed = N * N * N;

  {
    TraceRecord& h = emit("header");
    h.add("procedure", std::string("light_heavy"));
    h.add("lines", n);
    h.add("points", m);
    h.add("incidences", s.incidences());
    h.add("note", std::string("desk scale: each step is checked exactly; the asymptotic regime is not reached"));
  }

  // Hypotheses, with the constant each one would need.
  {
    TraceRecord& r = emit("hypotheses");
    std::size_t min_nu = n ? s.line_richness(0) : 0;
    for (std::size_t j = 0; j < n; ++j) min_nu = std::min(min_nu, s.line_richness(j));
    const PlaneOfLines pl = richest_plane_of_lines(s.lines());
    r.add("min_points_per_line", min_nu);
    r.add("max_lines_per_plane", pl.count);
    if (pl.plane) r.add("richest_plane", to_string(*pl.plane));
    const Rational mn = from_count(min_nu), pc = from_count(pl.count);
    if (n > 0) {
      r.add("points_per_line_sq_over_n", mn * mn / N);
      r.add("lines_per_plane_sq_over_n", pc * pc / N);
    }
    r.checks.push_back(make_check("rich_lines.squared", mn * mn, ">=", N));
    r.checks.push_back(make_check("few_lines_per_plane.squared", pc * pc, "<=", N));
  }

  // nu = sqrt(n)/2: heavy points have three lines, heavy lines nu heavy points.
  std::vector<bool> heavy_point(m, false), heavy_line(n, false);
  std::size_t heavy_points = 0, heavy_lines = 0;
  for (std::size_t i = 0; i < m; ++i) {
    heavy_point[i] = s.multiplicity(i) >= 3;
    heavy_points += heavy_point[i] ? 1 : 0;
  }
  std::vector<std::vector<std::size_t>> points_on(n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j : s.lines_at(i)) points_on[j].push_back(i);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t h = 0;
    for (std::size_t i : points_on[j]) h += heavy_point[i] ? 1 : 0;
    const Rational H = from_count(h);
    heavy_line[j] = 4 * H * H >= N;
    heavy_lines += heavy_line[j] ? 1 : 0;
  }
  const std::size_t light_lines = n - heavy_lines;
  {
    TraceRecord& r = emit("classify");
    r.add("threshold.squared", N / 4);
    r.add("heavy_points", heavy_points);
    r.add("light_points", m - heavy_points);
    r.add("heavy_lines", heavy_lines);
    r.add("light_lines", light_lines);
  }

  if (2 * light_lines >= n) {
    std::size_t light_incidences = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (heavy_line[j]) continue;
      for (std::size_t i : points_on[j]) light_incidences += heavy_point[i] ? 0 : 1;
    }
    const Rational LI = from_count(light_incidences);
    TraceRecord& r = emit("light_branch");
    r.add("light_line_incidences", light_incidences);
    r.checks.push_back(make_check("light_incidences.squared", 16 * LI * LI, ">=", n_cubed));
    r.checks.push_back(make_check("light_points_cover_incidences", 2 * from_count(m - heavy_points), ">=", LI));
    TraceRecord& res = emit("result");
    res.add("branch", std::string("light"));
    res.add("points", m);
    res.checks.push_back(make_check("points_lower_bound.squared", 64 * M * M, ">=", n_cubed));
    return std::move(out_);
  }

  // Heavy branch: keep heavy lines and the points still on them.
  std::vector<bool> p1(m, false), l1(heavy_line);
  std::vector<Point3> fit_points;
  std::vector<std::size_t> l1_idx;
  for (std::size_t j = 0; j < n; ++j) {
    if (l1[j]) l1_idx.push_back(j);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j : s.lines_at(i)) {
      if (l1[j]) {
        p1[i] = true;
        break;
      }
    }
    if (p1[i]) fit_points.push_back(s.points()[i]);
  }
  const std::size_t n1 = l1_idx.size();
  const std::size_t m1 = fit_points.size();
  {
    TraceRecord& r = emit("heavy_branch");
    r.add("lines_kept", n1);
    r.add("points_kept", m1);
    r.checks.push_back(make_check("half_the_lines", 2 * from_count(n1), ">=", N));
  }

  const MultiPoly3 p = fit_vanishing_poly(fit_points);
  const int d = p.degree();
  const Rational D(d);
  bool guards_hold = true;
  {
    TraceRecord& r = emit("fit");
    steps::add_fit_fields(r, p, m1);
    const Check g1 = make_check("threshold_exceeds_10d.squared", N, ">", 400 * D * D);
    const Check g2 = make_check("thirty_two_d2_below_n", 32 * D * D, "<", N);
    r.checks.push_back(g1);
    r.checks.push_back(g2);
    guards_hold = g1.holds && g2.holds;
  }
  if (!guards_hold && !cfg_.continue_past_guards) {
    TraceRecord& res = emit("result");
    res.add("branch", std::string("heavy"));
    res.add("outcome", std::string("degree_guard"));
    res.add("points", m);
    res.checks.push_back(make_check("points_at_least_kept", M, ">=", from_count(m1)));
    res.checks.push_back(make_check("points_lower_bound.squared", 4096 * M * M, ">=", n_cubed));
    return std::move(out_);
  }

  {
    TraceRecord& r = emit("vanish");
    std::vector<Line3> claimed;
    std::size_t unclaimed = 0, min_on = 0;
    bool first = true;
    for (std::size_t j : l1_idx) {
      const std::size_t on = points_on[j].size();
      min_on = first ? on : std::min(min_on, on);
      first = false;
      if (on > static_cast<std::size_t>(d)) {
        claimed.push_back(s.lines()[j]);
      } else {
        ++unclaimed;
      }
    }
    std::size_t ok = 0;
    for (const auto& l : claimed) ok += vanishes_on_line(p, l) ? 1 : 0;
    r.checks.push_back(make_check("points_per_line_exceed_degree", from_count(min_on), ">", D));
    r.add("claimed", claimed.size());
    r.add("unclaimed", unclaimed);
    r.add("verified", ok);
    const Check v = make_check("all_claims_verified", from_count(ok), "=", from_count(claimed.size()));
    r.checks.push_back(v);
    if (!claimed.empty()) {
      r.poly = p;
      r.vanishing_lines = std::move(claimed);
    }
    if (!v.holds) throw InvariantError("fitted polynomial misses a claimed line: " + serialize(r));
  }

  // Remove the vanishing planes.
  steps::LiveIncidence live(s);
  for (std::size_t i = 0; i < m; ++i) {
    if (!p1[i]) live.remove_point(i);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!l1[j]) live.remove_line(j);
  }
  const steps::PlaneSplit split = steps::split_by_planes(p, live);
  std::vector<bool> p2(m, false), l2(n, false);
  std::size_t lines_in_planes = 0;
  for (std::size_t j : l1_idx) {
    l2[j] = !split.line_in_plane[j];
    lines_in_planes += l2[j] ? 0 : 1;
  }
  for (std::size_t i = 0; i < m; ++i) p2[i] = p1[i] && !split.point_in_plane[i];
  const std::size_t n2 = n1 - lines_in_planes;
  {
    TraceRecord& r = emit("planes");
    r.add("count", split.planes.size());
    r.add("planes", steps::join_planes(split.planes));
    r.add("lines_in_planes", lines_in_planes);
    r.add("lines_left", n2);
    r.add("residual", poly_digest(split.residual));
    const Rational LP = from_count(lines_in_planes);
    r.checks.push_back(make_check("lines_in_planes.squared", LP * LP, "<=", D * D * N));
    r.checks.push_back(make_check("quarter_of_lines_left", 4 * from_count(n2), ">=", N));
  }

  // Points of P2 by their L2 lines: light (at most two), spanning, or coplanar.
  const Surface reduced(split.residual);
  std::vector<bool> light_p2(m, false);
  std::size_t light = 0, spanning = 0, coplanar = 0, spanning_critical = 0, coplanar_special = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!p2[i]) continue;
    std::vector<const IVec3*> dirs;
    for (std::size_t j : s.lines_at(i)) {
      if (l2[j]) dirs.push_back(&s.lines()[j].direction);
    }
    if (dirs.size() <= 2) {
      light_p2[i] = true;
      ++light;
      continue;
    }
    const PointKind k = reduced.classify_point(s.points()[i]).kind;
    if (spans_space(dirs)) {
      ++spanning;
      spanning_critical += k == PointKind::Critical ? 1 : 0;
    } else {
      ++coplanar;
      coplanar_special += (k == PointKind::Critical || k == PointKind::Flat) ? 1 : 0;
    }
  }
  {
    TraceRecord& r = emit("point_census");
    r.add("light_points", light);
    r.add("spanning_points", spanning);
    r.add("coplanar_points", coplanar);
    r.checks.push_back(make_check("spanning_points_critical", from_count(spanning_critical), "=", from_count(spanning)));
    r.checks.push_back(make_check("coplanar_points_critical_or_flat", from_count(coplanar_special), "=",
                                  from_count(coplanar)));
  }

  std::vector<Line3> l2_lines;
  std::size_t light_l2 = 0, light_incidences = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (!l2[j]) continue;
    l2_lines.push_back(s.lines()[j]);
    std::size_t lp = 0;
    for (std::size_t i : points_on[j]) lp += light_p2[i] ? 1 : 0;
    const Rational LP = from_count(lp);
    if (16 * LP * LP >= N) {
      ++light_l2;
      light_incidences += lp;
    }
  }
  {
    TraceRecord& r = emit("census");
    steps::record_census(r, steps::classify_lines(reduced, l2_lines), split.residual.degree(), d, false);
    r.checks.push_back(make_check("four_d2_below_eighth", 32 * D * D, "<", N));
    r.add("light_lines", light_l2);
    r.checks.push_back(make_check("light_lines_eighth", 8 * from_count(light_l2), ">=", N));
  }

  TraceRecord& res = emit("result");
  const Rational LI = from_count(light_incidences);
  const Rational LPts = from_count(light);
  res.add("branch", std::string("heavy"));
  res.add("outcome", std::string("completed"));
  res.add("light_incidences", light_incidences);
  res.add("light_points", light);
  res.add("points", m);
  res.checks.push_back(make_check("light_incidences.squared", 1024 * LI * LI, ">=", n_cubed));
  res.checks.push_back(make_check("light_points.squared", 4096 * LPts * LPts, ">=", n_cubed));
  res.checks.push_back(make_check("points_lower_bound.squared", 4096 * M * M, ">=", n_cubed));
  return std::move(out_);
}

}  // namespace

std::vector<TraceRecord> trace_bourgain(const Instance& inst, const PipelineConfig& cfg) {
  if (inst.points.empty() && inst.lines.empty()) return {};
  return LightHeavyTracer(cfg).run(inst);
}

}  // namespace jointlab
