#include "jointlab/errors.hpp"
#include "steps.hpp"

#include <algorithm>

namespace jointlab {

namespace {

using steps::from_count;

constexpr int kMaxDepth = 16;

Rational cube(const Rational& x) { return x * x * x; }

class IncidenceTracer {
 public:
  explicit IncidenceTracer(const PipelineConfig& cfg) : cfg_(cfg), sampler_(cfg.rng_seed) {}

  std::vector<TraceRecord> run(const Instance& inst) {
    TraceRecord h{"header", 0, {}, {}, {}, {}};
    h.add("procedure", std::string("incidence_count"));
    h.add("seed", std::to_string(cfg_.rng_seed));
    h.add("c", cfg_.c);
    h.add("t", cfg_.t);
    h.add("A", cfg_.A);
    h.add("b", cfg_.b);
    h.add("n0", cfg_.n0);
    h.add("sampling", std::string(cfg_.no_sampling ? "off" : "on"));
    h.add("note", std::string("desk scale: each step is checked exactly; the asymptotic regime is not reached"));
    for (const auto& ch : config_constraints(cfg_, true)) h.checks.push_back(ch);
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

// Incidences between the marked points and the marked lines of s.
std::size_t incidences_between(const IncidenceStructure& s, const std::vector<bool>& points,
                               const std::vector<bool>& lines) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.points().size(); ++i) {
    if (!points[i]) continue;
    for (std::size_t j : s.lines_at(i)) n += lines[j] ? 1 : 0;
  }
  return n;
}

void IncidenceTracer::level(const Instance& inst, int depth) {
  const IncidenceStructure s = build(inst);
  const std::size_t n = s.lines().size();
  const std::size_t m = s.points().size();
  const std::size_t total = s.incidences();
  const Rational N = from_count(n), M = from_count(m), I = from_count(total);
  const Rational& c = cfg_.c;
  const Rational& t = cfg_.t;
  const Rational bound_cubed = cube(cfg_.A) * M * N * N * N;

  {
    TraceRecord& r = emit("level", depth);
    r.add("lines", n);
    r.add("points", m);
    r.add("incidences", total);
    r.checks.push_back(make_check("points_at_least_lines", M, ">=", N));
  }

  steps::HypothesisOutcome hyp = steps::check_hypotheses(s, cfg_.b, depth);
  if (!hyp.holds && depth == 0) throw HypothesisError(hyp.witness);
  out_.push_back(std::move(hyp.record));

  if (n <= cfg_.n0) {
    TraceRecord& r = emit("base_case", depth);
    r.add("lines", n);
    r.add("points", m);
    r.add("incidences", total);
    r.checks.push_back(make_check("incidences_within_mn", I, "<=", M * N));
    r.checks.push_back(make_check("incidences_within_bound.cubed", I * I * I, "<=", bound_cubed));
    return;
  }

  // Pruning at the fixed threshold c m^(1/3); a point goes once it has lost
  // half (rounded down, at least one) of its original lines.
  steps::LiveIncidence live(s);
  const Rational threshold_cubed = cube(c) * M;
  std::vector<std::size_t> lost_lines(m, 0);
  const std::size_t before = live.incidences();
  std::size_t charged = 0, lines_removed = 0, points_removed = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (!live.line_alive(j)) continue;
      const Rational nu = from_count(live.nu(j));
      if (cube(nu) >= threshold_cubed) continue;
      charged += live.remove_line(j);
      ++lines_removed;
      changed = true;
      for (std::size_t i : live.points_on(j)) {
        if (!live.point_alive(i)) continue;
        const std::size_t allowed = std::max<std::size_t>(1, s.multiplicity(i) / 2);
        if (++lost_lines[i] >= allowed) {
          charged += live.remove_point(i);
          ++points_removed;
        }
      }
    }
  }
  const std::size_t after = live.recount();
  const std::size_t n1 = live.alive_lines();
  const std::size_t m1 = live.alive_points();
  std::size_t min_nu = 0, min_mu = 3;
  bool first_line = true;
  for (std::size_t j = 0; j < n; ++j) {
    if (!live.line_alive(j)) continue;
    min_nu = first_line ? live.nu(j) : std::min(min_nu, live.nu(j));
    first_line = false;
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (live.point_alive(i)) min_mu = std::min(min_mu, live.mu(i));
  }
  {
    TraceRecord& r = emit("pruning", depth);
    r.add("threshold.cubed", threshold_cubed);
    r.add("lines_removed", lines_removed);
    r.add("points_removed", points_removed);
    r.add("lines_left", n1);
    r.add("points_left", m1);
    r.add("incidences_before", before);
    r.add("incidences_after", after);
    r.add("incidences_charged", charged);
    const Check conserve = make_check("conservation", from_count(before), "=", from_count(after + charged));
    r.checks.push_back(conserve);
    r.checks.push_back(make_check("lost_incidences.cubed", cube(from_count(charged)), "<=",
                                  27 * cube(c) * M * N * N * N));
    if (n1 > 0) {
      r.checks.push_back(make_check("survivor_line_points.cubed", cube(from_count(min_nu)), ">=", threshold_cubed));
    }
    const Check three = make_check("survivor_point_lines", from_count(m1 ? min_mu : 3), ">=", 3);
    r.checks.push_back(three);
    if (!conserve.holds) throw InvariantError("pruning conservation failed: " + serialize(r));
    if (hyp.holds && !three.holds) {
      throw InvariantError("pruning left a point on fewer than three lines: " + serialize(r));
    }
  }
  if (n1 == 0 || m1 == 0) {
    TraceRecord& r = emit("result", depth);
    r.add("outcome", std::string("pruned_empty"));
    r.add("incidences", total);
    r.add("incidences_pruned", charged);
    r.add("incidences_left", after);
    r.checks.push_back(make_check("incidences_accounted", I, "=", from_count(charged + after)));
    r.checks.push_back(make_check("incidences_within_bound.cubed", I * I * I, "<=", bound_cubed));
    return;
  }

  std::vector<std::size_t> alive_points, alive_lines;
  for (std::size_t i = 0; i < m; ++i) {
    if (live.point_alive(i)) alive_points.push_back(i);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (live.line_alive(j)) alive_lines.push_back(j);
  }
  auto hits_on = [&](std::size_t j, const std::vector<bool>& chosen) {
    std::size_t h = 0;
    for (std::size_t i : live.points_on(j)) h += (live.point_alive(i) && chosen[i]) ? 1 : 0;
    return h;
  };

  // Points to fit: a Bernoulli(t) sample of P1, or all of P1.
  std::vector<bool> chosen(m, false);
  if (cfg_.no_sampling) {
    for (std::size_t i : alive_points) chosen[i] = true;
    TraceRecord& r = emit("sample", depth);
    r.add("mode", std::string("fit on all surviving points"));
    r.add("sampled_points", m1);
  } else {
    bool accepted = false;
    for (std::size_t attempt = 1; attempt <= cfg_.max_retries && !accepted; ++attempt) {
      std::fill(chosen.begin(), chosen.end(), false);
      std::size_t size = 0;
      for (std::size_t i : alive_points) {
        if (sampler_.draw(t)) {
          chosen[i] = true;
          ++size;
        }
      }
      std::size_t min_hits = 0;
      bool first = true;
      for (std::size_t j : alive_lines) {
        const std::size_t h = hits_on(j, chosen);
        min_hits = first ? h : std::min(min_hits, h);
        first = false;
      }
      TraceRecord& r = emit("sample", depth);
      r.add("attempt", attempt);
      r.add("sampled_points", size);
      r.add("min_hits", min_hits);
      const Check hi = make_check("sample_size_high", from_count(size), "<=", 2 * t * M);
      const Check hits = make_check("hits_per_line.cubed", cube(2 * from_count(min_hits)), ">=", cube(c * t) * M);
      r.checks.push_back(hi);
      r.checks.push_back(hits);
      accepted = hi.holds && hits.holds;
    }
    if (!accepted) {
      TraceRecord& r = emit("sampling_failure", depth);
      r.add("attempts", cfg_.max_retries);
      TraceRecord& res = emit("result", depth);
      res.add("outcome", std::string("sampling_failed"));
      res.add("incidences", total);
      return;
    }
  }

  std::vector<Point3> fit_points;
  for (std::size_t i : alive_points) {
    if (chosen[i]) fit_points.push_back(s.points()[i]);
  }
  const MultiPoly3 p = fit_vanishing_poly(fit_points);
  const int d = p.degree();
  const Rational D(d);
  {
    TraceRecord& r = emit("fit", depth);
    steps::add_fit_fields(r, p, fit_points.size());
    if (cfg_.no_sampling) {
      r.checks.push_back(make_check("degree_vs_cbrt_m.cubed", cube(D), "<", 27 * M));
      r.checks.push_back(make_check("four_d2_vs_36_m_two_thirds.cubed", cube(4 * D * D), "<", 46656 * M * M));
    } else {
      r.checks.push_back(make_check("degree_vs_cbrt_tm.cubed", cube(D), "<", 27 * t * M));
    }
  }

  // Lines with more than d chosen points must lie on Z(p).
  std::size_t min_hits = 0;
  bool first = true;
  for (std::size_t j : alive_lines) {
    const std::size_t h = hits_on(j, chosen);
    min_hits = first ? h : std::min(min_hits, h);
    first = false;
  }
  {
    TraceRecord& r = emit("vanish", depth);
    const Check pre = make_check("chosen_points_per_line_exceed_degree", from_count(min_hits), ">", D);
    r.checks.push_back(pre);
    std::vector<Line3> claimed;
    std::size_t unclaimed = 0;
    for (std::size_t j : alive_lines) {
      if (hits_on(j, chosen) > static_cast<std::size_t>(d)) {
        claimed.push_back(s.lines()[j]);
      } else {
        ++unclaimed;
      }
    }
    std::size_t ok = 0;
    for (const auto& l : claimed) ok += vanishes_on_line(p, l) ? 1 : 0;
    r.add("claimed", claimed.size());
    r.add("unclaimed", unclaimed);
    r.add("verified", ok);
    const Check v = make_check("all_claims_verified", from_count(ok), "=", from_count(claimed.size()));
    r.checks.push_back(v);
    r.checks.push_back(make_check("min_points_per_line_vs_5d", from_count(min_nu), ">=", 5 * D));
    r.checks.push_back(make_check("eight_d2_below_n", 8 * D * D, "<", N));
    if (!claimed.empty()) {
      r.poly = p;
      r.vanishing_lines = std::move(claimed);
    }
    if (!v.holds) throw InvariantError("fitted polynomial misses a claimed line: " + serialize(r));
  }

  // Planes of the linear factors: L2/P2 stay off every plane, L2'/P2' are in one.
  const steps::PlaneSplit split = steps::split_by_planes(p, live);
  std::vector<bool> p1(m, false), l1(n, false), p2(m, false), l2(n, false), p2x(m, false), l2x(n, false);
  for (std::size_t i : alive_points) {
    p1[i] = true;
    (split.point_in_plane[i] ? p2x : p2)[i] = true;
  }
  for (std::size_t j : alive_lines) {
    l1[j] = true;
    (split.line_in_plane[j] ? l2x : l2)[j] = true;
  }
  const std::size_t i_p1_l1 = incidences_between(s, p1, l1);
  const std::size_t i_p2_l1 = incidences_between(s, p2, l1);
  const std::size_t i_p2_l2 = incidences_between(s, p2, l2);
  const std::size_t i_p2x_l1 = incidences_between(s, p2x, l1);
  const std::size_t n2 = static_cast<std::size_t>(std::count(l2.begin(), l2.end(), true));
  const std::size_t m2 = static_cast<std::size_t>(std::count(p2.begin(), p2.end(), true));
  {
    TraceRecord& r = emit("planes", depth);
    r.add("count", split.planes.size());
    r.add("planes", steps::join_planes(split.planes));
    r.add("lines_off_planes", n2);
    r.add("points_off_planes", m2);
    r.add("lines_in_planes", n1 - n2);
    r.add("points_in_planes", m1 - m2);
    r.add("residual", poly_digest(split.residual));
    r.checks.push_back(make_check("planes_within_degree", from_count(split.planes.size()), "<=", D));
    const Check same = make_check("off_plane_incidences_unchanged", from_count(i_p2_l2), "=", from_count(i_p2_l1));
    const Check split_sum =
        make_check("incidences_split", from_count(i_p1_l1), "=", from_count(i_p2_l2 + i_p2x_l1));
    r.checks.push_back(same);
    r.checks.push_back(split_sum);
    if (!same.holds || !split_sum.holds) throw InvariantError("plane split lost incidences: " + serialize(r));
  }

  // Per-plane accounting in factor order; each point and line is charged to
  // the first plane containing it.
  std::vector<bool> point_done(m, false), line_done(n, false);
  std::size_t counted = 0;
  for (std::size_t k = 0; k < split.planes.size(); ++k) {
    const Plane3& pi = split.planes[k];
    std::vector<bool> pts(m, false), lns(n, false);
    std::size_t mp = 0, np = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (p2x[i] && !point_done[i] && point_in_plane(s.points()[i], pi)) {
        pts[i] = point_done[i] = true;
        ++mp;
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (l2x[j] && !line_done[j] && line_in_plane(s.lines()[j], pi)) {
        lns[j] = line_done[j] = true;
        ++np;
      }
    }
    const std::size_t ip = incidences_between(s, pts, lns);
    counted += ip;
    TraceRecord& r = emit("plane_accounting", depth);
    r.add("plane", to_string(pi));
    r.add("points", mp);
    r.add("lines", np);
    r.add("incidences", ip);
    r.checks.push_back(make_check("within_mn", from_count(ip), "<=", from_count(mp) * from_count(np)));
  }
  {
    TraceRecord& r = emit("missed_incidences", depth);
    const std::size_t missed = i_p2x_l1 - counted;
    r.add("in_plane_incidences", i_p2x_l1);
    r.add("counted", counted);
    r.add("missed", missed);
    r.checks.push_back(make_check("missed_within_d_per_line", from_count(missed), "<=", D * from_count(n1)));
    r.checks.push_back(make_check("missed_within_fifth", 5 * from_count(missed), "<=", from_count(counted)));
  }

  std::vector<Line3> next_lines;
  std::vector<Point3> next_points;
  std::size_t next_min_mu = 3;
  for (std::size_t j = 0; j < n; ++j) {
    if (l2[j]) next_lines.push_back(s.lines()[j]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!p2[i]) continue;
    next_points.push_back(s.points()[i]);
    std::size_t mu = 0;
    for (std::size_t j : s.lines_at(i)) mu += l2[j] ? 1 : 0;
    next_min_mu = std::min(next_min_mu, mu);
  }
  {
    TraceRecord& r = emit("plane_removal", depth);
    r.add("lines_left", n2);
    r.add("points_left", m2);
    const Check three = make_check("three_lines_per_point_left", from_count(m2 ? next_min_mu : 3), ">=", 3);
    r.checks.push_back(three);
    r.checks.push_back(make_check("half_the_lines", 2 * from_count(n2), "<", N));
    if (!next_points.empty() && next_points.size() <= kRichestPlaneLimit) {
      const RichestPlane rp = richest_plane(next_points);
      r.add("richest_plane_points", rp.count);
      r.checks.push_back(make_check("plane_points_vs_4bd2", from_count(rp.count), "<=", 4 * cfg_.b * D * D));
    }
    if (hyp.holds && !three.holds) {
      throw InvariantError("plane removal left a point on fewer than three lines: " + serialize(r));
    }
  }
  {
    TraceRecord& r = emit("census", depth);
    const Surface reduced(split.residual);
    steps::record_census(r, steps::classify_lines(reduced, next_lines), split.residual.degree(), d, false);
  }

  const bool go = n2 > 0 && n2 < n && depth + 1 <= kMaxDepth;
  {
    TraceRecord& r = emit("recurse", depth);
    r.add("lines", n2);
    r.add("points", m2);
    r.add("action", std::string(go ? "descend" : "stop"));
  }
  if (go) level(Instance{next_points, next_lines}, depth + 1);

  TraceRecord& r = emit("result", depth);
  r.add("outcome", std::string("completed"));
  r.add("incidences", total);
  r.add("incidences_pruned", charged);
  r.add("incidences_in_planes", i_p2x_l1);
  r.add("incidences_off_planes", i_p2_l2);
  r.checks.push_back(make_check("incidences_accounted", I, "=", from_count(charged + i_p2x_l1 + i_p2_l2)));
  r.checks.push_back(make_check("incidences_within_bound.cubed", I * I * I, "<=", bound_cubed));
}

}  // namespace

std::vector<TraceRecord> trace_thm11(const Instance& inst, const PipelineConfig& cfg) {
  validate_config(cfg, true);
  if (inst.points.empty() && inst.lines.empty()) return {};
  return IncidenceTracer(cfg).run(inst);
}

}  // namespace jointlab
