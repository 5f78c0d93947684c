#include "jointlab/constructions.hpp"
#include "jointlab/errors.hpp"
#include "jointlab/pipeline.hpp"
#include "support.hpp"

#include <doctest.h>

#include <functional>
#include <set>

using namespace jointlab;
using jointlab::testing::line;
using jointlab::testing::q;

namespace {

PipelineConfig small(const Rational& c, const Rational& t, bool no_sampling = false) {
  PipelineConfig cfg;
  cfg.c = c;
  cfg.t = t;
  cfg.n0 = 2;
  cfg.unchecked = true;
  cfg.no_sampling = no_sampling;
  return cfg;
}

std::size_t count_steps(const std::vector<TraceRecord>& tr, const std::string& step) {
  std::size_t n = 0;
  for (const auto& r : tr) n += r.step == step ? 1 : 0;
  return n;
}

const TraceRecord* first(const std::vector<TraceRecord>& tr, const std::string& step) {
  for (const auto& r : tr) {
    if (r.step == step) return &r;
  }
  return nullptr;
}

// Checks that encode exact identities or proven bounds, never asymptotic ones.
const std::set<std::string> kAlwaysHolds = {
    "conservation",
    "all_claims_verified",
    "points_accounted",
    "incidences_accounted",
    "off_plane_incidences_unchanged",
    "incidences_split",
    "critical_lines_bound",
    "flat_lines_bound",
    "special_lines_below_4d2",
    "survivor_point_lines",
    "three_lines_per_point_left",
};

void check_trace_invariants(const std::vector<TraceRecord>& tr) {
  for (const auto& r : tr) {
    for (const auto& c : r.checks) {
      if (kAlwaysHolds.count(c.name)) {
        CAPTURE(serialize(r));
        CHECK(c.holds);
      }
    }
    if (r.poly) {
      for (const auto& l : r.vanishing_lines) CHECK(vanishes_on_line(*r.poly, l));
    }
    if (r.step == "pruning") {
      const Check* c = r.find_check("conservation");
      REQUIRE(c);
      CHECK(c->lhs == c->rhs);
    }
  }
}

struct Case {
  std::string name;
  Instance inst;
};

std::vector<Case> cases() {
  return {{"grid 3", gen_grid(3).instance},
          {"grid 4", gen_grid(4).instance},
          {"stacked 2 2", gen_joint_lb_stacked(2, 2).instance},
          {"stacked 3 3", gen_joint_lb_stacked(3, 3).instance}};
}

const std::vector<std::pair<Rational, Rational>> kConstants = {
    {q(1, 8), q(1, 2)}, {q(1, 4), Rational(1)}, {q(1, 2), q(1, 2)}, {Rational(1), Rational(1)}, {Rational(1024), q(1, 1000)}};

}  // namespace

TEST_CASE("configuration constraints") {
  CHECK_NOTHROW(validate_config(PipelineConfig{}));
  CHECK_NOTHROW(validate_config(PipelineConfig{}, true));
  for (const auto& c : config_constraints(PipelineConfig{}, true)) {
    CAPTURE(c.name);
    CHECK(c.holds);
  }

  PipelineConfig cfg;
  cfg.t = q(1, 2);
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  CHECK_THROWS_AS(trace_thm9(gen_grid(3).instance, cfg), ConfigError);
  cfg.unchecked = true;
  CHECK_NOTHROW(validate_config(cfg));

  // domain errors are never waived
  cfg.t = 0;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg.t = q(1, 2);
  cfg.b = q(1, 2);
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  cfg.b = 1;
  cfg.c = -1;
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
}

TEST_CASE("point-count trace on the 3-grid") {
  const auto tr = trace_thm9(gen_grid(3).instance, PipelineConfig{});
  REQUIRE(first(tr, "header"));
  CHECK(first(tr, "header")->find_field("note"));
  const TraceRecord* p = first(tr, "pruning");
  REQUIRE(p);
  CHECK(*p->find_field("lines_removed") == "27");
  CHECK(*p->find_field("points_removed") == "27");
  const Check* loss = p->find_check("removed_points.squared");
  REQUIRE(loss);
  CHECK(loss->holds);
  // (27)^2 <= c^2 n^3 with c = 1024, n = 27
  CHECK(loss->lhs == 729);
  CHECK(loss->rhs == Rational(1024 * 1024) * 27 * 27 * 27);
  CHECK(*first(tr, "result")->find_field("outcome") == "pruned_empty");
  check_trace_invariants(tr);
}

TEST_CASE("hypothesis failures name a witness") {
  try {
    trace_thm9(gen_paraboloid(3).instance, PipelineConfig{});
    FAIL("expected a hypothesis error");
  } catch (const HypothesisError& e) {
    CHECK(std::string(e.what()).find("(1,1,1) lies on only 2 lines") != std::string::npos);
  }
  CHECK_THROWS_AS(trace_thm11(gen_paraboloid(2).instance, PipelineConfig{}), HypothesisError);
}

TEST_CASE("traces are reproducible") {
  for (const auto& c : cases()) {
    for (const auto& [cc, t] : kConstants) {
      PipelineConfig cfg = small(cc, t);
      cfg.rng_seed = 99;
      CHECK(serialize(trace_thm9(c.inst, cfg)) == serialize(trace_thm9(c.inst, cfg)));
      CHECK(serialize(trace_thm11(c.inst, cfg)) == serialize(trace_thm11(c.inst, cfg)));
    }
    CHECK(serialize(trace_bourgain(c.inst)) == serialize(trace_bourgain(c.inst)));
  }
}

TEST_CASE("exact identities hold in every trace") {
  std::size_t deep = 0;
  for (const auto& c : cases()) {
    CAPTURE(c.name);
    for (const auto& [cc, t] : kConstants) {
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        PipelineConfig cfg = small(cc, t);
        cfg.rng_seed = seed;
        const auto a = trace_thm9(c.inst, cfg);
        check_trace_invariants(a);
        const auto b = trace_thm11(c.inst, cfg);
        check_trace_invariants(b);
        cfg.no_sampling = true;
        const auto n = trace_thm11(c.inst, cfg);
        check_trace_invariants(n);
        deep += count_steps(a, "census") + count_steps(b, "census") + count_steps(n, "census");
        CHECK(count_steps(a, "pruning") >= 1);
      }
    }
    PipelineConfig cfg;
    cfg.continue_past_guards = true;
    check_trace_invariants(trace_bourgain(c.inst, cfg));
    check_trace_invariants(trace_bourgain(c.inst));
  }
  // the sweep must actually reach the fitting and plane steps
  CHECK(deep > 10);
}

TEST_CASE("incidence trace on stacked copies") {
  const auto tr = trace_thm11(gen_joint_lb_stacked(2, 2).instance, PipelineConfig{});
  const TraceRecord* p = first(tr, "pruning");
  REQUIRE(p);
  CHECK(p->find_field("threshold.cubed"));
  const Check* loss = p->find_check("lost_incidences.cubed");
  REQUIRE(loss);
  CHECK(loss->holds);
  check_trace_invariants(tr);

  const auto deep = trace_thm11(gen_joint_lb_stacked(3, 3).instance, small(q(1, 8), q(1, 2), true));
  CHECK(count_steps(deep, "plane_accounting") == 3);
  for (const auto& r : deep) {
    if (r.step == "plane_accounting") {
      CHECK(r.find_field("points"));
      CHECK(r.find_field("lines"));
      CHECK(r.find_field("incidences"));
    }
  }
  const TraceRecord* m = first(deep, "missed_incidences");
  REQUIRE(m);
  CHECK(m->find_check("missed_within_d_per_line"));
}

TEST_CASE("fitting on all points instead of a sample") {
  const auto tr = trace_thm11(gen_grid(4).instance, small(q(1, 8), q(1, 2), true));
  const TraceRecord* s = first(tr, "sample");
  REQUIRE(s);
  REQUIRE(s->find_field("mode"));
  CHECK(s->find_field("mode")->find("all") != std::string::npos);
  const TraceRecord* f = first(tr, "fit");
  REQUIRE(f);
  const Check* c = f->find_check("four_d2_vs_36_m_two_thirds.cubed");
  REQUIRE(c);
  // d = 4, m = 64: (4 d^2)^3 < 36^3 m^2
  CHECK(c->lhs == 64 * 64 * 64);
  CHECK(c->rhs == Rational(46656) * 64 * 64);
  CHECK(c->holds);
}

TEST_CASE("empty instances") {
  CHECK(trace_thm11(Instance{}, PipelineConfig{}).empty());
  CHECK(trace_bourgain(Instance{}).empty());
  check_trace_invariants(trace_thm9(Instance{}, PipelineConfig{}));
}

TEST_CASE("light/heavy trace") {
  const std::vector<Line3> axes = {line(0, 0, 0, 1, 0, 0), line(0, 0, 0, 0, 1, 0), line(0, 0, 0, 0, 0, 1)};
  const std::vector<Point3> origin = {jointlab::testing::pt(0, 0, 0)};
  auto tr = trace_bourgain(Instance{origin, axes});
  const TraceRecord* c = first(tr, "classify");
  REQUIRE(c);
  CHECK(*c->find_field("heavy_points") == "1");
  CHECK(first(tr, "result"));

  tr = trace_bourgain(gen_bourgain_grid(4).instance);
  c = first(tr, "classify");
  REQUIRE(c);
  // nu^2 = n / 4 with n = 48
  CHECK(*c->find_field("threshold.squared") == "12/1");
  CHECK(*c->find_field("heavy_points") == "64");
  const TraceRecord* h = first(tr, "hypotheses");
  REQUIRE(h);
  CHECK(*h->find_field("points_per_line_sq_over_n") == "1/3");
}
