#include "jointlab/errors.hpp"
#include "jointlab/pipeline.hpp"

namespace jointlab {

namespace {

Rational cube(const Rational& x) { return x * x * x; }

}  // namespace

std::vector<Check> config_constraints(const PipelineConfig& cfg, bool incidence_variant) {
  const Rational& c = cfg.c;
  const Rational& t = cfg.t;
  std::vector<Check> out;
  // Degree of the sample polynomial below the points per sampled line.
  out.push_back(make_check("degree_below_line_sample.cubed", 96 * t, "<", 1));
  // Sampled-line hits on every other line exceed the degree.
  out.push_back(make_check("hits_exceed_degree.cubed", cube(c * t / 4), ">", 12 * t));
  // Lines keep at least 5d points.
  out.push_back(make_check("five_d_points.cubed", cube(c), ">", 12000 * t));
  out.push_back(make_check("sample_nonempty", c * t, ">", 1));
  // Critical plus flat lines fewer than n.
  out.push_back(make_check("special_lines_below_n.cubed", 589824 * t * t, "<", 1));
  const Rational slack = cfg.A * (1 - 768 * t) - c;
  out.push_back(make_check("induction_closes.slack", slack, ">=", 0));
  out.push_back(make_check("induction_closes.cubed", sgn(slack) < 0 ? Rational(-1) : cube(slack), ">=",
                           96 * cube(cfg.b) * t));
  if (incidence_variant) {
    out.push_back(make_check("point_sample_hits_exceed_degree.cubed", cube(c) * t * t, ">", 216));
    out.push_back(make_check("five_d_points_sampled.cubed", cube(c), ">", 3375 * t));
  }
  return out;
}

void validate_config(const PipelineConfig& cfg, bool incidence_variant) {
  if (sgn(cfg.t) <= 0 || cfg.t > 1) throw ConfigError("t must lie in (0, 1], got " + to_string(cfg.t));
  if (sgn(cfg.c) <= 0) throw ConfigError("c must be positive, got " + to_string(cfg.c));
  if (sgn(cfg.A) <= 0) throw ConfigError("A must be positive, got " + to_string(cfg.A));
  if (cfg.b < 1) throw ConfigError("b must be at least 1, got " + to_string(cfg.b));
  if (cfg.n0 < 1) throw ConfigError("n0 must be at least 1");
  if (cfg.unchecked) return;
  std::string failed;
  for (const auto& ch : config_constraints(cfg, incidence_variant)) {
    if (ch.holds) continue;
    if (!failed.empty()) failed += ", ";
    failed += ch.name + " (" + to_string(ch.lhs) + " " + ch.rel + " " + to_string(ch.rhs) + ")";
  }
  if (!failed.empty()) throw ConfigError("constant constraints violated: " + failed);
}

}  // namespace jointlab
