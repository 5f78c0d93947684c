#pragma once

// Step-by-step tracers of the pruning / sampling / fitting / plane-removal
// procedures, emitting one record per step with every inequality evaluated
// exactly on the data at hand.

#include "jointlab/incidence.hpp"
#include "jointlab/poly3.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace jointlab {

/// lhs REL rhs on exact rationals. Quantities involving roots are compared
/// through integer powers of both sides; the name says which power.
struct Check {
  std::string name;
  Rational lhs;
  std::string rel;  // "<", "<=", "=", ">=", ">"
  Rational rhs;
  bool holds = false;
};

Check make_check(std::string name, const Rational& lhs, std::string rel, const Rational& rhs);

struct TraceRecord {
  std::string step;
  int depth = 0;
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<Check> checks;

  /// A polynomial the step claims vanishes identically on `vanishing_lines`.
  std::optional<MultiPoly3> poly;
  std::vector<Line3> vanishing_lines;

  void add(std::string key, std::string value) { fields.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, std::size_t value) { add(std::move(key), std::to_string(value)); }
  void add(std::string key, int value) { add(std::move(key), std::to_string(value)); }
  void add(std::string key, const Rational& value);
  const Check* find_check(const std::string& name) const;
  const std::string* find_field(const std::string& key) const;
};

/// One tab-separated line: step, depth=, fields, then check.NAME=lhs REL rhs holds|fails.
std::string serialize(const TraceRecord& r);
/// One line per record, each terminated by a newline.
std::string serialize(const std::vector<TraceRecord>& trace);

/// Degree, term count and a 64-bit FNV-1a hash of the canonical text.
std::string poly_digest(const MultiPoly3& p);

struct PipelineConfig {
  Rational c = 1024;
  Rational t = Rational(1, 1000);
  Rational A = 5000;
  Rational b = 1;
  std::size_t n0 = 10;
  std::size_t max_retries = 32;
  std::uint64_t rng_seed = 1;

  /// Record constant-constraint violations instead of raising ConfigError,
  /// so the later steps can be exercised at small sizes.
  bool unchecked = false;
  /// Incidence tracer: fit on all surviving points instead of a sample.
  bool no_sampling = false;
  /// Light/heavy tracer: keep going after a degree guard fails.
  bool continue_past_guards = false;
};

/// The constraint list on (c, t, A, b) used by the point-count tracer; the
/// incidence tracer adds two more.
std::vector<Check> config_constraints(const PipelineConfig& cfg, bool incidence_variant = false);

/// Domain errors (t outside (0, 1], c, A <= 0, b < 1) always raise
/// ConfigError; constraint failures raise it unless cfg.unchecked.
void validate_config(const PipelineConfig& cfg, bool incidence_variant = false);

/// Point-count procedure. Hypothesis failure at the top level raises
/// HypothesisError naming a witness.
std::vector<TraceRecord> trace_thm9(const Instance& inst, const PipelineConfig& cfg);
/// Incidence-count procedure; an empty instance gives an empty trace.
std::vector<TraceRecord> trace_thm11(const Instance& inst, const PipelineConfig& cfg);
/// Light/heavy procedure; hypothesis shortfalls are recorded, not raised.
std::vector<TraceRecord> trace_bourgain(const Instance& inst, const PipelineConfig& cfg = {});

}  // namespace jointlab
