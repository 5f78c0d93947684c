#include "jointlab/cli.hpp"
#include "jointlab/errors.hpp"
#include "jointlab/pipeline.hpp"
#include "jointlab/polymethod.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace jointlab::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  buf << in.rdbuf();
  return buf.str();
}

Rational rational_option(const std::string& name, const std::string& text) {
  auto q = parse_rational(text);
  if (!q) throw UsageError("--" + name + ": malformed rational '" + text + "'");
  return *q;
}

std::string coords(const Point3& a) { return to_string(a.x) + " " + to_string(a.y) + " " + to_string(a.z); }

void kv(std::ostream& out, const std::string& key, const std::string& value) { out << key << '\t' << value << '\n'; }
void kv(std::ostream& out, const std::string& key, std::size_t value) { kv(out, key, std::to_string(value)); }

struct Options {
  std::string kind;
  std::string file = "-";
  std::string poly_file;
  int k = 2, n = 2, t = 1, r = 2;
  bool tsv = false;
  std::string b = "1";
  // trace overrides
  std::uint64_t seed = 1;
  std::string c, tt, A, tb, n0, retries;
  bool unchecked = false, no_sampling = false, past_guards = false;
};

void cmd_gen(const Options& o, std::ostream& out) {
  auto positive = [](int v, const char* name) {
    if (v < 1) throw UsageError(std::string("--") + name + " must be at least 1");
  };
  GeneratedInstance g;
  if (o.kind == "grid") {
    positive(o.k, "k");
    g = gen_grid(o.k);
  } else if (o.kind == "st") {
    positive(o.n, "n");
    g = gen_st_planar(o.n);
  } else if (o.kind == "joint-lb-small") {
    positive(o.n, "n");
    g = gen_joint_lb_small(o.n);
  } else if (o.kind == "joint-lb-stacked") {
    positive(o.n, "n");
    positive(o.t, "t");
    g = gen_joint_lb_stacked(o.n, o.t);
  } else if (o.kind == "paraboloid") {
    positive(o.r, "r");
    g = gen_paraboloid(o.r);
  } else if (o.kind == "bourgain") {
    positive(o.k, "k");
    g = gen_bourgain_grid(o.k);
  } else {
    throw UsageError("unknown generator '" + o.kind + "'");
  }
  out << serialize_generated(g);
}

void cmd_count(const Options& o, std::ostream& out) {
  const IncidenceStructure s = build(parse_instance(read_input(o.file)));
  kv(out, "lines", s.lines().size());
  kv(out, "points", s.points().size());
  kv(out, "incidences", s.incidences());
}

void cmd_joints(const Options& o, std::ostream& out) {
  const Instance inst = parse_instance(read_input(o.file));
  const auto js = joints(inst.lines);
  kv(out, "joints", js.size());
  for (const auto& a : js) kv(out, "joint", coords(a));
}

void cmd_histogram(const Options& o, std::ostream& out) {
  const MultiplicityHistogram h = histogram(build(parse_instance(read_input(o.file))));
  if (o.tsv) out << "k\tpoints_at_least\tincidences_at_least\n";
  for (std::size_t k = 1; k <= h.max_k(); ++k) {
    if (o.tsv) {
      out << k << '\t' << h.points_with_at_least(k) << '\t' << h.incidences_with_at_least(k) << '\n';
    } else {
      kv(out, "points_at_least_" + std::to_string(k), h.points_with_at_least(k));
      kv(out, "incidences_at_least_" + std::to_string(k), h.incidences_with_at_least(k));
    }
  }
}

void cmd_planecover(const Options& o, std::ostream& out) {
  const IncidenceStructure s = build(parse_instance(read_input(o.file)));
  kv(out, "points", s.points().size());
  kv(out, "incidences", s.incidences());
  kv(out, "plane_cover_sum", plane_cover_sum(s));
}

void cmd_fit(const Options& o, std::ostream& out) {
  const Instance inst = parse_instance(read_input(o.file));
  out << serialize_poly(fit_vanishing_poly(inst.points));
}

void cmd_classify(const Options& o, std::ostream& out) {
  const Instance inst = parse_instance(read_input(o.file));
  const MultiPoly3 p = parse_poly(read_input(o.poly_file));
  if (p.is_zero()) throw DegenerateInputError("polynomial is zero");
  const Surface surf(p);
  for (std::size_t i = 0; i < inst.points.size(); ++i) {
    const PointClass pc = surf.classify_point(inst.points[i]);
    out << "point:" << i << '\t' << to_string(pc.kind) << "\tat=" << to_string(inst.points[i])
        << " value=" << to_string(pc.value) << " gradient=" << to_string(pc.gradient);
    if (pc.tangent_basis) {
      out << " tangent_hessian=" << to_string(pc.tangent_hessian[0]) << "," << to_string(pc.tangent_hessian[1])
          << "," << to_string(pc.tangent_hessian[2]);
    }
    out << '\n';
  }
  for (std::size_t j = 0; j < inst.lines.size(); ++j) {
    out << "line:" << j << '\t' << to_string(surf.classify_line(inst.lines[j])) << '\t' << to_string(inst.lines[j])
        << '\n';
  }
}

void cmd_check(const Options& o, std::ostream& out) {
  const IncidenceStructure s = build(parse_instance(read_input(o.file)));
  const ConditionReport c = check_conditions(s, rational_option("b", o.b));
  kv(out, "richest_plane_points", c.richest.count);
  if (c.richest.plane) kv(out, "richest_plane", to_string(*c.richest.plane));
  kv(out, "plane_limit", to_string(c.plane_limit));
  kv(out, "few_points_per_plane", c.few_per_plane ? "holds" : "fails");
  kv(out, "min_multiplicity", c.min_multiplicity);
  kv(out, "three_lines_per_point", c.three_per_point ? "holds" : "fails");
  if (c.low_multiplicity_witness) kv(out, "witness", coords(*c.low_multiplicity_witness));
}

void cmd_trace(const Options& o, std::ostream& out) {
  PipelineConfig cfg;
  cfg.rng_seed = o.seed;
  if (!o.c.empty()) cfg.c = rational_option("c", o.c);
  if (!o.tt.empty()) cfg.t = rational_option("t", o.tt);
  if (!o.A.empty()) cfg.A = rational_option("A", o.A);
  if (!o.tb.empty()) cfg.b = rational_option("b", o.tb);
  if (!o.n0.empty()) cfg.n0 = std::stoul(o.n0);
  if (!o.retries.empty()) cfg.max_retries = std::stoul(o.retries);
  cfg.unchecked = o.unchecked;
  cfg.no_sampling = o.no_sampling;
  cfg.continue_past_guards = o.past_guards;
  const Instance inst = parse_instance(read_input(o.file));
  std::vector<TraceRecord> trace;
  if (o.kind == "thm9" || o.kind == "point-count") {
    trace = trace_thm9(inst, cfg);
  } else if (o.kind == "thm11" || o.kind == "incidence-count") {
    trace = trace_thm11(inst, cfg);
  } else if (o.kind == "bourgain" || o.kind == "light-heavy") {
    trace = trace_bourgain(inst, cfg);
  } else {
    throw UsageError("unknown trace '" + o.kind + "'");
  }
  out << serialize(trace);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact incidence geometry of points and lines in 3-space", "jointlab"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("kind", o.kind, "grid | st | joint-lb-small | joint-lb-stacked | paraboloid | bourgain")->required();
  gen->add_option("--k", o.k, "grid side");
  gen->add_option("--n", o.n, "size parameter");
  gen->add_option("--t", o.t, "number of stacked copies");
  gen->add_option("--r", o.r, "lines per ruling");

  auto file_arg = [&o](CLI::App* sub) { sub->add_option("file", o.file, "instance file, - for stdin"); };
  auto* count = app.add_subcommand("count", "Count incidences");
  file_arg(count);
  auto* jts = app.add_subcommand("joints", "List joints");
  file_arg(jts);
  auto* hist = app.add_subcommand("histogram", "Points and incidences by multiplicity");
  file_arg(hist);
  hist->add_flag("--tsv", o.tsv, "tab-separated table");
  auto* pc = app.add_subcommand("planecover", "Sum of plane covers");
  file_arg(pc);
  auto* fit = app.add_subcommand("fit", "Lowest-degree polynomial vanishing on the points");
  file_arg(fit);
  auto* cls = app.add_subcommand("classify", "Classify points and lines against a polynomial");
  cls->add_option("file", o.file, "instance file")->required();
  cls->add_option("poly", o.poly_file, "polynomial file")->required();
  auto* chk = app.add_subcommand("check", "Plane-richness and three-lines-per-point conditions");
  file_arg(chk);
  chk->add_option("--b", o.b, "plane-richness constant");

  auto* tr = app.add_subcommand("trace", "Step-by-step certificate of a counting procedure");
  tr->add_option("kind", o.kind, "thm9 (point-count) | thm11 (incidence-count) | bourgain (light-heavy)")->required();
  file_arg(tr);
  tr->add_option("--seed", o.seed, "sampling seed")->capture_default_str();
  tr->add_option("--c", o.c, "pruning constant");
  tr->add_option("--t", o.tt, "sampling probability");
  tr->add_option("--A", o.A, "induction constant");
  tr->add_option("--b", o.tb, "plane-richness constant");
  tr->add_option("--n0", o.n0, "induction base");
  tr->add_option("--max-retries", o.retries, "sampling attempts");
  tr->add_flag("--unchecked-config", o.unchecked, "record constant-constraint violations instead of failing");
  tr->add_flag("--no-sampling", o.no_sampling, "fit on all surviving points");
  tr->add_flag("--continue-past-guards", o.past_guards, "keep going after a degree guard fails");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) cmd_gen(o, out);
    else if (count->parsed()) cmd_count(o, out);
    else if (jts->parsed()) cmd_joints(o, out);
    else if (hist->parsed()) cmd_histogram(o, out);
    else if (pc->parsed()) cmd_planecover(o, out);
    else if (fit->parsed()) cmd_fit(o, out);
    else if (cls->parsed()) cmd_classify(o, out);
    else if (chk->parsed()) cmd_check(o, out);
    else if (tr->parsed()) cmd_trace(o, out);
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const HypothesisError& e) {
    err << "hypothesis violated: " << e.what() << '\n';
    return kHypothesis;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const Error& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kPrecondition;
  } catch (const InvariantError& e) {
    err << "internal invariant failed: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace jointlab::cli
