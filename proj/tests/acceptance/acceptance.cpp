// One PASS/FAIL line per acceptance criterion. Every comparison is exact
// except the wall-clock limit on the grid check.

#include "jointlab/cli.hpp"
#include "jointlab/constructions.hpp"
#include "jointlab/errors.hpp"
#include "jointlab/pipeline.hpp"
#include "jointlab/polymethod.hpp"
#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace jointlab;
using jointlab::testing::C;
using jointlab::testing::line;
using jointlab::testing::pt;
using jointlab::testing::q;
using jointlab::testing::Random;
using jointlab::testing::X;
using jointlab::testing::Y;
using jointlab::testing::Z;

namespace {

constexpr double kGridSeconds = 5.0;
constexpr int kRandomLineSets = 50;
constexpr long kMaxRandomLines = 60;
constexpr long kCoordSpan = 5;
constexpr int kFitSets = 100;
constexpr long kMaxFitPoints = 60;
constexpr int kFlatnessPolys = 100;
constexpr int kRegularPoints = 200;
constexpr int kProductTriples = 100;
constexpr int kRoundTrips = 50;

// Collects failures; a criterion passes when nothing was recorded.
class Verdict {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ = failed_ || !ok;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  bool ok() const { return !failed_; }
  std::string detail() const {
    if (failed_) {
      std::string s;
      for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
      return s;
    }
    return notes_;
  }

 private:
  bool failed_ = false;
  std::vector<std::string> failures_;
  std::string notes_;
};

Verdict grid_exactness() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  for (int k = 1; k <= 6; ++k) {
    const std::size_t kk = static_cast<std::size_t>(k);
    const GeneratedInstance g = gen_grid(k);
    const IncidenceStructure s = build(g.instance);
    const auto js = joints(g.instance.lines);
    auto lattice = g.instance.points;
    std::sort(lattice.begin(), lattice.end());
    const std::string tag = "k=" + std::to_string(k);
    v.expect(s.lines().size() == 3 * kk * kk, tag + " lines");
    v.expect(js.size() == kk * kk * kk && js == lattice, tag + " joints");
    v.expect(s.incidences() == 3 * kk * kk * kk, tag + " incidences");
    v.expect(g.predicted.joints == js.size() && g.predicted.incidences == s.incidences(), tag + " prediction");
    const IncidenceStructure at_joints = build(js, g.instance.lines);
    for (std::size_t i = 0; i < at_joints.points().size(); ++i) {
      v.expect(at_joints.multiplicity(i) == 3, tag + " multiplicity");
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.expect(secs < kGridSeconds, "runtime " + std::to_string(secs) + " s");
  v.note("k=1..6 exact, " + std::to_string(secs) + " s");
  return v;
}

// |J|^2 <= n^3, i.e. |J| <= n^{3/2}.
bool within_joint_bound(std::size_t joints_count, std::size_t n) {
  const Integer j(static_cast<unsigned long>(joints_count)), nn(static_cast<unsigned long>(n));
  return j * j <= nn * nn * nn;
}

std::vector<GeneratedInstance> all_generated() {
  std::vector<GeneratedInstance> out;
  for (int k = 1; k <= 6; ++k) out.push_back(gen_grid(k));
  for (int n = 1; n <= 4; ++n) out.push_back(gen_st_planar(n));
  for (int n = 1; n <= 3; ++n) {
    for (int t = 1; t <= 3; ++t) out.push_back(gen_joint_lb_stacked(n, t));
  }
  for (int r = 1; r <= 5; ++r) out.push_back(gen_paraboloid(r));
  for (int k = 1; k <= 4; ++k) out.push_back(gen_bourgain_grid(k));
  return out;
}

Verdict joint_bound() {
  Verdict v;
  std::size_t families = 0;
  for (const auto& g : all_generated()) {
    const std::size_t j = joints(g.instance.lines).size();
    v.expect(within_joint_bound(j, g.instance.lines.size()), g.label);
    ++families;
  }
  Random rng(1001);
  std::size_t most = 0;
  for (int trial = 0; trial < kRandomLineSets; ++trial) {
    const long n = rng.integer(1, kMaxRandomLines);
    std::set<Line3> ls;
    for (long i = 0; i < n; ++i) ls.insert(canonicalize_line(rng.point(kCoordSpan), rng.nonzero_direction(kCoordSpan)));
    const std::vector<Line3> lines(ls.begin(), ls.end());
    const std::size_t j = joints(lines).size();
    most = std::max(most, j);
    v.expect(within_joint_bound(j, lines.size()), "random set " + std::to_string(trial));
  }
  v.note(std::to_string(families) + " generated instances, " + std::to_string(kRandomLineSets) +
         " random sets (max joints " + std::to_string(most) + ")");
  return v;
}

Verdict fitting() {
  Verdict v;
  Random rng(1002);
  for (int trial = 0; trial < kFitSets; ++trial) {
    const long m = rng.integer(1, kMaxFitPoints);
    std::vector<Point3> ps;
    for (long i = 0; i < m; ++i) ps.push_back(trial % 2 ? rng.point(kCoordSpan) : rng.rational_point(3));
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    const MultiPoly3 p = fit_vanishing_poly(ps);
    const std::string tag = "set " + std::to_string(trial);
    v.expect(!p.is_zero(), tag + " zero");
    v.expect(p.degree() <= vanishing_degree_bound(ps.size()), tag + " degree");
    for (const auto& a : ps) v.expect(p.eval(a) == 0, tag + " vanishing");
  }
  std::vector<Point3> grid;
  for (long x = 1; x <= 3; ++x) {
    for (long y = 1; y <= 3; ++y) {
      for (long z = 1; z <= 3; ++z) grid.push_back(pt(x, y, z));
    }
  }
  v.expect(fit_vanishing_poly(grid).degree() == 3, "27-grid degree");
  v.expect(vanishing_space_dimension(grid, 2) == 0, "27-grid d=2 nullspace");
  v.expect(vanishing_space_dimension(grid, 3) > 0, "27-grid d=3 nullspace");
  v.note(std::to_string(kFitSets) + " random sets, 27-grid degree 3");
  return v;
}

bool all_zero(const std::array<Rational, 3>& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0; }

Verdict flatness_suite() {
  Verdict v;
  Random rng(1003);
  for (int trial = 0; trial < kFlatnessPolys; ++trial) {
    const int d = 2 + trial % 7;
    MultiPoly3 p = rng.poly(d, 6);
    p.add_term({0, d, 0}, Rational(1));
    for (const auto& g : flatness_polys(p)) v.expect(g.degree() <= 3 * p.degree() - 4, "degree bound");
  }

  int compared = 0, flat = 0;
  for (int attempt = 0; compared < kRegularPoints && attempt < 50 * kRegularPoints; ++attempt) {
    const Point3 a = rng.point(3);
    MultiPoly3 p;
    if (attempt % 2 == 0) {
      MultiPoly3 plane = MultiPoly3::linear(Rational(rng.integer(1, 4)), Rational(rng.integer(1, 4)),
                                            Rational(rng.integer(1, 4)), 0);
      plane = plane - MultiPoly3(plane.eval(a));
      MultiPoly3 g = rng.poly(2, 3);
      g = g - MultiPoly3(g.eval(a)) + C(1);
      p = plane * g;
    } else {
      p = rng.poly(3, 6);
      p = p - MultiPoly3(p.eval(a));
    }
    if (p.degree() < 1) continue;
    const PointClass pc = classify_point(p, a);
    if (pc.kind == PointKind::Critical || pc.frame_degenerate) continue;
    ++compared;
    flat += pc.kind == PointKind::Flat ? 1 : 0;
    v.expect((pc.kind == PointKind::Flat) == all_zero(pc.flatness_values), "equivalence");
  }
  v.expect(compared == kRegularPoints, "too few regular points");

  const PointClass deg = classify_point(Z() - X() * Y(), pt(0, 0, 0));
  v.expect(deg.kind == PointKind::RegularNonFlat, "z-xy origin kind");
  v.expect(all_zero(deg.flatness_values), "z-xy origin flatness values");
  v.expect(deg.tangent_hessian[1] == -1, "z-xy origin tangent entry");
  v.note(std::to_string(kFlatnessPolys) + " degree checks, " + std::to_string(compared) + " regular points (" +
         std::to_string(flat) + " flat), z-xy origin reproduced");
  return v;
}

Verdict product_identity() {
  Verdict v;
  Random rng(1004);
  int done = 0;
  for (int attempt = 0; done < kProductTriples && attempt < 20 * kProductTriples; ++attempt) {
    const Point3 a = rng.point(3);
    MultiPoly3 f = rng.poly(3, 5);
    f = f - MultiPoly3(f.eval(a));
    const MultiPoly3 g = rng.poly(2, 4);
    const Rational ga = g.eval(a);
    if (f.degree() < 1 || ga == 0) continue;
    ++done;
    const auto pf = flatness_polys(f), pfg = flatness_polys(f * g);
    for (int j = 0; j < 3; ++j) v.expect(pfg[j].eval(a) == ga * ga * ga * pf[j].eval(a), "flatness identity");
    v.expect(eval_gradient(gradient(f * g), a) == ga * eval_gradient(gradient(f), a), "gradient identity");
  }
  v.expect(done == kProductTriples, "too few triples");
  v.note(std::to_string(done) + " triples, zero failures");
  return v;
}

std::vector<Line3> pair_spanned(const std::vector<Line3>& base) {
  std::set<Point3> meets;
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = i + 1; j < base.size(); ++j) {
      const LineMeet m = line_intersection(base[i], base[j]);
      if (m.kind == LineMeet::Kind::Point) meets.insert(m.point);
    }
  }
  std::set<Line3> out(base.begin(), base.end());
  const std::vector<Point3> ps(meets.begin(), meets.end());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = i + 1; j < ps.size(); ++j) out.insert(line_through(ps[i], ps[j]));
  }
  return {out.begin(), out.end()};
}

Verdict line_bounds() {
  Verdict v;
  const std::vector<Line3> face = {line(0, 0, 0, 1, 0, 0), line(0, 0, 0, 0, 1, 0), line(0, 0, 0, 0, 0, 1),
                                   line(0, 1, 0, 1, 0, 0), line(0, 0, 1, 1, 0, 0), line(1, 0, 0, 0, 1, 0),
                                   line(0, 0, 1, 0, 1, 0), line(1, 0, 0, 0, 0, 1), line(0, 1, 0, 0, 0, 1)};
  const auto candidates = pair_spanned(face);
  const LineCensus xyz = count_classified_lines(X() * Y() * Z(), candidates);
  v.expect(xyz.critical == 3, "xyz critical lines " + std::to_string(xyz.critical));
  v.expect(xyz.critical_bound == 6 && xyz.critical <= 6, "xyz bound");

  std::vector<Line3> rulings;
  for (long i = 1; i <= 5; ++i) rulings.push_back(line(0, i, 0, 1, 0, i));
  for (long j = 1; j <= 5; ++j) rulings.push_back(line(j, 0, 0, 0, 1, j));
  const LineCensus par = count_classified_lines(Z() - X() * Y(), rulings);
  v.expect(par.critical == 0 && par.flat == 0 && par.ordinary == rulings.size(), "z-xy rulings");

  const std::vector<Line3> cone = {line(0, 0, 0, 3, 4, 5), line(0, 0, 0, 1, 0, 1), line(0, 0, 0, 0, 1, 1),
                                   line(0, 0, 0, 4, -3, 5), line(0, 0, 0, -5, 12, 13)};
  const LineCensus c = count_classified_lines(X() * X() + Y() * Y() - Z() * Z(), cone);
  v.expect(c.critical == 0 && c.flat == 0 && c.ordinary == cone.size(), "cone rulings");
  v.note("xyz: 3 critical of " + std::to_string(candidates.size()) + " candidates; z-xy 0/0; cone 0/0");
  return v;
}

Verdict lower_bound_generators() {
  Verdict v;
  for (int n = 1; n <= 4; ++n) {
    const GeneratedInstance g = gen_st_planar(n);
    const std::size_t nn = static_cast<std::size_t>(n);
    v.expect(build(g.instance).incidences() == nn * nn * nn * nn, g.label);
  }
  for (int n = 1; n <= 3; ++n) {
    for (int t = 1; t <= 3; ++t) {
      const GeneratedInstance g = gen_joint_lb_stacked(n, t);
      const IncidenceStructure s = build(g.instance);
      v.expect(s.incidences() == g.predicted.incidences, g.label + " incidences");
      v.expect(s.points().size() == g.predicted.points && s.lines().size() == g.predicted.lines, g.label + " sizes");
      const auto js = joints(g.instance.lines);
      for (const auto& a : g.instance.points) v.expect(std::binary_search(js.begin(), js.end(), a), g.label + " joint");
    }
  }
  v.note("N^4 for N=1..4; 9 stacked instances match");
  return v;
}

Verdict paraboloid() {
  Verdict v;
  const MultiPoly3 p = Z() - X() * Y();
  for (int r = 1; r <= 5; ++r) {
    const GeneratedInstance g = gen_paraboloid(r);
    const IncidenceStructure s = build(g.instance);
    const std::size_t rr = static_cast<std::size_t>(r);
    v.expect(s.incidences() == 2 * rr * rr, g.label + " incidences");
    for (std::size_t i = 0; i < s.points().size(); ++i) v.expect(s.multiplicity(i) == 2, g.label + " multiplicity");
    const ConditionReport c = check_conditions(s, 1);
    v.expect(!c.three_per_point && c.low_multiplicity_witness.has_value(), g.label + " witness");
    for (const auto& l : g.instance.lines) v.expect(vanishes_on_line(p, l), g.label + " ruling");
  }
  v.note("r=1..5");
  return v;
}

Verdict plane_covers() {
  Verdict v;
  const Point3 o = pt(0, 0, 0);
  const std::vector<Line3> axes = {line(0, 0, 0, 1, 0, 0), line(0, 0, 0, 0, 1, 0), line(0, 0, 0, 0, 0, 1)};
  v.expect(plane_cover(o, axes) == 2, "axes");
  for (long k = 1; k <= 6; ++k) {
    std::vector<Line3> pencil;
    for (long i = 0; i < k; ++i) pencil.push_back(line(0, 0, 0, 1 + i, 2 * i - 1, 3 - i));
    // all in the plane through o spanned by (1,-1,3) and (1,2,-1)
    v.expect(plane_cover(o, pencil) == 1, "pencil " + std::to_string(k));
  }
  for (int k = 1; k <= 6; ++k) {
    const IncidenceStructure s = build(gen_grid(k).instance);
    v.expect(plane_cover_sum(s) <= s.incidences(), "grid k=" + std::to_string(k));
  }
  v.expect(plane_cover_sum(build(gen_grid(2).instance)) == 16, "grid k=2 sum");
  v.note("axes 2, pencils 1, grid k=2 sum 16");
  return v;
}

void check_trace(Verdict& v, const std::vector<TraceRecord>& tr, const std::string& tag) {
  for (const auto& r : tr) {
    if (r.step == "pruning") {
      const Check* c = r.find_check("conservation");
      v.expect(c && c->holds && c->lhs == c->rhs, tag + " conservation");
    }
    if (r.poly) {
      for (const auto& l : r.vanishing_lines) v.expect(vanishes_on_line(*r.poly, l), tag + " vanishing claim");
    }
  }
}

Verdict pipeline() {
  Verdict v;
  std::size_t traces = 0;
  const auto traced = [&](const std::string& tag, const std::function<std::vector<TraceRecord>()>& f) {
    std::vector<TraceRecord> a, b;
    try {
      a = f();
      b = f();
    } catch (const HypothesisError&) {
      return;  // instances violating the hypotheses have no trace
    }
    ++traces;
    v.expect(serialize(a) == serialize(b), tag + " determinism");
    check_trace(v, a, tag);
  };
  PipelineConfig small;
  small.c = q(1, 4);
  small.t = q(1, 2);
  small.n0 = 2;
  small.unchecked = true;
  PipelineConfig seeded;
  seeded.rng_seed = 7;
  for (const auto& g : all_generated()) {
    if (g.instance.points.size() > 300) continue;
    for (const PipelineConfig& cfg : {seeded, small}) {
      traced(g.label + " point-count", [&] { return trace_thm9(g.instance, cfg); });
      traced(g.label + " incidence", [&] { return trace_thm11(g.instance, cfg); });
    }
    traced(g.label + " light/heavy", [&] { return trace_bourgain(g.instance, seeded); });
  }
  PipelineConfig bad;
  bad.t = q(1, 2);
  bool rejected = false;
  try {
    validate_config(bad);
  } catch (const ConfigError&) {
    rejected = true;
  }
  v.expect(rejected, "t = 1/2 accepted");
  bool accepted = true;
  try {
    validate_config(PipelineConfig{});
    validate_config(PipelineConfig{}, true);
  } catch (const ConfigError&) {
    accepted = false;
  }
  v.expect(accepted, "defaults rejected");
  v.note(std::to_string(traces) + " traces reproduced and verified");
  return v;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  if (cli::run(args, out, err) != cli::kOk) return "exit failure: " + err.str();
  return out.str();
}

Verdict cli_round_trip() {
  Verdict v;
  Random rng(1005);
  for (int trial = 0; trial < kRoundTrips; ++trial) {
    Instance inst;
    for (long i = rng.integer(0, 15); i > 0; --i) inst.points.push_back(rng.rational_point(4));
    for (long i = rng.integer(0, 15); i > 0; --i) inst.lines.push_back(canonicalize_line(rng.rational_point(4), rng.nonzero_direction()));
    const Instance once = cli::parse_instance(cli::serialize_instance(inst));
    const std::string text = cli::serialize_instance(once);
    v.expect(cli::serialize_instance(cli::parse_instance(text)) == text, "fixed point " + std::to_string(trial));
  }
  const std::filesystem::path golden(JOINTLAB_GOLDEN_DIR);
  v.expect(run_cli({"gen", "grid", "--k", "2"}) == slurp(golden / "gen_grid_k2.txt"), "golden grid");
  v.expect(run_cli({"gen", "paraboloid", "--r", "3"}) == slurp(golden / "gen_paraboloid_r3.txt"), "golden paraboloid");
  const auto dir = std::filesystem::temp_directory_path() / "jointlab_acceptance";
  std::filesystem::create_directories(dir);
  const auto grid3 = dir / "grid3.txt";
  std::ofstream(grid3) << run_cli({"gen", "grid", "--k", "3"});
  v.expect(run_cli({"trace", "thm9", grid3.string(), "--seed", "7"}) == slurp(golden / "trace_point_count_grid3_seed7.txt"),
           "golden trace");
  v.note(std::to_string(kRoundTrips) + " round trips, 3 golden files");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"grid exactness", grid_exactness},
      {"joint-count bound", joint_bound},
      {"vanishing-polynomial fitting", fitting},
      {"flatness polynomial suite", flatness_suite},
      {"product identity", product_identity},
      {"critical/flat line bounds", line_bounds},
      {"lower-bound generators", lower_bound_generators},
      {"paraboloid counterexample", paraboloid},
      {"plane covers", plane_covers},
      {"pipeline determinism and conservation", pipeline},
      {"cli round trip and golden files", cli_round_trip},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (v.ok() ? "PASS " : "FAIL ") << name << ": " << v.detail() << '\n';
    failed += v.ok() ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
