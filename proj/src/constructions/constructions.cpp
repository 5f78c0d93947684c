#include "jointlab/constructions.hpp"

#include "jointlab/errors.hpp"

namespace jointlab {

namespace {

void require_positive(int v, const char* what) {
  if (v < 1) throw DegenerateInputError(std::string(what) + " must be at least 1");
}

Line3 line_at(long x, long y, long z, long dx, long dy, long dz) {
  return canonicalize_line(Point3(x, y, z), Vec3(dx, dy, dz));
}

struct PlanarPoint {
  long x, y;
  std::size_t lines;  // planar lines through it
};

// Points of the planar lattice lying on at least two planar lines, in x, y order.
std::vector<PlanarPoint> rich_planar_points(long n) {
  std::vector<PlanarPoint> out;
  for (long x = 1; x <= n; ++x) {
    for (long y = 1; y <= 2 * n * n; ++y) {
      std::size_t through = 0;
      for (long a = 1; a <= n; ++a) {
        const long b = y - a * x;
        if (b >= 1 && b <= n * n) ++through;
      }
      if (through >= 2) out.push_back({x, y, through});
    }
  }
  return out;
}

void add_planar_lines(Instance& inst, long n, long z) {
  for (long a = 1; a <= n; ++a) {
    for (long b = 1; b <= n * n; ++b) inst.lines.push_back(line_at(0, b, z, 1, a, 0));
  }
}

}  // namespace

GeneratedInstance gen_grid(int k) {
  require_positive(k, "grid size k");
  GeneratedInstance g;
  g.label = "grid k=" + std::to_string(k);
  for (long i = 1; i <= k; ++i) {
    for (long j = 1; j <= k; ++j) {
      g.instance.lines.push_back(line_at(0, i, j, 1, 0, 0));
      g.instance.lines.push_back(line_at(i, 0, j, 0, 1, 0));
      g.instance.lines.push_back(line_at(i, j, 0, 0, 0, 1));
      for (long l = 1; l <= k; ++l) g.instance.points.emplace_back(i, j, l);
    }
  }
  const std::size_t kk = static_cast<std::size_t>(k);
  g.predicted = {3 * kk * kk, kk * kk * kk, kk * kk * kk, 3 * kk * kk * kk};
  return g;
}

GeneratedInstance gen_st_planar(int n) {
  require_positive(n, "planar size N");
  GeneratedInstance g;
  g.label = "st N=" + std::to_string(n);
  const long N = n;
  add_planar_lines(g.instance, N, 0);
  for (long x = 1; x <= N; ++x) {
    for (long y = 1; y <= 2 * N * N; ++y) g.instance.points.emplace_back(x, y, 0);
  }
  const std::size_t s = static_cast<std::size_t>(n);
  g.predicted = {s * s * s, 2 * s * s * s, 0, s * s * s * s};
  return g;
}

GeneratedInstance gen_joint_lb_small(int n) {
  return gen_joint_lb_stacked(n, 1);
}

GeneratedInstance gen_joint_lb_stacked(int n, int t) {
  require_positive(n, "planar size N");
  require_positive(t, "number of levels t");
  GeneratedInstance g;
  g.label = t == 1 ? "joint-lb-small N=" + std::to_string(n)
                   : "joint-lb-stacked N=" + std::to_string(n) + " t=" + std::to_string(t);
  const long N = n;
  const auto base = rich_planar_points(N);
  std::size_t base_incidences = 0;
  for (const auto& p : base) base_incidences += p.lines;
  for (long z = 0; z < t; ++z) {
    add_planar_lines(g.instance, N, z);
    for (const auto& p : base) g.instance.points.emplace_back(p.x, p.y, z);
  }
  for (const auto& p : base) g.instance.lines.push_back(line_at(p.x, p.y, 0, 0, 0, 1));

  const std::size_t levels = static_cast<std::size_t>(t);
  const std::size_t planar_lines = static_cast<std::size_t>(N * N * N);
  const std::size_t m = base.size();
  g.predicted.lines = levels * planar_lines + m;
  g.predicted.points = levels * m;
  g.predicted.joints = levels * m;
  g.predicted.incidences = levels * base_incidences + levels * m;
  g.report.emplace_back("points_per_level", std::to_string(m));
  g.report.emplace_back("planar_incidences_per_level", std::to_string(base_incidences));
  return g;
}

GeneratedInstance gen_paraboloid(int r) {
  require_positive(r, "ruling count r");
  GeneratedInstance g;
  g.label = "paraboloid r=" + std::to_string(r);
  for (long i = 1; i <= r; ++i) g.instance.lines.push_back(line_at(0, i, 0, 1, 0, i));
  for (long j = 1; j <= r; ++j) g.instance.lines.push_back(line_at(j, 0, 0, 0, 1, j));
  for (long i = 1; i <= r; ++i) {
    for (long j = 1; j <= r; ++j) g.instance.points.emplace_back(j, i, i * j);
  }
  const std::size_t s = static_cast<std::size_t>(r);
  g.predicted = {2 * s, s * s, 0, 2 * s * s};
  return g;
}

GeneratedInstance gen_bourgain_grid(int k) {
  GeneratedInstance g = gen_grid(k);
  g.label = "bourgain k=" + std::to_string(k);
  const long kk = k;
  const long n = 3 * kk * kk;
  // Squared comparisons against sqrt(n): k^2 vs n and (2k)^2 vs n.
  const Rational line_ratio = make_rational(kk * kk, n);
  const Rational plane_ratio = make_rational(4 * kk * kk, n);
  g.report.emplace_back("lines", std::to_string(n));
  g.report.emplace_back("points_per_line", std::to_string(kk));
  g.report.emplace_back("max_lines_per_plane", std::to_string(2 * kk));
  g.report.emplace_back("points_per_line_sq_over_n", to_fraction_string(line_ratio));
  g.report.emplace_back("lines_per_plane_sq_over_n", to_fraction_string(plane_ratio));
  g.report.emplace_back("rich_lines_hypothesis", line_ratio >= 1 ? "holds" : "fails");
  g.report.emplace_back("few_lines_per_plane_hypothesis", plane_ratio <= 1 ? "holds" : "fails");
  return g;
}

}  // namespace jointlab
