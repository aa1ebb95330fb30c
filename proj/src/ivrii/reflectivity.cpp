#include "billiards/ivrii/reflectivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "billiards/geometry/fermat.hpp"
#include "billiards/util/parallel.hpp"

namespace billiards {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Json counts_to_json(const std::vector<ReturnCount>& counts) {
  Json arr = Json::array();
  for (const ReturnCount& c : counts)
    arr.push_back({{"period", c.period},
                   {"returns", c.returns},
                   {"min_distance", std::isfinite(c.min_distance) ? Json(c.min_distance) : Json(nullptr)},
                   {"flagged_nodes", c.flagged_nodes}});
  return arr;
}

PlaneCurve unit_circle() { return PlaneCurve(2, {{2, 0, 0, 1.0}, {0, 2, 0, 1.0}, {0, 0, 2, -1.0}}); }

}  // namespace

std::vector<ReturnCount> scan_returns(const PlaneCurve& c, const QuadraticForm& theta,
                                      const std::vector<PhasePoint>& starts, int n, double tol,
                                      std::size_t node_budget) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  struct PerSample {
    std::vector<double> min_distance;
    std::vector<int> flagged;
  };
  std::vector<PerSample> per(starts.size());
  OrbitOptions opt;
  opt.depth = n;
  opt.node_budget = node_budget;
  parallel_for(starts.size(), [&](std::size_t s) {
    PerSample& ps = per[s];
    ps.min_distance.assign(static_cast<std::size_t>(n) + 1, kInf);
    ps.flagged.assign(static_cast<std::size_t>(n) + 1, 0);
    const OrbitTree tree = orbit_tree(c, theta, starts[s], opt);
    for (const OrbitNode& node : tree.nodes) {
      if (node.depth == 0) continue;
      const auto k = static_cast<std::size_t>(node.depth);
      if (node.flag) {
        ++ps.flagged[k];
        continue;
      }
      ps.min_distance[k] = std::min(ps.min_distance[k], phase_distance(node.point, starts[s]));
    }
  });
  std::vector<ReturnCount> out;
  for (int k = 1; k <= n; ++k) {
    ReturnCount rc;
    rc.period = k;
    rc.min_distance = kInf;
    for (const PerSample& ps : per) {
      const double m = ps.min_distance[static_cast<std::size_t>(k)];
      if (m < tol) ++rc.returns;
      rc.min_distance = std::min(rc.min_distance, m);
      rc.flagged_nodes += ps.flagged[static_cast<std::size_t>(k)];
    }
    out.push_back(rc);
  }
  return out;
}

Report reflective_scan_complex(const ReflectiveScanOptions& options) {
  if (options.samples < 1) throw Error(ErrorCode::InvalidArgument, "samples must be >= 1");
  const PlaneCurve c = fermat_hyperbola(options.d);
  const QuadraticForm theta = QuadraticForm::euclidean();
  const IndeterminacyCatalog catalog = IndeterminacyCatalog::fermat(options.d);
  std::mt19937_64 rng(options.seed);
  std::vector<PhasePoint> starts;
  int rejected = 0;
  while (static_cast<int>(starts.size()) < options.samples) {
    const PhasePoint p = sample_phase_point(c, rng);
    if (catalog.classify(p).tag != IndeterminacyTag::Regular) {
      ++rejected;
      continue;
    }
    starts.push_back(p);
  }
  const std::vector<ReturnCount> counts = scan_returns(c, theta, starts, options.n, options.tol, options.node_budget);
  int total = 0;
  for (const ReturnCount& rc : counts) total += rc.returns;

  Report r;
  r.title = "complex reflectivity scan, d = " + std::to_string(options.d);
  r.add("no_returns", total == 0, {{"returns", total}});
  r.notes = {{"d", options.d},
             {"n", options.n},
             {"samples", options.samples},
             {"tol", options.tol},
             {"seed", options.seed},
             {"rejected_near_indeterminacy", rejected},
             {"images", "pointwise: each tree node is one image of its parent, so returns are branch composites"},
             {"periods", counts_to_json(counts)}};
  return r;
}

PhasePoint circle_rotation_start(int period, int k, double detune) {
  if (period < 2) throw Error(ErrorCode::InvalidArgument, "period must be >= 2");
  const double angle = std::numbers::pi / 2.0 + std::numbers::pi * k / period + detune;
  return {{1.0, 0.0}, Direction(RiemannPoint(std::polar(1.0, angle)))};
}

Report circle_positive_control(int period, double tol) {
  const PlaneCurve c = unit_circle();
  const QuadraticForm theta = QuadraticForm::euclidean();
  const std::vector<ReturnCount> tuned = scan_returns(c, theta, {circle_rotation_start(period)}, period + 1, tol);
  const std::vector<ReturnCount> detuned =
      scan_returns(c, theta, {circle_rotation_start(period, 1, 1e-3)}, period, tol);
  bool earlier = false;
  for (int k = 1; k < period; ++k) earlier = earlier || tuned[static_cast<std::size_t>(k - 1)].returns > 0;
  const ReturnCount& at = tuned[static_cast<std::size_t>(period - 1)];

  Report r;
  r.title = "circle positive control, period " + std::to_string(period);
  r.add("returns_at_period", at.returns == 1, {{"min_distance", at.min_distance}, {"tol", tol}});
  r.add("no_earlier_return", !earlier);
  r.add("detuned_no_return", detuned.back().returns == 0, {{"min_distance", detuned.back().min_distance}});
  r.notes = {{"period", period}, {"tuned", counts_to_json(tuned)}, {"detuned", counts_to_json(detuned)}};
  return r;
}

}  // namespace billiards
