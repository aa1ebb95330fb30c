#include "billiards/cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "billiards/billiard/dynamics.hpp"
#include "billiards/billiard/verify.hpp"
#include "billiards/error.hpp"
#include "billiards/geometry/curve_io.hpp"
#include "billiards/geometry/fermat.hpp"
#include "billiards/io.hpp"
#include "billiards/ivrii/real_billiard.hpp"
#include "billiards/ivrii/reflectivity.hpp"
#include "billiards/localmodel/local_model.hpp"
#include "billiards/midpoint/midpoint.hpp"
#include "billiards/stability/lattice.hpp"

namespace billiards {

namespace {

const std::vector<int> kSuiteDegrees{2, 3, 4, 5, 6, 8};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outcome {
  std::vector<Report> reports;
  Json extra = Json::object();
  std::string text;
  std::optional<std::string> csv;
  std::optional<std::string> svg;
};

int pick(int value, int fallback) { return value > 0 ? value : fallback; }
double pick(double value, double fallback) { return value > 0.0 ? value : fallback; }

std::vector<int> degrees(const RunConfig& c, const std::vector<int>& fallback) {
  const std::vector<int> ds = c.degrees.empty() ? fallback : c.degrees;
  for (int d : ds)
    if (d < 2) throw UsageError("--degree must be >= 2, got " + std::to_string(d));
  return ds;
}

LevelBudget level_budget(const RunConfig& c) {
  LevelBudget b;
  if (c.per_level > 0) b.per_level = c.per_level;
  return b;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string checks_csv(const std::vector<Report>& reports) {
  std::ostringstream os;
  os << "report,check,passed,witness\n";
  for (const Report& r : reports)
    for (const Check& ch : r.checks)
      os << csv_quote(r.title) << ',' << ch.name << ',' << (ch.passed ? 1 : 0) << ',' << csv_quote(ch.witness.dump())
         << '\n';
  return os.str();
}

std::string orbit_csv(const std::vector<std::pair<int, MidOrbit>>& orbits) {
  std::string out;
  for (const auto& [d, orbit] : orbits) {
    std::istringstream rows(orbit.to_csv());
    std::string line;
    bool header = true;
    while (std::getline(rows, line)) {
      if (header) {
        if (out.empty()) out += "d," + line + "\n";
        header = false;
        continue;
      }
      out += std::to_string(d) + "," + line + "\n";
    }
  }
  return out;
}

// Subcommands.

Outcome run_dd(const RunConfig& c) {
  Outcome o;
  Json summaries = Json::array();
  std::ostringstream text, csv;
  csv.precision(17);
  csv << "d,lambda1,lambda1_exact,lower_bound,naive_bound,conjecture_rho,char_poly_product,char_poly_printed\n";
  for (int d : degrees(c, kSuiteDegrees)) {
    Json s = dd_summary(d);
    Report r = consistency_report(d);
    const Lambda1 l = lambda1(d);
    const BigInt lower = BigInt(2 * d * d - 3 * d - 1);
    r.add("lambda1_lower_bound", l.at_least(lower), {{"lambda1", l.value}, {"bound", 2 * d * d - 3 * d - 1}});
    if (d == 2) r.add("lambda1_integrable", l.surd() == "1", {{"lambda1", l.surd()}});

    text.precision(12);
    text << "d = " << d << "\n"
         << "  lambda1         " << s["lambda1_exact"].get<std::string>() << " = " << l.value << "\n"
         << "  lower bound     " << s["lower_bound"] << "\n"
         << "  naive bound     " << s["naive_bound"].get<double>() << "\n"
         << "  rho_d           " << s["conjecture_rho"].get<double>() << " (< " << s["conjecture_upper"] << ")\n"
         << "  char poly r*s   " << s["char_poly_product"].get<std::string>() << "\n"
         << "  char poly print " << s["char_poly_printed"].get<std::string>() << "\n";
    const Json& notes = s["consistency"]["notes"];
    text << "  consistency     trace " << notes["trace"]["product"] << " (product), " << notes["trace"]["printed"]
         << " (printed), " << notes["trace"]["displayed_factorization"] << " (displayed factorization); "
         << notes["entries_equal"] << " of 16 entries agree\n";
    for (const Json& m : notes["entry_mismatches"])
      text << "    entry (" << m["row"] << ", " << m["col"] << "): product " << m["product"].get<std::string>()
           << ", printed " << m["printed"].get<std::string>() << "\n";

    csv << d << ',' << l.value << ',' << csv_quote(l.surd()) << ',' << s["lower_bound"] << ','
        << s["naive_bound"].get<double>() << ',' << s["conjecture_rho"].get<double>() << ','
        << csv_quote(s["char_poly_product"].get<std::string>()) << ','
        << csv_quote(s["char_poly_printed"].get<std::string>()) << '\n';
    s.erase("consistency");
    summaries.push_back(std::move(s));
    o.reports.push_back(std::move(r));
  }
  o.extra["dd"] = std::move(summaries);
  o.text = text.str();
  o.csv = csv.str();
  return o;
}

Outcome run_verify_series(const RunConfig& c) {
  Outcome o;
  for (int d : degrees(c, kSuiteDegrees)) o.reports.push_back(verify_series(d, pick(c.order, 3 * d)));
  return o;
}

Outcome run_verify_geometry(const RunConfig& c) {
  Outcome o;
  for (int d : degrees(c, kSuiteDegrees)) o.reports.push_back(verify_geometry(d));
  return o;
}

Outcome run_midpoint_scan(const RunConfig& c) {
  Outcome o;
  std::vector<std::pair<int, MidOrbit>> orbits;
  Json levels = Json::array();
  for (int d : degrees(c, kSuiteDegrees)) {
    InvarianceOptions opt;
    opt.d = d;
    opt.samples = pick(c.samples, 1000);
    opt.iters = pick(c.iters, 10);
    opt.tol = pick(c.tol, 1e-9);
    opt.seed = c.seed;
    opt.boundary = c.boundary;
    opt.budget = level_budget(c);
    MidOrbit orbit;
    o.reports.push_back(invariance_scan(opt, &orbit));
    levels.push_back(orbit.to_json());
    orbits.emplace_back(d, std::move(orbit));
  }
  o.extra["orbits"] = std::move(levels);
  o.csv = orbit_csv(orbits);
  return o;
}

template <typename F>
Outcome run_mid_orbit(const RunConfig& c, F&& make) {
  Outcome o;
  std::vector<std::pair<int, MidOrbit>> orbits;
  Json levels = Json::array();
  for (int d : degrees(c, kSuiteDegrees)) {
    MidOrbit orbit;
    o.reports.push_back(make(d, &orbit));
    levels.push_back(orbit.to_json());
    orbits.emplace_back(d, std::move(orbit));
  }
  o.extra["orbits"] = std::move(levels);
  o.csv = orbit_csv(orbits);
  return o;
}

Outcome run_orbit(const RunConfig& c) {
  Outcome o;
  const QuadraticForm theta = QuadraticForm::euclidean();
  std::vector<std::pair<std::string, PlaneCurve>> curves;
  if (!c.curve.empty()) {
    curves.emplace_back(c.curve, read_curve_file(c.curve));
  } else {
    for (int d : degrees(c, {3})) curves.emplace_back("fermat_hyperbola(" + std::to_string(d) + ")", fermat_hyperbola(d));
  }
  Json trees = Json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "curve,index,parent,depth,multiplicity,weight,flag,x0_re,x0_im,x1_re,x1_im,w_re,w_im\n";
  for (const auto& [name, curve] : curves) {
    const int d = curve.degree();
    std::mt19937_64 rng(c.seed);
    PhasePoint p = sample_phase_point(curve, rng);
    const bool fermat = c.curve.empty();
    if (fermat) {
      const IndeterminacyCatalog catalog = IndeterminacyCatalog::fermat(d);
      while (catalog.classify(p).tag != IndeterminacyTag::Regular) p = sample_phase_point(curve, rng);
    }
    OrbitOptions opt;
    opt.depth = pick(c.depth, 3);
    opt.tol = pick(c.tol, kStepTol);
    const OrbitTree tree = orbit_tree(curve, theta, p, opt);

    // Each unflagged node passes its weight to d - 1 children (with multiplicity).
    std::vector<std::uint64_t> expanded(static_cast<std::size_t>(opt.depth) + 1, 0), arrived(expanded.size(), 0);
    std::size_t off_curve = 0;
    for (const OrbitNode& n : tree.nodes) {
      arrived[static_cast<std::size_t>(n.depth)] += n.weight;
      if (!n.flag && n.depth < opt.depth) expanded[static_cast<std::size_t>(n.depth)] += n.weight;
      if (!curve.contains(n.point.x, 1e-8)) ++off_curve;
    }
    bool conserved = true;
    for (int k = 0; k < opt.depth; ++k)
      conserved = conserved && arrived[static_cast<std::size_t>(k) + 1] ==
                                   expanded[static_cast<std::size_t>(k)] * static_cast<std::uint64_t>(d - 1);
    Report r;
    r.title = "orbit tree, " + name;
    r.add("multiplicity_conserved", conserved, {{"weights_by_depth", arrived}});
    r.add("nodes_on_curve", off_curve == 0, {{"off_curve", off_curve}});
    r.notes = {{"curve", name}, {"depth", opt.depth}, {"nodes", tree.nodes.size()}, {"seed", c.seed},
               {"start", phase_to_json(p)}};
    o.reports.push_back(std::move(r));
    trees.push_back({{"curve", name}, {"tree", tree.to_json()}});

    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      const OrbitNode& n = tree.nodes[i];
      const RiemannPoint w = n.point.v.parameter();
      csv << csv_quote(name) << ',' << i << ',' << n.parent << ',' << n.depth << ',' << n.multiplicity << ','
          << n.weight << ',' << (n.flag ? std::string(to_string(*n.flag)) : std::string()) << ','
          << n.point.x[0].real() << ',' << n.point.x[0].imag() << ',' << n.point.x[1].real() << ','
          << n.point.x[1].imag() << ',';
      if (w.is_infinite())
        csv << "inf,inf\n";
      else
        csv << w.value().real() << ',' << w.value().imag() << '\n';
    }
  }
  o.extra["trees"] = std::move(trees);
  o.csv = csv.str();
  return o;
}

Outcome run_reflective_scan(const RunConfig& c) {
  Outcome o;
  ReflectiveScanOptions opt;
  opt.n = pick(c.depth, 4);
  opt.samples = pick(c.samples, 500);
  opt.tol = pick(c.tol, 1e-6);
  opt.seed = c.seed;
  for (int d : degrees(c, {3})) {
    opt.d = d;
    o.reports.push_back(reflective_scan_complex(opt));
  }
  for (int period = 2; period <= std::max(2, opt.n); ++period) o.reports.push_back(circle_positive_control(period, opt.tol));
  o.csv = checks_csv(o.reports);
  return o;
}

struct TableChoice {
  RealTable table;
  std::string name;
  std::optional<std::array<double, 2>> ellipse;
};

TableChoice real_table(const RunConfig& c, const std::string& fallback) {
  if (!c.curve.empty()) {
    if (!c.interior) throw UsageError("--curve needs --interior x,y");
    return {make_table(read_curve_file(c.curve), *c.interior), c.curve, std::nullopt};
  }
  const std::string name = !c.table.empty() ? c.table : (c.ellipse ? "ellipse" : fallback);
  if (name == "circle") return {ellipse_table(1.0, 1.0), name, std::array<double, 2>{1.0, 1.0}};
  if (name == "ellipse") {
    const std::array<double, 2> ab = c.ellipse.value_or(std::array<double, 2>{2.0, 1.0});
    if (!(ab[0] > 0.0 && ab[1] > 0.0)) throw UsageError("--ellipse needs positive semi-axes");
    return {ellipse_table(ab[0], ab[1]), name, ab};
  }
  if (name == "quartic") return {transcendental_quartic_table(), name, std::nullopt};
  throw UsageError("--table must be circle, ellipse or quartic, got " + name);
}

Outcome run_billiard_sim(const RunConfig& c) {
  Outcome o;
  const TableChoice t = real_table(c, "ellipse");
  PropertyOptions opt;
  opt.bounces = pick(c.iters, 100);
  opt.trajectories = pick(c.samples, 20);
  opt.seed = c.seed;
  opt.ellipse = t.ellipse;
  Report r = real_property_suite(t.table, opt);
  r.title += ", " + t.name;
  o.reports.push_back(std::move(r));

  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> theta(0.0, 2.0 * std::numbers::pi), phi(0.05, std::numbers::pi - 0.05);
  std::vector<TrajectoryRecord> shown;
  for (int k = 0; k < std::min(opt.trajectories, 5); ++k)
    shown.push_back(simulate(t.table, state_from_angles(t.table, theta(rng), phi(rng)), opt.bounces));
  std::ostringstream csv;
  csv.precision(17);
  csv << "trajectory,bounce,x,y,vx,vy\n";
  Json trajectories = Json::array();
  for (std::size_t k = 0; k < shown.size(); ++k) {
    for (std::size_t i = 0; i < shown[k].states.size(); ++i) {
      const RealBilliardState& s = shown[k].states[i];
      csv << k << ',' << i << ',' << s.x[0] << ',' << s.x[1] << ',' << s.v[0] << ',' << s.v[1] << '\n';
    }
    trajectories.push_back({{"bounces", shown[k].states.size() - 1},
                            {"total_length", shown[k].total_length},
                            {"flag", shown[k].flag ? Json(std::string(to_string(*shown[k].flag))) : Json(nullptr)}});
  }
  o.extra["table"] = t.name;
  o.extra["trajectories"] = std::move(trajectories);
  o.csv = csv.str();
  o.svg = render_svg(t.table, shown);
  return o;
}

Outcome run_ivrii_scan(const RunConfig& c) {
  Outcome o;
  const TableChoice t = real_table(c, "circle");
  const int n = pick(c.depth, 2);
  GridSpec grid;
  if (c.grid[0] > 0) grid.theta_cells = c.grid[0];
  if (c.grid[1] > 0) grid.angle_cells = c.grid[1];
  const std::vector<double> eps = c.eps.empty() ? std::vector<double>{0.01, 0.02, 0.04, 0.08, 0.16} : c.eps;
  const NearPeriodicResult res = near_periodic_scan(t.table, n, grid, eps);

  Report r;
  r.title = "near-periodic measure, " + t.name + ", n = " + std::to_string(n);
  std::vector<std::size_t> order(eps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return eps[a] < eps[b]; });
  bool monotone = true;
  for (std::size_t i = 1; i < order.size(); ++i) monotone = monotone && res.measure[order[i]] >= res.measure[order[i - 1]];
  r.add("measure_monotone", monotone);
  r.add("exponent", std::isfinite(res.exponent) && res.exponent >= c.min_exponent,
        {{"exponent", std::isfinite(res.exponent) ? Json(res.exponent) : Json(nullptr)}, {"min", c.min_exponent}});
  r.notes = res.to_json();
  o.reports.push_back(std::move(r));

  // The cell closest to periodic, drawn for n bounces.
  const CellRecord* best = nullptr;
  for (const CellRecord& cell : res.cells)
    if (!cell.flag && (!best || cell.distance < best->distance)) best = &cell;
  std::vector<TrajectoryRecord> shown;
  if (best) shown.push_back(simulate(t.table, state_from_angles(t.table, best->theta, best->phi), n));
  o.extra["table"] = t.name;
  o.csv = res.to_csv();
  o.svg = render_svg(t.table, shown);
  return o;
}

Outcome dispatch(const RunConfig& c) {
  const std::string& s = c.subcommand;
  if (s == "dd") return run_dd(c);
  if (s == "verify-series") return run_verify_series(c);
  if (s == "verify-geometry") return run_verify_geometry(c);
  if (s == "midpoint-scan") return run_midpoint_scan(c);
  if (s == "stability-orbit")
    return run_mid_orbit(c, [&](int d, MidOrbit* orbit) { return stability_orbit(d, pick(c.iters, 30), level_budget(c), orbit); });
  if (s == "witness")
    return run_mid_orbit(c, [&](int d, MidOrbit* orbit) {
      return nonreflectivity_witness(d, pick(c.depth, 6), level_budget(c), orbit);
    });
  if (s == "orbit") return run_orbit(c);
  if (s == "reflective-scan") return run_reflective_scan(c);
  if (s == "billiard-sim") return run_billiard_sim(c);
  if (s == "ivrii-scan") return run_ivrii_scan(c);
  throw UsageError("unknown subcommand '" + s + "'");
}

std::string format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::Text: return "text";
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Svg: return "svg";
  }
  return "text";
}

Json config_json(const RunConfig& c) {
  Json j = {{"degrees", c.degrees},
            {"order", c.order},
            {"depth", c.depth},
            {"samples", c.samples},
            {"iters", c.iters},
            {"tol", c.tol},
            {"seed", c.seed},
            {"format", format_name(c.format)}};
  if (!c.curve.empty()) j["curve"] = c.curve;
  if (c.interior) j["interior"] = *c.interior;
  if (!c.table.empty()) j["table"] = c.table;
  if (c.ellipse) j["ellipse"] = *c.ellipse;
  if (!c.eps.empty()) j["eps"] = c.eps;
  if (c.grid[0] > 0 || c.grid[1] > 0) j["grid"] = c.grid;
  if (c.per_level > 0) j["per_level"] = c.per_level;
  if (c.boundary) j["boundary"] = true;
  return j;
}

bool all_passed(const std::vector<Report>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.passed(); });
}

std::string render_text(const Outcome& o) {
  std::ostringstream os;
  os << o.text;
  std::size_t failed = 0, total = 0;
  for (const Report& r : o.reports) {
    os << "== " << r.title << "\n";
    for (const Check& ch : r.checks) {
      ++total;
      if (!ch.passed) ++failed;
      os << "  [" << (ch.passed ? "PASS" : "FAIL") << "] " << ch.name;
      if (!ch.witness.empty()) os << "  " << ch.witness.dump();
      os << "\n";
    }
  }
  if (failed == 0)
    os << "result: PASS (" << total << " checks)\n";
  else
    os << "result: FAIL (" << failed << " of " << total << " checks failed)\n";
  return os.str();
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"dd",    "verify-series",   "verify-geometry", "midpoint-scan",
                                              "stability-orbit", "witness", "orbit", "reflective-scan",
                                              "billiard-sim",    "ivrii-scan"};
  return names;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Outcome o;
  try {
    o = dispatch(cfg);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::InvalidDegree || e.code() == ErrorCode::InvalidArgument ? kExitUsage : kExitError;
  }

  std::string artifact;
  switch (cfg.format) {
    case OutputFormat::Text: artifact = render_text(o); break;
    case OutputFormat::Json: {
      Json doc = {{"schema", 1}, {"command", cfg.subcommand}, {"config", config_json(cfg)},
                  {"passed", all_passed(o.reports)}};
      Json reports = Json::array();
      for (const Report& r : o.reports) reports.push_back(r.to_json());
      doc["reports"] = std::move(reports);
      for (auto it = o.extra.begin(); it != o.extra.end(); ++it) doc[it.key()] = it.value();
      artifact = doc.dump(2) + "\n";
      break;
    }
    case OutputFormat::Csv: artifact = o.csv ? *o.csv : checks_csv(o.reports); break;
    case OutputFormat::Svg:
      if (!o.svg) {
        err << "usage error: --svg is supported by billiard-sim and ivrii-scan\n";
        return kExitUsage;
      }
      artifact = *o.svg;
      break;
  }

  if (cfg.out.empty()) {
    out << artifact;
  } else {
    try {
      write_file_atomic(cfg.out, artifact);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kExitError;
    }
  }

  if (!all_passed(o.reports)) {
    Json failures = Json::array();
    for (const Report& r : o.reports)
      for (const Check& ch : r.checks)
        if (!ch.passed) failures.push_back({{"report", r.title}, {"check", ch.name}, {"witness", ch.witness}});
    err << Json({{"schema", 1}, {"command", cfg.subcommand}, {"failed", std::move(failures)}}).dump() << "\n";
    return kExitFail;
  }
  return kExitPass;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Algebraic billiards in the Fermat hyperbola: verifications and scans.", "billiards"};
  app.require_subcommand(1);
  RunConfig cfg;
  bool json = false, csv = false, svg = false;
  std::vector<double> interior, ellipse;
  std::string grid;

  app.add_option("--degree", cfg.degrees, "Degrees d (comma separated or repeated)")->delimiter(',');
  app.add_option("--order", cfg.order, "Series order N (verify-series; default 3d)");
  app.add_option("--depth", cfg.depth, "Tree depth, period n or witness levels");
  app.add_option("--samples", cfg.samples, "Random samples or trajectories");
  app.add_option("--iters", cfg.iters, "Iterations, levels or bounces");
  app.add_option("--tol", cfg.tol, "Tolerance");
  app.add_option("--seed", cfg.seed, "Random seed");
  auto* fj = app.add_flag("--json", json, "JSON output");
  auto* fc = app.add_flag("--csv", csv, "CSV output");
  auto* fs = app.add_flag("--svg", svg, "SVG output (billiard-sim, ivrii-scan)");
  fj->excludes(fc)->excludes(fs);
  fc->excludes(fs);
  app.add_option("--out", cfg.out, "Output path, written atomically");
  app.add_option("--curve", cfg.curve, "Curve file (JSON)");
  app.add_option("--interior", interior, "Interior seed x,y of a real table")->delimiter(',')->expected(2);
  app.add_option("--table", cfg.table, "Real table preset: circle, ellipse, quartic");
  app.add_option("--ellipse", ellipse, "Ellipse semi-axes a,b")->delimiter(',')->expected(2);
  app.add_option("--eps", cfg.eps, "Return-distance thresholds (ivrii-scan)")->delimiter(',');
  app.add_option("--grid", grid, "Cells THETAxANGLE (ivrii-scan), e.g. 64x4096");
  app.add_option("--min-exponent", cfg.min_exponent, "Smallest accepted measure exponent (ivrii-scan)");
  app.add_option("--per-level", cfg.per_level, "Distinct states kept per level (midpoint)");
  app.add_flag("--boundary", cfg.boundary, "Seed midpoint-scan on |u| = 1");

  const std::vector<std::pair<std::string, std::string>> descriptions{
      {"dd", "Dynamical degree, lattice consistency and bounds"},
      {"verify-series", "Exact local series checks at the isotropic tangency points"},
      {"verify-geometry", "Points at infinity, Ind r catalog and symmetries"},
      {"midpoint-scan", "Invariance of |u| >= 1 under the midpoint correspondence"},
      {"stability-orbit", "Exc orbits avoid the ind points"},
      {"witness", "Orbit of u = infinity on the midpoint divisor"},
      {"orbit", "Orbit tree of the billiard correspondence"},
      {"reflective-scan", "Complex n-reflectivity scan with the circle positive control"},
      {"billiard-sim", "Real billiard property suite and trajectories"},
      {"ivrii-scan", "Near-periodic measure of a real table"}};
  for (const auto& [name, text] : descriptions) app.add_subcommand(name, text)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (json) cfg.format = OutputFormat::Json;
  if (csv) cfg.format = OutputFormat::Csv;
  if (svg) cfg.format = OutputFormat::Svg;
  if (interior.size() == 2) cfg.interior = std::array<double, 2>{interior[0], interior[1]};
  if (ellipse.size() == 2) cfg.ellipse = std::array<double, 2>{ellipse[0], ellipse[1]};
  if (!grid.empty()) {
    const auto x = grid.find('x');
    try {
      if (x == std::string::npos) throw std::invalid_argument(grid);
      cfg.grid = {std::stoi(grid.substr(0, x)), std::stoi(grid.substr(x + 1))};
    } catch (const std::exception&) {
      err << "usage error: --grid expects THETAxANGLE, got " << grid << "\n";
      return kExitUsage;
    }
  }
  return run(cfg, out, err);
}

}  // namespace billiards
