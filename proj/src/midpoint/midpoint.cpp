#include "billiards/midpoint/midpoint.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "billiards/algebra/polynomial.hpp"
#include "billiards/error.hpp"
#include "billiards/util/parallel.hpp"

namespace billiards {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMergeTol = 1e-12;

void require_odd(int d) {
  if (d < 3 || d % 2 == 0) throw Error(ErrorCode::InvalidDegree, "odd d >= 3 required");
}

void require_even(int d) {
  if (d < 2 || d % 2 != 0) throw Error(ErrorCode::InvalidDegree, "even d >= 2 required");
}

// Roots of 1 + a + ... + a^(d-1) + c with multiplicity.
// Aberth iteration on 1 + a + ... + a^(d-1) + c started from the roots of
// a^(d-1) = -(1 + c). Returns nullopt when it does not settle on well
// separated simple roots, and near c = -1 where a = 0 must come out exact.
std::optional<RootMultiset> alpha_roots_fast(int d, Complex c) {
  const int n = d - 1;
  const Complex c0 = 1.0 + c;
  if (std::abs(c0) <= kDefaultRootTol) return std::nullopt;
  const double s = std::max(1.0, std::pow(std::abs(c0), 1.0 / n));
  std::array<Complex, 16> z{};
  const Complex base = s * std::polar(1.0, std::arg(-c0) / n + 0.1);
  for (int j = 0; j < n; ++j) z[static_cast<std::size_t>(j)] = base * std::polar(1.0, 2.0 * std::numbers::pi * j / n);
  auto eval = [&](Complex a, Complex& dp) {
    Complex p{1.0};
    dp = Complex{};
    for (int i = 0; i < n; ++i) {
      dp = dp * a + p;
      p = p * a + 1.0;
    }
    return p + c;
  };
  bool converged = false;
  for (int it = 0; it < 40 && !converged; ++it) {
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      Complex& zj = z[static_cast<std::size_t>(j)];
      Complex dp;
      const Complex p = eval(zj, dp);
      const Complex ratio = p / dp;
      Complex sum{};
      for (int k = 0; k < n; ++k)
        if (k != j) sum += 1.0 / (zj - z[static_cast<std::size_t>(k)]);
      const Complex step = ratio / (1.0 - ratio * sum);
      zj -= step;
      worst = std::max(worst, std::abs(step) / s);
    }
    converged = worst < 1e-14;
  }
  if (!converged) return std::nullopt;
  RootMultiset out;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k)
      if (std::abs(z[static_cast<std::size_t>(j)] - z[static_cast<std::size_t>(k)]) < 1e-4 * s) return std::nullopt;
    out.push_back({z[static_cast<std::size_t>(j)], 1});
  }
  return out;
}

// For large |c| the roots have size |c|^(1/(d-1)); they are solved for in
// that scale so the leading coefficient is not lost to trimming.
RootMultiset alpha_roots(int d, Complex c) {
  if (d - 1 <= 16) {
    if (auto fast = alpha_roots_fast(d, c)) return *fast;
  }
  const Complex c0 = 1.0 + c;
  const double s = std::abs(c0) > 1.0 ? std::pow(std::abs(c0), 1.0 / (d - 1)) : 1.0;
  std::vector<Complex> coeffs(static_cast<std::size_t>(d));
  coeffs[0] = c0 / std::pow(s, d - 1);
  for (int i = 1; i < d; ++i) coeffs[static_cast<std::size_t>(i)] = std::pow(s, i - (d - 1));
  RootMultiset roots = find_roots(ComplexPolynomial(std::move(coeffs)));
  for (Root& r : roots) r.value *= s;
  return roots;
}

void push_merged(MidMultiset& out, RiemannPoint u, Multiplicity m) {
  for (MidEntry& e : out) {
    const bool same = e.u.is_infinite() || u.is_infinite()
                          ? e.u.is_infinite() && u.is_infinite()
                          : std::abs(e.u.value() - u.value()) <= kMergeTol * std::max(1.0, std::abs(u.value()));
    if (same) {
      e.multiplicity += m;
      return;
    }
  }
  out.push_back({u, m});
}

// u / alpha^k (forward) or alpha^k / u (inverted) over the alpha-roots.
MidMultiset alpha_images(int d, int k, Complex c, Complex u, bool inverted) {
  MidMultiset out;
  for (const Root& a : alpha_roots(d, c)) {
    const Complex ak = std::pow(a.value, k);
    RiemannPoint image;
    if (!inverted) image = ak == Complex{} ? RiemannPoint::infinity() : RiemannPoint(u / ak);
    else image = RiemannPoint(ak / u);
    push_merged(out, image, static_cast<Multiplicity>(a.multiplicity));
  }
  return out;
}

MidMultiset constant_images(const std::vector<Complex>& values, Multiplicity each) {
  MidMultiset out;
  for (const Complex& v : values) out.push_back({RiemannPoint(v), each});
  return out;
}

}  // namespace

std::string to_string(Multiplicity m) {
  if (m == 0) return "0";
  std::string s;
  while (m > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(m % 10)));
    m /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

Multiplicity total_multiplicity(const MidMultiset& m) noexcept {
  Multiplicity t = 0;
  for (const MidEntry& e : m) t += e.multiplicity;
  return t;
}

RiemannPoint rho(RiemannPoint u) noexcept { return u.reciprocal(); }

MidMultiset sigma(int d, RiemannPoint u) {
  require_odd(d);
  const int k = (d - 1) / 2;
  const double r = 1.0 / std::sqrt(static_cast<double>(d));
  if (u.is_infinite()) return constant_images({Complex{0.0, r}, Complex{0.0, -r}}, static_cast<Multiplicity>(k));
  const Complex z = u.value();
  return alpha_images(d, k, static_cast<double>(d) * z * z, z, false);
}

MidMultiset beta(int d, RiemannPoint u) {
  require_odd(d);
  const int k = (d - 1) / 2;
  const double r = std::sqrt(static_cast<double>(d));
  if (u.is_infinite()) return constant_images({Complex{0.0, r}, Complex{0.0, -r}}, static_cast<Multiplicity>(k));
  const Complex z = u.value();
  if (z == Complex{}) return {{RiemannPoint::infinity(), static_cast<Multiplicity>(d - 1)}};
  return alpha_images(d, k, static_cast<double>(d) * z * z, z, true);
}

MidMultiset sigma_plus(int d, RiemannPoint u) {
  require_even(d);
  if (u.is_infinite()) return constant_images({Complex{-1.0 / d}}, static_cast<Multiplicity>(d - 1));
  const Complex z = u.value();
  return alpha_images(d, d - 1, static_cast<double>(d) * z, z, false);
}

MidMultiset beta_plus(int d, RiemannPoint u) {
  require_even(d);
  if (u.is_infinite()) return constant_images({Complex{-static_cast<double>(d)}}, static_cast<Multiplicity>(d - 1));
  const Complex z = u.value();
  if (z == Complex{}) return {{RiemannPoint::infinity(), static_cast<Multiplicity>(d - 1)}};
  return alpha_images(d, d - 1, static_cast<double>(d) * z, z, true);
}

MidMultiset lifted_step(int d, RiemannPoint u) { return d % 2 == 1 ? beta(d, u) : beta_plus(d, u); }

IndExcPoints ind_exc_points(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidDegree, "need d >= 2");
  const double dd = static_cast<double>(d);
  if (d % 2 == 1) {
    const double a = 1.0 / std::sqrt(dd), b = std::sqrt(dd);
    return {{Complex{0.0, a}, Complex{0.0, -a}}, {Complex{0.0, b}, Complex{0.0, -b}}};
  }
  return {{Complex{-1.0 / dd}}, {Complex{-dd}}};
}

MidMultiset dedupe(MidMultiset m, double radius) {
  MidMultiset out;
  Multiplicity at_infinity = 0;
  std::vector<MidEntry> finite;
  finite.reserve(m.size());
  for (MidEntry& e : m) {
    if (e.u.is_infinite()) at_infinity += e.multiplicity;
    else finite.push_back(e);
  }
  // Sweep along a generic direction: orbits are often symmetric about the
  // axes, so many states share a real or imaginary part.
  constexpr double kSlope = 0.7548776662466927;
  const double widen = std::sqrt(1.0 + kSlope * kSlope);
  auto key = [](const MidEntry& e) { return e.u.value().real() + kSlope * e.u.value().imag(); };
  std::sort(finite.begin(), finite.end(), [&](const MidEntry& a, const MidEntry& b) { return key(a) < key(b); });
  std::vector<bool> taken(finite.size(), false);
  for (std::size_t i = 0; i < finite.size(); ++i) {
    if (taken[i]) continue;
    MidEntry acc = finite[i];
    const Complex z = acc.u.value();
    const double r = radius * std::max(1.0, std::abs(z));
    const double k0 = key(acc);
    for (std::size_t j = i + 1; j < finite.size() && key(finite[j]) - k0 <= r * widen; ++j) {
      if (!taken[j] && std::abs(finite[j].u.value() - z) <= r) {
        acc.multiplicity += finite[j].multiplicity;
        taken[j] = true;
      }
    }
    out.push_back(acc);
  }
  if (at_infinity > 0) out.push_back({RiemannPoint::infinity(), at_infinity});
  return out;
}

namespace {

LevelStats level_stats(int level, const MidMultiset& m, Multiplicity pruned, const std::vector<Complex>& ind) {
  LevelStats s;
  s.level = level;
  s.states = m.size();
  s.total = total_multiplicity(m);
  s.pruned = pruned;
  s.min_modulus = kInf;
  s.max_modulus = 0.0;
  s.min_ind_distance = kInf;
  for (const MidEntry& e : m) {
    const double mod = e.u.modulus();
    s.min_modulus = std::min(s.min_modulus, mod);
    s.max_modulus = std::max(s.max_modulus, mod);
    if (e.u.is_infinite()) {
      s.has_infinity = true;
      continue;
    }
    for (const Complex& p : ind) s.min_ind_distance = std::min(s.min_ind_distance, std::abs(e.u.value() - p));
  }
  return s;
}

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json MidOrbit::to_json() const {
  Json arr = Json::array();
  for (const LevelStats& s : stats) {
    arr.push_back({{"level", s.level},
                   {"states", s.states},
                   {"total_multiplicity", to_string(s.total)},
                   {"pruned_multiplicity", to_string(s.pruned)},
                   {"min_modulus", finite_or_null(s.min_modulus)},
                   {"max_modulus", finite_or_null(s.max_modulus)},
                   {"min_ind_distance", finite_or_null(s.min_ind_distance)},
                   {"has_infinity", s.has_infinity}});
  }
  return {{"d", d}, {"levels", std::move(arr)}};
}

std::string MidOrbit::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "level,states,total_multiplicity,pruned_multiplicity,min_modulus,max_modulus,min_ind_distance,has_infinity\n";
  for (const LevelStats& s : stats) {
    os << s.level << ',' << s.states << ',' << to_string(s.total) << ',' << to_string(s.pruned) << ','
       << s.min_modulus << ',' << s.max_modulus << ',' << s.min_ind_distance << ',' << (s.has_infinity ? 1 : 0)
       << '\n';
  }
  return os.str();
}

MidOrbit iterate_levels(int d, MidMultiset start, int levels, const LevelBudget& budget, bool keep_levels) {
  if (levels < 0) throw Error(ErrorCode::InvalidArgument, "negative level count");
  const std::vector<Complex> ind = ind_exc_points(d).ind;
  MidOrbit orbit;
  orbit.d = d;
  Multiplicity pruned = 0;
  MidMultiset current = dedupe(std::move(start), budget.dedupe_radius);
  orbit.stats.push_back(level_stats(0, current, pruned, ind));
  if (keep_levels) orbit.levels.push_back(current);

  for (int level = 1; level <= levels; ++level) {
    std::vector<MidMultiset> images(current.size());
    parallel_for(current.size(), [&](std::size_t i) {
      images[i] = lifted_step(d, current[i].u);
      for (MidEntry& e : images[i]) e.multiplicity *= current[i].multiplicity;
    });
    MidMultiset next;
    for (MidMultiset& im : images) next.insert(next.end(), im.begin(), im.end());
    next = dedupe(std::move(next), budget.dedupe_radius);
    pruned *= static_cast<Multiplicity>(d - 1);

    if (next.size() > budget.per_level) {
      if (!budget.prune) throw Error(ErrorCode::BudgetExceeded, "level exceeds the state budget");
      std::sort(next.begin(), next.end(),
                [](const MidEntry& a, const MidEntry& b) { return a.u.modulus() < b.u.modulus(); });
      const std::size_t low = budget.per_level / 2;
      const std::size_t high = budget.per_level - low;
      MidMultiset kept(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(low));
      kept.insert(kept.end(), next.end() - static_cast<std::ptrdiff_t>(high), next.end());
      for (std::size_t i = low; i + high < next.size(); ++i) pruned += next[i].multiplicity;
      next = std::move(kept);
    }
    current = std::move(next);
    orbit.stats.push_back(level_stats(level, current, pruned, ind));
    if (keep_levels) orbit.levels.push_back(current);
  }
  return orbit;
}

namespace {

double min_over_levels(const MidOrbit& o, int from, double LevelStats::*field) {
  double m = kInf;
  for (const LevelStats& s : o.stats)
    if (s.level >= from) m = std::min(m, s.*field);
  return m;
}

}  // namespace

Report invariance_scan(const InvarianceOptions& options, MidOrbit* orbit) {
  if (options.samples < 1 || options.iters < 1) throw Error(ErrorCode::InvalidArgument, "samples and iters must be >= 1");
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> radius(1.0, 10.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  MidMultiset seeds;
  for (int s = 0; s < options.samples; ++s) {
    const double r = options.boundary ? 1.0 : radius(rng);
    seeds.push_back({RiemannPoint(std::polar(r, angle(rng))), 1});
  }
  const MidOrbit o = iterate_levels(options.d, std::move(seeds), options.iters, options.budget);
  const double min_mod = min_over_levels(o, 0, &LevelStats::min_modulus);

  Report r;
  r.title = "midpoint invariance, d = " + std::to_string(options.d);
  r.add("min_modulus", min_mod >= 1.0 - options.tol, {{"value", min_mod}, {"bound", 1.0 - options.tol}});
  r.notes = {{"d", options.d},
             {"samples", options.samples},
             {"iters", options.iters},
             {"seed", options.seed},
             {"boundary", options.boundary},
             {"per_level_budget", options.budget.per_level},
             {"orbit", o.to_json()}};
  if (orbit) *orbit = o;
  return r;
}

Report stability_orbit(int d, int steps, const LevelBudget& budget, MidOrbit* orbit) {
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "steps must be >= 1");
  const IndExcPoints pts = ind_exc_points(d);
  MidMultiset start;
  for (const Complex& e : pts.exc) start.push_back({RiemannPoint(e), 1});
  const MidOrbit o = iterate_levels(d, std::move(start), steps, budget);
  const double threshold = (1.0 - 1.0 / std::sqrt(static_cast<double>(d))) / 2.0;
  const double min_dist = min_over_levels(o, 0, &LevelStats::min_ind_distance);

  Report r;
  r.title = "algebraic stability orbit, d = " + std::to_string(d);
  r.add("exc_orbit_avoids_ind", min_dist >= threshold, {{"min_distance", min_dist}, {"threshold", threshold}});
  r.notes = {{"d", d}, {"steps", steps}, {"per_level_budget", budget.per_level}, {"orbit", o.to_json()}};
  if (orbit) *orbit = o;
  return r;
}

Report nonreflectivity_witness(int d, int n, const LevelBudget& budget, MidOrbit* orbit) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  MidOrbit o = iterate_levels(d, {{RiemannPoint::infinity(), 1}}, n, budget, true);
  bool infinity_absent = true;
  double max_mod = 0.0;
  for (const LevelStats& s : o.stats) {
    if (s.level == 0) continue;
    infinity_absent = infinity_absent && !s.has_infinity;
    max_mod = std::max(max_mod, s.max_modulus);
  }
  const double min_mod = min_over_levels(o, 1, &LevelStats::min_modulus);

  // Level 1 is the exc set, each point with equal share of the d-1 branches.
  const IndExcPoints pts = ind_exc_points(d);
  bool level1 = o.levels.size() > 1 && o.levels[1].size() == pts.exc.size();
  if (level1) {
    for (const Complex& e : pts.exc) {
      bool found = false;
      for (const MidEntry& m : o.levels[1])
        found = found || (!m.u.is_infinite() && std::abs(m.u.value() - e) <= 1e-12 * std::abs(e) &&
                          m.multiplicity == static_cast<Multiplicity>((d - 1) / static_cast<int>(pts.exc.size())));
      level1 = level1 && found;
    }
  }

  Report r;
  r.title = "non-reflectivity witness, d = " + std::to_string(d);
  r.add("infinity_absent", infinity_absent, {{"levels", n}});
  r.add("min_modulus", min_mod >= 1.0 - 1e-9, {{"value", min_mod}, {"bound", 1.0 - 1e-9}});
  r.add("bounded", std::isfinite(max_mod), {{"max_modulus", finite_or_null(max_mod)}});
  r.add("level1_is_exc_set", level1);
  o.levels.clear();
  r.notes = {{"d", d}, {"n", n}, {"orbit", o.to_json()}};
  if (orbit) *orbit = std::move(o);
  return r;
}

}  // namespace billiards
