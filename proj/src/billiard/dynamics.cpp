#include "billiards/billiard/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "billiards/geometry/fermat.hpp"

namespace billiards {

int ImageMultiset::total_multiplicity() const noexcept {
  int n = 0;
  for (const ImageEntry& e : entries) n += e.multiplicity;
  return n;
}

bool ImageMultiset::any_flagged() const noexcept {
  return std::any_of(entries.begin(), entries.end(), [](const ImageEntry& e) { return e.flag.has_value(); });
}

namespace {

// Newton on f(x + t q) evaluated directly; the expanded line polynomial loses
// accuracy when |x| is large. Steps that do not reduce the residual are rejected.
Complex polish_on_line(const PlaneCurve& c, const Vec2& x, const Vec2& q, Complex t) {
  auto at = [&](Complex s) { return Vec2{x[0] + s * q[0], x[1] + s * q[1]}; };
  double res = std::abs(c.affine(at(t)));
  for (int it = 0; it < 3 && res > 0.0; ++it) {
    const Vec2 y = at(t);
    const Vec2 g = c.affine_gradient(y);
    const Complex dt = g[0] * q[0] + g[1] * q[1];
    if (dt == Complex{}) break;
    const Complex next = t - c.affine(y) / dt;
    const double next_res = std::abs(c.affine(at(next)));
    if (!(next_res < res)) break;
    t = next;
    res = next_res;
  }
  return t;
}

}  // namespace

ComplexPolynomial secant_polynomial(const PlaneCurve& c, const QuadraticForm& theta, const PhasePoint& p) {
  return c.restrict_to_line(p.x, p.v.line_vector(theta));
}

ImageMultiset secant_step(const PlaneCurve& c, const QuadraticForm& theta, const PhasePoint& p, double tol) {
  if (std::abs(c.affine(p.x)) > tol * c.affine_magnitude(p.x))
    throw Error(ErrorCode::NotOnCurve, "base point is not on the curve");
  const Vec2 q = p.v.line_vector(theta);
  const ComplexPolynomial line = c.restrict_to_line(p.x, q);
  const double scale = line.max_abs_coefficient();
  if (scale == 0.0) throw Error(ErrorCode::IndeterminateSecant, "line is a component of the curve");
  if (std::abs(line.coefficient(0)) > tol * scale)
    throw Error(ErrorCode::NoZeroRoot, "line polynomial does not vanish at t = 0");

  // The t^d coefficient is the top-degree form at q; it vanishes exactly when
  // the line passes through a point at infinity of the curve.
  const int d = c.degree();
  double top = 0.0;
  for (const Monomial& m : c.monomials())
    if (m.k == 0) top += std::abs(m.c) * std::pow(std::abs(q[0]), m.i) * std::pow(std::abs(q[1]), m.j);
  if (line.degree() < d || std::abs(line.coefficient(d)) <= tol * top)
    throw Error(ErrorCode::IndeterminateSecant, "line meets the curve at infinity");

  // Roots of the cofactor in s = t / sigma, with sigma >= 1 the geometric mean
  // of the root moduli, so roots near infinity survive the root finder's trimming.
  std::vector<Complex> rest(line.coefficients().begin() + 1, line.coefficients().end());
  const double lead = std::abs(rest.back());
  double sigma = d > 1 ? std::max(1.0, std::pow(std::abs(rest.front()) / lead, 1.0 / (d - 1))) : 1.0;
  if (!std::isfinite(sigma)) sigma = 1.0;
  double pw = 1.0 / (lead * std::pow(sigma, d - 1));
  for (Complex& a : rest) {
    a *= pw;
    pw *= sigma;
  }

  ImageMultiset out;
  for (const Root& r : find_roots(ComplexPolynomial(std::move(rest)))) {
    Complex t = r.value * sigma;
    if (r.multiplicity == 1) t = polish_on_line(c, p.x, q, t);
    Vec2 y{p.x[0] + t * q[0], p.x[1] + t * q[1]};
    if (r.multiplicity == 1) y = project_to_curve(c, y);
    const PhasePoint image{y, p.v};
    out.entries.push_back({image, r.multiplicity, std::nullopt});
  }
  return out;
}

PhasePoint reflect_step(const PlaneCurve& c, const QuadraticForm& theta, const PhasePoint& p, double tol,
                        double threshold) {
  const Vec2 g = c.affine_gradient(p.x);
  const double gn = norm(g);
  if (gn <= tol * c.degree() * c.affine_magnitude(p.x))
    throw Error(ErrorCode::SingularPoint, "gradient vanishes at the base point");
  Vec2 n = apply_linear(theta.inverse_matrix(), g);
  const double nn_norm = norm(n);
  n = {n[0] / nn_norm, n[1] / nn_norm};
  const Complex nn = theta.value(n);
  if (std::abs(nn) < threshold * theta.scale())
    throw Error(ErrorCode::IndeterminateReflection, "tangent line is isotropic");

  if (p.v.is_isotropic()) {
    const RiemannPoint w = p.v.parameter();
    return {p.x, Direction(w.is_infinite() ? RiemannPoint(0.0) : RiemannPoint::infinity())};
  }
  // In the isotropic frame the reflection fixing the tangent parameters ±w_t
  // is w -> w_t^2 / w, with w_t^2 = b_t / a_t for a tangent vector a_t ea + b_t eb.
  const Vec2 t{-g[1] / gn, g[0] / gn};
  const Complex at = 2.0 * theta.bilinear(t, theta.frame_b());
  const Complex bt = 2.0 * theta.bilinear(t, theta.frame_a());
  const RiemannPoint w = p.v.parameter();
  if (w.is_infinite()) return {p.x, Direction(RiemannPoint(0.0))};
  return {p.x, Direction(RiemannPoint(bt / (at * w.value())))};
}

ImageMultiset billiard_step(const PlaneCurve& c, const QuadraticForm& theta, const PhasePoint& p, double tol,
                            double threshold) {
  ImageMultiset out = secant_step(c, theta, p, tol);
  for (ImageEntry& e : out.entries) {
    try {
      e.point = reflect_step(c, theta, e.point, tol, threshold);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::IndeterminateReflection && err.code() != ErrorCode::SingularPoint) throw;
      e.flag = err.code();
    }
  }
  return out;
}

const char* to_string(IndeterminacyTag tag) noexcept {
  switch (tag) {
    case IndeterminacyTag::Regular: return "Regular";
    case IndeterminacyTag::NearIndS: return "NearIndS";
    case IndeterminacyTag::NearIndR: return "NearIndR";
  }
  return "?";
}

IndeterminacyCatalog IndeterminacyCatalog::fermat(int d) {
  IndeterminacyCatalog cat;
  cat.degree = d;
  cat.ind_r = isotropic_tangency_points(d);
  cat.ind_s = secant_indeterminacy_points(fermat_hyperbola(d), QuadraticForm::euclidean());
  return cat;
}

IndeterminacyClass IndeterminacyCatalog::classify(const PhasePoint& p, double threshold) const {
  IndeterminacyClass r;
  r.distance_s = std::numeric_limits<double>::infinity();
  r.distance_r = std::numeric_limits<double>::infinity();
  for (const CatalogPoint& q : ind_s) r.distance_s = std::min(r.distance_s, phase_distance(p, q));
  for (const PhasePoint& q : ind_r) r.distance_r = std::min(r.distance_r, phase_distance(p, q));
  if (r.distance_s < threshold) {
    r.tag = IndeterminacyTag::NearIndS;
    r.distance = r.distance_s;
  } else if (r.distance_r < threshold) {
    r.tag = IndeterminacyTag::NearIndR;
    r.distance = r.distance_r;
  } else {
    r.distance = std::min(r.distance_s, r.distance_r);
  }
  return r;
}

IndeterminacyClass classify(const PhasePoint& p, int d, double threshold) {
  return IndeterminacyCatalog::fermat(d).classify(p, threshold);
}

Json OrbitTree::to_json() const {
  Json arr = Json::array();
  for (const OrbitNode& n : nodes) {
    Json j = phase_to_json(n.point);
    j["parent"] = n.parent;
    j["depth"] = n.depth;
    j["multiplicity"] = n.multiplicity;
    j["weight"] = n.weight;
    j["flag"] = n.flag ? Json(std::string(to_string(*n.flag))) : Json(nullptr);
    arr.push_back(std::move(j));
  }
  return {{"depth", depth}, {"node_count", nodes.size()}, {"nodes", std::move(arr)}};
}

namespace {

std::size_t tree_bound(int branching, int depth, std::size_t cap) {
  std::size_t total = 1, level = 1;
  for (int k = 1; k <= depth; ++k) {
    if (branching > 1 && level > cap / static_cast<std::size_t>(branching)) return cap + 1;
    level *= static_cast<std::size_t>(std::max(branching, 1));
    total += level;
    if (total > cap) return cap + 1;
  }
  return total;
}

}  // namespace

OrbitTree orbit_tree(const PlaneCurve& c, const QuadraticForm& theta, const PhasePoint& p,
                     const OrbitOptions& options) {
  if (options.depth < 0) throw Error(ErrorCode::InvalidArgument, "negative depth");
  if (tree_bound(c.degree() - 1, options.depth, options.node_budget) > options.node_budget)
    throw Error(ErrorCode::BudgetExceeded, "orbit tree would exceed the node budget");

  OrbitTree tree;
  tree.depth = options.depth;
  tree.nodes.push_back({p, -1, 0, 1, 1, std::nullopt});
  std::vector<int> frontier{0};
  for (int level = 1; level <= options.depth; ++level) {
    std::vector<int> next;
    for (int parent : frontier) {
      ImageMultiset images;
      try {
        images = billiard_step(c, theta, tree.nodes[static_cast<std::size_t>(parent)].point, options.tol,
                               options.threshold);
      } catch (const Error& e) {
        tree.nodes[static_cast<std::size_t>(parent)].flag = e.code();
        continue;
      }
      const std::size_t first = tree.nodes.size();
      for (const ImageEntry& e : images.entries) {
        bool merged = false;
        for (std::size_t k = first; k < tree.nodes.size(); ++k) {
          OrbitNode& sib = tree.nodes[k];
          if (sib.flag == e.flag && phase_distance(sib.point, e.point) < options.dedupe_radius) {
            sib.multiplicity += e.multiplicity;
            merged = true;
            break;
          }
        }
        if (!merged) tree.nodes.push_back({e.point, parent, level, e.multiplicity, 1, e.flag});
      }
      const std::uint64_t w = tree.nodes[static_cast<std::size_t>(parent)].weight;
      for (std::size_t k = first; k < tree.nodes.size(); ++k) {
        OrbitNode& child = tree.nodes[k];
        child.weight = w * static_cast<std::uint64_t>(child.multiplicity);
        if (!child.flag) next.push_back(static_cast<int>(k));
      }
    }
    frontier = std::move(next);
  }
  return tree;
}

double multiset_distance(const ImageMultiset& a, const ImageMultiset& b) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  auto expand = [](const ImageMultiset& m) {
    std::vector<const ImageEntry*> v;
    for (const ImageEntry& e : m.entries)
      for (int k = 0; k < e.multiplicity; ++k) v.push_back(&e);
    return v;
  };
  const auto ea = expand(a);
  const auto eb = expand(b);
  if (ea.size() != eb.size()) return inf;
  std::vector<bool> used(eb.size(), false);
  double worst = 0.0;
  for (const ImageEntry* x : ea) {
    double best = inf;
    std::size_t pick = eb.size();
    for (std::size_t k = 0; k < eb.size(); ++k) {
      if (used[k] || eb[k]->flag != x->flag) continue;
      const double dist = phase_distance(x->point, eb[k]->point);
      if (dist < best) {
        best = dist;
        pick = k;
      }
    }
    if (pick == eb.size()) return inf;
    used[pick] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

PhasePoint sample_phase_point(const PlaneCurve& c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const Vec2 x = c.sample_point(rng);
  return {x, Direction(RiemannPoint(Complex{g(rng), g(rng)}))};
}

Report conjugacy_check(const PlaneCurve& c, const QuadraticForm& theta, const ConjugacyOptions& options) {
  const Mat2 l = options.transform.value_or(j_linear());
  const Mat3 m{{{l[0][0], l[0][1], 0.0}, {l[1][0], l[1][1], 0.0}, {0.0, 0.0, 1.0}}};
  const PlaneCurve lc = c.pushforward(m);
  const QuadraticForm ltheta = theta.pushforward(l);
  auto push = [&](const PhasePoint& p) { return PhasePoint{apply_linear(l, p.x), p.v}; };

  std::mt19937_64 rng(options.seed);
  double worst = 0.0;
  int flagged = 0, errors = 0, mismatched = 0;
  for (int s = 0; s < options.samples; ++s) {
    const PhasePoint p = sample_phase_point(c, rng);
    std::optional<ErrorCode> err_a, err_b;
    ImageMultiset a, b;
    try {
      a = billiard_step(c, theta, p, options.tol);
    } catch (const Error& e) {
      err_a = e.code();
    }
    try {
      b = billiard_step(lc, ltheta, push(p), options.tol);
    } catch (const Error& e) {
      err_b = e.code();
    }
    if (err_a || err_b) {
      ++errors;
      if (err_a != err_b) ++mismatched;
      continue;
    }
    for (ImageEntry& e : a.entries) e.point = push(e.point);
    if (a.any_flagged() || b.any_flagged()) ++flagged;
    const double dist = multiset_distance(a, b);
    if (!std::isfinite(dist)) ++mismatched;
    else worst = std::max(worst, dist);
  }

  Report r;
  r.title = "conjugacy";
  r.add("max_discrepancy", worst <= options.max_discrepancy,
        {{"value", worst}, {"bound", options.max_discrepancy}});
  r.add("flags_consistent", mismatched == 0,
        {{"mismatched", mismatched}, {"flagged", flagged}, {"errors", errors}});
  r.notes = {{"samples", options.samples}, {"seed", options.seed}, {"degree", c.degree()}};
  return r;
}

}  // namespace billiards
