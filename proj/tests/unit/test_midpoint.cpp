#include <cmath>
#include <numbers>
#include <random>

#include "billiards/error.hpp"
#include "billiards/midpoint/midpoint.hpp"
#include "doctest.h"

using namespace billiards;

namespace {

std::vector<RiemannPoint> expand(const MidMultiset& m) {
  std::vector<RiemannPoint> out;
  for (const MidEntry& e : m)
    for (Multiplicity k = 0; k < e.multiplicity; ++k) out.push_back(e.u);
  return out;
}

double point_gap(RiemannPoint a, RiemannPoint b) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() && b.is_infinite() ? 0.0 : INFINITY;
  return std::abs(a.value() - b.value()) / std::max(1.0, std::abs(a.value()));
}

bool same_multiset(const MidMultiset& a, const MidMultiset& b, double tol) {
  std::vector<RiemannPoint> x = expand(a), y = expand(b);
  if (x.size() != y.size()) return false;
  for (const RiemannPoint& p : x) {
    auto it = std::min_element(y.begin(), y.end(),
                               [&](RiemannPoint q, RiemannPoint r) { return point_gap(p, q) < point_gap(p, r); });
    if (point_gap(p, *it) > tol) return false;
    y.erase(it);
  }
  return true;
}

bool contains(const MidMultiset& m, RiemannPoint u, double tol) {
  for (const MidEntry& e : m)
    if (point_gap(u, e.u) <= tol) return true;
  return false;
}

MidMultiset step_sigma(int d, RiemannPoint u) { return d % 2 == 1 ? sigma(d, u) : sigma_plus(d, u); }

Complex random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> r(0.1, 5.0), a(0.0, 2.0 * std::numbers::pi);
  return std::polar(r(rng), a(rng));
}

}  // namespace

TEST_CASE("rho") {
  CHECK(rho(2.0).value() == Complex(0.5));
  CHECK(rho(RiemannPoint::infinity()).value() == Complex{});
  CHECK(rho(0.0).is_infinite());
  CHECK(std::abs(rho(std::polar(1.0, 1.1)).modulus() - 1.0) < 1e-15);
}

TEST_CASE("sigma and sigma_plus at infinity and zero") {
  const MidMultiset s5 = sigma(5, RiemannPoint::infinity());
  REQUIRE(s5.size() == 2);
  const double r = 1.0 / std::sqrt(5.0);
  CHECK(same_multiset(s5, {{Complex{0, r}, 2}, {Complex{0, -r}, 2}}, 1e-15));

  CHECK(same_multiset(sigma_plus(4, RiemannPoint::infinity()), {{Complex{-0.25}, 3}}, 1e-15));
  CHECK(same_multiset(sigma(3, 0.0), {{Complex{}, 2}}, 0.0));
  CHECK(same_multiset(sigma_plus(4, 0.0), {{Complex{}, 3}}, 0.0));

  // Limits at infinity agree with large finite inputs; the alpha-roots grow
  // like (d u^2)^(1/(d-1)) (odd) or (d u)^(1/(d-1)) (even), and the relative
  // correction is of order their inverse.
  for (int d = 2; d <= 8; ++d) {
    const double u = 1e7;
    const double alpha = std::pow(d * (d % 2 == 1 ? u * u : u), 1.0 / (d - 1));
    const MidMultiset at_inf = step_sigma(d, RiemannPoint::infinity());
    CHECK(same_multiset(step_sigma(d, u), at_inf, 2.0 / alpha));
  }
  CHECK(same_multiset(beta(5, RiemannPoint::infinity()), {{Complex{0, std::sqrt(5.0)}, 2}, {Complex{0, -std::sqrt(5.0)}, 2}},
                      1e-15));
  CHECK(same_multiset(beta_plus(4, RiemannPoint::infinity()), {{Complex{-4.0}, 3}}, 1e-15));
  CHECK(same_multiset(beta(3, 0.0), {{RiemannPoint::infinity(), 2}}, 0.0));

  CHECK_THROWS_AS(sigma(4, 1.0), Error);
  CHECK_THROWS_AS(sigma_plus(5, 1.0), Error);
  CHECK_THROWS_AS(beta(1, 1.0), Error);
}

TEST_CASE("degree count d - 1 for every input") {
  std::mt19937_64 rng(11);
  for (int d = 2; d <= 8; ++d) {
    const auto d1 = static_cast<Multiplicity>(d - 1);
    CHECK(total_multiplicity(lifted_step(d, RiemannPoint::infinity())) == d1);
    CHECK(total_multiplicity(lifted_step(d, 0.0)) == d1);
    for (const Complex& p : ind_exc_points(d).ind) CHECK(total_multiplicity(lifted_step(d, p)) == d1);
    for (int s = 0; s < 50; ++s) {
      const Complex u = random_point(rng);
      CHECK(total_multiplicity(step_sigma(d, u)) == d1);
      CHECK(total_multiplicity(lifted_step(d, u * 1e6)) == d1);
    }
  }
}

TEST_CASE("sigma is self-adjoint") {
  std::mt19937_64 rng(3);
  for (int d = 2; d <= 8; ++d) {
    double worst = 0.0;
    for (int s = 0; s < 200; ++s) {
      const Complex u = random_point(rng);
      for (const MidEntry& v : step_sigma(d, u)) {
        const MidMultiset back = step_sigma(d, v.u);
        double best = INFINITY;
        for (const MidEntry& w : back) best = std::min(best, point_gap(u, w.u));
        worst = std::max(worst, best);
      }
    }
    CHECK_MESSAGE(worst <= 1e-8, "d = " << d << " worst " << worst);
  }
}

TEST_CASE("beta equals rho after sigma") {
  std::mt19937_64 rng(5);
  for (int d = 2; d <= 7; ++d) {
    for (int s = 0; s < 1000; ++s) {
      const Complex u = random_point(rng);
      MidMultiset composed = step_sigma(d, u);
      for (MidEntry& e : composed) e.u = rho(e.u);
      REQUIRE(same_multiset(lifted_step(d, u), composed, 1e-10));
    }
  }
}

TEST_CASE("Galois symmetry of beta") {
  std::mt19937_64 rng(8);
  for (int d = 2; d <= 7; ++d) {
    for (int s = 0; s < 100; ++s) {
      const Complex u = random_point(rng);
      MidMultiset conj = lifted_step(d, std::conj(u));
      for (MidEntry& e : conj) e.u = e.u.conj();
      CHECK(same_multiset(lifted_step(d, u), conj, 1e-9));
    }
  }
}

TEST_CASE("ind and exc points") {
  const IndExcPoints p5 = ind_exc_points(5);
  CHECK(p5.ind.size() == 2);
  CHECK(std::abs(p5.ind[0] - Complex(0, 1 / std::sqrt(5.0))) < 1e-15);
  CHECK(std::abs(p5.exc[0] - Complex(0, std::sqrt(5.0))) < 1e-15);
  const IndExcPoints p4 = ind_exc_points(4);
  CHECK(p4.ind == std::vector<Complex>{-0.25});
  CHECK(p4.exc == std::vector<Complex>{-4.0});
  for (int d = 2; d <= 9; ++d) {
    const IndExcPoints p = ind_exc_points(d);
    for (const Complex& z : p.ind) CHECK(std::abs(z) < 1.0);
    // rho exchanges the two sets.
    for (const Complex& z : p.ind) {
      bool hit = false;
      for (const Complex& e : p.exc) hit = hit || std::abs(1.0 / z - e) < 1e-14 * std::abs(e);
      CHECK(hit);
    }
    // sigma sends infinity onto ind, and an ind point has infinity in its sigma image.
    MidMultiset ind_set;
    for (const Complex& z : p.ind) ind_set.push_back({z, static_cast<Multiplicity>(d - 1) / p.ind.size()});
    CHECK(same_multiset(step_sigma(d, RiemannPoint::infinity()), ind_set, 1e-14));
    for (const Complex& z : p.ind) CHECK(contains(step_sigma(d, z), RiemannPoint::infinity(), 0.0));
  }
  CHECK_THROWS_AS(ind_exc_points(1), Error);
}

TEST_CASE("beta maps the complement of the unit disk into itself") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> rad(1.0, 10.0), ang(0.0, 2.0 * std::numbers::pi);
  for (int d = 2; d <= 8; ++d) {
    double worst = INFINITY;
    for (int s = 0; s < 500; ++s) {
      for (double r : {1.0, rad(rng)}) {
        for (const MidEntry& e : lifted_step(d, std::polar(r, ang(rng)))) worst = std::min(worst, e.u.modulus());
      }
    }
    CHECK_MESSAGE(worst >= 1.0 - 1e-9, "d = " << d << " min " << worst);
  }
}

TEST_CASE("dedupe merges close states and keeps infinity") {
  const MidMultiset m = {{1.0, 2}, {Complex(1.0 + 1e-12, 0), 3}, {2.0, 1},
                         {RiemannPoint::infinity(), 1}, {RiemannPoint::infinity(), 4}};
  const MidMultiset out = dedupe(m, 1e-9);
  CHECK(out.size() == 3);
  CHECK(total_multiplicity(out) == 11);
  CHECK(contains(out, RiemannPoint::infinity(), 0.0));
}

TEST_CASE("iterate_levels keeps the branch count") {
  for (int d = 2; d <= 6; ++d) {
    const MidOrbit o = iterate_levels(d, {{Complex(1.5, 0.5), 1}}, 5, {});
    Multiplicity expect = 1;
    for (const LevelStats& s : o.stats) {
      CHECK(s.total + s.pruned == expect);
      expect *= static_cast<Multiplicity>(d - 1);
    }
  }
  LevelBudget small;
  small.per_level = 20;
  const MidOrbit pruned = iterate_levels(5, {{Complex(2.0, 1.0), 1}}, 6, small);
  Multiplicity expect = 1;
  for (const LevelStats& s : pruned.stats) {
    CHECK(s.states <= 20);
    CHECK(s.total + s.pruned == expect);
    expect *= 4;
  }
  CHECK(pruned.stats.back().pruned > 0);
  small.prune = false;
  CHECK_THROWS_AS(iterate_levels(5, {{Complex(2.0, 1.0), 1}}, 6, small), Error);
  CHECK(to_string(static_cast<Multiplicity>(1) << 100) == "1267650600228229401496703205376");
  CHECK(pruned.to_json()["levels"].size() == 7);
  CHECK(pruned.to_csv().rfind("level,states", 0) == 0);
}

TEST_CASE("invariance_scan") {
  for (int d = 3; d <= 6; ++d) {
    InvarianceOptions o;
    o.d = d;
    o.samples = 200;
    o.iters = 4;
    o.seed = static_cast<std::uint64_t>(d);
    const Report r = invariance_scan(o);
    CHECK_MESSAGE(r.passed(), r.to_json().dump());
    o.boundary = true;
    CHECK(invariance_scan(o).passed());
  }
  InvarianceOptions bad;
  bad.samples = 0;
  CHECK_THROWS_AS(invariance_scan(bad), Error);
}

TEST_CASE("stability_orbit") {
  LevelBudget b;
  b.per_level = 2000;
  for (int d = 2; d <= 6; ++d) {
    MidOrbit o;
    const Report r = stability_orbit(d, 12, b, &o);
    CHECK_MESSAGE(r.passed(), r.to_json().dump());
    CHECK(o.stats.size() == 13);
  }
  CHECK_THROWS_AS(stability_orbit(3, 0), Error);
}

TEST_CASE("nonreflectivity_witness") {
  for (int d = 3; d <= 6; ++d) {
    MidOrbit o;
    const Report r = nonreflectivity_witness(d, 6, {}, &o);
    CHECK_MESSAGE(r.passed(), r.to_json().dump());
    CHECK(o.stats[0].has_infinity);
    for (std::size_t i = 1; i < o.stats.size(); ++i) CHECK_FALSE(o.stats[i].has_infinity);
  }
}
