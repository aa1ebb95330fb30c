#include <array>
#include <cmath>

#include "billiards/error.hpp"
#include "billiards/stability/lattice.hpp"
#include "doctest.h"

using namespace billiards;

namespace {

// Plain integer 4x4 product for an independent check of r_bar * s_bar.
using Int4 = std::array<std::array<long long, 4>, 4>;

Int4 mul(const Int4& a, const Int4& b) {
  Int4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

}  // namespace

TEST_CASE("build_matrices columns") {
  const PushforwardSet s2 = build_matrices(2);
  const std::vector<long long> r_col1 = {1, 2, 0, -1}, s_col2 = {2, 1, -1, 0};
  for (int i = 0; i < 4; ++i) {
    CHECK(s2.r_bar(i, 0) == r_col1[static_cast<std::size_t>(i)]);
    CHECK(s2.s_bar(i, 1) == s_col2[static_cast<std::size_t>(i)]);
  }
  for (long long d = 2; d <= 12; ++d) {
    const PushforwardSet s = build_matrices(static_cast<int>(d));
    const Int4 r = {{{1, 0, 0, 0}, {d * (d - 1), 1, 0, 2 * d}, {0, 0, 1, 0}, {-(d - 1), 0, 0, -1}}};
    const Int4 sb = {{{d - 1, 2, d - 1, 0}, {0, d - 1, 0, 0}, {0, -1, -1, 0}, {0, 0, 0, d - 1}}};
    const Int4 b = mul(r, sb);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(s.b_bar_product(i, j) == b[i][j]);
  }
  CHECK_THROWS_AS(build_matrices(1), Error);
}

TEST_CASE("trace and determinant identities") {
  for (int d = 2; d <= 20; ++d) {
    const PushforwardSet s = build_matrices(d);
    CHECK(s.b_bar_product.trace() == 2 * d * d - d - 2);
    CHECK(s.b_bar_printed.trace() == 2 * d * d - d - 2);
    const Rational dm1 = d - 1;
    CHECK(s.b_bar_product.determinant() == dm1 * dm1 * dm1);
    CHECK(s.r_bar.determinant() == -1);
    CHECK(s.s_bar.determinant() == -dm1 * dm1 * dm1);
  }
}

TEST_CASE("characteristic polynomial of the product") {
  // Frozen from an independent symbolic expansion.
  const RationalPolynomial lin1 = RationalPolynomial::linear_root(1);
  CHECK(char_poly(build_matrices(2).b_bar_product) == lin1 * RationalPolynomial({-1, -3, -3, 1}));
  const RationalPolynomial lin2 = RationalPolynomial::linear_root(2);
  CHECK(char_poly(build_matrices(3).b_bar_product) == lin2 * RationalPolynomial({-4, -4, -11, 1}));
  CHECK(char_poly(build_matrices(3).b_bar_printed) == lin2 * RationalPolynomial({32, 38, -11, 1}));
  for (int d = 2; d <= 10; ++d) {
    const RationalPolynomial cp = char_poly(build_matrices(d).b_bar_product);
    CHECK(cp(Rational(d - 1)) == 0);
    CHECK(spectral_radius(cp) >= d - 1);
  }
}

TEST_CASE("lambda1") {
  const Lambda1 l2 = lambda1(2);
  CHECK(l2.value == 1.0);
  CHECK(l2.surd() == "1");
  const Lambda1 l3 = lambda1(3);
  CHECK(std::abs(l3.value - (9.0 + std::sqrt(73.0)) / 2.0) < 1e-12);
  CHECK(std::abs(l3.value - 8.7720019) < 1e-7);
  CHECK(l3.surd() == "(9 + sqrt(73))/2");
  CHECK(l3.quadratic == RationalPolynomial({2, -9, 1}));
  for (int d = 2; d <= 50; ++d) {
    const Lambda1 l = lambda1(d);
    CHECK(l.value >= 2.0 * d * d - 3.0 * d - 1.0);
    CHECK(std::abs(to_double(l.quadratic(Rational(0))) - (d - 1)) == 0.0);
    const double residual = l.value * l.value - to_double(Rational(l.p)) * l.value + (d - 1);
    CHECK(std::abs(residual) <= 1e-12 * l.value * l.value);
  }
  // d = 5: p = 35, disc = 1225 - 16 = 1209 = 3 * 13 * 31.
  CHECK(lambda1(5).surd() == "(35 + sqrt(1209))/2");
}

TEST_CASE("degree_growth") {
  const DegreeGrowth g2 = degree_growth(2, 5);
  CHECK(g2.a == std::vector<BigInt>{2, 10, 43, 167, 646, 2488});
  const DegreeGrowth g3 = degree_growth(3, 5);
  CHECK(g3.a == std::vector<BigInt>{2, 30, 362, 4126, 46986, 534862});
  CHECK(g3.ratios.size() == 5);

  for (int d = 2; d <= 8; ++d) {
    const DegreeGrowth g = degree_growth(d, 60);
    for (const BigInt& a : g.a) CHECK(a > 0);
    CHECK(std::abs(g.ratios.back() - g.radius) <= 1e-6);
    // Geometric decrease of the ratio error after n = 20.
    const double e20 = std::abs(g.ratios[20] - g.radius), e40 = std::abs(g.ratios[40] - g.radius);
    CHECK((e40 <= e20 || e40 < 1e-13));
  }
  // a_60 at d = 8 has more than 64 bits.
  CHECK(boost::multiprecision::msb(degree_growth(8, 60).a.back()) > 64);
  CHECK_THROWS_AS(degree_growth(3, 0), Error);
}

TEST_CASE("consistency_report") {
  for (int d = 2; d <= 10; ++d) {
    const Report r = consistency_report(d);
    CHECK_MESSAGE(r.passed(), r.to_json().dump());
    CHECK(r.notes["entry_mismatches"].size() > 0);
    CHECK(r.notes["determinant"]["product_equals_det_r_det_s"] == true);
    for (const Json& m : r.notes["char_poly_matches"]) CHECK(m["equal"] == false);
  }
  const Report r2 = consistency_report(2);
  bool entry13 = false;
  for (const Json& m : r2.notes["entry_mismatches"])
    entry13 = entry13 || (m["row"] == 1 && m["col"] == 3 && m["product"] == "1" && m["printed"] == "4");
  CHECK(entry13);
  CHECK(r2.notes["trace"]["displayed_factorization"] == 14);
  CHECK(r2.notes["trace"]["substitute_factorization"] == 4);
}

TEST_CASE("displayed and substitute factorizations") {
  CHECK(displayed_char_poly(2) == RationalPolynomial({1, -2, 1}) * RationalPolynomial({1, -12, 1}));
  CHECK(substitute_char_poly(3) == RationalPolynomial({4, -4, 1}) * RationalPolynomial({2, -9, 1}));
  for (int d = 2; d <= 10; ++d)
    CHECK(std::abs(spectral_radius(substitute_char_poly(d)) - std::max<double>(lambda1(d).value, d - 1)) < 1e-9);
}

TEST_CASE("naive_bound") {
  CHECK(naive_product(2) == RationalMatrix({{1, 2}, {2, 5}}));
  CHECK(std::abs(naive_bound(2) - (3.0 + 2.0 * std::sqrt(2.0))) < 1e-12);
  for (int d = 2; d <= 20; ++d) CHECK(naive_bound(d) >= lambda1(d).value);
  CHECK(std::abs(naive_bound(50) / (50.0 * 50.0) - 2.0) < 0.05);
  // lambda1 / d^2 = 2 - 3/d + O(1/d^3).
  CHECK(std::abs(lambda1(50).value / (50.0 * 50.0) - (2.0 - 3.0 / 50.0)) < 1e-4);
}

TEST_CASE("conjecture_rho") {
  CHECK(conjecture_poly(2) == RationalPolynomial({-1, 3, -3, 1}));
  CHECK(std::abs(conjecture_rho(2) - 1.0) < 1e-9);
  for (int d = 3; d <= 20; ++d) {
    CHECK(conjecture_rho(d) < 2.0 * d * d - d - 3);
    CHECK(lambda1(d).value <= conjecture_rho(d));
  }
}

TEST_CASE("dd_summary") {
  const Json j = dd_summary(3);
  CHECK(j["lambda1_exact"] == "(9 + sqrt(73))/2");
  CHECK(std::abs(j["lambda1"].get<double>() - 8.7720019) < 1e-7);
  CHECK(j["lower_bound"] == 8);
}
