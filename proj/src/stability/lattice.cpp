#include "billiards/stability/lattice.hpp"

#include <cmath>
#include <sstream>

#include "billiards/error.hpp"

namespace billiards {

namespace {

void require_degree(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidDegree, "need d >= 2");
}

RationalPolynomial poly(std::vector<Rational> ascending) { return RationalPolynomial(std::move(ascending)); }

// x^2 - b x + c
RationalPolynomial shifted_quadratic(const Rational& b, const Rational& c) { return poly({c, -b, 1}); }

RationalPolynomial double_root_factor(int d) {
  const RationalPolynomial lin = RationalPolynomial::linear_root(Rational(d - 1));
  return lin * lin;
}

Json exact(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

long long to_ll(const Rational& q) { return static_cast<long long>(boost::multiprecision::numerator(q)); }

// Trace of a monic quartic: minus the x^3 coefficient.
Rational poly_trace(const RationalPolynomial& p) { return -p.coefficient(p.degree() - 1); }

}  // namespace

PushforwardSet build_matrices(int d) {
  require_degree(d);
  const long long k = d;
  PushforwardSet set;
  set.d = d;
  set.r_bar = RationalMatrix::from_columns({{1, k * (k - 1), 0, -(k - 1)}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 2 * k, 0, -1}});
  set.s_bar = RationalMatrix::from_columns({{k - 1, 0, 0, 0}, {2, k - 1, -1, 0}, {k - 1, 0, -1, 0}, {0, 0, 0, k - 1}});
  set.b_bar_product = set.r_bar * set.s_bar;
  set.b_bar_printed = RationalMatrix({{k - 1, 2, 2 * k, 0},
                                      {k * k * k - 2 * k * k + k, 2 * k * k - k - 1, 2 * k * k * k, 2 * k * k - 2 * k},
                                      {0, -1, -1, 0},
                                      {-(k - 1) * (k - 1), -2 * k + 2, -(2 * k - 2) * k, -(k - 1)}});
  return set;
}

bool Lambda1::at_least(const BigInt& bound) const {
  // (p + sqrt(disc)) / 2 >= L  iff  sqrt(disc) >= 2L - p.
  const BigInt t = 2 * bound - p;
  return t <= 0 || disc >= t * t;
}

std::string Lambda1::surd() const {
  // disc = f^2 * m with m square-free.
  BigInt f = 1, m = disc;
  for (BigInt q = 2; q * q <= m; ++q) {
    while (m % (q * q) == 0) {
      m /= q * q;
      f *= q;
    }
  }
  if (m == 0 || m == 1) {
    const Rational v(p + (m == 0 ? BigInt(0) : f), BigInt(2));
    std::ostringstream os;
    os << v;
    return os.str();
  }
  const std::string root = "sqrt(" + m.str() + ")";
  if (p % 2 == 0 && f % 2 == 0) {
    const BigInt half_p = p / 2, half_f = f / 2;
    return half_p.str() + " + " + (half_f == 1 ? root : half_f.str() + "*" + root);
  }
  return "(" + p.str() + " + " + (f == 1 ? root : f.str() + "*" + root) + ")/2";
}

Lambda1 lambda1(int d) {
  require_degree(d);
  Lambda1 l;
  l.d = d;
  const BigInt dd = d;
  l.p = 2 * dd * dd - 3 * dd;
  l.disc = l.p * l.p - 4 * (dd - 1);
  l.quadratic = shifted_quadratic(Rational(l.p), Rational(dd - 1));
  const long double p = l.p.convert_to<long double>();
  const long double disc = l.disc.convert_to<long double>();
  l.value = static_cast<double>((p + std::sqrt(disc)) / 2.0L);
  return l;
}

DegreeGrowth degree_growth(int d, int n_max) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
  const PushforwardSet set = build_matrices(d);
  DegreeGrowth g;
  g.d = d;
  std::vector<Rational> v = {1, 1, 0, 0};
  for (int n = 0; n <= n_max; ++n) {
    g.a.push_back(boost::multiprecision::numerator(Rational(v[0] + v[1])));
    v = set.b_bar_product.apply(v);
  }
  for (std::size_t n = 0; n + 1 < g.a.size(); ++n) {
    g.ratios.push_back(g.a[n] == 0 ? NAN : to_double(Rational(g.a[n + 1], g.a[n])));
  }
  g.radius = spectral_radius(char_poly(set.b_bar_product));
  return g;
}

RationalPolynomial displayed_char_poly(int d) {
  require_degree(d);
  const Rational k = d;
  return double_root_factor(d) * shifted_quadratic(2 * k * k * k - 2 * k, k - 1);
}

RationalPolynomial substitute_char_poly(int d) {
  require_degree(d);
  const Rational k = d;
  return double_root_factor(d) * shifted_quadratic(2 * k * k - 3 * k, k - 1);
}

Report consistency_report(int d) {
  const PushforwardSet set = build_matrices(d);
  const RationalPolynomial cp_product = char_poly(set.b_bar_product);
  const RationalPolynomial cp_printed = char_poly(set.b_bar_printed);
  const RationalPolynomial displayed = displayed_char_poly(d);
  const RationalPolynomial substitute = substitute_char_poly(d);
  const Rational expected = Rational(2 * d * d - d - 2);

  const Rational t_product = set.b_bar_product.trace();
  const Rational t_printed = set.b_bar_printed.trace();
  const Rational t_substitute = poly_trace(substitute);
  const Rational t_displayed = poly_trace(displayed);

  Report r;
  r.title = "pushforward consistency, d = " + std::to_string(d);
  r.add("common_trace", t_product == expected && t_printed == expected && t_substitute == expected,
        {{"expected", to_ll(expected)},
         {"product", to_ll(t_product)},
         {"printed", to_ll(t_printed)},
         {"substitute_factorization", to_ll(t_substitute)}});

  Json matches = Json::array();
  const std::pair<const char*, const RationalPolynomial*> matrices[] = {{"product", &cp_product}, {"printed", &cp_printed}};
  const std::pair<const char*, const RationalPolynomial*> factorizations[] = {{"displayed", &displayed},
                                                                             {"substitute", &substitute}};
  for (const auto& [mname, mp] : matrices)
    for (const auto& [fname, fp] : factorizations)
      matches.push_back({{"matrix", mname}, {"factorization", fname}, {"equal", *mp == *fp}});

  Json mismatches = Json::array();
  int equal_entries = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (set.b_bar_product(i, j) == set.b_bar_printed(i, j)) {
        ++equal_entries;
        continue;
      }
      mismatches.push_back({{"row", i + 1},
                            {"col", j + 1},
                            {"product", exact(set.b_bar_product(i, j))},
                            {"printed", exact(set.b_bar_printed(i, j))}});
    }
  }

  const Rational det_r = set.r_bar.determinant();
  const Rational det_s = set.s_bar.determinant();
  r.notes = {
      {"d", d},
      {"trace",
       {{"expected", to_ll(expected)},
        {"product", to_ll(t_product)},
        {"printed", to_ll(t_printed)},
        {"displayed_factorization", to_ll(t_displayed)},
        {"substitute_factorization", to_ll(t_substitute)}}},
      {"determinant",
       {{"r_bar", exact(det_r)},
        {"s_bar", exact(det_s)},
        {"product", exact(set.b_bar_product.determinant())},
        {"printed", exact(set.b_bar_printed.determinant())},
        {"product_equals_det_r_det_s", set.b_bar_product.determinant() == det_r * det_s}}},
      {"char_poly",
       {{"product", cp_product.str()},
        {"printed", cp_printed.str()},
        {"displayed", displayed.str()},
        {"substitute", substitute.str()}}},
      {"char_poly_matches", std::move(matches)},
      {"spectral_radius",
       {{"product", spectral_radius(cp_product)},
        {"printed", spectral_radius(cp_printed)},
        {"displayed", spectral_radius(displayed)},
        {"lambda1", lambda1(d).value}}},
      {"entries_equal", equal_entries},
      {"entry_mismatches", std::move(mismatches)},
      {"product_matrix", set.b_bar_product.str()},
      {"printed_matrix", set.b_bar_printed.str()}};
  return r;
}

RationalMatrix naive_product(int d) {
  require_degree(d);
  const long long k = d;
  return RationalMatrix({{1, 0}, {k * (k - 1), 1}}) * RationalMatrix({{k - 1, 2}, {0, k - 1}});
}

double naive_bound(int d) { return spectral_radius(char_poly(naive_product(d))); }

RationalPolynomial conjecture_poly(int d) {
  require_degree(d);
  const Rational k = d;
  return poly({-(k - 1), 2 * k * k - 4 * k + 3, -(2 * k * k - k - 3), 1});
}

double conjecture_rho(int d) { return spectral_radius(conjecture_poly(d)); }

Json dd_summary(int d) {
  const Lambda1 l = lambda1(d);
  const PushforwardSet set = build_matrices(d);
  return {{"d", d},
          {"lambda1", l.value},
          {"lambda1_exact", l.surd()},
          {"lambda1_quadratic", l.quadratic.str()},
          {"lower_bound", 2 * d * d - 3 * d - 1},
          {"naive_bound", naive_bound(d)},
          {"conjecture_rho", conjecture_rho(d)},
          {"conjecture_upper", 2 * d * d - d - 3},
          {"char_poly_product", char_poly(set.b_bar_product).str()},
          {"char_poly_printed", char_poly(set.b_bar_printed).str()},
          {"consistency", consistency_report(d).to_json()}};
}

}  // namespace billiards
