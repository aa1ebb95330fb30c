#include "billiards/localmodel/local_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "billiards/error.hpp"

namespace billiards {

namespace {

using GR = GaussianRational;

void require_order(int d, int n, int min_n) {
  if (d < 2) throw Error(ErrorCode::InvalidDegree, "need d >= 2");
  if (n < min_n) throw Error(ErrorCode::InvalidArgument, "series order too small");
}

// f^alpha for f(0) = 1 by the J.C.P. Miller recurrence
// h_m = (1/m) sum_{j=1}^m ((alpha + 1) j - m) f_j h_{m-j}.
TruncatedSeries rational_power(const TruncatedSeries& f, const Rational& alpha) {
  const int n = f.order();
  TruncatedSeries h(n);
  h[0] = 1;
  for (int m = 1; m <= n; ++m) {
    GR acc;
    for (int j = 1; j <= m; ++j) {
      if (f[j].is_zero()) continue;
      const Rational w = (alpha + 1) * j - m;
      acc += GR(w) * f[j] * h[m - j];
    }
    h[m] = acc * GR(Rational(1, m));
  }
  return h;
}

}  // namespace

SeriesB solve_B(int d, int n) {
  require_order(d, n, d);
  TruncatedSeries f = TruncatedSeries::constant(n, 1);
  f[d] = -1;
  TruncatedSeries b = rational_power(f, Rational(1, d));
  b[0] = 0;
  return {d, std::move(b)};
}

TruncatedSeries local_r_unit(int d, int n) {
  require_order(d, n, 2 * d);
  const TruncatedSeries one_plus_b = TruncatedSeries::constant(n, 1) + solve_B(d, n).series;
  return one_plus_b.pow(-(d - 1));
}

BivariateTruncatedSeries local_s_quotient(int d, int n) {
  require_order(d, n, d);
  const TruncatedSeries b = solve_B(d, n).series;
  const BivariateTruncatedSeries diff =
      BivariateTruncatedSeries::from_zprime(b) - BivariateTruncatedSeries::from_z(b);
  return GR(-d) * diff.divide_by_difference();
}

BivariateTruncatedSeries local_s_residual(int d, int n) {
  require_order(d, n, 2 * d);
  BivariateTruncatedSeries a = local_s_quotient(d, n);
  for (int i = 0; i < d; ++i) a.at(i, d - 1 - i) -= 1;
  return a;
}

std::pair<Complex, Complex> ChartPoint::to_yz() const { return {u * std::pow(v, k), v}; }

std::pair<int, Complex> micro_r(int d, int k, Complex u) {
  if (k < 0 || k > d - 1) throw Error(ErrorCode::InvalidArgument, "chart index out of range");
  if (u == Complex{}) throw Error(ErrorCode::ZeroInput, "micro_r needs u != 0");
  return {d - 1 - k, 1.0 / u};
}

RootMultiset micro_s(int d, int k, Complex u, double tol) {
  if (d < 2) throw Error(ErrorCode::InvalidDegree, "need d >= 2");
  if (2 * k < d - 1 || k > d - 1) throw Error(ErrorCode::InvalidArgument, "need (d-1)/2 <= k <= d-1");
  std::vector<Complex> coeffs(static_cast<std::size_t>(d), Complex{1.0});
  if (2 * k == d - 1) coeffs[0] += static_cast<double>(d) * u * u;
  RootMultiset out;
  for (const Root& a : find_roots(ComplexPolynomial(std::move(coeffs)))) {
    const Complex image = u / std::pow(a.value, k);
    bool merged = false;
    for (Root& r : out) {
      if (std::abs(r.value - image) <= tol * std::max(1.0, std::abs(image))) {
        r.multiplicity += a.multiplicity;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back({image, a.multiplicity});
  }
  return out;
}

namespace {

double multiset_gap(const std::vector<Complex>& a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const Complex& x : a) {
    auto it = std::min_element(b.begin(), b.end(),
                               [&](Complex p, Complex q) { return std::abs(p - x) < std::abs(q - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

// Images of u under s in chart k at finite v: roots alpha = v'/v of
// sum alpha^i + A(v, v alpha) / v^(d-1) + d u^2 v^(2k-d+1), the d-1 smallest.
std::vector<Complex> s_chart_images(const BivariateTruncatedSeries& a, int d, int k, Complex u, Complex v) {
  const int n = a.order();
  std::vector<Complex> poly(static_cast<std::size_t>(n + 1), Complex{});
  for (int i = 0; i < d; ++i) poly[static_cast<std::size_t>(i)] += 1.0;
  poly[0] += static_cast<double>(d) * u * u * std::pow(v, 2 * k - d + 1);
  for (int t = d; t <= n; ++t) {
    const Complex vt = std::pow(v, t - d + 1);
    for (int j = 0; j <= t; ++j) {
      const GR& c = a.coefficient(t - j, j);
      if (!c.is_zero()) poly[static_cast<std::size_t>(j)] += c.to_complex() * vt;
    }
  }
  std::vector<Complex> alphas = flatten(find_roots(ComplexPolynomial(std::move(poly))));
  std::sort(alphas.begin(), alphas.end(), [](Complex p, Complex q) { return std::abs(p) < std::abs(q); });
  alphas.resize(static_cast<std::size_t>(d - 1));
  std::vector<Complex> out;
  for (const Complex& al : alphas) out.push_back(u / std::pow(al, k));
  return out;
}

double fitted_order(const std::array<double, 3>& dev, const std::array<double, 3>& h, double floor) {
  double order = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i + 1 < 3; ++i) {
    if (dev[i] <= floor || dev[i + 1] <= floor) continue;
    const double o = std::log(dev[i] / dev[i + 1]) / std::log(h[i] / h[i + 1]);
    order = std::isnan(order) ? o : std::min(order, o);
  }
  return order;
}

}  // namespace

Report verify_chart_consistency(const ChartOptions& options) {
  const int d = options.d;
  const int n = options.n > 0 ? options.n : 2 * d + 2;
  const TruncatedSeries unit = local_r_unit(d, n);
  const BivariateTruncatedSeries a = local_s_residual(d, n);
  const std::array<double, 3> h{1e-3, 1e-4, 1e-5};
  constexpr double kRoundingFloor = 1e-13;

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> radius(0.5, 2.0);
  std::uniform_int_distribution<int> chart(0, d - 1);
  std::uniform_int_distribution<int> upper(d / 2, d - 1);

  double r_dev = 0.0, r_involution = 0.0, r_order = std::numeric_limits<double>::infinity();
  double s_dev_last = 0.0, s_order = std::numeric_limits<double>::infinity();
  bool r_decreasing = true, s_decreasing = true;
  int s_samples = 0;
  for (int sample = 0; sample < options.samples; ++sample) {
    const Complex u = std::polar(radius(rng), phase(rng));
    const double theta = phase(rng);

    const int k = chart(rng);
    const int kp = d - 1 - k;
    const Complex expect = micro_r(d, k, u).second;
    std::array<double, 3> dev{};
    for (int i = 0; i < 3; ++i) {
      const Complex v = std::polar(h[i], theta);
      const auto [y, z] = ChartPoint{k, u, v}.to_yz();
      const Complex yp = std::pow(z, d - 1) * unit.evaluate(z) / y;
      const Complex up = yp / std::pow(z, kp);
      dev[i] = std::abs(up - expect);
      // Back through chart kp to chart k.
      const Complex ypp = std::pow(z, d - 1) * unit.evaluate(z) / (up * std::pow(z, kp));
      r_involution = std::max(r_involution, std::abs(ypp / std::pow(z, k) - u));
    }
    r_dev = std::max(r_dev, dev[1]);
    if (dev[2] > dev[0] + kRoundingFloor) r_decreasing = false;
    const double o = fitted_order(dev, h, kRoundingFloor);
    if (!std::isnan(o)) r_order = std::min(r_order, o);

    const int ks = upper(rng);
    std::vector<Complex> limit = flatten(micro_s(d, ks, u));
    std::array<double, 3> sdev{};
    for (int i = 0; i < 3; ++i)
      sdev[i] = multiset_gap(s_chart_images(a, d, ks, u, std::polar(h[i], theta)), limit);
    ++s_samples;
    s_dev_last = std::max(s_dev_last, sdev[2]);
    if (sdev[2] > sdev[0] + kRoundingFloor) s_decreasing = false;
    const double so = fitted_order(sdev, h, kRoundingFloor);
    if (!std::isnan(so)) s_order = std::min(s_order, so);
  }

  Report r;
  r.title = "chart consistency";
  r.add("r_chart_deviation", r_dev <= options.bound, {{"max_at_1e-4", r_dev}, {"bound", options.bound}});
  r.add("r_chart_decreasing", r_decreasing);
  r.add("r_chart_involution", r_involution <= 1e-10, {{"max", r_involution}});
  r.add("r_chart_order", !std::isfinite(r_order) || r_order >= d - 0.5,
        {{"min_order", std::isfinite(r_order) ? Json(r_order) : Json(nullptr)}, {"expected", d}});
  r.add("s_chart_decreasing", s_decreasing, {{"max_at_1e-5", s_dev_last}, {"samples", s_samples}});
  r.add("s_chart_order", !std::isfinite(s_order) || s_order >= 0.8,
        {{"min_order", std::isfinite(s_order) ? Json(s_order) : Json(nullptr)}, {"expected_at_least", 1}});
  r.notes = {{"d", d}, {"order", n}, {"samples", options.samples}, {"seed", options.seed},
             {"v_moduli", {h[0], h[1], h[2]}}};
  return r;
}

Report verify_series(int d, int n) {
  require_order(d, n, 2 * d);
  Report r;
  r.title = "local series, d = " + std::to_string(d);
  const SeriesB b = solve_B(d, n);
  const TruncatedSeries one = TruncatedSeries::constant(n, 1);
  const TruncatedSeries zd = TruncatedSeries::variable(n).pow(d);

  r.add("B_valuation", b.series.valuation() == d, {{"valuation", b.series.valuation().value_or(-1)}});
  r.add("B_leading", b.series[d] == GR(Rational(-1, d)), {{"coefficient", b.series[d].str()}});
  const TruncatedSeries residual = zd + (one + b.series).pow(d) - one;
  r.add("B_residual_zero", residual.is_zero());

  bool unique = true;
  Json perturbed = Json::array();
  for (int m : {d, (d + n) / 2, n}) {
    TruncatedSeries p = b.series;
    p[m] += 1;
    const bool breaks = !(zd + (one + p).pow(d) - one).is_zero();
    unique = unique && breaks;
    perturbed.push_back(m);
  }
  r.add("B_unique", unique, {{"perturbed_indices", perturbed}});

  const TruncatedSeries u = local_r_unit(d, n);
  bool low_zero = u[0] == GR(1);
  for (int m = 1; m < d; ++m) low_zero = low_zero && u[m].is_zero();
  r.add("U_low_coefficients", low_zero);
  r.add("U_inverse", (u * (one + b.series).pow(d - 1)) == one);

  const BivariateTruncatedSeries q = local_s_quotient(d, n);
  const BivariateTruncatedSeries a = local_s_residual(d, n);
  const auto mtd = a.min_total_degree();
  r.add("A_in_ideal", !mtd || *mtd >= d, {{"min_total_degree", mtd ? Json(*mtd) : Json(nullptr)}});
  r.add("Q_symmetric", q.swapped() == q);
  // On the diagonal Q(z, z) = -d B'(z), known modulo z^N.
  const TruncatedSeries db = GR(-d) * b.series.derivative();
  const TruncatedSeries diag = q.diagonal();
  bool diag_ok = true;
  for (int m = 0; m <= diag.order(); ++m) diag_ok = diag_ok && diag[m] == db[m];
  r.add("Q_diagonal", diag_ok);

  r.notes = {{"d", d}, {"order", n}, {"B", b.series.str()}, {"U", u.str()}};
  return r;
}

}  // namespace billiards
