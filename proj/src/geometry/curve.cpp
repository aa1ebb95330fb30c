#include "billiards/geometry/curve.hpp"

#include <algorithm>
#include <map>

#include "billiards/error.hpp"

namespace billiards {

namespace {

using Exp3 = std::array<int, 3>;
using FloatForm = std::map<Exp3, Complex>;

FloatForm multiply(const FloatForm& a, const FloatForm& b) {
  FloatForm r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) r[{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}] += ca * cb;
  return r;
}

// Powers p^0 .. p^n of a univariate polynomial.
std::vector<ComplexPolynomial> powers(const ComplexPolynomial& p, int n) {
  std::vector<ComplexPolynomial> out{ComplexPolynomial({1.0})};
  for (int k = 1; k <= n; ++k) out.push_back(out.back() * p);
  return out;
}

Complex ipow(Complex z, int e) {
  Complex r = 1.0;
  for (int k = 0; k < e; ++k) r *= z;
  return r;
}

}  // namespace

PlaneCurve::PlaneCurve(int degree, std::vector<Monomial> monomials) : d_(degree) {
  if (degree < 1) throw Error(ErrorCode::InvalidDegree, "curve degree must be positive");
  std::map<Exp3, Complex> merged;
  for (const Monomial& m : monomials) {
    if (m.i < 0 || m.j < 0 || m.k < 0 || m.i + m.j + m.k != degree)
      throw Error(ErrorCode::InvalidDegree, "exponent triple does not match the curve degree");
    if (!is_finite(m.c)) throw Error(ErrorCode::InvalidArgument, "non-finite curve coefficient");
    merged[{m.i, m.j, m.k}] += m.c;
  }
  for (const auto& [e, c] : merged)
    if (c != Complex{}) mono_.push_back({e[0], e[1], e[2], c});
  if (mono_.empty()) throw Error(ErrorCode::InvalidArgument, "curve has no nonzero coefficient");
}

Complex PlaneCurve::coefficient(int i, int j, int k) const noexcept {
  for (const Monomial& m : mono_)
    if (m.i == i && m.j == j && m.k == k) return m.c;
  return {};
}

double PlaneCurve::max_abs_coefficient() const noexcept {
  double s = 0.0;
  for (const Monomial& m : mono_) s = std::max(s, std::abs(m.c));
  return s;
}

bool PlaneCurve::is_real(double tol) const noexcept {
  const double s = max_abs_coefficient();
  return std::all_of(mono_.begin(), mono_.end(),
                     [&](const Monomial& m) { return std::abs(m.c.imag()) <= tol * s; });
}

Complex PlaneCurve::operator()(const std::array<Complex, 3>& x) const noexcept {
  std::vector<std::array<Complex, 3>> pw(static_cast<std::size_t>(d_ + 1));
  pw[0] = {1.0, 1.0, 1.0};
  for (int e = 1; e <= d_; ++e)
    for (int a = 0; a < 3; ++a) pw[static_cast<std::size_t>(e)][a] = pw[static_cast<std::size_t>(e - 1)][a] * x[a];
  Complex acc{};
  for (const Monomial& m : mono_)
    acc += m.c * pw[static_cast<std::size_t>(m.i)][0] * pw[static_cast<std::size_t>(m.j)][1] *
           pw[static_cast<std::size_t>(m.k)][2];
  return acc;
}

std::array<Complex, 3> PlaneCurve::gradient(const std::array<Complex, 3>& x) const noexcept {
  std::array<Complex, 3> g{};
  for (const Monomial& m : mono_) {
    const Complex a = ipow(x[0], m.i), b = ipow(x[1], m.j), c = ipow(x[2], m.k);
    if (m.i > 0) g[0] += m.c * static_cast<double>(m.i) * ipow(x[0], m.i - 1) * b * c;
    if (m.j > 0) g[1] += m.c * static_cast<double>(m.j) * a * ipow(x[1], m.j - 1) * c;
    if (m.k > 0) g[2] += m.c * static_cast<double>(m.k) * a * b * ipow(x[2], m.k - 1);
  }
  return g;
}

double PlaneCurve::magnitude(const std::array<Complex, 3>& x) const noexcept {
  const double r0 = std::abs(x[0]), r1 = std::abs(x[1]), r2 = std::abs(x[2]);
  double acc = 0.0;
  for (const Monomial& m : mono_)
    acc += std::abs(m.c) * std::pow(r0, m.i) * std::pow(r1, m.j) * std::pow(r2, m.k);
  return acc;
}

Vec2 PlaneCurve::affine_gradient(const Vec2& x) const noexcept {
  const auto g = gradient({x[0], x[1], 1.0});
  return {g[0], g[1]};
}

bool PlaneCurve::contains(const Vec2& x, double tol) const noexcept {
  return std::abs(affine(x)) <= tol * affine_magnitude(x);
}

ComplexPolynomial PlaneCurve::restrict_to_line(const Vec2& x, const Vec2& q) const {
  const auto p0 = powers(ComplexPolynomial({x[0], q[0]}), d_);
  const auto p1 = powers(ComplexPolynomial({x[1], q[1]}), d_);
  std::vector<Complex> acc(static_cast<std::size_t>(d_ + 1), Complex{});
  for (const Monomial& m : mono_) {
    const ComplexPolynomial term = p0[static_cast<std::size_t>(m.i)] * p1[static_cast<std::size_t>(m.j)];
    for (int k = 0; k <= term.degree(); ++k) acc[static_cast<std::size_t>(k)] += m.c * term.coefficient(k);
  }
  return ComplexPolynomial(std::move(acc));
}

ComplexPolynomial PlaneCurve::restrict_to_infinity() const {
  std::vector<Complex> acc(static_cast<std::size_t>(d_ + 1), Complex{});
  for (const Monomial& m : mono_)
    if (m.k == 0) acc[static_cast<std::size_t>(m.j)] += m.c;
  return ComplexPolynomial(std::move(acc));
}

PlaneCurve PlaneCurve::pullback(const Mat3& m) const {
  std::array<FloatForm, 3> lin;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      Exp3 e{0, 0, 0};
      e[static_cast<std::size_t>(b)] = 1;
      if (m[a][b] != Complex{}) lin[static_cast<std::size_t>(a)][e] = m[a][b];
    }
  }
  std::array<std::vector<FloatForm>, 3> pw;
  for (int a = 0; a < 3; ++a) {
    pw[a].push_back(FloatForm{{{0, 0, 0}, 1.0}});
    for (int e = 1; e <= d_; ++e) pw[a].push_back(multiply(pw[a].back(), lin[static_cast<std::size_t>(a)]));
  }
  FloatForm out;
  for (const Monomial& mo : mono_) {
    FloatForm t = multiply(multiply(pw[0][static_cast<std::size_t>(mo.i)], pw[1][static_cast<std::size_t>(mo.j)]),
                           pw[2][static_cast<std::size_t>(mo.k)]);
    for (const auto& [e, c] : t) out[e] += mo.c * c;
  }
  // Cancellation leaves rounding-level debris; drop it relative to the result.
  double s = 0.0;
  for (const auto& [e, c] : out) s = std::max(s, std::abs(c));
  std::vector<Monomial> mono;
  for (const auto& [e, c] : out) {
    if (std::abs(c) <= 1e-15 * s) continue;
    const double re = std::abs(c.real()) <= 1e-15 * s ? 0.0 : c.real();
    const double im = std::abs(c.imag()) <= 1e-15 * s ? 0.0 : c.imag();
    mono.push_back({e[0], e[1], e[2], {re, im}});
  }
  return PlaneCurve(d_, std::move(mono));
}

PlaneCurve PlaneCurve::pushforward(const Mat3& m) const { return pullback(inverse(m)); }

Vec2 project_to_curve(const PlaneCurve& c, Vec2 y) {
  double res = std::abs(c.affine(y));
  for (int it = 0; it < 3 && res > 0.0; ++it) {
    const Vec2 g = c.affine_gradient(y);
    const double gg = std::norm(g[0]) + std::norm(g[1]);
    if (gg == 0.0) break;
    const Complex k = c.affine(y) / gg;
    const Vec2 next{y[0] - k * std::conj(g[0]), y[1] - k * std::conj(g[1])};
    const double next_res = std::abs(c.affine(next));
    if (!(next_res < res)) break;
    y = next;
    res = next_res;
  }
  return y;
}

Vec2 PlaneCurve::sample_point(std::mt19937_64& rng) const {
  std::normal_distribution<double> g;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Vec2 base{Complex{g(rng), g(rng)}, Complex{g(rng), g(rng)}};
    const Vec2 dir{Complex{g(rng), g(rng)}, Complex{g(rng), g(rng)}};
    const ComplexPolynomial p = restrict_to_line(base, dir);
    if (p.degree() < 1 || std::abs(p.coefficient(p.degree())) < 1e-8 * p.max_abs_coefficient()) continue;
    RootMultiset roots;
    try {
      roots = find_roots(p);
    } catch (const Error&) {
      continue;
    }
    const auto flat = flatten(roots);
    if (flat.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, flat.size() - 1);
    Complex s = flat[pick(rng)];
    const ComplexPolynomial dp = p.derivative();
    for (int it = 0; it < 3; ++it) {
      const Complex dv = dp(s);
      if (dv == Complex{}) break;
      s -= p(s) / dv;
    }
    if (!is_finite(s)) continue;
    const Vec2 x = project_to_curve(*this, {base[0] + s * dir[0], base[1] + s * dir[1]});
    if (contains(x, 1e-12)) return x;
  }
  throw Error(ErrorCode::NonConvergence, "could not sample a curve point");
}

Mat3 inverse(const Mat3& m) {
  Mat3 adj{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    }
  }
  const Complex det = m[0][0] * adj[0][0] + m[0][1] * adj[1][0] + m[0][2] * adj[2][0];
  if (det == Complex{}) throw Error(ErrorCode::InvalidArgument, "singular 3x3 matrix");
  for (auto& row : adj)
    for (auto& v : row) v /= det;
  return adj;
}

Slope tangent_slope(const PlaneCurve& c, const ProjectivePoint& x, double tol) {
  const auto& X = x.coords();
  const double scale = c.magnitude(X);
  if (std::abs(c(X)) > tol * scale) throw Error(ErrorCode::NotOnCurve, "point " + x.str() + " is not on the curve");
  const auto g = c.gradient(X);
  // x is normalized so its largest coordinate is 1.
  double coeff_sum = 0.0;
  for (const Monomial& m : c.monomials()) coeff_sum += std::abs(m.c);
  const double gscale = c.degree() * coeff_sum;
  if (std::hypot(std::abs(g[0]), std::abs(g[1])) <= tol * gscale)
    throw Error(ErrorCode::SingularPoint, "tangent slope undefined at " + x.str());
  return Slope::normalized(-g[1], g[0]);
}

int tangency_order(const PlaneCurve& c, const Vec2& x, double tol) {
  const Slope t = tangent_slope(c, ProjectivePoint::affine(x), tol);
  const ComplexPolynomial p = c.restrict_to_line(x, {t.t0, t.t1});
  const double cut = tol * p.max_abs_coefficient();
  int order = 0;
  while (order <= p.degree() && std::abs(p.coefficient(order)) <= cut) ++order;
  return order;
}

std::vector<ProjectivePoint> points_at_infinity(const PlaneCurve& c, double tol) {
  const ComplexPolynomial p = c.restrict_to_infinity();
  std::vector<ProjectivePoint> out;
  int finite = 0;
  if (p.max_abs_coefficient() > 0.0) {
    const double cut = tol * p.max_abs_coefficient();
    int top = p.degree();
    while (top > 0 && std::abs(p.coefficient(top)) <= cut) --top;
    if (top > 0) {
      for (const Root& r : find_roots(p, tol)) {
        if (r.multiplicity > 1)
          throw Error(ErrorCode::NonReducedInfinity, "repeated point at infinity");
        out.emplace_back(1.0, r.value, 0.0);
        ++finite;
      }
    }
  } else {
    throw Error(ErrorCode::NonReducedInfinity, "line at infinity is a component");
  }
  const int at_y = c.degree() - finite;
  if (at_y > 1) throw Error(ErrorCode::NonReducedInfinity, "repeated point [0:1:0] at infinity");
  if (at_y == 1) out.emplace_back(0.0, 1.0, 0.0);
  return out;
}

SmoothnessCertificate certify_smooth(const PlaneCurve& c, std::uint64_t seed, int samples, double tol) {
  SmoothnessCertificate cert;
  const int d = c.degree();
  cert.samples = std::max(samples, 10 * d * d);
  std::mt19937_64 rng(seed);
  double coeff_sum = 0.0;
  for (const Monomial& m : c.monomials()) coeff_sum += std::abs(m.c);
  double worst = std::numeric_limits<double>::infinity();
  for (int s = 0; s < cert.samples; ++s) {
    const Vec2 x = c.sample_point(rng);
    const ProjectivePoint p = ProjectivePoint::affine(x);
    const auto g = c.gradient(p.coords());
    const double gn = std::sqrt(std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2]));
    worst = std::min(worst, gn / (d * coeff_sum));
  }
  cert.min_relative_gradient = worst;
  cert.passed = worst > tol;
  return cert;
}

}  // namespace billiards
