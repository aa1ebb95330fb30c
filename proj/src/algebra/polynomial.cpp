#include "billiards/algebra/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "billiards/error.hpp"

namespace billiards {

ComplexPolynomial ComplexPolynomial::from_roots(std::span<const Complex> roots, Complex leading) {
  std::vector<Complex> c{leading};
  for (Complex r : roots) {
    std::vector<Complex> next(c.size() + 1, Complex{});
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return ComplexPolynomial(std::move(c));
}

Complex ComplexPolynomial::operator()(Complex z) const noexcept {
  Complex acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

ComplexPolynomial ComplexPolynomial::derivative() const {
  if (c_.size() <= 1) return ComplexPolynomial({Complex{}});
  std::vector<Complex> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return ComplexPolynomial(std::move(d));
}

double ComplexPolynomial::max_abs_coefficient() const noexcept {
  double m = 0.0;
  for (Complex a : c_) m = std::max(m, std::abs(a));
  return m;
}

double ComplexPolynomial::magnitude_at(Complex z) const noexcept {
  const double r = std::abs(z);
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

ComplexPolynomial ComplexPolynomial::trimmed(double rel_tol) const {
  const double cut = rel_tol * max_abs_coefficient();
  std::size_t n = c_.size();
  while (n > 1 && std::abs(c_[n - 1]) <= cut) --n;
  return ComplexPolynomial(std::vector<Complex>(c_.begin(), c_.begin() + static_cast<long>(n)));
}

ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<Complex> c(a.c_.size() + b.c_.size() - 1, Complex{});
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial operator+(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  std::vector<Complex> c(std::max(a.c_.size(), b.c_.size()), Complex{});
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return ComplexPolynomial(std::move(c));
}

ComplexPolynomial operator-(const ComplexPolynomial& a, const ComplexPolynomial& b) {
  return a + (Complex{-1.0, 0.0} * b);
}

ComplexPolynomial operator*(Complex s, ComplexPolynomial p) {
  for (Complex& a : p.c_) a *= s;
  return p;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterations = 600;
constexpr int kMaxRestarts = 8;

// Evaluates p and p' together; monic coefficient arrays, ascending order.
inline void horner2(const std::vector<Complex>& c, Complex z, Complex& p, Complex& dp) {
  p = c.back();
  dp = Complex{};
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
}

inline double magnitude(const std::vector<double>& absc, double r) {
  double acc = 0.0;
  for (auto it = absc.rbegin(); it != absc.rend(); ++it) acc = acc * r + *it;
  return acc;
}

// Aberth-Ehrlich iteration in Gauss-Seidel order. Returns true when every
// estimate has either stopped moving or has a residual at rounding level.
bool aberth(const std::vector<Complex>& c, std::vector<Complex>& z) {
  const std::size_t n = z.size();
  std::vector<double> absc(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) absc[k] = std::abs(c[k]);
  std::vector<char> done(n, 0);
  for (int it = 0; it < kMaxIterations; ++it) {
    bool all = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      Complex p, dp;
      horner2(c, z[k], p, dp);
      Complex sum{};
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        Complex diff = z[k] - z[j];
        if (diff == Complex{}) diff = Complex{kEps, kEps} * (1.0 + std::abs(z[k]));
        sum += 1.0 / diff;
      }
      // A residual at rounding level only ends the iteration when no other
      // approximation competes for the same root.
      const double resid_scale = 16.0 * kEps * magnitude(absc, std::abs(z[k]));
      if (std::abs(p) <= resid_scale && (dp == Complex{} || std::abs(p / dp * sum) < 0.1)) {
        done[k] = 1;
        continue;
      }
      Complex w;
      if (dp == Complex{}) {
        w = Complex{1e-3, 1e-3} * (1.0 + std::abs(z[k]));
      } else {
        const Complex ratio = p / dp;
        w = ratio / (1.0 - ratio * sum);
      }
      if (!is_finite(w)) w = Complex{1e-3, -1e-3} * (1.0 + std::abs(z[k]));
      z[k] -= w;
      if (std::abs(w) <= 4.0 * kEps * std::abs(z[k])) {
        done[k] = 1;
      } else {
        all = false;
      }
    }
    if (all) return true;
  }
  return std::all_of(done.begin(), done.end(), [](char x) { return x != 0; });
}

struct Cluster {
  Complex sum;
  int count;
  Complex centroid() const { return sum / static_cast<double>(count); }
};

std::vector<Cluster> cluster_roots(const std::vector<Complex>& z, double tol) {
  std::vector<Cluster> cl;
  cl.reserve(z.size());
  for (Complex r : z) cl.push_back({r, 1});
  bool merged = true;
  while (merged && cl.size() > 1) {
    merged = false;
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < cl.size(); ++i) {
      for (std::size_t j = i + 1; j < cl.size(); ++j) {
        const Complex ci = cl[i].centroid(), cj = cl[j].centroid();
        const int m = cl[i].count + cl[j].count;
        const double scale = std::max(1.0, std::max(std::abs(ci), std::abs(cj)));
        const double radius = scale * std::pow(tol, 1.0 / m);
        const double dist = std::abs(ci - cj);
        if (dist < radius && dist / radius < best) {
          best = dist / radius;
          bi = i;
          bj = j;
        }
      }
    }
    if (best < 1.0) {
      cl[bi].sum += cl[bj].sum;
      cl[bi].count += cl[bj].count;
      cl.erase(cl.begin() + static_cast<long>(bj));
      merged = true;
    }
  }
  return cl;
}

// Newton on the (m-1)-th derivative, which has a simple root at an m-fold
// root of p. Reverts when the iterate leaves the cluster radius.
Complex polish(const ComplexPolynomial& p, Complex z0, int m, double radius) {
  ComplexPolynomial f = p;
  for (int k = 1; k < m; ++k) f = f.derivative();
  const ComplexPolynomial df = f.derivative();
  Complex z = z0;
  for (int it = 0; it < 6; ++it) {
    const Complex fz = f(z), dfz = df(z);
    if (dfz == Complex{} || fz == Complex{}) break;
    const Complex step = fz / dfz;
    if (!is_finite(step)) break;
    z -= step;
    if (std::abs(step) <= 2.0 * kEps * std::abs(z)) break;
  }
  if (!is_finite(z) || std::abs(z - z0) > radius) return z0;
  return z;
}

}  // namespace

RootMultiset find_roots(const ComplexPolynomial& p, double tol) {
  const auto& a = p.coefficients();
  for (Complex x : a)
    if (!is_finite(x)) throw Error(ErrorCode::InvalidArgument, "non-finite polynomial coefficient");
  const double scale = p.max_abs_coefficient();
  if (a.empty() || scale <= tol) {
    throw Error(ErrorCode::DegeneratePolynomial, "all coefficients below tolerance");
  }
  const double cut = tol * scale;
  int hi = p.degree();
  while (hi > 0 && std::abs(a[hi]) <= cut) --hi;
  int lo = 0;
  while (lo < hi && std::abs(a[lo]) <= cut) ++lo;

  RootMultiset out;
  if (lo > 0) out.push_back({Complex{}, lo});
  const int n = hi - lo;
  if (n == 0) return out;

  std::vector<Complex> monic(a.begin() + lo, a.begin() + hi + 1);
  const Complex lead = monic.back();
  for (Complex& x : monic) x /= lead;
  const ComplexPolynomial q(monic);

  if (n == 1) {
    out.push_back({-monic[0], 1});
    return out;
  }

  // Initial radius: geometric mean of root moduli.
  const double r0 = std::max(std::pow(std::abs(monic[0]), 1.0 / n), 1e-3);
  std::mt19937_64 rng(0x5eed5eedULL + static_cast<std::uint64_t>(n));
  std::uniform_real_distribution<double> jitter(-0.5, 0.5);

  for (int attempt = 0; attempt <= kMaxRestarts; ++attempt) {
    std::vector<Complex> z(static_cast<std::size_t>(n));
    const double offset = 0.4 + (attempt > 0 ? jitter(rng) : 0.0);
    for (int k = 0; k < n; ++k) {
      const double ang = 2.0 * std::numbers::pi * k / n + offset;
      const double rad = r0 * (attempt > 0 ? 1.0 + 0.5 * jitter(rng) : 1.0);
      z[static_cast<std::size_t>(k)] = std::polar(rad, ang);
    }
    const bool converged = aberth(monic, z);
    bool ok = true;
    for (Complex r : z) ok = ok && is_finite(r);
    if (!ok) continue;

    RootMultiset candidate;
    for (const Cluster& c : cluster_roots(z, tol)) {
      const Complex center = c.centroid();
      const double radius = std::max(1.0, std::abs(center)) * std::pow(tol, 1.0 / c.count);
      candidate.push_back({polish(q, center, c.count, radius), c.count});
    }
    bool residual_ok = true;
    for (const Root& r : candidate) {
      residual_ok = residual_ok && std::abs(q(r.value)) <= tol * q.magnitude_at(r.value);
    }
    // A root found twice in place of a missing one passes the residual test
    // but not the root sum.
    Complex sum{};
    double sum_scale = std::abs(monic[static_cast<std::size_t>(n - 1)]);
    for (const Root& r : candidate) {
      sum += static_cast<double>(r.multiplicity) * r.value;
      sum_scale += r.multiplicity * std::abs(r.value);
    }
    const bool vieta_ok = std::abs(sum + monic[static_cast<std::size_t>(n - 1)]) <= std::sqrt(tol) * sum_scale;
    if (converged || residual_ok) {
      if (!residual_ok || !vieta_ok) continue;
      out.insert(out.end(), candidate.begin(), candidate.end());
      return out;
    }
  }
  throw Error(ErrorCode::NonConvergence,
              "root iteration did not converge for degree " + std::to_string(n));
}

int total_multiplicity(const RootMultiset& roots) noexcept {
  int m = 0;
  for (const Root& r : roots) m += r.multiplicity;
  return m;
}

std::vector<Complex> flatten(const RootMultiset& roots) {
  std::vector<Complex> z;
  for (const Root& r : roots)
    for (int k = 0; k < r.multiplicity; ++k) z.push_back(r.value);
  return z;
}

}  // namespace billiards
