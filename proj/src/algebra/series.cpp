#include "billiards/algebra/series.hpp"

#include <sstream>

#include "billiards/error.hpp"

namespace billiards {

namespace {

void require_same_order(int a, int b) {
  if (a != b) {
    throw Error(ErrorCode::InvalidArgument,
                "series orders differ: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

TruncatedSeries::TruncatedSeries(int order) : n_(order), c_(static_cast<std::size_t>(order + 1)) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "negative series order");
}

TruncatedSeries::TruncatedSeries(int order, std::vector<GaussianRational> coeffs)
    : TruncatedSeries(order) {
  for (std::size_t k = 0; k < coeffs.size() && k < c_.size(); ++k) c_[k] = std::move(coeffs[k]);
}

TruncatedSeries TruncatedSeries::constant(int order, const GaussianRational& c) {
  TruncatedSeries s(order);
  s.c_[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::variable(int order) {
  TruncatedSeries s(order);
  if (order >= 1) s.c_[1] = 1;
  return s;
}

bool TruncatedSeries::is_zero() const { return !valuation().has_value(); }

std::optional<int> TruncatedSeries::valuation() const {
  for (int k = 0; k <= n_; ++k)
    if (!c_[static_cast<std::size_t>(k)].is_zero()) return k;
  return std::nullopt;
}

TruncatedSeries TruncatedSeries::derivative() const {
  TruncatedSeries d(n_);
  for (int k = 1; k <= n_; ++k)
    d.c_[static_cast<std::size_t>(k - 1)] = c_[static_cast<std::size_t>(k)] * GaussianRational(k);
  return d;
}

TruncatedSeries TruncatedSeries::pow(int e) const {
  if (e < 0) return series_inverse(*this).pow(-e);
  TruncatedSeries result = constant(n_, 1);
  TruncatedSeries base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Complex TruncatedSeries::evaluate(Complex z) const {
  Complex acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->to_complex();
  return acc;
}

std::string TruncatedSeries::str(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k <= n_; ++k) {
    const GaussianRational& a = c_[static_cast<std::size_t>(k)];
    if (a.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << a.str();
    if (k > 0) os << "*" << var << (k > 1 ? "^" + std::to_string(k) : "");
  }
  if (first) os << "0";
  os << " + O(" << var << "^" << (n_ + 1) << ")";
  return os.str();
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  require_same_order(n_, o.n_);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  require_same_order(n_, o.n_);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

TruncatedSeries operator-(const TruncatedSeries& a) {
  TruncatedSeries r = a;
  for (auto& x : r.c_) x = -x;
  return r;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a.n_, b.n_);
  TruncatedSeries r(a.n_);
  for (int i = 0; i <= a.n_; ++i) {
    const GaussianRational& ai = a.c_[static_cast<std::size_t>(i)];
    if (ai.is_zero()) continue;
    for (int j = 0; i + j <= a.n_; ++j) {
      const GaussianRational& bj = b.c_[static_cast<std::size_t>(j)];
      if (!bj.is_zero()) r.c_[static_cast<std::size_t>(i + j)] += ai * bj;
    }
  }
  return r;
}

TruncatedSeries operator*(const GaussianRational& s, TruncatedSeries a) {
  for (auto& x : a.c_) x *= s;
  return a;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) { return a * b; }

TruncatedSeries series_inverse(const TruncatedSeries& a) {
  if (a[0].is_zero()) throw Error(ErrorCode::NonUnitSeries, "constant term is zero");
  const int n = a.order();
  TruncatedSeries r(n);
  const GaussianRational inv0 = a[0].inverse();
  r[0] = inv0;
  for (int k = 1; k <= n; ++k) {
    GaussianRational acc;
    for (int j = 1; j <= k; ++j) acc += a[j] * r[k - j];
    r[k] = -(acc * inv0);
  }
  return r;
}

TruncatedSeries series_compose(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a.order(), b.order());
  if (!b[0].is_zero()) throw Error(ErrorCode::InvalidArgument, "inner series must vanish at 0");
  const int n = a.order();
  TruncatedSeries acc(n);
  for (int k = n; k >= 0; --k) {
    acc = acc * b;
    acc[0] += a[k];
  }
  return acc;
}

BivariateTruncatedSeries::BivariateTruncatedSeries(int order)
    : n_(order), c_(static_cast<std::size_t>((order + 1) * (order + 2) / 2)) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "negative series order");
}

std::size_t BivariateTruncatedSeries::index(int i, int j) const noexcept {
  const int t = i + j;
  return static_cast<std::size_t>(t * (t + 1) / 2 + i);
}

BivariateTruncatedSeries BivariateTruncatedSeries::from_z(const TruncatedSeries& f) {
  BivariateTruncatedSeries s(f.order());
  for (int i = 0; i <= f.order(); ++i) s.at(i, 0) = f[i];
  return s;
}

BivariateTruncatedSeries BivariateTruncatedSeries::from_zprime(const TruncatedSeries& f) {
  BivariateTruncatedSeries s(f.order());
  for (int j = 0; j <= f.order(); ++j) s.at(0, j) = f[j];
  return s;
}

GaussianRational BivariateTruncatedSeries::coefficient(int i, int j) const {
  if (i < 0 || j < 0 || i + j > n_) return {};
  return c_[index(i, j)];
}

GaussianRational& BivariateTruncatedSeries::at(int i, int j) {
  if (i < 0 || j < 0 || i + j > n_) throw Error(ErrorCode::InvalidArgument, "index out of range");
  return c_[index(i, j)];
}

bool BivariateTruncatedSeries::is_zero() const { return !min_total_degree().has_value(); }

std::optional<int> BivariateTruncatedSeries::min_total_degree() const {
  for (int t = 0; t <= n_; ++t)
    for (int i = 0; i <= t; ++i)
      if (!c_[index(i, t - i)].is_zero()) return t;
  return std::nullopt;
}

std::vector<GaussianRational> BivariateTruncatedSeries::stratum(int t) const {
  std::vector<GaussianRational> s;
  for (int i = 0; i <= t; ++i) s.push_back(coefficient(i, t - i));
  return s;
}

BivariateTruncatedSeries BivariateTruncatedSeries::swapped() const {
  BivariateTruncatedSeries s(n_);
  for (int t = 0; t <= n_; ++t)
    for (int i = 0; i <= t; ++i) s.c_[index(t - i, i)] = c_[index(i, t - i)];
  return s;
}

TruncatedSeries BivariateTruncatedSeries::diagonal() const {
  TruncatedSeries g(n_);
  for (int t = 0; t <= n_; ++t)
    for (int i = 0; i <= t; ++i) g[t] += c_[index(i, t - i)];
  return g;
}

BivariateTruncatedSeries BivariateTruncatedSeries::divide_by_difference() const {
  if (n_ < 1) throw Error(ErrorCode::InvalidArgument, "order too small to divide");
  // (z' - z) Q = F coefficientwise: p(i,j) = q(i,j-1) - q(i-1,j).
  BivariateTruncatedSeries q(n_ - 1);
  for (int t = 0; t <= n_ - 1; ++t) {
    for (int i = 0; i <= t; ++i) {
      const int j = t - i;
      GaussianRational v = coefficient(i, j + 1);
      if (i > 0) v += q.c_[q.index(i - 1, j + 1)];
      q.c_[q.index(i, j)] = std::move(v);
    }
  }
  // The pure-z coefficients are the ones the recurrence does not consume.
  if (!coefficient(0, 0).is_zero()) throw Error(ErrorCode::NotDivisible, "F(0,0) != 0");
  for (int t = 1; t <= n_; ++t) {
    if (!(coefficient(t, 0) + q.coefficient(t - 1, 0)).is_zero()) {
      throw Error(ErrorCode::NotDivisible,
                  "F does not vanish on the diagonal at degree " + std::to_string(t));
    }
  }
  return q;
}

Complex BivariateTruncatedSeries::evaluate(Complex z, Complex zp) const {
  Complex acc{};
  for (int t = 0; t <= n_; ++t) {
    for (int i = 0; i <= t; ++i) {
      const GaussianRational& a = c_[index(i, t - i)];
      if (a.is_zero()) continue;
      acc += a.to_complex() * std::pow(z, i) * std::pow(zp, t - i);
    }
  }
  return acc;
}

BivariateTruncatedSeries operator+(const BivariateTruncatedSeries& a,
                                   const BivariateTruncatedSeries& b) {
  require_same_order(a.n_, b.n_);
  BivariateTruncatedSeries r = a;
  for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] += b.c_[k];
  return r;
}

BivariateTruncatedSeries operator-(const BivariateTruncatedSeries& a,
                                   const BivariateTruncatedSeries& b) {
  require_same_order(a.n_, b.n_);
  BivariateTruncatedSeries r = a;
  for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] -= b.c_[k];
  return r;
}

BivariateTruncatedSeries operator*(const BivariateTruncatedSeries& a,
                                   const BivariateTruncatedSeries& b) {
  require_same_order(a.n_, b.n_);
  const int n = a.n_;
  BivariateTruncatedSeries r(n);
  for (int t1 = 0; t1 <= n; ++t1) {
    for (int i1 = 0; i1 <= t1; ++i1) {
      const GaussianRational& x = a.c_[a.index(i1, t1 - i1)];
      if (x.is_zero()) continue;
      for (int t2 = 0; t1 + t2 <= n; ++t2) {
        for (int i2 = 0; i2 <= t2; ++i2) {
          const GaussianRational& y = b.c_[b.index(i2, t2 - i2)];
          if (!y.is_zero()) r.c_[r.index(i1 + i2, t1 - i1 + t2 - i2)] += x * y;
        }
      }
    }
  }
  return r;
}

BivariateTruncatedSeries operator*(const GaussianRational& s, BivariateTruncatedSeries a) {
  for (auto& x : a.c_) x *= s;
  return a;
}

}  // namespace billiards
