#include "billiards/algebra/rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "billiards/error.hpp"

namespace billiards {

RationalPolynomial::RationalPolynomial(std::vector<Rational> ascending) : c_(std::move(ascending)) {
  normalize();
}

RationalPolynomial::RationalPolynomial(std::initializer_list<long long> ascending) {
  for (long long v : ascending) c_.emplace_back(v);
  normalize();
}

RationalPolynomial RationalPolynomial::linear_root(const Rational& a) {
  return RationalPolynomial(std::vector<Rational>{-a, Rational(1)});
}

void RationalPolynomial::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational RationalPolynomial::coefficient(int k) const {
  if (k < 0 || k > degree()) return 0;
  return c_[static_cast<std::size_t>(k)];
}

const Rational& RationalPolynomial::leading() const {
  if (c_.empty()) throw Error(ErrorCode::DegeneratePolynomial, "zero polynomial has no leading term");
  return c_.back();
}

Rational RationalPolynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RationalPolynomial RationalPolynomial::derivative() const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long long>(k));
  return RationalPolynomial(std::move(d));
}

RationalPolynomial RationalPolynomial::monic() const {
  if (c_.empty()) return *this;
  std::vector<Rational> m = c_;
  const Rational lead = c_.back();
  for (Rational& x : m) x /= lead;
  return RationalPolynomial(std::move(m));
}

ComplexPolynomial RationalPolynomial::to_complex() const {
  std::vector<Complex> z;
  z.reserve(c_.size());
  for (const Rational& x : c_) z.emplace_back(to_double(x), 0.0);
  return ComplexPolynomial(std::move(z));
}

std::string RationalPolynomial::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& a = c_[static_cast<std::size_t>(k)];
    if (a == 0) continue;
    const bool neg = a < 0;
    const Rational mag = neg ? Rational(-a) : a;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1;
    if (!unit || k == 0) os << to_string(mag);
    if (k > 0) {
      if (!unit) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return RationalPolynomial(std::move(c));
}

RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return RationalPolynomial(std::move(c));
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return RationalPolynomial(std::move(c));
}

PolyDivision divide(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  std::vector<Rational> r = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {RationalPolynomial(), a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  const Rational& lead = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    const Rational f = r[static_cast<std::size_t>(k)] / lead;
    q[static_cast<std::size_t>(k - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b.coefficient(j);
  }
  return {RationalPolynomial(std::move(q)), RationalPolynomial(std::move(r))};
}

RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b) {
  while (!b.is_zero()) {
    RationalPolynomial r = divide(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

RationalPolynomial squarefree_part(const RationalPolynomial& p) {
  if (p.degree() <= 0) return p.monic();
  return divide(p, gcd(p, p.derivative())).quotient.monic();
}

RationalMatrix::RationalMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n * n), Rational(0)) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative matrix dimension");
}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : RationalMatrix(static_cast<int>(rows.size())) {
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n_) throw Error(ErrorCode::InvalidArgument, "matrix not square");
    int j = 0;
    for (long long v : row) (*this)(i, j++) = v;
    ++i;
  }
}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_columns(const std::vector<std::vector<long long>>& cols) {
  const int n = static_cast<int>(cols.size());
  RationalMatrix m(n);
  for (int j = 0; j < n; ++j) {
    if (static_cast<int>(cols[static_cast<std::size_t>(j)].size()) != n)
      throw Error(ErrorCode::InvalidArgument, "matrix not square");
    for (int i = 0; i < n; ++i) m(i, j) = cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  }
  return m;
}

Rational RationalMatrix::trace() const {
  Rational t = 0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

Rational RationalMatrix::determinant() const {
  if (n_ == 0) return 1;
  // Clear denominators row by row so Bareiss runs over the integers.
  std::vector<BigInt> a(a_.size());
  Rational scale = 1;
  for (int i = 0; i < n_; ++i) {
    BigInt l = 1;
    for (int j = 0; j < n_; ++j) l = boost::multiprecision::lcm(l, denominator((*this)(i, j)));
    scale *= l;
    for (int j = 0; j < n_; ++j) {
      const Rational v = (*this)(i, j) * l;
      a[static_cast<std::size_t>(i * n_ + j)] = numerator(v);
    }
  }
  auto at = [&](int i, int j) -> BigInt& { return a[static_cast<std::size_t>(i * n_ + j)]; };
  int sign = 1;
  BigInt prev = 1;
  for (int k = 0; k < n_ - 1; ++k) {
    if (at(k, k) == 0) {
      int p = k + 1;
      while (p < n_ && at(p, k) == 0) ++p;
      if (p == n_) return 0;
      for (int j = 0; j < n_; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n_; ++i) {
      for (int j = k + 1; j < n_; ++j) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return Rational(at(n_ - 1, n_ - 1) * sign) / scale;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != n_) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  std::vector<Rational> y(static_cast<std::size_t>(n_), Rational(0));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) y[static_cast<std::size_t>(i)] += (*this)(i, j) * x[static_cast<std::size_t>(j)];
  return y;
}

std::string RationalMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < n_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < n_; ++j) os << (j ? ", " : "") << to_string((*this)(i, j));
    os << "]";
  }
  os << "]";
  return os.str();
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.n_ != b.n_) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  RationalMatrix c(a.n_);
  for (int i = 0; i < a.n_; ++i)
    for (int k = 0; k < a.n_; ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < a.n_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.n_ != b.n_) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  RationalMatrix c = a;
  for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] += b.a_[k];
  return c;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.n_ != b.n_) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  RationalMatrix c = a;
  for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] -= b.a_[k];
  return c;
}

RationalMatrix operator*(const Rational& s, RationalMatrix m) {
  for (Rational& x : m.a_) x *= s;
  return m;
}

namespace {

// Descending coefficients of det(xI - A) for the trailing principal block A[k.., k..].
std::vector<Rational> berkowitz(const RationalMatrix& m, int k) {
  const int n = m.size();
  const int size = n - k;
  if (size == 0) return {Rational(1)};
  const std::vector<Rational> inner = berkowitz(m, k + 1);

  // Toeplitz column: 1, -a, -R C, -R A C, ..., -R A^{size-2} C.
  std::vector<Rational> col(static_cast<std::size_t>(size + 1), Rational(0));
  col[0] = 1;
  col[1] = -m(k, k);
  std::vector<Rational> v(static_cast<std::size_t>(size - 1));
  for (int i = 0; i < size - 1; ++i) v[static_cast<std::size_t>(i)] = m(k + 1 + i, k);
  for (int p = 2; p <= size; ++p) {
    Rational rc = 0;
    for (int i = 0; i < size - 1; ++i) rc += m(k, k + 1 + i) * v[static_cast<std::size_t>(i)];
    col[static_cast<std::size_t>(p)] = -rc;
    if (p == size) break;
    std::vector<Rational> w(static_cast<std::size_t>(size - 1), Rational(0));
    for (int i = 0; i < size - 1; ++i)
      for (int j = 0; j < size - 1; ++j)
        w[static_cast<std::size_t>(i)] += m(k + 1 + i, k + 1 + j) * v[static_cast<std::size_t>(j)];
    v = std::move(w);
  }

  std::vector<Rational> out(static_cast<std::size_t>(size + 1), Rational(0));
  for (int i = 0; i <= size; ++i)
    for (int j = 0; j < size && j <= i; ++j)
      out[static_cast<std::size_t>(i)] += col[static_cast<std::size_t>(i - j)] * inner[static_cast<std::size_t>(j)];
  return out;
}

}  // namespace

RationalPolynomial char_poly(const RationalMatrix& m) {
  std::vector<Rational> desc = berkowitz(m, 0);
  std::reverse(desc.begin(), desc.end());
  return RationalPolynomial(std::move(desc));
}

RationalMatrix evaluate(const RationalPolynomial& p, const RationalMatrix& m) {
  RationalMatrix acc(m.size());
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * m + (*it) * RationalMatrix::identity(m.size());
  return acc;
}

double spectral_radius(const RationalPolynomial& p, double tol) {
  if (p.is_zero()) throw Error(ErrorCode::DegeneratePolynomial, "zero polynomial");
  const RationalPolynomial sf = squarefree_part(p);
  if (sf.degree() <= 0) return 0.0;

  using LComplex = std::complex<long double>;
  std::vector<long double> lc;
  for (const Rational& x : sf.coefficients()) lc.push_back(x.convert_to<long double>());

  double radius = 0.0;
  for (const Root& r : find_roots(sf.to_complex())) {
    LComplex z(r.value.real(), r.value.imag());
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
      LComplex f = 0, df = 0;
      for (auto c = lc.rbegin(); c != lc.rend(); ++c) {
        df = df * z + f;
        f = f * z + *c;
      }
      if (f == LComplex(0)) {
        converged = true;
        break;
      }
      if (df == LComplex(0)) break;
      const LComplex step = f / df;
      z -= step;
      if (std::abs(step) <= 1e-17L * std::max<long double>(1.0L, std::abs(z))) {
        converged = true;
        break;
      }
    }
    const double drift = static_cast<double>(std::abs(z - LComplex(r.value.real(), r.value.imag())));
    if (!converged && drift > tol * std::max(1.0, std::abs(r.value))) {
      throw Error(ErrorCode::NonConvergence, "spectral radius refinement failed");
    }
    radius = std::max(radius, static_cast<double>(std::abs(z)));
  }
  return radius;
}

}  // namespace billiards
