#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "moduli/errors.hpp"
#include "moduli/exact/rational.hpp"
#include "moduli/exact/ring.hpp"

namespace moduli::exact {

// Power series a_0 + a_1 v + ... + a_{order-1} v^{order-1} + O(v^order).
// The order is always explicit; binary operations truncate to the smaller
// of the operand orders.
template <class R>
class TruncSeries {
 public:
  TruncSeries(std::string variable, int order)
      : variable_(std::move(variable)), coeffs_(static_cast<std::size_t>(checked(order)), R(0)) {}
  TruncSeries(std::string variable, std::vector<R> coeffs)
      : variable_(std::move(variable)), coeffs_(std::move(coeffs)) {}

  static TruncSeries constant(std::string variable, const R& value, int order) {
    TruncSeries s(std::move(variable), order);
    if (order > 0) s.coeffs_[0] = value;
    return s;
  }
  // The series v itself.
  static TruncSeries identity(std::string variable, int order) {
    TruncSeries s(std::move(variable), order);
    if (order > 1) s.coeffs_[1] = R(1);
    return s;
  }

  const std::string& variable() const { return variable_; }
  int order() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<R>& coefficients() const { return coeffs_; }
  const R& operator[](int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
  R& operator[](int i) { return coeffs_.at(static_cast<std::size_t>(i)); }

  TruncSeries truncated(int order) const {
    TruncSeries r(variable_, std::min(order, this->order()));
    for (int i = 0; i < r.order(); ++i) r.coeffs_[i] = coeffs_[i];
    return r;
  }

  TruncSeries& operator+=(const TruncSeries& o) {
    shrink_to(o.order());
    for (int i = 0; i < order(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  TruncSeries& operator-=(const TruncSeries& o) {
    shrink_to(o.order());
    for (int i = 0; i < order(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  TruncSeries& operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(TruncSeries a, const Rational& s) { return a *= s; }
  TruncSeries operator-() const { return *this * Rational(-1); }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    int n = std::min(a.order(), b.order());
    TruncSeries r(a.variable_, n);
    for (int i = 0; i < n; ++i) {
      if (ring::is_zero(a.coeffs_[i])) continue;
      for (int j = 0; i + j < n; ++j) {
        if (ring::is_zero(b.coeffs_[j])) continue;
        r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return r;
  }
  TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.coeffs_ == b.coeffs_;
  }

  TruncSeries derivative() const {
    TruncSeries r(variable_, std::max(order() - 1, 0));
    for (int i = 1; i < order(); ++i) r.coeffs_[i - 1] = coeffs_[i] * Rational(i);
    return r;
  }
  // Antiderivative with zero constant term.
  TruncSeries integral() const {
    TruncSeries r(variable_, order() + 1);
    for (int i = 0; i < order(); ++i) r.coeffs_[i + 1] = coeffs_[i] * Rational(1, i + 1);
    return r;
  }

  // Multiplicative inverse; the constant term must be a unit.
  TruncSeries inverse() const {
    if (order() == 0) return *this;
    if (ring::is_zero(coeffs_[0])) throw DomainError("series inverse: zero constant term");
    R inv0 = ring::unit_inverse(coeffs_[0]);
    TruncSeries r(variable_, order());
    r.coeffs_[0] = inv0;
    for (int n = 1; n < order(); ++n) {
      R acc(0);
      for (int k = 1; k <= n; ++k)
        if (!ring::is_zero(coeffs_[k])) acc += coeffs_[k] * r.coeffs_[n - k];
      r.coeffs_[n] = -(acc * inv0);
    }
    return r;
  }

  // exp(s) for s with zero constant term.
  TruncSeries exp() const {
    if (order() > 0 && !ring::is_zero(coeffs_[0]))
      throw DomainError("series exp: constant term must vanish");
    // r' = s' r
    TruncSeries r(variable_, order());
    if (order() == 0) return r;
    r.coeffs_[0] = R(1);
    for (int n = 1; n < order(); ++n) {
      R acc(0);
      for (int k = 1; k <= n; ++k)
        if (!ring::is_zero(coeffs_[k])) acc += coeffs_[k] * r.coeffs_[n - k] * Rational(k);
      r.coeffs_[n] = acc * Rational(1, n);
    }
    return r;
  }

  // log(s) for s with constant term exactly 1.
  TruncSeries log() const {
    if (order() == 0) return *this;
    if (!(coeffs_[0] == R(1))) throw DomainError("series log: constant term must be 1");
    // (log s)' = s'/s
    TruncSeries d = derivative() * truncated(order() - 1).inverse();
    TruncSeries r = d.integral();
    return r.truncated(order());
  }

  // this(inner(u)); inner must have zero constant term.
  TruncSeries compose(const TruncSeries& inner) const {
    if (inner.order() > 0 && !ring::is_zero(inner.coeffs_[0]))
      throw DomainError("series compose: inner series must have zero constant term");
    int n = std::min(order(), inner.order());
    TruncSeries result(inner.variable_, n);
    TruncSeries power = constant(inner.variable_, R(1), n);
    TruncSeries in = inner.truncated(n);
    for (int k = 0; k < n; ++k) {
      if (!ring::is_zero(coeffs_[k]))
        for (int i = 0; i < n; ++i) result.coeffs_[i] += coeffs_[k] * power.coeffs_[i];
      power = power * in;
    }
    return result;
  }

  // Compositional inverse: returns r with this(r(u)) = u + O(u^order).
  TruncSeries reversion(std::string new_variable) const {
    if (order() < 2) throw DomainError("series reversion: order must be at least 2");
    if (!ring::is_zero(coeffs_[0])) throw DomainError("series reversion: constant term must vanish");
    if (ring::is_zero(coeffs_[1])) throw DomainError("series reversion: linear term not invertible");
    R inv1 = ring::unit_inverse(coeffs_[1]);
    TruncSeries u = identity(new_variable, order());
    TruncSeries self(new_variable, coeffs_);
    TruncSeries r = u;
    for (auto& c : r.coeffs_) c = c * inv1;
    // Each Newton-free correction step fixes one further coefficient.
    for (int step = 2; step < order(); ++step) {
      TruncSeries err = self.compose(r) - u;
      for (int i = 0; i < order(); ++i) r.coeffs_[i] -= err.coeffs_[i] * inv1;
    }
    return r;
  }

 private:
  static int checked(int order) {
    if (order < 0) throw DomainError("series order must be non-negative");
    return order;
  }
  void shrink_to(int order) {
    if (order < this->order()) coeffs_.resize(static_cast<std::size_t>(order), R(0));
  }

  std::string variable_;
  std::vector<R> coeffs_;
};

// Laurent series sum_{i >= valuation} a_i t^i known modulo t^precision.
template <class R>
class LocalSeries {
 public:
  LocalSeries() = default;
  // The zero series known to absolute precision `precision`.
  static LocalSeries zero(int precision) {
    LocalSeries s;
    s.val_ = precision;
    s.prec_ = precision;
    return s;
  }
  static LocalSeries from_coefficients(int valuation, std::vector<R> coeffs) {
    LocalSeries s;
    s.val_ = valuation;
    s.prec_ = valuation + static_cast<int>(coeffs.size());
    s.coeffs_ = std::move(coeffs);
    s.normalize();
    return s;
  }
  static LocalSeries monomial(const R& c, int exponent, int precision) {
    if (precision <= exponent || ring::is_zero(c)) return zero(precision);
    std::vector<R> v(static_cast<std::size_t>(precision - exponent), R(0));
    v[0] = c;
    return from_coefficients(exponent, std::move(v));
  }

  int valuation() const { return val_; }
  int precision() const { return prec_; }
  bool is_zero() const { return coeffs_.empty(); }

  R coefficient(int exponent) const {
    if (exponent >= prec_) throw InternalError("local series: coefficient beyond precision");
    if (exponent < val_) return R(0);
    return coeffs_[static_cast<std::size_t>(exponent - val_)];
  }

  LocalSeries& operator+=(const LocalSeries& o) { return *this = add(*this, o, Rational(1)); }
  LocalSeries& operator-=(const LocalSeries& o) { return *this = add(*this, o, Rational(-1)); }
  friend LocalSeries operator+(const LocalSeries& a, const LocalSeries& b) { return add(a, b, Rational(1)); }
  friend LocalSeries operator-(const LocalSeries& a, const LocalSeries& b) { return add(a, b, Rational(-1)); }
  LocalSeries operator*(const R& s) const {
    LocalSeries r = *this;
    for (auto& c : r.coeffs_) c = c * s;
    r.normalize();
    return r;
  }

  friend LocalSeries operator*(const LocalSeries& a, const LocalSeries& b) {
    if (a.is_zero() || b.is_zero()) {
      int v = a.val_ + b.val_;
      int p = std::min(a.val_ + b.prec_, b.val_ + a.prec_);
      return zero(std::max(v, p));
    }
    int val = a.val_ + b.val_;
    int prec = std::min(a.val_ + b.prec_, b.val_ + a.prec_);
    std::vector<R> out(static_cast<std::size_t>(std::max(prec - val, 0)), R(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (ring::is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size() && i + j < out.size(); ++j) {
        if (ring::is_zero(b.coeffs_[j])) continue;
        out[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return from_coefficients(val, std::move(out));
  }

  // Inverse; relative precision is preserved.
  LocalSeries inverse() const {
    if (is_zero()) throw DomainError("local series inverse: series is zero to known precision");
    TruncSeries<R> unit("t", coeffs_);
    TruncSeries<R> inv = unit.inverse();
    return from_coefficients(-val_, inv.coefficients());
  }

  LocalSeries pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    LocalSeries r = monomial(R(1), 0, prec_ - val_);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  // Term-wise antiderivative with zero constant; the t^{-1} coefficient must vanish.
  LocalSeries integral() const {
    std::vector<R> out;
    out.reserve(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      int e = val_ + static_cast<int>(i);
      if (e == -1) {
        if (!ring::is_zero(coeffs_[i])) throw DomainError("local series integral: nonzero residue");
        out.push_back(R(0));
        continue;
      }
      out.push_back(coeffs_[i] * Rational(1, e + 1));
    }
    LocalSeries r = from_coefficients(val_ + 1, std::move(out));
    r.prec_ = prec_ + 1;
    return r;
  }

  LocalSeries with_precision(int precision) const {
    if (precision > prec_) throw InternalError("local series: cannot raise precision");
    LocalSeries r = *this;
    r.prec_ = precision;
    if (precision <= val_) {
      r.coeffs_.clear();
      r.val_ = precision;
    } else {
      r.coeffs_.resize(static_cast<std::size_t>(precision - val_));
    }
    return r;
  }

 private:
  static LocalSeries add(const LocalSeries& a, const LocalSeries& b, const Rational& sb) {
    int prec = std::min(a.prec_, b.prec_);
    int val = std::min(a.val_, b.val_);
    if (val >= prec) return zero(prec);
    std::vector<R> out(static_cast<std::size_t>(prec - val), R(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      int e = a.val_ + static_cast<int>(i);
      if (e >= prec) break;
      out[static_cast<std::size_t>(e - val)] += a.coeffs_[i];
    }
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
      int e = b.val_ + static_cast<int>(i);
      if (e >= prec) break;
      out[static_cast<std::size_t>(e - val)] += b.coeffs_[i] * sb;
    }
    return from_coefficients(val, std::move(out));
  }

  void normalize() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && ring::is_zero(coeffs_[lead])) ++lead;
    if (lead == coeffs_.size()) {
      coeffs_.clear();
      val_ = prec_;
      return;
    }
    if (lead > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
      val_ += static_cast<int>(lead);
    }
  }

  int val_ = 0;
  int prec_ = 0;
  std::vector<R> coeffs_;
};

// Coefficients s_1..s_N of exp(-sum s_i t^i) = sum (-1)^i i! t^i.
std::vector<Rational> log_of_factorial_series(int n);

}  // namespace moduli::exact
