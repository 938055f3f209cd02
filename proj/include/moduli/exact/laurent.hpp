#pragma once

#include <algorithm>
#include <initializer_list>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "moduli/errors.hpp"
#include "moduli/exact/rational.hpp"

namespace moduli::exact {

// Sparse univariate Laurent polynomial with rational coefficients. The tag
// names the variable and keeps e.g. polynomials in Q apart from polynomials
// in the curve parameter c at the type level.
template <class Tag>
class Laurent {
 public:
  using Term = std::pair<int, Rational>;

  Laurent() = default;
  Laurent(const Rational& constant) {  // NOLINT(google-explicit-constructor)
    if (!constant.is_zero()) terms_.emplace_back(0, constant);
  }
  Laurent(long constant) : Laurent(Rational(constant)) {}  // NOLINT(google-explicit-constructor)

  static Laurent monomial(const Rational& coeff, int exponent) {
    Laurent p;
    if (!coeff.is_zero()) p.terms_.emplace_back(exponent, coeff);
    return p;
  }
  static Laurent variable() { return monomial(Rational(1), 1); }

  static Laurent from_terms(std::vector<Term> terms) {
    std::map<int, Rational> acc;
    for (auto& [e, c] : terms) acc[e] += c;
    Laurent p;
    for (auto& [e, c] : acc)
      if (!c.is_zero()) p.terms_.emplace_back(e, c);
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  int lowest_exponent() const { require_nonzero(); return terms_.front().first; }
  int highest_exponent() const { require_nonzero(); return terms_.back().first; }

  Rational coefficient(int exponent) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                               [](const Term& t, int e) { return t.first < e; });
    return (it != terms_.end() && it->first == exponent) ? it->second : Rational(0);
  }

  // Inverse exists only for monomials.
  Laurent inverse() const {
    if (!is_monomial()) throw DomainError("inverse of non-monomial Laurent polynomial");
    return monomial(terms_[0].second.inverse(), -terms_[0].first);
  }

  Laurent pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    Laurent r(1), base = *this;
    while (k > 0) {
      if (k & 1) r *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return r;
  }

  Rational evaluate(const Rational& point) const {
    Rational acc;
    for (auto& [e, c] : terms_) acc += c * point.pow(e);
    return acc;
  }

  Laurent derivative() const {
    Laurent r;
    for (auto& [e, c] : terms_)
      if (e != 0) r.terms_.emplace_back(e - 1, c * Rational(e));
    return r;
  }

  Laurent& operator+=(const Laurent& o) { return *this = merge(*this, o, Rational(1)); }
  Laurent& operator-=(const Laurent& o) { return *this = merge(*this, o, Rational(-1)); }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
  Laurent& operator*=(const Rational& s) {
    if (s.is_zero()) { terms_.clear(); return *this; }
    for (auto& t : terms_) t.second *= s;
    return *this;
  }

  friend Laurent operator+(const Laurent& a, const Laurent& b) { return merge(a, b, Rational(1)); }
  friend Laurent operator-(const Laurent& a, const Laurent& b) { return merge(a, b, Rational(-1)); }
  Laurent operator-() const {
    Laurent r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.terms_.size() == 1 && b.terms_.size() == 1)
      return monomial(a.terms_[0].second * b.terms_[0].second, a.terms_[0].first + b.terms_[0].first);
    std::map<int, Rational> acc;
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) acc[ea + eb] += ca * cb;
    Laurent r;
    for (auto& [e, c] : acc)
      if (!c.is_zero()) r.terms_.emplace_back(e, c);
    return r;
  }
  friend Laurent operator*(Laurent a, const Rational& s) { return a *= s; }
  friend Laurent operator*(const Rational& s, Laurent a) { return a *= s; }

  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const Laurent& a, const Laurent& b) { return a.terms_ < b.terms_; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : terms_) {
      if (!first) os << (c.sign() < 0 ? " - " : " + ");
      else if (c.sign() < 0) os << "-";
      first = false;
      Rational a = c.sign() < 0 ? -c : c;
      if (e == 0) { os << a; continue; }
      if (!a.is_one()) os << a << "*";
      os << Tag::name;
      if (e != 1) os << "^" << e;
    }
    return os.str();
  }

 private:
  void require_nonzero() const {
    if (terms_.empty()) throw DomainError("exponent query on zero Laurent polynomial");
  }

  static Laurent merge(const Laurent& a, const Laurent& b, const Rational& sb) {
    Laurent r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
      if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
        r.terms_.push_back(*ia++);
      } else if (ia == a.terms_.end() || ib->first < ia->first) {
        r.terms_.emplace_back(ib->first, ib->second * sb);
        ++ib;
      } else {
        Rational c = ia->second + ib->second * sb;
        if (!c.is_zero()) r.terms_.emplace_back(ia->first, std::move(c));
        ++ia;
        ++ib;
      }
    }
    return r;
  }

  std::vector<Term> terms_;  // sorted by exponent, no zero coefficients
};

template <class Tag>
std::ostream& operator<<(std::ostream& os, const Laurent<Tag>& p) {
  return os << p.str();
}

struct ParamTag { static constexpr const char* name = "c"; };
struct QTag { static constexpr const char* name = "Q"; };

// Element of Q[c, 1/c]; c is the spectral-curve parameter with c^2 = -Q/2.
using Param = Laurent<ParamTag>;
// Element of Q[Q, 1/Q].
using QPoly = Laurent<QTag>;

// Rewrites p = even(Q) + c * odd(Q) using c^2 = -Q/2.
struct ParamNormalForm {
  QPoly even;
  QPoly odd;
};
ParamNormalForm normal_form(const Param& p);

// Inverse of normal_form for a pure polynomial in Q (c-even element).
Param param_from_q(const QPoly& q);

}  // namespace moduli::exact
