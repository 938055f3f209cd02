#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "moduli/errors.hpp"
#include "moduli/exact/laurent.hpp"
#include "moduli/exact/rational.hpp"

namespace moduli::exact {

// Sparse bivariate Laurent polynomial. Keys are (exponent of first variable,
// exponent of second variable); zero coefficients are never stored.
template <class Tag>
class Laurent2 {
 public:
  using Key = std::pair<int, int>;

  Laurent2() = default;
  Laurent2(const Rational& constant) { add(0, 0, constant); }  // NOLINT(google-explicit-constructor)
  Laurent2(long constant) : Laurent2(Rational(constant)) {}     // NOLINT(google-explicit-constructor)

  static Laurent2 monomial(const Rational& c, int e1, int e2) {
    Laurent2 r;
    r.add(e1, e2, c);
    return r;
  }

  void add(int e1, int e2, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(Key{e1, e2}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(int e1, int e2) const {
    auto it = terms_.find({e1, e2});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  std::optional<int> lowest_first() const {
    if (terms_.empty()) return std::nullopt;
    int m = terms_.begin()->first.first;
    for (auto& [k, c] : terms_) m = std::min(m, k.first);
    return m;
  }
  std::optional<int> lowest_second() const {
    if (terms_.empty()) return std::nullopt;
    int m = terms_.begin()->first.second;
    for (auto& [k, c] : terms_) m = std::min(m, k.second);
    return m;
  }
  // Total degree if homogeneous; nullopt for zero or inhomogeneous input.
  std::optional<int> homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    int d = terms_.begin()->first.first + terms_.begin()->first.second;
    for (auto& [k, c] : terms_)
      if (k.first + k.second != d) return std::nullopt;
    return d;
  }

  // Partial derivative in the second variable.
  Laurent2 derivative_second() const {
    Laurent2 r;
    for (auto& [k, c] : terms_)
      if (k.second != 0) r.add(k.first, k.second - 1, c * Rational(k.second));
    return r;
  }

  Laurent2 shifted(int d1, int d2) const {
    Laurent2 r;
    for (auto& [k, c] : terms_) r.terms_.emplace(Key{k.first + d1, k.second + d2}, c);
    return r;
  }

  Laurent2& operator+=(const Laurent2& o) {
    for (auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
  }
  Laurent2& operator-=(const Laurent2& o) {
    for (auto& [k, c] : o.terms_) add(k.first, k.second, -c);
    return *this;
  }
  Laurent2& operator*=(const Rational& s) {
    if (s.is_zero()) { terms_.clear(); return *this; }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  friend Laurent2 operator+(Laurent2 a, const Laurent2& b) { return a += b; }
  friend Laurent2 operator-(Laurent2 a, const Laurent2& b) { return a -= b; }
  friend Laurent2 operator*(Laurent2 a, const Rational& s) { return a *= s; }
  friend Laurent2 operator*(const Rational& s, Laurent2 a) { return a *= s; }
  Laurent2 operator-() const { return *this * Rational(-1); }
  friend Laurent2 operator*(const Laurent2& a, const Laurent2& b) {
    Laurent2 r;
    for (auto& [ka, ca] : a.terms_)
      for (auto& [kb, cb] : b.terms_) r.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
  }
  Laurent2& operator*=(const Laurent2& o) { return *this = *this * o; }

  Laurent2 pow(int k) const {
    if (k < 0) throw DomainError("negative power of bivariate Laurent polynomial");
    Laurent2 r(1);
    for (int i = 0; i < k; ++i) r *= *this;
    return r;
  }

  friend bool operator==(const Laurent2& a, const Laurent2& b) { return a.terms_ == b.terms_; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : terms_) {
      if (!first) os << (c.sign() < 0 ? " - " : " + ");
      else if (c.sign() < 0) os << "-";
      first = false;
      Rational a = c.sign() < 0 ? -c : c;
      bool plain = k.first == 0 && k.second == 0;
      if (plain || !a.is_one()) os << a;
      if (k.first != 0) {
        os << (!plain && !a.is_one() ? "*" : "") << Tag::first;
        if (k.first != 1) os << "^" << k.first;
      }
      if (k.second != 0) {
        os << ((k.first != 0 || !a.is_one()) ? "*" : "") << Tag::second;
        if (k.second != 1) os << "^" << k.second;
      }
    }
    return os.str();
  }

 private:
  std::map<Key, Rational> terms_;
};

template <class Tag>
std::ostream& operator<<(std::ostream& os, const Laurent2<Tag>& p) {
  return os << p.str();
}

struct TSTag {
  static constexpr const char* first = "T";
  static constexpr const char* second = "S";
};
struct TQTag {
  static constexpr const char* first = "T";
  static constexpr const char* second = "Q";
};

// Laurent polynomial in T and S = T - Q.
using LaurentTS = Laurent2<TSTag>;
// Laurent polynomial in T and Q; also used for Q-series truncated at an
// explicit order with Laurent-in-T coefficients.
using LaurentTQ = Laurent2<TQTag>;

// Expands S^j = (T - Q)^j as a power series in Q; keeps Q-exponents < order.
LaurentTQ to_q_series(const LaurentTS& f, int order);
// Exact rewrite of a polynomial in Q (non-negative Q exponents) in T and S.
LaurentTS to_ts(const LaurentTQ& f);
// Restriction T = 0; requires no negative powers of T. Returns a Laurent
// polynomial in S, reported as a QPoly after S = -Q.
QPoly restrict_t_zero(const LaurentTS& f);
QPoly restrict_t_zero(const LaurentTQ& f);
// Restriction S = T (i.e. Q = 0).
LaurentTS restrict_s_equals_t(const LaurentTS& f);

}  // namespace moduli::exact
