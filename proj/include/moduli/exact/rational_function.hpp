#pragma once

#include <string>
#include <vector>

#include "moduli/exact/laurent.hpp"
#include "moduli/exact/laurent2.hpp"
#include "moduli/exact/rational.hpp"

namespace moduli::exact {

// Dense polynomial in the curve coordinate z with coefficients in Q[c, 1/c].
class ZPoly {
 public:
  ZPoly() = default;
  ZPoly(Param constant);  // NOLINT(google-explicit-constructor)
  explicit ZPoly(std::vector<Param> coeffs);
  static ZPoly z();
  // (z - a)^m
  static ZPoly linear_power(const Rational& a, int m);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Param>& coefficients() const { return coeffs_; }
  Param coefficient(int i) const;

  // p(a + t) as a dense polynomial in t.
  ZPoly shifted(const Rational& a) const;
  ZPoly derivative() const;

  friend ZPoly operator+(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator-(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
  friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.coeffs_ == b.coeffs_; }
  std::string str() const;

 private:
  void trim();
  std::vector<Param> coeffs_;
};

// num/den with den != 0. Rational content is moved into the numerator so the
// denominator is primitive with positive leading rational coefficient.
class RationalFunction {
 public:
  RationalFunction(ZPoly num, ZPoly den);
  RationalFunction(Param constant);  // NOLINT(google-explicit-constructor)

  const ZPoly& numerator() const { return num_; }
  const ZPoly& denominator() const { return den_; }

  RationalFunction derivative() const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  // Cross-multiplied equality.
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);

 private:
  ZPoly num_, den_;
};

// Coefficient of (z - pole)^{-1} in the Laurent expansion of f at a rational
// point. The leading coefficient of the denominator at the pole must be a unit
// of Q[c, 1/c] (a monomial); this covers all poles the curves produce.
Param formal_residue(const RationalFunction& f, const Rational& pole);

// Antiderivative in Q = T - S of a Laurent polynomial in (T, S), normalized to
// vanish at Q = 0. A 1/S = 1/(T - Q) component would integrate to a
// logarithm and raises DomainError("log term").
LaurentTS formal_integrate_Q(const LaurentTS& f);

}  // namespace moduli::exact
