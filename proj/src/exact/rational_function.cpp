#include "moduli/exact/rational_function.hpp"

#include <algorithm>
#include <sstream>

#include "moduli/errors.hpp"
#include "moduli/exact/series.hpp"

namespace moduli::exact {

ZPoly::ZPoly(Param constant) : coeffs_{std::move(constant)} { trim(); }
ZPoly::ZPoly(std::vector<Param> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

ZPoly ZPoly::z() { return ZPoly(std::vector<Param>{Param(0), Param(1)}); }

ZPoly ZPoly::linear_power(const Rational& a, int m) {
  ZPoly lin(std::vector<Param>{Param(-a), Param(1)});
  ZPoly r(Param(1));
  for (int i = 0; i < m; ++i) r = r * lin;
  return r;
}

Param ZPoly::coefficient(int i) const {
  return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[i] : Param();
}

void ZPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

ZPoly ZPoly::shifted(const Rational& a) const {
  std::vector<Param> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    // z^i = sum_j C(i, j) a^{i-j} t^j
    for (std::size_t j = 0; j <= i; ++j)
      out[j] += coeffs_[i] * (Rational::binomial(static_cast<int>(i), static_cast<int>(j)) *
                              a.pow(static_cast<int>(i - j)));
  }
  return ZPoly(std::move(out));
}

ZPoly ZPoly::derivative() const {
  std::vector<Param> out;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out.push_back(coeffs_[i] * Rational(static_cast<long>(i)));
  return ZPoly(std::move(out));
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
  std::vector<Param> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
  return ZPoly(std::move(out));
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) {
  std::vector<Param> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] -= b.coeffs_[i];
  return ZPoly(std::move(out));
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Param> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return ZPoly(std::move(out));
}

std::string ZPoly::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << coeffs_[i].str() << ")";
    if (i > 0) os << "*z^" << i;
  }
  return os.str();
}

namespace {

// Gcd of all rational coefficients appearing in p, as a positive rational.
Rational rational_content(const ZPoly& p) {
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& c : p.coefficients())
    for (const auto& [e, r] : c.terms()) {
      mpz_class n = abs(r.numerator());
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
      mpz_class d = r.denominator();
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    }
  if (num_gcd == 0) return Rational(1);
  return Rational(mpq_class(num_gcd, den_lcm));
}

ZPoly scaled(const ZPoly& p, const Rational& s) {
  std::vector<Param> out = p.coefficients();
  for (auto& c : out) c *= s;
  return ZPoly(std::move(out));
}

}  // namespace

RationalFunction::RationalFunction(ZPoly num, ZPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  Rational content = rational_content(den_);
  const Param& lead = den_.coefficients().back();
  if (lead.terms().back().second.sign() < 0) content = -content;
  num_ = scaled(num_, content.inverse());
  den_ = scaled(den_, content.inverse());
}

RationalFunction::RationalFunction(Param constant) : RationalFunction(ZPoly(std::move(constant)), ZPoly(Param(1))) {}

RationalFunction RationalFunction::derivative() const {
  return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}
RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
}
RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}
bool operator==(const RationalFunction& a, const RationalFunction& b) {
  return a.num_ * b.den_ == b.num_ * a.den_;
}

Param formal_residue(const RationalFunction& f, const Rational& pole) {
  ZPoly num = f.numerator().shifted(pole);
  ZPoly den = f.denominator().shifted(pole);
  int v = 0;
  while (den.coefficient(v).is_zero()) ++v;
  if (v == 0) return Param();
  // den = t^v u(t); residue = [t^{v-1}] num(t) / u(t)
  int len = v;
  std::vector<Param> u(len), n(len);
  for (int i = 0; i < len; ++i) {
    u[i] = den.coefficient(v + i);
    n[i] = num.coefficient(i);
  }
  TruncSeries<Param> us("t", u), ns("t", n);
  TruncSeries<Param> q = ns * us.inverse();
  return q[len - 1];
}

LaurentTS formal_integrate_Q(const LaurentTS& f) {
  // dQ = -dS; F(T, S) = -(G(T, S) - G(T, T)) with G the S-antiderivative.
  LaurentTS out;
  for (const auto& [key, c] : f.terms()) {
    auto [i, j] = key;
    if (j == -1) throw DomainError("log term");
    Rational w = c * Rational(1, j + 1);
    out.add(i, j + 1, -w);
    out.add(i + j + 1, 0, w);
  }
  return out;
}

}  // namespace moduli::exact
