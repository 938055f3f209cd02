#include "moduli/exact/rational.hpp"

#include <ostream>

#include "moduli/errors.hpp"

namespace moduli::exact {

Rational::Rational(long num, long den) : value_(num, den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto valid_int = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw DomainError("malformed rational '" + s + "'");
    if (s[0] == '+') s.erase(0, 1);
    return Rational(mpz_class(s));
  }
  std::string num = s.substr(0, slash);
  std::string den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw DomainError("malformed rational '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class d(den);
  if (d == 0) throw DomainError("rational with zero denominator '" + s + "'");
  return Rational(mpq_class(mpz_class(num), d));
}

Rational Rational::factorial(int n) {
  if (n < 0) throw DomainError("factorial of negative integer");
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(r);
}

Rational Rational::double_factorial_odd(int k) {
  if (k < 0) throw DomainError("double factorial (2k-1)!! needs k >= 0");
  mpz_class r = 1;
  for (int i = 1; i <= 2 * k - 1; i += 2) r *= i;
  return Rational(r);
}

Rational Rational::binomial(int n, int k) {
  if (k < 0) return Rational(0);
  // generalized binomial for negative n: C(n,k) = n(n-1)...(n-k+1)/k!
  mpq_class r = 1;
  for (int i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return Rational(r);
}

Rational Rational::pow(int exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(mpq_class(num, den));
}

Rational Rational::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  return Rational(mpq_class(value_.get_den(), value_.get_num()));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  value_ /= o.value_;
  return *this;
}

std::string Rational::pq() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::size_t Rational::hash() const {
  std::size_t h1 = mpz_get_ui(value_.get_num_mpz_t()) * 1000003u + mpz_size(value_.get_num_mpz_t());
  std::size_t h2 = mpz_get_ui(value_.get_den_mpz_t());
  return h1 ^ (h2 * 0x9e3779b97f4a7c15ULL) ^ static_cast<std::size_t>(sign() + 1);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace moduli::exact
