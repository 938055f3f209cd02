#pragma once

#include <map>
#include <string>
#include <vector>

#include "moduli/exact/rational.hpp"

namespace moduli::kappa {

using exact::Rational;

// kappa_{b_1} ... kappa_{b_m} psi_1^{k_1} ... psi_n^{k_n}. Kappa subscripts are
// kept sorted; psi exponents are positional.
struct KappaMonomial {
  std::vector<int> kappa;
  std::vector<int> psi;

  KappaMonomial() = default;
  KappaMonomial(std::vector<int> kappa_subscripts, std::vector<int> psi_exponents = {});

  int degree() const;
  std::string str() const;

  friend bool operator==(const KappaMonomial&, const KappaMonomial&) = default;
  friend auto operator<=>(const KappaMonomial&, const KappaMonomial&) = default;
};

KappaMonomial operator*(const KappaMonomial& a, const KappaMonomial& b);

class KappaPolynomial {
 public:
  KappaPolynomial() = default;
  KappaPolynomial(const Rational& scalar);  // NOLINT(google-explicit-constructor)
  static KappaPolynomial term(const KappaMonomial& m, const Rational& c = Rational(1));

  void add(const KappaMonomial& m, const Rational& c);
  const std::map<KappaMonomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const KappaMonomial& m) const;
  KappaPolynomial graded_part(int degree) const;

  KappaPolynomial& operator+=(const KappaPolynomial& o);
  friend KappaPolynomial operator+(KappaPolynomial a, const KappaPolynomial& b) { return a += b; }
  friend KappaPolynomial operator-(KappaPolynomial a, const KappaPolynomial& b);
  friend KappaPolynomial operator*(const KappaPolynomial& a, const KappaPolynomial& b);
  friend KappaPolynomial operator*(KappaPolynomial a, const Rational& s);
  friend bool operator==(const KappaPolynomial&, const KappaPolynomial&) = default;

  std::string str() const;

 private:
  std::map<KappaMonomial, Rational> terms_;
};

// s_1..s_N with exp(-sum s_i t^i) = sum (-1)^i i! t^i.
std::vector<Rational> s_constants(int n);

// Degree-p part of exp(sum s_i kappa_i); p = 0 gives 1.
KappaPolynomial j_class(int p);

// Degree-p part of 1 + sum_m 1/m! sum kappa_{a_1..a_m} prod (-1)^{a_i-1} a_i!,
// rewritten in single-index kappas.
KappaPolynomial j_class_via_multiindex(int p);

// kappa_{a_1, ..., a_m} as a polynomial in single-index kappas.
KappaPolynomial multiindex_to_products(std::vector<int> indices);

// Integral over M_{g,n} of a kappa-psi monomial, by reduction to
// Witten-Kontsevich numbers. mono.psi must have length n (or be empty,
// meaning all exponents zero). Returns 0 on degree mismatch.
Rational mixed_integral(int g, int n, const KappaMonomial& mono);
Rational integrate(int g, int n, const KappaPolynomial& poly);

// Integral of J_p times a complementary monomial over M_{g,n}.
Rational pair_j(int g, int n, int p, const KappaMonomial& complement);

// All kappa-psi monomials of the given degree on n points.
std::vector<KappaMonomial> monomials_of_degree(int n, int degree);

// Partitions of n into positive parts, each sorted ascending.
std::vector<std::vector<int>> partitions(int n);

}  // namespace moduli::kappa
