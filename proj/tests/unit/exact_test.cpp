#include <doctest.h>

#include <random>

#include "moduli/exact/laurent.hpp"
#include "moduli/exact/laurent2.hpp"
#include "moduli/exact/rational.hpp"
#include "moduli/exact/rational_function.hpp"
#include "moduli/exact/series.hpp"

using namespace moduli;
using namespace moduli::exact;

namespace {

using RS = TruncSeries<Rational>;

RS series(std::vector<Rational> c) { return RS("t", std::move(c)); }

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  return Rational(num(rng), den(rng));
}

// [u^n] of the reversion of f by Lagrange inversion: (1/n) [v^{n-1}] (v/f)^n.
Rational lagrange_coefficient(const RS& f, int n) {
  int order = f.order();
  RS quotient("t", order - 1);
  for (int i = 1; i < order; ++i) quotient[i - 1] = f[i];
  RS h = quotient.inverse();
  RS p = RS::constant("t", Rational(1), order - 1);
  for (int i = 0; i < n; ++i) p = p * h;
  return p[n - 1] * Rational(1, n);
}

}  // namespace

TEST_CASE("rational arithmetic is canonical") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK(Rational(4).pq() == "4/1");
  CHECK(Rational::parse("-6/8") == Rational(-3, 4));
  CHECK(Rational::double_factorial_odd(3) == Rational(15));
  CHECK(Rational::double_factorial_odd(0) == Rational(1));
  CHECK(Rational::binomial(-1, 3) == Rational(-1));
  CHECK(Rational::binomial(5, 2) == Rational(10));
  CHECK_THROWS_AS(Rational(1, 0), DomainError);
  CHECK_THROWS_AS(Rational(0).inverse(), DomainError);
}

TEST_CASE("ring laws hold on random Laurent polynomials") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> expo(-3, 3);
  auto random_poly = [&] {
    std::vector<Param::Term> t;
    for (int i = 0; i < 4; ++i) t.emplace_back(expo(rng), random_rational(rng));
    return Param::from_terms(t);
  };
  for (int trial = 0; trial < 50; ++trial) {
    Param a = random_poly(), b = random_poly(), c = random_poly();
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a - a == Param());
  }
}

TEST_CASE("c-parity normal form") {
  Param c = Param::variable();
  auto nf = normal_form(c * c);
  CHECK(nf.even == QPoly::monomial(Rational(-1, 2), 1));
  CHECK(nf.odd.is_zero());
  nf = normal_form(c.pow(3) + Param(1));
  CHECK(nf.even == QPoly(1));
  CHECK(nf.odd == QPoly::monomial(Rational(-1, 2), 1));
  CHECK(normal_form(c.pow(-2)).even == QPoly::monomial(Rational(-2), -1));
  QPoly q = QPoly::monomial(Rational(3), 2) - QPoly::monomial(Rational(1), -1);
  CHECK(normal_form(param_from_q(q)).even == q);
}

TEST_CASE("series log matches the hand expansion") {
  RS s = series({1, -1, 2, -6});
  RS l = s.log();
  CHECK(l == series({0, -1, Rational(3, 2), Rational(-13, 3)}));
  CHECK(RS::constant("t", Rational(1), 5).log() == RS("t", 5));
  CHECK_THROWS_AS(series({2, 1}).log(), DomainError);
  RS r = series({1, 1, 0, 5, 0});
  CHECK(r.log().exp() == r);
}

TEST_CASE("series log and exp are mutually inverse on random input") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rational> c(8);
    c[0] = 1;
    for (int i = 1; i < 8; ++i) c[i] = random_rational(rng);
    RS s = series(c);
    CHECK(s.log().exp() == s);
    c[0] = 0;
    RS z = series(c);
    CHECK(z.exp().log() == z);
  }
}

TEST_CASE("series reversion") {
  CHECK(RS::identity("v", 6).reversion("u") == RS::identity("u", 6));
  RS f = series({0, 1, 1, 0, 0});
  CHECK(f.reversion("u") == RS("u", std::vector<Rational>{0, 1, -1, 2, -5}));

  // v / (1 + v^2) composed with its reversion is the identity to order 8.
  RS g = (RS::identity("v", 9) * series({1, 0, 1, 0, 0, 0, 0, 0, 0}).inverse());
  RS r = g.reversion("u");
  CHECK(g.compose(r) == RS::identity("u", 9));
  CHECK(r.compose(g) == RS::identity("t", 9));

  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> c(7);
    c[1] = Rational(1 + trial % 3);
    for (int i = 2; i < 7; ++i) c[i] = random_rational(rng);
    RS h = series(c);
    RS hr = h.reversion("u");
    for (int n = 1; n < 7; ++n) CHECK(hr[n] == lagrange_coefficient(h, n));
  }
  CHECK_THROWS_AS(series({0, 0, 1}).reversion("u"), DomainError);
}

TEST_CASE("local series arithmetic tracks precision") {
  using LS = LocalSeries<Rational>;
  LS a = LS::from_coefficients(-2, {1, 2, 3, 4});  // t^-2 + 2t^-1 + 3 + 4t + O(t^2)
  LS inv = a.inverse();
  CHECK(inv.valuation() == 2);
  LS one = a * inv;
  CHECK(one.coefficient(0) == Rational(1));
  CHECK(one.coefficient(1) == Rational(0));
  CHECK(one.precision() == 4);
  CHECK(one.coefficient(3) == Rational(0));
  CHECK_THROWS_AS(one.coefficient(4), InternalError);
  LS d = LS::from_coefficients(-3, {1, 0, 0, 5});
  CHECK(d.integral().coefficient(-2) == Rational(-1, 2));
  CHECK_THROWS_AS(LS::from_coefficients(-1, {1}).integral(), DomainError);
}

TEST_CASE("formal residue") {
  ZPoly z = ZPoly::z();
  CHECK(formal_residue(RationalFunction(Param(1), z), 0) == Param(1));
  CHECK(formal_residue(RationalFunction(Param(1), z * z), 0) == Param());
  RationalFunction f(Param(1), ZPoly::linear_power(1, 1) * ZPoly::linear_power(-1, 1));
  CHECK(formal_residue(f, 1) == Param(Rational(1, 2)));
  CHECK(formal_residue(f, 2) == Param());

  // Linear, and zero on derivatives of functions regular at the pole.
  Param c = Param::variable();
  RationalFunction g(ZPoly(std::vector<Param>{c, Param(3), c * c}), ZPoly::linear_power(1, 3) * z);
  CHECK(formal_residue(g + f, 1) == formal_residue(g, 1) + formal_residue(f, 1));
  CHECK(formal_residue(g.derivative(), 1) == Param());
  CHECK(formal_residue(g.derivative(), 0) == Param());
}

TEST_CASE("formal integration in Q") {
  LaurentTS one(1);
  // T - S = Q
  CHECK(formal_integrate_Q(one) == LaurentTS::monomial(1, 1, 0) - LaurentTS::monomial(1, 0, 1));
  // derivative round trip: d/dQ = -d/dS
  LaurentTS f = LaurentTS::monomial(Rational(3), -2, -3) + LaurentTS::monomial(Rational(1), 1, 2);
  LaurentTS F = formal_integrate_Q(f);
  CHECK(-F.derivative_second() == f);
  CHECK(restrict_s_equals_t(F).is_zero());
  CHECK_THROWS_WITH_AS(formal_integrate_Q(LaurentTS::monomial(1, 0, -1)), "log term", DomainError);
}

TEST_CASE("T,S to T,Q conversion") {
  // 1/S = 1/(T - Q) = 1/T + Q/T^2 + ...
  LaurentTQ q = to_q_series(LaurentTS::monomial(1, 0, -1), 4);
  CHECK(q.coefficient(-1, 0) == Rational(1));
  CHECK(q.coefficient(-3, 2) == Rational(1));
  LaurentTS p = LaurentTS::monomial(2, 1, 2) + LaurentTS::monomial(1, 0, 0);
  CHECK(to_ts(to_q_series(p, 5)) == p);
  CHECK(restrict_t_zero(p) == QPoly(1));
}
