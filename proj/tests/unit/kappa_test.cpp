#include <doctest.h>

#include <random>

#include "moduli/errors.hpp"
#include "moduli/exact/series.hpp"
#include "moduli/hodge/hodge.hpp"
#include "moduli/kappa/kappa.hpp"
#include "moduli/psi/correlators.hpp"

using namespace moduli;
using namespace moduli::kappa;

namespace {

KappaPolynomial k(std::vector<int> subs, const Rational& c = Rational(1)) {
  return KappaPolynomial::term(KappaMonomial(std::move(subs)), c);
}

}  // namespace

TEST_CASE("s constants") {
  auto s = s_constants(3);
  REQUIRE(s.size() == 3);
  CHECK(s[0] == Rational(1));
  CHECK(s[1] == Rational(-3, 2));
  CHECK(s[2] == Rational(13, 3));

  // exponentiate -sum s_i t^i back
  auto s8 = s_constants(8);
  exact::TruncSeries<Rational> x("t", 9);
  for (int i = 1; i <= 8; ++i) x[i] = -s8[i - 1];
  auto e = x.exp();
  for (int i = 0; i <= 8; ++i) CHECK(e[i] == Rational::factorial(i) * Rational(i % 2 ? -1 : 1));
}

TEST_CASE("J classes in low degree") {
  CHECK(j_class(0) == KappaPolynomial(Rational(1)));
  CHECK(j_class(1) == k({1}));
  CHECK(j_class(2) == k({1, 1}, Rational(1, 2)) + k({2}, Rational(-3, 2)));
  CHECK(j_class_via_multiindex(1) == k({1}));
  CHECK(j_class_via_multiindex(2) == j_class(2));
  for (int p = 1; p <= 6; ++p) {
    CHECK(j_class(p) == j_class_via_multiindex(p));
    KappaPolynomial j = j_class(p);
    for (auto& [m, c] : j.terms()) CHECK(m.degree() == p);
  }
}

TEST_CASE("multi-index kappa conversion") {
  CHECK(multiindex_to_products({3}) == k({3}));
  CHECK(multiindex_to_products({1, 1}) == k({1, 1}) + k({2}));
  CHECK(mixed_integral(1, 2, KappaMonomial({1, 1})) + mixed_integral(1, 2, KappaMonomial({2})) == Rational(1, 6));
  CHECK_THROWS_AS(multiindex_to_products({}), DomainError);

  // A multi-index kappa is the pushforward of psi powers from extra points:
  // its integral is a single Witten-Kontsevich number.
  for (auto indices : std::vector<std::vector<int>>{{1, 1, 1}, {1, 2}, {1, 1, 2}, {2, 2, 1}, {1, 1, 1, 1}})
    for (int g = 0; g <= 2; ++g)
      for (int n = 0; n <= 3; ++n) {
        if (2 * g - 2 + n <= 0) continue;
        int deg = 0;
        for (int a : indices) deg += a;
        int free = 3 * g - 3 + n - deg;
        if (free < 0) continue;
        for (auto& mono : monomials_of_degree(n, free)) {
          if (!mono.kappa.empty()) continue;
          std::vector<int> ks = mono.psi;
          for (int a : indices) ks.push_back(a + 1);
          Rational direct = psi::wk_correlator(g, ks);
          Rational via = Rational(0);
          KappaPolynomial expanded = multiindex_to_products(indices);
          for (auto& [m, c] : expanded.terms())
            via += c * mixed_integral(g, n, KappaMonomial(m.kappa, mono.psi));
          CHECK(via == direct);
        }
      }
}

TEST_CASE("mixed integrals") {
  CHECK(mixed_integral(1, 2, KappaMonomial({2})) == Rational(1, 24));
  CHECK(mixed_integral(1, 2, KappaMonomial({1, 1})) == Rational(1, 8));
  CHECK(mixed_integral(1, 1, KappaMonomial({1})) == Rational(1, 24));
  CHECK(mixed_integral(1, 2, KappaMonomial({1})) == Rational(0));
  CHECK_THROWS_AS(mixed_integral(0, 2, KappaMonomial({1})), DomainError);
  CHECK(mixed_integral(0, 4, KappaMonomial({1})) == Rational(1));

  // empty kappa part is the plain correlator
  CHECK(mixed_integral(2, 2, KappaMonomial({}, {2, 3})) == psi::wk_correlator(2, {2, 3}));

  // symmetric in psi positions
  std::mt19937 rng(1);
  for (auto& m : monomials_of_degree(3, 4)) {
    Rational v = mixed_integral(1, 3, m);
    std::vector<int> perm = m.psi;
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(mixed_integral(1, 3, KappaMonomial(m.kappa, perm)) == v);
  }
}

TEST_CASE("pairings with J") {
  CHECK(pair_j(1, 2, 2, KappaMonomial()) == Rational(0));
  CHECK(pair_j(1, 1, 1, KappaMonomial()) == Rational(1, 24));
  CHECK(pair_j(2, 1, 3, KappaMonomial({}, {1})) == Rational(-1, 2880));
  CHECK(pair_j(2, 0, 2, KappaMonomial({1})) == Rational(7, 5760));
  CHECK_THROWS_AS(pair_j(1, 2, 1, KappaMonomial()), DomainError);

  // vanishing in the claimed range, small genus
  for (int g = 0; g <= 2; ++g)
    for (int n = 0; n <= 3; ++n) {
      if (2 * g - 2 + n <= 0) continue;
      int dim = 3 * g - 3 + n;
      for (int p = 2 * g - 2 + n + (n >= 2 ? 0 : 1); p <= dim; ++p)
        for (auto& m : monomials_of_degree(n, dim - p)) CHECK(pair_j(g, n, p, m) == Rational(0));
    }

  // J_{2g-1} on M_{g,1} and J_{2g-2} on M_g are lambda_g lambda_{g-1} and lambda_g up to sign
  for (int g = 1; g <= 3; ++g)
    CHECK(pair_j(g, 1, 2 * g - 1, KappaMonomial({}, {g - 1})) ==
          Rational(g % 2 ? 1 : -1) * hodge::one_point_hodge(hodge::HodgeKey(g, g - 1)));
}

TEST_CASE("monomial enumeration") {
  auto ms = monomials_of_degree(2, 2);
  // kappa part {}, {1}, {2}, {1,1} with psi compositions 3 + 2 + 1 + 1
  CHECK(ms.size() == 7);
  for (auto& m : ms) CHECK(m.degree() == 2);
  CHECK(monomials_of_degree(2, -1).empty());
  CHECK(partitions(5).size() == 7);
}
