#include "moduli/exact/series.hpp"

namespace moduli::exact {

std::vector<Rational> log_of_factorial_series(int n) {
  if (n < 1) throw DomainError("log_of_factorial_series: order must be at least 1");
  TruncSeries<Rational> f("t", n + 1);
  for (int i = 0; i <= n; ++i) f[i] = Rational::factorial(i) * Rational(i % 2 ? -1 : 1);
  TruncSeries<Rational> l = f.log();
  std::vector<Rational> s;
  for (int i = 1; i <= n; ++i) s.push_back(-l[i]);
  return s;
}

}  // namespace moduli::exact
