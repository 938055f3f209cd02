#include "moduli/exact/laurent2.hpp"

namespace moduli::exact {

LaurentTQ to_q_series(const LaurentTS& f, int order) {
  LaurentTQ out;
  for (const auto& [key, c] : f.terms()) {
    auto [i, j] = key;
    // T^i (T - Q)^j = sum_m C(j, m) (-Q)^m T^{i+j-m}
    for (int m = 0; m < order; ++m) {
      Rational b = Rational::binomial(j, m);
      if (b.is_zero()) {
        if (j >= 0) break;
        continue;
      }
      out.add(i + j - m, m, c * b * Rational(m % 2 ? -1 : 1));
    }
  }
  return out;
}

LaurentTS to_ts(const LaurentTQ& f) {
  LaurentTS out;
  for (const auto& [key, c] : f.terms()) {
    auto [i, j] = key;
    if (j < 0) throw DomainError("to_ts: negative power of Q");
    // T^i Q^j = T^i (T - S)^j
    for (int m = 0; m <= j; ++m)
      out.add(i + j - m, m, c * Rational::binomial(j, m) * Rational(m % 2 ? -1 : 1));
  }
  return out;
}

QPoly restrict_t_zero(const LaurentTS& f) {
  std::vector<QPoly::Term> terms;
  for (const auto& [key, c] : f.terms()) {
    if (key.first < 0) throw DomainError("restrict_t_zero: negative power of T");
    if (key.first == 0) terms.emplace_back(key.second, c * Rational(key.second % 2 ? -1 : 1));
  }
  return QPoly::from_terms(std::move(terms));
}

QPoly restrict_t_zero(const LaurentTQ& f) {
  std::vector<QPoly::Term> terms;
  for (const auto& [key, c] : f.terms()) {
    if (key.first < 0) throw DomainError("restrict_t_zero: negative power of T");
    if (key.first == 0) terms.emplace_back(key.second, c);
  }
  return QPoly::from_terms(std::move(terms));
}

LaurentTS restrict_s_equals_t(const LaurentTS& f) {
  LaurentTS out;
  for (const auto& [key, c] : f.terms()) out.add(key.first + key.second, 0, c);
  return out;
}

}  // namespace moduli::exact
