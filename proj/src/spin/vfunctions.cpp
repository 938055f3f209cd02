#include "moduli/spin/vfunctions.hpp"

#include <map>
#include <mutex>
#include <vector>

#include "moduli/errors.hpp"
#include "moduli/exact/rational_function.hpp"

namespace moduli::spin {

using exact::Rational;

LaurentTS apply_D(const LaurentTS& f) {
  LaurentTS df = f.derivative_second();
  // (S - T)/S = 1 - T S^{-1}
  return df - df.shifted(1, -1);
}

LaurentTS V(int k) {
  if (k < 0) throw DomainError("V_k needs k >= 0");
  static std::mutex mutex;
  static std::vector<LaurentTS> cache;
  std::lock_guard lock(mutex);
  if (cache.empty()) cache.push_back(LaurentTS(1) - LaurentTS::monomial(1, -1, 1));  // (T - S)/T
  while (static_cast<int>(cache.size()) <= k) cache.push_back(apply_D(cache.back()));
  return cache[k];
}

namespace {

// (h(S) - h(T)) / (S - T) termwise.
LaurentTS divided_difference(const LaurentTS& h) {
  LaurentTS out;
  for (const auto& [key, c] : h.terms()) {
    auto [i, j] = key;
    if (j > 0) {
      for (int a = 0; a <= j - 1; ++a) out.add(i + j - 1 - a, a, c);
    } else if (j < 0) {
      int m = -j;
      for (int a = 0; a <= m - 1; ++a) out.add(i + j + (m - 1 - a), j + a, -c);
    }
  }
  return out;
}

}  // namespace

LaurentTS V2(int k, int l) {
  if (k < 0 || l < 0) throw DomainError("V_{k,l} needs k, l >= 0");
  // D^{-1}(V_1^2) contains log(S/T)
  if (k == 0 && l == 0) throw DomainError("V_{0,0} is not a Laurent polynomial");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, LaurentTS> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({k, l});
    if (it != cache.end()) return it->second;
  }
  // D F = f  <=>  dF/dS = S f / (S - T); the quotient is exact when S f vanishes at S = T.
  LaurentTS h = (V(k + 1) * V(l + 1)).shifted(0, 1);
  if (!exact::restrict_s_equals_t(h).is_zero())
    throw InternalError("V_{k,l}: integrand has a pole at S = T");
  LaurentTS dF_dS = divided_difference(h);
  LaurentTS result;
  try {
    // dF/dQ = -dF/dS
    result = exact::formal_integrate_Q(-dF_dS);
  } catch (const DomainError&) {
    throw InternalError("V_{" + std::to_string(k) + "," + std::to_string(l) + "}: log term");
  }
  std::lock_guard lock(mutex);
  cache.emplace(std::make_pair(k, l), result);
  return result;
}

namespace {

// Coefficients of X^d as series in Q: X^d = (Q/T)^d sum_j (-d Q/T)^j / j!.
void add_x_power(LaurentTQ& out, int d, const Rational& weight, int t_shift, int order) {
  for (int j = 0; d + j < order; ++j) {
    Rational c = weight * Rational(-d).pow(j) / Rational::factorial(j);
    out.add(-(d + j) + t_shift, d + j, c);
  }
}

Rational lambert_coefficient(int d) { return Rational(d).pow(d - 1) / Rational::factorial(d); }

}  // namespace

LaurentTQ V_from_x_series(int k, int order) {
  LaurentTQ out;
  for (int d = 1; d < order; ++d) add_x_power(out, d, lambert_coefficient(d) * Rational(d).pow(k), -k, order);
  return out;
}

LaurentTQ V2_from_x_series(int k, int l, int order) {
  LaurentTQ out;
  for (int d1 = 1; d1 < order; ++d1)
    for (int d2 = 1; d1 + d2 < order; ++d2) {
      Rational w = Rational(d1).pow(d1) * Rational(d2).pow(d2) /
                   (Rational(d1 + d2) * Rational::factorial(d1) * Rational::factorial(d2)) *
                   Rational(d1).pow(k) * Rational(d2).pow(l);
      add_x_power(out, d1 + d2, w, -1 - k - l, order);
    }
  return out;
}

LaurentTQ lambert_sum(int order) { return V_from_x_series(0, order); }

}  // namespace moduli::spin
