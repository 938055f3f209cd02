#pragma once

#include <functional>
#include <vector>

#include "moduli/exact/laurent.hpp"
#include "moduli/exact/laurent2.hpp"
#include "moduli/exact/rational.hpp"

namespace moduli::spin {

using exact::Rational;

// Powers of Q in the value ring of a correlator family.
inline exact::QPoly q_power(const exact::QPoly*, const Rational& c, int m) { return exact::QPoly::monomial(c, m); }
inline exact::LaurentTQ q_power(const exact::LaurentTQ*, const Rational& c, int m) {
  return exact::LaurentTQ::monomial(c, 0, m);
}

namespace detail {

// sum over 0 <= m_i <= l_i of prod (sign Q)^{m_i}/m_i! * f(l - m).
template <class R>
R triangular(const std::vector<int>& ls, int sign, const std::function<R(const std::vector<int>&)>& f) {
  R out{};
  std::vector<int> cur(ls.size());
  auto rec = [&](auto&& self, std::size_t i, int total, Rational weight) -> void {
    if (i == ls.size()) {
      R v = f(cur);
      if (!v.is_zero()) out += q_power(static_cast<const R*>(nullptr), weight * Rational(sign).pow(total), total) * v;
      return;
    }
    for (int m = 0; m <= ls[i]; ++m) {
      cur[i] = ls[i] - m;
      self(self, i + 1, total + m, weight / Rational::factorial(m));
    }
  };
  rec(rec, 0, 0, Rational(1));
  return out;
}

}  // namespace detail

// Ancestors from descendants: t_k -> sum_m Q^m/m! t_{k+m}, i.e.
// anc(l) = sum_m prod Q^{m_i}/m_i! des(l - m).
template <class R>
R anc_from_des(const std::vector<int>& ls, const std::function<R(const std::vector<int>&)>& des) {
  return detail::triangular<R>(ls, 1, des);
}

// Inverse change: des(k) = sum_m prod (-Q)^{m_i}/m_i! anc(k - m).
template <class R>
R des_from_anc(const std::vector<int>& ks, const std::function<R(const std::vector<int>&)>& anc) {
  return detail::triangular<R>(ks, -1, anc);
}

}  // namespace moduli::spin
