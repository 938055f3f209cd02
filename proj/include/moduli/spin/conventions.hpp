#pragma once

#include "moduli/exact/rational.hpp"

namespace moduli::spin {

using exact::Rational;

inline Rational minus_one_pow(long e) { return Rational(e % 2 == 0 ? 1 : -1); }

// Every sign that relates the geometric classes to the correlators lives
// here. Pinned by the regression value <tau_0^3>_0 = -Q.
struct Signs {
  // Stationary correlators carry (-1)^{g+1} in front of each degree-d
  // integral. The localization routine works with (-1)^{g+1} C_{g,n,d}(T)
  // directly, so this factor is already inside its tree sum.
  static Rational stationary(int g) { return minus_one_pow(g + 1); }

  // (-1)^{g+d+1} p_* C_{g,n,d} is Poincare dual to J_{2g-2+n-d}; composed with
  // stationary(g) the J-pipeline weight of Q^d is (-1)^d.
  static Rational j_pipeline(int g, int d) { return stationary(g) * minus_one_pow(g + d + 1); }

  // Sign applied to TR-extracted descendants in the basis
  // d((2k-1)!!/x^{2k+1}): one factor -1 per variable, fixed by <tau_0^3>_0 = -Q.
  static Rational tr_basis(int /*g*/, int n) { return minus_one_pow(n); }
};

}  // namespace moduli::spin
