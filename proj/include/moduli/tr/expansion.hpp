#pragma once

#include <map>
#include <string>
#include <vector>

#include "moduli/exact/laurent.hpp"
#include "moduli/tr/curve.hpp"
#include "moduli/tr/differential.hpp"
#include "moduli/tr/engine.hpp"

namespace moduli::tr {

using exact::QPoly;

// Coefficients of prod_i d((2k_i - 1)!!/x_i^{2k_i+1}) near z = 0, divided by
// 2^{2g-2+n}: descendant correlators as polynomials in Q. Every k-tuple with
// 0 <= k_i <= kmax is present (zeros included); only sorted tuples are
// computed, the rest are copies.
struct DescendantTable {
  int g = 0, n = 0, kmax = 0;
  std::map<std::vector<int>, QPoly> values;

  QPoly at(const std::vector<int>& ks) const;
};

// Needs x = c * x0(z) with a simple pole of x0 at z = 0. Odd powers of 1/x
// surviving the sum raise ConventionError.
DescendantTable expand_descendants(const SpectralCurve& curve, const NPointDifferential& omega, int kmax);

// (0, 2): B - dx1 dx2/(x1 - x2)^2 expanded in the same basis.
DescendantTable expand_omega02(const SpectralCurve& curve, int kmax);

// Closed form of the degree-wise (0, 2) correlators, from
// (e^{Q/zeta1 + Q/zeta2} - 1)/(zeta1 + zeta2): (-Q)^{k1+k2+1}/((k1+k2+1) k1! k2!).
QPoly omega02_closed_form(int k1, int k2);

// Pull back omega on the kn curve along u = z - 1/z (w = c (z - 1/z)) into
// the spin curve's partial fractions, times 2^{2g-2+n}.
NPointDifferential pullback_to_spin(const NPointDifferential& kn, const SpectralCurve& spin);

}  // namespace moduli::tr
