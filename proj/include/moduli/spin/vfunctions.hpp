#pragma once

#include "moduli/exact/laurent2.hpp"

namespace moduli::spin {

using exact::LaurentTQ;
using exact::LaurentTS;

// D = (Q/(T-Q)) d/dQ = ((S-T)/S) d/dS in the variables T and S = T - Q.
LaurentTS apply_D(const LaurentTS& f);

// V_k = D^k (Q/T); memoized, thread safe.
LaurentTS V(int k);

// V_{k,l} = D^{-1}(V_{k+1} V_{l+1}) normalized to vanish at S = T. A
// logarithmic antiderivative raises InternalError (that would be a bug for
// k, l >= 1 and for V_{1,0}). V_{0,0} has a
// genuine logarithm and raises DomainError.
LaurentTS V2(int k, int l);

// Same functions from the Lambert-type series in X = (Q/T) e^{-Q/T},
// expanded in Q up to (excluding) Q^order.
LaurentTQ V_from_x_series(int k, int order);
LaurentTQ V2_from_x_series(int k, int l, int order);

// sum_{d>=1} X^d d^{d-1}/d! in powers of Q up to Q^{order-1}.
LaurentTQ lambert_sum(int order);

}  // namespace moduli::spin
