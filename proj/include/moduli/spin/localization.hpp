#pragma once

#include <vector>

#include "moduli/exact/laurent2.hpp"
#include "moduli/exact/series.hpp"
#include "moduli/spin/trees.hpp"

namespace moduli::spin {

using exact::LaurentTQ;
using exact::LaurentTS;
using exact::Rational;

// Sum of exponents minus g plus one: the (T, Q)-degree of the correlator.
int total_degree(int g, const std::vector<int>& ks);

// Contribution of one weighted tree to the coefficient of Q^d of the
// equivariant descendant <tau_{k_1}...tau_{k_n}>_g. Every tree is a multiple
// of T^{total_degree - d}; the returned Rational is that multiple.
// Hodge integrals outside the oracle raise hodge::HodgeUnsupported.
Rational tree_contribution(const WeightedTree& tree, int g, const std::vector<int>& ks);

// Degree-d localization sum, as the monomial c T^{total_degree - d} Q^d.
LaurentTQ equiv_descendant(int g, const std::vector<int>& ks, int d);

// sum_{d=1}^{dmax} equiv_descendant(g, ks, d).
LaurentTQ equiv_descendant_sum(int g, const std::vector<int>& ks, int dmax);

// The d >= 1 localization descendant: summed up to the total degree (higher
// degrees cancel, which the verification suite checks separately).
LaurentTQ localization_descendant(int g, const std::vector<int>& ks);

// Genus-g1 coefficient (power hbar^{2 g1}) of hat P_k:
//   g1 = 0: V_k for k >= 2, else 0;
//   g1 >= 1: sum_{a+l=2g1-2} (-1)^{g1+l} T^{g1-a} V_{k+l+2} int lambda_{g1} lambda_a psi^l.
LaurentTS hat_P(int k, int g1);
// hat P_k as a truncated series in hbar^2 (coefficient i is hat_P(k, i)).
exact::TruncSeries<LaurentTS> hat_P_series(int k, int hbar_order);

// <tau_{l_1}...tau_{l_n}>_g of F^KW(t_k - hat P_k / hbar; S hbar), S = T - Q.
// Needs n >= 1 and 2g - 2 + n > 0.
LaurentTS shifted_kw_ancestor(int g, const std::vector<int>& ls);

// The same correlator at T = 0, where the shifts become t_k + (k-1)!/(hbar Q^k)
// for k >= 2 and the coupling is -Q hbar.
exact::QPoly shifted_kw_ancestor_at_t_zero(int g, const std::vector<int>& ls);

}  // namespace moduli::spin
