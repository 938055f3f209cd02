#pragma once

#include "moduli/exact/laurent.hpp"
#include "moduli/exact/laurent2.hpp"
#include "moduli/exact/rational.hpp"

// Minimal "exact ring" interface shared by the series containers. Every
// coefficient ring supplies zero/one, ring arithmetic, scaling by a
// Rational, an is_zero test and (where it exists) a unit inverse.
namespace moduli::exact::ring {

inline bool is_zero(const Rational& r) { return r.is_zero(); }
template <class Tag>
bool is_zero(const Laurent<Tag>& p) { return p.is_zero(); }
template <class Tag>
bool is_zero(const Laurent2<Tag>& p) { return p.is_zero(); }

inline Rational unit_inverse(const Rational& r) { return r.inverse(); }
template <class Tag>
Laurent<Tag> unit_inverse(const Laurent<Tag>& p) { return p.inverse(); }
template <class Tag>
Laurent2<Tag> unit_inverse(const Laurent2<Tag>& p) {
  if (p.terms().size() != 1) throw DomainError("inverse of non-monomial bivariate Laurent polynomial");
  auto& [k, c] = *p.terms().begin();
  return Laurent2<Tag>::monomial(c.inverse(), -k.first, -k.second);
}

}  // namespace moduli::exact::ring
