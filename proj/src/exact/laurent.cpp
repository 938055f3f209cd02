#include "moduli/exact/laurent.hpp"

namespace moduli::exact {

namespace {
int floor_div2(int e) { return e >= 0 ? e / 2 : -((-e + 1) / 2); }
}  // namespace

ParamNormalForm normal_form(const Param& p) {
  std::vector<QPoly::Term> even, odd;
  const Rational minus_half(-1, 2);
  for (const auto& [e, c] : p.terms()) {
    int j = floor_div2(e);
    Rational coeff = c * minus_half.pow(j);
    if (e - 2 * j == 0) even.emplace_back(j, coeff);
    else odd.emplace_back(j, coeff);
  }
  return {QPoly::from_terms(std::move(even)), QPoly::from_terms(std::move(odd))};
}

Param param_from_q(const QPoly& q) {
  // Q = -2 c^2
  std::vector<Param::Term> out;
  const Rational minus_two(-2);
  for (const auto& [j, coeff] : q.terms()) out.emplace_back(2 * j, coeff * minus_two.pow(j));
  return Param::from_terms(std::move(out));
}

}  // namespace moduli::exact
