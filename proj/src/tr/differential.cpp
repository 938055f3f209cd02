#include "moduli/tr/differential.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "moduli/errors.hpp"

namespace moduli::tr {

Param NPointDifferential::coefficient(const std::vector<std::pair<int, int>>& pole_orders) const {
  if (static_cast<int>(pole_orders.size()) != n_) throw DomainError("coefficient: wrong number of variables");
  TermKey key = 0;
  for (int i = 0; i < n_; ++i) {
    auto [p, o] = pole_orders[static_cast<std::size_t>(i)];
    if (p < 0 || p > 3 || o < 1 || o > kMaxOrder) return Param();
    key |= place(make_code(p, o), i);
  }
  auto it = terms_.find(key);
  return it == terms_.end() ? Param() : Param::monomial(it->second, c_power());
}

int NPointDifferential::max_order() const {
  int m = 0;
  for (auto& [k, c] : terms_)
    for (int i = 0; i < n_; ++i) m = std::max(m, code_order(code_at(k, i)));
  return m;
}

bool NPointDifferential::residue_free() const {
  for (auto& [k, c] : terms_)
    for (int i = 0; i < n_; ++i)
      if (code_order(code_at(k, i)) < 2) return false;
  return true;
}

bool NPointDifferential::is_symmetric() const {
  std::vector<int> perm(static_cast<std::size_t>(n_));
  std::iota(perm.begin(), perm.end(), 0);
  // adjacent transpositions generate the symmetric group
  for (int s = 0; s + 1 < n_; ++s) {
    for (auto& [k, c] : terms_) {
      TermKey swapped = k;
      swapped &= ~(place(0xff, s) | place(0xff, s + 1));
      swapped |= place(code_at(k, s), s + 1) | place(code_at(k, s + 1), s);
      auto it = terms_.find(swapped);
      if (it == terms_.end() || it->second != c) return false;
    }
  }
  return true;
}

std::string NPointDifferential::export_text(const std::vector<Rational>& poles) const {
  std::ostringstream os;
  os << "omega g=" << g_ << " n=" << n_ << " c^" << c_power() << " terms=" << terms_.size() << "\n";
  for (auto& [k, c] : terms_) {
    for (int i = 0; i < n_; ++i) {
      std::uint8_t code = code_at(k, i);
      os << (i ? "," : "") << poles.at(static_cast<std::size_t>(code_pole(code))) << ":" << code_order(code);
    }
    os << ";" << c << "\n";
  }
  return os.str();
}

}  // namespace moduli::tr
