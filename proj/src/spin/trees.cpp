#include "moduli/spin/trees.hpp"

#include <numeric>

#include "moduli/errors.hpp"

namespace moduli::spin {

int StarTree::genus() const {
  int g = g0;
  for (auto& [gi, di] : leaves) g += gi;
  return g;
}

int StarTree::degree() const {
  int d = 0;
  for (auto& [gi, di] : leaves) d += di;
  return d;
}

std::vector<WeightedTree> enumerate_star_trees(int g, int n, int d) {
  if (g < 0 || n < 0 || d < 1) throw DomainError("enumerate_star_trees needs g, n >= 0 and d >= 1");
  std::vector<WeightedTree> out;
  std::vector<std::pair<int, int>> cur;
  // leaves generated in non-decreasing (g_i, d_i) order
  auto rec = [&](auto&& self, int genus_left, int degree_left, std::pair<int, int> min_leaf, int g0) -> void {
    if (degree_left == 0) {
      if (genus_left != 0) return;
      Rational sym(1);
      for (std::size_t i = 0; i < cur.size();) {
        std::size_t j = i;
        while (j < cur.size() && cur[j] == cur[i]) ++j;
        sym /= Rational::factorial(static_cast<int>(j - i));
        i = j;
      }
      out.push_back({StarTree{g0, cur}, sym});
      return;
    }
    for (int gi = min_leaf.first; gi <= genus_left; ++gi)
      for (int di = (gi == min_leaf.first ? min_leaf.second : 1); di <= degree_left; ++di) {
        cur.emplace_back(gi, di);
        self(self, genus_left - gi, degree_left - di, std::make_pair(gi, di), g0);
        cur.pop_back();
      }
  };
  for (int g0 = 0; g0 <= g; ++g0) rec(rec, g - g0, d, {0, 1}, g0);
  return out;
}

}  // namespace moduli::spin
