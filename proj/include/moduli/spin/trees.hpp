#pragma once

#include <utility>
#include <vector>

#include "moduli/exact/rational.hpp"

namespace moduli::spin {

using exact::Rational;

// Star rooted tree: a root vertex of genus g0 carrying all legs, joined by one
// edge of degree d_i to each leaf vertex of genus g_i. Leaves are stored as a
// sorted multiset of (g_i, d_i).
struct StarTree {
  int g0 = 0;
  std::vector<std::pair<int, int>> leaves;

  int edges() const { return static_cast<int>(leaves.size()); }
  int genus() const;
  int degree() const;
  friend bool operator==(const StarTree&, const StarTree&) = default;
  friend auto operator<=>(const StarTree&, const StarTree&) = default;
};

struct WeightedTree {
  StarTree tree;
  // 1 / prod(multiplicity!) over identical leaves; replaces ordered edges
  // weighted by 1/|E|!.
  Rational symmetry;
};

// Every star tree of total genus g and total degree d >= 1 (n legs all sit at
// the root, so n only enters through the caller).
std::vector<WeightedTree> enumerate_star_trees(int g, int n, int d);

}  // namespace moduli::spin
