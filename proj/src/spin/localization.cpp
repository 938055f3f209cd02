#include "moduli/spin/localization.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "moduli/errors.hpp"
#include "moduli/hodge/hodge.hpp"
#include "moduli/psi/correlators.hpp"
#include "moduli/spin/conventions.hpp"
#include "moduli/spin/vfunctions.hpp"

namespace moduli::spin {

int total_degree(int g, const std::vector<int>& ks) {
  return std::accumulate(ks.begin(), ks.end(), 0) - g + 1;
}

namespace {

// Leaf vertex of genus gi attached by an edge of degree di: the integral of
// (d/T)^2 (-T)^g lambda_g Lambda(1/T) / (1 + (d/T) psi) over M_{g,1}, which is
// T^{-g} times the returned number. Genus 0 uses int_{M_{0,1}} 1/(1 - a psi) = a^{-2}.
Rational leaf_factor(int gi, int di) {
  if (gi == 0) return Rational(1);
  Rational total;
  for (int a = 0; a <= gi - 1; ++a) {
    int l = 2 * gi - 2 - a;
    total += Rational(di).pow(2 + l) * minus_one_pow(gi + l) * hodge::one_point_hodge(hodge::HodgeKey(gi, a, l));
  }
  return total;
}

using RootKey = std::tuple<int, std::vector<int>, std::vector<int>>;
std::mutex root_mutex;
std::map<RootKey, Rational> root_memo;

// sum over m with |m| = M of prod d_i^{m_i} <tau_ks prod tau_{m_i}>_{g0}, the
// psi-expansion of prod 1/(1 - (d_i/T) psi) with T^{-M} stripped. Edges with
// equal degree are interchangeable, so exponents are distributed as multisets.
Rational stable_root_factor(int g0, const std::vector<int>& ks, const std::vector<int>& degrees) {
  const int n = static_cast<int>(ks.size()), e = static_cast<int>(degrees.size());
  const int big_m = 3 * g0 - 3 + n + e - std::accumulate(ks.begin(), ks.end(), 0);
  if (big_m < 0) return Rational(0);
  RootKey key{g0, ks, degrees};
  {
    std::lock_guard lock(root_mutex);
    auto it = root_memo.find(key);
    if (it != root_memo.end()) return it->second;
  }
  std::vector<std::pair<int, int>> groups;  // (degree, count)
  for (int d : degrees) {
    if (!groups.empty() && groups.back().first == d) ++groups.back().second;
    else groups.emplace_back(d, 1);
  }
  Rational total;
  std::vector<int> exps = ks;
  auto rec = [&](auto&& self, std::size_t gi, int slot, int min_m, int left, Rational weight,
                 std::vector<int>& run) -> void {
    if (gi == groups.size()) {
      if (left == 0) total += weight * psi::wk_correlator(g0, exps);
      return;
    }
    auto [deg, count] = groups[gi];
    if (slot == count) {
      // arrangements of the chosen multiset among `count` identical edges
      Rational arrangements = Rational::factorial(count);
      for (std::size_t i = 0; i < run.size();) {
        std::size_t j = i;
        while (j < run.size() && run[j] == run[i]) ++j;
        arrangements /= Rational::factorial(static_cast<int>(j - i));
        i = j;
      }
      std::vector<int> next_run;
      self(self, gi + 1, 0, 0, left, weight * arrangements, next_run);
      return;
    }
    int remaining_slots = count - slot;
    for (int m = min_m; m * remaining_slots <= left; ++m) {
      run.push_back(m);
      exps.push_back(m);
      self(self, gi, slot + 1, m, left - m, weight * Rational(deg).pow(m), run);
      exps.pop_back();
      run.pop_back();
    }
  };
  std::vector<int> run;
  rec(rec, 0, 0, 0, big_m, Rational(1), run);
  std::lock_guard lock(root_mutex);
  root_memo.emplace(std::move(key), total);
  return total;
}

}  // namespace

Rational tree_contribution(const WeightedTree& wt, int g, const std::vector<int>& ks) {
  const StarTree& tree = wt.tree;
  const int n = static_cast<int>(ks.size()), e = tree.edges(), d = tree.degree();
  if (tree.genus() != g) throw DomainError("tree_contribution: tree genus does not match");

  Rational coeff = wt.symmetry * minus_one_pow(e);
  int t_power = -d + 2 * tree.g0 - 2 + n + e;
  std::vector<int> degrees;
  for (auto& [gi, di] : tree.leaves) {
    coeff *= Rational(di).pow(di - 1) / Rational::factorial(di);
    try {
      coeff *= leaf_factor(gi, di);
    } catch (const hodge::HodgeUnsupported& ex) {
      throw hodge::HodgeUnsupported(ex.key(), "star tree leaf (g=" + std::to_string(gi) + ", d=" + std::to_string(di) + ")");
    }
    t_power -= gi;
    degrees.push_back(di);
  }
  if (coeff.is_zero()) return coeff;

  if (tree.g0 == 0 && n + e <= 2) {
    // M_{0,1} and M_{0,2} bookkeeping conventions
    if (n == 1 && e == 1) {
      int k = ks[0];
      coeff *= minus_one_pow(k) * Rational(degrees[0]).pow(-k - 1);
      t_power += k + 1;
    } else if (n == 0 && e == 1) {
      coeff *= Rational(degrees[0]).pow(-2);
      t_power += 2;
    } else if (n == 0 && e == 2) {
      coeff *= Rational(degrees[0] + degrees[1]).inverse();
      t_power += 1;
    } else {
      throw InternalError("tree_contribution: unexpected unstable root");
    }
  } else {
    int big_m = 3 * tree.g0 - 3 + n + e - std::accumulate(ks.begin(), ks.end(), 0);
    if (big_m < 0) return Rational(0);
    std::vector<int> sorted_ks = ks;
    std::sort(sorted_ks.begin(), sorted_ks.end());
    coeff *= stable_root_factor(tree.g0, sorted_ks, degrees);
    t_power -= big_m;
  }
  if (!coeff.is_zero() && t_power != total_degree(g, ks) - d)
    throw InternalError("tree_contribution: tree is not homogeneous of the expected degree");
  return coeff;
}

LaurentTQ equiv_descendant(int g, const std::vector<int>& ks, int d) {
  if (d < 1) throw DomainError("equiv_descendant needs d >= 1");
  for (int k : ks)
    if (k < 0) throw DomainError("equiv_descendant: negative exponent");
  Rational total;
  for (auto& wt : enumerate_star_trees(g, static_cast<int>(ks.size()), d)) total += tree_contribution(wt, g, ks);
  return LaurentTQ::monomial(total, total_degree(g, ks) - d, d);
}

LaurentTQ equiv_descendant_sum(int g, const std::vector<int>& ks, int dmax) {
  LaurentTQ out;
  for (int d = 1; d <= dmax; ++d) out += equiv_descendant(g, ks, d);
  return out;
}

LaurentTQ localization_descendant(int g, const std::vector<int>& ks) {
  // symmetric in ks; several suites ask for the same tuples
  static std::mutex mutex;
  static std::map<std::pair<int, std::vector<int>>, LaurentTQ> memo;
  std::vector<int> sorted = ks;
  std::sort(sorted.begin(), sorted.end());
  auto key = std::make_pair(g, sorted);
  {
    std::lock_guard lock(mutex);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  LaurentTQ out = equiv_descendant_sum(g, sorted, total_degree(g, sorted));
  std::lock_guard lock(mutex);
  memo.emplace(std::move(key), out);
  return out;
}

LaurentTS hat_P(int k, int g1) {
  if (k < 0 || g1 < 0) throw DomainError("hat_P needs k, g1 >= 0");
  if (g1 == 0) return k >= 2 ? V(k) : LaurentTS();
  LaurentTS out;
  for (int a = 0; a <= g1 - 1; ++a) {
    int l = 2 * g1 - 2 - a;
    Rational h = hodge::one_point_hodge(hodge::HodgeKey(g1, a, l));
    out += V(k + l + 2).shifted(g1 - a, 0) * (minus_one_pow(g1 + l) * h);
  }
  return out;
}

exact::TruncSeries<LaurentTS> hat_P_series(int k, int hbar_order) {
  exact::TruncSeries<LaurentTS> s("hbar^2", hbar_order);
  for (int i = 0; i < hbar_order; ++i) s[i] = hat_P(k, i);
  return s;
}

namespace {

struct Insertion {
  int genus;
  int index;
  friend auto operator<=>(const Insertion&, const Insertion&) = default;
};

// Calls visit(insertions) for every multiset of insertions (genus >= 1 part
// with total genus `genus_total`, then genus-0 insertions with index >= 2)
// whose dimension excess sum (index - 1) equals `budget`.
template <class Visit>
void for_each_insertion_multiset(int genus_total, int budget, Visit&& visit) {
  std::vector<Insertion> cur;
  auto genus_zero = [&](int left) {
    // partitions of `left` into parts p >= 1, index p + 1
    auto rec = [&](auto&& self, int rem, int min_part) -> void {
      if (rem == 0) {
        visit(cur);
        return;
      }
      for (int p = min_part; p <= rem; ++p) {
        cur.push_back({0, p + 1});
        self(self, rem - p, p);
        cur.pop_back();
      }
    };
    if (left >= 0) rec(rec, left, 1);
  };
  auto positive = [&](auto&& self, int genus_left, int excess_left, Insertion min_ins) -> void {
    if (genus_left == 0) {
      genus_zero(excess_left);
      return;
    }
    for (int gj = min_ins.genus; gj <= genus_left; ++gj) {
      // at most genus_left further insertions of index 0 can each give back one unit
      int max_index = excess_left + genus_left + 1;
      for (int a = (gj == min_ins.genus ? min_ins.index : 0); a <= max_index; ++a) {
        cur.push_back({gj, a});
        self(self, genus_left - gj, excess_left - (a - 1), Insertion{gj, a});
        cur.pop_back();
      }
    }
  };
  positive(positive, genus_total, budget, Insertion{1, 0});
}

Rational multiset_symmetry(const std::vector<Insertion>& ins) {
  std::vector<Insertion> sorted = ins;
  std::sort(sorted.begin(), sorted.end());
  Rational sym(1);
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    sym /= Rational::factorial(static_cast<int>(j - i));
    i = j;
  }
  return sym;
}

}  // namespace

LaurentTS shifted_kw_ancestor(int g, const std::vector<int>& ls) {
  const int n = static_cast<int>(ls.size());
  if (n < 1 || 2 * g - 2 + n <= 0) throw DomainError("shifted_kw_ancestor needs n >= 1 and a stable (g, n)");
  const int lsum = std::accumulate(ls.begin(), ls.end(), 0);
  LaurentTS out;
  for (int big_g = 0; big_g <= g; ++big_g) {
    int budget = 3 * big_g - 3 + n - lsum;
    for_each_insertion_multiset(g - big_g, budget, [&](const std::vector<Insertion>& ins) {
      int m = static_cast<int>(ins.size());
      if (2 * big_g - 2 + n + m <= 0) return;
      std::vector<int> ks = ls;
      for (auto& x : ins) ks.push_back(x.index);
      Rational corr = psi::wk_correlator(big_g, ks);
      if (corr.is_zero()) return;
      LaurentTS term = LaurentTS::monomial(corr * multiset_symmetry(ins), 0, 2 * big_g - 2 + n + m);
      for (auto& x : ins) {
        term = term * (-hat_P(x.index, x.genus));
        if (term.is_zero()) return;
      }
      out += term;
    });
  }
  return out;
}

exact::QPoly shifted_kw_ancestor_at_t_zero(int g, const std::vector<int>& ls) {
  const int n = static_cast<int>(ls.size());
  if (n < 1 || 2 * g - 2 + n <= 0) throw DomainError("shifted_kw_ancestor_at_t_zero needs n >= 1 and a stable (g, n)");
  const int lsum = std::accumulate(ls.begin(), ls.end(), 0);
  exact::QPoly out;
  for_each_insertion_multiset(0, 3 * g - 3 + n - lsum, [&](const std::vector<Insertion>& ins) {
    int m = static_cast<int>(ins.size());
    if (2 * g - 2 + n + m <= 0) return;
    std::vector<int> ks = ls;
    Rational coeff = multiset_symmetry(ins);
    int q_power = 2 * g - 2 + n + m;
    coeff *= minus_one_pow(q_power);
    for (auto& x : ins) {
      ks.push_back(x.index);
      coeff *= Rational::factorial(x.index - 1);
      q_power -= x.index;
    }
    coeff *= psi::wk_correlator(g, ks);
    out += exact::QPoly::monomial(coeff, q_power);
  });
  return out;
}

}  // namespace moduli::spin
