#include "moduli/spin/jpipeline.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "moduli/errors.hpp"
#include "moduli/hodge/hodge.hpp"
#include "moduli/kappa/kappa.hpp"
#include "moduli/psi/correlators.hpp"
#include "moduli/spin/conventions.hpp"
#include "moduli/spin/localization.hpp"
#include "moduli/spin/transforms.hpp"

namespace moduli::spin {

namespace {

void require_stable(int g, int n, const char* who) {
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) throw DomainError(std::string(who) + ": unstable (g, n)");
}

}  // namespace

QPoly j_pipeline_ancestor(int g, const std::vector<int>& ls) {
  const int n = static_cast<int>(ls.size());
  require_stable(g, n, "j_pipeline_ancestor");
  for (int l : ls)
    if (l < 0) return QPoly();
  int p = 3 * g - 3 + n - std::accumulate(ls.begin(), ls.end(), 0);
  int d = 2 * g - 2 + n - p;
  if (p < 0 || d < 0) return QPoly();
  // the triangular transforms hit the same sorted tuples many times
  static std::mutex mu;
  static std::map<std::pair<int, std::vector<int>>, QPoly> memo;
  std::vector<int> sorted = ls;
  std::sort(sorted.begin(), sorted.end());
  auto key = std::make_pair(g, sorted);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  Rational v = kappa::pair_j(g, n, p, kappa::KappaMonomial({}, sorted));
  QPoly out = QPoly::monomial(Signs::j_pipeline(g, d) * v, d);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(std::move(key), out);
  return out;
}

QPoly j_pipeline_descendant(int g, const std::vector<int>& ks) {
  require_stable(g, static_cast<int>(ks.size()), "j_pipeline_descendant");
  return des_from_anc<QPoly>(ks, [g](const std::vector<int>& ls) { return j_pipeline_ancestor(g, ls); });
}

LaurentTQ equiv_descendant_full(int g, const std::vector<int>& ks) {
  const int n = static_cast<int>(ks.size());
  require_stable(g, n, "equiv_descendant_full");
  LaurentTQ out = localization_descendant(g, ks);
  psi::CorrelatorKey key(g, ks);
  if (key.dimension_matches()) out += LaurentTQ::monomial(psi::wk_correlator(g, ks), 2 * g - 2 + n, 0);
  return out;
}

LaurentTQ equiv_ancestor(int g, const std::vector<int>& ls) {
  return anc_from_des<LaurentTQ>(ls, [g](const std::vector<int>& ks) { return equiv_descendant_full(g, ks); });
}

T0Check t0_sd_coefficient(int g, const std::vector<int>& ls) {
  const int n = static_cast<int>(ls.size());
  if (n < 1) throw DomainError("t0_sd_coefficient needs n >= 1");
  require_stable(g, n, "t0_sd_coefficient");
  T0Check r;
  r.g = g;
  r.ls = ls;
  r.d = total_degree(g, ls);
  if (n == 1 && r.d > 0) {
    r.skipped = true;
    return r;
  }
  if (r.d >= 0) {
    // [T^0 S^d] P = (-1)^d [Q^d] P(0, Q)
    QPoly at_zero = exact::restrict_t_zero(equiv_ancestor(g, ls));
    r.observed = minus_one_pow(r.d) * at_zero.coefficient(r.d);
  }
  int p = 2 * g - 2 + n - r.d;
  if (r.d >= 0 && p >= 0) r.predicted = kappa::pair_j(g, n, p, kappa::KappaMonomial({}, ls));
  if (n == 1 && r.d == 0 && g >= 1) r.predicted += minus_one_pow(g) * hodge::one_point_hodge(hodge::HodgeKey(g, g - 1, g - 1));
  return r;
}

std::string T0Check::str() const {
  std::ostringstream os;
  os << "g=" << g << " l=(";
  for (std::size_t i = 0; i < ls.size(); ++i) os << (i ? "," : "") << ls[i];
  os << ") d=" << d;
  if (skipped) os << " skipped (n=1, d>0)";
  else os << " observed=" << observed << " predicted=" << predicted;
  return os.str();
}

}  // namespace moduli::spin
