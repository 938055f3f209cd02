#include "moduli/kappa/kappa.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

#include "moduli/errors.hpp"
#include "moduli/exact/series.hpp"
#include "moduli/psi/correlators.hpp"

namespace moduli::kappa {

KappaMonomial::KappaMonomial(std::vector<int> kappa_subscripts, std::vector<int> psi_exponents)
    : kappa(std::move(kappa_subscripts)), psi(std::move(psi_exponents)) {
  for (int b : kappa)
    if (b < 1) throw DomainError("kappa subscripts must be positive");
  for (int k : psi)
    if (k < 0) throw DomainError("psi exponents must be non-negative");
  std::sort(kappa.begin(), kappa.end());
}

int KappaMonomial::degree() const {
  return std::accumulate(kappa.begin(), kappa.end(), 0) + std::accumulate(psi.begin(), psi.end(), 0);
}

std::string KappaMonomial::str() const {
  std::ostringstream os;
  bool first = true;
  for (int b : kappa) {
    os << (first ? "" : "*") << "k" << b;
    first = false;
  }
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (psi[i] == 0) continue;
    os << (first ? "" : "*") << "psi" << i + 1;
    if (psi[i] != 1) os << "^" << psi[i];
    first = false;
  }
  return first ? "1" : os.str();
}

KappaMonomial operator*(const KappaMonomial& a, const KappaMonomial& b) {
  std::vector<int> kappa = a.kappa;
  kappa.insert(kappa.end(), b.kappa.begin(), b.kappa.end());
  std::vector<int> psi(std::max(a.psi.size(), b.psi.size()), 0);
  for (std::size_t i = 0; i < a.psi.size(); ++i) psi[i] += a.psi[i];
  for (std::size_t i = 0; i < b.psi.size(); ++i) psi[i] += b.psi[i];
  return KappaMonomial(std::move(kappa), std::move(psi));
}

KappaPolynomial::KappaPolynomial(const Rational& scalar) { add(KappaMonomial(), scalar); }

KappaPolynomial KappaPolynomial::term(const KappaMonomial& m, const Rational& c) {
  KappaPolynomial p;
  p.add(m, c);
  return p;
}

void KappaPolynomial::add(const KappaMonomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational KappaPolynomial::coefficient(const KappaMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

KappaPolynomial KappaPolynomial::graded_part(int degree) const {
  KappaPolynomial r;
  for (auto& [m, c] : terms_)
    if (m.degree() == degree) r.terms_.emplace(m, c);
  return r;
}

KappaPolynomial& KappaPolynomial::operator+=(const KappaPolynomial& o) {
  for (auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

KappaPolynomial operator-(KappaPolynomial a, const KappaPolynomial& b) {
  for (auto& [m, c] : b.terms_) a.add(m, -c);
  return a;
}

KappaPolynomial operator*(const KappaPolynomial& a, const KappaPolynomial& b) {
  KappaPolynomial r;
  for (auto& [ma, ca] : a.terms_)
    for (auto& [mb, cb] : b.terms_) r.add(ma * mb, ca * cb);
  return r;
}

KappaPolynomial operator*(KappaPolynomial a, const Rational& s) {
  if (s.is_zero()) return {};
  for (auto& [m, c] : a.terms_) c *= s;
  return a;
}

std::string KappaPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c << "*" << m.str();
  }
  return os.str();
}

std::vector<Rational> s_constants(int n) { return exact::log_of_factorial_series(n); }

std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left, int min_part) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = min_part; part <= left; ++part) {
      cur.push_back(part);
      self(self, left - part, part);
      cur.pop_back();
    }
  };
  if (n >= 0) rec(rec, n, 1);
  return out;
}

KappaPolynomial j_class(int p) {
  if (p < 0) throw DomainError("j_class: negative degree");
  if (p == 0) return KappaPolynomial(Rational(1));
  std::vector<Rational> s = s_constants(p);
  KappaPolynomial out;
  // exp(sum s_i kappa_i) = prod_i exp(s_i kappa_i)
  for (auto& lambda : partitions(p)) {
    Rational c(1);
    for (std::size_t i = 0; i < lambda.size();) {
      std::size_t j = i;
      while (j < lambda.size() && lambda[j] == lambda[i]) ++j;
      int m = static_cast<int>(j - i);
      c *= s[lambda[i] - 1].pow(m) / Rational::factorial(m);
      i = j;
    }
    out.add(KappaMonomial(lambda), c);
  }
  return out;
}

namespace {

std::mutex multiindex_mutex;
std::map<std::vector<int>, KappaPolynomial> multiindex_memo;

}  // namespace

KappaPolynomial multiindex_to_products(std::vector<int> indices) {
  if (indices.empty()) throw DomainError("multi-index kappa needs at least one index");
  for (int a : indices)
    if (a < 1) throw DomainError("kappa subscripts must be positive");
  std::sort(indices.begin(), indices.end());
  if (indices.size() == 1) return KappaPolynomial::term(KappaMonomial({indices[0]}));
  {
    std::lock_guard lock(multiindex_mutex);
    auto it = multiindex_memo.find(indices);
    if (it != multiindex_memo.end()) return it->second;
  }
  // kappa_{{a} u I} = kappa_a kappa_I + sum_{b in I} kappa_{(I \ b) u {a + b}}
  int a = indices.front();
  std::vector<int> rest(indices.begin() + 1, indices.end());
  KappaPolynomial out = KappaPolynomial::term(KappaMonomial({a})) * multiindex_to_products(rest);
  for (std::size_t j = 0; j < rest.size(); ++j) {
    std::vector<int> merged = rest;
    merged[j] += a;
    out += multiindex_to_products(merged);
  }
  std::lock_guard lock(multiindex_mutex);
  multiindex_memo.emplace(indices, out);
  return out;
}

KappaPolynomial j_class_via_multiindex(int p) {
  if (p < 0) throw DomainError("j_class_via_multiindex: negative degree");
  if (p == 0) return KappaPolynomial(Rational(1));
  KappaPolynomial out;
  // Ordered tuples (a_1..a_m) with sum p, grouped by their underlying multiset.
  for (auto& lambda : partitions(p)) {
    int m = static_cast<int>(lambda.size());
    Rational orderings = Rational::factorial(m);
    Rational weight(1);
    for (std::size_t i = 0; i < lambda.size();) {
      std::size_t j = i;
      while (j < lambda.size() && lambda[j] == lambda[i]) ++j;
      orderings /= Rational::factorial(static_cast<int>(j - i));
      i = j;
    }
    for (int a : lambda) weight *= Rational::factorial(a) * Rational(a % 2 ? 1 : -1);
    out += multiindex_to_products(lambda) * (orderings * weight / Rational::factorial(m));
  }
  return out;
}

Rational mixed_integral(int g, int n, const KappaMonomial& mono) {
  if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) throw DomainError("mixed_integral on unstable moduli space");
  std::vector<int> psi = mono.psi;
  if (psi.empty()) psi.assign(static_cast<std::size_t>(n), 0);
  if (static_cast<int>(psi.size()) != n) throw DomainError("mixed_integral: psi part has wrong length");
  if (mono.degree() != 3 * g - 3 + n) return Rational(0);
  if (mono.kappa.empty()) {
    if (n == 0) return Rational(0);
    return psi::wk_correlator(g, psi);
  }
  // kappa_{b_1}...kappa_{b_m} = sum over set partitions P of
  // (-1)^{m-|P|} kappa_{multi-index of block sums}, the inverse of the
  // cycle-sum expansion of multi-index kappas; the integral of a multi-index
  // kappa is one Witten-Kontsevich number. Partitions are merged by the
  // multiset of block subscript sums.
  std::map<std::vector<int>, Rational> states{{{}, Rational(1)}};
  for (int b : mono.kappa) {
    std::map<std::vector<int>, Rational> next;
    for (auto& [blocks, w] : states) {
      std::vector<int> fresh = blocks;
      fresh.push_back(b);
      std::sort(fresh.begin(), fresh.end());
      next[fresh] += w;
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i > 0 && blocks[i] == blocks[i - 1]) continue;
        long mult = std::count(blocks.begin(), blocks.end(), blocks[i]);
        std::vector<int> joined = blocks;
        joined[i] += b;
        std::sort(joined.begin(), joined.end());
        next[joined] += w * Rational(-mult);
      }
    }
    states = std::move(next);
  }
  Rational total;
  for (auto& [blocks, w] : states) {
    if (w.is_zero()) continue;
    std::vector<int> ks = psi;
    for (int sum : blocks) ks.push_back(1 + sum);
    total += w * psi::wk_correlator(g, ks);
  }
  return total;
}

Rational integrate(int g, int n, const KappaPolynomial& poly) {
  Rational total;
  for (auto& [m, c] : poly.terms()) total += c * mixed_integral(g, n, m);
  return total;
}

Rational pair_j(int g, int n, int p, const KappaMonomial& complement) {
  if (complement.degree() != 3 * g - 3 + n - p)
    throw DomainError("pair_j: complement has degree " + std::to_string(complement.degree()) + ", expected " +
                      std::to_string(3 * g - 3 + n - p));
  std::vector<int> psi = complement.psi;
  if (psi.empty()) psi.assign(static_cast<std::size_t>(n), 0);
  Rational total;
  const KappaPolynomial j = j_class(p);
  for (auto& [m, c] : j.terms())
    total += c * mixed_integral(g, n, KappaMonomial(m.kappa, {}) * KappaMonomial(complement.kappa, psi));
  return total;
}

std::vector<KappaMonomial> monomials_of_degree(int n, int degree) {
  std::vector<KappaMonomial> out;
  if (degree < 0) return out;
  for (int e = 0; e <= degree; ++e) {
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int left, int parts) -> void {
      if (parts == 0) {
        if (left == 0) comps.push_back(cur);
        return;
      }
      for (int v = 0; v <= left; ++v) {
        cur.push_back(v);
        self(self, left - v, parts - 1);
        cur.pop_back();
      }
    };
    rec(rec, degree - e, n);
    for (auto& lambda : partitions(e))
      for (auto& c : comps) out.emplace_back(lambda, c);
  }
  return out;
}

}  // namespace moduli::kappa
