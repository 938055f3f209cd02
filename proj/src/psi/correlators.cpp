#include "moduli/psi/correlators.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

#include "moduli/errors.hpp"

namespace moduli::psi {

CorrelatorKey::CorrelatorKey(int g, std::vector<int> ks) : genus(g), exponents(std::move(ks)) {
  std::sort(exponents.begin(), exponents.end());
}

bool CorrelatorKey::dimension_matches() const {
  long sum = 0;
  for (int k : exponents) sum += k;
  return sum == 3L * genus - 3 + points();
}

std::size_t CorrelatorKeyHash::operator()(const CorrelatorKey& k) const noexcept {
  std::size_t h = std::hash<int>()(k.genus) * 0x9e3779b97f4a7c15ULL;
  for (int e : k.exponents) h = (h ^ std::hash<int>()(e)) * 0x100000001b3ULL + 0x9e3779b9;
  return h;
}

namespace {

Rational odd_df(int m) { return Rational::double_factorial_odd(m); }  // (2m - 1)!!

std::vector<int> without_index(const std::vector<int>& v, std::size_t i) {
  std::vector<int> out;
  out.reserve(v.size() - 1);
  for (std::size_t j = 0; j < v.size(); ++j)
    if (j != i) out.push_back(v[j]);
  return out;
}

}  // namespace

Rational CorrelatorTable::correlator(int g, std::span<const int> ks) {
  return correlator(CorrelatorKey(g, std::vector<int>(ks.begin(), ks.end())));
}

Rational CorrelatorTable::correlator(const CorrelatorKey& key) {
  if (key.genus < 0 || !key.stable())
    throw DomainError("correlator requested on unstable moduli space (g=" + std::to_string(key.genus) +
                      ", n=" + std::to_string(key.points()) + ")");
  for (int k : key.exponents)
    if (k < 0) throw DomainError("negative psi exponent");
  return evaluate(key);
}

Rational CorrelatorTable::value_or_zero(int g, std::vector<int> ks) {
  CorrelatorKey key(g, std::move(ks));
  if (g < 0 || !key.stable()) return Rational(0);
  if (!key.exponents.empty() && key.exponents.front() < 0) return Rational(0);
  return evaluate(key);
}

Rational CorrelatorTable::evaluate(const CorrelatorKey& key) {
  if (!key.dimension_matches()) return Rational(0);
  const int g = key.genus, n = key.points();
  if (g == 0 && n == 3) return Rational(1);
  if (g == 1 && n == 1) return Rational(1, 24);
  {
    std::shared_lock lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  Rational value;
  const auto& ks = key.exponents;
  if (ks.front() == 0) {
    for (auto& [sub, coeff] : string_reduce(key)) value += coeff * value_or_zero(sub.genus, sub.exponents);
  } else if (ks.front() == 1) {
    auto [sub, coeff] = dilaton_reduce(key);
    value = coeff * value_or_zero(sub.genus, sub.exponents);
  } else {
    value = dvv(key);
  }
  insert(key, value);
  return value;
}

// <tau_{k+1} tau_K>_g (2k+3)!! =
//   sum_j (2k+2k_j+1)!!/(2k_j-1)!! <tau_{k+k_j} tau_{K\j}>_g
//   + 1/2 sum_{r+s=k-1} (2r+1)!!(2s+1)!! [<tau_r tau_s tau_K>_{g-1}
//                                          + sum <tau_r tau_I>_{g1} <tau_s tau_J>_{g2}]
Rational CorrelatorTable::dvv(const CorrelatorKey& key) {
  const int g = key.genus;
  std::vector<int> rest(key.exponents.begin(), key.exponents.end() - 1);
  const int k = key.exponents.back() - 1;

  Rational total;
  for (std::size_t j = 0; j < rest.size(); ++j) {
    if (j > 0 && rest[j] == rest[j - 1]) continue;
    long mult = std::count(rest.begin(), rest.end(), rest[j]);
    std::vector<int> sub = without_index(rest, j);
    sub.push_back(k + rest[j]);
    Rational w = odd_df(k + rest[j] + 1) / odd_df(rest[j]) * Rational(mult);
    total += w * value_or_zero(g, std::move(sub));
  }

  // distinct values of K with multiplicities, for sub-multiset splittings
  std::vector<std::pair<int, int>> groups;
  for (int e : rest) {
    if (!groups.empty() && groups.back().first == e) ++groups.back().second;
    else groups.emplace_back(e, 1);
  }

  Rational quadratic;
  for (int r = 0; r <= k - 1; ++r) {
    int s = k - 1 - r;
    Rational w = odd_df(r + 1) * odd_df(s + 1);
    Rational inner;
    if (g >= 1) {
      std::vector<int> sub = rest;
      sub.push_back(r);
      sub.push_back(s);
      inner += value_or_zero(g - 1, std::move(sub));
    }
    std::vector<int> choice(groups.size(), 0);
    while (true) {
      std::vector<int> left{r}, right{s};
      Rational weight(1);
      for (std::size_t i = 0; i < groups.size(); ++i) {
        weight *= Rational::binomial(groups[i].second, choice[i]);
        for (int c = 0; c < choice[i]; ++c) left.push_back(groups[i].first);
        for (int c = choice[i]; c < groups[i].second; ++c) right.push_back(groups[i].first);
      }
      long left_sum = 0;
      for (int e : left) left_sum += e;
      for (int g1 = 0; g1 <= g; ++g1) {
        // dimension gate for the left factor
        if (left_sum != 3L * g1 - 3 + static_cast<long>(left.size())) continue;
        Rational a = value_or_zero(g1, left);
        if (a.is_zero()) continue;
        inner += weight * a * value_or_zero(g - g1, right);
      }
      std::size_t i = 0;
      while (i < groups.size() && choice[i] == groups[i].second) choice[i++] = 0;
      if (i == groups.size()) break;
      ++choice[i];
    }
    quadratic += w * inner;
  }
  total += quadratic * Rational(1, 2);
  return total / odd_df(k + 2);
}

void CorrelatorTable::insert(const CorrelatorKey& key, const Rational& value) {
  std::unique_lock lock(mutex_);
  auto [it, inserted] = memo_.emplace(key, value);
  if (!inserted && it->second != value) throw InternalError("correlator memo: conflicting values");
}

std::size_t CorrelatorTable::size() const {
  std::shared_lock lock(mutex_);
  return memo_.size();
}

std::vector<std::pair<CorrelatorKey, Rational>> CorrelatorTable::entries() const {
  std::vector<std::pair<CorrelatorKey, Rational>> out;
  {
    std::shared_lock lock(mutex_);
    out.assign(memo_.begin(), memo_.end());
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
  return out;
}

void CorrelatorTable::save(const std::filesystem::path& path) const {
  std::ofstream os(path);
  if (!os) throw LoadError("cannot write correlator cache " + path.string());
  os << kFormatTag << "\n";
  for (auto& [key, value] : entries()) {
    os << key.genus << ";";
    for (std::size_t i = 0; i < key.exponents.size(); ++i) os << (i ? "," : "") << key.exponents[i];
    os << ";" << value.pq() << "\n";
  }
}

void CorrelatorTable::load(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw LoadError("cannot open correlator cache " + path.string());
  std::string line;
  if (!std::getline(is, line) || line != kFormatTag)
    throw LoadError("correlator cache " + path.string() + ": expected header '" + kFormatTag + "'");
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto bad = [&](const std::string& why) {
      return LoadError("correlator cache " + path.string() + ":" + std::to_string(lineno) + ": " + why);
    };
    auto p1 = line.find(';');
    auto p2 = line.find(';', p1 == std::string::npos ? p1 : p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos) throw bad("expected g;k1,...,kn;p/q");
    CorrelatorKey key;
    std::vector<int> ks;
    Rational value;
    try {
      std::size_t used = 0;
      std::string gs = line.substr(0, p1);
      int g = std::stoi(gs, &used);
      if (used != gs.size()) throw bad("bad genus");
      std::stringstream kstream(line.substr(p1 + 1, p2 - p1 - 1));
      std::string item;
      while (std::getline(kstream, item, ',')) {
        int k = std::stoi(item, &used);
        if (used != item.size() || k < 0) throw bad("bad exponent");
        ks.push_back(k);
      }
      key = CorrelatorKey(g, std::move(ks));
      value = Rational::parse(line.substr(p2 + 1));
    } catch (const LoadError&) {
      throw;
    } catch (const std::exception& e) {
      throw bad(e.what());
    }
    if (key.genus < 0 || !key.stable()) throw bad("unstable key");
    try {
      insert(key, value);
    } catch (const InternalError&) {
      throw bad("entry conflicts with an existing value");
    }
  }
}

CorrelatorTable& shared_table() {
  static CorrelatorTable table;
  return table;
}

Rational wk_correlator(int g, std::span<const int> ks) { return shared_table().correlator(g, ks); }

std::vector<std::pair<CorrelatorKey, Rational>> string_reduce(const CorrelatorKey& key) {
  auto& ks = key.exponents;
  auto zero = std::find(ks.begin(), ks.end(), 0);
  if (zero == ks.end()) throw DomainError("string_reduce: no tau_0 insertion");
  std::vector<int> rest = without_index(ks, static_cast<std::size_t>(zero - ks.begin()));
  std::vector<std::pair<CorrelatorKey, Rational>> out;
  for (std::size_t j = 0; j < rest.size(); ++j) {
    if (rest[j] == 0) continue;
    if (j > 0 && rest[j] == rest[j - 1]) continue;
    long mult = std::count(rest.begin(), rest.end(), rest[j]);
    std::vector<int> sub = rest;
    --sub[j];
    out.emplace_back(CorrelatorKey(key.genus, std::move(sub)), Rational(mult));
  }
  return out;
}

std::pair<CorrelatorKey, Rational> dilaton_reduce(const CorrelatorKey& key) {
  auto& ks = key.exponents;
  auto one = std::find(ks.begin(), ks.end(), 1);
  if (one == ks.end()) throw DomainError("dilaton_reduce: no tau_1 insertion");
  std::vector<int> rest = without_index(ks, static_cast<std::size_t>(one - ks.begin()));
  int n_rest = static_cast<int>(rest.size());
  return {CorrelatorKey(key.genus, std::move(rest)), Rational(2 * key.genus - 2 + n_rest)};
}

}  // namespace moduli::psi
