#include "moduli/hodge/hodge.hpp"

#include <fstream>
#include <mutex>
#include <sstream>
#include <vector>

#include "moduli/errors.hpp"

namespace moduli::hodge {

Rational bernoulli(int l) {
  if (l < 0) throw DomainError("bernoulli: negative index");
  static std::mutex mutex;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard lock(mutex);
  // sum_{j=0}^{m} C(m+1, j) B_j = m + 1 for the B_1 = +1/2 convention
  while (static_cast<int>(cache.size()) <= l) {
    int m = static_cast<int>(cache.size());
    Rational acc;
    for (int j = 0; j < m; ++j) acc += Rational::binomial(m + 1, j) * cache[j];
    cache.push_back((Rational(m + 1) - acc) / Rational(m + 1));
  }
  return cache[l];
}

HodgeKey::HodgeKey(int g_, int a_) : HodgeKey(g_, a_, 2 * g_ - 2 - a_) {}

HodgeKey::HodgeKey(int g_, int a_, int k_) : g(g_), a(a_), k(k_) {
  if (g < 1 || a < 0 || a > g - 1 || k != 2 * g - 2 - a)
    throw DomainError("invalid Hodge key " + str());
}

std::string HodgeKey::str() const {
  return "(g=" + std::to_string(g) + ", a=" + std::to_string(a) + ", k=" + std::to_string(k) + ")";
}

HodgeUnsupported::HodgeUnsupported(const HodgeKey& key, const std::string& context)
    : std::runtime_error("hodge-unsupported " + key.str() + (context.empty() ? "" : " in " + context)), key_(key) {}

namespace {

bool has_closed_form(int g, int a) { return a == 0 || a == g - 1; }

Rational closed_form(int g, int a) {
  Rational b = bernoulli(2 * g);
  if (b.sign() < 0) b = -b;
  Rational two_pow = Rational(2).pow(2 * g - 1);
  if (a == g - 1)
    return b / (two_pow * Rational::double_factorial_odd(g) * Rational(2 * g));
  return (two_pow - Rational(1)) / two_pow * b / Rational::factorial(2 * g);
}

}  // namespace

bool HodgeOracle::supports(int g, int a) const {
  return has_closed_form(g, a) || table_.count({g, a}) > 0;
}

bool HodgeOracle::supports_genus(int g) const {
  for (int h = 1; h <= g; ++h)
    for (int a = 0; a < h; ++a)
      if (!supports(h, a)) return false;
  return true;
}

Rational HodgeOracle::one_point(const HodgeKey& key) const {
  if (has_closed_form(key.g, key.a)) return closed_form(key.g, key.a);
  auto it = table_.find({key.g, key.a});
  if (it == table_.end()) throw HodgeUnsupported(key);
  return it->second;
}

void HodgeOracle::load_table(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw LoadError("cannot open Hodge table " + path.string());
  std::string line;
  if (!std::getline(is, line) || line != kFormatTag)
    throw LoadError("Hodge table " + path.string() + ": expected header '" + kFormatTag + "'");
  std::map<std::pair<int, int>, Rational> staged = table_;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto bad = [&](const std::string& why) {
      return LoadError("Hodge table " + path.string() + ":" + std::to_string(lineno) + ": " + why);
    };
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ';')) fields.push_back(item);
    if (fields.size() != 4) throw bad("expected g;a;k;p/q");
    int g, a, k;
    Rational value;
    try {
      g = std::stoi(fields[0]);
      a = std::stoi(fields[1]);
      k = std::stoi(fields[2]);
      value = Rational::parse(fields[3]);
      HodgeKey check(g, a, k);
    } catch (const std::exception& e) {
      throw bad(e.what());
    }
    if (has_closed_form(g, a)) {
      if (value != closed_form(g, a)) throw bad("value contradicts the closed formula");
      continue;
    }
    auto [it, inserted] = staged.emplace(std::make_pair(g, a), value);
    if (!inserted && it->second != value) throw bad("conflicting entry");
  }
  table_ = std::move(staged);
}

HodgeOracle& shared_oracle() {
  static HodgeOracle oracle;
  return oracle;
}

}  // namespace moduli::hodge
