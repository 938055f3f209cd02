#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "moduli/exact/rational.hpp"

namespace moduli::hodge {

using exact::Rational;

// Bernoulli numbers with sum B_l t^l / l! = t e^t / (e^t - 1), so B_1 = +1/2.
Rational bernoulli(int l);

// Integral over M_{g,1} of psi^k lambda_g lambda_a with k + a = 2g - 2.
struct HodgeKey {
  int g;
  int a;
  int k;

  HodgeKey(int g, int a);  // k is implied
  HodgeKey(int g, int a, int k);
  std::string str() const;
  friend auto operator<=>(const HodgeKey&, const HodgeKey&) = default;
};

// Raised for keys that neither closed formula nor a loaded table covers.
class HodgeUnsupported : public std::runtime_error {
 public:
  explicit HodgeUnsupported(const HodgeKey& key, const std::string& context = "");
  const HodgeKey& key() const { return key_; }

 private:
  HodgeKey key_;
};

// Closed formulas for a = 0 and a = g - 1 plus an optional user table.
// lambda_0 = 1, so a = 0 means lambda_g alone.
class HodgeOracle {
 public:
  static constexpr const char* kFormatTag = "hodge v1";

  Rational one_point(const HodgeKey& key) const;
  bool supports(int g, int a) const;
  // True when every a in [0, g-1] is supported for every genus up to g.
  bool supports_genus(int g) const;

  // Adds table entries (`g;a;k;p/q` lines after a `hodge v1` header). An entry
  // disagreeing with a closed formula raises LoadError.
  void load_table(const std::filesystem::path& path);

 private:
  std::map<std::pair<int, int>, Rational> table_;
};

// Shared oracle used by the localization code; tables are loaded once at
// startup before any concurrent use.
HodgeOracle& shared_oracle();
inline Rational one_point_hodge(const HodgeKey& key) { return shared_oracle().one_point(key); }

}  // namespace moduli::hodge
