#pragma once

#include <cstddef>
#include <filesystem>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "moduli/exact/rational.hpp"

namespace moduli::psi {

using exact::Rational;

// (genus, sorted psi exponents). Construction sorts.
struct CorrelatorKey {
  int genus = 0;
  std::vector<int> exponents;

  CorrelatorKey() = default;
  CorrelatorKey(int g, std::vector<int> ks);

  int points() const { return static_cast<int>(exponents.size()); }
  bool stable() const { return 2 * genus - 2 + points() > 0; }
  // Sum of exponents equals dim M_{g,n} = 3g - 3 + n.
  bool dimension_matches() const;

  friend bool operator==(const CorrelatorKey&, const CorrelatorKey&) = default;
  friend auto operator<=>(const CorrelatorKey&, const CorrelatorKey&) = default;
};

struct CorrelatorKeyHash {
  std::size_t operator()(const CorrelatorKey& k) const noexcept;
};

// Memoized Witten-Kontsevich numbers <tau_{k_1} ... tau_{k_n}>_g.
// Readers share a lock; new values are computed without holding it and
// inserted under an exclusive lock. Insertion is idempotent.
class CorrelatorTable {
 public:
  static constexpr const char* kFormatTag = "wkcache v1";

  CorrelatorTable() = default;
  CorrelatorTable(const CorrelatorTable&) = delete;
  CorrelatorTable& operator=(const CorrelatorTable&) = delete;

  // Throws DomainError when 2g - 2 + n <= 0. Returns 0 on dimension mismatch.
  Rational correlator(int g, std::span<const int> ks);
  Rational correlator(const CorrelatorKey& key);

  std::size_t size() const;
  // All memoized entries, sorted by key.
  std::vector<std::pair<CorrelatorKey, Rational>> entries() const;

  void save(const std::filesystem::path& path) const;
  // Merges entries from a cache file. Malformed lines, a wrong header, or an
  // entry contradicting an existing one raise LoadError.
  void load(const std::filesystem::path& path);

 private:
  Rational evaluate(const CorrelatorKey& key);
  Rational value_or_zero(int g, std::vector<int> ks);
  Rational dvv(const CorrelatorKey& key);
  void insert(const CorrelatorKey& key, const Rational& value);

  mutable std::shared_mutex mutex_;
  std::unordered_map<CorrelatorKey, Rational, CorrelatorKeyHash> memo_;
};

// Process-wide table used by the higher modules.
CorrelatorTable& shared_table();

Rational wk_correlator(int g, std::span<const int> ks);
inline Rational wk_correlator(int g, std::initializer_list<int> ks) {
  return wk_correlator(g, std::span<const int>(ks.begin(), ks.size()));
}

// <tau_0 X>_g = sum_j <X with k_j lowered by one>_g. Requires a 0 exponent.
std::vector<std::pair<CorrelatorKey, Rational>> string_reduce(const CorrelatorKey& key);
// <tau_1 X>_g = (2g - 2 + n - 1) <X>_g with n the number of points of the input.
std::pair<CorrelatorKey, Rational> dilaton_reduce(const CorrelatorKey& key);

}  // namespace moduli::psi
