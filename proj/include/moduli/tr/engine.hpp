#pragma once

#include <memory>
#include <string>

#include "moduli/tr/curve.hpp"
#include "moduli/tr/differential.hpp"

namespace moduli::tr {

// Topological recursion on a genus-zero curve. omega(g, n) computes every
// lower differential first; results are memoized and the object is safe to
// share between threads (computation is serialized).
class TREngine {
 public:
  explicit TREngine(SpectralCurve curve);
  ~TREngine();
  TREngine(const TREngine&) = delete;
  TREngine& operator=(const TREngine&) = delete;

  const SpectralCurve& curve() const;
  // Stable (g, n) only; n <= 8.
  const NPointDifferential& omega(int g, int n);

  // Bound on pole orders, 6g - 4 + 2n; exceeding it raises PoleOrderOverflow.
  static int pole_cap(int g, int n) { return 6 * g - 4 + 2 * n; }

  // Persist / restore computed differentials (one file per curve).
  void save(const std::string& path) const;
  void load(const std::string& path);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace moduli::tr
