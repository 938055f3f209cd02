#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "moduli/exact/laurent.hpp"
#include "moduli/exact/rational.hpp"

namespace moduli::tr {

using exact::Param;
using exact::Rational;

// One byte per variable: order * 4 + pole index. Up to eight variables.
using TermKey = std::uint64_t;
constexpr int kMaxVariables = 8;
constexpr int kMaxOrder = 63;

inline std::uint8_t make_code(int pole, int order) { return static_cast<std::uint8_t>(order * 4 + pole); }
inline int code_pole(std::uint8_t code) { return code & 3; }
inline int code_order(std::uint8_t code) { return code >> 2; }
inline std::uint8_t code_at(TermKey k, int pos) { return static_cast<std::uint8_t>((k >> (8 * pos)) & 0xff); }
inline TermKey place(std::uint8_t code, int pos) { return static_cast<TermKey>(code) << (8 * pos); }

// omega_{g,n} = c^{-(2g-2+n)} sum_terms coeff prod_i dz_i / (z_i - p_i)^{o_i}
// with p_i taken from the curve's pole list.
class NPointDifferential {
 public:
  NPointDifferential() = default;
  NPointDifferential(int g, int n) : g_(g), n_(n) {}

  int g() const { return g_; }
  int n() const { return n_; }
  int c_power() const { return -(2 * g_ - 2 + n_); }
  const std::map<TermKey, Rational>& terms() const { return terms_; }
  std::map<TermKey, Rational>& mutable_terms() { return terms_; }

  // Full coefficient (with its power of c) of prod dz_i/(z_i - pole_i)^{order_i}.
  Param coefficient(const std::vector<std::pair<int, int>>& pole_orders) const;
  int max_order() const;
  bool residue_free() const;
  bool is_symmetric() const;

  // Structured text: header line then "pole:order,...;coefficient" per term.
  std::string export_text(const std::vector<Rational>& poles) const;

  friend bool operator==(const NPointDifferential&, const NPointDifferential&) = default;

 private:
  int g_ = 0, n_ = 0;
  std::map<TermKey, Rational> terms_;
};

}  // namespace moduli::tr
