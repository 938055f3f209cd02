#include "moduli/tr/expansion.hpp"

#include <algorithm>
#include <unordered_map>

#include "moduli/errors.hpp"
#include "moduli/spin/conventions.hpp"

namespace moduli::tr {

using exact::TruncSeries;

QPoly DescendantTable::at(const std::vector<int>& ks) const {
  auto it = values.find(ks);
  if (it == values.end()) throw DomainError("descendant table: index out of range");
  return it->second;
}

namespace {

std::vector<Rational> strip(const exact::ZPoly& p, int power) {
  std::vector<Rational> out;
  for (auto& c : p.coefficients()) {
    if (c.is_zero()) out.emplace_back(0);
    else if (c.is_monomial() && c.lowest_exponent() == power) out.push_back(c.coefficient(power));
    else throw ConventionError("expansion: x is not c times a rational function");
  }
  return out;
}

// z as a series in v = c/x = 1/x0(z) near z = 0.
TruncSeries<Rational> z_of_v(const SpectralCurve& curve, int order) {
  if (curve.x_c_power != 1) throw ConventionError("expansion needs x = c * x0(z)");
  std::vector<Rational> num = strip(curve.x.numerator(), 1), den = strip(curve.x.denominator(), 0);
  // 1/x0 = den/num; x0 must have a simple pole at 0
  if (den.empty() || !den[0].is_zero() || den.size() < 2 || den[1].is_zero() || num.empty() || num[0].is_zero())
    throw ConventionError("expansion: x0 must have a simple pole at z = 0");
  TruncSeries<Rational> d("z", order), nu("z", order);
  for (std::size_t i = 0; i < den.size() && static_cast<int>(i) < order; ++i) d[static_cast<int>(i)] = den[i];
  for (std::size_t i = 0; i < num.size() && static_cast<int>(i) < order; ++i) nu[static_cast<int>(i)] = num[i];
  TruncSeries<Rational> v_of_z = d * nu.inverse();
  return v_of_z.reversion("v");
}

// For dz/(z - p)^o: coefficients a_j of v^j dv, j < order.
std::vector<Rational> basis_in_v(const TruncSeries<Rational>& z, const Rational& p, int o) {
  int order = z.order();
  if (p.is_zero()) throw ConventionError("expansion: pole at the expansion point");
  // 1/(z - p)^o = (-p)^{-o} (1 - z/p)^{-o}
  TruncSeries<Rational> base = TruncSeries<Rational>::constant("v", Rational(1), order) - z * p.inverse();
  TruncSeries<Rational> inv = base.inverse();
  TruncSeries<Rational> f = TruncSeries<Rational>::constant("v", Rational(1), order);
  for (int i = 0; i < o; ++i) f = f * inv;
  f = f * (-p).inverse().pow(o);
  TruncSeries<Rational> g = f * z.derivative().truncated(order);
  std::vector<Rational> out(static_cast<std::size_t>(order));
  for (int j = 0; j < order && j < g.order(); ++j) out[static_cast<std::size_t>(j)] = g[j];
  return out;
}

QPoly q_scale(const Rational& value, int g, int n, int d) {
  // c^{2d} = (-Q/2)^d, then 1/2^{2g-2+n}
  if (value.is_zero()) return QPoly();
  Rational v = value * Rational(-1, 2).pow(d) / Rational(2).pow(2 * g - 2 + n) * spin::Signs::tr_basis(g, n);
  return QPoly::monomial(v, d);
}

}  // namespace

DescendantTable expand_descendants(const SpectralCurve& curve, const NPointDifferential& omega, int kmax) {
  const int g = omega.g(), n = omega.n();
  if (kmax < 0 || kmax > 100) throw DomainError("expand_descendants: kmax out of range");
  const int order = 2 * kmax + 3;
  TruncSeries<Rational> z = z_of_v(curve, order);
  // even[code][k] = a_{2k}/(2k+1)!!, odd[code][k] = a_{2k+1}
  std::map<std::uint8_t, std::vector<Rational>> even, odd;
  for (auto& [key, c] : omega.terms())
    for (int i = 0; i < n; ++i) {
      std::uint8_t code = code_at(key, i);
      if (even.count(code)) continue;
      auto a = basis_in_v(z, curve.poles.at(static_cast<std::size_t>(code_pole(code))), code_order(code));
      std::vector<Rational> e(static_cast<std::size_t>(kmax + 1)), o(static_cast<std::size_t>(kmax + 1));
      for (int k = 0; k <= kmax; ++k) {
        e[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(2 * k)] / Rational::double_factorial_odd(k + 1);
        o[static_cast<std::size_t>(k)] = a[static_cast<std::size_t>(2 * k + 1)];
      }
      even[code] = std::move(e);
      odd[code] = std::move(o);
    }

  // Odd powers in z_1: the other factors are independent differentials, so the
  // check holds separately for each tuple of remaining pole codes.
  {
    std::unordered_map<TermKey, std::vector<Rational>> by_rest;
    for (auto& [key, c] : omega.terms()) {
      auto& acc = by_rest[key & ~place(0xff, 0)];
      acc.resize(static_cast<std::size_t>(kmax + 1));
      const auto& o = odd.at(code_at(key, 0));
      for (int k = 0; k <= kmax; ++k) acc[static_cast<std::size_t>(k)] += c * o[static_cast<std::size_t>(k)];
    }
    for (auto& [rest, acc] : by_rest)
      for (auto& v : acc)
        if (!v.is_zero()) throw ConventionError("expansion: odd power of 1/x survives");
  }

  // omega is symmetric (checked by the engine), so contract only k_1 <= ... <= k_n;
  // byte i switches from pole code to k
  std::unordered_map<TermKey, Rational> state(omega.terms().begin(), omega.terms().end());
  for (int i = 0; i < n; ++i) {
    std::unordered_map<TermKey, Rational> next;
    for (auto& [key, c] : state) {
      const auto& vec = even.at(code_at(key, i));
      int lo = i ? code_at(key, i - 1) : 0;
      TermKey base = key & ~place(0xff, i);
      for (int k = lo; k <= kmax; ++k) {
        const Rational& f = vec[static_cast<std::size_t>(k)];
        if (f.is_zero()) continue;
        auto [it, inserted] = next.try_emplace(base | place(static_cast<std::uint8_t>(k), i), c * f);
        if (!inserted) it->second += c * f;
      }
    }
    state = std::move(next);
  }

  DescendantTable table;
  table.g = g;
  table.n = n;
  table.kmax = kmax;
  std::vector<int> ks(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<int> sorted = ks;
    std::sort(sorted.begin(), sorted.end());
    TermKey key = 0;
    int sum = 0;
    for (int i = 0; i < n; ++i) {
      key |= place(static_cast<std::uint8_t>(sorted[static_cast<std::size_t>(i)]), i);
      sum += sorted[static_cast<std::size_t>(i)];
    }
    auto it = state.find(key);
    table.values[ks] = it == state.end() ? QPoly() : q_scale(it->second, g, n, sum - g + 1);
    int i = 0;
    while (i < n && ks[static_cast<std::size_t>(i)] == kmax) ks[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
    ++ks[static_cast<std::size_t>(i)];
  }
  return table;
}

namespace {

// Dense bivariate series, total degree < N.
struct Bi {
  int N;
  std::vector<std::vector<Rational>> a;
  explicit Bi(int n) : N(n), a(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n))) {}
  Rational& operator()(int i, int j) { return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  const Rational& operator()(int i, int j) const { return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  friend Bi operator*(const Bi& x, const Bi& y) {
    Bi r(x.N);
    for (int i1 = 0; i1 < x.N; ++i1)
      for (int j1 = 0; i1 + j1 < x.N; ++j1) {
        if (x(i1, j1).is_zero()) continue;
        for (int i2 = 0; i1 + i2 < x.N; ++i2)
          for (int j2 = 0; i1 + j1 + i2 + j2 < x.N; ++j2)
            if (!y(i2, j2).is_zero()) r(i1 + i2, j1 + j2) += x(i1, j1) * y(i2, j2);
      }
    return r;
  }
  Bi& operator+=(const Bi& y) {
    for (int i = 0; i < N; ++i)
      for (int j = 0; i + j < N; ++j) (*this)(i, j) += y(i, j);
    return *this;
  }
  Bi scaled(const Rational& s) const {
    Bi r = *this;
    for (auto& row : r.a)
      for (auto& v : row) v *= s;
    return r;
  }
  // log of a series with constant term 1
  Bi log() const {
    if ((*this)(0, 0) != Rational(1)) throw InternalError("bivariate log needs constant term 1");
    Bi x = *this;
    x(0, 0) = Rational(0);
    Bi out(N), power = x;
    for (int j = 1; j < N; ++j) {
      out += power.scaled(Rational(j % 2 ? 1 : -1, j));
      power = power * x;
    }
    return out;
  }
};

}  // namespace

DescendantTable expand_omega02(const SpectralCurve& curve, int kmax) {
  const int N = 4 * kmax + 4;
  TruncSeries<Rational> z = z_of_v(curve, N + 1);
  Bi z1(N), z2(N);
  for (int i = 1; i < N; ++i) {
    z1(i, 0) = z[i];
    z2(0, i) = z[i];
  }
  // (z1 - z2)/(v1 - v2) = sum_m z_m h_{m-1}(v1, v2)
  Bi diag(N);
  for (int m = 1; m <= N; ++m)
    for (int i = 0; i <= m - 1 && i < N; ++i)
      if (m - 1 < N) diag(i, m - 1 - i) += z[m];
  Bi total = diag.log();
  // other group elements: d1 d2 log(a z1 + b - c z1 z2 - d z2), normalized by b
  for (std::size_t gi = 1; gi < curve.group.size(); ++gi) {
    const Mobius& phi = curve.group[gi];
    if (phi.b.is_zero()) throw ConventionError("expand_omega02: group element fixes the expansion point");
    Bi f(N);
    Bi prod = z1 * z2;
    f(0, 0) = phi.b;
    f += z1.scaled(phi.a);
    f += prod.scaled(-phi.c);
    f += z2.scaled(-phi.d);
    total += f.scaled(phi.b.inverse()).log();
  }
  DescendantTable table;
  table.g = 0;
  table.n = 2;
  table.kmax = kmax;
  for (int k1 = 0; k1 <= kmax; ++k1)
    for (int k2 = 0; k2 <= kmax; ++k2) {
      // coefficient of v1^{2k1} v2^{2k2} dv1 dv2
      Rational h = total(2 * k1 + 1, 2 * k2 + 1) * Rational((2 * k1 + 1) * (2 * k2 + 1));
      Rational oddpart = total(2 * k1 + 2, 2 * k2 + 1) * Rational((2 * k1 + 2) * (2 * k2 + 1));
      if (2 * k1 + 2 + 2 * k2 + 1 < N && !oddpart.is_zero()) throw ConventionError("expand_omega02: odd power of 1/x survives");
      h /= Rational::double_factorial_odd(k1 + 1) * Rational::double_factorial_odd(k2 + 1);
      table.values[{k1, k2}] = q_scale(h, 0, 2, k1 + k2 + 1);  // sign per variable squares away
    }
  return table;
}

QPoly omega02_closed_form(int k1, int k2) {
  int m = k1 + k2 + 1;
  return QPoly::monomial(Rational(-1).pow(m) / (Rational(m) * Rational::factorial(k1) * Rational::factorial(k2)), m);
}

NPointDifferential pullback_to_spin(const NPointDifferential& kn, const SpectralCurve& spin) {
  const int n = kn.n();
  // du/u^j with u = z - 1/z is (z^2 + 1) z^{j-2} / (z^2 - 1)^j dz; pole parts at +-1
  std::map<int, std::vector<std::pair<std::uint8_t, Rational>>> parts;
  auto pole_parts = [&](int j) -> const std::vector<std::pair<std::uint8_t, Rational>>& {
    auto it = parts.find(j);
    if (it != parts.end()) return it->second;
    std::vector<std::pair<std::uint8_t, Rational>> out;
    for (int sign : {1, -1}) {
      Rational p(sign);
      int pi = spin.pole_index(p);
      if (pi < 0) throw InternalError("pullback: spin curve lacks pole " + p.str());
      // g(t) = (z^2 + 1) z^{j-2} / (z + p)^j at z = p + t
      TruncSeries<Rational> zt("t", j + 1);
      zt[0] = p;
      if (j + 1 > 1) zt[1] = Rational(1);
      TruncSeries<Rational> one = TruncSeries<Rational>::constant("t", Rational(1), j + 1);
      TruncSeries<Rational> num = zt * zt + one;
      TruncSeries<Rational> zp = one;
      if (j >= 2)
        for (int i = 0; i < j - 2; ++i) zp = zp * zt;
      TruncSeries<Rational> den = one;
      TruncSeries<Rational> shift = zt + one * p;
      for (int i = 0; i < j; ++i) den = den * shift;
      TruncSeries<Rational> gser = num * zp * den.inverse();
      for (int i = 0; i < j; ++i) {
        int order = j - i;
        if (gser[i].is_zero()) continue;
        if (order == 1) throw InternalError("pullback: residue at " + p.str());
        out.emplace_back(make_code(pi, order), gser[i]);
      }
    }
    return parts.emplace(j, std::move(out)).first->second;
  };
  NPointDifferential result(kn.g(), n);
  Rational scale = Rational(2).pow(2 * kn.g() - 2 + n);
  for (auto& [key, c] : kn.terms()) {
    std::vector<std::pair<TermKey, Rational>> acc{{0, c * scale}};
    for (int i = 0; i < n; ++i) {
      std::uint8_t code = code_at(key, i);
      if (code_pole(code) != 0) throw InternalError("pullback: kn omega has a pole away from 0");
      std::vector<std::pair<TermKey, Rational>> next;
      for (auto& [k, v] : acc)
        for (auto& [pc, pv] : pole_parts(code_order(code))) next.emplace_back(k | place(pc, i), v * pv);
      acc = std::move(next);
    }
    for (auto& [k, v] : acc) result.mutable_terms()[k] += v;
  }
  for (auto it = result.mutable_terms().begin(); it != result.mutable_terms().end();)
    it = it->second.is_zero() ? result.mutable_terms().erase(it) : std::next(it);
  return result;
}

}  // namespace moduli::tr
