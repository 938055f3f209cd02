#include "moduli/tr/engine.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "moduli/errors.hpp"

namespace moduli::tr {

namespace {

using Multi = std::unordered_map<TermKey, Rational>;

// sum_{e >= val} c[e - val] t^e, spectator dependence in each coefficient
struct MSeries {
  int val = 0;
  std::vector<Multi> c;

  int top() const { return val + static_cast<int>(c.size()) - 1; }
  Multi& at(int e) {
    if (c.empty()) val = e;
    if (e < val) {
      c.insert(c.begin(), static_cast<std::size_t>(val - e), Multi{});
      val = e;
    }
    if (e > top()) c.resize(static_cast<std::size_t>(e - val + 1));
    return c[static_cast<std::size_t>(e - val)];
  }
  const Multi* get(int e) const {
    if (e < val || e > top()) return nullptr;
    return &c[static_cast<std::size_t>(e - val)];
  }
};

void add_into(Multi& out, TermKey k, const Rational& v) {
  if (v.is_zero()) return;
  auto [it, inserted] = out.try_emplace(k, v);
  if (!inserted) it->second += v;
}

// A (x) B truncated to exponents <= jmax, accumulated into out.
void multiply_into(MSeries& out, const MSeries& a, const MSeries& b, int jmax) {
  for (int ea = a.val; ea <= a.top(); ++ea) {
    const Multi* ma = a.get(ea);
    if (ma->empty()) continue;
    for (int eb = b.val; eb <= b.top() && ea + eb <= jmax; ++eb) {
      const Multi* mb = b.get(eb);
      if (mb->empty()) continue;
      Multi& dst = out.at(ea + eb);
      for (auto& [ka, va] : *ma)
        for (auto& [kb, vb] : *mb) add_into(dst, ka | kb, va * vb);
    }
  }
}

// Per exponent m: list of (code, coefficient) for one spectator variable.
using SpectatorSeries = std::vector<std::vector<std::pair<std::uint8_t, Rational>>>;

}  // namespace

struct TREngine::Impl {
  SpectralCurve curve;
  std::recursive_mutex mutex;
  std::map<std::pair<int, int>, NPointDifferential> omegas;
  std::map<std::tuple<int, int, int>, Series> basis_cache;
  std::vector<Mobius> deck_group;  // phi o sigma for phi in the group

  explicit Impl(SpectralCurve c) : curve(std::move(c)) {
    if (curve.x_c_power + curve.y_c_power != 1)
      throw CurveBuildError(curve.name + ": kernel must scale as c^{-1}");
    for (auto& phi : curve.group) deck_group.push_back(phi.after(curve.sigma));
  }

  int pole_of(const Rational& p) const {
    int i = curve.pole_index(p);
    if (i < 0) throw InternalError("tr: point " + p.str() + " is not in the pole list");
    return i;
  }

  // dz/(z - p)^o pulled back by psi (identity or sigma), expanded at xi + t,
  // known to absolute precision `prec`.
  const Series& basis_series(int xi_i, bool sigma, std::uint8_t code, int prec) {
    auto key = std::make_tuple(xi_i * 2 + (sigma ? 1 : 0), static_cast<int>(code), 0);
    auto it = basis_cache.find(key);
    if (it != basis_cache.end() && it->second.precision() >= prec) return it->second;
    const Rational& xi = curve.critical_points[static_cast<std::size_t>(xi_i)];
    const Mobius psi = sigma ? curve.sigma : Mobius::identity();
    const Rational& p = curve.poles[static_cast<std::size_t>(code_pole(code))];
    int o = code_order(code);
    int work = prec + o + 2;
    Series diff = psi.value_series(xi, work) - Series::monomial(p, 0, work);
    Series s = diff.pow(-o) * psi.derivative_series(xi, work);
    basis_cache[key] = s.with_precision(std::min(s.precision(), std::max(prec, s.valuation())));
    return basis_cache[key];
  }

  // kind 0: 1/(z' - psi(xi + t)); kind 1: psi'(xi + t)/(z' - psi(xi + t))^2,
  // expanded in t (exponents 0..prec-1) and in partial fractions of z'.
  SpectatorSeries spectator_series(int xi_i, const Mobius& psi, int kind, int prec) {
    const Rational& xi = curve.critical_points[static_cast<std::size_t>(xi_i)];
    Rational p = psi(xi);
    int pi = pole_of(p);
    Series delta = psi.value_series(xi, prec) - Series::monomial(p, 0, prec);
    Series dpsi = psi.derivative_series(xi, prec);
    SpectatorSeries out(static_cast<std::size_t>(prec));
    Series power = Series::monomial(Rational(1), 0, prec);
    for (int r = 0; r < prec; ++r) {
      Series term = kind == 0 ? power : power * dpsi;
      int order = kind == 0 ? r + 1 : r + 2;
      if (order > kMaxOrder) throw PoleOrderOverflow("tr: spectator pole order beyond encoding range");
      Rational weight = kind == 0 ? Rational(1) : Rational(r + 1);
      for (int m = std::max(term.valuation(), 0); m < std::min(prec, term.precision()); ++m) {
        Rational v = term.coefficient(m);
        if (!v.is_zero()) out[static_cast<std::size_t>(m)].emplace_back(make_code(pi, order), v * weight);
      }
      power = power * delta;
      if (power.valuation() >= prec) break;
    }
    return out;
  }

  int max_order_at(const NPointDifferential& w, int pole) const {
    int m = 0;
    for (auto& [k, c] : w.terms()) {
      std::uint8_t code = code_at(k, 0);
      if (code_pole(code) == pole) m = std::max(m, code_order(code));
    }
    return m;
  }

  // omega_{g1,n1}(psi(z), z_labels...) with variable j >= 1 sent to labels[j-1].
  MSeries stable_factor(const NPointDifferential& w, bool sigma, const std::vector<int>& labels, int xi_i, int upto) {
    MSeries out;
    std::map<std::uint8_t, std::vector<std::pair<TermKey, const Rational*>>> by_code;
    for (auto& [k, c] : w.terms()) {
      TermKey rest = 0;
      for (std::size_t j = 0; j < labels.size(); ++j) rest |= place(code_at(k, static_cast<int>(j) + 1), labels[j]);
      by_code[code_at(k, 0)].emplace_back(rest, &c);
    }
    for (auto& [code, list] : by_code) {
      const Series& s = basis_series(xi_i, sigma, code, upto + 1);
      for (int e = s.valuation(); e <= upto; ++e) {
        Rational v = s.coefficient(e);
        if (v.is_zero()) continue;
        Multi& dst = out.at(e);
        for (auto& [rest, c] : list) add_into(dst, rest, *c * v);
      }
    }
    return out;
  }

  // B(psi(z), z_label) for psi = identity or sigma.
  MSeries b_factor(int label, bool sigma, int xi_i, int upto) {
    MSeries out;
    for (std::size_t i = 0; i < curve.group.size(); ++i) {
      const Mobius& psi = sigma ? deck_group[i] : curve.group[i];
      SpectatorSeries s = spectator_series(xi_i, psi, 1, upto + 1);
      for (int m = 0; m <= upto; ++m)
        for (auto& [code, v] : s[static_cast<std::size_t>(m)]) add_into(out.at(m), place(code, label), v);
    }
    return out;
  }

  // B(z, sigma(z)) as a scalar series.
  MSeries b_on_deck(int xi_i, int upto) {
    const Rational& xi = curve.critical_points[static_cast<std::size_t>(xi_i)];
    int work = upto + 8;
    Series sv = curve.sigma.value_series(xi, work);
    Series sd = curve.sigma.derivative_series(xi, work);
    Series total = Series::zero(work);
    for (auto& phi : curve.group) {
      Series diff = phi.value_series(xi, work) - sv;
      total = total + phi.derivative_series(xi, work) * sd * (diff * diff).inverse();
    }
    MSeries out;
    for (int e = total.valuation(); e <= upto && e < total.precision(); ++e) add_into(out.at(e), 0, total.coefficient(e));
    return out;
  }

  int factor_valuation(int g1, int n1, int xi_pole) {
    if (g1 == 0 && n1 == 2) return 0;
    return -max_order_at(get(g1, n1), xi_pole);
  }

  MSeries factor(int g1, const std::vector<int>& labels, bool sigma, int xi_i, int upto) {
    int n1 = static_cast<int>(labels.size()) + 1;
    if (g1 == 0 && n1 == 2) return b_factor(labels[0], sigma, xi_i, upto);
    return stable_factor(get(g1, n1), sigma, labels, xi_i, upto);
  }

  const NPointDifferential& get(int g, int n) {
    std::lock_guard lock(mutex);
    auto it = omegas.find({g, n});
    if (it != omegas.end()) return it->second;
    NPointDifferential w = compute(g, n);
    return omegas.emplace(std::make_pair(g, n), std::move(w)).first->second;
  }

  NPointDifferential compute(int g, int n) {
    if (g < 0 || n < 1 || 2 * g - 2 + n <= 0) throw DomainError("tr: omega needs 2g - 2 + n > 0 and n >= 1");
    if (n > kMaxVariables) throw DomainError("tr: at most 8 variables");
    // make sure every ingredient exists before the main loop
    if (g >= 1 && !(g - 1 == 0 && n + 1 == 2)) get(g - 1, n + 1);
    for (int g1 = 0; g1 <= g; ++g1)
      for (int m = 0; m <= n - 1; ++m)
        if (2 * g1 - 2 + 1 + m > 0 && !(g1 == g && m == n - 1)) get(g1, 1 + m);

    const int cap = TREngine::pole_cap(g, n);
    Multi result;
    const int spectators = n - 1;
    for (int xi_i = 0; xi_i < static_cast<int>(curve.critical_points.size()); ++xi_i) {
      const Rational& xi = curve.critical_points[static_cast<std::size_t>(xi_i)];
      const int xi_pole = pole_of(xi);
      // kernel numerator has valuation >= 1, denominator valuation exactly 2
      const int kval = -1;
      const int jmax = -1 - kval;
      MSeries bracket;

      if (g >= 1) {
        if (g - 1 == 0 && n + 1 == 2) {
          MSeries b = b_on_deck(xi_i, jmax);
          for (int e = b.val; e <= b.top(); ++e)
            if (const Multi* m = b.get(e))
              for (auto& [k, v] : *m) add_into(bracket.at(e), k, v);
        } else {
          const NPointDifferential& w = get(g - 1, n + 1);
          int va = -max_order_at(w, xi_pole);
          // same bound for the second slot by symmetry
          int upto = jmax - va;
          for (auto& [k, c] : w.terms()) {
            const Series& s0 = basis_series(xi_i, false, code_at(k, 0), upto + 1);
            const Series& s1 = basis_series(xi_i, true, code_at(k, 1), upto + 1);
            TermKey rest = (k >> 16) << 8;
            for (int e0 = s0.valuation(); e0 <= upto; ++e0) {
              Rational v0 = s0.coefficient(e0);
              if (v0.is_zero()) continue;
              for (int e1 = s1.valuation(); e0 + e1 <= jmax && e1 <= upto; ++e1) {
                Rational v1 = s1.coefficient(e1);
                if (!v1.is_zero()) add_into(bracket.at(e0 + e1), rest, c * v0 * v1);
              }
            }
          }
        }
      }

      for (unsigned mask = 0; mask < (1u << spectators); ++mask) {
        std::vector<int> in, out;
        for (int s = 0; s < spectators; ++s) ((mask >> s) & 1 ? in : out).push_back(s + 1);
        for (int g1 = 0; g1 <= g; ++g1) {
          int g2 = g - g1;
          if (g1 == 0 && in.empty()) continue;
          if (g2 == 0 && out.empty()) continue;
          int n1 = 1 + static_cast<int>(in.size()), n2 = 1 + static_cast<int>(out.size());
          int va = factor_valuation(g1, n1, xi_pole), vb = factor_valuation(g2, n2, xi_pole);
          MSeries a = factor(g1, in, false, xi_i, jmax - vb);
          MSeries b = factor(g2, out, true, xi_i, jmax - va);
          multiply_into(bracket, a, b, jmax);
        }
      }
      if (bracket.c.empty()) continue;

      // kernel K(z1, t) = numerator(z1, t) / denominator(t), c^{-1} implied
      int kprec = -1 - bracket.val - kval + 1;  // number of kernel terms needed
      int num_prec = kprec + 3;
      SpectatorSeries num(static_cast<std::size_t>(num_prec));
      for (std::size_t i = 0; i < curve.group.size(); ++i) {
        SpectatorSeries plus = spectator_series(xi_i, deck_group[i], 0, num_prec);
        SpectatorSeries minus = spectator_series(xi_i, curve.group[i], 0, num_prec);
        for (int m = 0; m < num_prec; ++m) {
          for (auto& [code, v] : plus[static_cast<std::size_t>(m)]) num[static_cast<std::size_t>(m)].emplace_back(code, v);
          for (auto& [code, v] : minus[static_cast<std::size_t>(m)]) num[static_cast<std::size_t>(m)].emplace_back(code, -v);
        }
      }
      KernelSeries ks = kernel_series(curve, xi, num_prec + 2);
      Series inv = ks.denominator.inverse();
      if (inv.valuation() != -2) throw DegenerateRamification("tr: kernel denominator must vanish to order 2");

      for (int m = kval; m < kval + kprec; ++m) {
        const Multi* br = bracket.get(-1 - m);
        if (!br || br->empty()) continue;
        // K_m = sum_j num_j inv_{m-j}
        std::map<std::uint8_t, Rational> km;
        for (int j = 0; j < num_prec && m - j >= inv.valuation(); ++j) {
          if (m - j >= inv.precision()) continue;
          Rational iv = inv.coefficient(m - j);
          if (iv.is_zero()) continue;
          for (auto& [code, v] : num[static_cast<std::size_t>(j)]) km[code] += v * iv;
        }
        for (auto& [code, kv] : km) {
          if (kv.is_zero()) continue;
          if (code_order(code) == 1) throw InternalError("tr: kernel numerator left a simple pole");
          Rational half = kv * Rational(1, 2);
          for (auto& [k, v] : *br) add_into(result, k | place(code, 0), half * v);
        }
      }
    }

    NPointDifferential w(g, n);
    for (auto& [k, v] : result)
      if (!v.is_zero()) w.mutable_terms().emplace(k, v);
    if (w.max_order() > cap)
      throw PoleOrderOverflow("tr: omega(" + std::to_string(g) + "," + std::to_string(n) + ") has pole order " +
                              std::to_string(w.max_order()) + " > " + std::to_string(cap));
    if (!w.residue_free()) throw InternalError("tr: omega has nonzero residues");
    if (!w.is_symmetric()) throw InternalError("tr: omega is not symmetric");
    return w;
  }
};

TREngine::TREngine(SpectralCurve curve) : impl_(std::make_unique<Impl>(std::move(curve))) {}
TREngine::~TREngine() = default;

const SpectralCurve& TREngine::curve() const { return impl_->curve; }

const NPointDifferential& TREngine::omega(int g, int n) { return impl_->get(g, n); }

void TREngine::save(const std::string& path) const {
  std::lock_guard lock(impl_->mutex);
  std::ofstream os(path);
  if (!os) throw LoadError("cannot write " + path);
  os << "trcache v1 " << impl_->curve.name << "\n";
  for (auto& [gn, w] : impl_->omegas) {
    os << "begin " << gn.first << " " << gn.second << " " << w.terms().size() << "\n";
    for (auto& [k, c] : w.terms()) os << k << " " << c << "\n";
  }
}

void TREngine::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) return;  // nothing cached yet
  std::string magic, version, name;
  is >> magic >> version >> name;
  if (magic != "trcache" || version != "v1") throw LoadError(path + ": not a TR cache");
  if (name != impl_->curve.name) throw LoadError(path + ": cache belongs to curve " + name);
  std::map<std::pair<int, int>, NPointDifferential> staged;
  std::string word;
  while (is >> word) {
    if (word != "begin") throw LoadError(path + ": malformed cache");
    int g, n;
    std::size_t count;
    if (!(is >> g >> n >> count)) throw LoadError(path + ": malformed header");
    NPointDifferential w(g, n);
    for (std::size_t i = 0; i < count; ++i) {
      TermKey k;
      std::string value;
      if (!(is >> k >> value)) throw LoadError(path + ": truncated cache");
      try {
        w.mutable_terms().emplace(k, Rational::parse(value));
      } catch (const std::exception&) {
        throw LoadError(path + ": bad coefficient " + value);
      }
    }
    if (!w.residue_free() || !w.is_symmetric()) throw LoadError(path + ": cached omega fails its invariants");
    staged.emplace(std::make_pair(g, n), std::move(w));
  }
  std::lock_guard lock(impl_->mutex);
  for (auto& [gn, w] : staged) {
    auto it = impl_->omegas.find(gn);
    if (it != impl_->omegas.end() && !(it->second == w)) throw LoadError(path + ": cache disagrees with computed omega");
    impl_->omegas.emplace(gn, std::move(w));
  }
}

}  // namespace moduli::tr
