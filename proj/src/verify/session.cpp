#include "moduli/verify/session.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include "moduli/errors.hpp"
#include "moduli/hodge/hodge.hpp"
#include "moduli/kappa/kappa.hpp"
#include "moduli/psi/correlators.hpp"
#include "moduli/spin/conventions.hpp"
#include "moduli/spin/jpipeline.hpp"
#include "moduli/spin/localization.hpp"
#include "moduli/spin/vfunctions.hpp"
#include "moduli/tr/expansion.hpp"

namespace moduli::verify {

using exact::LaurentTQ;
using exact::LaurentTS;
using exact::QPoly;
using exact::Rational;

const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> list{
      {"psi", "check-lemmas", "psi correlator pins, one-point values, string and dilaton"},
      {"j-def", "check-main", "J-class from s_i products vs the multi-index expansion"},
      {"main", "check-main", "J_p paired with every kappa-psi monomial vanishes"},
      {"n10", "check-n10", "J_{2g-1} and J_{2g-2} against Hodge integrals"},
      {"v-lemmas", "check-lemmas", "V_k and V_{k,l}: closed forms, poles, homogeneity, X-series"},
      {"hat-p", "check-lemmas", "hat P_k at T = 0"},
      {"regularity", "check-lemmas", "equivariant descendants: T-regular, vanishing, homogeneous"},
      {"anc", "check-anc", "localization ancestors vs shifted KW ancestors"},
      {"t0", "check-anc", "T^0 S^d coefficient of ancestors vs J pairings"},
      {"loc-j", "check-anc", "localization at T = 0 vs J-pipeline descendants"},
      {"tr", "check-tr-spin", "TR descendant tables vs J-pipeline, (0,2), pinned (0,3)"},
      {"doubling", "check-tr-spin", "spin curve omega vs pulled-back kn curve omega"},
  };
  return list;
}

std::vector<std::string> commands() {
  return {"check-main", "check-n10", "check-tr-spin", "check-anc", "check-lemmas", "check-all", "dump-invariants"};
}

namespace {

std::vector<std::vector<int>> sorted_tuples(int n, int kmax) {
  std::vector<std::vector<int>> out;
  std::vector<int> ks(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int i, int lo) -> void {
    if (i == n) {
      out.push_back(ks);
      return;
    }
    for (int k = lo; k <= kmax; ++k) {
      ks[static_cast<std::size_t>(i)] = k;
      self(self, i + 1, k);
    }
  };
  rec(rec, 0, 0);
  return out;
}

bool stable(int g, int n) { return g >= 0 && n >= 0 && 2 * g - 2 + n > 0; }

std::string tuple_str(const std::vector<int>& ks) {
  std::string s;
  for (std::size_t i = 0; i < ks.size(); ++i) s += (i ? "," : "") + std::to_string(ks[i]);
  return s;
}

LaurentTQ q_part(const LaurentTQ& f, int d) {
  LaurentTQ out;
  for (auto& [k, c] : f.terms())
    if (k.second == d) out.add(k.first, k.second, c);
  return out;
}

// ---- psi

std::vector<Job> psi_jobs(const RunConfig& cfg) {
  std::vector<Job> jobs;
  jobs.push_back([] {
    std::vector<CheckRecord> r;
    struct Pin {
      int g;
      std::vector<int> ks;
      Rational v;
    };
    for (auto& pin : std::vector<Pin>{{0, {0, 0, 0}, Rational(1)}, {1, {1}, Rational(1, 24)}, {2, {4}, Rational(1, 1152)}, {1, {0, 0, 2, 2}, Rational(1, 6)}})
      r.push_back(CheckRecord::compare("psi-pin", pin.v.str(), psi::wk_correlator(pin.g, pin.ks).str()).with_g(pin.g).with_ks(pin.ks));
    return r;
  });
  jobs.push_back([g = cfg.gmax] {
    std::vector<CheckRecord> r;
    for (int h = 1; h <= std::max(g, 1); ++h) {
      Rational expect = (Rational(24).pow(h) * Rational::factorial(h)).inverse();
      r.push_back(CheckRecord::compare("psi-one-point", expect.str(), psi::wk_correlator(h, {3 * h - 2}).str()).with_g(h).with_ks({3 * h - 2}));
    }
    return r;
  });
  for (int g = 0; g <= cfg.gmax; ++g)
    jobs.push_back([g, n_hi = cfg.nmax + 1] {
      std::vector<CheckRecord> r;
      for (int n = 1; n <= n_hi; ++n) {
        if (!stable(g, n)) continue;
        int dim = 3 * g - 3 + n;
        for (auto& ks : sorted_tuples(n, dim)) {
          if (std::accumulate(ks.begin(), ks.end(), 0) != dim) continue;
          psi::CorrelatorKey key(g, ks);
          Rational direct = psi::wk_correlator(g, ks);
          if (ks.front() == 0 && stable(g, n - 1)) {
            Rational via;
            for (auto& [k, c] : psi::string_reduce(key)) via += c * psi::wk_correlator(k.genus, k.exponents);
            r.push_back(CheckRecord::compare("psi-string", via.str(), direct.str()).with_g(g).with_n(n).with_ks(ks));
          }
          if (std::find(ks.begin(), ks.end(), 1) != ks.end() && stable(g, n - 1)) {
            auto [k, c] = psi::dilaton_reduce(key);
            Rational via = c * psi::wk_correlator(k.genus, k.exponents);
            r.push_back(CheckRecord::compare("psi-dilaton", via.str(), direct.str()).with_g(g).with_n(n).with_ks(ks));
          }
        }
      }
      return r;
    });
  return jobs;
}

// ---- kappa / J

std::vector<Job> jdef_jobs(const RunConfig&) {
  std::vector<Job> jobs;
  for (int p = 1; p <= 6; ++p)
    jobs.push_back([p] {
      return std::vector<CheckRecord>{
          CheckRecord::compare("j-def", kappa::j_class_via_multiindex(p).str(), kappa::j_class(p).str()).with_p(p)};
    });
  return jobs;
}

std::vector<Job> main_jobs(const RunConfig& cfg) {
  std::vector<Job> jobs;
  for (int g = 0; g <= cfg.gmax; ++g)
    for (int n = 0; n <= cfg.nmax; ++n) {
      if (!stable(g, n)) continue;
      jobs.push_back([g, n] {
        std::vector<CheckRecord> r;
        const int dim = 3 * g - 3 + n, lo = 2 * g - 2 + n;
        for (int p = lo; p <= std::max(dim, lo) + 1; ++p) {
          if (p == lo && n < 2) {
            r.push_back(CheckRecord::skipped("main", "not claimed for n = " + std::to_string(n) + "; compared with Hodge integrals in n10")
                            .with_g(g).with_n(n).with_p(p));
            continue;
          }
          if (p > dim) {
            r.push_back(CheckRecord::compare("main", "0", "0").with_g(g).with_n(n).with_p(p).with_detail("degree exceeds dimension"));
            continue;
          }
          for (auto& mono : kappa::monomials_of_degree(n, dim - p))
            r.push_back(CheckRecord::compare("main", "0", kappa::pair_j(g, n, p, mono).str()).with_g(g).with_n(n).with_p(p).with_detail(mono.str()));
        }
        return r;
      });
    }
  return jobs;
}

std::vector<Job> n10_jobs(const RunConfig& cfg) {
  std::vector<Job> jobs;
  for (int g = 1; g <= std::max(cfg.gmax, 2); ++g) {
    // n = 1: J_{2g-1} psi^{g-1} vs (-1)^{g-1} lambda_g lambda_{g-1} psi^{g-1}
    jobs.push_back([g] {
      std::vector<CheckRecord> r;
      kappa::KappaMonomial mono({}, {g - 1});
      auto rec = [&](CheckRecord c) { return c.with_g(g).with_n(1).with_p(2 * g - 1).with_detail(mono.str()); };
      try {
        Rational hodge_side = spin::minus_one_pow(g - 1) * hodge::one_point_hodge(hodge::HodgeKey(g, g - 1, g - 1));
        r.push_back(rec(CheckRecord::compare("n10", hodge_side.str(), kappa::pair_j(g, 1, 2 * g - 1, mono).str())));
      } catch (const hodge::HodgeUnsupported& ex) {
        r.push_back(rec(CheckRecord::skipped("n10", std::string("hodge-unsupported: ") + ex.what())));
      }
      return r;
    });
    if (g < 2) continue;
    // n = 0: J_{2g-2} kappa_{g-1} vs (-1)^g lambda_g lambda_{g-2} psi^g on M_{g,1}
    jobs.push_back([g] {
      std::vector<CheckRecord> r;
      kappa::KappaMonomial mono({g - 1}, {});
      auto rec = [&](CheckRecord c) { return c.with_g(g).with_n(0).with_p(2 * g - 2).with_detail(mono.str()); };
      try {
        Rational hodge_side = spin::minus_one_pow(g) * hodge::one_point_hodge(hodge::HodgeKey(g, g - 2, g));
        r.push_back(rec(CheckRecord::compare("n10", hodge_side.str(), kappa::pair_j(g, 0, 2 * g - 2, mono).str())));
      } catch (const hodge::HodgeUnsupported& ex) {
        r.push_back(rec(CheckRecord::skipped("n10", std::string("hodge-unsupported: ") + ex.what())));
      }
      return r;
    });
  }
  return jobs;
}

// ---- spin / localization

std::vector<Job> vlemma_jobs(const RunConfig& cfg) {
  using spin::V;
  using spin::V2;
  std::vector<Job> jobs;
  auto ts = [](const Rational& c, int t, int s) { return LaurentTS::monomial(c, t, s); };
  jobs.push_back([ts] {
    std::vector<CheckRecord> r;
    r.push_back(CheckRecord::compare("v-closed-form", (ts(1, 0, -1) - ts(1, -1, 0)).str(), V(1).str()).with_detail("V_1 = 1/S - 1/T"));
    // Q/(T - Q)^3 with S = T - Q
    r.push_back(CheckRecord::compare("v-closed-form", (ts(1, 1, -3) - ts(1, 0, -2)).str(), V(2).str()).with_detail("V_2 = Q/(T-Q)^3"));
    r.push_back(CheckRecord::compare("v-closed-form", (ts(Rational(1, 2), -2, 0) - ts(1, -1, -1) + ts(Rational(1, 2), 0, -2)).str(), V2(1, 0).str())
                    .with_detail("V_{1,0}"));
    return r;
  });
  jobs.push_back([] {
    std::vector<CheckRecord> r;
    for (int k = 2; k <= 8; ++k) {
      LaurentTS v = V(k);
      bool poly = std::all_of(v.terms().begin(), v.terms().end(), [](auto& t) { return t.first.first >= 0 && t.first.second <= 0; });
      r.push_back(CheckRecord::compare("v-polynomial", "Q[1/S,T]", poly ? "Q[1/S,T]" : v.str()).with_detail("V_" + std::to_string(k)));
      // (-1)^{k-1}(k-1)!/S^k at T = 0, where S = -Q
      QPoly expect = QPoly::monomial(spin::minus_one_pow(k - 1) * Rational::factorial(k - 1) * spin::minus_one_pow(k), -k);
      r.push_back(CheckRecord::compare("v-t-zero", expect.str(), exact::restrict_t_zero(v).str()).with_detail("V_" + std::to_string(k)));
    }
    return r;
  });
  jobs.push_back([ts] {
    std::vector<CheckRecord> r;
    for (int k = 1; k <= 4; ++k)
      for (int l = 1; l <= 4; ++l) {
        LaurentTS rest = V2(k, l) - ts(spin::minus_one_pow(k + 1) * hodge::bernoulli(k + l) / Rational(k + l), -k - l - 1, 0);
        auto lo = rest.lowest_first();
        r.push_back(CheckRecord::compare("v-bernoulli-pole", "regular", !lo || *lo >= 0 ? "regular" : "T^" + std::to_string(*lo))
                        .with_detail("V_{" + std::to_string(k) + "," + std::to_string(l) + "}"));
      }
    return r;
  });
  jobs.push_back([order = cfg.order] {
    std::vector<CheckRecord> r;
    auto deg = [](const LaurentTS& f) {
      auto d = f.homogeneous_degree();
      return d ? std::to_string(*d) : std::string("inhomogeneous");
    };
    for (int k = 0; k <= 6; ++k) {
      r.push_back(CheckRecord::compare("v-homogeneity", std::to_string(-k), deg(V(k))).with_detail("V_" + std::to_string(k)));
      r.push_back(CheckRecord::compare("v-x-series", spin::V_from_x_series(k, order).str(), exact::to_q_series(V(k), order).str())
                      .with_detail("V_" + std::to_string(k)));
    }
    for (int k = 0; k <= 4; ++k)
      for (int l = (k == 0 ? 1 : 0); l <= 4; ++l) {
        std::string name = "V_{" + std::to_string(k) + "," + std::to_string(l) + "}";
        r.push_back(CheckRecord::compare("v-homogeneity", std::to_string(-k - l - 1), deg(V2(k, l))).with_detail(name));
        r.push_back(CheckRecord::compare("v-x-series", spin::V2_from_x_series(k, l, order).str(), exact::to_q_series(V2(k, l), order).str())
                        .with_detail(name));
      }
    r.push_back(CheckRecord::compare("v-x-series", LaurentTQ::monomial(Rational(1), -1, 1).str(), spin::lambert_sum(order - 1).str())
                    .with_detail("sum d^{d-1}/d! X^d = Q/T"));
    return r;
  });
  return jobs;
}

std::vector<Job> hatp_jobs(const RunConfig&) {
  std::vector<Job> jobs;
  jobs.push_back([] {
    std::vector<CheckRecord> r;
    for (int k = 0; k <= 8; ++k)
      for (int g1 = 0; g1 <= 2; ++g1) {
        QPoly expect = (g1 == 0 && k >= 2) ? QPoly::monomial(-Rational::factorial(k - 1), -k) : QPoly();
        r.push_back(CheckRecord::compare("hat-p", expect.str(), exact::restrict_t_zero(spin::hat_P(k, g1)).str())
                        .with_g(g1).with_ks({k}));
      }
    return r;
  });
  return jobs;
}

CheckRecord hodge_skip(const std::string& check, const hodge::HodgeUnsupported& ex) {
  return CheckRecord::skipped(check, std::string("hodge-unsupported: ") + ex.what());
}

std::vector<Job> regularity_jobs(const RunConfig& cfg) {
  std::vector<Job> jobs;
  for (int g = 0; g <= cfg.gmax; ++g)
    for (int n = 1; n <= cfg.nmax; ++n) {
      if (!stable(g, n)) continue;
      for (auto& ks : sorted_tuples(n, cfg.kmax)) {
        int dt = spin::total_degree(g, ks);
        if (dt < 0) continue;
        jobs.push_back([g, n, ks, dt] {
          std::vector<CheckRecord> r;
          auto tag = [&](CheckRecord c) { return c.with_g(g).with_n(n).with_ks(ks).with_d(dt); };
          try {
            LaurentTQ loc = spin::localization_descendant(g, ks);
            auto lo = loc.lowest_first();
            r.push_back(tag(CheckRecord::compare("t-regular", "regular", !lo || *lo >= 0 ? "regular" : "T^" + std::to_string(*lo))));
            auto deg = loc.homogeneous_degree();
            r.push_back(tag(CheckRecord::compare("homogeneity", std::to_string(dt),
                                                 loc.is_zero() ? std::to_string(dt) : deg ? std::to_string(*deg) : "inhomogeneous")));
            r.push_back(tag(CheckRecord::compare("vanishing", "0", spin::equiv_descendant(g, ks, dt + 1).str())));
          } catch (const hodge::HodgeUnsupported& ex) {
            r.push_back(tag(hodge_skip("t-regular", ex)));
          }
          return r;
        });
      }
    }
  return jobs;
}

int anc_nmax(const RunConfig& cfg) { return std::min(cfg.nmax, 3); }

std::vector<Job> anc_jobs(const RunConfig& cfg) {
  std::vector<Job> jobs;
  for (int g = 0; g <= cfg.gmax; ++g)
    for (int n = 2; n <= anc_nmax(cfg); ++n) {
      if (!stable(g, n)) continue;
      for (auto& ls : sorted_tuples(n, std::min(cfg.kmax, 4)))
        jobs.push_back([g, n, ls, dmax = cfg.dmax] {
          std::vector<CheckRecord> r;
          try {
            LaurentTQ loc = spin::equiv_ancestor(g, ls);
            LaurentTQ kw = exact::to_q_series(spin::shifted_kw_ancestor(g, ls), dmax + 1);
            for (int d = 1; d <= dmax; ++d)
              r.push_back(CheckRecord::compare("anc", q_part(kw, d).str(), q_part(loc, d).str()).with_g(g).with_n(n).with_ks(ls).with_d(d));
          } catch (const hodge::HodgeUnsupported& ex) {
            r.push_back(hodge_skip("anc", ex).with_g(g).with_n(n).with_ks(ls));
          }
          return r;
        });
    }
  return jobs;
}

std::vector<Job> t0_jobs(const RunConfig& cfg) {
  std::vector<Job> jobs;
  for (int g = 0; g <= cfg.gmax; ++g)
    for (int n = 1; n <= anc_nmax(cfg); ++n) {
      if (!stable(g, n)) continue;
      jobs.push_back([g, n, kmax = std::min(cfg.kmax, 4)] {
        std::vector<CheckRecord> r;
        for (auto& ls : sorted_tuples(n, kmax)) {
          int d = spin::total_degree(g, ls);
          if (d < 0) continue;
          auto tag = [&](CheckRecord c) { return c.with_g(g).with_n(n).with_ks(ls).with_d(d); };
          try {
            auto c = spin::t0_sd_coefficient(g, ls);
            if (c.skipped)
              r.push_back(tag(CheckRecord::skipped("t0", "n = 1, d > 0: ancestor change of variables not valid; covered by loc-j")));
            else
              r.push_back(tag(CheckRecord::compare("t0", c.predicted.str(), c.observed.str())));
          } catch (const hodge::HodgeUnsupported& ex) {
            r.push_back(tag(hodge_skip("t0", ex)));
          }
        }
        return r;
      });
    }
  return jobs;
}

std::vector<Job> locj_jobs(const RunConfig& cfg) {
  std::vector<Job> jobs;
  for (int g = 0; g <= cfg.gmax; ++g)
    for (int n = 1; n <= cfg.nmax; ++n) {
      if (!stable(g, n)) continue;
      for (auto& ks : sorted_tuples(n, cfg.kmax)) {
        int d = spin::total_degree(g, ks);
        if (d < 0) continue;
        jobs.push_back([g, n, ks, d] {
          auto tag = [&](CheckRecord c) { return c.with_g(g).with_n(n).with_ks(ks).with_d(d); };
          if (n == 1 && d == 0)
            return std::vector<CheckRecord>{tag(CheckRecord::skipped("loc-j", "n = 1, d = 0: the J value is not a localization output"))};
          try {
            return std::vector<CheckRecord>{tag(CheckRecord::compare("loc-j", spin::j_pipeline_descendant(g, ks).str(),
                                                                     exact::restrict_t_zero(spin::equiv_descendant_full(g, ks)).str()))};
          } catch (const hodge::HodgeUnsupported& ex) {
            return std::vector<CheckRecord>{tag(hodge_skip("loc-j", ex))};
          }
        });
      }
    }
  return jobs;
}

// ---- TR

std::vector<std::pair<int, int>> tr_range(const RunConfig& cfg, int chimax) {
  std::vector<std::pair<int, int>> out;
  for (int chi = 1; chi <= chimax; ++chi)
    for (int g = 0; g <= cfg.gmax; ++g) {
      int n = chi - 2 * g + 2;
      if (n >= 1) out.emplace_back(g, n);
    }
  return out;
}

std::vector<Job> tr_jobs(const RunConfig& cfg, Session& s) {
  std::vector<Job> jobs;
  jobs.push_back([&s] {
    auto t = tr::expand_descendants(s.spin().curve(), s.spin().omega(0, 3), 0);
    return std::vector<CheckRecord>{
        CheckRecord::compare("tr-pin", QPoly::monomial(Rational(-1), 1).str(), t.at({0, 0, 0}).str()).with_g(0).with_n(3).with_ks({0, 0, 0})};
  });
  jobs.push_back([&s, kmax = std::max(cfg.order - 2, 0)] {
    std::vector<CheckRecord> r;
    auto t = tr::expand_omega02(s.spin().curve(), kmax);
    for (int a = 0; a <= kmax; ++a)
      for (int b = a; b <= kmax; ++b)
        r.push_back(CheckRecord::compare("tr-02", tr::omega02_closed_form(a, b).str(), t.at({a, b}).str()).with_g(0).with_n(2).with_ks({a, b}));
    return r;
  });
  for (auto [g, n] : tr_range(cfg, cfg.chimax))
    jobs.push_back([&s, g, n, kmax = cfg.kmax] {
      std::vector<CheckRecord> r;
      auto t = tr::expand_descendants(s.spin().curve(), s.spin().omega(g, n), kmax);
      for (auto& ks : sorted_tuples(n, kmax))
        r.push_back(CheckRecord::compare("tr", spin::j_pipeline_descendant(g, ks).str(), t.at(ks).str()).with_g(g).with_n(n).with_ks(ks));
      return r;
    });
  return jobs;
}

std::string first_difference(const tr::NPointDifferential& a, const tr::NPointDifferential& b) {
  for (auto& [k, v] : a.terms()) {
    auto it = b.terms().find(k);
    if (it == b.terms().end() || it->second != v) return "key " + std::to_string(k) + ": " + v.str();
  }
  for (auto& [k, v] : b.terms())
    if (!a.terms().count(k)) return "key " + std::to_string(k) + ": 0";
  return "";
}

std::vector<Job> doubling_jobs(const RunConfig& cfg, Session& s) {
  std::vector<Job> jobs;
  for (auto [g, n] : tr_range(cfg, std::min(cfg.chimax, 4)))
    jobs.push_back([&s, g, n] {
      const auto& spin_w = s.spin().omega(g, n);
      auto pulled = tr::pullback_to_spin(s.kn().omega(g, n), s.spin().curve());
      CheckRecord rec = pulled == spin_w ? CheckRecord::compare("doubling", std::to_string(spin_w.terms().size()) + " terms",
                                                                std::to_string(pulled.terms().size()) + " terms")
                                         : CheckRecord::compare("doubling", first_difference(spin_w, pulled), first_difference(pulled, spin_w));
      if (rec.status == Status::pass && !(pulled == spin_w)) rec.status = Status::fail;
      return std::vector<CheckRecord>{rec.with_g(g).with_n(n)};
    });
  return jobs;
}

}  // namespace

std::vector<CheckRecord> run_jobs(const std::vector<Job>& jobs, int threads) {
  std::vector<std::vector<CheckRecord>> results(jobs.size());
  auto run_one = [&](std::size_t i) {
    try {
      results[i] = jobs[i]();
    } catch (const std::exception& ex) {
      // a thrown error is a failed check, not a crash of the run
      results[i] = {CheckRecord::compare("error", "no exception", ex.what())};
    }
  };
  if (threads <= 1 || jobs.size() <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min<int>(threads, static_cast<int>(jobs.size())); ++t)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) run_one(i);
      });
    for (auto& th : pool) th.join();
  }
  std::vector<CheckRecord> out;
  for (auto& r : results) out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  return out;
}

Session::Session(RunConfig config) : config_(std::move(config)) {
  config_.validate();
  if (!config_.hodge_table.empty()) hodge::shared_oracle().load_table(config_.hodge_table);
}

Session::~Session() = default;

tr::TREngine& Session::spin() {
  if (!spin_) spin_ = std::make_unique<tr::TREngine>(tr::build_spin_curve());
  return *spin_;
}

tr::TREngine& Session::kn() {
  if (!kn_) kn_ = std::make_unique<tr::TREngine>(tr::build_kn_curve());
  return *kn_;
}

std::vector<Job> Session::jobs(const std::string& suite) {
  if (suite == "psi") return psi_jobs(config_);
  if (suite == "j-def") return jdef_jobs(config_);
  if (suite == "main") return main_jobs(config_);
  if (suite == "n10") return n10_jobs(config_);
  if (suite == "v-lemmas") return vlemma_jobs(config_);
  if (suite == "hat-p") return hatp_jobs(config_);
  if (suite == "regularity") return regularity_jobs(config_);
  if (suite == "anc") return anc_jobs(config_);
  if (suite == "t0") return t0_jobs(config_);
  if (suite == "loc-j") return locj_jobs(config_);
  if (suite == "tr") return tr_jobs(config_, *this);
  if (suite == "doubling") return doubling_jobs(config_, *this);
  throw ConfigError("unknown suite '" + suite + "'");
}

Report Session::run(const std::string& command) {
  auto cmds = commands();
  if (std::find(cmds.begin(), cmds.end(), command) == cmds.end() || command == "dump-invariants")
    throw ConfigError("not a check command: " + command);
  for (auto& name : config_.checks)
    if (std::none_of(suites().begin(), suites().end(), [&](auto& s) { return s.name == name; })) throw ConfigError("unknown suite '" + name + "'");
  std::vector<Job> all;
  for (auto& s : suites()) {
    if (command != "check-all" && s.command != command) continue;
    if (!config_.checks.empty() && std::find(config_.checks.begin(), config_.checks.end(), s.name) == config_.checks.end()) continue;
    auto js = jobs(s.name);
    all.insert(all.end(), js.begin(), js.end());
  }
  Report rep;
  rep.command = command;
  rep.config = config_;
  rep.records = run_jobs(all, config_.jobs);
  return rep;
}

namespace {

std::filesystem::path cache_file(const std::string& dir, const char* name) { return std::filesystem::path(dir) / name; }

}  // namespace

void Session::load_caches() {
  if (config_.cache_dir.empty()) return;
  auto wk = cache_file(config_.cache_dir, "wk.cache");
  if (std::filesystem::exists(wk)) psi::shared_table().load(wk);
  auto sp = cache_file(config_.cache_dir, "spin.trcache");
  if (std::filesystem::exists(sp)) spin().load(sp.string());
  auto k = cache_file(config_.cache_dir, "kn.trcache");
  if (std::filesystem::exists(k)) kn().load(k.string());
}

void Session::save_caches() const {
  if (config_.cache_dir.empty()) return;
  std::filesystem::create_directories(config_.cache_dir);
  psi::shared_table().save(cache_file(config_.cache_dir, "wk.cache"));
  if (spin_) spin_->save(cache_file(config_.cache_dir, "spin.trcache").string());
  if (kn_) kn_->save(cache_file(config_.cache_dir, "kn.trcache").string());
}

std::vector<std::string> Session::dump_invariants(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;

  for (int g = 0; g <= config_.gmax; ++g)
    for (int n = 1; n <= config_.nmax; ++n) {
      if (!stable(g, n)) continue;
      int dim = 3 * g - 3 + n;
      for (auto& ks : sorted_tuples(n, dim))
        if (std::accumulate(ks.begin(), ks.end(), 0) == dim) psi::wk_correlator(g, ks);
    }
  psi::shared_table().save(dir / "wk.cache");
  written.push_back("wk.cache");

  {
    std::ofstream os(dir / "tr_descendants.txt");
    os << "trdes v1\n";
    for (auto [g, n] : tr_range(config_, config_.chimax)) {
      auto t = tr::expand_descendants(spin().curve(), spin().omega(g, n), config_.kmax);
      for (auto& ks : sorted_tuples(n, config_.kmax)) os << g << ';' << tuple_str(ks) << ';' << t.at(ks) << '\n';
    }
    written.push_back("tr_descendants.txt");
  }
  {
    std::ofstream os(dir / "j_ancestors.txt");
    os << "janc v1\n";
    for (int g = 0; g <= config_.gmax; ++g)
      for (int n = 1; n <= config_.nmax; ++n) {
        if (!stable(g, n)) continue;
        for (auto& ls : sorted_tuples(n, config_.kmax)) {
          QPoly v = spin::j_pipeline_ancestor(g, ls);
          if (!v.is_zero()) os << g << ';' << tuple_str(ls) << ';' << v << '\n';
        }
      }
    written.push_back("j_ancestors.txt");
  }
  for (auto [engine, name] : {std::pair{&spin(), "omega_spin.txt"}, {&kn(), "omega_kn.txt"}}) {
    std::ofstream os(dir / name);
    for (auto [g, n] : tr_range(config_, config_.chimax)) os << engine->omega(g, n).export_text(engine->curve().poles);
    written.push_back(name);
  }
  return written;
}

}  // namespace moduli::verify
