// Acceptance: criteria 1-10, one line each, exact comparisons only.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "moduli/hodge/hodge.hpp"
#include "moduli/kappa/kappa.hpp"
#include "moduli/psi/correlators.hpp"
#include "moduli/tr/expansion.hpp"
#include "moduli/verify/session.hpp"

using namespace moduli;
using exact::Rational;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
};

// Runs suites in-process; passes iff no record failed and something was checked.
Outcome suites(const verify::RunConfig& cfg, std::initializer_list<const char*> names) {
  verify::Session session(cfg);
  int pass = 0, skip = 0;
  Outcome o;
  for (auto name : names) {
    auto recs = verify::run_jobs(session.jobs(name), 1);
    for (auto& r : recs) {
      if (r.status == verify::Status::pass) ++pass;
      else if (r.status == verify::Status::skip) ++skip;
      else {
        if (o.ok) o.note = "first failure: " + r.check + " " + r.detail + " expected " + r.expected + " got " + r.actual + "; ";
        o.ok = false;
      }
    }
  }
  if (pass == 0) o.ok = false;
  o.note += std::to_string(pass) + " exact checks";
  if (skip) o.note += ", " + std::to_string(skip) + " skipped";
  return o;
}

void expect(Outcome& o, bool cond, const std::string& what) {
  if (!cond) {
    o.ok = false;
    o.note = "mismatch: " + what + "; " + o.note;
  }
}

Outcome criterion1() {
  Outcome o;
  expect(o, psi::wk_correlator(0, {0, 0, 0}) == Rational(1), "<tau_0^3>_0");
  expect(o, psi::wk_correlator(1, {1}) == Rational(1, 24), "<tau_1>_1");
  expect(o, psi::wk_correlator(2, {4}) == Rational(1, 1152), "<tau_4>_2");
  expect(o, psi::wk_correlator(1, {0, 0, 2, 2}) == Rational(1, 6), "<tau_0 tau_0 tau_2 tau_2>_1");
  o.note += "4 values";
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (int p = 1; p <= 6; ++p) expect(o, kappa::j_class(p) == kappa::j_class_via_multiindex(p), "J_" + std::to_string(p));
  o.note += "degrees 1-6";
  return o;
}

Outcome criterion3() {
  verify::RunConfig cfg;
  cfg.gmax = 3;
  cfg.nmax = 4;
  Outcome o = suites(cfg, {"main"});
  // hand value on M_{1,2}: 1/2 * 1/8 - 3/2 * 1/24
  expect(o, kappa::mixed_integral(1, 2, kappa::KappaMonomial({1, 1})) == Rational(1, 8), "int kappa_1^2 on M_{1,2}");
  expect(o, kappa::mixed_integral(1, 2, kappa::KappaMonomial({2})) == Rational(1, 24), "int kappa_2 on M_{1,2}");
  expect(o, kappa::pair_j(1, 2, 2, kappa::KappaMonomial()) == Rational(0), "int J_2 on M_{1,2}");
  return o;
}

Outcome criterion4() {
  Outcome o;
  Rational j1 = kappa::pair_j(1, 1, 1, kappa::KappaMonomial());
  Rational j3 = kappa::pair_j(2, 1, 3, kappa::KappaMonomial({}, {1}));
  Rational j2 = kappa::pair_j(2, 0, 2, kappa::KappaMonomial({1}));
  expect(o, j1 == Rational(1, 24), "int J_1 on M_{1,1} = " + j1.str());
  expect(o, j3 == Rational(-1, 2880), "int J_3 psi_1 on M_{2,1} = " + j3.str());
  expect(o, j2 == Rational(7, 5760), "int J_2 kappa_1 on M_2 = " + j2.str());
  // the same three from lambda_g lambda_a integrals
  expect(o, j1 == hodge::one_point_hodge(hodge::HodgeKey(1, 0, 0)), "lambda_1 on M_{1,1}");
  expect(o, j3 == -hodge::one_point_hodge(hodge::HodgeKey(2, 1, 1)), "lambda_2 lambda_1 psi on M_{2,1}");
  expect(o, j2 == hodge::one_point_hodge(hodge::HodgeKey(2, 0, 2)), "lambda_2 psi^2 on M_{2,1}");
  o.note += "3 values, each also against the Hodge oracle";
  return o;
}

Outcome criterion5() {
  verify::RunConfig cfg;
  cfg.order = 10;
  return suites(cfg, {"v-lemmas"});
}

Outcome criterion6() {
  verify::RunConfig cfg;
  cfg.gmax = 2;
  cfg.nmax = 3;
  cfg.kmax = 4;
  cfg.dmax = 4;
  return suites(cfg, {"anc"});
}

Outcome criterion7() {
  verify::RunConfig cfg;
  cfg.gmax = 2;
  cfg.nmax = 4;
  cfg.kmax = 5;
  return suites(cfg, {"regularity"});
}

Outcome criterion8() {
  verify::RunConfig cfg;
  cfg.gmax = 2;
  cfg.chimax = 4;
  cfg.kmax = 6;
  cfg.order = 10;  // (0,2) through k_i <= 8
  Outcome o = suites(cfg, {"tr"});
  tr::TREngine e(tr::build_spin_curve());
  auto t = tr::expand_descendants(e.curve(), e.omega(0, 3), 0);
  expect(o, t.at({0, 0, 0}) == exact::QPoly::monomial(Rational(-1), 1), "(0,3) at k = 0 is " + t.at({0, 0, 0}).str());
  return o;
}

Outcome criterion9() {
  verify::RunConfig cfg;
  cfg.gmax = 2;
  cfg.chimax = 3;
  return suites(cfg, {"doubling"});
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion10() {
  Outcome o;
  const char* bin = std::getenv("VERIFY_BIN");
  std::string a, b;
  if (bin) {
    auto dir = std::filesystem::temp_directory_path() / "moduli_acceptance";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    for (auto [jobs, name] : {std::pair{1, "a.json"}, {4, "b.json"}}) {
      std::string cmd = std::string(bin) + " check-all --jobs " + std::to_string(jobs) + " --out " + (dir / name).string() + " 2>/dev/null";
      int rc = std::system(cmd.c_str());
      if (!WIFEXITED(rc) || WEXITSTATUS(rc) != 0) {
        o.ok = false;
        o.note = "check-all exited with status " + std::to_string(WIFEXITED(rc) ? WEXITSTATUS(rc) : -1) + "; ";
      }
    }
    a = slurp(dir / "a.json");
    b = slurp(dir / "b.json");
    o.note += "two check-all processes, --jobs 1 and 4";
  } else {
    verify::RunConfig c1, c4;
    c4.jobs = 4;
    verify::Session s1(c1), s4(c4);
    a = s1.run("check-all").to_json();
    b = s4.run("check-all").to_json();
    o.note += "in-process check-all, jobs 1 and 4";
  }
  expect(o, !a.empty() && a == b, "reports differ");
  o.note += ", " + std::to_string(a.size()) + " bytes";
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"psi correlators", criterion1},
      {"J-class definitions agree", criterion2},
      {"J_p pairings vanish, g <= 3, n <= 4", criterion3},
      {"J_{2g-1}, J_{2g-2} against Hodge integrals", criterion4},
      {"V-function lemmas", criterion5},
      {"localization ancestors = shifted KW, d = 1..4", criterion6},
      {"descendants regular, vanishing, homogeneous", criterion7},
      {"TR tables = J-pipeline, (0,2), (0,3) = -Q", criterion8},
      {"spin omega = 2^{2g-2+n} kn omega", criterion9},
      {"check-all report independent of --jobs", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& ex) {
      o.ok = false;
      o.note = std::string("exception: ") + ex.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << i + 1 << ": " << (o.ok ? "PASS" : "FAIL") << "  " << criteria[i].first << " (" << o.note << "; " << std::fixed;
    std::cout.precision(1);
    std::cout << secs << " s)" << std::endl;
    if (!o.ok) ++failed;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << std::endl;
  return failed ? 1 : 0;
}
