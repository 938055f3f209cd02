#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string verify_bin() {
  const char* env = std::getenv("VERIFY_BIN");
  REQUIRE_MESSAGE(env != nullptr, "VERIFY_BIN not set");
  return env;
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("moduli_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + verify_bin() + " " + args + " 2>/dev/null >/dev/null";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json report(const fs::path& p) { return json::parse(slurp(p)); }

}  // namespace

TEST_CASE("check-main writes a JSON report and a CSV summary") {
  auto dir = scratch("main");
  REQUIRE(run("check-main --gmax 2 --nmax 3 --out " + (dir / "r.json").string()) == 0);
  json j = report(dir / "r.json");
  CHECK(j["version"] == "1");
  CHECK(j["config"]["gmax"] == 2);
  CHECK(j["config"]["nmax"] == 3);
  CHECK(j["summary"]["fail"] == 0);
  CHECK(j["summary"]["pass"].get<int>() > 0);
  CHECK(j["records"].size() == j["summary"]["pass"].get<std::size_t>() + j["summary"]["skip"].get<std::size_t>());
  bool pinned = false;
  for (auto& r : j["records"]) {
    if (r["status"] == "skip") CHECK(!r["skip_reason"].get<std::string>().empty());
    if (r["check"] == "main" && r.value("g", -1) == 1 && r.value("n", -1) == 2 && r.value("p", -1) == 2 && r.value("detail", "") == "1") {
      pinned = true;
      CHECK(r["actual"] == "0");
    }
  }
  CHECK(pinned);
  std::string csv = slurp(dir / "r.csv");
  CHECK(csv.rfind("check,g,n,p,d,k,detail,status,expected,actual,skip_reason\n", 0) == 0);
}

TEST_CASE("check-n10 reports the three Hodge comparisons") {
  auto dir = scratch("n10");
  REQUIRE(run("check-n10 --out " + (dir / "r.json").string()) == 0);
  json j = report(dir / "r.json");
  std::set<std::string> values;
  for (auto& r : j["records"])
    if (r["status"] == "pass") values.insert(r["actual"].get<std::string>());
  CHECK(values.count("1/24"));
  CHECK(values.count("-1/2880"));
  CHECK(values.count("7/5760"));
}

TEST_CASE("genus 3 without a Hodge table is skipped, not failed") {
  auto dir = scratch("g3");
  REQUIRE(run("check-n10 --gmax 3 --out " + (dir / "r.json").string()) == 0);
  json j = report(dir / "r.json");
  bool skipped = false;
  for (auto& r : j["records"])
    if (r["g"] == 3 && r["n"] == 0) {
      skipped = r["status"] == "skip";
      CHECK(r["skip_reason"].get<std::string>().find("hodge-unsupported") == 0);
    }
  CHECK(skipped);
}

TEST_CASE("config file, flag override and bad input") {
  auto dir = scratch("config");
  std::ofstream(dir / "run.cfg") << "# small run\ngmax = 1\nkmax = 3\nchecks = tr\n";
  REQUIRE(run("check-tr-spin --config " + (dir / "run.cfg").string() + " --kmax 2 --out " + (dir / "r.json").string()) == 0);
  json j = report(dir / "r.json");
  CHECK(j["config"]["gmax"] == 1);
  CHECK(j["config"]["kmax"] == 2);
  CHECK(j["config"]["checks"] == json::array({"tr"}));
  for (auto& r : j["records"]) CHECK(r["check"].get<std::string>().rfind("tr", 0) == 0);

  std::ofstream(dir / "bad.cfg") << "gmax = two\n";
  CHECK(run("check-main --config " + (dir / "bad.cfg").string()) == 2);
  std::ofstream(dir / "unknown.cfg") << "genus = 2\n";
  CHECK(run("check-main --config " + (dir / "unknown.cfg").string()) == 2);
  CHECK(run("check-main --gmax -1") == 2);
  CHECK(run("check-main --checks nonsense") == 2);
  CHECK(run("no-such-command") != 0);
}

TEST_CASE("reports do not depend on the number of jobs") {
  auto dir = scratch("jobs");
  std::string common = "check-anc --gmax 1 --nmax 3 --kmax 3 --dmax 3 --out ";
  REQUIRE(run(common + (dir / "a.json").string() + " --jobs 1") == 0);
  REQUIRE(run(common + (dir / "b.json").string() + " --jobs 3") == 0);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
}

TEST_CASE("TR cache dir: written, reused, and corruption rejected") {
  auto dir = scratch("cache");
  auto cache = dir / "cache";
  std::string args = "check-tr-spin --gmax 1 --chimax 3 --kmax 3 --order 6 --out ";
  REQUIRE(run(args + (dir / "a.json").string(), "MODULI_TR_CACHE=" + cache.string()) == 0);
  CHECK(fs::exists(cache / "spin.trcache"));
  CHECK(fs::exists(cache / "kn.trcache"));
  CHECK(fs::exists(cache / "wk.cache"));
  REQUIRE(run(args + (dir / "b.json").string() + " --cache-dir " + cache.string()) == 0);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));

  std::string text = slurp(cache / "spin.trcache");
  auto pos = text.find("begin 1 1");
  REQUIRE(pos != std::string::npos);
  auto line = text.find('\n', pos) + 1;
  text.insert(text.find(' ', line) + 1, "5");
  std::ofstream(cache / "spin.trcache", std::ios::binary) << text;
  CHECK(run(args + (dir / "c.json").string() + " --cache-dir " + cache.string()) == 2);
}

TEST_CASE("dump-invariants writes its tables") {
  auto dir = scratch("dump");
  REQUIRE(run("dump-invariants --gmax 1 --nmax 3 --kmax 3 --chimax 3 --out " + dir.string()) == 0);
  for (auto name : {"wk.cache", "tr_descendants.txt", "j_ancestors.txt", "omega_spin.txt", "omega_kn.txt"}) CHECK(fs::exists(dir / name));
  CHECK(slurp(dir / "wk.cache").rfind("wkcache v1\n", 0) == 0);
  std::string des = slurp(dir / "tr_descendants.txt");
  CHECK(des.find("0;0,0,0;-Q\n") != std::string::npos);
  CHECK(slurp(dir / "omega_spin.txt").find("omega g=0 n=3") != std::string::npos);
}

TEST_CASE("a malformed Hodge table is refused") {
  auto dir = scratch("hodge");
  std::ofstream(dir / "h.txt") << "hodge v1\n3;1;3;not-a-number\n";
  CHECK(run("check-n10 --gmax 3 --hodge-table " + (dir / "h.txt").string()) == 2);
}
