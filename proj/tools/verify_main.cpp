#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "moduli/errors.hpp"
#include "moduli/hodge/hodge.hpp"
#include "moduli/verify/session.hpp"

using namespace moduli;
using namespace moduli::verify;

namespace {

struct Flags {
  std::optional<std::string> config;
  std::optional<int> gmax, nmax, kmax, dmax, order, chimax, jobs;
  std::optional<std::string> cache_dir, hodge_table, out, checks;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "key = value file; flags override it");
  sub->add_option("--gmax", f.gmax, "largest genus (default 2)");
  sub->add_option("--nmax", f.nmax, "largest number of points (default 4)");
  sub->add_option("--kmax", f.kmax, "largest descendant index (default 6)");
  sub->add_option("--dmax", f.dmax, "largest degree in Q (default 5)");
  sub->add_option("--order", f.order, "series order (default 10)");
  sub->add_option("--chimax", f.chimax, "TR range: 2g-2+n <= chimax (default 4)");
  sub->add_option("--cache-dir", f.cache_dir, "cache directory (default $MODULI_TR_CACHE)");
  sub->add_option("--hodge-table", f.hodge_table, "extra Hodge integrals, 'hodge v1' format");
  sub->add_option("--out", f.out, "report path (JSON; CSV next to it) or dump directory");
  sub->add_option("--jobs", f.jobs, "worker threads (default 1)");
  sub->add_option("--checks", f.checks, "comma-separated suite names");
}

RunConfig make_config(const Flags& f) {
  RunConfig c;
  c.cache_dir = default_cache_dir();
  if (f.config) c.apply_file(*f.config);
  auto seti = [&](const char* key, const std::optional<int>& v) {
    if (v) c.set(key, std::to_string(*v));
  };
  seti("gmax", f.gmax);
  seti("nmax", f.nmax);
  seti("kmax", f.kmax);
  seti("dmax", f.dmax);
  seti("order", f.order);
  seti("chimax", f.chimax);
  seti("jobs", f.jobs);
  if (f.cache_dir) c.cache_dir = *f.cache_dir;
  if (f.hodge_table) c.hodge_table = *f.hodge_table;
  if (f.out) c.out = *f.out;
  if (f.checks) c.set("checks", *f.checks);
  c.validate();
  return c;
}

std::string csv_path(const std::string& json_path) {
  auto dot = json_path.rfind(".json");
  if (dot != std::string::npos && dot + 5 == json_path.size()) return json_path.substr(0, dot) + ".csv";
  return json_path + ".csv";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path);
  os << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for J-classes, spin GW localization and Z2-equivariant TR"};
  app.require_subcommand(1);
  Flags flags;
  bool list = false;
  for (auto& cmd : commands()) {
    std::string help = cmd == "dump-invariants" ? "write psi cache, TR and J tables, omega tables" : "";
    if (help.empty())
      for (auto& s : suites())
        if (cmd == "check-all" || s.command == cmd) help += (help.empty() ? "" : ", ") + s.name;
    auto* sub = app.add_subcommand(cmd, cmd == "dump-invariants" ? help : "suites: " + help);
    add_flags(sub, flags);
    if (cmd == "check-all") sub->add_flag("--list", list, "print suite names and exit");
  }
  CLI11_PARSE(app, argc, argv);
  std::string command = app.get_subcommands().front()->get_name();

  if (list) {
    for (auto& s : suites()) std::cout << s.name << '\t' << s.command << '\t' << s.description << '\n';
    return 0;
  }

  try {
    RunConfig cfg = make_config(flags);
    Session session(cfg);
    session.load_caches();

    if (command == "dump-invariants") {
      std::filesystem::path dir = cfg.out.empty() ? "invariants" : cfg.out;
      for (auto& f : session.dump_invariants(dir)) std::cout << (dir / f).string() << '\n';
      session.save_caches();
      return 0;
    }

    Report rep = session.run(command);
    session.save_caches();
    std::string json = rep.to_json();
    if (cfg.out.empty()) {
      std::cout << json;
    } else {
      write_file(cfg.out, json);
      write_file(csv_path(cfg.out), rep.to_csv());
    }
    Summary s = rep.summary();
    std::cerr << command << ": pass " << s.pass << ", fail " << s.fail << ", skip " << s.skip << '\n';
    for (auto& r : rep.records)
      if (r.status == Status::fail) std::cerr << "FAIL " << r.check << (r.detail.empty() ? "" : " " + r.detail) << ": expected " << r.expected << ", got " << r.actual << '\n';
    return s.fail == 0 ? 0 : 1;
  } catch (const ConfigError& ex) {
    std::cerr << "verify: " << ex.what() << '\n';
    return 2;
  } catch (const LoadError& ex) {
    std::cerr << "verify: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "verify: internal error: " << ex.what() << '\n';
    return 3;
  }
}
