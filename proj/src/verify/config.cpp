#include "moduli/verify/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "moduli/errors.hpp"

namespace moduli::verify {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& key, const std::string& value) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) throw ConfigError("config: " + key + " expects an integer, got '" + value + "'");
  return v;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "gmax") gmax = parse_int(key, value);
  else if (key == "nmax") nmax = parse_int(key, value);
  else if (key == "kmax") kmax = parse_int(key, value);
  else if (key == "dmax") dmax = parse_int(key, value);
  else if (key == "order") order = parse_int(key, value);
  else if (key == "chimax") chimax = parse_int(key, value);
  else if (key == "jobs") jobs = parse_int(key, value);
  else if (key == "cache-dir") cache_dir = value;
  else if (key == "hodge-table") hodge_table = value;
  else if (key == "out") out = value;
  else if (key == "checks") {
    checks.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!trim(item).empty()) checks.push_back(trim(item));
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

void RunConfig::apply_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config: line " + std::to_string(lineno) + ": expected key = value");
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void RunConfig::validate() const {
  for (auto [name, v] : {std::pair{"gmax", gmax}, {"nmax", nmax}, {"kmax", kmax}, {"dmax", dmax}, {"order", order}, {"chimax", chimax}})
    if (v < 0) throw ConfigError(std::string("config: ") + name + " must be >= 0");
  if (jobs < 1) throw ConfigError("config: jobs must be >= 1");
  // byte-per-variable keys in the TR tables
  if (chimax > 6) throw ConfigError("config: chimax above 6 is not supported");
  if (kmax > 60) throw ConfigError("config: kmax above 60 is not supported");
}

std::string default_cache_dir() {
  const char* env = std::getenv("MODULI_TR_CACHE");
  return env ? std::string(env) : std::string();
}

}  // namespace moduli::verify
