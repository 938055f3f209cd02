#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace moduli::verify {

// Run bounds and paths. Only the fields that can change a result go into
// reports (jobs, out and cache-dir do not).
struct RunConfig {
  int gmax = 2;
  int nmax = 4;
  int kmax = 6;
  int dmax = 5;
  int order = 10;
  // TR tables and doubling: all (g, n) with 2g - 2 + n <= chimax, g <= gmax
  int chimax = 4;
  int jobs = 1;
  std::string cache_dir;
  std::string hodge_table;
  std::string out;
  // suite names; empty means every suite of the subcommand
  std::vector<std::string> checks;

  // key = value, '#' starts a comment. Unknown keys raise ConfigError.
  void apply_file(const std::filesystem::path& path);
  void set(const std::string& key, const std::string& value);
  void validate() const;
};

// MODULI_TR_CACHE, or empty.
std::string default_cache_dir();

}  // namespace moduli::verify
