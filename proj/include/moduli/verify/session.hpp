#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "moduli/tr/engine.hpp"
#include "moduli/verify/config.hpp"
#include "moduli/verify/report.hpp"

namespace moduli::verify {

using Job = std::function<std::vector<CheckRecord>()>;

struct SuiteInfo {
  std::string name;
  std::string command;  // subcommand that owns the suite
  std::string description;
};
// In report order.
const std::vector<SuiteInfo>& suites();
std::vector<std::string> commands();

class Session {
 public:
  explicit Session(RunConfig config);
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const RunConfig& config() const { return config_; }
  tr::TREngine& spin();
  tr::TREngine& kn();

  // Jobs of one suite, in a fixed order.
  std::vector<Job> jobs(const std::string& suite);
  // Runs every suite of `command` (check-all: all of them) filtered by
  // config.checks. Records come out in suite/job order whatever config.jobs is.
  Report run(const std::string& command);

  // Writes the psi cache, TR descendant tables, J-pipeline ancestors and
  // the omega tables into `dir`; returns the file names written.
  std::vector<std::string> dump_invariants(const std::filesystem::path& dir);

  // No-ops without a cache dir. Loading rejects corrupted files (LoadError).
  void load_caches();
  void save_caches() const;

 private:
  RunConfig config_;
  std::unique_ptr<tr::TREngine> spin_, kn_;
};

// Runs jobs on `threads` workers; results keep job order.
std::vector<CheckRecord> run_jobs(const std::vector<Job>& jobs, int threads);

}  // namespace moduli::verify
