#pragma once

#include <optional>
#include <string>
#include <vector>

#include "moduli/verify/config.hpp"

namespace moduli::verify {

enum class Status { pass, fail, skip };
const char* status_name(Status s);

struct CheckRecord {
  std::string check;
  std::optional<int> g, n, p, d;
  std::optional<std::vector<int>> ks;
  std::string detail;  // monomial, pinned name, note
  Status status = Status::pass;
  std::string expected, actual;
  std::string skip_reason;

  // pass iff the two exact strings agree
  static CheckRecord compare(std::string check, std::string expected, std::string actual);
  static CheckRecord skipped(std::string check, std::string reason);

  CheckRecord& with_g(int v) { g = v; return *this; }
  CheckRecord& with_n(int v) { n = v; return *this; }
  CheckRecord& with_p(int v) { p = v; return *this; }
  CheckRecord& with_d(int v) { d = v; return *this; }
  CheckRecord& with_ks(std::vector<int> v) { ks = std::move(v); return *this; }
  CheckRecord& with_detail(std::string v) { detail = std::move(v); return *this; }
};

struct Summary {
  int pass = 0, fail = 0, skip = 0;
};

struct Report {
  static constexpr const char* kVersion = "1";
  std::string command;
  RunConfig config;
  std::vector<CheckRecord> records;

  Summary summary() const;
  std::string to_json() const;
  std::string to_csv() const;
};

}  // namespace moduli::verify
