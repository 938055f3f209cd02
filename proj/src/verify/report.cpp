#include "moduli/verify/report.hpp"

#include <json.hpp>
#include <sstream>

#include "moduli/errors.hpp"

namespace moduli::verify {

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip: return "skip";
  }
  return "?";
}

CheckRecord CheckRecord::compare(std::string check, std::string expected, std::string actual) {
  CheckRecord r;
  r.check = std::move(check);
  r.status = expected == actual ? Status::pass : Status::fail;
  r.expected = std::move(expected);
  r.actual = std::move(actual);
  return r;
}

CheckRecord CheckRecord::skipped(std::string check, std::string reason) {
  if (reason.empty()) throw InternalError("skipped record without a reason");
  CheckRecord r;
  r.check = std::move(check);
  r.status = Status::skip;
  r.skip_reason = std::move(reason);
  return r;
}

Summary Report::summary() const {
  Summary s;
  for (auto& r : records) {
    if (r.status == Status::pass) ++s.pass;
    else if (r.status == Status::fail) ++s.fail;
    else ++s.skip;
  }
  return s;
}

std::string Report::to_json() const {
  using nlohmann::ordered_json;
  ordered_json j;
  j["version"] = kVersion;
  j["command"] = command;
  ordered_json c;
  c["gmax"] = config.gmax;
  c["nmax"] = config.nmax;
  c["kmax"] = config.kmax;
  c["dmax"] = config.dmax;
  c["order"] = config.order;
  c["chimax"] = config.chimax;
  c["hodge_table"] = config.hodge_table;
  c["checks"] = config.checks;
  j["config"] = c;
  Summary s = summary();
  j["summary"] = ordered_json{{"pass", s.pass}, {"fail", s.fail}, {"skip", s.skip}};
  ordered_json recs = ordered_json::array();
  for (auto& r : records) {
    ordered_json o;
    o["check"] = r.check;
    if (r.g) o["g"] = *r.g;
    if (r.n) o["n"] = *r.n;
    if (r.p) o["p"] = *r.p;
    if (r.d) o["d"] = *r.d;
    if (r.ks) o["k"] = *r.ks;
    if (!r.detail.empty()) o["detail"] = r.detail;
    o["status"] = status_name(r.status);
    if (r.status != Status::skip) {
      o["expected"] = r.expected;
      o["actual"] = r.actual;
    } else {
      o["skip_reason"] = r.skip_reason;
    }
    recs.push_back(std::move(o));
  }
  j["records"] = std::move(recs);
  return j.dump(1) + "\n";
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string opt(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }

}  // namespace

std::string Report::to_csv() const {
  std::ostringstream os;
  os << "check,g,n,p,d,k,detail,status,expected,actual,skip_reason\n";
  for (auto& r : records) {
    std::string ks;
    if (r.ks)
      for (std::size_t i = 0; i < r.ks->size(); ++i) ks += (i ? " " : "") + std::to_string((*r.ks)[i]);
    os << csv_field(r.check) << ',' << opt(r.g) << ',' << opt(r.n) << ',' << opt(r.p) << ',' << opt(r.d) << ',' << ks << ','
       << csv_field(r.detail) << ',' << status_name(r.status) << ',' << csv_field(r.expected) << ',' << csv_field(r.actual) << ','
       << csv_field(r.skip_reason) << '\n';
  }
  return os.str();
}

}  // namespace moduli::verify
