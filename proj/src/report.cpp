#include "pgraph/report.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace pgraph {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Skipped:
      return "skipped";
  }
  return "?";
}

bool VerificationReport::failed() const {
  for (const auto& c : checks)
    if (c.status == Status::Fail) return true;
  return false;
}

void VerificationReport::append(std::vector<CheckRecord> records) {
  for (auto& r : records) checks.push_back(std::move(r));
}

void CheckTally::fail(std::vector<std::string> witness, std::string what) {
  ++cases_;
  if (failures_++ == 0) {
    witness_ = std::move(witness);
    first_failure_ = std::move(what);
  }
}

CheckRecord CheckTally::record(std::string extra) const {
  CheckRecord r;
  r.id = id_;
  r.anchor = anchor_;
  r.status = failures_ ? Status::Fail : Status::Pass;
  std::ostringstream os;
  os << cases_ << " cases";
  if (failures_) os << ", " << failures_ << " failed; first: " << first_failure_;
  if (!extra.empty()) os << "; " << extra;
  r.detail = os.str();
  r.witness = witness_;
  return r;
}

namespace {

nlohmann::ordered_json to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["graph_hash"] = r.graph_hash;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json cj;
    cj["id"] = c.id;
    cj["anchor"] = c.anchor;
    cj["status"] = to_string(c.status);
    cj["witness"] = c.witness;
    cj["detail"] = c.detail;
    if (!c.flag.empty()) cj["flag"] = c.flag;
    j["checks"].push_back(std::move(cj));
  }
  j["bounds"] = r.bounds;
  j["seed"] = r.seed;
  return j;
}

void to_text(std::ostream& os, const VerificationReport& r) {
  os << "suite " << r.suite << "\n";
  os << "graph " << r.graph_hash << "\n";
  os << "bounds " << (r.bounds.empty() ? "none" : r.bounds) << "\n";
  os << "seed " << r.seed << "\n";
  for (const auto& c : r.checks) {
    os << "  [" << to_string(c.status) << "] " << c.id;
    if (!c.anchor.empty()) os << "  (" << c.anchor << ")";
    os << "\n";
    if (!c.detail.empty()) os << "      " << c.detail << "\n";
    if (!c.flag.empty()) os << "      flag: " << c.flag << "\n";
    if (!c.witness.empty()) {
      os << "      witness:";
      for (const auto& w : c.witness) os << ' ' << w;
      os << "\n";
    }
  }
  for (const auto& [name, secs] : r.timings)
    os << "  time " << name << " " << std::fixed << std::setprecision(3) << secs << "s\n";
}

}  // namespace

std::string emit_report(const VerificationReport& r, ReportFormat format) {
  if (format == ReportFormat::Json) return to_json(r).dump(2) + "\n";
  std::ostringstream os;
  to_text(os, r);
  return os.str();
}

std::string emit_reports(const std::vector<VerificationReport>& rs, ReportFormat format) {
  if (format == ReportFormat::Json) {
    if (rs.size() == 1) return emit_report(rs.front(), format);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rs) arr.push_back(to_json(r));
    return arr.dump(2) + "\n";
  }
  std::string out;
  for (const auto& r : rs) out += emit_report(r, format);
  return out;
}

}  // namespace pgraph
