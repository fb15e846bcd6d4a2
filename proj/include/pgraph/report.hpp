#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pgraph {

enum class Status { Pass, Fail, Skipped };

std::string to_string(Status s);

struct CheckRecord {
  std::string id;      // e.g. "T4" or "gap/omega"
  std::string anchor;  // the relation or property the check exercises
  Status status = Status::Pass;
  std::vector<std::string> witness;  // path tokens of the first failure
  std::string detail;
  // Flags a known modelling deviation (e.g. finite receivers standing in for infinite ones).
  std::string flag;
};

struct VerificationReport {
  std::string suite;
  std::string graph_hash;
  std::vector<CheckRecord> checks;
  std::string bounds;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> timings;  // seconds; text output only

  bool failed() const;
  void append(std::vector<CheckRecord> records);
};

enum class ReportFormat { Text, Json };

std::string emit_report(const VerificationReport& r, ReportFormat format);
std::string emit_reports(const std::vector<VerificationReport>& rs, ReportFormat format);

// Accumulates one pass/fail record over many individual cases.
class CheckTally {
 public:
  CheckTally(std::string id, std::string anchor) : id_(std::move(id)), anchor_(std::move(anchor)) {}
  void pass() { ++cases_; }
  void fail(std::vector<std::string> witness, std::string what);
  bool failed() const { return failures_ > 0; }
  CheckRecord record(std::string extra = {}) const;

 private:
  std::string id_;
  std::string anchor_;
  std::size_t cases_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> witness_;
  std::string first_failure_;
};

}  // namespace pgraph
