/// @file report.hpp
/// @brief Structured verification reports: one entry per claim checked,
///        with exact expected/computed values and JSON/text rendering.
#ifndef TWISTOR_REPORT_HPP
#define TWISTOR_REPORT_HPP

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace twistor {

struct ReportEntry {
  std::string claim_id;
  std::string expected;
  std::string computed;
  bool pass = false;
};

/// Accumulates claim-level checks.  An entry passes iff the expected and
/// computed renderings are exactly equal; no tolerance is ever applied.
class VerificationReport {
 public:
  template <typename E, typename C>
  void check(const std::string& claim_id, const E& expected, const C& computed) {
    ReportEntry entry;
    entry.claim_id = claim_id;
    entry.expected = render(expected);
    entry.computed = render(computed);
    entry.pass = (entry.expected == entry.computed);
    entries_.push_back(std::move(entry));
  }
  void check_bool(const std::string& claim_id, bool ok) { check(claim_id, true, ok); }

  void merge(const VerificationReport& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  }

  const std::vector<ReportEntry>& entries() const { return entries_; }
  int failures() const {
    int n = 0;
    for (const auto& e : entries_) n += e.pass ? 0 : 1;
    return n;
  }
  int passes() const { return static_cast<int>(entries_.size()) - failures(); }
  bool all_pass() const { return failures() == 0; }

  nlohmann::json to_json() const {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : entries_)
      entries.push_back({{"claim_id", e.claim_id},
                         {"expected", e.expected},
                         {"computed", e.computed},
                         {"pass", e.pass}});
    return {{"entries", entries}, {"pass", passes()}, {"fail", failures()}};
  }

  /// One line per entry, mirroring the JSON report.
  std::string to_text() const {
    std::ostringstream out;
    for (const auto& e : entries_)
      out << (e.pass ? "PASS" : "FAIL") << "  " << e.claim_id << "  expected=" << e.expected
          << "  computed=" << e.computed << "\n";
    out << "pass=" << passes() << " fail=" << failures() << "\n";
    return out.str();
  }

 private:
  template <typename T>
  static std::string render(const T& value) {
    if constexpr (std::is_same_v<T, bool>) {
      return value ? "true" : "false";
    } else if constexpr (std::is_convertible_v<T, std::string>) {
      return std::string(value);
    } else {
      std::ostringstream s;
      s << value;
      return s.str();
    }
  }

  std::vector<ReportEntry> entries_;
};

}  // namespace twistor

#endif  // TWISTOR_REPORT_HPP
