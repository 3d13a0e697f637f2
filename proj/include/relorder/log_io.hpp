#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "relorder/analysis.hpp"

namespace relorder {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse or invariant failure in a JSONL log, addressed by line number.
class LogFormatError : public std::runtime_error {
 public:
  LogFormatError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// JSON Lines log format, one query per line:
//   {"query_id": "...", "docs": [{"doc_id": "...", "rank": 1,
//     "scores": {"habit": x, ..., "understandability": x},
//     "clicked": true, "dwell_seconds": 42.0}, ...]}
// Reading validates every record invariant (contiguous ranks starting at 1,
// finite scores, zero dwell on unclicked documents, unique query ids) and
// reports violations with the offending line number. Documents are returned
// sorted by rank.
std::vector<QueryRecord> read_log(std::istream& in);
std::vector<QueryRecord> read_log_file(const std::filesystem::path& path);

void write_log(std::ostream& out, std::span<const QueryRecord> log);
void write_log_file(const std::filesystem::path& path,
                    std::span<const QueryRecord> log);

void write_report_csv(std::ostream& out, const AnalysisReport& report);
void write_report_json(std::ostream& out, const AnalysisReport& report);
void write_report_text(std::ostream& out, const AnalysisReport& report);

}  // namespace relorder
