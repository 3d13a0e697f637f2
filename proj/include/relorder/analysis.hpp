#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "relorder/profiles.hpp"

namespace relorder {

inline constexpr double kDefaultSatThresholdSeconds = 30.0;

// Click observation for one ranked document. dwell_seconds is 0 when the
// document was not clicked.
struct ClickEvent {
  int doc_rank = 0;
  bool clicked = false;
  double dwell_seconds = 0.0;
};

// A SAT click: clicked and browsed strictly longer than the threshold.
bool is_sat_click(const ClickEvent& event,
                  double threshold_seconds = kDefaultSatThresholdSeconds);

struct LoggedDocument {
  std::string doc_id;
  // Raw per-dimension scores, or probabilities when the log is already
  // normalized.
  DimensionScores scores{};
  ClickEvent click;
};

// One query with its ranked result list, sorted by rank (1..n contiguous).
struct QueryRecord {
  std::string query_id;
  std::vector<LoggedDocument> docs;
};

struct DocumentProfiles {
  std::vector<DimensionalProfile> profiles;  // aligned with record.docs
  bool degenerate = false;  // some dimension had max == min under min-max
};

// Builds one profile per document. Raw scores are min-max normalized per
// dimension across the record's documents; with scores_normalized they are
// validated and taken as probabilities directly.
DocumentProfiles profile_documents(const QueryRecord& record,
                                   bool scores_normalized = false);

// Queries whose top two documents have matching profiles. Records with fewer
// than two documents are skipped.
std::vector<std::string> find_sft(std::span<const QueryRecord> log,
                                  MatchingCriteria criteria,
                                  bool scores_normalized = false);

// The subset of sft_ids whose rank-2 document is SAT-clicked.
std::vector<std::string> find_sftsc(
    std::span<const QueryRecord> log, std::span<const std::string> sft_ids,
    double sat_threshold_seconds = kDefaultSatThresholdSeconds);

// The subset of sftsc_ids whose rank-1 document is NOT SAT-clicked: the
// second document satisfied the user while the equally-profiled first one
// did not.
std::vector<std::string> find_irq(
    std::span<const QueryRecord> log, std::span<const std::string> sftsc_ids,
    double sat_threshold_seconds = kDefaultSatThresholdSeconds);

struct ReportRow {
  double matching_criteria = 0.0;
  std::size_t sft_count = 0;
  std::size_t sftsc_count = 0;
  std::size_t irq_count = 0;
  double irq_percent_of_sft = 0.0;  // 100 * irq / sft, rounded to 2 decimals
};

struct AnalysisReport {
  std::vector<ReportRow> rows;  // one per criteria, in caller order
  std::size_t total_queries = 0;
  std::size_t skipped_queries = 0;     // fewer than two documents
  std::size_t degenerate_queries = 0;  // min-max hit max == min somewhere
};

struct AnalysisOptions {
  std::vector<double> criteria;  // at least one, reported in this order
  double sat_threshold_seconds = kDefaultSatThresholdSeconds;
  bool scores_normalized = false;
};

AnalysisReport analyze(std::span<const QueryRecord> log,
                       const AnalysisOptions& options);

}  // namespace relorder
