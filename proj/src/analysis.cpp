#include "relorder/analysis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace relorder {

bool is_sat_click(const ClickEvent& event, double threshold_seconds) {
  if (!(threshold_seconds >= 0.0)) {
    std::ostringstream msg;
    msg << "SAT dwell threshold must be non-negative, got "
        << threshold_seconds;
    throw std::domain_error(msg.str());
  }
  return event.clicked && event.dwell_seconds > threshold_seconds;
}

DocumentProfiles profile_documents(const QueryRecord& record,
                                   bool scores_normalized) {
  DocumentProfiles result;
  const std::size_t n = record.docs.size();
  result.profiles.resize(n);

  if (scores_normalized) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        result.profiles[i] = build_profile(record.docs[i].scores);
      } catch (const std::exception& e) {
        throw std::domain_error("query '" + record.query_id +
                                "', document '" + record.docs[i].doc_id +
                                "': " + e.what());
      }
    }
    return result;
  }

  std::vector<double> column(n);
  for (std::size_t dim = 0; dim < kDimensionCount; ++dim) {
    for (std::size_t i = 0; i < n; ++i) {
      column[i] = record.docs[i].scores[dim];
    }
    MinMaxResult normalized = minmax_normalize(column);
    result.degenerate = result.degenerate || normalized.degenerate;
    for (std::size_t i = 0; i < n; ++i) {
      result.profiles[i].values[dim] = normalized.values[i];
    }
  }
  return result;
}

std::vector<std::string> find_sft(std::span<const QueryRecord> log,
                                  MatchingCriteria criteria,
                                  bool scores_normalized) {
  std::vector<std::string> ids;
  for (const QueryRecord& record : log) {
    if (record.docs.size() < 2) {
      continue;
    }
    const DocumentProfiles docs = profile_documents(record, scores_normalized);
    if (matches(docs.profiles[0], docs.profiles[1], criteria)) {
      ids.push_back(record.query_id);
    }
  }
  return ids;
}

namespace {

using RecordIndex = std::unordered_map<std::string_view, const QueryRecord*>;

RecordIndex index_log(std::span<const QueryRecord> log) {
  RecordIndex index;
  index.reserve(log.size());
  for (const QueryRecord& record : log) {
    index.emplace(record.query_id, &record);
  }
  return index;
}

const QueryRecord& record_or_throw(const RecordIndex& index,
                                   const std::string& id) {
  const auto it = index.find(id);
  if (it == index.end()) {
    throw std::invalid_argument("query id not present in the log: '" + id +
                                "'");
  }
  return *it->second;
}

}  // namespace

std::vector<std::string> find_sftsc(std::span<const QueryRecord> log,
                                    std::span<const std::string> sft_ids,
                                    double sat_threshold_seconds) {
  const RecordIndex index = index_log(log);
  std::vector<std::string> ids;
  for (const std::string& id : sft_ids) {
    const QueryRecord& record = record_or_throw(index, id);
    if (record.docs.size() >= 2 &&
        is_sat_click(record.docs[1].click, sat_threshold_seconds)) {
      ids.push_back(id);
    }
  }
  return ids;
}

std::vector<std::string> find_irq(std::span<const QueryRecord> log,
                                  std::span<const std::string> sftsc_ids,
                                  double sat_threshold_seconds) {
  const RecordIndex index = index_log(log);
  std::vector<std::string> ids;
  for (const std::string& id : sftsc_ids) {
    const QueryRecord& record = record_or_throw(index, id);
    if (!is_sat_click(record.docs[0].click, sat_threshold_seconds)) {
      ids.push_back(id);
    }
  }
  return ids;
}

namespace {

double percent_of(std::size_t part, std::size_t whole) {
  if (whole == 0) {
    return 0.0;
  }
  const double percent =
      100.0 * static_cast<double>(part) / static_cast<double>(whole);
  return std::round(percent * 100.0) / 100.0;
}

}  // namespace

AnalysisReport analyze(std::span<const QueryRecord> log,
                       const AnalysisOptions& options) {
  if (options.criteria.empty()) {
    throw std::invalid_argument("at least one matching criteria is required");
  }

  AnalysisReport report;
  report.total_queries = log.size();
  for (const QueryRecord& record : log) {
    if (record.docs.size() < 2) {
      ++report.skipped_queries;
    } else if (!options.scores_normalized &&
               profile_documents(record, false).degenerate) {
      ++report.degenerate_queries;
    }
  }

  for (double threshold : options.criteria) {
    const MatchingCriteria criteria(threshold);
    const auto sft = find_sft(log, criteria, options.scores_normalized);
    const auto sftsc = find_sftsc(log, sft, options.sat_threshold_seconds);
    const auto irq = find_irq(log, sftsc, options.sat_threshold_seconds);

    ReportRow row;
    row.matching_criteria = threshold;
    row.sft_count = sft.size();
    row.sftsc_count = sftsc.size();
    row.irq_count = irq.size();
    row.irq_percent_of_sft = percent_of(row.irq_count, row.sft_count);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace relorder
