#include "relorder/log_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

namespace relorder {

LogFormatError::LogFormatError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw LogFormatError(line, message);
}

LoggedDocument parse_document(const json& j, const std::string& query_id,
                              std::size_t line) {
  const std::string context = "query '" + query_id + "'";
  if (!j.is_object()) {
    fail(line, context + ": every docs entry must be an object");
  }
  LoggedDocument doc;

  if (!j.contains("doc_id") || !j["doc_id"].is_string()) {
    fail(line, context + ": document is missing a string 'doc_id'");
  }
  doc.doc_id = j["doc_id"].get<std::string>();
  const std::string doc_context = context + ", document '" + doc.doc_id + "'";

  if (!j.contains("rank") || !j["rank"].is_number_integer()) {
    fail(line, doc_context + ": missing integer 'rank'");
  }
  doc.click.doc_rank = j["rank"].get<int>();
  if (doc.click.doc_rank < 1) {
    fail(line, doc_context + ": rank must be positive, got " +
                   std::to_string(doc.click.doc_rank));
  }

  if (!j.contains("scores") || !j["scores"].is_object()) {
    fail(line, doc_context + ": missing 'scores' object");
  }
  const json& scores = j["scores"];
  for (std::size_t d = 0; d < kDimensionCount; ++d) {
    const std::string key(kDimensionNames[d]);
    if (!scores.contains(key)) {
      fail(line, doc_context + ": missing dimension '" + key + "'");
    }
    if (!scores[key].is_number()) {
      fail(line, doc_context + ": score for '" + key + "' is not a number");
    }
    const double value = scores[key].get<double>();
    if (!std::isfinite(value)) {
      fail(line, doc_context + ": score for '" + key + "' is not finite");
    }
    doc.scores[d] = value;
  }

  if (!j.contains("clicked") || !j["clicked"].is_boolean()) {
    fail(line, doc_context + ": missing boolean 'clicked'");
  }
  doc.click.clicked = j["clicked"].get<bool>();

  if (!j.contains("dwell_seconds") || !j["dwell_seconds"].is_number()) {
    fail(line, doc_context + ": missing numeric 'dwell_seconds'");
  }
  doc.click.dwell_seconds = j["dwell_seconds"].get<double>();
  if (!(doc.click.dwell_seconds >= 0.0) ||
      !std::isfinite(doc.click.dwell_seconds)) {
    fail(line, doc_context + ": dwell_seconds must be non-negative");
  }
  if (!doc.click.clicked && doc.click.dwell_seconds != 0.0) {
    fail(line,
         doc_context + ": dwell_seconds must be 0 for unclicked documents");
  }
  return doc;
}

QueryRecord parse_record(const std::string& text, std::size_t line) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(line, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) {
    fail(line, "each log line must be a JSON object");
  }
  if (!j.contains("query_id") || !j["query_id"].is_string()) {
    fail(line, "missing string 'query_id'");
  }

  QueryRecord record;
  record.query_id = j["query_id"].get<std::string>();
  if (!j.contains("docs") || !j["docs"].is_array() || j["docs"].empty()) {
    fail(line,
         "query '" + record.query_id + "': 'docs' must be a non-empty array");
  }
  for (const json& doc : j["docs"]) {
    record.docs.push_back(parse_document(doc, record.query_id, line));
  }

  std::sort(record.docs.begin(), record.docs.end(),
            [](const LoggedDocument& lhs, const LoggedDocument& rhs) {
              return lhs.click.doc_rank < rhs.click.doc_rank;
            });
  for (std::size_t i = 0; i < record.docs.size(); ++i) {
    if (record.docs[i].click.doc_rank != static_cast<int>(i) + 1) {
      fail(line, "query '" + record.query_id +
                     "': document ranks must be contiguous starting at 1");
    }
  }
  return record;
}

}  // namespace

std::vector<QueryRecord> read_log(std::istream& in) {
  std::vector<QueryRecord> log;
  std::unordered_set<std::string> seen_ids;
  std::string line_text;
  std::size_t line = 0;
  while (std::getline(in, line_text)) {
    ++line;
    if (line_text.empty()) {
      continue;
    }
    QueryRecord record = parse_record(line_text, line);
    if (!seen_ids.insert(record.query_id).second) {
      fail(line, "duplicate query_id '" + record.query_id + "'");
    }
    log.push_back(std::move(record));
  }
  return log;
}

std::vector<QueryRecord> read_log_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open log file: " + path.string());
  }
  return read_log(in);
}

void write_log(std::ostream& out, std::span<const QueryRecord> log) {
  for (const QueryRecord& record : log) {
    ordered_json j;
    j["query_id"] = record.query_id;
    ordered_json docs = ordered_json::array();
    for (const LoggedDocument& doc : record.docs) {
      ordered_json scores;
      for (std::size_t d = 0; d < kDimensionCount; ++d) {
        scores[std::string(kDimensionNames[d])] = doc.scores[d];
      }
      docs.push_back({{"doc_id", doc.doc_id},
                      {"rank", doc.click.doc_rank},
                      {"scores", std::move(scores)},
                      {"clicked", doc.click.clicked},
                      {"dwell_seconds", doc.click.dwell_seconds}});
    }
    j["docs"] = std::move(docs);
    out << j.dump() << '\n';
  }
}

void write_log_file(const std::filesystem::path& path,
                    std::span<const QueryRecord> log) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open output file: " + path.string());
  }
  write_log(out, log);
  if (!out) {
    throw IoError("failed writing log file: " + path.string());
  }
}

namespace {

// Short, locale-independent form for criteria values: 0.05 -> "0.05".
std::string compact_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%g", value);
  return buffer;
}

std::string fixed_number(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  return buffer;
}

}  // namespace

void write_report_csv(std::ostream& out, const AnalysisReport& report) {
  out << "matching_criteria,sft,sftsc,irq,irq_percent_of_sft\n";
  for (const ReportRow& row : report.rows) {
    out << compact_number(row.matching_criteria) << ',' << row.sft_count << ','
        << row.sftsc_count << ',' << row.irq_count << ','
        << fixed_number(row.irq_percent_of_sft, 2) << '\n';
  }
}

void write_report_json(std::ostream& out, const AnalysisReport& report) {
  ordered_json j;
  j["rows"] = ordered_json::array();
  for (const ReportRow& row : report.rows) {
    j["rows"].push_back({{"matching_criteria", row.matching_criteria},
                         {"sft", row.sft_count},
                         {"sftsc", row.sftsc_count},
                         {"irq", row.irq_count},
                         {"irq_percent_of_sft", row.irq_percent_of_sft}});
  }
  j["total_queries"] = report.total_queries;
  j["skipped_queries"] = report.skipped_queries;
  j["degenerate_queries"] = report.degenerate_queries;
  out << j.dump(2) << '\n';
}

void write_report_text(std::ostream& out, const AnalysisReport& report) {
  out << std::left << std::setw(18) << "Matching Criteria" << std::setw(8)
      << "SFT" << std::setw(8) << "SFTSC" << std::setw(8) << "IRQ"
      << "IRQ percent(of SFT)\n";
  for (const ReportRow& row : report.rows) {
    out << std::left << std::setw(18)
        << compact_number(row.matching_criteria * 100.0) + "%" << std::setw(8)
        << row.sft_count << std::setw(8) << row.sftsc_count << std::setw(8)
        << row.irq_count << fixed_number(row.irq_percent_of_sft, 2) << '\n';
  }
  out << "\nTotal queries: " << report.total_queries
      << "  Skipped (<2 docs): " << report.skipped_queries
      << "  Degenerate: " << report.degenerate_queries << '\n';
}

}  // namespace relorder
