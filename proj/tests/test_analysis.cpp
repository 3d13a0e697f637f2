#include <doctest.h>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "relorder/analysis.hpp"

using namespace relorder;

namespace {

using Scores = std::array<double, 7>;

struct DocSpec {
  Scores scores;
  bool clicked = false;
  double dwell = 0.0;
};

QueryRecord make_query(std::string id, const std::vector<DocSpec>& docs) {
  QueryRecord record;
  record.query_id = std::move(id);
  int rank = 1;
  for (const DocSpec& spec : docs) {
    LoggedDocument doc;
    doc.doc_id = "d" + std::to_string(rank);
    doc.scores = spec.scores;
    doc.click = {rank, spec.clicked, spec.dwell};
    record.docs.push_back(std::move(doc));
    ++rank;
  }
  return record;
}

const Scores kProfileA = {0.3, 0.1, 0.0, 0.9, 0.1, 0.1, 0.5};
const Scores kProfileB = {0.3, 0.1, 0.0, 0.9, 0.1, 0.1, 0.9};  // differs in U

}  // namespace

TEST_CASE("is_sat_click requires a click and strictly more than 30 s") {
  CHECK(is_sat_click({1, true, 31.0}));
  CHECK_FALSE(is_sat_click({1, true, 30.0}));  // boundary stays out
  CHECK_FALSE(is_sat_click({1, false, 0.0}));
  CHECK(is_sat_click({1, true, 10.0}, 5.0));
  CHECK_THROWS_AS(is_sat_click({1, true, 31.0}, -1.0), std::domain_error);
}

TEST_CASE("profile_documents min-max normalizes each dimension") {
  const QueryRecord record = make_query(
      "q1", {{{2.0, 0.0, 1.0, 5.0, 0.0, 3.0, 4.0}},
             {{4.0, 0.0, 3.0, 5.0, 1.0, 1.0, 0.0}},
             {{0.0, 2.0, 5.0, 0.0, 2.0, 2.0, 2.0}}});
  const DocumentProfiles result = profile_documents(record, false);
  REQUIRE(result.profiles.size() == 3);
  CHECK_FALSE(result.degenerate);
  CHECK(result.profiles[0].values[0] == doctest::Approx(0.5));
  CHECK(result.profiles[1].values[0] == doctest::Approx(1.0));
  CHECK(result.profiles[2].values[0] == doctest::Approx(0.0));
  // Dimension with ties at the max keeps both at 1.
  CHECK(result.profiles[0].values[3] == doctest::Approx(1.0));
  CHECK(result.profiles[1].values[3] == doctest::Approx(1.0));
}

TEST_CASE("profile_documents flags degenerate dimensions") {
  const QueryRecord record =
      make_query("q1", {{{1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0}},
                        {{1.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0}}});
  const DocumentProfiles result = profile_documents(record, false);
  CHECK(result.degenerate);  // habit is constant across documents
  CHECK(result.profiles[0].values[0] == 0.0);
  CHECK(result.profiles[1].values[0] == 0.0);
}

TEST_CASE("profile_documents validates pre-normalized scores") {
  QueryRecord record = make_query("q1", {{kProfileA}, {kProfileB}});
  CHECK_NOTHROW(profile_documents(record, true));
  record.docs[1].scores[3] = 1.5;
  CHECK_THROWS_WITH_AS(profile_documents(record, true),
                       doctest::Contains("q1"), std::domain_error);
}

TEST_CASE("find_sft keeps queries whose top two profiles match") {
  const std::vector<QueryRecord> log = {
      make_query("same", {{kProfileA}, {kProfileA}}),
      make_query("close", {{kProfileA}, {kProfileB}}),
      make_query("single", {{kProfileA}}),  // skipped: fewer than 2 docs
  };
  const auto exact = find_sft(log, MatchingCriteria(0.0), true);
  CHECK(exact == std::vector<std::string>{"same"});

  // U differs by |0.9-0.5|/0.9 = 0.444..., inside a 0.5 criteria.
  const auto loose = find_sft(log, MatchingCriteria(0.5), true);
  CHECK(loose == std::vector<std::string>{"same", "close"});

  CHECK(find_sft({}, MatchingCriteria(0.0), true).empty());
}

TEST_CASE("find_sftsc keeps queries whose second document is SAT clicked") {
  const std::vector<QueryRecord> log = {
      make_query("sat", {{kProfileA}, {kProfileA, true, 45.0}}),
      make_query("short", {{kProfileA}, {kProfileA, true, 12.0}}),
      make_query("nocl", {{kProfileA}, {kProfileA}}),
  };
  const std::vector<std::string> sft = {"sat", "short", "nocl"};
  CHECK(find_sftsc(log, sft, 30.0) == std::vector<std::string>{"sat"});
  CHECK(find_sftsc(log, std::vector<std::string>{}, 30.0).empty());
  CHECK_THROWS_AS(find_sftsc(log, std::vector<std::string>{"ghost"}, 30.0),
                  std::invalid_argument);
}

TEST_CASE("find_irq keeps queries whose first document is not SAT clicked") {
  const std::vector<QueryRecord> log = {
      make_query("irq", {{kProfileA, true, 8.0}, {kProfileA, true, 45.0}}),
      make_query("both", {{kProfileA, true, 60.0}, {kProfileA, true, 45.0}}),
  };
  const std::vector<std::string> sftsc = {"irq", "both"};
  CHECK(find_irq(log, sftsc, 30.0) == std::vector<std::string>{"irq"});

  const std::vector<std::string> only_both = {"both"};
  CHECK(find_irq(log, only_both, 30.0).empty());
}

TEST_CASE("analyze composes the three subsets per criteria row") {
  const std::vector<QueryRecord> log = {
      make_query("irq", {{kProfileA, true, 8.0}, {kProfileA, true, 45.0}}),
      make_query("both", {{kProfileA, true, 60.0}, {kProfileA, true, 45.0}}),
      make_query("noclick", {{kProfileA}, {kProfileA}}),
      make_query("far", {{kProfileA}, {kProfileB, true, 45.0}}),
      make_query("single", {{kProfileA}}),
  };
  AnalysisOptions options;
  options.criteria = {0.5, 0.0};
  options.scores_normalized = true;
  const AnalysisReport report = analyze(log, options);

  REQUIRE(report.rows.size() == 2);
  CHECK(report.total_queries == 5);
  CHECK(report.skipped_queries == 1);
  CHECK(report.degenerate_queries == 0);

  CHECK(report.rows[0].matching_criteria == 0.5);
  CHECK(report.rows[0].sft_count == 4);
  CHECK(report.rows[0].sftsc_count == 3);
  CHECK(report.rows[0].irq_count == 2);
  CHECK(report.rows[0].irq_percent_of_sft == doctest::Approx(50.0));

  CHECK(report.rows[1].sft_count == 3);
  CHECK(report.rows[1].sftsc_count == 2);
  CHECK(report.rows[1].irq_count == 1);
  CHECK(report.rows[1].irq_percent_of_sft == doctest::Approx(33.33));
}

TEST_CASE("analyze repeats identical rows for repeated criteria") {
  const std::vector<QueryRecord> log = {
      make_query("a", {{kProfileA}, {kProfileA, true, 45.0}}),
  };
  AnalysisOptions options;
  options.criteria = {0.0, 0.0};
  options.scores_normalized = true;
  const AnalysisReport report = analyze(log, options);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].sft_count == report.rows[1].sft_count);
  CHECK(report.rows[0].sftsc_count == report.rows[1].sftsc_count);
  CHECK(report.rows[0].irq_count == report.rows[1].irq_count);
}

TEST_CASE("analyze of a single one-document query only skips") {
  const std::vector<QueryRecord> log = {make_query("solo", {{kProfileA}})};
  AnalysisOptions options;
  options.criteria = {0.0};
  options.scores_normalized = true;
  const AnalysisReport report = analyze(log, options);
  CHECK(report.total_queries == 1);
  CHECK(report.skipped_queries == 1);
  CHECK(report.rows[0].sft_count == 0);
  CHECK(report.rows[0].sftsc_count == 0);
  CHECK(report.rows[0].irq_count == 0);
  CHECK(report.rows[0].irq_percent_of_sft == 0.0);
}

TEST_CASE("analyze requires at least one criteria") {
  AnalysisOptions options;
  CHECK_THROWS_AS(analyze({}, options), std::invalid_argument);
}

TEST_CASE("analyze of an empty log reports zero rows") {
  AnalysisOptions options;
  options.criteria = {0.1, 0.0};
  const AnalysisReport report = analyze({}, options);
  CHECK(report.total_queries == 0);
  for (const ReportRow& row : report.rows) {
    CHECK(row.sft_count == 0);
    CHECK(row.irq_percent_of_sft == 0.0);
  }
}
