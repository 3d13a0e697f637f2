#include "relorder/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

namespace relorder {

namespace {

// All randomness flows through one engine so a seed fixes the whole log.
// Uniform and normal draws are derived by hand to stay independent of the
// standard library's unspecified distribution algorithms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::size_t index(std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(uniform() * n));
  }

  double normal(double mean, double sigma) {
    double u1 = uniform();
    while (u1 <= 0.0) {
      u1 = uniform();
    }
    const double radius = std::sqrt(-2.0 * std::log(u1));
    return mean + sigma * radius * std::cos(2.0 * std::numbers::pi * uniform());
  }

  bool chance(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

[[noreturn]] void config_error(const std::string& message) {
  throw ConfigError("infeasible synth configuration: " + message);
}

void validate(const SynthConfig& cfg) {
  if (cfg.min_docs_per_query < 1 ||
      cfg.max_docs_per_query < cfg.min_docs_per_query) {
    config_error("docs-per-query range must satisfy 1 <= min <= max");
  }
  if (!(cfg.sat_threshold_seconds >= 1.0)) {
    config_error("SAT threshold must be >= 1 s to keep the dwell guard gap");
  }
  if (cfg.sat_dwell.sigma_seconds < 0.0 ||
      cfg.non_sat_dwell.sigma_seconds < 0.0) {
    config_error("dwell sigmas must be non-negative");
  }
  if (!(cfg.profile_jitter >= 0.0 && cfg.profile_jitter < 1.0)) {
    config_error("profile jitter must lie in [0, 1)");
  }
  if (cfg.targets.empty()) {
    return;
  }

  const auto& rows = cfg.targets;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const TargetRow& row = rows[i];
    if (!(row.criteria >= 0.0 && row.criteria <= 1.0)) {
      config_error("criteria out of range [0, 1]");
    }
    if (row.irq > row.sftsc || row.sftsc > row.sft ||
        row.sft > cfg.total_queries) {
      std::ostringstream msg;
      msg << "row " << i << " violates irq <= sftsc <= sft <= total";
      config_error(msg.str());
    }
    if (i > 0) {
      const TargetRow& outer = rows[i - 1];
      if (!(outer.criteria > row.criteria)) {
        config_error("criteria must be strictly decreasing across rows");
      }
      const bool nested =
          outer.sft >= row.sft && outer.sftsc >= row.sftsc &&
          outer.irq >= row.irq &&
          outer.sftsc - outer.irq >= row.sftsc - row.irq &&
          outer.sft - row.sft >= outer.sftsc - row.sftsc;
      if (!nested) {
        std::ostringstream msg;
        msg << "rows " << i - 1 << " and " << i
            << " do not nest: counts must not grow at a smaller criteria";
        config_error(msg.str());
      }
    }
  }
  if (cfg.total_queries > rows.front().sft && rows.front().criteria >= 1.0) {
    config_error(
        "criteria 1.0 matches every pair, so sft must equal total_queries");
  }
}

double round_to(double value, double step) {
  return std::round(value / step) * step;
}

enum class ClickPlan {
  kIrq,        // rank 2 SAT, rank 1 not SAT
  kBothSat,    // both SAT
  kSecondNot,  // rank 2 not SAT, rank 1 unconstrained
  kFree,       // unconstrained pattern, used outside the planted bands
};

struct PlannedQuery {
  int band = -1;  // -1 for non-matching filler queries
  ClickPlan plan = ClickPlan::kFree;
};

class Generator {
 public:
  explicit Generator(const SynthConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  std::vector<QueryRecord> run() {
    std::vector<PlannedQuery> plans = plan_queries();
    rng_.shuffle(plans);

    std::vector<QueryRecord> log;
    log.reserve(plans.size());
    for (std::size_t i = 0; i < plans.size(); ++i) {
      char id[32];
      std::snprintf(id, sizeof(id), "q%06zu", i + 1);
      log.push_back(make_query(id, plans[i]));
    }
    return log;
  }

 private:
  std::vector<PlannedQuery> plan_queries() {
    std::vector<PlannedQuery> plans;
    plans.reserve(cfg_.total_queries);
    const auto& rows = cfg_.targets;
    for (std::size_t b = 0; b < rows.size(); ++b) {
      const bool inner_exists = b + 1 < rows.size();
      const std::size_t band_sft =
          rows[b].sft - (inner_exists ? rows[b + 1].sft : 0);
      const std::size_t band_sftsc =
          rows[b].sftsc - (inner_exists ? rows[b + 1].sftsc : 0);
      const std::size_t band_irq =
          rows[b].irq - (inner_exists ? rows[b + 1].irq : 0);
      for (std::size_t i = 0; i < band_sft; ++i) {
        PlannedQuery plan;
        plan.band = static_cast<int>(b);
        plan.plan = i < band_irq               ? ClickPlan::kIrq
                    : i < band_sftsc           ? ClickPlan::kBothSat
                                               : ClickPlan::kSecondNot;
        plans.push_back(plan);
      }
    }
    const std::size_t planted = plans.size();
    for (std::size_t i = planted; i < cfg_.total_queries; ++i) {
      plans.push_back(PlannedQuery{});
    }
    return plans;
  }

  QueryRecord make_query(const char* id, const PlannedQuery& plan) {
    QueryRecord record;
    record.query_id = id;
    if (plan.band >= 0) {
      build_band_docs(record, static_cast<std::size_t>(plan.band));
    } else {
      build_filler_docs(record);
    }
    assign_clicks(record, plan);
    return record;
  }

  // A planted pair occupies ranks 1 and 2; two anchor documents pin every
  // dimension's min to 0 and max to 1, so the normalized profiles equal the
  // raw values bit for bit.
  void build_band_docs(QueryRecord& record, std::size_t band) {
    const auto& rows = cfg_.targets;
    const double outer = rows[band].criteria;
    const bool inner_exists = band + 1 < rows.size();
    const double inner = inner_exists ? rows[band + 1].criteria : 0.0;

    DimensionScores doc1{};
    std::array<double, kDimensionCount> rel{};
    for (std::size_t d = 0; d < kDimensionCount; ++d) {
      doc1[d] = rng_.uniform(0.1, 1.0);
    }
    if (inner_exists) {
      // One dimension lands mid-band, past the inner criteria but inside the
      // outer one; the rest stay within the inner band.
      const std::size_t pivot = rng_.index(kDimensionCount);
      for (std::size_t d = 0; d < kDimensionCount; ++d) {
        rel[d] = d == pivot ? (outer + inner) / 2.0
                            : rng_.uniform(0.0, cfg_.profile_jitter * inner);
      }
    } else {
      for (std::size_t d = 0; d < kDimensionCount; ++d) {
        rel[d] = rng_.uniform(0.0, cfg_.profile_jitter * outer);
      }
    }

    DimensionScores doc2{};
    for (std::size_t d = 0; d < kDimensionCount; ++d) {
      doc2[d] = doc1[d] * (1.0 - rel[d]);
    }

    DimensionScores all_zero{};
    DimensionScores all_one{};
    all_one.fill(1.0);
    record.docs = {
        LoggedDocument{"d1", doc1, {1, false, 0.0}},
        LoggedDocument{"d2", doc2, {2, false, 0.0}},
        LoggedDocument{"d3", all_zero, {3, false, 0.0}},
        LoggedDocument{"d4", all_one, {4, false, 0.0}},
    };

    // Planted pairs must land in their band exactly as the analyzer sees
    // them; any miss here is a generator bug, not bad input.
    const DocumentProfiles profiles = profile_documents(record, false);
    const bool in_outer =
        matches(profiles.profiles[0], profiles.profiles[1],
                MatchingCriteria(outer));
    const bool in_inner =
        inner_exists && matches(profiles.profiles[0], profiles.profiles[1],
                                MatchingCriteria(inner));
    if (!in_outer || in_inner) {
      throw std::logic_error("planted pair missed its similarity band");
    }
  }

  // Filler queries never enter SFT: the first two documents sit at the
  // opposite extremes of the Habit dimension, a relative difference of 1.
  void build_filler_docs(QueryRecord& record) {
    const std::size_t n = doc_count();
    fill_random_docs(record, n);
    if (n >= 2 && !cfg_.targets.empty()) {
      record.docs[0].scores[0] = 1.0;
      record.docs[1].scores[0] = 0.0;
    }
  }

  std::size_t doc_count() {
    const auto lo = static_cast<std::size_t>(cfg_.min_docs_per_query);
    const auto hi = static_cast<std::size_t>(cfg_.max_docs_per_query);
    return lo + rng_.index(hi - lo + 1);
  }

  void fill_random_docs(QueryRecord& record, std::size_t n) {
    record.docs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      char doc_id[32];
      std::snprintf(doc_id, sizeof(doc_id), "d%zu", i + 1);
      record.docs[i].doc_id = doc_id;
      record.docs[i].click = {static_cast<int>(i) + 1, false, 0.0};
      for (std::size_t d = 0; d < kDimensionCount; ++d) {
        record.docs[i].scores[d] = round_to(rng_.uniform(), 1e-4);
      }
    }
    if (n < 2) {
      return;
    }
    // Per dimension, one document takes the max and another the min, so
    // min-max normalization always has a full [0, 1] spread to work with.
    for (std::size_t d = 0; d < kDimensionCount; ++d) {
      const std::size_t hi = rng_.index(n);
      std::size_t lo = rng_.index(n - 1);
      if (lo >= hi) {
        ++lo;
      }
      record.docs[hi].scores[d] = 1.0;
      record.docs[lo].scores[d] = 0.0;
    }
  }

  ClickEvent sat_click(int rank) {
    const double raw =
        rng_.normal(cfg_.sat_dwell.mean_seconds, cfg_.sat_dwell.sigma_seconds);
    const double dwell =
        std::max(cfg_.sat_threshold_seconds + 1.0, round_to(raw, 0.1));
    return {rank, true, dwell};
  }

  ClickEvent not_sat_click(int rank) {
    if (rng_.chance(0.5)) {
      return {rank, false, 0.0};
    }
    const double raw = rng_.normal(cfg_.non_sat_dwell.mean_seconds,
                                   cfg_.non_sat_dwell.sigma_seconds);
    const double dwell = std::clamp(round_to(raw, 0.1), 0.0,
                                    cfg_.sat_threshold_seconds - 1.0);
    return {rank, true, dwell};
  }

  ClickEvent free_click(int rank) {
    const double p_click = rank == 1 ? 0.45 : rank == 2 ? 0.3 : 0.15;
    if (!rng_.chance(p_click)) {
      return {rank, false, 0.0};
    }
    return rng_.chance(0.5) ? sat_click(rank) : not_sat_click(rank);
  }

  void assign_clicks(QueryRecord& record, const PlannedQuery& plan) {
    switch (plan.plan) {
      case ClickPlan::kIrq:
        record.docs[0].click = not_sat_click(1);
        record.docs[1].click = sat_click(2);
        break;
      case ClickPlan::kBothSat:
        record.docs[0].click = sat_click(1);
        record.docs[1].click = sat_click(2);
        break;
      case ClickPlan::kSecondNot:
        record.docs[0].click = free_click(1);
        record.docs[1].click = not_sat_click(2);
        break;
      case ClickPlan::kFree:
        for (std::size_t i = 0; i < record.docs.size(); ++i) {
          record.docs[i].click = free_click(static_cast<int>(i) + 1);
        }
        break;
    }
  }

  const SynthConfig& cfg_;
  Rng rng_;
};

}  // namespace

SynthConfig table1_config() {
  SynthConfig cfg;
  cfg.total_queries = 152941;
  cfg.min_docs_per_query = 2;
  cfg.max_docs_per_query = 2;
  cfg.targets = {
      {0.10, 309, 44, 40},
      {0.05, 238, 30, 27},
      {0.00, 170, 27, 25},
  };
  return cfg;
}

std::vector<QueryRecord> generate(const SynthConfig& config) {
  validate(config);
  return Generator(config).run();
}

}  // namespace relorder
