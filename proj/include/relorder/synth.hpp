#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "relorder/analysis.hpp"

namespace relorder {

// One calibration target: analyzing the generated log at `criteria` must
// yield exactly these counts.
struct TargetRow {
  double criteria = 0.0;
  std::size_t sft = 0;
  std::size_t sftsc = 0;
  std::size_t irq = 0;
};

struct DwellModel {
  double mean_seconds = 0.0;
  double sigma_seconds = 0.0;
};

struct SynthConfig {
  std::uint64_t seed = 1;
  std::size_t total_queries = 1000;
  int min_docs_per_query = 2;
  int max_docs_per_query = 4;
  // Optional calibration targets, criteria strictly decreasing. The counts
  // must nest: a smaller criteria can only shrink each subset, so the rows
  // describe concentric similarity bands on one log.
  std::vector<TargetRow> targets;
  DwellModel sat_dwell{75.0, 20.0};
  DwellModel non_sat_dwell{12.0, 6.0};
  double sat_threshold_seconds = kDefaultSatThresholdSeconds;
  // Fraction of the next-inner band usable for jitter on the dimensions that
  // do not determine a planted pair's band.
  double profile_jitter = 0.5;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reference calibration preset: 152,941 queries whose analysis at criteria
// 0.10 / 0.05 / 0 lands exactly on 309/44/40, 238/30/27 and 170/27/25.
SynthConfig table1_config();

// Deterministic synthetic log for one seed (single PRNG stream). With targets
// set, document pairs are planted in nested similarity bands and the click
// patterns fill each band's SFTSC/IRQ quota exactly; dwell times keep a >= 1 s
// guard gap around the SAT threshold. Infeasible targets raise ConfigError
// before any generation happens.
std::vector<QueryRecord> generate(const SynthConfig& config);

}  // namespace relorder
