#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace relorder {

// Relevance dimensions in fixed order (HINRSTU). Every per-dimension array in
// the toolkit uses this order.
enum class Dimension : int {
  Habit = 0,
  Interest,
  Novelty,
  Reliability,
  Scope,
  Topicality,
  Understandability,
};

inline constexpr std::size_t kDimensionCount = 7;

inline constexpr std::array<std::string_view, kDimensionCount> kDimensionNames =
    {"habit",      "interest",   "novelty", "reliability",
     "scope",      "topicality", "understandability"};

inline constexpr std::array<std::string_view, kDimensionCount>
    kDimensionLabels = {"Habit",       "Interest",   "Novelty", "Reliability",
                        "Scope",       "Topicality", "Understandability"};

std::string_view dimension_name(Dimension d);   // lowercase, used as JSON key
std::string_view dimension_label(Dimension d);  // display form

// Case-insensitive lookup of a dimension by its name.
std::optional<Dimension> parse_dimension(std::string_view name);

// Raw per-dimension relevance scores for one document, HINRSTU order.
using DimensionScores = std::array<double, kDimensionCount>;

// Min-max-normalized relevance probabilities for one (query, document) pair.
// Each entry is the squared superposition coefficient for that dimension; the
// amplitude is recovered by square root.
struct DimensionalProfile {
  std::array<double, kDimensionCount> values{};

  double operator[](Dimension d) const {
    return values[static_cast<std::size_t>(d)];
  }
  double amplitude(Dimension d) const;
};

// Maximum allowed component of the relative-difference vector for two
// profiles to count as similar, e.g. 0.05 = "within 5%".
class MatchingCriteria {
 public:
  explicit MatchingCriteria(double threshold);
  double threshold() const noexcept { return threshold_; }

 private:
  double threshold_;
};

struct MinMaxResult {
  std::vector<double> values;
  bool degenerate = false;  // max == min; every output forced to 0
};

// (x - min) / (max - min) over one dimension's scores across a query's
// documents. The best-scoring document maps to 1, the worst to 0.
MinMaxResult minmax_normalize(std::span<const double> raw);

// Assembles a profile from 7 already-normalized values in HINRSTU order.
DimensionalProfile build_profile(std::span<const double> normalized);

// Component-wise |v2 - v1| / max(v2, v1), with 0/0 defined as 0.
std::array<double, kDimensionCount> relative_difference(
    const DimensionalProfile& p1, const DimensionalProfile& p2);

// True iff every relative-difference component is <= the criteria threshold.
bool matches(const DimensionalProfile& p1, const DimensionalProfile& p2,
             MatchingCriteria criteria);

}  // namespace relorder
