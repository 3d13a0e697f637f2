#include "relorder/profiles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace relorder {

std::string_view dimension_name(Dimension d) {
  return kDimensionNames[static_cast<std::size_t>(d)];
}

std::string_view dimension_label(Dimension d) {
  return kDimensionLabels[static_cast<std::size_t>(d)];
}

std::optional<Dimension> parse_dimension(std::string_view name) {
  auto eq = [](std::string_view lhs, std::string_view rhs) {
    return lhs.size() == rhs.size() &&
           std::equal(lhs.begin(), lhs.end(), rhs.begin(), [](char x, char y) {
             return std::tolower(static_cast<unsigned char>(x)) ==
                    std::tolower(static_cast<unsigned char>(y));
           });
  };
  for (std::size_t i = 0; i < kDimensionCount; ++i) {
    if (eq(name, kDimensionNames[i])) {
      return static_cast<Dimension>(i);
    }
  }
  return std::nullopt;
}

double DimensionalProfile::amplitude(Dimension d) const {
  return std::sqrt((*this)[d]);
}

MatchingCriteria::MatchingCriteria(double threshold) : threshold_(threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    std::ostringstream msg;
    msg << "matching criteria out of range [0, 1]: " << threshold;
    throw std::domain_error(msg.str());
  }
}

MinMaxResult minmax_normalize(std::span<const double> raw) {
  if (raw.empty()) {
    throw std::domain_error("min-max normalization of an empty sequence");
  }
  for (double v : raw) {
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "min-max normalization of a non-finite score: " << v;
      throw std::domain_error(msg.str());
    }
  }
  const auto [lo_it, hi_it] = std::minmax_element(raw.begin(), raw.end());
  const double lo = *lo_it;
  const double hi = *hi_it;

  MinMaxResult result;
  result.values.reserve(raw.size());
  if (hi == lo) {
    // No spread to normalize against; flag the query instead of dividing by 0.
    result.degenerate = true;
    result.values.assign(raw.size(), 0.0);
    return result;
  }
  for (double v : raw) {
    result.values.push_back((v - lo) / (hi - lo));
  }
  return result;
}

DimensionalProfile build_profile(std::span<const double> normalized) {
  if (normalized.size() != kDimensionCount) {
    std::ostringstream msg;
    msg << "a profile needs exactly " << kDimensionCount << " values, got "
        << normalized.size();
    throw std::invalid_argument(msg.str());
  }
  DimensionalProfile profile;
  for (std::size_t i = 0; i < kDimensionCount; ++i) {
    const double v = normalized[i];
    if (!(v >= 0.0 && v <= 1.0)) {
      std::ostringstream msg;
      msg << "profile value for '" << kDimensionNames[i]
          << "' out of range [0, 1]: " << v;
      throw std::domain_error(msg.str());
    }
    profile.values[i] = v;
  }
  return profile;
}

std::array<double, kDimensionCount> relative_difference(
    const DimensionalProfile& p1, const DimensionalProfile& p2) {
  std::array<double, kDimensionCount> diff{};
  for (std::size_t i = 0; i < kDimensionCount; ++i) {
    const double hi = std::max(p1.values[i], p2.values[i]);
    diff[i] = hi == 0.0 ? 0.0 : std::abs(p2.values[i] - p1.values[i]) / hi;
  }
  return diff;
}

bool matches(const DimensionalProfile& p1, const DimensionalProfile& p2,
             MatchingCriteria criteria) {
  const auto diff = relative_difference(p1, p2);
  return std::all_of(diff.begin(), diff.end(), [&](double d) {
    return d <= criteria.threshold();
  });
}

}  // namespace relorder
