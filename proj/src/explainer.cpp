#include "relorder/explainer.hpp"

#include <algorithm>
#include <stdexcept>

namespace relorder {

Dimension preferred_dimension(const DimensionalProfile& profile) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < kDimensionCount; ++i) {
    if (profile.values[i] > profile.values[best]) {
      best = i;
    }
  }
  return static_cast<Dimension>(best);
}

namespace {

Dimension lowest_dimension(const DimensionalProfile& profile) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < kDimensionCount; ++i) {
    if (profile.values[i] < profile.values[best]) {
      best = i;
    }
  }
  return static_cast<Dimension>(best);
}

bool is_flat(const DimensionalProfile& profile) {
  return std::all_of(profile.values.begin(), profile.values.end(),
                     [&](double v) { return v == profile.values[0]; });
}

}  // namespace

Explanation explain(const DimensionalProfile& doc1,
                    const DimensionalProfile& doc2, Dimension dim_first,
                    Dimension dim_second) {
  if (dim_first == dim_second) {
    throw std::domain_error(
        "the two judgment dimensions must differ, both are '" +
        std::string(dimension_name(dim_first)) + "'");
  }

  const BasisRepresentation rep(
      std::string(dimension_name(dim_first)),
      StateVector::from_probability(doc1[dim_first]),
      std::string(dimension_name(dim_second)),
      StateVector::from_probability(doc1[dim_second]));
  const StateVector second_in_first = change_of_basis(rep).c_in_ab;
  const double cross = second_in_first.a() * second_in_first.a();

  Explanation result;
  result.dim_first = dim_first;
  result.dim_second = dim_second;
  result.cross_probability = cross;
  result.degenerate = is_flat(doc1);
  // Document 2 judges dim_first first; document 1 judged dim_second first.
  result.p_forward = sequential_projection(
      StateVector::from_probability(doc2[dim_first]), cross);
  result.p_reverse = sequential_projection(
      StateVector::from_probability(doc1[dim_second]), cross);
  const double lo = std::min(result.p_forward, result.p_reverse);
  const double hi = std::max(result.p_forward, result.p_reverse);
  if (lo > 0.0) {
    result.ratio = hi / lo;
  }
  return result;
}

Explanation explain_auto(const DimensionalProfile& doc1,
                         const DimensionalProfile& doc2) {
  const Dimension first = preferred_dimension(doc1);
  Dimension second = lowest_dimension(doc1);
  if (second == first) {
    // Flat profile: argmax and argmin collide, pick the next dimension so the
    // pair is still well-formed.
    second = static_cast<Dimension>((static_cast<int>(first) + 1) %
                                    static_cast<int>(kDimensionCount));
  }
  return explain(doc1, doc2, first, second);
}

}  // namespace relorder
