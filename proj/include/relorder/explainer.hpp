#pragma once

#include <optional>
#include <string>

#include "relorder/hilbert.hpp"
#include "relorder/profiles.hpp"

namespace relorder {

// Dimension with the highest profile value; ties resolve to the earliest
// dimension in HINRSTU order.
Dimension preferred_dimension(const DimensionalProfile& profile);

// Two-order reconstruction of a judgment flip between the top two documents:
// document 1 is judged dim_second -> dim_first, document 2 judges the same
// pair in reverse, and the shared cross term makes the two paths land on very
// different probabilities.
struct Explanation {
  std::string query_id;  // filled by callers that know it
  Dimension dim_first = Dimension::Habit;
  Dimension dim_second = Dimension::Habit;
  double p_forward = 0.0;  // P(dim_first then dim_second), document 2's path
  double p_reverse = 0.0;  // P(dim_second then dim_first), document 1's path
  std::optional<double> ratio;  // max/min; empty when the smaller one is 0
  double cross_probability = 0.0;  // |<dim_first|dim_second>|^2
  bool degenerate = false;  // document 1's profile is flat; the dimension
                            // choice carries no information
};

// Both documents share one Hilbert space, so the cross probability is
// computed once from doc1's representation and reused for doc2.
Explanation explain(const DimensionalProfile& doc1,
                    const DimensionalProfile& doc2, Dimension dim_first,
                    Dimension dim_second);

// Picks dim_first as doc1's preferred dimension and dim_second as its
// lowest-scoring dimension (HINRSTU tie-break), then delegates to explain.
// A flat profile is flagged degenerate and paired with the next dimension.
Explanation explain_auto(const DimensionalProfile& doc1,
                         const DimensionalProfile& doc2);

}  // namespace relorder
