// Finite metric space with an exact pairwise distance table. This is the
// arena for all transport and separation computations at desk scale; larger
// point families (entropy estimation) use distance oracles instead of tables.

#pragma once

#include <string>
#include <vector>

#include "wmdim/rational.hpp"

namespace wmdim {

struct MetricSpace {
  std::vector<std::string> labels;
  RMat dist;           // symmetric, zero diagonal
  Rational diameter;   // max table entry

  Eigen::Index size() const { return static_cast<Eigen::Index>(labels.size()); }

  /// Index of a labelled point; throws naming the label if absent.
  Eigen::Index index_of(const std::string& label) const;
};

/// Validates symmetry, zero diagonal and nonnegativity, caches the diameter.
MetricSpace make_metric_space(std::vector<std::string> labels, RMat dist);

/// Exhaustive triangle-inequality check over all triples; throws on the
/// first violating triple. Intended for tests and small spaces.
void check_triangle_inequality(const MetricSpace& space);

}  // namespace wmdim
