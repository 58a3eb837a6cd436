// Finitely supported probability measures with exact rational weights, the
// pushforward under the system map, and the embeddings of product systems
// into measure space: weighted Dirac sums, block products, the coordinate
// product map theta from generalized cubes into simplices, and the uniform
// subset family used for separated-set lower bounds.

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "wmdim/rational.hpp"
#include "wmdim/system.hpp"

namespace wmdim {

struct DiscreteMeasure {
  std::vector<Point> support;  // sorted, pairwise distinct
  RVec weights;                // positive, sums to exactly 1

  Eigen::Index size() const { return weights.size(); }
  bool operator==(const DiscreteMeasure& other) const;

  /// Total mass on points satisfying the predicate.
  Rational mass_where(const std::function<bool(const Point&)>& pred) const;
};

/// Sorts the support, merges duplicates, validates positivity and unit mass.
DiscreteMeasure make_measure(std::vector<Point> support, RVec weights);

DiscreteMeasure dirac(Point p);

/// Exact convex combination lambda*mu + (1-lambda)*nu.
DiscreteMeasure mix(const Rational& lambda, const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Image measure under one application of the map; colliding images merge.
DiscreteMeasure pushforward(const System& sys, const DiscreteMeasure& mu);
DiscreteMeasure pushforward_power(const System& sys, DiscreteMeasure mu, int k);

/// Default Dirac-sum weights 1, 2, 4, ..., 2^(n-1): the smallest integers
/// with pairwise-distinct subset sums.
std::vector<Integer> default_dirac_weights(int n);

/// Normalized weighted Dirac sum sum_i k_i delta_{x_i} / sum_i k_i. The
/// weights must have pairwise-distinct subset sums; violations are rejected
/// naming the two colliding index sets.
DiscreteMeasure dirac_embedding(const std::vector<Point>& points, const std::vector<Integer>& k);

/// A point of the simplex Delta_k: nonnegative coordinates summing to 1.
using SimplexPoint = RVec;

bool is_simplex_point(const SimplexPoint& t);
void require_simplex_point(const SimplexPoint& t);

/// A point of the generalized cube Delta_k^n.
struct CubePoint {
  std::vector<SimplexPoint> factors;

  int cube_dim() const { return static_cast<int>(factors.size()); }
};

/// Coordinate-product embedding of Delta_k^n into Delta_{k^n}: the output
/// coordinate at multi-index (i_1,...,i_n) is the product of the factor
/// coordinates t_{m,i_m}. Multi-indices are flattened row-major with the
/// first factor most significant. Multi-affine in each factor.
SimplexPoint theta(const CubePoint& t);

/// Flat position of a 1-based multi-index in the theta ordering.
Eigen::Index theta_flat_index(std::span<const int> multi, int base);

/// Measure on words of length depth*m whose consecutive length-m block
/// marginals are the given probability vectors over A^m (lexicographic
/// block order). Weights are exact products of block weights.
DiscreteMeasure block_product_embedding(const System& sys, const std::vector<SimplexPoint>& blocks,
                                        int m, int depth);

/// One uniform probability vector per nonempty subset of a 2^q point set:
/// 2^(2^q) - 1 simplex points, ordered by subset bitmask.
std::vector<SimplexPoint> h_family(int q);

/// Anchor points x_i indexed by sequences in [base]^factors, realizing
/// prescribed cylinder visits; stored flat in theta order.
struct AnchorFamily {
  int base = 0;     // 2^(q_m)
  int factors = 0;  // number of qualifying blocks
  std::vector<Point> anchors;

  Eigen::Index size() const { return static_cast<Eigen::Index>(anchors.size()); }
  /// 1-based digit of a flat index at factor slot m (0-based slot).
  int digit(Eigen::Index flat, int slot) const;
  /// Flat index of an anchor point; throws if the point is not an anchor.
  Eigen::Index index_of(const Point& p) const;
};

/// The measure sum_i theta(t)_i * delta_{anchor_i}; multi-affine in each
/// factor of t. Zero-weight anchors are dropped.
DiscreteMeasure xi(const CubePoint& t, const AnchorFamily& anchors);

}  // namespace wmdim
