// Faces of the standard simplex, axis-interval boxes inside generalized
// cubes Delta_k^n, and the exact combinatorial checks on finite box covers:
// intersection order, the face-separation property, and a budgeted local
// search for low-order separating covers.
//
// Face conventions: an index set I identifies the face {x : sum_{i in I}
// x_i = 1}; the opposite face lives on the complement. The intersection of
// faces with disjoint index sets is the empty face, whose opposite is the
// full simplex; separation against it forces the cover elements involved to
// be disjoint.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wmdim/measure.hpp"
#include "wmdim/rational.hpp"

namespace wmdim {

/// A face of Delta_k as a coordinate index set (bit i = coordinate i+1),
/// optionally bound to a factor slot of the cube.
struct FaceId {
  std::uint32_t index_set = 0;
  int k = 0;
  int slot = -1;  // factor position when used as F_i, else -1

  bool is_empty() const { return index_set == 0; }
  bool is_full() const { return index_set + 1 == (1u << k); }
  int dim() const { return std::popcount(index_set); }  // an l-face has l coordinates
  bool operator==(const FaceId&) const = default;
};

FaceId make_face(int k, std::uint32_t index_set, int slot = -1);
/// The (k-1)-face {x_c = 0} missing coordinate c (1-based).
FaceId coordinate_face(int k, int missing, int slot = -1);
FaceId opposite(const FaceId& f);
/// Index-set intersection; all faces must share k and slot.
FaceId face_meet(const std::vector<FaceId>& faces);
/// Membership of a simplex point: the mass on the index set is 1.
bool face_contains(const FaceId& f, const SimplexPoint& t);

struct Interval {
  Rational lo{0}, hi{1};
  bool lo_closed = true, hi_closed = true;

  bool empty() const;
  bool contains(const Rational& x) const;
  Interval meet(const Interval& other) const;
  bool operator==(const Interval&) const = default;
};

/// An axis-interval box in Delta_k^n: one interval per (slot, coordinate).
struct Box {
  int k = 0, n = 0;
  std::vector<Interval> iv;  // slot-major, iv[slot*k + coord]

  Interval& at(int slot, int coord);
  const Interval& at(int slot, int coord) const;
  bool contains(const CubePoint& t) const;
};

Box full_box(int k, int n);
Box box_meet(const Box& a, const Box& b);

/// Exact emptiness test of box intersect Delta_k^n: per factor the interval
/// system admits coordinates summing to one, honouring open endpoints.
bool box_feasible(const Box& b);

/// An exact rational point of box intersect Delta_k^n; nullopt when empty.
std::optional<CubePoint> box_witness(const Box& b);

struct BoxCover {
  int k = 0, n = 0;
  std::vector<Box> boxes;
};

/// ord = max multiplicity - 1, by exhaustive subfamily enumeration with
/// exact joint-feasibility pruning.
int cover_order(const BoxCover& cover);

/// A failed separation: at factor `slot`, the listed cover elements meet
/// the (k-1)-faces missing the listed coordinates, yet their common
/// intersection reaches the opposite face of the faces' meet.
struct SeparationViolation {
  int slot = 0;
  std::vector<int> members;      // box indices
  std::vector<int> face_choice;  // missing coordinate (1-based) per member
  std::uint32_t opposite_support = 0;
};

/// Checks the face-separation property of the cover, exactly; returns the
/// first violation in scan order (slot, subfamily, face image) or nullopt.
std::optional<SeparationViolation> is_separating(const BoxCover& cover);

/// Every distinct image of choice functions picking one element from each
/// option bitmask (subset-DP; exact). Shared by the box and sampled-cover
/// separation checkers.
std::vector<std::uint32_t> realizable_face_images(const std::vector<std::uint32_t>& options);

/// Scale from the quantitative lemma chain: gamma^2 / (diam * 2^(q+1)).
Rational epsilon_m(const Rational& gamma, int q, const Rational& diam);

/// True iff every point of the 1/G rational grid on Delta_k^n lies in some
/// box. This is the recorded covering certification for box covers.
bool covers_grid(const BoxCover& cover, int grid);

struct SearchStep {
  long iteration = 0;
  int order = 0;
  bool separating = false;
  bool accepted = false;
};

struct SearchResult {
  BoxCover witness;
  int best_order = 0;
  bool witness_separating = false;
  bool budget_exhausted = false;
  int grid = 0;
  std::vector<SearchStep> trace;
};

/// Hill-climbs over grid-aligned box covers of Delta_k^n constrained to be
/// separating and grid-covering, minimizing the exact order. Reports the
/// best cover found; this is an upper bound on the true minimum, never a
/// lower bound.
SearchResult search_min_separating_order(int k, int n, long budget, std::uint64_t seed = 7,
                                         int grid = 6);

/// The explicit three-interval separating cover of Delta_2 with order 1.
BoxCover three_interval_cover();

}  // namespace wmdim
