// Independence sets at finite horizons: exhaustive verification of the
// cylinder-intersection property over an index set, block bookkeeping for
// the derived combinatorial data q_m and I^m, and deterministic anchor
// selection for the prescribed cylinder-visit patterns.
//
// All realizability questions are decided by exact path existence in the
// shift language (never sampling); refusals are explicit when a requested
// exhaustive check would be too large.

#pragma once

#include <vector>

#include "wmdim/measure.hpp"
#include "wmdim/rational.hpp"
#include "wmdim/system.hpp"

namespace wmdim {

/// A finite window of an independence set: indices within [0, horizon).
struct IndependenceWindow {
  std::vector<int> indices;  // sorted, distinct
  int horizon = 0;
  IePair pair;

  /// #I_n = number of indices below n.
  int count_below(int n) const;
  /// Finite-window density #I_horizon / horizon.
  Rational window_density() const;
};

IndependenceWindow make_window(std::vector<int> indices, int horizon, IePair pair);
/// I = all naturals (canonical for the full shift, density 1).
IndependenceWindow naturals_window(IePair pair, int horizon);
/// I = even numbers (canonical for alternating patterns, density 1/2).
IndependenceWindow evens_window(IePair pair, int horizon);

/// Outcome of the exhaustive independence check. When not certified,
/// `failing_assignment` holds the 0/1 pattern over the sorted index set J
/// whose cylinder intersection is empty.
struct IndependenceOutcome {
  bool certified = false;
  long assignments_checked = 0;
  std::vector<int> indices;             // sorted J
  std::vector<int> failing_assignment;  // empty when certified
};

/// Checks that every 0/1 assignment over J is realized by some admissible
/// word: the intersection of T^{-j} U_{zeta(j)} is nonempty at the
/// truncation for each of the 2^|J| assignments, enumerated in
/// lexicographic zeta order. Refuses |J| > bound rather than sampling.
IndependenceOutcome verify_independence(const System& sys, const IePair& pair,
                                        const std::vector<int>& J, int bound);

/// Per-block data of the window: q_m, the qualifying blocks I^m, per-block
/// counts, the E_k sets (first q_m window indices of each qualifying
/// block), and the exact counting-identity margin.
struct BlockSummary {
  int m = 0;
  int q = 0;  // q_m = floor(m * delta / 2)
  Rational declared_density;
  int horizon_blocks = 0;
  std::vector<int> block_counts;        // per block k in [0, horizon_blocks)
  std::vector<int> qualifying;          // I^m: blocks with count > q_m
  std::vector<std::vector<int>> e_set;  // E_k per qualifying block
  IePair pair;

  /// #I^m_n = qualifying blocks below n.
  int qualifying_below(int n) const;
};

/// Density delta must lie in (0, 1]. The counting identity
/// #I_{mn} <= m * #I^m_n + q_m * (n - #I^m_n) is checked exactly for every
/// n up to the block horizon.
BlockSummary block_summary(const IndependenceWindow& window, int m, const Rational& delta);

/// Left side slack of the counting identity at block count n (>= 0 always).
long counting_identity_slack(const IndependenceWindow& window, const BlockSummary& summary, int n);

/// One anchor per sequence in [2^q]^(#I^m_n): the lexicographically
/// smallest admissible word whose orbit visits U_0/U_1 along the pattern
/// psi_k(i_k) on E_k (psi_k writes the binary expansion of i_k - 1 over
/// E_k, most significant bit at the smallest index). Every anchor is
/// re-verified against its prescribed cylinder visits; unrealizable
/// patterns raise an error carrying the pattern.
AnchorFamily pick_anchors(const System& sys, const BlockSummary& summary, int n);

}  // namespace wmdim
