// Exact 1-Wasserstein distance between finitely supported measures via a
// transportation simplex with deterministic lexicographic (Bland) pivoting,
// together with an optimal plan and a 1-Lipschitz dual potential certifying
// the value. The solver is templated on the scalar: Rational gives the
// exact reference mode, double the float mode with a 1e-9 tolerance.
//
// Also: the support-separation lower bound, the near-linear circular fast
// path, and the dynamical Wasserstein metrics W_n^m and W_{d_n}.

#pragma once

#include <string>
#include <vector>

#include "wmdim/measure.hpp"
#include "wmdim/metric_space.hpp"
#include "wmdim/rational.hpp"
#include "wmdim/system.hpp"

namespace wmdim {

template <class Scalar>
struct PlanEntry {
  Eigen::Index source = 0, target = 0;
  Scalar mass{};
};

template <class Scalar>
struct TransportSolution {
  Scalar cost{};
  std::vector<PlanEntry<Scalar>> plan;                 // positive masses, lex order
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> potential;  // dual value per source then target node
};

/// Solves min sum x_ij c_ij subject to marginals; supply and demand must
/// have equal totals. Potentials satisfy u_i + v_j <= c_ij with equality on
/// the plan support (zero duality gap; exact for Rational).
template <class Scalar>
TransportSolution<Scalar> solve_transport(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& cost,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& supply,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& demand);

struct TransportPlan {
  // (source label, target label, mass), lexicographic by labels
  std::vector<std::tuple<std::string, std::string, Rational>> entries;
};

/// A 1-Lipschitz potential f with integral f d(mu - nu) equal to the primal
/// cost. Values are tabulated on the union of supports; `extend` evaluates
/// the same tight extension at any other point via its distances to the
/// nu-support.
struct DualCertificate {
  std::vector<std::string> labels;  // support union
  RVec values;

  Rational value_of(const std::string& label) const;
};

struct W1Result {
  Rational cost;
  TransportPlan plan;
  DualCertificate dual;
};

/// Exact W1 over a metric space with a distance table. Support points must
/// belong to the space; violations are reported naming the point.
W1Result w1(const MetricSpace& space, const std::vector<std::string>& mu_support,
            const RVec& mu_weights, const std::vector<std::string>& nu_support,
            const RVec& nu_weights);

/// Exact W1 between measures on a shift or circle system, with the ground
/// cost assembled from the system metric.
W1Result w1(const System& sys, const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Cost-only variants.
Rational w1_cost(const System& sys, const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Float-mode W1 cost (double solver, 1e-9 scale tolerance).
double w1_cost_float(const MetricSpace& space, const std::vector<std::string>& mu_support,
                     const RVec& mu_weights, const std::vector<std::string>& nu_support,
                     const RVec& nu_weights);

/// Near-linear exact W1 on a circle grid via cumulative masses: the cost is
/// (1/Q) * min_t sum_k |S_k - t| with S the prefix sums of mu - nu, the
/// minimum attained at a median of the S_k.
Rational w1_circle(const System& sys, const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Support-separation lower bound mu(S \ S') * d(S \ S', S'); requires mu
/// supported in S and nu in S'. Never exceeds w1(mu, nu).
Rational support_bound(const System& sys, const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                       const std::vector<Point>& S, const std::vector<Point>& Sprime);

/// Dynamical Wasserstein metric W_n^m = max_{0<=k<n} W((T^km)_* mu, (T^km)_* nu).
Rational wnm(const System& sys, const DiscreteMeasure& mu, const DiscreteMeasure& nu, int n, int m);

/// True iff W_n^m(mu, nu) > threshold; stops at the first exceeding level.
bool wnm_exceeds(const System& sys, const DiscreteMeasure& mu, const DiscreteMeasure& nu, int n,
                 int m, const Rational& threshold);

/// W1 computed in the Bowen metric d_n; satisfies w_bowen >= wnm(.,.,n,1).
Rational w_bowen(const System& sys, const DiscreteMeasure& mu, const DiscreteMeasure& nu, int n);

}  // namespace wmdim
