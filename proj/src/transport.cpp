#include "wmdim/transport.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

namespace wmdim {

namespace {

template <class Scalar>
struct SolverTraits {
  static Scalar eps() { return Scalar(0); }
};

template <>
struct SolverTraits<double> {
  static double eps() { return 1e-12; }
};

}  // namespace

template <class Scalar>
TransportSolution<Scalar> solve_transport(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& cost,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& supply,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& demand) {
  const Eigen::Index m = supply.size(), n = demand.size();
  if (cost.rows() != m || cost.cols() != n)
    throw std::invalid_argument("cost matrix shape does not match marginals");
  if (m == 0 || n == 0) throw std::invalid_argument("empty marginal");
  const Scalar eps = SolverTraits<Scalar>::eps();
  Scalar total_supply(0), total_demand(0);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (supply[i] < -eps) throw std::invalid_argument("negative supply");
    total_supply += supply[i];
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (demand[j] < -eps) throw std::invalid_argument("negative demand");
    total_demand += demand[j];
  }
  {
    Scalar gap = total_supply - total_demand;
    if (gap < 0) gap = -gap;
    if (gap > eps * Scalar(1000) + Scalar(0))
      throw std::invalid_argument("supply and demand totals differ");
  }

  const Eigen::Index nodes = m + n;
  // Basis cells as a spanning tree on sources + targets.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> flow =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(m, n);
  std::vector<std::vector<Eigen::Index>> adj(nodes);  // neighbours in the tree
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> in_basis(m, n);
  in_basis.setConstant(false);

  auto link = [&](Eigen::Index i, Eigen::Index j) {
    in_basis(i, j) = true;
    adj[i].push_back(m + j);
    adj[m + j].push_back(i);
  };
  auto unlink = [&](Eigen::Index i, Eigen::Index j) {
    in_basis(i, j) = false;
    std::erase(adj[i], m + j);
    std::erase(adj[m + j], i);
  };

  // Northwest-corner start: exactly m+n-1 basis cells, degenerate zeros
  // included.
  {
    auto a = supply;
    auto b = demand;
    Eigen::Index i = 0, j = 0;
    while (true) {
      Scalar t = std::min(a[i], b[j]);
      if (t < Scalar(0)) t = Scalar(0);
      flow(i, j) = t;
      link(i, j);
      a[i] -= t;
      b[j] -= t;
      if (i == m - 1 && j == n - 1) break;
      if (a[i] <= eps && i + 1 < m)
        ++i;
      else
        ++j;
    }
  }

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> potential(nodes);
  auto recompute_potentials = [&] {
    std::vector<char> known(nodes, 0);
    potential[0] = Scalar(0);
    known[0] = 1;
    std::queue<Eigen::Index> q;
    q.push(0);
    while (!q.empty()) {
      Eigen::Index u = q.front();
      q.pop();
      for (Eigen::Index w : adj[u]) {
        if (known[w]) continue;
        if (u < m)
          potential[w] = cost(u, w - m) - potential[u];
        else
          potential[w] = cost(w, u - m) - potential[u];
        known[w] = 1;
        q.push(w);
      }
    }
    for (Eigen::Index u = 0; u < nodes; ++u)
      if (!known[u]) throw std::logic_error("transport basis is not a spanning tree");
  };
  recompute_potentials();

  // Simplex iterations with Bland's rule: enter the lexicographically first
  // cell with negative reduced cost, leave at the lexicographically first
  // minimizer on the cycle. This pivot choice cannot cycle.
  const long max_pivots = 4L * static_cast<long>(nodes) * static_cast<long>(nodes) * 1000;
  for (long pivot = 0;; ++pivot) {
    if (pivot > max_pivots) throw std::logic_error("transport simplex failed to terminate");
    Eigen::Index ei = -1, ej = -1;
    for (Eigen::Index i = 0; i < m && ei < 0; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (in_basis(i, j)) continue;
        if (cost(i, j) - potential[i] - potential[m + j] < -eps) {
          ei = i;
          ej = j;
          break;
        }
      }
    }
    if (ei < 0) break;  // optimal

    // Unique tree path from source node ei to target node m+ej.
    std::vector<Eigen::Index> parent(nodes, -1);
    {
      std::queue<Eigen::Index> q;
      q.push(ei);
      parent[ei] = ei;
      while (!q.empty()) {
        Eigen::Index u = q.front();
        q.pop();
        if (u == m + ej) break;
        for (Eigen::Index w : adj[u]) {
          if (parent[w] >= 0) continue;
          parent[w] = u;
          q.push(w);
        }
      }
    }
    std::vector<Eigen::Index> path;  // nodes from ei to m+ej
    for (Eigen::Index u = m + ej; u != ei; u = parent[u]) path.push_back(u);
    path.push_back(ei);
    std::reverse(path.begin(), path.end());

    // Alternate signs along the cycle; odd path edges carry -theta.
    std::vector<std::pair<Eigen::Index, Eigen::Index>> minus_cells;
    for (std::size_t s = 0; s + 1 < path.size(); s += 2) {
      Eigen::Index src = path[s], tgt = path[s + 1];
      minus_cells.emplace_back(src, tgt - m);
    }
    bool have_theta = false;
    Scalar theta{};
    std::pair<Eigen::Index, Eigen::Index> leaving{-1, -1};
    for (auto [i, j] : minus_cells) {
      if (!have_theta || flow(i, j) < theta) {
        theta = flow(i, j);
        leaving = {i, j};
        have_theta = true;
      } else if (flow(i, j) == theta && std::make_pair(i, j) < leaving) {
        leaving = {i, j};
      }
    }
    if (!have_theta) throw std::logic_error("transport cycle without a leaving cell");

    for (std::size_t s = 0; s + 1 < path.size(); ++s) {
      Eigen::Index a = path[s], b = path[s + 1];
      Eigen::Index i = a < m ? a : b;
      Eigen::Index j = (a < m ? b : a) - m;
      if (s % 2 == 0)
        flow(i, j) -= theta;
      else
        flow(i, j) += theta;
    }
    flow(ei, ej) += theta;
    unlink(leaving.first, leaving.second);
    link(ei, ej);
    recompute_potentials();
  }

  TransportSolution<Scalar> out;
  out.potential = potential;
  out.cost = Scalar(0);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (flow(i, j) > eps) {
        out.plan.push_back({i, j, flow(i, j)});
        out.cost += flow(i, j) * cost(i, j);
      }
    }
  }
  return out;
}

template TransportSolution<Rational> solve_transport<Rational>(const RMat&, const RVec&,
                                                               const RVec&);
template TransportSolution<double> solve_transport<double>(const DMat&, const DVec&, const DVec&);

namespace {

void validate_weights(const RVec& w, const char* who) {
  Rational total(0);
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] <= 0) throw std::invalid_argument(std::string(who) + ": weights must be positive");
    total += w[i];
  }
  if (total != 1)
    throw std::invalid_argument(std::string(who) + ": weights sum to " + to_string(total));
}

// Assembles the result (plan with labels, tight-extension dual) from an
// exact solve. Dnu holds the pairwise distances within the nu support.
W1Result finish_exact(const RMat& C, const RMat& Dnu, const std::vector<std::string>& mu_labels,
                      const RVec& mu_w, const std::vector<std::string>& nu_labels,
                      const RVec& nu_w, TransportSolution<Rational> sol) {
  const Eigen::Index m = mu_w.size(), n = nu_w.size();
  W1Result out;
  out.cost = sol.cost;
  for (const auto& e : sol.plan)
    out.plan.entries.emplace_back(mu_labels[e.source], nu_labels[e.target], e.mass);
  std::sort(out.plan.entries.begin(), out.plan.entries.end());

  // Tight extension f(x) = min_j (d(x, q_j) - v_j); 1-Lipschitz everywhere,
  // >= u on the mu support, <= -v on the nu support, hence zero gap.
  auto f_from_row = [&](const auto& row) {
    Rational best = Rational(row(0)) - sol.potential[m + 0];
    for (Eigen::Index j = 1; j < n; ++j) {
      Rational candidate = Rational(row(j)) - sol.potential[m + j];
      if (candidate < best) best = candidate;
    }
    return best;
  };
  std::map<std::string, Rational> values;
  for (Eigen::Index i = 0; i < m; ++i) values.emplace(mu_labels[i], f_from_row(C.row(i)));
  for (Eigen::Index j = 0; j < n; ++j) values.emplace(nu_labels[j], f_from_row(Dnu.row(j)));

  Rational integral(0);
  for (Eigen::Index i = 0; i < m; ++i) integral += values.at(mu_labels[i]) * mu_w[i];
  for (Eigen::Index j = 0; j < n; ++j) integral -= values.at(nu_labels[j]) * nu_w[j];
  if (integral != sol.cost)
    throw std::logic_error("duality gap is nonzero in exact mode");

  for (auto& [label, value] : values) {
    out.dual.labels.push_back(label);
  }
  out.dual.values.resize(static_cast<Eigen::Index>(values.size()));
  Eigen::Index at = 0;
  for (auto& [label, value] : values) out.dual.values[at++] = value;
  return out;
}

W1Result w1_exact_from_costs(const RMat& C, const RMat& Dnu,
                             const std::vector<std::string>& mu_labels, const RVec& mu_w,
                             const std::vector<std::string>& nu_labels, const RVec& nu_w) {
  // Degenerate instances bypass the simplex: equal measures and single-point
  // supports have closed-form plans.
  if (mu_labels == nu_labels) {
    bool equal = true;
    for (Eigen::Index i = 0; i < mu_w.size() && equal; ++i) equal = mu_w[i] == nu_w[i];
    if (equal) {
      TransportSolution<Rational> sol;
      sol.cost = 0;
      sol.potential = RVec::Zero(mu_w.size() + nu_w.size());
      for (Eigen::Index i = 0; i < mu_w.size(); ++i)
        sol.plan.push_back({i, i, mu_w[i]});
      return finish_exact(C, Dnu, mu_labels, mu_w, nu_labels, nu_w, std::move(sol));
    }
  }
  if (mu_w.size() == 1 || nu_w.size() == 1) {
    TransportSolution<Rational> sol;
    sol.cost = 0;
    sol.potential = RVec::Zero(mu_w.size() + nu_w.size());
    if (nu_w.size() == 1) {
      for (Eigen::Index i = 0; i < mu_w.size(); ++i) {
        sol.plan.push_back({i, 0, mu_w[i]});
        sol.cost += mu_w[i] * C(i, 0);
        sol.potential[i] = C(i, 0);
      }
    } else {
      for (Eigen::Index j = 0; j < nu_w.size(); ++j) {
        sol.plan.push_back({0, j, nu_w[j]});
        sol.cost += nu_w[j] * C(0, j);
        sol.potential[mu_w.size() + j] = C(0, j);
      }
    }
    return finish_exact(C, Dnu, mu_labels, mu_w, nu_labels, nu_w, std::move(sol));
  }
  auto sol = solve_transport<Rational>(C, mu_w, nu_w);
  return finish_exact(C, Dnu, mu_labels, mu_w, nu_labels, nu_w, std::move(sol));
}

}  // namespace

Rational DualCertificate::value_of(const std::string& label) const {
  auto it = std::lower_bound(labels.begin(), labels.end(), label);
  if (it == labels.end() || *it != label)
    throw std::invalid_argument("dual potential not tabulated at '" + label + "'");
  return values[static_cast<Eigen::Index>(it - labels.begin())];
}

W1Result w1(const MetricSpace& space, const std::vector<std::string>& mu_support,
            const RVec& mu_weights, const std::vector<std::string>& nu_support,
            const RVec& nu_weights) {
  validate_weights(mu_weights, "mu");
  validate_weights(nu_weights, "nu");
  std::vector<Eigen::Index> mi, ni;
  for (const auto& s : mu_support) mi.push_back(space.index_of(s));
  for (const auto& s : nu_support) ni.push_back(space.index_of(s));
  const Eigen::Index m = mu_weights.size(), n = nu_weights.size();
  if (static_cast<Eigen::Index>(mi.size()) != m || static_cast<Eigen::Index>(ni.size()) != n)
    throw std::invalid_argument("support and weight counts differ");
  RMat C(m, n), Dnu(n, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) C(i, j) = space.dist(mi[i], ni[j]);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index l = 0; l < n; ++l) Dnu(j, l) = space.dist(ni[j], ni[l]);
  return w1_exact_from_costs(C, Dnu, mu_support, mu_weights, nu_support, nu_weights);
}

W1Result w1(const System& sys, const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  const Eigen::Index m = mu.size(), n = nu.size();
  RMat C(m, n), Dnu(n, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) C(i, j) = sys.dist(mu.support[i], nu.support[j]);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index l = 0; l < n; ++l) Dnu(j, l) = sys.dist(nu.support[j], nu.support[l]);
  std::vector<std::string> ml(m), nl(n);
  for (Eigen::Index i = 0; i < m; ++i) ml[i] = sys.label(mu.support[i]);
  for (Eigen::Index j = 0; j < n; ++j) nl[j] = sys.label(nu.support[j]);
  return w1_exact_from_costs(C, Dnu, ml, mu.weights, nl, nu.weights);
}

Rational w1_cost(const System& sys, const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu == nu) return Rational(0);
  const Eigen::Index m = mu.size(), n = nu.size();
  if (m == 1 || n == 1) {
    Rational cost(0);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        cost += mu.weights[i] * nu.weights[j] * sys.dist(mu.support[i], nu.support[j]);
    return cost;
  }
  RMat C(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) C(i, j) = sys.dist(mu.support[i], nu.support[j]);
  return solve_transport<Rational>(C, mu.weights, nu.weights).cost;
}

double w1_cost_float(const MetricSpace& space, const std::vector<std::string>& mu_support,
                     const RVec& mu_weights, const std::vector<std::string>& nu_support,
                     const RVec& nu_weights) {
  const Eigen::Index m = mu_weights.size(), n = nu_weights.size();
  DMat C(m, n);
  DVec a(m), b(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    a[i] = to_double(mu_weights[i]);
    for (Eigen::Index j = 0; j < n; ++j)
      C(i, j) = to_double(space.dist(space.index_of(mu_support[i]), space.index_of(nu_support[j])));
  }
  for (Eigen::Index j = 0; j < n; ++j) b[j] = to_double(nu_weights[j]);
  // Rescale the float marginals to a common total; parsing noise stays
  // within the 1e-9 contract.
  double sa = a.sum(), sb = b.sum();
  a /= sa;
  b /= sb;
  return solve_transport<double>(C, a, b).cost;
}

Rational w1_circle(const System& sys, const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (sys.is_shift())
    throw std::invalid_argument("w1_circle requires a circle system");
  const auto Q = sys.spec().grid;
  std::vector<Rational> net(static_cast<std::size_t>(Q), Rational(0));
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (!mu.support[i].is_circle())
      throw std::invalid_argument("w1_circle: mu has a non-circle support point");
    net[static_cast<std::size_t>(mu.support[i].idx)] += mu.weights[i];
  }
  for (Eigen::Index j = 0; j < nu.size(); ++j) {
    if (!nu.support[j].is_circle())
      throw std::invalid_argument("w1_circle: nu has a non-circle support point");
    net[static_cast<std::size_t>(nu.support[j].idx)] -= nu.weights[j];
  }
  std::vector<Rational> prefix(net.size());
  Rational run(0);
  for (std::size_t k = 0; k < net.size(); ++k) {
    run += net[k];
    prefix[k] = run;
  }
  std::vector<Rational> sorted = prefix;
  std::sort(sorted.begin(), sorted.end());
  const Rational median = sorted[sorted.size() / 2];
  Rational total(0);
  for (const auto& s : prefix) total += s > median ? s - median : median - s;
  return total / Q;
}

Rational support_bound(const System& sys, const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                       const std::vector<Point>& S, const std::vector<Point>& Sprime) {
  auto contains = [](const std::vector<Point>& set, const Point& p) {
    return std::find(set.begin(), set.end(), p) != set.end();
  };
  for (const auto& p : mu.support)
    if (!contains(S, p))
      throw std::invalid_argument("support_bound: mu is not supported in S (point " +
                                  sys.label(p) + ")");
  for (const auto& p : nu.support)
    if (!contains(Sprime, p))
      throw std::invalid_argument("support_bound: nu is not supported in S' (point " +
                                  sys.label(p) + ")");
  std::vector<Point> difference;
  for (const auto& p : S)
    if (!contains(Sprime, p)) difference.push_back(p);
  if (difference.empty() || Sprime.empty()) return Rational(0);
  Rational mass = mu.mass_where([&](const Point& p) { return contains(difference, p); });
  if (mass == 0) return Rational(0);
  Rational separation(-1);
  for (const auto& p : difference)
    for (const auto& q : Sprime) {
      Rational d = sys.dist(p, q);
      if (separation < 0 || d < separation) separation = d;
    }
  return mass * separation;
}

Rational wnm(const System& sys, const DiscreteMeasure& mu, const DiscreteMeasure& nu, int n,
             int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("wnm: n and m must be >= 1");
  if (sys.is_shift()) {
    const auto len = static_cast<int>(mu.support.front().word.size());
    const int needed = (n - 1) * m + 1;
    if (len < needed)
      throw std::invalid_argument("depth exhausted: W_n^m with n=" + std::to_string(n) + ", m=" +
                                  std::to_string(m) + " requires depth >= " +
                                  std::to_string(needed) + ", have " + std::to_string(len));
  }
  DiscreteMeasure a = mu, b = nu;
  Rational best = w1_cost(sys, a, b);
  for (int k = 1; k < n; ++k) {
    a = pushforward_power(sys, std::move(a), m);
    b = pushforward_power(sys, std::move(b), m);
    best = std::max(best, w1_cost(sys, a, b));
  }
  return best;
}

bool wnm_exceeds(const System& sys, const DiscreteMeasure& mu, const DiscreteMeasure& nu, int n,
                 int m, const Rational& threshold) {
  DiscreteMeasure a = mu, b = nu;
  if (w1_cost(sys, a, b) > threshold) return true;
  for (int k = 1; k < n; ++k) {
    a = pushforward_power(sys, std::move(a), m);
    b = pushforward_power(sys, std::move(b), m);
    if (w1_cost(sys, a, b) > threshold) return true;
  }
  return false;
}

Rational w_bowen(const System& sys, const DiscreteMeasure& mu, const DiscreteMeasure& nu, int n) {
  if (n < 1) throw std::invalid_argument("w_bowen: n must be >= 1");
  if (mu == nu) return Rational(0);
  const Eigen::Index m = mu.size(), l = nu.size();
  RMat C(m, l);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < l; ++j) C(i, j) = sys.bowen(mu.support[i], nu.support[j], n);
  if (m == 1 || l == 1) {
    Rational cost(0);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < l; ++j) cost += mu.weights[i] * nu.weights[j] * C(i, j);
    return cost;
  }
  return solve_transport<Rational>(C, mu.weights, nu.weights).cost;
}

}  // namespace wmdim
