#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace wmdim::oracle {

namespace {

struct Dsu {
  std::vector<int> parent, size;
  std::vector<std::pair<int, int>> log;  // (child, old size of root)

  explicit Dsu(int n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }

  int find(int x) const {
    while (parent[x] != x) x = parent[x];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    log.emplace_back(b, size[a]);
    size[a] += size[b];
    return true;
  }
  void rollback(std::size_t mark) {
    while (log.size() > mark) {
      auto [child, old] = log.back();
      log.pop_back();
      size[parent[child]] = old;
      parent[child] = child;
    }
  }
};

}  // namespace

Rational transport_vertex_enumeration(const RMat& cost, const RVec& supply, const RVec& demand) {
  const int m = static_cast<int>(supply.size()), n = static_cast<int>(demand.size());
  const int edges = m * n, need = m + n - 1;
  std::vector<std::pair<int, int>> tree;
  tree.reserve(need);
  Dsu dsu(m + n);
  bool found = false;
  Rational best(0);

  auto evaluate = [&] {
    // Flows by leaf stripping; reject any negative basic variable.
    std::vector<Rational> residual(m + n);
    for (int i = 0; i < m; ++i) residual[i] = supply[i];
    for (int j = 0; j < n; ++j) residual[m + j] = -demand[j];
    std::vector<int> degree(m + n, 0);
    std::vector<std::vector<std::pair<int, int>>> incident(m + n);
    for (std::size_t e = 0; e < tree.size(); ++e) {
      auto [i, j] = tree[e];
      incident[i].push_back({m + j, static_cast<int>(e)});
      incident[m + j].push_back({i, static_cast<int>(e)});
      ++degree[i];
      ++degree[m + j];
    }
    std::vector<Rational> flow(tree.size(), Rational(0));
    std::vector<char> removed_edge(tree.size(), 0), removed_node(m + n, 0);
    std::vector<int> leaves;
    for (int v = 0; v < m + n; ++v)
      if (degree[v] == 1) leaves.push_back(v);
    for (int step = 0; step + 1 < m + n; ++step) {
      if (leaves.empty()) return;  // not a tree
      int v = leaves.back();
      leaves.pop_back();
      if (removed_node[v]) return;
      removed_node[v] = 1;
      int eid = -1, other = -1;
      for (auto [w, e] : incident[v]) {
        if (!removed_edge[e]) {
          eid = e;
          other = w;
          break;
        }
      }
      if (eid < 0) return;
      // Mass on the leaf edge equals the leaf residual, signed toward the
      // source side.
      Rational f = v < m ? residual[v] : Rational(-residual[v]);
      if (f < 0) return;  // infeasible basis, not a vertex
      flow[static_cast<std::size_t>(eid)] = f;
      removed_edge[static_cast<std::size_t>(eid)] = 1;
      residual[other] += residual[v];
      residual[v] = 0;
      if (--degree[other] == 1 && !removed_node[other]) leaves.push_back(other);
      --degree[v];
    }
    Rational c(0);
    for (std::size_t e = 0; e < tree.size(); ++e)
      c += flow[e] * cost(tree[e].first, tree[e].second);
    if (!found || c < best) {
      best = c;
      found = true;
    }
  };

  auto rec = [&](auto&& self, int e, int chosen) -> void {
    if (chosen == need) {
      evaluate();
      return;
    }
    if (e == edges || chosen + (edges - e) < need) return;
    const int i = e / n, j = e % n;
    auto mark = dsu.log.size();
    if (dsu.unite(i, m + j)) {
      tree.emplace_back(i, j);
      self(self, e + 1, chosen + 1);
      tree.pop_back();
      dsu.rollback(mark);
    }
    self(self, e + 1, chosen);
  };
  rec(rec, 0, 0);
  if (!found) throw std::logic_error("transport oracle found no feasible vertex");
  return best;
}

std::uint64_t word_count(const System& sys, int len) {
  if (!sys.is_shift()) throw std::invalid_argument("word_count applies to shift systems");
  std::size_t window = 0;
  for (const auto& f : sys.spec().forbidden) window = std::max(window, f.size());
  window = window > 0 ? window - 1 : 0;

  auto blocked = [&](const std::string& state, int c) {
    std::string ext = state;
    ext.push_back(static_cast<char>(c));
    for (const auto& f : sys.spec().forbidden) {
      if (f.size() > ext.size()) continue;
      bool match = true;
      for (std::size_t i = 0; i < f.size() && match; ++i)
        match = sys.spec().alphabet[static_cast<std::uint8_t>(ext[ext.size() - f.size() + i])] ==
                f[i];
      if (match) return true;
    }
    return false;
  };

  std::map<std::string, std::uint64_t> counts{{std::string(), 1}};
  for (int pos = 0; pos < len; ++pos) {
    std::map<std::string, std::uint64_t> next;
    for (const auto& [state, c] : counts) {
      for (int sym = 0; sym < sys.alphabet_size(); ++sym) {
        if (blocked(state, sym)) continue;
        std::string s = state;
        s.push_back(static_cast<char>(sym));
        if (s.size() > window) s.erase(0, s.size() - window);
        next[s] += c;
      }
    }
    counts = std::move(next);
  }
  std::uint64_t total = 0;
  for (const auto& [state, c] : counts) total += c;
  return total;
}

int max_separated_exhaustive(int count, const std::function<bool(int, int)>& conflict) {
  if (count > 24) throw std::invalid_argument("exhaustive separation limited to 24 points");
  int best = 0;
  for (std::uint32_t mask = 1; mask < (1u << count); ++mask) {
    bool ok = true;
    for (int i = 0; i < count && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      for (int j = i + 1; j < count && ok; ++j)
        if ((mask & (1u << j)) && conflict(i, j)) ok = false;
    }
    if (ok) best = std::max(best, std::popcount(mask));
  }
  return best;
}

int min_cover_exhaustive(int count, const std::function<bool(int, int)>& covers) {
  if (count > 20) throw std::invalid_argument("exhaustive covering limited to 20 points");
  for (int r = 1; r <= count; ++r) {
    std::vector<int> centers(static_cast<std::size_t>(r));
    std::function<bool(int, int)> choose = [&](int at, int from) -> bool {
      if (at == r) {
        for (int p = 0; p < count; ++p) {
          bool covered = false;
          for (int c : centers) covered = covered || covers(c, p);
          if (!covered) return false;
        }
        return true;
      }
      for (int c = from; c < count; ++c) {
        centers[static_cast<std::size_t>(at)] = c;
        if (choose(at + 1, c + 1)) return true;
      }
      return false;
    };
    if (choose(0, 0)) return r;
  }
  return count;
}

DiscreteMeasure random_measure(std::mt19937_64& rng, const std::vector<Point>& points,
                               int support_size) {
  if (support_size < 1 || support_size > static_cast<int>(points.size()))
    throw std::invalid_argument("random_measure: bad support size");
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Point> support;
  RVec weights(support_size);
  Integer total(0);
  std::vector<Integer> raw(static_cast<std::size_t>(support_size));
  for (int i = 0; i < support_size; ++i) {
    support.push_back(points[order[static_cast<std::size_t>(i)]]);
    raw[static_cast<std::size_t>(i)] = Integer(1 + rng() % 20);
    total += raw[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < support_size; ++i)
    weights[i] = Rational(raw[static_cast<std::size_t>(i)], total);
  return make_measure(std::move(support), std::move(weights));
}

}  // namespace wmdim::oracle
