#include "wmdim/measure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace wmdim {

bool DiscreteMeasure::operator==(const DiscreteMeasure& other) const {
  if (support != other.support) return false;
  for (Eigen::Index i = 0; i < weights.size(); ++i)
    if (weights[i] != other.weights[i]) return false;
  return true;
}

Rational DiscreteMeasure::mass_where(const std::function<bool(const Point&)>& pred) const {
  Rational total(0);
  for (Eigen::Index i = 0; i < size(); ++i)
    if (pred(support[i])) total += weights[i];
  return total;
}

DiscreteMeasure make_measure(std::vector<Point> support, RVec weights) {
  if (static_cast<Eigen::Index>(support.size()) != weights.size())
    throw std::invalid_argument("measure support and weight counts differ");
  if (support.empty()) throw std::invalid_argument("measure must have nonempty support");

  std::map<Point, Rational> merged;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (weights[static_cast<Eigen::Index>(i)] < 0)
      throw std::invalid_argument("measure weights must be nonnegative");
    merged[support[i]] += weights[static_cast<Eigen::Index>(i)];
  }

  DiscreteMeasure out;
  Rational total(0);
  for (auto& [p, w] : merged) {
    if (w == 0) continue;
    out.support.push_back(p);
    total += w;
  }
  if (out.support.empty()) throw std::invalid_argument("measure has zero total mass");
  out.weights.resize(static_cast<Eigen::Index>(out.support.size()));
  Eigen::Index i = 0;
  for (auto& [p, w] : merged)
    if (w != 0) out.weights[i++] = w;
  if (total != 1)
    throw std::invalid_argument("measure weights sum to " + to_string(total) + ", expected 1");
  return out;
}

DiscreteMeasure dirac(Point p) {
  DiscreteMeasure m;
  m.support.push_back(std::move(p));
  m.weights.resize(1);
  m.weights[0] = 1;
  return m;
}

DiscreteMeasure mix(const Rational& lambda, const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (lambda < 0 || lambda > 1)
    throw std::invalid_argument("mix: lambda must lie in [0,1]");
  if (lambda == 0) return nu;
  if (lambda == 1) return mu;
  std::vector<Point> support;
  std::vector<Rational> weights;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    support.push_back(mu.support[i]);
    weights.push_back(lambda * mu.weights[i]);
  }
  for (Eigen::Index i = 0; i < nu.size(); ++i) {
    support.push_back(nu.support[i]);
    weights.push_back((1 - lambda) * nu.weights[i]);
  }
  RVec w(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) w[static_cast<Eigen::Index>(i)] = weights[i];
  return make_measure(std::move(support), std::move(w));
}

DiscreteMeasure pushforward(const System& sys, const DiscreteMeasure& mu) {
  std::vector<Point> images;
  images.reserve(mu.support.size());
  for (const auto& p : mu.support) images.push_back(sys.apply(p));
  return make_measure(std::move(images), mu.weights);
}

DiscreteMeasure pushforward_power(const System& sys, DiscreteMeasure mu, int k) {
  for (int i = 0; i < k; ++i) mu = pushforward(sys, mu);
  return mu;
}

std::vector<Integer> default_dirac_weights(int n) {
  std::vector<Integer> k(n);
  for (int i = 0; i < n; ++i) k[i] = Integer(1) << i;
  return k;
}

DiscreteMeasure dirac_embedding(const std::vector<Point>& points, const std::vector<Integer>& k) {
  const int n = static_cast<int>(points.size());
  if (n == 0) throw std::invalid_argument("dirac_embedding: no points");
  if (k.size() != points.size())
    throw std::invalid_argument("dirac_embedding: weight count does not match point count");
  for (const auto& ki : k)
    if (ki <= 0) throw std::invalid_argument("dirac_embedding: weights must be positive");

  // Exhaustive subset-sum collision check; the embedding is injective on
  // distinct tuples precisely when all 2^n subset sums differ.
  if (n > 24) throw std::invalid_argument("dirac_embedding: subset-sum check limited to n <= 24");
  std::map<Integer, std::uint32_t> seen;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Integer sum(0);
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) sum += k[i];
    auto [it, inserted] = seen.emplace(sum, mask);
    if (!inserted) {
      auto subset = [&](std::uint32_t m) {
        std::string s = "{";
        for (int i = 0; i < n; ++i)
          if (m & (1u << i)) s += (s.size() > 1 ? "," : "") + std::to_string(i);
        return s + "}";
      };
      throw std::invalid_argument("dirac_embedding: subset sums collide for index sets " +
                                  subset(it->second) + " and " + subset(mask));
    }
  }

  Integer total = std::accumulate(k.begin(), k.end(), Integer(0));
  RVec w(n);
  for (int i = 0; i < n; ++i) w[i] = Rational(k[i], total);
  return make_measure(points, std::move(w));
}

bool is_simplex_point(const SimplexPoint& t) {
  if (t.size() == 0) return false;
  Rational sum(0);
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    if (t[i] < 0) return false;
    sum += t[i];
  }
  return sum == 1;
}

void require_simplex_point(const SimplexPoint& t) {
  if (!is_simplex_point(t))
    throw std::invalid_argument("coordinates do not form a probability vector");
}

SimplexPoint theta(const CubePoint& t) {
  if (t.factors.empty()) throw std::invalid_argument("theta: empty cube point");
  for (const auto& f : t.factors) require_simplex_point(f);
  SimplexPoint out = t.factors.front();
  for (std::size_t m = 1; m < t.factors.size(); ++m) {
    const auto& f = t.factors[m];
    SimplexPoint next(out.size() * f.size());
    for (Eigen::Index i = 0; i < out.size(); ++i)
      for (Eigen::Index j = 0; j < f.size(); ++j) next[i * f.size() + j] = out[i] * f[j];
    out = std::move(next);
  }
  return out;
}

Eigen::Index theta_flat_index(std::span<const int> multi, int base) {
  Eigen::Index flat = 0;
  for (int d : multi) {
    if (d < 1 || d > base) throw std::invalid_argument("multi-index digit out of range");
    flat = flat * base + (d - 1);
  }
  return flat;
}

DiscreteMeasure block_product_embedding(const System& sys, const std::vector<SimplexPoint>& blocks,
                                        int m, int depth) {
  if (!sys.is_shift())
    throw std::invalid_argument("block products are defined on shift systems");
  if (m < 1) throw std::invalid_argument("block length m must be >= 1");
  if (depth < 1 || depth > static_cast<int>(blocks.size()))
    throw std::invalid_argument("block depth must lie in [1, #blocks]");
  if (depth * m > sys.depth())
    throw std::invalid_argument("block product needs depth*m <= truncation depth " +
                                std::to_string(sys.depth()));
  const int a = sys.alphabet_size();
  Eigen::Index block_count = 1;
  for (int i = 0; i < m; ++i) block_count *= a;
  for (int j = 0; j < depth; ++j) {
    if (blocks[j].size() != block_count)
      throw std::invalid_argument("block vector " + std::to_string(j) + " has dimension " +
                                  std::to_string(blocks[j].size()) + ", expected |A|^m = " +
                                  std::to_string(block_count));
    require_simplex_point(blocks[j]);
  }

  // Expand the product measure block by block, keeping only positive-weight
  // words. Block index b spells its word base-|A|, most significant first,
  // so words come out in lexicographic order.
  std::vector<std::pair<std::vector<std::uint8_t>, Rational>> table{{{}, Rational(1)}};
  for (int j = 0; j < depth; ++j) {
    std::vector<std::pair<std::vector<std::uint8_t>, Rational>> next;
    for (const auto& [word, weight] : table) {
      for (Eigen::Index b = 0; b < block_count; ++b) {
        if (blocks[j][b] == 0) continue;
        auto extended = word;
        for (int i = m - 1; i >= 0; --i) {
          Eigen::Index div = 1;
          for (int s = 0; s < i; ++s) div *= a;
          extended.push_back(static_cast<std::uint8_t>((b / div) % a));
        }
        next.emplace_back(std::move(extended), weight * blocks[j][b]);
      }
    }
    table = std::move(next);
  }

  std::vector<Point> support;
  RVec weights(static_cast<Eigen::Index>(table.size()));
  for (std::size_t i = 0; i < table.size(); ++i) {
    support.push_back(Point{table[i].first, -1});
    weights[static_cast<Eigen::Index>(i)] = table[i].second;
  }
  return make_measure(std::move(support), std::move(weights));
}

std::vector<SimplexPoint> h_family(int q) {
  if (q < 0) throw std::invalid_argument("h_family: q must be >= 0");
  if (q > 4) throw std::invalid_argument("h_family: 2^(2^q) - 1 vectors is too many for q > 4");
  const int k = 1 << q;
  std::vector<SimplexPoint> out;
  out.reserve((std::size_t(1) << k) - 1);
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    SimplexPoint t = SimplexPoint::Zero(k);
    const int card = std::popcount(mask);
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) t[i] = Rational(1, card);
    out.push_back(std::move(t));
  }
  return out;
}

int AnchorFamily::digit(Eigen::Index flat, int slot) const {
  Eigen::Index div = 1;
  for (int s = slot + 1; s < factors; ++s) div *= base;
  return static_cast<int>((flat / div) % base) + 1;
}

Eigen::Index AnchorFamily::index_of(const Point& p) const {
  auto it = std::find(anchors.begin(), anchors.end(), p);
  if (it == anchors.end()) throw std::invalid_argument("point is not an anchor of the family");
  return static_cast<Eigen::Index>(it - anchors.begin());
}

DiscreteMeasure xi(const CubePoint& t, const AnchorFamily& anchors) {
  if (t.cube_dim() != anchors.factors)
    throw std::invalid_argument("xi: cube point has " + std::to_string(t.cube_dim()) +
                                " factors, anchors expect " + std::to_string(anchors.factors));
  for (const auto& f : t.factors)
    if (f.size() != anchors.base)
      throw std::invalid_argument("xi: factor dimension does not match the anchor base");
  SimplexPoint w = theta(t);
  std::vector<Point> support;
  std::vector<Rational> weights;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    support.push_back(anchors.anchors[static_cast<std::size_t>(i)]);
    weights.push_back(w[i]);
  }
  RVec wv(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) wv[static_cast<Eigen::Index>(i)] = weights[i];
  return make_measure(std::move(support), std::move(wv));
}

}  // namespace wmdim
