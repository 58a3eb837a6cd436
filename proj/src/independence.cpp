#include "wmdim/independence.hpp"

#include <algorithm>
#include <stdexcept>

namespace wmdim {

namespace {

// Pins the preword of the chosen cylinder at position j; reports conflicts.
bool pin_cylinder(SymbolPins& pins, const Cylinder& c, int j) {
  for (std::size_t o = 0; o < c.preword.size(); ++o) {
    auto& slot = pins[static_cast<std::size_t>(j) + o];
    if (slot.has_value() && *slot != c.preword[o]) return false;
    slot = c.preword[o];
  }
  return true;
}

std::string pattern_string(const std::vector<int>& positions, const std::vector<int>& bits) {
  std::string s;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(positions[i]) + "->U" + std::to_string(bits[i]);
  }
  return s;
}

}  // namespace

int IndependenceWindow::count_below(int n) const {
  return static_cast<int>(std::lower_bound(indices.begin(), indices.end(), n) - indices.begin());
}

Rational IndependenceWindow::window_density() const {
  return Rational(static_cast<long>(indices.size()), horizon);
}

IndependenceWindow make_window(std::vector<int> indices, int horizon, IePair pair) {
  if (horizon < 1) throw std::invalid_argument("window horizon must be >= 1");
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (!indices.empty() && (indices.front() < 0 || indices.back() >= horizon))
    throw std::invalid_argument("window indices must lie in [0, horizon)");
  return IndependenceWindow{std::move(indices), horizon, std::move(pair)};
}

IndependenceWindow naturals_window(IePair pair, int horizon) {
  std::vector<int> idx(static_cast<std::size_t>(horizon));
  for (int i = 0; i < horizon; ++i) idx[static_cast<std::size_t>(i)] = i;
  return make_window(std::move(idx), horizon, std::move(pair));
}

IndependenceWindow evens_window(IePair pair, int horizon) {
  std::vector<int> idx;
  for (int i = 0; i < horizon; i += 2) idx.push_back(i);
  return make_window(std::move(idx), horizon, std::move(pair));
}

IndependenceOutcome verify_independence(const System& sys, const IePair& pair,
                                        const std::vector<int>& J, int bound) {
  if (!sys.is_shift())
    throw std::invalid_argument("independence verification works on shift systems");
  std::vector<int> sorted = J;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const int k = static_cast<int>(sorted.size());
  if (k == 0) throw std::invalid_argument("independence check needs a nonempty index set");
  if (k > bound || k > 24)
    throw std::invalid_argument("refusing a non-exhaustive check: |J| = " + std::to_string(k) +
                                " exceeds the bound " + std::to_string(std::min(bound, 24)));
  const int L = sys.depth();
  const int reach = sorted.back() +
                    static_cast<int>(std::max(pair.u0.preword.size(), pair.u1.preword.size()));
  if (reach > L)
    throw std::invalid_argument("pattern reaches position " + std::to_string(reach - 1) +
                                "; truncation depth " + std::to_string(L) + " is too small");

  IndependenceOutcome out;
  out.indices = sorted;
  // Lexicographic zeta order: the bit for the smallest index varies slowest.
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    ++out.assignments_checked;
    SymbolPins pins(static_cast<std::size_t>(L));
    bool consistent = true;
    std::vector<int> bits(static_cast<std::size_t>(k));
    for (int b = 0; b < k && consistent; ++b) {
      const int bit = (mask >> (k - 1 - b)) & 1;
      bits[static_cast<std::size_t>(b)] = bit;
      consistent = pin_cylinder(pins, bit ? pair.u1 : pair.u0, sorted[static_cast<std::size_t>(b)]);
    }
    if (!consistent || !sys.realize(pins, L)) {
      out.certified = false;
      out.failing_assignment = bits;
      return out;
    }
  }
  out.certified = true;
  return out;
}

int BlockSummary::qualifying_below(int n) const {
  return static_cast<int>(std::lower_bound(qualifying.begin(), qualifying.end(), n) -
                          qualifying.begin());
}

BlockSummary block_summary(const IndependenceWindow& window, int m, const Rational& delta) {
  if (m < 1) throw std::invalid_argument("block length m must be >= 1");
  if (delta <= 0 || delta > 1)
    throw std::invalid_argument("density must lie in (0, 1], got " + to_string(delta));
  if (window.horizon < m) throw std::invalid_argument("window horizon is smaller than m");

  BlockSummary out;
  out.m = m;
  out.declared_density = delta;
  out.pair = window.pair;
  // q_m = floor(m * delta / 2), exactly.
  out.q = static_cast<int>(Integer(numerator(delta) * m / (denominator(delta) * 2)));
  out.horizon_blocks = window.horizon / m;
  out.block_counts.resize(static_cast<std::size_t>(out.horizon_blocks));
  for (int k = 0; k < out.horizon_blocks; ++k) {
    int count = window.count_below((k + 1) * m) - window.count_below(k * m);
    out.block_counts[static_cast<std::size_t>(k)] = count;
    if (count > out.q) {
      out.qualifying.push_back(k);
      std::vector<int> e;
      for (int idx : window.indices) {
        if (idx >= k * m && idx < (k + 1) * m) e.push_back(idx);
        if (static_cast<int>(e.size()) == out.q) break;
      }
      out.e_set.push_back(std::move(e));
    }
  }

  for (int n = 1; n <= out.horizon_blocks; ++n)
    if (counting_identity_slack(window, out, n) < 0)
      throw std::logic_error("counting identity violated at n = " + std::to_string(n));
  return out;
}

long counting_identity_slack(const IndependenceWindow& window, const BlockSummary& summary,
                             int n) {
  if (n < 1 || n > summary.horizon_blocks)
    throw std::invalid_argument("counting identity: n out of range");
  const long lhs = window.count_below(n * summary.m);
  const long qual = summary.qualifying_below(n);
  const long rhs = static_cast<long>(summary.m) * qual +
                   static_cast<long>(summary.q) * (n - qual);
  return rhs - lhs;
}

AnchorFamily pick_anchors(const System& sys, const BlockSummary& summary, int n) {
  if (!sys.is_shift()) throw std::invalid_argument("anchors are realized in shift systems");
  if (n < 1 || n > summary.horizon_blocks)
    throw std::invalid_argument("pick_anchors: n out of range for the window");

  AnchorFamily family;
  family.base = 1 << summary.q;
  family.factors = summary.qualifying_below(n);
  if (family.factors == 0)
    throw std::invalid_argument("pick_anchors: no qualifying blocks below n = " +
                                std::to_string(n));
  const int L = sys.depth();
  const auto& w0 = summary.pair.u0;
  const auto& w1 = summary.pair.u1;
  const int tail = static_cast<int>(std::max(w0.preword.size(), w1.preword.size()));

  Eigen::Index total = 1;
  for (int f = 0; f < family.factors; ++f) total *= family.base;
  family.anchors.reserve(static_cast<std::size_t>(total));

  for (Eigen::Index flat = 0; flat < total; ++flat) {
    SymbolPins pins(static_cast<std::size_t>(L));
    std::vector<int> positions, bits;
    for (int f = 0; f < family.factors; ++f) {
      const int digit = family.digit(flat, f) - 1;  // 0-based value of i_k - 1
      const auto& e = summary.e_set[static_cast<std::size_t>(f)];
      for (std::size_t b = 0; b < e.size(); ++b) {
        // psi: binary expansion, most significant bit at the smallest index.
        const int bit = (digit >> (e.size() - 1 - b)) & 1;
        positions.push_back(e[b]);
        bits.push_back(bit);
      }
    }
    bool consistent = true;
    for (std::size_t i = 0; i < positions.size() && consistent; ++i) {
      if (positions[i] + tail > L)
        throw std::invalid_argument("pick_anchors: pattern needs depth >= " +
                                    std::to_string(positions[i] + tail) + ", have " +
                                    std::to_string(L));
      consistent = pin_cylinder(pins, bits[i] ? w1 : w0, positions[i]);
    }
    std::optional<Point> anchor = consistent ? sys.realize(pins, L) : std::nullopt;
    if (!anchor)
      throw std::runtime_error("pick_anchors: unrealizable pattern {" +
                               pattern_string(positions, bits) + "}");
    // Re-verify the prescribed cylinder visits along the orbit.
    for (std::size_t i = 0; i < positions.size(); ++i) {
      Point shifted = sys.apply_power(*anchor, positions[i]);
      if (!in_cylinder(shifted, bits[i] ? w1 : w0))
        throw std::logic_error("anchor fails its prescribed cylinder visit");
    }
    family.anchors.push_back(std::move(*anchor));
  }

  for (std::size_t i = 0; i + 1 < family.anchors.size(); ++i)
    for (std::size_t j = i + 1; j < family.anchors.size(); ++j)
      if (family.anchors[i] == family.anchors[j])
        throw std::logic_error("anchor family is not injective");
  return family;
}

}  // namespace wmdim
