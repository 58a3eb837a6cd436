#include "wmdim/system.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace wmdim {

namespace {

constexpr std::uint64_t kMaxPointFamily = std::uint64_t(1) << 21;

}  // namespace

SystemSpec SystemSpec::full_shift(std::vector<char> alphabet, int depth) {
  SystemSpec s;
  s.kind = SystemKind::FullShift;
  s.alphabet = std::move(alphabet);
  s.depth = depth;
  return s;
}

SystemSpec SystemSpec::sft(std::vector<char> alphabet, std::vector<std::string> forbidden,
                           int depth) {
  SystemSpec s;
  s.kind = SystemKind::Sft;
  s.alphabet = std::move(alphabet);
  s.forbidden = std::move(forbidden);
  s.depth = depth;
  return s;
}

SystemSpec SystemSpec::circle(std::int64_t a, std::int64_t q) {
  SystemSpec s;
  s.kind = SystemKind::Circle;
  s.multiplier = a;
  s.grid = q;
  return s;
}

System::System(SystemSpec spec) : spec_(std::move(spec)) {
  validate();
  if (is_shift()) {
    lipschitz_ = Rational(2);
    // Diameter: 2^(-i) at the first index where the language branches.
    auto first = realize({}, spec_.depth);
    if (!first) throw std::invalid_argument("empty system: no admissible word at depth " +
                                            std::to_string(spec_.depth));
    diameter_ = Rational(0);
    for (int i = 0; i < spec_.depth; ++i) {
      SymbolPins pins(spec_.depth);
      for (int j = 0; j < i; ++j) pins[j] = first->word[j];
      bool branches = false;
      for (int c = 0; c < alphabet_size() && !branches; ++c) {
        if (c == first->word[i]) continue;
        pins[i] = static_cast<std::uint8_t>(c);
        branches = realize(pins, spec_.depth).has_value();
      }
      if (branches) {
        diameter_ = pow2(-i);
        break;
      }
    }
  } else {
    lipschitz_ = Rational(spec_.multiplier);
    diameter_ = Rational(spec_.grid / 2, spec_.grid);
  }
}

void System::validate() const {
  if (is_shift()) {
    if (spec_.alphabet.size() < 2)
      throw std::invalid_argument("shift alphabet must have at least 2 symbols");
    if (spec_.depth < 1) throw std::invalid_argument("shift depth must be >= 1");
    std::vector<char> sorted = spec_.alphabet;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("shift alphabet symbols must be distinct");
    for (const auto& f : spec_.forbidden) {
      if (f.empty()) throw std::invalid_argument("forbidden word must be nonempty");
      for (char c : f)
        if (std::find(spec_.alphabet.begin(), spec_.alphabet.end(), c) == spec_.alphabet.end())
          throw std::invalid_argument("forbidden word '" + f + "' uses a symbol outside the alphabet");
    }
    if (spec_.kind == SystemKind::FullShift && !spec_.forbidden.empty())
      throw std::invalid_argument("full shift cannot carry forbidden words");
  } else {
    if (spec_.grid < 2) throw std::invalid_argument("circle grid Q must be >= 2");
    if (spec_.multiplier < 1) throw std::invalid_argument("circle multiplier a must be >= 1");
  }
}

int System::symbol_index(char c) const {
  auto it = std::find(spec_.alphabet.begin(), spec_.alphabet.end(), c);
  if (it == spec_.alphabet.end())
    throw std::invalid_argument(std::string("symbol '") + c + "' is not in the alphabet");
  return static_cast<int>(it - spec_.alphabet.begin());
}

bool System::admissible(const std::vector<std::uint8_t>& word) const {
  if (spec_.kind != SystemKind::Sft) return true;
  for (const auto& f : spec_.forbidden) {
    if (f.size() > word.size()) continue;
    for (std::size_t at = 0; at + f.size() <= word.size(); ++at) {
      bool match = true;
      for (std::size_t i = 0; i < f.size() && match; ++i)
        match = spec_.alphabet[word[at + i]] == f[i];
      if (match) return false;
    }
  }
  return true;
}

namespace {

// Trailing-window machinery for SFT word construction. The window keeps the
// last (max forbidden length - 1) symbols; appending a symbol is legal iff
// no forbidden word is a suffix of window+symbol.
struct WindowLanguage {
  const SystemSpec& spec;
  std::size_t window;

  explicit WindowLanguage(const SystemSpec& s) : spec(s), window(0) {
    for (const auto& f : s.forbidden) window = std::max(window, f.size());
    window = window > 0 ? window - 1 : 0;
  }

  bool step_ok(const std::string& state, std::uint8_t c) const {
    if (spec.kind != SystemKind::Sft) return true;
    std::string ext = state;
    ext.push_back(static_cast<char>(c));
    for (const auto& f : spec.forbidden) {
      if (f.size() > ext.size()) continue;
      bool match = true;
      for (std::size_t i = 0; i < f.size() && match; ++i)
        match = spec.alphabet[static_cast<std::uint8_t>(ext[ext.size() - f.size() + i])] == f[i];
      if (match) return false;
    }
    return true;
  }

  std::string next_state(const std::string& state, std::uint8_t c) const {
    std::string s = state;
    s.push_back(static_cast<char>(c));
    if (s.size() > window) s.erase(0, s.size() - window);
    return s;
  }
};

}  // namespace

std::optional<Point> System::realize(const SymbolPins& pins, int length) const {
  if (!is_shift()) throw std::logic_error("realize applies to shift systems only");
  if (length < 1) throw std::invalid_argument("realize: length must be >= 1");
  if (static_cast<int>(pins.size()) > length)
    throw std::invalid_argument("realize: pins extend past the requested length");

  WindowLanguage lang(spec_);
  std::map<std::pair<int, std::string>, bool> dead;  // (pos,state) -> no completion
  std::vector<std::uint8_t> word;
  word.reserve(length);

  auto search = [&](auto&& self, int pos, const std::string& state) -> bool {
    if (pos == length) return true;
    auto key = std::make_pair(pos, state);
    if (auto it = dead.find(key); it != dead.end()) return false;
    const bool pinned = pos < static_cast<int>(pins.size()) && pins[pos].has_value();
    for (int c = 0; c < alphabet_size(); ++c) {
      if (pinned && *pins[pos] != c) continue;
      auto sym = static_cast<std::uint8_t>(c);
      if (!lang.step_ok(state, sym)) continue;
      word.push_back(sym);
      if (self(self, pos + 1, lang.next_state(state, sym))) return true;
      word.pop_back();
    }
    dead.emplace(key, true);
    return false;
  };

  if (!search(search, 0, std::string())) return std::nullopt;
  return Point{std::move(word), -1};
}

const std::vector<Point>& System::points() const {
  if (!points_.empty()) return points_;
  if (is_shift()) {
    if (count_words(spec_.depth) > kMaxPointFamily)
      throw std::invalid_argument("point family at depth " + std::to_string(spec_.depth) +
                                  " is too large to enumerate; reduce the depth");
    WindowLanguage lang(spec_);
    std::vector<std::uint8_t> word;
    auto dfs = [&](auto&& self, const std::string& state) -> void {
      if (static_cast<int>(word.size()) == spec_.depth) {
        points_.push_back(Point{word, -1});
        return;
      }
      for (int c = 0; c < alphabet_size(); ++c) {
        auto sym = static_cast<std::uint8_t>(c);
        if (!lang.step_ok(state, sym)) continue;
        word.push_back(sym);
        self(self, lang.next_state(state, sym));
        word.pop_back();
      }
    };
    dfs(dfs, std::string());
    if (points_.empty())
      throw std::invalid_argument("empty system: no admissible word at depth " +
                                  std::to_string(spec_.depth));
  } else {
    points_.reserve(spec_.grid);
    for (std::int64_t j = 0; j < spec_.grid; ++j) points_.push_back(Point{{}, j});
  }
  return points_;
}

std::uint64_t System::count_words(int length) const {
  WindowLanguage lang(spec_);
  std::map<std::string, std::uint64_t> counts{{std::string(), 1}};
  for (int pos = 0; pos < length; ++pos) {
    std::map<std::string, std::uint64_t> next;
    for (const auto& [state, n] : counts) {
      for (int c = 0; c < alphabet_size(); ++c) {
        auto sym = static_cast<std::uint8_t>(c);
        if (!lang.step_ok(state, sym)) continue;
        auto& slot = next[lang.next_state(state, sym)];
        slot = std::min(slot + n, std::uint64_t(1) << 62);
      }
    }
    counts = std::move(next);
  }
  std::uint64_t total = 0;
  for (const auto& [state, n] : counts) total = std::min(total + n, std::uint64_t(1) << 62);
  return total;
}

std::string System::label(const Point& p) const {
  if (p.is_circle()) return std::to_string(p.idx) + "/" + std::to_string(spec_.grid);
  std::string s;
  s.reserve(p.word.size());
  for (auto c : p.word) s.push_back(spec_.alphabet.at(c));
  return s;
}

Point System::point(const std::string& label) const {
  if (is_shift()) {
    Point p;
    p.word.reserve(label.size());
    for (char c : label) p.word.push_back(static_cast<std::uint8_t>(symbol_index(c)));
    if (p.word.empty()) throw std::invalid_argument("empty shift word");
    if (!admissible(p.word))
      throw std::invalid_argument("word '" + label + "' contains a forbidden factor");
    return p;
  }
  std::string digits = label.substr(0, label.find('/'));
  std::int64_t j = std::stoll(digits);
  if (j < 0 || j >= spec_.grid)
    throw std::invalid_argument("circle index '" + label + "' outside grid of size " +
                                std::to_string(spec_.grid));
  return Point{{}, j};
}

Point System::apply(const Point& p) const {
  if (p.is_circle()) {
    if (!is_shift()) return Point{{}, (p.idx * spec_.multiplier) % spec_.grid};
    throw std::invalid_argument("circle point fed to a shift system");
  }
  if (p.word.size() < 2)
    throw std::invalid_argument("depth exhausted: cannot apply the shift to a word of length " +
                                std::to_string(p.word.size()));
  return Point{{p.word.begin() + 1, p.word.end()}, -1};
}

Point System::apply_power(Point p, int k) const {
  for (int i = 0; i < k; ++i) p = apply(p);
  return p;
}

Rational System::dist(const Point& x, const Point& y) const {
  if (x.is_circle() != y.is_circle())
    throw std::invalid_argument("points from different space kinds");
  if (x.is_circle()) {
    std::int64_t diff = std::abs(x.idx - y.idx);
    diff = std::min(diff, spec_.grid - diff);
    return Rational(diff, spec_.grid);
  }
  if (x.word.size() != y.word.size())
    throw std::invalid_argument("shift points at different truncation depths (" +
                                std::to_string(x.word.size()) + " vs " +
                                std::to_string(y.word.size()) + ")");
  auto [ix, iy] = std::mismatch(x.word.begin(), x.word.end(), y.word.begin());
  if (ix == x.word.end()) return Rational(0);
  return pow2(-static_cast<long>(ix - x.word.begin()));
}

Rational System::bowen(const Point& x, const Point& y, int n) const {
  if (n < 1) throw std::invalid_argument("bowen: n must be >= 1");
  if (!x.is_circle()) {
    const int len = static_cast<int>(x.word.size());
    if (n > len)
      throw std::invalid_argument("depth exhausted: d_" + std::to_string(n) +
                                  " requires depth >= " + std::to_string(n) + ", have " +
                                  std::to_string(len));
  }
  Point px = x, py = y;
  Rational best = dist(px, py);
  for (int i = 1; i < n; ++i) {
    px = apply(px);
    py = apply(py);
    best = std::max(best, dist(px, py));
  }
  return best;
}

IePair make_ie_pair(const System& sys, const std::string& w0, const std::string& w1) {
  if (!sys.is_shift())
    throw std::invalid_argument("IE-pairs are represented as cylinders of shift systems");
  Point p0 = sys.point(w0), p1 = sys.point(w1);
  const auto L = sys.depth();
  for (const auto* w : {&p0, &p1}) {
    if (static_cast<int>(w->word.size()) > L)
      throw std::invalid_argument("cylinder preword longer than the truncation depth");
    SymbolPins pins(w->word.size());
    for (std::size_t i = 0; i < w->word.size(); ++i) pins[i] = w->word[i];
    if (!sys.realize(pins, L))
      throw std::invalid_argument("cylinder [" + sys.label(*w) + "] is empty in this system");
  }
  const auto common = std::min(p0.word.size(), p1.word.size());
  std::size_t j = 0;
  while (j < common && p0.word[j] == p1.word[j]) ++j;
  if (j == common)
    throw std::invalid_argument("cylinders [" + w0 + "] and [" + w1 +
                                "] nest; their closures intersect");
  return IePair{Cylinder{p0.word}, Cylinder{p1.word}, pow2(-static_cast<long>(j))};
}

bool in_cylinder(const Point& p, const Cylinder& c) {
  if (p.word.size() < c.preword.size()) return false;
  return std::equal(c.preword.begin(), c.preword.end(), p.word.begin());
}

Rational gamma_closed_form(const System& sys, const IePair& pair, int m) {
  if (m < 1) throw std::invalid_argument("gamma: m must be >= 1");
  return rational_pow(sys.lipschitz(), -m) * pair.separation / 2;
}

Rational gamma_exact(const System& sys, const IePair& pair, int m) {
  if (m < 1) throw std::invalid_argument("gamma: m must be >= 1");
  const auto& pts = sys.points();
  if (pts.size() > 4096)
    throw std::invalid_argument("gamma_exact: point family too large for pair enumeration");
  Rational best = sys.diameter();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Point x = pts[i], y = pts[j];
      bool bad = false;
      for (int k = 0; k < m && !bad; ++k) {
        if (k > 0) {
          x = sys.apply(x);
          y = sys.apply(y);
        }
        bad = sys.dist(x, y) >= pair.separation;
      }
      if (bad) best = std::min(best, sys.dist(pts[i], pts[j]));
    }
  }
  return best;
}

MetricSpace build_space(const System& sys) {
  const auto& pts = sys.points();
  const auto n = static_cast<Eigen::Index>(pts.size());
  if (n > 1024)
    throw std::invalid_argument("build_space: " + std::to_string(pts.size()) +
                                " points exceed the exact-table limit; use distance oracles");
  std::vector<std::string> labels(pts.size());
  RMat dist(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    labels[i] = sys.label(pts[i]);
    dist(i, i) = Rational(0);
    for (Eigen::Index j = 0; j < i; ++j) {
      dist(i, j) = dist(j, i) = sys.dist(pts[i], pts[j]);
    }
  }
  return make_metric_space(std::move(labels), std::move(dist));
}

}  // namespace wmdim
