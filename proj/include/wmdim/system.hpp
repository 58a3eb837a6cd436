// Finitely truncated dynamical systems: full shifts, shifts of finite type
// and the times-a circle map on a rational grid, together with their exact
// ground metrics, Bowen dynamical metrics and Lipschitz data.
//
// A shift point of truncation depth L is a word of length L over the
// alphabet and supports exactly L-1 map applications; operations fail
// loudly on depth exhaustion rather than padding. The shift metric is
// d(x,y) = 2^(-min{i : x_i != y_i}), which makes K = 2 exact and all
// distances dyadic. Circle points are j/Q with the arc-length metric; the
// map j -> a*j mod Q is exact on the grid.

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wmdim/metric_space.hpp"
#include "wmdim/rational.hpp"

namespace wmdim {

enum class SystemKind { FullShift, Sft, Circle };

struct SystemSpec {
  SystemKind kind = SystemKind::FullShift;
  std::vector<char> alphabet;          // shift symbols (single characters)
  std::vector<std::string> forbidden;  // SFT forbidden words
  int depth = 0;                       // truncation depth L for shifts
  std::int64_t multiplier = 0;         // circle: the "times a" factor
  std::int64_t grid = 0;               // circle: grid size Q

  static SystemSpec full_shift(std::vector<char> alphabet, int depth);
  static SystemSpec sft(std::vector<char> alphabet, std::vector<std::string> forbidden, int depth);
  static SystemSpec circle(std::int64_t a, std::int64_t q);
};

/// A represented point: a shift word (symbol indices, length = current
/// depth) or a circle grid index.
struct Point {
  std::vector<std::uint8_t> word;  // shift word; empty for circle points
  std::int64_t idx = -1;           // circle index, -1 for shift points

  bool is_circle() const { return idx >= 0; }
  auto operator<=>(const Point&) const = default;
};

/// Symbol pins for word realization: pinned[i], when set, fixes symbol i.
using SymbolPins = std::vector<std::optional<std::uint8_t>>;

class System {
 public:
  explicit System(SystemSpec spec);

  const SystemSpec& spec() const { return spec_; }
  bool is_shift() const { return spec_.kind != SystemKind::Circle; }
  int depth() const { return spec_.depth; }
  int alphabet_size() const { return static_cast<int>(spec_.alphabet.size()); }

  /// Certified Lipschitz constant of the truncated map (2 for shifts with
  /// the dyadic metric, |a| for the circle).
  const Rational& lipschitz() const { return lipschitz_; }

  const Rational& diameter() const { return diameter_; }

  /// All represented full-depth points in lexicographic order. Enumerated
  /// lazily; refuses families larger than 2^21 points.
  const std::vector<Point>& points() const;

  std::string label(const Point& p) const;
  Point point(const std::string& label) const;

  /// One application of the map. Shift words of length 1 are exhausted.
  Point apply(const Point& p) const;
  Point apply_power(Point p, int k) const;

  /// Exact ground metric. Shift points must share a truncation depth.
  Rational dist(const Point& x, const Point& y) const;

  /// Bowen metric d_n(x,y) = max_{0<=i<n} d(T^i x, T^i y), evaluated over
  /// the represented orbit; throws naming the required depth when the
  /// truncation cannot support n steps.
  Rational bowen(const Point& x, const Point& y, int n) const;

  /// True iff the word contains no forbidden factor.
  bool admissible(const std::vector<std::uint8_t>& word) const;

  /// Lexicographically smallest admissible word of the given length
  /// honouring the pins, or nullopt when no such word exists.
  std::optional<Point> realize(const SymbolPins& pins, int length) const;

  int symbol_index(char c) const;

 private:
  void validate() const;
  std::uint64_t count_words(int length) const;

  SystemSpec spec_;
  Rational lipschitz_;
  Rational diameter_;
  mutable std::vector<Point> points_;  // lazily filled
};

/// Cylinder set [w]: all points whose word starts with the preword.
struct Cylinder {
  std::vector<std::uint8_t> preword;
};

/// An IE-pair at the truncation: two cylinders with disjoint closures and
/// strictly positive separation d(U0, U1).
struct IePair {
  Cylinder u0, u1;
  Rational separation;
};

/// Builds an IE-pair from prewords, validating nonemptiness within the
/// system's language and strict separation.
IePair make_ie_pair(const System& sys, const std::string& w0, const std::string& w1);

bool in_cylinder(const Point& p, const Cylinder& c);

/// Closed-form gamma_m = K^(-m) * d(U0,U1) / 2 for a K-Lipschitz system.
Rational gamma_closed_form(const System& sys, const IePair& pair, int m);

/// Largest table-representable gamma such that d(x,y) < gamma implies
/// d(T^k x, T^k y) < d(U0,U1) for all 0 <= k < m, over all represented
/// pairs. Always >= the closed form.
Rational gamma_exact(const System& sys, const IePair& pair, int m);

/// Materializes the full-depth point family as a metric space with an
/// exact distance table. Guarded against large families.
MetricSpace build_space(const System& sys);

}  // namespace wmdim
