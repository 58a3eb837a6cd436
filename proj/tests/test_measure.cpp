#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "wmdim/independence.hpp"
#include "wmdim/measure.hpp"

using namespace wmdim;

TEST_SUITE_BEGIN("measure");

namespace {

SimplexPoint sp(std::initializer_list<Rational> coords) {
  SimplexPoint t(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (const auto& c : coords) t[i++] = c;
  return t;
}

SimplexPoint random_simplex_point(std::mt19937_64& rng, int k) {
  SimplexPoint t(k);
  Integer total(0);
  std::vector<Integer> raw(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    raw[static_cast<std::size_t>(i)] = Integer(rng() % 10);
    total += raw[static_cast<std::size_t>(i)];
  }
  if (total == 0) {
    raw[0] = 1;
    total = 1;
  }
  for (int i = 0; i < k; ++i) t[i] = Rational(raw[static_cast<std::size_t>(i)], total);
  return t;
}

}  // namespace

TEST_CASE("measure construction merges duplicates and validates mass") {
  System sys(SystemSpec::full_shift({'0', '1'}, 2));
  auto x = sys.point("00"), y = sys.point("01");
  RVec w(3);
  w << Rational(1, 2), Rational(1, 4), Rational(1, 4);
  auto mu = make_measure({x, y, x}, w);
  REQUIRE(mu.size() == 2);
  CHECK(mu.weights.sum() == 1);
  CHECK(mu.mass_where([&](const Point& p) { return p == x; }) == Rational(3, 4));

  RVec bad(1);
  bad << Rational(1, 2);
  CHECK_THROWS(make_measure({x}, bad));
}

TEST_CASE("pushforward: Diracs, collisions, uniform blocks") {
  SUBCASE("Dirac maps to Dirac at the image") {
    System sys(SystemSpec::full_shift({'0', '1'}, 3));
    auto mu = pushforward(sys, dirac(sys.point("010")));
    CHECK(mu == dirac(sys.point("10")));
  }
  SUBCASE("colliding preimages merge") {
    System sys(SystemSpec::circle(2, 4));
    auto mu = mix(Rational(1, 2), dirac(sys.point("1/4")), dirac(sys.point("3/4")));
    CHECK(pushforward(sys, mu) == dirac(sys.point("2/4")));
  }
  SUBCASE("uniform on depth-3 cylinders maps to uniform") {
    System sys(SystemSpec::full_shift({'0', '1'}, 3));
    std::vector<Point> pts{sys.point("000"), sys.point("001"), sys.point("010"),
                           sys.point("011")};
    auto mu = make_measure(pts, RVec::Constant(4, Rational(1, 4)));
    auto image = pushforward(sys, mu);
    REQUIRE(image.size() == 4);
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(image.weights[i] == Rational(1, 4));
    CHECK(image.support[0] == sys.point("00"));
    CHECK(image.support[3] == sys.point("11"));
  }
}

TEST_CASE("pushforward is affine and mass preserving") {
  System sys(SystemSpec::full_shift({'0', '1'}, 4));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto mu = oracle::random_measure(rng, sys.points(), 1 + static_cast<int>(rng() % 5));
    auto nu = oracle::random_measure(rng, sys.points(), 1 + static_cast<int>(rng() % 5));
    Rational lambda(1 + rng() % 9, 10);
    CHECK(pushforward(sys, mix(lambda, mu, nu)) ==
          mix(lambda, pushforward(sys, mu), pushforward(sys, nu)));
    CHECK(pushforward(sys, mu).weights.sum() == 1);
  }
}

TEST_CASE("dirac embedding") {
  System sys(SystemSpec::full_shift({'0', '1'}, 3));
  auto x = sys.point("000"), y = sys.point("111"), z = sys.point("010");

  SUBCASE("n = 1 is the Dirac regardless of weight") {
    CHECK(dirac_embedding({x}, {Integer(7)}) == dirac(x));
  }
  SUBCASE("k = (1,2) normalizes to thirds") {
    auto mu = dirac_embedding({x, y}, {Integer(1), Integer(2)});
    CHECK(mu.mass_where([&](const Point& p) { return p == x; }) == Rational(1, 3));
    CHECK(mu.mass_where([&](const Point& p) { return p == y; }) == Rational(2, 3));
  }
  SUBCASE("default powers of two give 1/7, 2/7, 4/7") {
    auto mu = dirac_embedding({x, y, z}, default_dirac_weights(3));
    CHECK(mu.mass_where([&](const Point& p) { return p == z; }) == Rational(4, 7));
  }
  SUBCASE("subset-sum collisions are rejected with the colliding sets") {
    CHECK_THROWS_WITH_AS(dirac_embedding({x, y, z}, {Integer(1), Integer(2), Integer(3)}),
                         doctest::Contains("collide"), std::invalid_argument);
  }
  SUBCASE("injectivity on distinct tuples") {
    std::mt19937_64 rng(9);
    auto k = default_dirac_weights(2);
    const auto& pts = sys.points();
    for (int trial = 0; trial < 100; ++trial) {
      Point a = pts[rng() % pts.size()], b = pts[rng() % pts.size()];
      Point c = pts[rng() % pts.size()], d = pts[rng() % pts.size()];
      if (a == b || c == d) continue;
      if (a == c && b == d) continue;
      CHECK_FALSE(dirac_embedding({a, b}, k) == dirac_embedding({c, d}, k));
    }
  }
}

TEST_CASE("theta: closed form, vertices, injectivity, multi-affinity") {
  SUBCASE("n = k = 2 closed form") {
    Rational t(1, 3), s(1, 5);
    CubePoint c{{sp({t, 1 - t}), sp({s, 1 - s})}};
    auto out = theta(c);
    REQUIRE(out.size() == 4);
    CHECK(out[0] == t * s);
    CHECK(out[1] == t * (1 - s));
    CHECK(out[2] == (1 - t) * s);
    CHECK(out[3] == (1 - t) * (1 - s));
    CHECK(is_simplex_point(out));
  }
  SUBCASE("vertices map to vertices") {
    CubePoint c{{sp({Rational(0), Rational(1)}), sp({Rational(1), Rational(0)})}};
    auto out = theta(c);
    int flat[] = {2, 1};
    CHECK(out[theta_flat_index(flat, 2)] == 1);
  }
  SUBCASE("injectivity on 100 random pairs") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
      CubePoint a{{random_simplex_point(rng, 2), random_simplex_point(rng, 2)}};
      CubePoint b{{random_simplex_point(rng, 2), random_simplex_point(rng, 2)}};
      bool same_input = true;
      for (int f = 0; f < 2 && same_input; ++f)
        same_input = a.factors[static_cast<std::size_t>(f)] ==
                     b.factors[static_cast<std::size_t>(f)];
      if (same_input) continue;
      CHECK(theta(a) != theta(b));
    }
  }
  SUBCASE("multi-affine in each coordinate, exactly") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 50; ++trial) {
      auto base = random_simplex_point(rng, 3);
      auto u = random_simplex_point(rng, 3), v = random_simplex_point(rng, 3);
      Rational lambda(1 + rng() % 9, 10);
      for (int slot = 0; slot < 2; ++slot) {
        CubePoint mixed{{base, base}}, at_u{{base, base}}, at_v{{base, base}};
        mixed.factors[static_cast<std::size_t>(slot)] = lambda * u + (1 - lambda) * v;
        at_u.factors[static_cast<std::size_t>(slot)] = u;
        at_v.factors[static_cast<std::size_t>(slot)] = v;
        SimplexPoint expect = lambda * theta(at_u) + (1 - lambda) * theta(at_v);
        CHECK(theta(mixed) == expect);
      }
    }
  }
}

TEST_CASE("block product embedding") {
  System sys(SystemSpec::full_shift({'0', '1'}, 6));

  SUBCASE("point masses concatenate") {
    auto delta = block_product_embedding(
        sys, {sp({Rational(1), Rational(0)}), sp({Rational(1), Rational(0)})}, 1, 2);
    CHECK(delta == dirac(sys.point("00")));
  }
  SUBCASE("products of uniforms are uniform") {
    auto half = sp({Rational(1, 2), Rational(1, 2)});
    auto mu = block_product_embedding(sys, {half, half}, 1, 2);
    REQUIRE(mu.size() == 4);
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(mu.weights[i] == Rational(1, 4));
  }
  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_WITH_AS(block_product_embedding(sys, {sp({Rational(1), Rational(0)})}, 2, 1),
                         doctest::Contains("expected |A|^m"), std::invalid_argument);
  }
  SUBCASE("shift equivariance: f_m after block shift = m-fold pushforward") {
    std::mt19937_64 rng(21);
    const int m = 2, blocks = 3;
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<SimplexPoint> a;
      for (int j = 0; j < blocks; ++j) a.push_back(random_simplex_point(rng, 4));
      std::vector<SimplexPoint> shifted(a.begin() + 1, a.end());
      auto lhs = block_product_embedding(sys, shifted, m, blocks - 1);
      auto rhs = pushforward_power(sys, block_product_embedding(sys, a, m, blocks), m);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("h family enumerates uniform vectors on nonempty subsets") {
  auto h1 = h_family(1);
  REQUIRE(h1.size() == 3);
  CHECK(h1[0] == sp({Rational(1), Rational(0)}));
  CHECK(h1[1] == sp({Rational(0), Rational(1)}));
  CHECK(h1[2] == sp({Rational(1, 2), Rational(1, 2)}));

  CHECK(h_family(2).size() == 15);
  CHECK(h_family(0).size() == 1);
  for (const auto& t : h_family(2)) CHECK(is_simplex_point(t));
}

TEST_CASE("xi: vertices, symmetry, and the face decomposition identity") {
  System sys(SystemSpec::full_shift({'0', '1'}, 6));
  auto pair = make_ie_pair(sys, "0", "1");
  auto window = naturals_window(pair, 6);
  auto summary = block_summary(window, 2, Rational(1));
  auto anchors = pick_anchors(sys, summary, 2);
  REQUIRE(anchors.base == 2);
  REQUIRE(anchors.factors == 2);

  SUBCASE("vertex cube points give Dirac at the matching anchor") {
    CubePoint c{{sp({Rational(0), Rational(1)}), sp({Rational(1), Rational(0)})}};
    int flat[] = {2, 1};
    auto mu = xi(c, anchors);
    CHECK(mu == dirac(anchors.anchors[static_cast<std::size_t>(theta_flat_index(flat, 2))]));
  }

  SUBCASE("center factor makes the measure symmetric under that index") {
    CubePoint c{{sp({Rational(1, 2), Rational(1, 2)}), sp({Rational(1), Rational(0)})}};
    auto mu = xi(c, anchors);
    REQUIRE(mu.size() == 2);
    CHECK(mu.weights[0] == mu.weights[1]);
  }

  SUBCASE("mass decomposition over a face and its opposite is exact") {
    std::mt19937_64 rng(27);
    for (int trial = 0; trial < 50; ++trial) {
      CubePoint t{{random_simplex_point(rng, 2), random_simplex_point(rng, 2)}};
      auto mu = xi(t, anchors);
      for (int slot = 0; slot < 2; ++slot) {
        for (int vertex = 1; vertex <= 2; ++vertex) {
          auto on_face = [&](const Point& p) {
            return anchors.digit(anchors.index_of(p), slot) == vertex;
          };
          auto off_face = [&](const Point& p) { return !on_face(p); };
          Rational lambda = mu.mass_where(on_face);
          CHECK(lambda + mu.mass_where(off_face) == 1);
          CHECK(lambda == t.factors[static_cast<std::size_t>(slot)][vertex - 1]);
        }
      }
    }
  }

  SUBCASE("index mismatch is rejected") {
    CubePoint wrong{{sp({Rational(1), Rational(0)})}};
    CHECK_THROWS(xi(wrong, anchors));
  }
}

TEST_SUITE_END();
