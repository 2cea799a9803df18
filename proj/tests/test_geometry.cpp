#include <catch2/catch_amalgamated.hpp>

#include "rrfcov/geometry.hpp"

using namespace rrfcov;

namespace {

constexpr double kTight = 1e-12;
constexpr double kLoose = 1e-9;

ConvexPolygon unit_square() { return ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

std::mt19937_64 rng(std::uint64_t s) { return std::mt19937_64(s); }

}  // namespace

TEST_CASE("normalize_angle maps into (-pi, pi]") {
  CHECK(normalize_angle(0.0) == 0.0);
  CHECK(normalize_angle(kPi) == Catch::Approx(kPi));
  CHECK(normalize_angle(-kPi) == Catch::Approx(kPi));
  CHECK(normalize_angle(3.0 * kPi) == Catch::Approx(kPi));
  CHECK(normalize_angle(kTwoPi + 0.25) == Catch::Approx(0.25));
  CHECK(normalize_angle(-7.5 * kPi) == Catch::Approx(0.5 * kPi));
  for (double a = -20.0; a <= 20.0; a += 0.37) {
    double n = normalize_angle(a);
    CHECK(n > -kPi);
    CHECK(n <= kPi);
    CHECK(std::fabs(std::sin(n) - std::sin(a)) < kLoose);
    CHECK(std::fabs(std::cos(n) - std::cos(a)) < kLoose);
  }
}

TEST_CASE("convex polygon construction and queries") {
  auto sq = unit_square();
  CHECK(sq.area() == Catch::Approx(1.0));
  CHECK(polygon_area(sq) == Catch::Approx(1.0));
  CHECK(sq.centroid().x == Catch::Approx(0.5));
  CHECK(sq.centroid().y == Catch::Approx(0.5));
  CHECK(sq.contains({0.5, 0.5}));
  CHECK(sq.contains({0.0, 0.0}));  // boundary is inside
  CHECK(sq.contains({1.0, 0.5}));
  CHECK_FALSE(sq.contains({1.0 + 1e-6, 0.5}));
  CHECK(sq.signed_interior_distance({0.5, 0.5}) == Catch::Approx(0.5));
  CHECK(sq.signed_interior_distance({-0.25, 0.5}) == Catch::Approx(-0.25));

  SECTION("clockwise input is rejected") {
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), std::invalid_argument);
  }
  SECTION("non-convex input is rejected") {
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {2, 0}, {1, 0.2}, {2, 2}, {0, 2}}),
                    std::invalid_argument);
  }
  SECTION("degenerate input is rejected") {
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 1}, {2, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}}), std::invalid_argument);
  }
  SECTION("make cleans duplicates and collinear points") {
    auto p = ConvexPolygon::make({{0, 0}, {0.5, 0}, {1, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0.5}});
    REQUIRE(p);
    CHECK(p->size() == 4);
    CHECK(p->area() == Catch::Approx(1.0));
  }
  SECTION("make returns nullopt on degenerate rings") {
    CHECK_FALSE(ConvexPolygon::make({{0, 0}, {1, 0}, {2, 0}}));
    CHECK_FALSE(ConvexPolygon::make({{0, 0}, {0, 0}, {0, 0}, {0, 0}}));
  }
  SECTION("bounding box") {
    ConvexPolygon tri({{-1, 2}, {4, 3}, {0, 7}});
    const Aabb& bb = tri.bounding_box();
    CHECK(bb.xmin == -1.0);
    CHECK(bb.xmax == 4.0);
    CHECK(bb.ymin == 2.0);
    CHECK(bb.ymax == 7.0);
  }
}

TEST_CASE("heron_area") {
  CHECK(heron_area(3, 4, 5) == Catch::Approx(6.0));
  CHECK(heron_area(1, 1, std::sqrt(2.0)) == Catch::Approx(0.5));
  CHECK(heron_area(1, 2, 3) == 0.0);       // degenerate, collinear
  CHECK(heron_area(1, 1, 5) == 0.0);       // violates triangle inequality
  CHECK_THROWS_AS(heron_area(-1, 2, 2), std::invalid_argument);
}

TEST_CASE("clip_halfplane") {
  auto sq = unit_square();
  SECTION("x <= 0.5 keeps half the square") {
    auto half = clip_halfplane(sq, {1, 0}, 0.5);
    REQUIRE(half);
    CHECK(half->area() == Catch::Approx(0.5));
    for (const Vec2& v : half->vertices()) CHECK(v.x <= 0.5 + kTight);
  }
  SECTION("non-cutting plane returns the polygon unchanged") {
    auto whole = clip_halfplane(sq, {1, 0}, 5.0);
    REQUIRE(whole);
    CHECK(whole->area() == Catch::Approx(1.0));
  }
  SECTION("fully outside returns nullopt") {
    CHECK_FALSE(clip_halfplane(sq, {1, 0}, -0.5));
  }
  SECTION("diagonal cut") {
    auto tri = clip_halfplane(sq, {1, 1}, 1.0);  // x + y <= 1
    REQUIRE(tri);
    CHECK(tri->area() == Catch::Approx(0.5));
  }
  SECTION("zero normal throws") {
    CHECK_THROWS_AS(clip_halfplane(sq, {0, 0}, 1.0), std::invalid_argument);
  }
}

TEST_CASE("circle_polygon_area analytic cases") {
  auto sq = unit_square();
  SECTION("quarter disk") {
    CHECK(circle_polygon_area({0, 0}, 1.0, sq) == Catch::Approx(kPi / 4).epsilon(1e-12));
  }
  SECTION("disk strictly inside the polygon") {
    ConvexPolygon big({{-10, -10}, {10, -10}, {10, 10}, {-10, 10}});
    CHECK(circle_polygon_area({1, 2}, 3.0, big) == Catch::Approx(9.0 * kPi).epsilon(1e-12));
  }
  SECTION("polygon strictly inside the disk") {
    CHECK(circle_polygon_area({0.5, 0.5}, 10.0, sq) == Catch::Approx(1.0).epsilon(1e-12));
  }
  SECTION("disjoint") {
    CHECK(circle_polygon_area({100, 100}, 1.0, sq) == 0.0);
  }
  SECTION("half disk: circle centered on an edge") {
    ConvexPolygon rect({{0, 0}, {10, 0}, {10, 10}, {0, 10}});
    CHECK(circle_polygon_area({5, 0}, 2.0, rect) == Catch::Approx(2.0 * kPi).epsilon(1e-12));
  }
  SECTION("invalid radius throws") {
    CHECK_THROWS_AS(circle_polygon_area({0, 0}, 0.0, sq), std::invalid_argument);
    CHECK_THROWS_AS(circle_polygon_area({0, 0}, -1.0, sq), std::invalid_argument);
  }
}

TEST_CASE("circle_polygon_area agrees with Monte-Carlo on random instances") {
  auto g = rng(101);
  for (int k = 0; k < 12; ++k) {
    double w = uniform(g, 2.0, 30.0), h = uniform(g, 2.0, 30.0);
    ConvexPolygon rect({{0, 0}, {w, 0}, {w, h}, {0, h}});
    Vec2 c{uniform(g, -5.0, w + 5.0), uniform(g, -5.0, h + 5.0)};
    double r = uniform(g, 1.0, 20.0);
    double exact = circle_polygon_area(c, r, rect);
    auto est = mc_area_oracle(
        [&](Vec2 p) { return rect.contains(p) && distance(p, c) <= r; }, rect.bounding_box(),
        200000, 9000 + static_cast<std::uint64_t>(k));
    CHECK(std::fabs(exact - est.area) <= std::max(4.0 * est.std_error, 1e-3 * rect.area()));
  }
}

TEST_CASE("sector construction") {
  CHECK_THROWS_AS(Sector({0, 0}, 0.0, kPi, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Sector({0, 0}, 0.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Sector({0, 0}, 0.0, kTwoPi + 0.1, 1.0), std::invalid_argument);
  Sector s({0, 0}, 3.0 * kPi, kPi / 2, 1.0);
  CHECK(s.orientation == Catch::Approx(kPi));  // normalized
  CHECK(Sector({0, 0}, 0.0, kTwoPi, 1.0).full_disk());
  CHECK_FALSE(Sector({0, 0}, 0.0, kPi, 1.0).full_disk());
}

TEST_CASE("sector membership") {
  Sector s({0, 0}, 0.0, kPi / 2, 100.0);
  CHECK(s.contains({50, 0}));
  CHECK_FALSE(s.contains({0, 50}));    // outside the angular wedge
  CHECK_FALSE(s.contains({80, 80}));   // out of range
  CHECK(s.contains({0, 0}));           // apex covered
  CHECK(s.contains({100, 0}));         // range boundary closed
  CHECK(s.contains({30.0, 29.999}));
  CHECK_FALSE(s.contains({29.999, 30.01}));
  Sector full({5, 5}, 1.234, kTwoPi, 2.0);
  CHECK(full.contains({6.9, 5}));
  CHECK(full.contains({3.1, 5}));
  CHECK_FALSE(full.contains({7.1, 5}));
}

TEST_CASE("sector_polygon_area frozen instances") {
  SECTION("sector fully inside the polygon covers (theta/2) r^2") {
    ConvexPolygon cell({{0, -20}, {20, -20}, {20, 20}, {0, 20}});
    Sector s({0, 0}, 0.0, kPi / 2, 10.0);
    CHECK(sector_polygon_area(s, cell) == Catch::Approx(25.0 * kPi).epsilon(1e-12));
  }
  SECTION("wedge truncated by x <= 5 gives the 25 triangle") {
    ConvexPolygon cell({{0, -20}, {5, -20}, {5, 20}, {0, 20}});
    Sector s({0, 0}, 0.0, kPi / 2, 10.0);
    CHECK(sector_polygon_area(s, cell) == Catch::Approx(25.0).margin(1e-9));
  }
  SECTION("full view angle delegates to the disk") {
    ConvexPolygon sq = unit_square();
    Sector s({0, 0}, 0.7, kTwoPi, 1.0);
    CHECK(sector_polygon_area(s, sq) == Catch::Approx(kPi / 4).epsilon(1e-12));
  }
  SECTION("disjoint") {
    ConvexPolygon sq = unit_square();
    Sector s({50, 50}, 0.0, kPi / 3, 2.0);
    CHECK(sector_polygon_area(s, sq) == 0.0);
  }
}

TEST_CASE("sector_polygon_area properties on random instances") {
  auto g = rng(424242);
  for (int k = 0; k < 40; ++k) {
    double w = uniform(g, 5.0, 40.0), h = uniform(g, 5.0, 40.0);
    ConvexPolygon rect({{0, 0}, {w, 0}, {w, h}, {0, h}});
    Vec2 apex{uniform(g, -10.0, w + 10.0), uniform(g, -10.0, h + 10.0)};
    double theta = uniform(g, -kPi, kPi);
    double view = uniform(g, 0.1, kTwoPi);
    double r = uniform(g, 0.5, 30.0);
    Sector s(apex, theta, view, r);
    double a = sector_polygon_area(s, rect);

    INFO("instance " << k);
    CHECK(a >= -1e-9);
    CHECK(a <= rect.area() + 1e-9);
    CHECK(a <= 0.5 * view * r * r + 1e-9);

    // growing the radius or the view angle can only grow the area
    double bigger_r = sector_polygon_area(Sector(apex, theta, view, r * 1.5), rect);
    CHECK(bigger_r >= a - 1e-9);
    double wider = sector_polygon_area(
        Sector(apex, theta, std::min(view * 1.5, kTwoPi), r), rect);
    CHECK(wider >= a - 1e-9);
  }
}

TEST_CASE("sector_polygon_area is invariant under rigid motion") {
  ConvexPolygon cell({{2, 1}, {9, 2}, {8, 8}, {1, 6}});
  Sector s({4, 3}, 0.6, 1.9, 4.0);
  double base = sector_polygon_area(s, cell);
  auto g = rng(55);
  for (int k = 0; k < 10; ++k) {
    double phi = uniform(g, -kPi, kPi);
    Vec2 t{uniform(g, -20.0, 20.0), uniform(g, -20.0, 20.0)};
    double c = std::cos(phi), sn = std::sin(phi);
    auto move = [&](Vec2 p) { return Vec2{c * p.x - sn * p.y + t.x, sn * p.x + c * p.y + t.y}; };
    std::vector<Vec2> moved;
    for (const Vec2& v : cell.vertices()) moved.push_back(move(v));
    ConvexPolygon mcell(moved);
    Sector ms(move(s.apex), s.orientation + phi, s.view_angle, s.radius);
    CHECK(sector_polygon_area(ms, mcell) == Catch::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("reflex sectors split correctly across the pi boundary") {
  ConvexPolygon rect({{-20, -20}, {20, -20}, {20, 20}, {-20, 20}});
  // a 270-degree sector fully inside: area (3/4) pi r^2
  Sector s({0, 0}, 0.3, 1.5 * kPi, 5.0);
  CHECK(sector_polygon_area(s, rect) == Catch::Approx(0.75 * kPi * 25.0).epsilon(1e-12));
  // continuity at the split threshold
  double below = sector_polygon_area(Sector({0, 0}, 0.3, kPi - 1e-9, 5.0), rect);
  double above = sector_polygon_area(Sector({0, 0}, 0.3, kPi + 1e-9, 5.0), rect);
  CHECK(std::fabs(above - below) < 1e-6);
}

TEST_CASE("mc_area_oracle") {
  Aabb box{0, 0, 2, 2};
  SECTION("exact predicate of known area") {
    auto est = mc_area_oracle([](Vec2 p) { return p.x <= 1.0; }, box, 400000, 7);
    CHECK(std::fabs(est.area - 2.0) <= 4.0 * est.std_error);
    CHECK(est.samples == 400000);
    CHECK(est.hits > 0);
  }
  SECTION("deterministic for a fixed seed") {
    auto a = mc_area_oracle([](Vec2 p) { return p.x + p.y <= 1.5; }, box, 50000, 99);
    auto b = mc_area_oracle([](Vec2 p) { return p.x + p.y <= 1.5; }, box, 50000, 99);
    CHECK(a.area == b.area);
    CHECK(a.hits == b.hits);
  }
  SECTION("invalid input") {
    CHECK_THROWS_AS(mc_area_oracle([](Vec2) { return true; }, box, 0, 1), std::invalid_argument);
    Aabb bad{1, 1, 1, 5};
    CHECK_THROWS_AS(mc_area_oracle([](Vec2) { return true; }, bad, 10, 1),
                    std::invalid_argument);
  }
}
