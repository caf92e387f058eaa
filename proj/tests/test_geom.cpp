#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fdi/geom.hpp"

using namespace fdi;

TEST_CASE("euclid_dist basic values") {
  CHECK(euclid_dist(Point(0, 0), Point(3, 4)) == 5.0);
  Point p(1.25, -7.5);
  CHECK(euclid_dist(p, p) == 0.0);
  CHECK(euclid_dist(Point{1, 1, 1}, Point{0, 0, 0}) ==
        Catch::Approx(std::sqrt(3.0)).margin(1e-12));
  CHECK_THROWS_AS(euclid_dist(Point(0, 0), Point{1, 2, 3}),
                  std::invalid_argument);
}

TEST_CASE("euclid_dist triangle inequality on random triples") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  for (int t = 0; t < 500; ++t) {
    Point a(coord(rng), coord(rng)), b(coord(rng), coord(rng)),
        c(coord(rng), coord(rng));
    CHECK(euclid_dist(a, c) <= euclid_dist(a, b) + euclid_dist(b, c) + 1e-9);
    CHECK(euclid_dist(a, b) == Catch::Approx(euclid_dist(b, a)).margin(0.0));
  }
}

TEST_CASE("dmax_point_ball") {
  CHECK(dmax_point_ball(Point(0, 0), Ball(Point(3, 4), 2.0)) == 7.0);
  CHECK(dmax_point_ball(Point(1, 2), Ball(Point(1, 2), 0.75)) == 0.75);
  CHECK(dmax_point_ball(Point(0, 0), Ball(Point(0, 5), 1.0)) == 6.0);
}

TEST_CASE("dmax_point_ball dominates sampled interior distances") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  Ball w(Point(2.0, -1.0), 1.5);
  Point p(coord(rng), coord(rng));
  double bound = dmax_point_ball(p, w);
  for (int t = 0; t < 1000; ++t) {
    double ang = 6.283185307179586 * unit(rng);
    double rad = w.radius * std::sqrt(unit(rng));
    Point q(w.center[0] + rad * std::cos(ang), w.center[1] + rad * std::sin(ang));
    CHECK(euclid_dist(p, q) <= bound + 1e-12);
  }
}

TEST_CASE("ball_in_ball closed containment") {
  CHECK(ball_in_ball(Ball(Point(0, 0), 1.0), Point(0, 0), 1.0));
  CHECK(ball_in_ball(Ball(Point(3, 4), 2.0), Point(0, 0), 7.0));
  CHECK_FALSE(ball_in_ball(Ball(Point(3, 4), 2.0), Point(0, 0), 6.99));
}

TEST_CASE("ball_in_ball implies sampled points inside") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Ball w(Point(1.0, 1.0), 0.5);
  Point u(0.0, 0.0);
  double delta = euclid_dist(u, w.center) + w.radius;  // tight containment
  REQUIRE(ball_in_ball(w, u, delta));
  for (int t = 0; t < 500; ++t) {
    double ang = 6.283185307179586 * unit(rng);
    double rad = w.radius * std::sqrt(unit(rng));
    Point q(w.center[0] + rad * std::cos(ang), w.center[1] + rad * std::sin(ang));
    CHECK(euclid_dist(u, q) <= delta + 1e-12);
  }
}

TEST_CASE("rect_point_dist_range on the unit square") {
  OrientedRect sq(Point(0, 0), 1.0, 0.0, 1.0, 1.0);  // [-1,1]^2
  DistRange r1 = rect_point_dist_range(sq, Point(3, 0));
  CHECK(r1.min == Catch::Approx(2.0).margin(1e-12));
  CHECK(r1.max == Catch::Approx(std::sqrt(17.0)).margin(1e-12));
  DistRange r2 = rect_point_dist_range(sq, Point(0, 0));
  CHECK(r2.min == 0.0);
  CHECK(r2.max == Catch::Approx(std::sqrt(2.0)).margin(1e-12));
  OrientedRect rect(Point(4, -2), 0.6, 0.8, 2.0, 1.0);
  DistRange r3 = rect_point_dist_range(rect, rect.center);
  CHECK(r3.min == 0.0);
  CHECK(r3.max == Catch::Approx(std::hypot(2.0, 1.0)).margin(1e-12));
}

TEST_CASE("rect_point_dist_range max matches dense sampling") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coord(-4.0, 4.0);
  std::uniform_real_distribution<double> ang(0.0, 6.28);
  for (int t = 0; t < 20; ++t) {
    double a = ang(rng);
    OrientedRect r(Point(coord(rng), coord(rng)), std::cos(a), std::sin(a),
                   0.5 + std::abs(coord(rng)) / 4.0,
                   0.25 + std::abs(coord(rng)) / 8.0);
    Point p(coord(rng), coord(rng));
    DistRange range = rect_point_dist_range(r, p);
    double sampled_max = 0.0, sampled_min = 1e300;
    for (int i = 0; i < 100; ++i)
      for (int j = 0; j < 100; ++j) {
        double d = euclid_dist(r.point_at(i / 99.0, j / 99.0), p);
        sampled_max = std::max(sampled_max, d);
        sampled_min = std::min(sampled_min, d);
      }
    CHECK(range.max == Catch::Approx(sampled_max).margin(1e-9));
    CHECK(range.min <= sampled_min + 1e-9);
  }
}

TEST_CASE("rect_covered_by_disks") {
  OrientedRect small(Point(0, 0), 1.0, 0.0, 0.1, 0.1);
  CHECK(rect_covered_by_disks(small, {Point(0, 0)}, 1.0, 50));
  OrientedRect big(Point(0, 0), 1.0, 0.0, 2.0, 2.0);
  CHECK_FALSE(rect_covered_by_disks(big, {Point(0, 0)}, 1.0, 50));
  CHECK_THROWS_AS(rect_covered_by_disks(small, {Point(0, 0)}, 1.0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(rect_covered_by_disks(small, {}, 1.0, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      rect_covered_by_disks(
          small, {Point(0, 0), Point(1, 0), Point(0, 1), Point(1, 1)}, 1.0, 10),
      std::invalid_argument);
}

TEST_CASE("OrientedRect validation") {
  CHECK_THROWS_AS(OrientedRect(Point(0, 0), 2.0, 0.0, 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(OrientedRect(Point(0, 0), 1.0, 0.0, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(Ball(Point(0, 0), -1.0), std::invalid_argument);
}
