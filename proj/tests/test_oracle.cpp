#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fdi/oracle.hpp"

using namespace fdi;

namespace {

std::size_t count_realizations(const RegionSeq& regions,
                               const RealizationScheme& scheme) {
  std::size_t count = 0;
  enumerate_realizations(regions, scheme,
                         [&](const PointSeq&) { ++count; });
  return count;
}

PointSeq random_seq(std::mt19937_64& rng, int len) {
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  PointSeq s;
  for (int i = 0; i < len; ++i) s.push_back(Point(coord(rng), coord(rng)));
  return s;
}

}  // namespace

TEST_CASE("enumeration counts") {
  RealizationScheme scheme;
  scheme.directions = 4;
  RegionSeq two_balls{Ball(Point(0, 0), 1.0), Ball(Point(5, 5), 2.0)};
  CHECK(count_realizations(two_balls, scheme) == 25);  // (4+1)^2

  RegionSeq one_rect{OrientedRect(Point(0, 0), 1.0, 0.0, 1.0, 0.5)};
  CHECK(count_realizations(one_rect, scheme) == 8);  // corners + midpoints

  RegionSeq degenerate{Ball(Point(0, 0), 0.0)};
  scheme.directions = 64;
  CHECK(count_realizations(degenerate, scheme) == 1);

  RegionSeq points{Point(1, 2), Point(3, 4)};
  CHECK(count_realizations(points, scheme) == 1);
}

TEST_CASE("enumeration cap error names the required cap") {
  RealizationScheme scheme;
  scheme.directions = 9;
  scheme.combo_cap = 50;
  RegionSeq regions{Ball(Point(0, 0), 1.0), Ball(Point(5, 5), 2.0)};
  CHECK_THROWS_WITH(count_realizations(regions, scheme),
                    Catch::Matchers::ContainsSubstring("100"));
}

TEST_CASE("oracle_fmax examples") {
  RealizationScheme scheme;
  RegionSeq square{OrientedRect(Point(0, 0), 1.0, 0.0, 1.0, 1.0)};
  CHECK(oracle_fmax(square, {Point(0, 0)}, scheme) ==
        Catch::Approx(std::sqrt(2.0)).margin(1e-12));

  RegionSeq fixed{Point(0, 0), Point(2, 0)};
  PointSeq h{Point(0, 1), Point(2, 1)};
  PointSeq a{Point(0, 0), Point(2, 0)};
  CHECK(oracle_fmax(fixed, h, scheme) == dfd(a, h).value);

  scheme.directions = 64;
  RegionSeq ball{Ball(Point(0, 0), 1.0)};
  CHECK(oracle_fmax(ball, {Point(0, 0)}, scheme) ==
        Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("oracle_fmax_shortcut examples") {
  RealizationScheme scheme;
  scheme.directions = 64;
  RegionSeq u{Point(0, 0)};

  double v1 = oracle_fmax_shortcut(u, {Ball(Point(3, 4), 2.0)}, scheme);
  CHECK(v1 >= 6.99);
  CHECK(v1 <= 7.0);

  CHECK(oracle_fmax_shortcut(u, {Ball(Point(3, 4), 0.0)}, scheme) == 5.0);

  double v3 = oracle_fmax_shortcut(
      u, {Ball(Point(3, 4), 2.0), Ball(Point(0, 0), 0.5)}, scheme);
  CHECK(v3 >= 0.49);
  CHECK(v3 <= 0.5);
}

TEST_CASE("oracle values are monotone when K doubles") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::uniform_real_distribution<double> rad(0.1, 1.5);
  for (int t = 0; t < 10; ++t) {
    RegionSeq u{Point(coord(rng), coord(rng)), Point(coord(rng), coord(rng))};
    RegionSeq w{Ball(Point(coord(rng), coord(rng)), rad(rng)),
                Ball(Point(coord(rng), coord(rng)), rad(rng))};
    double prev = -1.0;
    RealizationScheme scheme;
    for (int k : {4, 8, 16, 32}) {
      scheme.directions = k;
      double v = oracle_fmax_shortcut(u, w, scheme);
      CHECK(v >= prev - 1e-12);  // doubled direction sets are supersets
      prev = v;
    }
  }
}

TEST_CASE("shortcut_subseq_oracle equals dfd_shortcut") {
  std::mt19937_64 rng(73);
  std::uniform_int_distribution<int> len(1, 8);
  for (int t = 0; t < 100; ++t) {
    PointSeq a = random_seq(rng, len(rng));
    PointSeq b = random_seq(rng, len(rng));
    CHECK(shortcut_subseq_oracle(a, b) == dfd_shortcut(a, b).value);
  }
  PointSeq a{Point(0, 0), Point(1, 0)};
  PointSeq b{Point(0, 0), Point(50, 50), Point(1, 0)};
  CHECK(shortcut_subseq_oracle(a, b) == 0.0);
  CHECK(shortcut_subseq_oracle(a, a) == 0.0);
  CHECK(shortcut_subseq_oracle({Point(0, 0)}, {Point(3, 4)}) == 5.0);
}

TEST_CASE("oracle input validation") {
  RealizationScheme scheme;
  CHECK_THROWS_AS(oracle_fmax({}, {Point(0, 0)}, scheme),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle_fmax_shortcut({Point(0, 0)}, {}, scheme),
                  std::invalid_argument);
  PointSeq big(1, Point(0, 0));
  PointSeq b13(13, Point(0, 0));
  CHECK_THROWS_AS(shortcut_subseq_oracle(big, b13), std::invalid_argument);
}
