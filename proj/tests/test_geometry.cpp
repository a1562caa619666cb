#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "support/oracles.hpp"
#include "wirelay/geometry.hpp"
#include "wirelay/rng.hpp"

using namespace wirelay;

namespace {

Vec3 random_point(Rng& rng, double half_extent = 2.0) {
  return {rng.uniform(-half_extent, half_extent), rng.uniform(-half_extent, half_extent),
          rng.uniform(-half_extent, half_extent)};
}

Segment random_segment(Rng& rng) { return {random_point(rng), random_point(rng)}; }

Mat3 random_rotation(Rng& rng) {
  return rot_z(rng.uniform(0.0, 2.0 * M_PI)) * rot_y(rng.uniform(0.0, 2.0 * M_PI)) *
         rot_x(rng.uniform(0.0, 2.0 * M_PI));
}

}  // namespace

TEST_CASE("segment_min_distance handles the textbook configurations") {
  SECTION("parallel offset segments") {
    const auto r = segment_min_distance({{0, 0, 0}, {1, 0, 0}}, {{0, 0, 1}, {1, 0, 1}});
    CHECK(r.distance == Catch::Approx(1.0).margin(1e-15));
  }
  SECTION("crossing X") {
    const auto r = segment_min_distance({{-1, 0, 0}, {1, 0, 0}}, {{0, -1, 0}, {0, 1, 0}});
    CHECK(r.distance == Catch::Approx(0.0).margin(1e-15));
    CHECK(r.s == Catch::Approx(0.5).margin(1e-12));
    CHECK(r.t == Catch::Approx(0.5).margin(1e-12));
  }
  SECTION("skew perpendicular with a vertical gap") {
    const auto r = segment_min_distance({{0, 0, 0}, {1, 0, 0}}, {{0.5, -1, 2}, {0.5, 1, 2}});
    CHECK(r.distance == Catch::Approx(2.0).margin(1e-15));
    CHECK(r.s == Catch::Approx(0.5).margin(1e-12));
    CHECK(r.t == Catch::Approx(0.5).margin(1e-12));
  }
  SECTION("zero-length segments reduce to point distances") {
    const auto r = segment_min_distance({{1, 1, 1}, {1, 1, 1}}, {{0, 0, 0}, {2, 0, 0}});
    CHECK(r.distance == Catch::Approx(std::sqrt(2.0)).margin(1e-15));
    CHECK(r.s == 0.0);
    const auto rr = segment_min_distance({{3, 0, 0}, {3, 0, 0}}, {{5, 0, 0}, {5, 0, 0}});
    CHECK(rr.distance == Catch::Approx(2.0).margin(1e-15));
  }
  SECTION("result attains the reported distance") {
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
      const Segment a = random_segment(rng), b = random_segment(rng);
      const auto r = segment_min_distance(a, b);
      CHECK(norm(a.point_at(r.s) - b.point_at(r.t)) == Catch::Approx(r.distance).margin(1e-12));
      CHECK(r.s >= 0.0);
      CHECK(r.s <= 1.0);
      CHECK(r.t >= 0.0);
      CHECK(r.t <= 1.0);
    }
  }
}

TEST_CASE("segment_min_distance matches the grid oracle over random pairs") {
  Rng rng(42);
  const int pairs = 100000;
  for (int i = 0; i < pairs; ++i) {
    Segment a = random_segment(rng), b = random_segment(rng);
    if (i % 17 == 0) a.end = a.start;  // sprinkle degenerate segments
    if (i % 29 == 0) b = {a.start + Vec3{0.1, 0, 0}, a.end + Vec3{0.1, 0, 0}};  // parallels
    const auto r = segment_min_distance(a, b);
    const double coarse = oracles::grid_min_distance(a, b, 50).distance;
    REQUIRE(r.distance <= coarse + 1e-12);
    // odd refinement resolution keeps the reported optimum itself on the grid
    const double refined = oracles::refined_grid_min_distance(
        a, b, r.s, r.t, 51, 5, [&](double d) { return r.distance >= d - 1e-9; });
    REQUIRE(r.distance >= refined - 1e-9);
  }
}

TEST_CASE("segment_min_distance is symmetric under swapping") {
  Rng rng(7);
  for (int i = 0; i < 20000; ++i) {
    const Segment a = random_segment(rng), b = random_segment(rng);
    const auto ab = segment_min_distance(a, b);
    const auto ba = segment_min_distance(b, a);
    REQUIRE(std::abs(ab.distance - ba.distance) < 1e-12);
  }
}

TEST_CASE("segment_min_distance is rigid-transform invariant") {
  Rng rng(13);
  for (int i = 0; i < 20000; ++i) {
    const Segment a = random_segment(rng), b = random_segment(rng);
    const Mat3 rot = random_rotation(rng);
    const Vec3 shift = random_point(rng, 5.0);
    auto moved = [&](const Segment& s) {
      return Segment{rot * s.start + shift, rot * s.end + shift};
    };
    const double before = segment_min_distance(a, b).distance;
    const double after = segment_min_distance(moved(a), moved(b)).distance;
    REQUIRE(std::abs(before - after) < 1e-9);
  }
}

TEST_CASE("distance_at blends the motion endpoints") {
  const MotionPair constant{{{0, 0, 0}, {1, 0, 0}},
                            {{0, 0, 0}, {1, 0, 0}},
                            {{0, 0, 1}, {1, 0, 1}},
                            {{0, 0, 1}, {1, 0, 1}}};
  SECTION("constant motion is independent of k") {
    for (double k : {0.0, 0.25, 0.5, 1.0})
      CHECK(distance_at(constant, k).distance == Catch::Approx(1.0).margin(1e-15));
  }
  SECTION("k = 0 equals the begin configuration") {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
      const MotionPair pair{random_segment(rng), random_segment(rng), random_segment(rng),
                            random_segment(rng)};
      const auto begin = segment_min_distance(pair.a_begin, pair.b_begin);
      const auto at0 = distance_at(pair, 0.0);
      CHECK(at0.distance == Catch::Approx(begin.distance).margin(1e-15));
    }
  }
  SECTION("k outside [0,1] is rejected") {
    CHECK_THROWS_AS(distance_at(constant, -0.01), std::invalid_argument);
    CHECK_THROWS_AS(distance_at(constant, 1.01), std::invalid_argument);
    CHECK_THROWS_AS(distance_at(constant, std::nan("")), std::invalid_argument);
  }
}

TEST_CASE("a segment sweeping across another reaches zero distance mid-motion") {
  // a rises from z = -1 to z = +1 while b stays in the z = 0 plane
  const MotionPair pair{{{-1, 0, -1}, {1, 0, -1}},
                        {{-1, 0, 1}, {1, 0, 1}},
                        {{0, -1, 0}, {0, 1, 0}},
                        {{0, -1, 0}, {0, 1, 0}}};
  CHECK(distance_at(pair, 0.5).distance == Catch::Approx(0.0).margin(1e-12));
  CHECK(oracles::dense_motion_min(pair, 10001).distance == Catch::Approx(0.0).margin(1e-9));

  const auto report = crossing_during_motion(pair, 1e-4);
  CHECK(report.crossed);
  CHECK(report.k_min == Catch::Approx(0.5).margin(1e-3));
}

TEST_CASE("crossing_during_motion basics") {
  SECTION("well separated constant pair never crosses") {
    const MotionPair pair{{{0, 0, 0}, {1, 0, 0}},
                          {{0, 0, 0}, {1, 0, 0}},
                          {{0, 0, 1}, {1, 0, 1}},
                          {{0, 0, 1}, {1, 0, 1}}};
    const auto report = crossing_during_motion(pair, 1e-4);
    CHECK_FALSE(report.crossed);
    CHECK(report.d_min == Catch::Approx(1.0).margin(1e-15));
  }
  SECTION("sub-epsilon distance at k = 0 is reported immediately") {
    const MotionPair pair{{{-1, 0, 0}, {1, 0, 0}},
                          {{-1, 0, 5}, {1, 0, 5}},
                          {{0, -1, 0}, {0, 1, 0}},
                          {{0, -1, 0}, {0, 1, 0}}};
    const auto report = crossing_during_motion(pair, 1e-4);
    CHECK(report.crossed);
    CHECK(report.k_min == 0.0);
  }
  SECTION("epsilon must be positive") {
    const MotionPair pair{{{0, 0, 0}, {1, 0, 0}},
                          {{0, 0, 0}, {1, 0, 0}},
                          {{0, 0, 1}, {1, 0, 1}},
                          {{0, 0, 1}, {1, 0, 1}}};
    CHECK_THROWS_AS(crossing_during_motion(pair, 0.0), std::invalid_argument);
  }
}

namespace {

// A motion pair built so the two segments pass at distance `gap` at
// parameter k_star, crossing near their midpoints.
MotionPair near_miss_pair(Rng& rng, double k_star, double gap) {
  const Vec3 meet = random_point(rng, 0.5);
  const Mat3 rot = random_rotation(rng);
  const Vec3 dir_a = rot * Vec3{1, 0, 0};
  const Vec3 dir_b = rot * Vec3{0, 1, 0};
  const Vec3 normal = rot * Vec3{0, 0, 1};

  const Segment a_at{meet - dir_a, meet + dir_a};
  const Segment b_at{meet + normal * gap - dir_b, meet + normal * gap + dir_b};
  const Vec3 vel_a = random_point(rng, 1.0);
  const Vec3 vel_b = random_point(rng, 1.0);

  auto shifted = [](const Segment& s, const Vec3& v) {
    return Segment{s.start + v, s.end + v};
  };
  return {shifted(a_at, vel_a * (0.0 - k_star)), shifted(a_at, vel_a * (1.0 - k_star)),
          shifted(b_at, vel_b * (0.0 - k_star)), shifted(b_at, vel_b * (1.0 - k_star))};
}

}  // namespace

TEST_CASE("crossing detection agrees with a dense-k oracle inside the guard band") {
  Rng rng(97);
  const double epsilon = 1e-4;
  int near_checked = 0;
  for (int i = 0; i < 300; ++i) {
    MotionPair pair;
    if (i % 3 == 0) {
      pair = {random_segment(rng), random_segment(rng), random_segment(rng),
              random_segment(rng)};
    } else {
      pair = near_miss_pair(rng, rng.uniform(), rng.uniform(0.0, 4.0 * epsilon));
    }
    const auto oracle = oracles::dense_motion_min(pair, 10001);
    const auto report = crossing_during_motion(pair, epsilon);
    REQUIRE_FALSE((report.crossed && report.d_min >= epsilon));
    if (oracle.distance < 0.5 * epsilon) {
      ++near_checked;
      REQUIRE(report.crossed);
    } else if (oracle.distance > 2.0 * epsilon) {
      REQUIRE_FALSE(report.crossed);
    }
  }
  CHECK(near_checked > 30);  // the generator must actually exercise the band
}
