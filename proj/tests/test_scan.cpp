#include <doctest.h>

#include <cmath>

#include "gnk/constructions.hpp"
#include "gnk/error.hpp"
#include "gnk/scan.hpp"
#include "gnk/word_io.hpp"
#include "support.hpp"

using namespace gnk;
using namespace gnk::geometry;

namespace {

ErrorCode scan_error(const Trajectory& traj, const ScanOptions& opts = {}) {
  try {
    scan_events(traj, opts);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("scan succeeded");
  return ErrorCode::InvalidParams;
}

using Coeffs = std::vector<std::vector<std::vector<Polynomial>>>;

/// Points 1, 2 fixed on the x-axis, point 4 far above; point 3 at
/// (0.5, y(t)) for a single-piece polynomial y.
Trajectory third_point_height(Polynomial y) {
  const auto p = GroupParams::make(4, 3);
  Coeffs c{{{{0}}, {{0}}}, {{{1}}, {{0}}}, {{{0.5}}, {std::move(y)}}, {{{0.5}}, {{5}}}};
  return Trajectory(p, Mode::Affine, {0, 1}, c);
}

Trajectory crossing_motion() { return third_point_height({-1, 2}); }

Trajectory clean_motion(const GroupParams& p, int steps, Rng& rng,
                        const std::optional<std::vector<Point>>& start = std::nullopt) {
  return constructions::random_clean_polygonal(p, steps, rng, {}, start);
}

}  // namespace

TEST_SUITE("singular events") {
  TEST_CASE("point 3 crossing the line through points 1 and 2") {
    const auto events = scan_events(crossing_motion());
    REQUIRE(events.size() == 1);
    CHECK(events[0].t == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(format_generator(events[0].subset) == "{1,2,3}");
    CHECK(events[0].crossing == 1);
    CHECK(format_word(trajectory_word(crossing_motion())) == "{1,2,3}");
    const std::vector<int> s{1, 2, 3};
    CHECK(std::abs(subset_determinant(crossing_motion(), s, events[0].t)) < 1e-11);
  }

  TEST_CASE("motions without events") {
    const Configuration c{GroupParams::make(5, 3), Mode::Affine, {{0, 0}, {1, 0}, {0, 1}, {1, 1.5}, {-1, 0.3}}};
    CHECK(scan_events(Trajectory::stationary(c)).empty());
    // Points on a circle are never collinear.
    for (int n = 4; n <= 8; ++n) CHECK(scan_events(constructions::circle_rotation_loop(n, n)).empty());
  }

  TEST_CASE("projective scan agrees with the affine scan") {
    Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
      const Trajectory a = clean_motion(GroupParams::make(5, 3), 3, rng);
      CHECK(trajectory_word(to_projective(a)) == trajectory_word(a));
    }
  }

  TEST_CASE("projective representatives may be rescaled by nonvanishing polynomials") {
    const Trajectory base = to_projective(crossing_motion());
    auto scaled = base.all_coeffs();
    for (auto& coord : scaled[2]) coord[0] = poly_mul(coord[0], {1, 0, 1});       // 1 + t^2
    for (auto& coord : scaled[0]) coord[0] = poly_mul(coord[0], {-2, 0.5});       // negative throughout
    const Trajectory rescaled(base.params(), Mode::Projective, {0, 1}, scaled);
    const auto events = scan_events(rescaled);
    REQUIRE(events.size() == 1);
    CHECK(events[0].t == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(events[0].crossing == -1);
  }
}

TEST_SUITE("word map properties") {
  TEST_CASE("reversal gives the literal inverse") {
    Rng rng(102);
    for (int trial = 0; trial < 30; ++trial) {
      const auto p = GroupParams::make(5 + static_cast<int>(rng.below(2)), 3);
      const Trajectory a = clean_motion(p, 3, rng);
      const auto forward = scan_events(a);
      const auto backward = scan_events(reverse(a));
      REQUIRE(forward.size() == backward.size());
      for (std::size_t i = 0; i < forward.size(); ++i) {
        const auto& f = forward[forward.size() - 1 - i];
        CHECK(backward[i].subset == f.subset);
        CHECK(backward[i].t == doctest::Approx(1.0 - f.t).epsilon(1e-9));
        CHECK(backward[i].crossing == -f.crossing);
      }
      CHECK(events_to_word(p, backward) == inverse(events_to_word(p, forward)));
    }
  }

  TEST_CASE("concatenation multiplies words letter for letter") {
    Rng rng(103);
    for (int trial = 0; trial < 30; ++trial) {
      const auto p = GroupParams::make(5, 3 + static_cast<int>(rng.below(2)));
      const Trajectory a = clean_motion(p, 2, rng);
      const Trajectory b = clean_motion(p, 2, rng, eval_trajectory(a, 1.0).points);
      const Word wa = trajectory_word(a);
      const Word wb = trajectory_word(b);
      std::vector<Generator> letters(wa.letters().begin(), wa.letters().end());
      letters.insert(letters.end(), wb.letters().begin(), wb.letters().end());
      CHECK(trajectory_word(concatenate(a, b)) == Word(p, letters));
    }
  }

  TEST_CASE("refining the grid does not change the word") {
    Rng rng(104);
    ScanOptions fine;
    fine.samples_per_piece = 4096;
    for (int trial = 0; trial < 20; ++trial) {
      const Trajectory a = clean_motion(GroupParams::make(6, 3), 3, rng);
      CHECK(trajectory_word(a, fine) == trajectory_word(a));
    }
  }

  TEST_CASE("thread count does not change the events") {
    Rng rng(105);
    ScanOptions one;
    one.threads = 1;
    ScanOptions four;
    four.threads = 4;
    for (int trial = 0; trial < 10; ++trial) {
      const Trajectory a = clean_motion(GroupParams::make(6, 4), 3, rng);
      const auto x = scan_events(a, one);
      const auto y = scan_events(a, four);
      REQUIRE(x.size() == y.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(x[i].t == y[i].t);
        CHECK(x[i].subset == y[i].subset);
        CHECK(x[i].crossing == y[i].crossing);
      }
    }
  }
}

TEST_SUITE("scan failures") {
  TEST_CASE("tangential contact is not stable") {
    // y = (t - 1/2)^2 touches the line without crossing.
    CHECK(scan_error(third_point_height({0.25, -1, 1})) == ErrorCode::NotStable);
    // A near miss by 1e-10 is rejected as well.
    CHECK(scan_error(third_point_height({0.25 + 1e-10, -1, 1})) == ErrorCode::NotStable);
    // A comfortable miss is fine.
    CHECK(scan_events(third_point_height({0.35, -1, 1})).empty());
  }

  TEST_CASE("simultaneous events violate the good-path condition") {
    const auto p = GroupParams::make(4, 3);
    const Trajectory t = Trajectory::polygonal(
        p, Mode::Affine, {{{0, 0}, {1, 0}, {0.3, -1}, {0.7, -1}}, {{0, 0}, {1, 0}, {0.3, 1}, {0.7, 1}}});
    CHECK(scan_error(t) == ErrorCode::GoodPathViolation);
  }

  TEST_CASE("a subset degenerate on a whole piece") {
    const auto p = GroupParams::make(4, 3);
    // Point 3 slides along the line through points 1 and 2 but starts and ends off it.
    const Trajectory t = Trajectory::polygonal(p, Mode::Affine,
                                               {{{0, 0}, {1, 0}, {0.5, 1}, {0.5, 5}},
                                                {{0, 0}, {1, 0}, {2, 0}, {0.5, 5}},
                                                {{0, 0}, {1, 0}, {3, 0}, {0.5, 5}},
                                                {{0, 0}, {1, 0}, {3, 1}, {0.5, 5}}});
    CHECK(scan_error(t) == ErrorCode::GoodPathViolation);
  }

  TEST_CASE("singular endpoints") {
    CHECK(scan_error(third_point_height({0, 1})) == ErrorCode::SingularEndpoint);
    CHECK(scan_error(third_point_height({1, -1})) == ErrorCode::SingularEndpoint);
  }

  TEST_CASE("leaving C'_n") {
    // Point 3 passes through point 1 at t = 1/2.
    const auto p = GroupParams::make(4, 3);
    const Trajectory t = Trajectory::polygonal(
        p, Mode::Affine, {{{0, 0}, {1, 0}, {-1, -1}, {0.5, 5}}, {{0, 0}, {1, 0}, {1, 1}, {0.5, 5}}});
    try {
      scan_events(t);
      FAIL("scan succeeded");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::LeftConfigurationSpace);
      REQUIRE(!e.times().empty());
      CHECK(e.times()[0] == doctest::Approx(0.5).epsilon(1e-2));
    }
  }

  TEST_CASE("option validation") {
    auto bad = [](auto mutate) {
      ScanOptions o;
      mutate(o);
      try {
        o.validate();
      } catch (const Error& e) {
        return e.code() == ErrorCode::InvalidParams;
      }
      return false;
    };
    CHECK(bad([](ScanOptions& o) { o.samples_per_piece = 0; }));
    CHECK(bad([](ScanOptions& o) { o.root_tol = 0; }));
    CHECK(bad([](ScanOptions& o) { o.simultaneity_tol = -1; }));
    CHECK(bad([](ScanOptions& o) { o.stability_margin = 0; }));
    CHECK(bad([](ScanOptions& o) { o.membership_stride = 0; }));
    CHECK_NOTHROW(ScanOptions{}.validate());
    CHECK(describe(ScanOptions{}).find("2048") != std::string::npos);
  }
}
