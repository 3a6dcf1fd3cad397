#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gnk/determinant.hpp"
#include "gnk/error.hpp"
#include "gnk/polynomial.hpp"
#include "gnk/trajectory.hpp"
#include "gnk/trajectory_io.hpp"
#include "support.hpp"

using namespace gnk;
using namespace gnk::geometry;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::InvalidParams;
}

std::vector<std::vector<double>> affine_matrix(const std::vector<Point>& pts) {
  std::vector<std::vector<double>> m;
  for (const Point& p : pts) {
    auto row = p;
    row.push_back(1.0);
    m.push_back(std::move(row));
  }
  return m;
}

Trajectory crossing_motion() {
  // Point 3 crosses the segment between points 1 and 2 at t = 1/2.
  const auto p = GroupParams::make(4, 3);
  return Trajectory::polygonal(p, Mode::Affine,
                               {{{0, 0}, {1, 0}, {0.5, -1}, {0.5, 5}}, {{0, 0}, {1, 0}, {0.5, 1}, {0.5, 5}}});
}

}  // namespace

TEST_SUITE("determinants") {
  TEST_CASE("affine dependence examples") {
    CHECK(dependence_det(std::vector<Point>{{0, 0}, {1, 0}, {2, 0}}) == 0.0);
    CHECK(dependence_det(std::vector<Point>{{0, 0}, {1, 0}, {0, 1}}) == doctest::Approx(1.0));
    CHECK(dependence_det(std::vector<Point>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) == doctest::Approx(-1.0));
  }

  TEST_CASE("projective dependence examples") {
    CHECK(dependence_det_projective(std::vector<Point>{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}) == 0.0);
    CHECK(dependence_det_projective(std::vector<Point>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) == doctest::Approx(1.0));
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Point> v(4, Point(4));
      for (auto& p : v) {
        for (double& x : p) x = rng.uniform(-1, 1);
      }
      const double base = dependence_det_projective(v);
      const double lambda = rng.uniform(0.1, 10);
      for (double& x : v[rng.below(4)]) x *= lambda;
      CHECK(dependence_det_projective(v) == doctest::Approx(lambda * base).epsilon(1e-12));
    }
  }

  TEST_CASE("input validation") {
    CHECK(code_of([] { dependence_det(std::vector<Point>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}); }) ==
          ErrorCode::DimensionMismatch);
    CHECK(code_of([] { dependence_det_projective(std::vector<Point>{{1, 0}, {0, 1, 0}, {0, 0, 1}}); }) ==
          ErrorCode::DimensionMismatch);
    CHECK(code_of([] { dependence_det_projective(std::vector<Point>{{0, 0, 0}, {0, 1, 0}, {0, 0, 1}}); }) ==
          ErrorCode::ZeroVector);
  }

  TEST_CASE("agrees with cofactor expansion") {
    Rng rng(6);
    for (int k = 3; k <= 6; ++k) {
      for (int trial = 0; trial < 2000; ++trial) {
        std::vector<Point> pts(static_cast<std::size_t>(k), Point(static_cast<std::size_t>(k - 1)));
        for (auto& p : pts) {
          for (double& x : p) x = rng.uniform(-1, 1);
        }
        const double oracle = gnk::testing::cofactor_det(affine_matrix(pts));
        const double got = dependence_det(pts);
        CHECK(std::abs(got - oracle) <= 1e-9 * std::max(1.0, std::abs(oracle)));
      }
    }
  }

  TEST_CASE("normalized volume") {
    CHECK(normalized_volume(std::vector<Point>{{1, 0}, {0, 2}}) == doctest::Approx(1.0));
    CHECK(normalized_volume(std::vector<Point>{{1, 1}, {2, 2}}) == doctest::Approx(0.0).epsilon(1e-15));
    // Nearly parallel vectors keep their relative accuracy.
    CHECK(normalized_volume(std::vector<Point>{{1, 0}, {1, 1e-12}}) == doctest::Approx(1e-12).epsilon(1e-6));
  }
}

TEST_SUITE("polynomials") {
  TEST_CASE("evaluation") {
    const Polynomial p{1, -2, 3};
    CHECK(horner(p, 0.0) == 1.0);
    CHECK(horner(p, 2.0) == 9.0);
    CHECK(eval_piece(p, 1.0) == 2.0);
    const std::vector<double> cancel{1e100, 1.0, -1e100};
    CHECK(exact_sum(cancel) == 1.0);
    const std::vector<double> tenths(10, 0.1);
    CHECK(exact_sum(tenths) == 1.0);
  }

  TEST_CASE("arithmetic") {
    CHECK(poly_add({1, 2}, {3}) == Polynomial{4, 2});
    CHECK(poly_mul({1, 1}, {-1, 1}) == Polynomial{-1, 0, 1});
    CHECK(poly_scale({1, 2}, 3) == Polynomial{3, 6});
    // (1 + u)^2 at u = 2 + 3v.
    const Polynomial c = poly_compose_affine({1, 2, 1}, 2, 3);
    CHECK(c == Polynomial{9, 18, 9});
    const Polynomial r = poly_reflect({1, 2, 3});
    CHECK(horner(r, 0.0) == 6.0);
    CHECK(horner(r, 1.0) == doctest::Approx(1.0));
    CHECK(derivative_bound(Polynomial{0, 1, -3}) >= 5.0);
  }

  TEST_CASE("pinning makes the right end exact") {
    Rng rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
      Polynomial p;
      for (int d = 0; d < 8; ++d) p.push_back(rng.uniform(-1, 1));
      const double target = eval_piece(p, 1.0) + rng.uniform(-1e-12, 1e-12);
      pin_right_end(p, target);
      CHECK(eval_piece(p, 1.0) == target);
    }
  }

  TEST_CASE("Chebyshev fits of circle arcs") {
    // 32 pieces per turn: degree 7 meets the 1e-10 budget, degree 3 does not.
    auto worst = [](int degree) {
      double err = 0.0;
      const double h = 2 * std::numbers::pi / 32;
      const Polynomial fit = chebyshev_fit([&](double u) { return std::cos(h * u); }, degree);
      for (int i = 0; i <= 1000; ++i) {
        const double u = i / 1000.0;
        err = std::max(err, std::abs(horner(fit, u) - std::cos(h * u)));
      }
      return err;
    };
    CHECK(worst(7) < 1e-10);
    CHECK(worst(3) > 1e-10);
  }
}

TEST_SUITE("trajectories") {
  TEST_CASE("evaluation") {
    const Trajectory traj = crossing_motion();
    const Configuration start = eval_trajectory(traj, 0.0);
    CHECK(start.points[2] == Point{0.5, -1});
    CHECK(eval_trajectory(traj, 1.0).points[2] == Point{0.5, 1});
    CHECK(eval_trajectory(traj, 0.25).points[2][1] == doctest::Approx(-0.5));
    const Configuration still = eval_trajectory(Trajectory::stationary(start), 0.7);
    CHECK(still.points == start.points);
    CHECK(code_of([&] { eval_trajectory(traj, 1.5); }) == ErrorCode::TimeOutOfRange);
    CHECK(code_of([&] { eval_trajectory(traj, -0.1); }) == ErrorCode::TimeOutOfRange);
  }

  TEST_CASE("pieces meet at breakpoints") {
    const auto p = GroupParams::make(4, 3);
    const Trajectory traj = Trajectory::polygonal(p, Mode::Affine,
                                                  {{{0, 0}, {1, 0}, {0, 1}, {2, 2}},
                                                   {{0.1, 0}, {1, 0.3}, {0, 1.2}, {2, 2.5}},
                                                   {{0.2, 0.4}, {1.3, 0}, {0.1, 1}, {2.2, 2}}});
    REQUIRE(traj.piece_count() == 2);
    for (int i = 0; i < 4; ++i) {
      for (int c = 0; c < 2; ++c) CHECK(traj.coordinate(i, c, 0, 1.0) == traj.coordinate(i, c, 1, 0.0));
    }
    CHECK(eval_trajectory(traj, 0.5).points[1] == Point{1, 0.3});
  }

  TEST_CASE("construction validation") {
    const auto p = GroupParams::make(4, 3);
    using Coeffs = std::vector<std::vector<std::vector<Polynomial>>>;
    auto constant = [](double x, double y) {
      return std::vector<std::vector<Polynomial>>{{{x}, {x}}, {{y}, {y}}};
    };
    Coeffs jump{constant(0, 0), constant(1, 0), constant(0, 1), {{{2}, {2.5}}, {{2}, {2}}}};
    CHECK(code_of([&] { Trajectory(p, Mode::Affine, {0, 0.5, 1}, jump); }) == ErrorCode::Discontinuous);
    Coeffs ok{constant(0, 0), constant(1, 0), constant(0, 1), constant(2, 2)};
    CHECK(code_of([&] { Trajectory(p, Mode::Affine, {0, 0.7, 0.5}, ok); }) == ErrorCode::ParseError);
    CHECK(code_of([&] { Trajectory(p, Mode::Affine, {0, 1}, ok); }) == ErrorCode::DimensionMismatch);
    CHECK_NOTHROW(Trajectory(p, Mode::Affine, {0, 0.5, 1}, ok));

    // A homogeneous lift that passes through the zero vector.
    Coeffs lifts;
    for (int i = 0; i < 4; ++i) {
      lifts.push_back({{{1.0 + i}}, {{static_cast<double>(i)}}, {{1.0}}});
    }
    lifts[0][2][0] = {1.0, -2.0};
    lifts[0][0][0] = {0.0};
    lifts[0][1][0] = {0.0};
    CHECK(code_of([&] { Trajectory(p, Mode::Projective, {0, 1}, lifts); }) == ErrorCode::ZeroVector);
  }

  TEST_CASE("membership diagnostics") {
    // k = 4: three collinear points leave C'_n.
    const auto p44 = GroupParams::make(5, 4);
    Configuration c{p44, Mode::Affine, {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    auto report = check_membership(c);
    CHECK_FALSE(report.in_configuration_space());
    REQUIRE(!report.degenerate_lower.empty());
    CHECK(report.degenerate_lower[0] == std::vector<int>{1, 2, 3});

    // k = 3: a collinear triple is singular but still in C'_n.
    const auto p3 = GroupParams::make(4, 3);
    Configuration d{p3, Mode::Affine, {{0, 0}, {1, 0}, {2, 0}, {0, 1}}};
    report = check_membership(d);
    CHECK(report.in_configuration_space());
    CHECK_FALSE(report.nonsingular());
    CHECK(report.singular[0] == std::vector<int>{1, 2, 3});

    // Coincident points leave C'_n for every k.
    d.points[1] = d.points[0];
    CHECK_FALSE(check_membership(d).in_configuration_space());

    Rng rng(9);
    for (int trial = 0; trial < 200; ++trial) {
      const auto p = GroupParams::make(6, 3 + static_cast<int>(rng.below(3)));
      Configuration g{p, Mode::Affine, {}};
      for (int i = 0; i < p.n; ++i) {
        Point q;
        for (int j = 0; j < p.k - 1; ++j) q.push_back(rng.uniform(-1, 1));
        g.points.push_back(q);
      }
      CHECK(check_membership(g, 1e-12).clean());
    }
  }

  TEST_CASE("concatenate and reverse") {
    const Trajectory a = crossing_motion();
    const Trajectory there_and_back = concatenate(a, reverse(a));
    CHECK(eval_trajectory(there_and_back, 0.0).points == eval_trajectory(there_and_back, 1.0).points);
    CHECK(there_and_back.piece_count() == 2 * a.piece_count());
    CHECK(eval_trajectory(reverse(a), 0.0).points == eval_trajectory(a, 1.0).points);
    CHECK(eval_trajectory(reverse(a), 1.0).points == eval_trajectory(a, 0.0).points);

    const Trajectory twice = reverse(reverse(a));
    for (double t : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
      const auto x = eval_trajectory(twice, t).points;
      const auto y = eval_trajectory(a, t).points;
      for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x[i].size(); ++j) CHECK(x[i][j] == doctest::Approx(y[i][j]).epsilon(1e-14));
      }
    }
    CHECK(code_of([&] { concatenate(a, a); }) == ErrorCode::EndpointMismatch);
  }

  TEST_CASE("perturbation") {
    const Trajectory a = crossing_motion();
    CHECK(perturb(a, 0.0, 1) == a);
    const Trajectory b = perturb(a, 1e-3, 42);
    CHECK(b == perturb(a, 1e-3, 42));
    CHECK_FALSE(b == perturb(a, 1e-3, 43));
    CHECK(eval_trajectory(b, 0.0).points == eval_trajectory(a, 0.0).points);
    CHECK(eval_trajectory(b, 1.0).points == eval_trajectory(a, 1.0).points);
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double t = i / 1000.0;
      const auto x = eval_trajectory(a, t).points;
      const auto y = eval_trajectory(b, t).points;
      for (std::size_t p = 0; p < x.size(); ++p) {
        for (std::size_t c = 0; c < x[p].size(); ++c) worst = std::max(worst, std::abs(x[p][c] - y[p][c]));
      }
    }
    CHECK(worst > 0.0);
    CHECK(worst <= 1e-3 * (1 + 1e-12));
  }

  TEST_CASE("projective lift appends a unit coordinate") {
    const Trajectory a = to_projective(crossing_motion());
    CHECK(a.mode() == Mode::Projective);
    CHECK(eval_trajectory(a, 0.5).points[2] == Point{0.5, 0, 1});
  }
}

TEST_SUITE("trajectory text format") {
  TEST_CASE("round trip is bit exact") {
    Rng rng(10);
    for (int trial = 0; trial < 50; ++trial) {
      const auto p = GroupParams::make(5, 3);
      std::vector<std::vector<Point>> waypoints;
      for (int s = 0; s < 4; ++s) {
        std::vector<Point> config;
        for (int i = 0; i < p.n; ++i) config.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
        waypoints.push_back(config);
      }
      const Trajectory a = perturb(Trajectory::polygonal(p, Mode::Affine, waypoints), 1e-3, rng.next());
      const Trajectory b = parse_trajectory(format_trajectory(a));
      CHECK(a == b);
      const Trajectory c = to_projective(a);
      CHECK(parse_trajectory(format_trajectory(c)) == c);
    }
  }

  TEST_CASE("documented example parses") {
    const Trajectory t = parse_trajectory(
        "# point 3 crosses the line through points 1 and 2\n"
        "trajectory n=4 k=3 mode=affine pieces=1\n"
        "breakpoints 0 1\n"
        "coef point=1 coord=1 piece=1 : 0\n"
        "coef point=1 coord=2 piece=1 : 0\n"
        "coef point=2 coord=1 piece=1 : 1\n"
        "coef point=2 coord=2 piece=1 : 0\n"
        "coef point=3 coord=1 piece=1 : 0.5\n"
        "coef point=3 coord=2 piece=1 : -1 2\n"
        "coef point=4 coord=1 piece=1 : 0.5\n"
        "coef point=4 coord=2 piece=1 : 5\n");
    // Same motion, though polygonal() stores constants as degree-1 pieces.
    for (double time : {0.0, 0.3, 0.5, 1.0}) {
      CHECK(eval_trajectory(t, time).points == eval_trajectory(crossing_motion(), time).points);
    }
  }

  TEST_CASE("malformed files") {
    CHECK(code_of([] { parse_trajectory(""); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_trajectory("breakpoints 0 1\n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_trajectory("trajectory n=4 k=3 mode=curved pieces=1\n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_trajectory("trajectory n=4 k=3 mode=affine pieces=1\nbreakpoints 0 0.5 1\n"); }) ==
          ErrorCode::ParseError);
    CHECK(code_of([] {
            parse_trajectory("trajectory n=4 k=3 mode=affine pieces=1\nbreakpoints 0 1\ncoef point=1 coord=1 piece=1 : 0\n");
          }) == ErrorCode::ParseError);
    CHECK(code_of([] {
            parse_trajectory("trajectory n=4 k=3 mode=affine pieces=1\nbreakpoints 0 1\ncoef point=9 coord=1 piece=1 : 0\n");
          }) == ErrorCode::ParseError);
    CHECK(code_of([] {
            parse_trajectory("trajectory n=4 k=3 mode=affine pieces=1\nbreakpoints 0 1\ncoef point=1 coord=1 piece=1 : 0x\n");
          }) == ErrorCode::ParseError);
  }
}
