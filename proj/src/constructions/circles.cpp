#include <algorithm>
#include <cmath>
#include <numbers>

#include "gnk/constructions.hpp"
#include "gnk/error.hpp"

namespace gnk::constructions {

std::vector<Polynomial> fit_pieces(const std::function<double(double)>& f, int pieces, int degree,
                                   bool closed) {
  if (pieces < 1 || degree < 0) throw Error(ErrorCode::InvalidParams, "fit needs pieces >= 1, degree >= 0");
  std::vector<Polynomial> out;
  out.reserve(static_cast<std::size_t>(pieces));
  for (int b = 0; b < pieces; ++b) {
    const double lo = static_cast<double>(b) / pieces;
    const double hi = static_cast<double>(b + 1) / pieces;
    out.push_back(geometry::chebyshev_fit([&](double u) { return f(lo + (hi - lo) * u); }, degree));
  }
  for (int b = 0; b + 1 < pieces; ++b) {
    geometry::pin_right_end(out[static_cast<std::size_t>(b)], out[static_cast<std::size_t>(b) + 1][0]);
  }
  if (closed) geometry::pin_right_end(out.back(), out.front()[0]);
  return out;
}

Trajectory circle_rotation_loop(int n, int steps) {
  if (n < 4 || steps < 1) throw Error(ErrorCode::InvalidParams, "circle rotation needs n >= 4, steps >= 1");
  const GroupParams params = GroupParams::make(n, 3);
  // 32 pieces per full turn.
  const int pieces = std::max(4, (32 * steps + n - 1) / n);
  const bool closed = steps % n == 0;
  const double sweep = 2.0 * std::numbers::pi * steps / n;
  std::vector<double> breakpoints;
  for (int b = 0; b <= pieces; ++b) breakpoints.push_back(static_cast<double>(b) / pieces);

  std::vector<std::vector<std::vector<Polynomial>>> coeffs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double phase = 2.0 * std::numbers::pi * i / n;
    auto& point = coeffs[static_cast<std::size_t>(i)];
    point.push_back(fit_pieces([&](double t) { return std::cos(phase + sweep * t); }, pieces, 7, closed));
    point.push_back(fit_pieces([&](double t) { return std::sin(phase + sweep * t); }, pieces, 7, closed));
  }
  return Trajectory(params, Mode::Affine, std::move(breakpoints), std::move(coeffs));
}

Point braid_base_point(int index) {
  // Integer abscissae make lines through base pairs meet on the lasso
  // tails. The jitter phase is quadratic in the index: a linear one keeps
  // x_a + x_b = x_c + x_d and with it the coincidences.
  const double phase = std::numbers::sqrt2 * index * index;
  const double jitter = phase - std::floor(phase);
  const double x = index - 1 + BraidGeometry::kJitter * jitter;
  return {x, BraidGeometry::kCurvature * x * x};
}

Trajectory pure_braid_generator(int i, int j, int n) {
  if (!(1 <= i && i < j && j <= n)) throw Error(ErrorCode::InvalidParams, "need 1 <= i < j <= n");
  const GroupParams params = GroupParams::make(n, 3);
  std::vector<Point> base;
  for (int p = 1; p <= n; ++p) base.push_back(braid_base_point(p));
  const Point pi = base[static_cast<std::size_t>(i - 1)];
  const Point pj = base[static_cast<std::size_t>(j - 1)];
  const double top = braid_base_point(n)[1] + BraidGeometry::kClearance;
  const double r = BraidGeometry::kLoopRadius;

  // Lasso: up from x_j, left along the top, once around a box about x_i,
  // then back along the same tail.
  const std::vector<Point> path = {
      pj,
      {pj[0], top},
      {pi[0] - r, top},
      {pi[0] - r, pi[1] - r},
      {pi[0] + r, pi[1] - r},
      {pi[0] + r, top},
      {pj[0], top},
      pj,
  };
  std::vector<std::vector<Point>> waypoints;
  for (const Point& q : path) {
    auto config = base;
    config[static_cast<std::size_t>(j - 1)] = q;
    waypoints.push_back(std::move(config));
  }
  return Trajectory::polygonal(params, Mode::Affine, waypoints);
}

}  // namespace gnk::constructions
