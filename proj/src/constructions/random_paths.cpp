#include <algorithm>
#include <cmath>
#include <limits>

#include "gnk/constructions.hpp"
#include "gnk/error.hpp"

namespace gnk::constructions {

Trajectory random_polygonal(const GroupParams& params, int steps, Rng& rng,
                            const std::optional<std::vector<Point>>& start, double box) {
  if (steps < 1) throw Error(ErrorCode::InvalidParams, "need at least one step");
  const int dim = params.k - 1;
  auto draw = [&] {
    std::vector<Point> config;
    for (int i = 0; i < params.n; ++i) {
      Point p;
      for (int c = 0; c < dim; ++c) p.push_back(rng.uniform(-box, box));
      config.push_back(std::move(p));
    }
    return config;
  };
  std::vector<std::vector<Point>> waypoints;
  waypoints.push_back(start ? *start : draw());
  for (int s = 0; s < steps; ++s) waypoints.push_back(draw());
  return Trajectory::polygonal(params, Mode::Affine, waypoints);
}

double min_pair_distance(const Trajectory& traj, int samples_per_piece) {
  const int n = traj.params().n;
  const int dim = traj.dimension();
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> pos(static_cast<std::size_t>(n * dim));
  for (int b = 0; b < traj.piece_count(); ++b) {
    for (int s = 0; s <= samples_per_piece; ++s) {
      const double u = static_cast<double>(s) / samples_per_piece;
      for (int i = 0; i < n; ++i) {
        traj.point_at(i, b, u, std::span<double>(pos).subspan(static_cast<std::size_t>(i * dim), static_cast<std::size_t>(dim)));
      }
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          double d2 = 0.0;
          for (int c = 0; c < dim; ++c) {
            const double d = pos[static_cast<std::size_t>(i * dim + c)] - pos[static_cast<std::size_t>(j * dim + c)];
            d2 += d * d;
          }
          best = std::min(best, std::sqrt(d2));
        }
      }
    }
  }
  return best;
}

Trajectory random_clean_polygonal(const GroupParams& params, int steps, Rng& rng, const ScanOptions& scan,
                                  const std::optional<std::vector<Point>>& start, double min_distance,
                                  int max_attempts) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Trajectory traj = random_polygonal(params, steps, rng, start);
    if (min_pair_distance(traj) < min_distance) continue;
    try {
      geometry::scan_events(traj, scan);
      return traj;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InvalidParams) throw;
    }
  }
  throw Error(ErrorCode::GoodPathViolation,
              "no clean random motion in " + std::to_string(max_attempts) + " attempts");
}

}  // namespace gnk::constructions
