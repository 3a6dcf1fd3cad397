#include "gnk/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "gnk/error.hpp"
#include "gnk/random.hpp"

namespace gnk::geometry {

namespace {

constexpr int kLiftCheckSamples = 64;

IndexMask all_points(int n) { return (IndexMask{1} << n) - 1; }

std::vector<int> zero_based(Generator g) {
  auto idx = g.indices();
  for (int& i : idx) --i;
  return idx;
}

std::vector<int> one_based(const std::vector<int>& idx) {
  auto out = idx;
  for (int& i : out) ++i;
  return out;
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace

std::string_view to_string(Mode mode) { return mode == Mode::Affine ? "affine" : "projective"; }

Trajectory::Trajectory(const GroupParams& params, Mode mode, std::vector<double> breakpoints,
                       std::vector<std::vector<std::vector<Polynomial>>> coeffs, double continuity_tol)
    : params_(params), mode_(mode), breakpoints_(std::move(breakpoints)), coeffs_(std::move(coeffs)) {
  const int pieces = piece_count();
  if (pieces < 1 || breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
    throw Error(ErrorCode::ParseError, "breakpoints must run from 0 to 1");
  }
  for (int b = 0; b < pieces; ++b) {
    if (!(breakpoints_[static_cast<std::size_t>(b)] < breakpoints_[static_cast<std::size_t>(b) + 1])) {
      throw Error(ErrorCode::ParseError, "breakpoints must be strictly increasing");
    }
  }
  const int dim = dimension();
  if (static_cast<int>(coeffs_.size()) != params_.n) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(params_.n) + " points");
  }
  for (const auto& point : coeffs_) {
    if (static_cast<int>(point.size()) != dim) {
      throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(dim) + " coordinates per point");
    }
    for (const auto& coord : point) {
      if (static_cast<int>(coord.size()) != pieces) {
        throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(pieces) + " pieces per coordinate");
      }
      for (const auto& poly : coord) {
        if (poly.empty()) throw Error(ErrorCode::DimensionMismatch, "empty coefficient list");
      }
    }
  }

  for (int i = 0; i < params_.n; ++i) {
    for (int c = 0; c < dim; ++c) {
      for (int b = 1; b < pieces; ++b) {
        const double left = coordinate(i, c, b - 1, 1.0);
        const double right = coordinate(i, c, b, 0.0);
        if (relative_gap(left, right) > continuity_tol) {
          throw Error(ErrorCode::Discontinuous,
                      "point " + std::to_string(i + 1) + " coordinate " + std::to_string(c + 1) +
                          " jumps at t=" + std::to_string(breakpoints_[static_cast<std::size_t>(b)]),
                      {breakpoints_[static_cast<std::size_t>(b)]});
        }
      }
    }
  }

  if (mode_ == Mode::Projective) {
    // Sampled minimum of |v| minus the largest possible dip between samples.
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (int i = 0; i < params_.n; ++i) {
      for (int b = 0; b < pieces; ++b) {
        double slope = 0.0;
        for (int c = 0; c < dim; ++c) slope += std::pow(derivative_bound(this->coeffs(i, c, b)), 2);
        slope = std::sqrt(slope);
        double lowest = INFINITY;
        for (int s = 0; s <= kLiftCheckSamples; ++s) {
          point_at(i, b, static_cast<double>(s) / kLiftCheckSamples, v);
          double norm = 0.0;
          for (double x : v) norm += x * x;
          lowest = std::min(lowest, std::sqrt(norm));
        }
        if (!(lowest - slope / (2.0 * kLiftCheckSamples) > 0.0)) {
          throw Error(ErrorCode::ZeroVector,
                      "homogeneous lift of point " + std::to_string(i + 1) + " may vanish on piece " +
                          std::to_string(b + 1));
        }
      }
    }
  }
}

Trajectory Trajectory::stationary(const Configuration& config) {
  std::vector<std::vector<std::vector<Polynomial>>> coeffs;
  for (const Point& p : config.points) {
    std::vector<std::vector<Polynomial>> point;
    for (double x : p) point.push_back({Polynomial{x}});
    coeffs.push_back(std::move(point));
  }
  return Trajectory(config.params, config.mode, {0.0, 1.0}, std::move(coeffs));
}

Trajectory Trajectory::polygonal(const GroupParams& params, Mode mode,
                                 const std::vector<std::vector<Point>>& waypoints) {
  const int steps = static_cast<int>(waypoints.size()) - 1;
  if (steps < 1) throw Error(ErrorCode::DimensionMismatch, "need at least two waypoints");
  const int dim = ambient_dimension(params, mode);
  std::vector<double> breakpoints;
  for (int s = 0; s <= steps; ++s) breakpoints.push_back(static_cast<double>(s) / steps);
  std::vector<std::vector<std::vector<Polynomial>>> coeffs(
      static_cast<std::size_t>(params.n),
      std::vector<std::vector<Polynomial>>(static_cast<std::size_t>(dim)));
  for (int s = 0; s < steps; ++s) {
    const auto& from = waypoints[static_cast<std::size_t>(s)];
    const auto& to = waypoints[static_cast<std::size_t>(s) + 1];
    if (static_cast<int>(from.size()) != params.n || static_cast<int>(to.size()) != params.n) {
      throw Error(ErrorCode::DimensionMismatch, "every waypoint needs n points");
    }
    for (int i = 0; i < params.n; ++i) {
      for (int c = 0; c < dim; ++c) {
        const double a = from[static_cast<std::size_t>(i)].at(static_cast<std::size_t>(c));
        const double b = to[static_cast<std::size_t>(i)].at(static_cast<std::size_t>(c));
        Polynomial piece{a, b - a};
        pin_right_end(piece, b);
        coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].push_back(std::move(piece));
      }
    }
  }
  return Trajectory(params, mode, std::move(breakpoints), std::move(coeffs));
}

const Polynomial& Trajectory::coeffs(int point, int coord, int piece) const {
  return coeffs_[static_cast<std::size_t>(point)][static_cast<std::size_t>(coord)][static_cast<std::size_t>(piece)];
}

std::pair<int, double> Trajectory::locate(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::TimeOutOfRange, "t=" + std::to_string(t) + " outside [0,1]", {t});
  }
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  int piece = static_cast<int>(it - breakpoints_.begin()) - 1;
  piece = std::clamp(piece, 0, piece_count() - 1);
  const double lo = breakpoints_[static_cast<std::size_t>(piece)];
  const double hi = breakpoints_[static_cast<std::size_t>(piece) + 1];
  const double u = (t == hi) ? 1.0 : std::clamp((t - lo) / (hi - lo), 0.0, 1.0);
  return {piece, u};
}

double Trajectory::coordinate(int point, int coord, int piece, double u) const {
  return eval_piece(coeffs(point, coord, piece), u);
}

void Trajectory::point_at(int point, int piece, double u, std::span<double> out) const {
  for (int c = 0; c < dimension(); ++c) out[static_cast<std::size_t>(c)] = coordinate(point, c, piece, u);
}

Configuration eval_trajectory(const Trajectory& traj, double t) {
  const auto [piece, u] = traj.locate(t);
  Configuration config{traj.params(), traj.mode(), {}};
  for (int i = 0; i < traj.params().n; ++i) {
    Point p(static_cast<std::size_t>(traj.dimension()));
    traj.point_at(i, piece, u, p);
    config.points.push_back(std::move(p));
  }
  return config;
}

MembershipReport check_membership(const Configuration& config, double tol) {
  const int n = config.params.n;
  const int k = config.params.k;
  MembershipReport report;

  std::vector<Generator> pairs = subsets_of(all_points(n), 2);
  if (config.mode == Mode::Affine) {
    double diam = 0.0;
    for (Generator g : pairs) {
      const auto idx = zero_based(g);
      double d = 0.0;
      for (std::size_t c = 0; c < config.points[0].size(); ++c) {
        d += std::pow(config.points[static_cast<std::size_t>(idx[0])][c] - config.points[static_cast<std::size_t>(idx[1])][c], 2);
      }
      diam = std::max(diam, std::sqrt(d));
    }
    for (Generator g : pairs) {
      const auto idx = zero_based(g);
      double d = 0.0;
      for (std::size_t c = 0; c < config.points[0].size(); ++c) {
        d += std::pow(config.points[static_cast<std::size_t>(idx[0])][c] - config.points[static_cast<std::size_t>(idx[1])][c], 2);
      }
      if (diam == 0.0 || std::sqrt(d) / diam < tol) report.degenerate_lower.push_back(one_based(idx));
    }
  } else {
    for (Generator g : pairs) {
      const auto idx = zero_based(g);
      const std::vector<Point> v{config.points[static_cast<std::size_t>(idx[0])],
                                 config.points[static_cast<std::size_t>(idx[1])]};
      if (normalized_volume(v) < tol) report.degenerate_lower.push_back(one_based(idx));
    }
  }

  // Affine: a subset is degenerate when the differences from its first point
  // are dependent. Projective: when the lifts themselves are.
  auto measure = [&](const std::vector<int>& idx) {
    std::vector<Point> v;
    if (config.mode == Mode::Affine) {
      const Point& base = config.points[static_cast<std::size_t>(idx[0])];
      for (std::size_t j = 1; j < idx.size(); ++j) {
        Point d = config.points[static_cast<std::size_t>(idx[j])];
        for (std::size_t c = 0; c < d.size(); ++c) d[c] -= base[c];
        v.push_back(std::move(d));
      }
    } else {
      for (int i : idx) v.push_back(config.points[static_cast<std::size_t>(i)]);
    }
    return normalized_volume(v);
  };

  if (k - 1 > 2) {
    for (Generator g : subsets_of(all_points(n), k - 1)) {
      const auto idx = zero_based(g);
      if (measure(idx) < tol) report.degenerate_lower.push_back(one_based(idx));
    }
  }
  for (Generator g : subsets_of(all_points(n), k)) {
    const auto idx = zero_based(g);
    if (measure(idx) < tol) report.singular.push_back(one_based(idx));
  }
  return report;
}

Trajectory concatenate(const Trajectory& first, const Trajectory& second, double continuity_tol) {
  if (first.params() != second.params() || first.mode() != second.mode()) {
    throw Error(ErrorCode::ParamsMismatch, "trajectories differ in params or mode");
  }
  const Configuration end = eval_trajectory(first, 1.0);
  const Configuration start = eval_trajectory(second, 0.0);
  for (std::size_t i = 0; i < end.points.size(); ++i) {
    for (std::size_t c = 0; c < end.points[i].size(); ++c) {
      if (relative_gap(end.points[i][c], start.points[i][c]) > continuity_tol) {
        throw Error(ErrorCode::EndpointMismatch, "end of the first path differs from start of the second");
      }
    }
  }
  std::vector<double> breakpoints;
  for (double t : first.breakpoints()) breakpoints.push_back(t / 2.0);
  for (double t : second.breakpoints().subspan(1)) breakpoints.push_back(t == 1.0 ? 1.0 : 0.5 + t / 2.0);

  auto coeffs = first.all_coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    for (std::size_t c = 0; c < coeffs[i].size(); ++c) {
      const auto& tail = second.all_coeffs()[i][c];
      coeffs[i][c].insert(coeffs[i][c].end(), tail.begin(), tail.end());
    }
  }
  return Trajectory(first.params(), first.mode(), std::move(breakpoints), std::move(coeffs), continuity_tol);
}

Trajectory reverse(const Trajectory& traj) {
  const auto bp = traj.breakpoints();
  const std::size_t last = bp.size() - 1;
  std::vector<double> breakpoints;
  for (std::size_t j = 0; j <= last; ++j) breakpoints.push_back(1.0 - bp[last - j]);

  auto coeffs = traj.all_coeffs();
  for (auto& point : coeffs) {
    for (auto& coord : point) {
      const double start = coord.front().front();
      std::reverse(coord.begin(), coord.end());
      for (auto& piece : coord) piece = poly_reflect(piece);
      pin_right_end(coord.back(), start);
    }
  }
  return Trajectory(traj.params(), traj.mode(), std::move(breakpoints), std::move(coeffs));
}

Trajectory perturb(const Trajectory& traj, double magnitude, std::uint64_t seed) {
  if (magnitude == 0.0) return traj;
  constexpr int kProfileDegree = 3;
  Rng rng(seed);
  const auto bp = traj.breakpoints();
  auto coeffs = traj.all_coeffs();
  const Polynomial bump{0.0, 4.0, -4.0};
  const Polynomial x{-1.0, 2.0};
  for (auto& point : coeffs) {
    for (auto& coord : point) {
      // r(t) = sum c_j T_j(2t - 1) / sum |c_j|, so |r| <= 1 on [0,1].
      Polynomial profile;
      Polynomial t_prev{1.0};
      Polynomial t_cur = x;
      double norm = 0.0;
      for (int j = 0; j <= kProfileDegree; ++j) {
        const double c = rng.uniform(-1.0, 1.0);
        norm += std::abs(c);
        if (j == 0) {
          profile = poly_add(profile, poly_scale(t_prev, c));
        } else if (j == 1) {
          profile = poly_add(profile, poly_scale(t_cur, c));
        } else {
          Polynomial t_next = poly_add(poly_scale(poly_mul(x, t_cur), 2.0), poly_scale(t_prev, -1.0));
          profile = poly_add(profile, poly_scale(t_next, c));
          t_prev = std::move(t_cur);
          t_cur = std::move(t_next);
        }
      }
      const Polynomial delta = poly_scale(poly_mul(bump, profile), magnitude / norm);
      const double end = eval_piece(coord.back(), 1.0);
      for (std::size_t b = 0; b < coord.size(); ++b) {
        coord[b] = poly_add(coord[b], poly_compose_affine(delta, bp[b], bp[b + 1] - bp[b]));
      }
      pin_right_end(coord.back(), end);
    }
  }
  return Trajectory(traj.params(), traj.mode(), {bp.begin(), bp.end()}, std::move(coeffs));
}

Trajectory to_projective(const Trajectory& traj) {
  if (traj.mode() == Mode::Projective) return traj;
  auto coeffs = traj.all_coeffs();
  for (auto& point : coeffs) {
    point.emplace_back(static_cast<std::size_t>(traj.piece_count()), Polynomial{1.0});
  }
  const auto bp = traj.breakpoints();
  return Trajectory(traj.params(), Mode::Projective, {bp.begin(), bp.end()}, std::move(coeffs));
}

}  // namespace gnk::geometry
