#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gnk/determinant.hpp"
#include "gnk/group.hpp"
#include "gnk/polynomial.hpp"

namespace gnk::geometry {

/// Affine: points in R^(k-1). Projective: homogeneous lifts in R^k of points
/// of RP^(k-1).
enum class Mode { Affine, Projective };

std::string_view to_string(Mode mode);

inline int ambient_dimension(const GroupParams& params, Mode mode) {
  return mode == Mode::Affine ? params.k - 1 : params.k;
}

struct Configuration {
  GroupParams params;
  Mode mode = Mode::Affine;
  std::vector<Point> points;  ///< n entries, each of ambient_dimension()
};

/// Motion of n points on [0,1]: every coordinate is a polynomial per piece of
/// a shared breakpoint grid 0 = t_0 < ... < t_B = 1, written in the local
/// parameter u = (t - t_b) / (t_{b+1} - t_b).
class Trajectory {
 public:
  /// coeffs[point][coord][piece]. Validates shapes, continuity across
  /// breakpoints (relative tolerance) and, in projective mode, that no lift
  /// comes near the zero vector.
  Trajectory(const GroupParams& params, Mode mode, std::vector<double> breakpoints,
             std::vector<std::vector<std::vector<Polynomial>>> coeffs,
             double continuity_tol = 1e-9);

  /// Constant motion.
  static Trajectory stationary(const Configuration& config);
  /// Piecewise-linear motion through waypoints[step][point], uniform grid.
  static Trajectory polygonal(const GroupParams& params, Mode mode,
                              const std::vector<std::vector<Point>>& waypoints);

  const GroupParams& params() const noexcept { return params_; }
  Mode mode() const noexcept { return mode_; }
  int dimension() const noexcept { return ambient_dimension(params_, mode_); }
  int piece_count() const noexcept { return static_cast<int>(breakpoints_.size()) - 1; }
  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  const Polynomial& coeffs(int point, int coord, int piece) const;
  const std::vector<std::vector<std::vector<Polynomial>>>& all_coeffs() const noexcept {
    return coeffs_;
  }

  /// Piece containing t (the last piece owns t = 1) and local parameter.
  std::pair<int, double> locate(double t) const;
  double coordinate(int point, int coord, int piece, double u) const;
  void point_at(int point, int piece, double u, std::span<double> out) const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  GroupParams params_;
  Mode mode_;
  std::vector<double> breakpoints_;
  std::vector<std::vector<std::vector<Polynomial>>> coeffs_;
};

Configuration eval_trajectory(const Trajectory& traj, double t);

struct MembershipReport {
  /// (k-1)-subsets on a common (k-3)-plane, pairs of coincident points
  /// included; any entry means the configuration left C'_n.
  std::vector<std::vector<int>> degenerate_lower;
  /// k-subsets on a common (k-2)-plane: the configuration is singular.
  std::vector<std::vector<int>> singular;

  bool in_configuration_space() const { return degenerate_lower.empty(); }
  bool nonsingular() const { return singular.empty(); }
  bool clean() const { return in_configuration_space() && nonsingular(); }
};

/// Scale-free degeneracy measures compared against tol.
MembershipReport check_membership(const Configuration& config, double tol = 1e-9);

/// Concatenation on [0,1/2] and [1/2,1]; pieces are reused unchanged.
Trajectory concatenate(const Trajectory& first, const Trajectory& second,
                       double continuity_tol = 1e-9);
/// t -> 1 - t. The new start is bit-identical to the old end and vice versa.
Trajectory reverse(const Trajectory& traj);

/// Adds magnitude * 4t(1-t) * r(t) to every coordinate, r a random
/// combination of Chebyshev polynomials with |r| <= 1 drawn from seed.
/// Endpoints are preserved bit for bit.
Trajectory perturb(const Trajectory& traj, double magnitude, std::uint64_t seed);

/// Affine trajectory -> projective one with homogeneous coordinate 1.
Trajectory to_projective(const Trajectory& traj);

}  // namespace gnk::geometry
