#pragma once
// Explicit motions: the rotation loop realising an epsilon-element, the lift
// of a motion into one dimension higher, rigid rotations of points on a
// circle, pure braid generators, and the hemisphere lift of planar motions.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gnk/group.hpp"
#include "gnk/random.hpp"
#include "gnk/scan.hpp"
#include "gnk/trajectory.hpp"

namespace gnk::constructions {

using geometry::Mode;
using geometry::Point;
using geometry::Polynomial;
using geometry::ScanOptions;
using geometry::SingularEvent;
using geometry::Trajectory;

/// Piecewise Chebyshev fit of f on a uniform grid of `pieces` pieces over
/// [0,1]. Adjacent pieces meet bit-exactly; with `closed` the last piece ends
/// at the exact start value of the first.
std::vector<Polynomial> fit_pieces(const std::function<double(double)>& f, int pieces, int degree,
                                   bool closed);

// --- rotation loop (k = 4) ----------------------------------------------------

struct RotationLoopOptions {
  int n = 5;
  double delta = 0.05;        ///< radius of the circle traced by x3
  int pieces = 32;            ///< per full turn
  int degree = 7;
  /// Azimuths of x4..xn; empty selects the default spread.
  std::vector<double> azimuths;
};

struct RotationLoop {
  Trajectory trajectory;
  double start_azimuth = 0.0;
  /// Indices j >= 4 in the order their events occur during one half turn.
  std::vector<int> event_order;
  /// epsilon({1,2,3}, event_order), the element the loop should realise.
  Word expected;
};

/// x1 = (0,0,0), x2 = (0,0,1) fixed, x3 = (δcosθ, δsinθ, 1/2) with θ running
/// once around from the middle of the largest azimuth gap, x4..xn static.
RotationLoop rotation_loop(const RotationLoopOptions& opts = {});

// --- hierarchy lift -----------------------------------------------------------

struct LiftOptions {
  double growth = 8.0;
  int max_rounds = 40;
  ScanOptions scan;
};

struct LiftResult {
  Trajectory trajectory;       ///< n+1 points in RP^k
  std::vector<double> s;       ///< last homogeneous coordinate of points 1..n
  int rounds = 0;              ///< rounds used, starting at 1
  std::vector<SingularEvent> input_events;
  std::vector<SingularEvent> lifted_events;
};

/// Point j gets its homogeneous coordinates extended by s_j, point n+1 is
/// (0:...:0:1). Round r tries s_j = growth^(r (j-1)) until the lifted events
/// are exactly {(t, m ∪ {n+1})}. Throws LiftFailed after max_rounds.
LiftResult hierarchy_lift(const Trajectory& traj, const LiftOptions& opts = {});

/// The lifted motion for explicit constants s (no verification).
Trajectory lift_with(const Trajectory& traj, const std::vector<double>& s);

// --- circles --------------------------------------------------------------------

/// n points equally spaced on the unit circle rotated rigidly by
/// steps * 2π/n. steps = n is the full turn (a pure braid).
Trajectory circle_rotation_loop(int n, int steps);

/// Named geometry of pure_braid_generator.
struct BraidGeometry {
  static constexpr double kCurvature = 0.1;   ///< base point p at (x_p, kCurvature x_p^2), x_p ≈ p-1
  static constexpr double kLoopRadius = 0.37; ///< half width of the box around point i
  static constexpr double kClearance = 0.83;  ///< height of the top edge above all points
  static constexpr double kJitter = 0.1;      ///< scale of the abscissa offsets
};

Point braid_base_point(int index);

/// Point j travels a polygonal loop around point i, enclosing no other base
/// point; base points lie on a parabola so no three start collinear.
Trajectory pure_braid_generator(int i, int j, int n);

// --- hemisphere lift ----------------------------------------------------------

enum class HemisphereChart {
  Stereographic,  ///< (2x, 2y, 1 - r^2) / (1 + r^2): circles stay circles
  Vertical,       ///< (x, y, sqrt(1 - r^2))
};

struct HemisphereOptions {
  HemisphereChart chart = HemisphereChart::Stereographic;
  double margin = 0.05;       ///< points must keep |p| < 1 - margin
  int degree = 10;
  double max_fit_error = 1e-10;
  int max_subdivisions = 256; ///< per input piece
};

struct HemisphereLift {
  Trajectory trajectory;  ///< k = 4, affine R^3
  double fit_error = 0.0; ///< measured max deviation from the exact chart
};

/// Planar (k = 3 affine) motion -> motion on the upper unit hemisphere,
/// params (n, 4). Throws DiscViolation, or LiftFailed if the fit budget is
/// not met.
HemisphereLift hemisphere_lift(const Trajectory& planar, const HemisphereOptions& opts = {});

/// Times at which 4 planar points are concyclic (or collinear), via the
/// determinant with rows (x^2+y^2, x, y, 1), found by sampling and
/// bisection directly on the planar motion.
std::vector<SingularEvent> concyclicity_events(const Trajectory& planar, const ScanOptions& opts = {});

// --- random motions -------------------------------------------------------------

/// Piecewise-linear affine motion with `steps` legs and waypoints uniform in
/// [-1,1]^(k-1); `start` fixes the first waypoint.
Trajectory random_polygonal(const GroupParams& params, int steps, Rng& rng,
                            const std::optional<std::vector<Point>>& start = std::nullopt,
                            double box = 1.0);

/// Smallest pairwise distance seen on a uniform sample of the motion.
double min_pair_distance(const Trajectory& traj, int samples_per_piece = 256);

/// Draws random polygonal motions until one scans without error and keeps
/// pairs at least min_distance apart. Throws GoodPathViolation after
/// max_attempts.
Trajectory random_clean_polygonal(const GroupParams& params, int steps, Rng& rng,
                                  const ScanOptions& scan = {},
                                  const std::optional<std::vector<Point>>& start = std::nullopt,
                                  double min_distance = 0.01, int max_attempts = 1000);

}  // namespace gnk::constructions
