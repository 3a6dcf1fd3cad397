#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "gnk/constructions.hpp"
#include "gnk/error.hpp"

namespace gnk::constructions {

namespace {

constexpr double kPi = std::numbers::pi;

double mod(double x, double period) {
  const double r = std::fmod(x, period);
  return r < 0 ? r + period : r;
}

std::vector<double> default_azimuths(int n) {
  const double step = std::min(0.35, 1.5 / (n - 3));
  std::vector<double> out;
  for (int j = 4; j <= n; ++j) out.push_back(0.3 + (j - 4) * step);
  return out;
}

// Static point j >= 4: radius and height vary so that no four of the
// points become coplanar by accident.
Point static_point(int j, double azimuth) {
  const double radius = 1.0 + 0.15 * (j - 4);
  const double golden = 0.6180339887498949;
  const double height = 0.1 + 0.8 * std::fmod(golden * (j - 3), 1.0);
  return {radius * std::cos(azimuth), radius * std::sin(azimuth), height};
}

}  // namespace

RotationLoop rotation_loop(const RotationLoopOptions& opts) {
  const int n = opts.n;
  if (n < 5) throw Error(ErrorCode::InvalidParams, "rotation loop needs n >= 5");
  if (!(opts.delta > 0) || opts.pieces < 4 || opts.degree < 1) {
    throw Error(ErrorCode::InvalidParams, "rotation loop needs delta > 0, pieces >= 4, degree >= 1");
  }
  const GroupParams params = GroupParams::make(n, 4);
  const std::vector<double> azimuths = opts.azimuths.empty() ? default_azimuths(n) : opts.azimuths;
  if (static_cast<int>(azimuths.size()) != n - 3) {
    throw Error(ErrorCode::InvalidParams, "need one azimuth per point 4..n");
  }

  // Events occur when θ ≡ azimuth (mod π); start in the middle of the
  // widest gap between those residues.
  std::vector<double> residues;
  for (double a : azimuths) residues.push_back(mod(a, kPi));
  std::vector<double> sorted = residues;
  std::sort(sorted.begin(), sorted.end());
  double best_gap = -1.0;
  double min_gap = kPi;
  double start = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double lo = sorted[i];
    const double hi = (i + 1 < sorted.size()) ? sorted[i + 1] : sorted.front() + kPi;
    min_gap = std::min(min_gap, hi - lo);
    if (hi - lo > best_gap) {
      best_gap = hi - lo;
      start = mod(lo + (hi - lo) / 2.0, kPi);
    }
  }
  // Closer residues would put two events within the scan's simultaneity window.
  if (min_gap <= 1e-6) throw Error(ErrorCode::InvalidParams, "azimuths must be distinct modulo pi");

  std::vector<int> order(static_cast<std::size_t>(n - 3));
  std::iota(order.begin(), order.end(), 4);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return mod(residues[static_cast<std::size_t>(a - 4)] - start, kPi) <
           mod(residues[static_cast<std::size_t>(b - 4)] - start, kPi);
  });

  const int pieces = opts.pieces;
  std::vector<double> breakpoints;
  for (int b = 0; b <= pieces; ++b) breakpoints.push_back(static_cast<double>(b) / pieces);
  auto constant = [&](double value) {
    return std::vector<Polynomial>(static_cast<std::size_t>(pieces), Polynomial{value});
  };

  std::vector<std::vector<std::vector<Polynomial>>> coeffs;
  coeffs.push_back({constant(0.0), constant(0.0), constant(0.0)});
  coeffs.push_back({constant(0.0), constant(0.0), constant(1.0)});
  const double delta = opts.delta;
  coeffs.push_back({
      fit_pieces([&](double t) { return delta * std::cos(start + 2.0 * kPi * t); }, pieces, opts.degree, true),
      fit_pieces([&](double t) { return delta * std::sin(start + 2.0 * kPi * t); }, pieces, opts.degree, true),
      constant(0.5),
  });
  for (int j = 4; j <= n; ++j) {
    const Point p = static_point(j, azimuths[static_cast<std::size_t>(j - 4)]);
    coeffs.push_back({constant(p[0]), constant(p[1]), constant(p[2])});
  }

  const std::vector<int> fixed = {1, 2, 3};
  Word expected = epsilon_element(params, fixed, order);
  return RotationLoop{Trajectory(params, Mode::Affine, std::move(breakpoints), std::move(coeffs)), start,
                      std::move(order), std::move(expected)};
}

}  // namespace gnk::constructions
