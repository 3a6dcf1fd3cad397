#include <algorithm>
#include <array>
#include <cmath>

#include "gnk/constructions.hpp"
#include "gnk/error.hpp"

namespace gnk::constructions {

namespace {

std::array<double, 3> chart(HemisphereChart kind, double x, double y) {
  const double r2 = x * x + y * y;
  if (kind == HemisphereChart::Vertical) return {x, y, std::sqrt(1.0 - r2)};
  const double w = 1.0 + r2;
  return {2.0 * x / w, 2.0 * y / w, (1.0 - r2) / w};
}

void check_disc(const Trajectory& planar, double margin) {
  constexpr int kSamples = 256;
  const auto bp = planar.breakpoints();
  for (int b = 0; b < planar.piece_count(); ++b) {
    for (int s = 0; s <= kSamples; ++s) {
      const double u = static_cast<double>(s) / kSamples;
      for (int i = 0; i < planar.params().n; ++i) {
        const double x = planar.coordinate(i, 0, b, u);
        const double y = planar.coordinate(i, 1, b, u);
        if (std::hypot(x, y) >= 1.0 - margin) {
          const double t = bp[static_cast<std::size_t>(b)] +
                           (bp[static_cast<std::size_t>(b) + 1] - bp[static_cast<std::size_t>(b)]) * u;
          throw Error(ErrorCode::DiscViolation,
                      "point " + std::to_string(i + 1) + " leaves the disc of radius 1 - margin", {t});
        }
      }
    }
  }
}

}  // namespace

HemisphereLift hemisphere_lift(const Trajectory& planar, const HemisphereOptions& opts) {
  const GroupParams& p = planar.params();
  if (p.k != 3 || planar.mode() != Mode::Affine) {
    throw Error(ErrorCode::InvalidParams, "hemisphere lift takes a planar (k = 3, affine) motion");
  }
  if (!(opts.margin > 0 && opts.margin < 1) || opts.degree < 1 || !(opts.max_fit_error > 0)) {
    throw Error(ErrorCode::InvalidParams, "bad hemisphere options");
  }
  const GroupParams lifted = GroupParams::make(p.n, 4);
  check_disc(planar, opts.margin);

  const auto bp = planar.breakpoints();
  const int input_pieces = planar.piece_count();
  constexpr int kCheck = 64;
  for (int sub = 1; sub <= opts.max_subdivisions; sub *= 2) {
    std::vector<double> breakpoints{0.0};
    for (int b = 0; b < input_pieces; ++b) {
      const double lo = bp[static_cast<std::size_t>(b)];
      const double hi = bp[static_cast<std::size_t>(b) + 1];
      for (int s = 1; s <= sub; ++s) breakpoints.push_back(s == sub ? hi : lo + (hi - lo) * s / sub);
    }

    double error = 0.0;
    std::vector<std::vector<std::vector<Polynomial>>> coeffs(
        static_cast<std::size_t>(p.n), std::vector<std::vector<Polynomial>>(3));
    for (int i = 0; i < p.n; ++i) {
      for (int b = 0; b < input_pieces; ++b) {
        for (int s = 0; s < sub; ++s) {
          const double u0 = static_cast<double>(s) / sub;
          const double du = 1.0 / sub;
          auto exact = [&](double v) {
            const double u = u0 + du * v;
            return chart(opts.chart, planar.coordinate(i, 0, b, u), planar.coordinate(i, 1, b, u));
          };
          for (int c = 0; c < 3; ++c) {
            Polynomial fit = geometry::chebyshev_fit([&](double v) { return exact(v)[static_cast<std::size_t>(c)]; },
                                                     opts.degree);
            for (int q = 0; q <= kCheck; ++q) {
              const double v = static_cast<double>(q) / kCheck;
              error = std::max(error, std::abs(geometry::horner(fit, v) - exact(v)[static_cast<std::size_t>(c)]));
            }
            coeffs[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].push_back(std::move(fit));
          }
        }
      }
      for (auto& coord : coeffs[static_cast<std::size_t>(i)]) {
        for (std::size_t q = 0; q + 1 < coord.size(); ++q) geometry::pin_right_end(coord[q], coord[q + 1][0]);
      }
    }
    if (error <= opts.max_fit_error) {
      return HemisphereLift{Trajectory(lifted, Mode::Affine, std::move(breakpoints), std::move(coeffs)), error};
    }
  }
  throw Error(ErrorCode::LiftFailed, "hemisphere fit did not reach the error budget");
}

std::vector<SingularEvent> concyclicity_events(const Trajectory& planar, const ScanOptions& opts) {
  opts.validate();
  const GroupParams& p = planar.params();
  if (p.k != 3 || planar.mode() != Mode::Affine) {
    throw Error(ErrorCode::InvalidParams, "concyclicity needs a planar (k = 3, affine) motion");
  }
  auto det_at = [&](const std::vector<int>& idx, double t) {
    const auto [piece, u] = planar.locate(t);
    std::array<double, 16> m{};
    for (std::size_t r = 0; r < 4; ++r) {
      const double x = planar.coordinate(idx[r] - 1, 0, piece, u);
      const double y = planar.coordinate(idx[r] - 1, 1, piece, u);
      m[4 * r] = x * x + y * y;
      m[4 * r + 1] = x;
      m[4 * r + 2] = y;
      m[4 * r + 3] = 1.0;
    }
    return geometry::determinant_in_place(m, 4);
  };

  const auto bp = planar.breakpoints();
  std::vector<double> times;
  for (int b = 0; b < planar.piece_count(); ++b) {
    const double lo = bp[static_cast<std::size_t>(b)];
    const double hi = bp[static_cast<std::size_t>(b) + 1];
    for (int s = 0; s < opts.samples_per_piece; ++s) times.push_back(lo + (hi - lo) * s / opts.samples_per_piece);
  }
  times.push_back(1.0);

  std::vector<SingularEvent> events;
  for (Generator g : subsets_of((IndexMask{1} << p.n) - 1, 4)) {
    const auto idx = g.indices();
    double prev_t = times[0];
    double prev = det_at(idx, prev_t);
    for (std::size_t s = 1; s < times.size(); ++s) {
      const double cur = det_at(idx, times[s]);
      if (cur == 0.0) continue;
      if (prev != 0.0 && (cur > 0) != (prev > 0)) {
        double a = prev_t;
        double b = times[s];
        while (b - a > opts.root_tol) {
          const double mid = a + (b - a) / 2;
          if (!(mid > a && mid < b)) break;
          const double f = det_at(idx, mid);
          if (f == 0.0) {
            a = b = mid;
            break;
          }
          ((f > 0) == (prev > 0) ? a : b) = mid;
        }
        events.push_back({a + (b - a) / 2, g, cur > 0 ? 1 : -1});
      }
      prev = cur;
      prev_t = times[s];
    }
  }
  std::stable_sort(events.begin(), events.end(), [](const auto& x, const auto& y) { return x.t < y.t; });
  return events;
}

}  // namespace gnk::constructions
