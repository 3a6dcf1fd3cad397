#include <cmath>

#include "gnk/constructions.hpp"
#include "gnk/error.hpp"

namespace gnk::constructions {

namespace {

bool is_scan_failure(ErrorCode code) {
  return code == ErrorCode::GoodPathViolation || code == ErrorCode::NotStable ||
         code == ErrorCode::SingularEndpoint || code == ErrorCode::LeftConfigurationSpace;
}

bool matches(const std::vector<SingularEvent>& input, const std::vector<SingularEvent>& lifted, int n,
             double tol) {
  if (input.size() != lifted.size()) return false;
  const IndexMask top = IndexMask{1} << n;
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (lifted[i].subset.mask() != (input[i].subset.mask() | top)) return false;
    if (std::abs(lifted[i].t - input[i].t) > tol) return false;
  }
  return true;
}

}  // namespace

Trajectory lift_with(const Trajectory& traj, const std::vector<double>& s) {
  const GroupParams& p = traj.params();
  if (static_cast<int>(s.size()) != p.n) throw Error(ErrorCode::DimensionMismatch, "need one s_j per point");
  const GroupParams lifted = GroupParams::make(p.n + 1, p.k + 1);
  const int pieces = traj.piece_count();
  auto constant = [&](double value) {
    return std::vector<Polynomial>(static_cast<std::size_t>(pieces), Polynomial{value});
  };

  std::vector<std::vector<std::vector<Polynomial>>> coeffs;
  for (int i = 0; i < p.n; ++i) {
    auto point = traj.all_coeffs()[static_cast<std::size_t>(i)];
    if (traj.mode() == Mode::Affine) point.push_back(constant(1.0));
    point.push_back(constant(s[static_cast<std::size_t>(i)]));
    coeffs.push_back(std::move(point));
  }
  std::vector<std::vector<Polynomial>> apex(static_cast<std::size_t>(p.k), constant(0.0));
  apex.push_back(constant(1.0));
  coeffs.push_back(std::move(apex));
  const auto bp = traj.breakpoints();
  return Trajectory(lifted, Mode::Projective, std::vector<double>(bp.begin(), bp.end()), std::move(coeffs));
}

LiftResult hierarchy_lift(const Trajectory& traj, const LiftOptions& opts) {
  if (!(opts.growth > 1.0) || opts.max_rounds < 1) {
    throw Error(ErrorCode::InvalidParams, "lift needs growth > 1 and max_rounds >= 1");
  }
  const int n = traj.params().n;
  const auto input_events = geometry::scan_events(traj, opts.scan);

  std::string first_reason;
  std::string last_reason = "no round attempted";
  for (int round = 1; round <= opts.max_rounds; ++round) {
    // Each s_j dominates all earlier ones by growth^round.
    std::vector<double> s;
    for (int j = 0; j < n; ++j) s.push_back(std::pow(opts.growth, static_cast<double>(round) * j));
    if (!std::isfinite(s.back())) break;
    const Trajectory lifted = lift_with(traj, s);
    try {
      auto lifted_events = geometry::scan_events(lifted, opts.scan);
      if (matches(input_events, lifted_events, n, opts.scan.simultaneity_tol)) {
        return LiftResult{lifted, std::move(s), round, input_events, std::move(lifted_events)};
      }
      last_reason = std::to_string(lifted_events.size()) + " lifted events for " +
                    std::to_string(input_events.size()) + " input events";
    } catch (const Error& e) {
      if (!is_scan_failure(e.code())) throw;
      last_reason = e.what();
    }
    if (round == 1) first_reason = last_reason;
  }
  throw Error(ErrorCode::LiftFailed, "no s_j found in " + std::to_string(opts.max_rounds) +
                                         " rounds; round 1: " + first_reason +
                                         "; last round: " + last_reason);
}

}  // namespace gnk::constructions
