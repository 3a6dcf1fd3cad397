#pragma once

#include <span>
#include <string>
#include <vector>

#include "gnk/group.hpp"
#include "gnk/trajectory.hpp"

namespace gnk::geometry {

struct ScanOptions {
  int samples_per_piece = 2048;
  double root_tol = 1e-12;           ///< bisection width in t
  double simultaneity_tol = 1e-9;    ///< closer events violate "exactly one subset"
  double stability_margin = 1e-7;    ///< relative to max |det| on the piece
  double membership_tol = 1e-9;      ///< endpoint and C'_n spot checks
  int membership_stride = 16;        ///< C'_n spot check every this many samples
  int threads = 0;                   ///< 0: GNK_THREADS or hardware concurrency

  /// Throws InvalidParams unless every field is positive.
  void validate() const;
};

std::string describe(const ScanOptions& opts);

/// One letter of f(γ): the k-subset `subset` becomes affinely (projectively)
/// dependent at time t; `crossing` is the sign of the determinant after t.
struct SingularEvent {
  double t = 0.0;
  Generator subset;
  int crossing = 0;
};

/// Dependence determinant of a k-subset (1-based indices) at time t, rows in
/// increasing index order.
double subset_determinant(const Trajectory& traj, std::span<const int> subset, double t);

/// Time-ordered singular events. Throws SingularEndpoint, LeftC'n,
/// NotStable or GoodPathViolation (with offending times).
std::vector<SingularEvent> scan_events(const Trajectory& traj, const ScanOptions& opts = {});

Word events_to_word(const GroupParams& params, std::span<const SingularEvent> events);

/// f(γ) = a_{m_1} ... a_{m_l}.
Word trajectory_word(const Trajectory& traj, const ScanOptions& opts = {});

/// Worker count honouring ScanOptions::threads and GNK_THREADS.
int worker_count(const ScanOptions& opts);

}  // namespace gnk::geometry
