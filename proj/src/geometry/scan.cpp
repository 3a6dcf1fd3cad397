#include "gnk/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "gnk/error.hpp"

namespace gnk::geometry {

namespace {

int sign(double x) { return (x > 0.0) - (x < 0.0); }

IndexMask all_points(int n) { return (IndexMask{1} << n) - 1; }

// Runs body(begin, end) over [0, count) split into contiguous chunks and
// rethrows the first failure by chunk order.
template <typename Body>
void parallel_for(std::size_t count, int workers, Body&& body) {
  workers = std::max(1, std::min<int>(workers, static_cast<int>(count)));
  if (workers == 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::jthread> pool;
  const std::size_t chunk = (count + static_cast<std::size_t>(workers) - 1) / static_cast<std::size_t>(workers);
  for (int w = 0; w < workers; ++w) {
    const std::size_t begin = static_cast<std::size_t>(w) * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&, w, begin, end] {
      try {
        if (begin < end) body(begin, end);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  pool.clear();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Fills a k x k matrix for one subset from precomputed positions.
class RowBuilder {
 public:
  RowBuilder(Mode mode, int k) : mode_(mode), k_(k), matrix_(static_cast<std::size_t>(k * k)) {}

  double det(std::span<const double> positions, int dim, std::span<const int> subset) {
    std::size_t w = 0;
    for (int i : subset) {
      const auto row = positions.subspan(static_cast<std::size_t>(i * dim), static_cast<std::size_t>(dim));
      for (double x : row) matrix_[w++] = x;
      if (mode_ == Mode::Affine) matrix_[w++] = 1.0;
    }
    return determinant_in_place(matrix_, k_);
  }

 private:
  Mode mode_;
  int k_;
  std::vector<double> matrix_;
};

struct SubsetScan {
  std::vector<SingularEvent> events;
  std::exception_ptr error;
};

}  // namespace

void ScanOptions::validate() const {
  if (samples_per_piece <= 0 || !(root_tol > 0) || !(simultaneity_tol > 0) || !(stability_margin > 0) ||
      !(membership_tol > 0) || membership_stride <= 0 || threads < 0) {
    throw Error(ErrorCode::InvalidParams, "scan options must be positive");
  }
}

std::string describe(const ScanOptions& opts) {
  std::ostringstream out;
  out << "samples_per_piece = " << opts.samples_per_piece << "\n"
      << "root_tol = " << opts.root_tol << "\n"
      << "simultaneity_tol = " << opts.simultaneity_tol << "\n"
      << "stability_margin = " << opts.stability_margin << "\n"
      << "membership_tol = " << opts.membership_tol << "\n"
      << "membership_stride = " << opts.membership_stride << "\n"
      << "threads = " << worker_count(opts) << "\n";
  return out.str();
}

int worker_count(const ScanOptions& opts) {
  if (opts.threads > 0) return opts.threads;
  int hw = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("GNK_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) hw = std::min(hw, cap);
  }
  return hw;
}

double subset_determinant(const Trajectory& traj, std::span<const int> subset, double t) {
  const int dim = traj.dimension();
  const int k = traj.params().k;
  if (static_cast<int>(subset.size()) != k) {
    throw Error(ErrorCode::WrongCardinality, "subset must have k indices");
  }
  const auto [piece, u] = traj.locate(t);
  std::vector<double> positions(static_cast<std::size_t>(k * dim));
  std::vector<int> local(subset.size());
  for (std::size_t j = 0; j < subset.size(); ++j) {
    traj.point_at(subset[j] - 1, piece, u,
                  std::span<double>(positions).subspan(j * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)));
    local[j] = static_cast<int>(j);
  }
  RowBuilder rows(traj.mode(), k);
  return rows.det(positions, dim, local);
}

std::vector<SingularEvent> scan_events(const Trajectory& traj, const ScanOptions& opts) {
  opts.validate();
  const GroupParams params = traj.params();
  const int n = params.n;
  const int k = params.k;
  const int dim = traj.dimension();
  const Mode mode = traj.mode();
  const int workers = worker_count(opts);

  for (double t : {0.0, 1.0}) {
    const auto report = check_membership(eval_trajectory(traj, t), opts.membership_tol);
    if (!report.in_configuration_space()) {
      throw Error(ErrorCode::LeftConfigurationSpace, "endpoint outside C'_n at t=" + std::to_string(t), {t});
    }
    if (!report.nonsingular()) {
      throw Error(ErrorCode::SingularEndpoint, "endpoint is singular at t=" + std::to_string(t), {t});
    }
  }

  const auto subset_gens = subsets_of(all_points(n), k);
  std::vector<std::vector<int>> subsets;
  for (Generator g : subset_gens) {
    auto idx = g.indices();
    for (int& i : idx) --i;
    subsets.push_back(std::move(idx));
  }
  std::vector<std::vector<int>> lower_subsets;
  for (Generator g : subsets_of(all_points(n), std::max(2, k - 1))) {
    auto idx = g.indices();
    for (int& i : idx) --i;
    lower_subsets.push_back(std::move(idx));
  }

  const int pieces = traj.piece_count();
  const int grid = opts.samples_per_piece;
  const std::size_t samples = static_cast<std::size_t>(pieces) * static_cast<std::size_t>(grid) + 1;
  const auto bp = traj.breakpoints();
  auto sample_site = [&](std::size_t s) {
    const int piece = std::min(static_cast<int>(s / static_cast<std::size_t>(grid)), pieces - 1);
    const double u = static_cast<double>(s - static_cast<std::size_t>(piece) * static_cast<std::size_t>(grid)) / grid;
    return std::pair{piece, u};
  };
  std::vector<double> times(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto [piece, u] = sample_site(s);
    const double lo = bp[static_cast<std::size_t>(piece)];
    const double hi = bp[static_cast<std::size_t>(piece) + 1];
    times[s] = (u == 1.0) ? hi : lo + (hi - lo) * u;
  }

  // Determinant samples, subset-major; C'_n spot check on a coarser stride.
  std::vector<double> values(subsets.size() * samples);
  std::vector<std::size_t> first_violation(static_cast<std::size_t>(workers) + 1, samples);
  parallel_for(samples, workers, [&](std::size_t begin, std::size_t end) {
    std::vector<double> positions(static_cast<std::size_t>(n * dim));
    RowBuilder rows(mode, k);
    std::size_t violation = samples;
    for (std::size_t s = begin; s < end; ++s) {
      const auto [piece, u] = sample_site(s);
      for (int i = 0; i < n; ++i) {
        traj.point_at(i, piece, u,
                      std::span<double>(positions).subspan(static_cast<std::size_t>(i * dim), static_cast<std::size_t>(dim)));
      }
      for (std::size_t j = 0; j < subsets.size(); ++j) values[j * samples + s] = rows.det(positions, dim, subsets[j]);

      if (violation == samples && s % static_cast<std::size_t>(opts.membership_stride) == 0) {
        Configuration config{params, mode, {}};
        for (int i = 0; i < n; ++i) {
          config.points.emplace_back(positions.begin() + i * dim, positions.begin() + (i + 1) * dim);
        }
        // Only the C'_n part matters here; singular sample times are fine.
        if (!check_membership(config, opts.membership_tol).in_configuration_space()) violation = s;
      }
    }
    const std::size_t slot = begin / ((samples + static_cast<std::size_t>(workers) - 1) / static_cast<std::size_t>(workers));
    first_violation[std::min(slot, first_violation.size() - 1)] = violation;
  });
  const std::size_t violation = *std::min_element(first_violation.begin(), first_violation.end());
  if (violation < samples) {
    throw Error(ErrorCode::LeftConfigurationSpace,
                "trajectory leaves C'_n near t=" + std::to_string(times[violation]), {times[violation]});
  }

  std::vector<SubsetScan> results(subsets.size());
  parallel_for(subsets.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      try {
        const std::span<const double> v(values.data() + j * samples, samples);
        std::vector<double> scale(static_cast<std::size_t>(pieces), 0.0);
        for (std::size_t s = 0; s < samples; ++s) {
          const auto piece = static_cast<std::size_t>(sample_site(s).first);
          scale[piece] = std::max(scale[piece], std::abs(v[s]));
          // The left end of a piece also belongs to the previous piece.
          if (piece > 0 && s == piece * static_cast<std::size_t>(grid)) {
            scale[piece - 1] = std::max(scale[piece - 1], std::abs(v[s]));
          }
        }
        for (int b = 0; b < pieces; ++b) {
          if (scale[static_cast<std::size_t>(b)] == 0.0) {
            throw Error(ErrorCode::GoodPathViolation,
                        "subset " + std::to_string(j) + " is degenerate on a whole piece",
                        {bp[static_cast<std::size_t>(b)], bp[static_cast<std::size_t>(b) + 1]});
          }
        }
        auto piece_scale = [&](std::size_t s) { return scale[static_cast<std::size_t>(sample_site(s).first)]; };

        // Near-tangency: a small local minimum of |det| without a sign change.
        for (std::size_t s = 1; s + 1 < samples; ++s) {
          const int sl = sign(v[s - 1]);
          const int sr = sign(v[s + 1]);
          if (sl == 0 || sl != sr || (v[s] != 0.0 && sign(v[s]) != sl)) continue;
          const double a = std::abs(v[s]);
          if (a <= std::abs(v[s - 1]) && a <= std::abs(v[s + 1]) && a < opts.stability_margin * piece_scale(s)) {
            throw Error(ErrorCode::NotStable,
                        "tangential contact without crossing near t=" + std::to_string(times[s]), {times[s]});
          }
        }

        std::size_t last = samples;
        for (std::size_t s = 0; s < samples; ++s) {
          if (v[s] == 0.0) continue;
          if (last != samples && sign(v[s]) != sign(v[last])) {
            const double swing = std::max(std::abs(v[last]), std::abs(v[s]));
            if (swing < opts.stability_margin * std::max(piece_scale(last), piece_scale(s))) {
              throw Error(ErrorCode::NotStable, "crossing too shallow near t=" + std::to_string(times[s]),
                          {times[s]});
            }
            const int left_sign = sign(v[last]);
            double lo = times[last];
            double hi = times[s];
            double root = 0.0;
            bool exact = false;
            while (hi - lo > opts.root_tol) {
              const double mid = lo + (hi - lo) / 2.0;
              if (!(mid > lo && mid < hi)) break;
              // Points of the subset only.
              const auto [piece, u] = traj.locate(mid);
              std::vector<double> pos(static_cast<std::size_t>(k * dim));
              std::vector<int> local(static_cast<std::size_t>(k));
              for (int q = 0; q < k; ++q) {
                traj.point_at(subsets[j][static_cast<std::size_t>(q)], piece, u,
                              std::span<double>(pos).subspan(static_cast<std::size_t>(q * dim), static_cast<std::size_t>(dim)));
                local[static_cast<std::size_t>(q)] = q;
              }
              RowBuilder rows(mode, k);
              const double f = rows.det(pos, dim, local);
              if (f == 0.0) {
                root = mid;
                exact = true;
                break;
              }
              (sign(f) == left_sign ? lo : hi) = mid;
            }
            if (!exact) root = lo + (hi - lo) / 2.0;
            results[j].events.push_back({root, subset_gens[j], sign(v[s])});
          }
          last = s;
        }
      } catch (...) {
        results[j].error = std::current_exception();
      }
    }
  });

  std::vector<SingularEvent> events;
  for (const SubsetScan& r : results) {
    if (r.error) std::rethrow_exception(r.error);
    events.insert(events.end(), r.events.begin(), r.events.end());
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const SingularEvent& a, const SingularEvent& b) { return a.t < b.t; });
  for (std::size_t i = 1; i < events.size(); ++i) {
    if (events[i].t - events[i - 1].t < opts.simultaneity_tol) {
      throw Error(ErrorCode::GoodPathViolation, "two subsets degenerate simultaneously near t=" +
                                                    std::to_string(events[i].t),
                  {events[i - 1].t, events[i].t});
    }
  }
  return events;
}

Word events_to_word(const GroupParams& params, std::span<const SingularEvent> events) {
  std::vector<Generator> letters;
  letters.reserve(events.size());
  for (const SingularEvent& e : events) letters.push_back(e.subset);
  return Word(params, std::move(letters));
}

Word trajectory_word(const Trajectory& traj, const ScanOptions& opts) {
  return events_to_word(traj.params(), scan_events(traj, opts));
}

}  // namespace gnk::geometry
