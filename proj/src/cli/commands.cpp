#include "gnk/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "gnk/constructions.hpp"
#include "gnk/equality.hpp"
#include "gnk/error.hpp"
#include "gnk/scan.hpp"
#include "gnk/trajectory_io.hpp"
#include "gnk/word_io.hpp"

namespace gnk::cli {

namespace {

using geometry::ScanOptions;
using geometry::SingularEvent;
using geometry::Trajectory;

// Lifted coplanarity times must match planar concyclicity times this closely.
constexpr double kHemisphereTimeTol = 1e-8;
// Paired rotation events are half a turn apart in t.
constexpr double kHalfTurnTol = 1e-6;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidParams, "cannot write '" + path + "'");
  out << text;
}

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ParseError, "bad index list '" + text + "'");
    }
  }
  return out;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::GoodPathViolation:
    case ErrorCode::NotStable:
    case ErrorCode::SingularEndpoint:
    case ErrorCode::LeftConfigurationSpace:
    case ErrorCode::DiscViolation:
    case ErrorCode::LiftFailed:
      return kGeometry;
    default:
      return kUsage;
  }
}

std::string format_time(double t) {
  std::ostringstream out;
  out << std::setprecision(12) << t;
  return out.str();
}

void print_events(std::ostream& out, std::span<const SingularEvent> events) {
  out << "t subset crossing\n";
  for (const SingularEvent& e : events) {
    out << format_time(e.t) << ' ' << format_generator(e.subset) << ' ' << (e.crossing > 0 ? '+' : '-') << "\n";
  }
}

void add_scan_flags(CLI::App* cmd, ScanOptions& scan) {
  cmd->add_option("--grid", scan.samples_per_piece, "samples per trajectory piece")->capture_default_str();
  cmd->add_option("--tol", scan.root_tol, "root tolerance in t")->capture_default_str();
  cmd->add_option("--simultaneity", scan.simultaneity_tol, "minimal separation of events in t")
      ->capture_default_str();
  cmd->add_option("--margin", scan.stability_margin, "relative stability margin")->capture_default_str();
  cmd->add_option("--membership-tol", scan.membership_tol, "degeneracy tolerance for C'_n checks")
      ->capture_default_str();
  cmd->add_option("--threads", scan.threads, "worker threads, 0 = automatic")->capture_default_str();
}

// Shared state of an experiment run.
struct Experiment {
  std::ostream& out;
  std::string artifacts;
  std::string dump;
  bool failed = false;

  void check(bool ok, const std::string& what) {
    out << (ok ? "  ok   " : "  FAIL ") << what << "\n";
    failed = failed || !ok;
  }
  void maybe_dump(const Trajectory& traj) const {
    if (!dump.empty()) write_file(dump, format_trajectory(traj));
  }
  int finish(const std::string& name, const std::vector<std::pair<std::string, std::string>>& files) {
    if (failed) {
      std::filesystem::create_directories(artifacts);
      for (const auto& [file, text] : files) {
        const auto path = std::filesystem::path(artifacts) / (name + "_" + file);
        write_file(path.string(), text);
        out << "  artifact " << path.string() << "\n";
      }
    }
    out << (failed ? "FAIL" : "PASS") << "\n";
    return failed ? kAssertion : kOk;
  }
};

std::string config_report() {
  std::ostringstream out;
  const ScanOptions scan;
  const SearchBudget budget;
  const constructions::LiftOptions lift;
  const constructions::HemisphereOptions hemi;
  const constructions::RotationLoopOptions rot;
  out << std::setprecision(17);
  out << "[scan]\n" << geometry::describe(scan);
  out << "[equality]\nbudget = " << budget.max_visited << "\ndepth = " << budget.max_depth << "\n";
  out << "[lift]\ngrowth = " << lift.growth << "\nmax_rounds = " << lift.max_rounds << "\n";
  out << "[hemisphere]\nchart = stereographic\nmargin = " << hemi.margin << "\ndegree = " << hemi.degree
      << "\nmax_fit_error = " << hemi.max_fit_error << "\ntime_tol = " << kHemisphereTimeTol << "\n";
  out << "[rotation]\ndelta = " << rot.delta << "\npieces = " << rot.pieces << "\ndegree = " << rot.degree
      << "\n";
  const char* env = std::getenv("GNK_THREADS");
  out << "[environment]\nGNK_THREADS = " << (env ? env : "(unset)") << "\n";
  return out.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Words in G_n^k and the invariant of point motions", "gnk"};
  app.require_subcommand(0, 1);
  bool print_config = false;
  app.add_flag("--print-config", print_config, "print default tolerances and budgets");

  std::function<int()> action;
  ScanOptions scan;

  // --- word algebra -----------------------------------------------------------
  std::string file_a;
  std::string file_b;
  auto* reduce = app.add_subcommand("reduce", "normal form under relations (1)+(2)");
  reduce->add_option("file", file_a, "word file")->required();
  reduce->callback([&] {
    action = [&] {
      out << format_word(normal_form(parse_word_file(read_file(file_a)))) << "\n";
      return int{kOk};
    };
  });

  SearchBudget budget;
  bool certificate = false;
  auto* eq = app.add_subcommand("eq", "decide equality of two words");
  eq->add_option("first", file_a, "word file")->required();
  eq->add_option("second", file_b, "word file")->required();
  eq->add_option("--budget", budget.max_visited, "maximal number of visited words")->capture_default_str();
  eq->add_option("--depth", budget.max_depth, "maximal relation-(3) applications")->capture_default_str();
  eq->add_flag("--certificate", certificate, "print the rewrite chain or separating invariant");
  eq->callback([&] {
    action = [&] {
      const Word lhs = parse_word_file(read_file(file_a));
      const Word rhs = parse_word_file(read_file(file_b));
      if (budget.max_depth < 0) throw Error(ErrorCode::InvalidParams, "--depth must be >= 0");
      const EqualityVerdict v = equal(lhs, rhs, budget);
      out << to_string(v.status) << "\n";
      if (certificate) {
        if (v.status == Verdict::Equal) out << format_certificate(v.chain);
        if (v.separation) {
          out << "  invariant " << v.separation->invariant << "\n  left  " << v.separation->left_value
              << "\n  right " << v.separation->right_value << "\n";
        }
        if (v.status == Verdict::Unknown) out << "  visited " << v.visited << " words\n";
      }
      switch (v.status) {
        case Verdict::Equal: return int{kOk};
        case Verdict::Distinct: return int{kDistinct};
        case Verdict::Unknown: return int{kUnknown};
      }
      return int{kUnknown};
    };
  });

  auto* abel = app.add_subcommand("abelianize", "letters occurring an odd number of times");
  abel->add_option("file", file_a, "word file")->required();
  abel->callback([&] {
    action = [&] {
      out << format_parity(abelianize(parse_word_file(read_file(file_a)))) << "\n";
      return int{kOk};
    };
  });

  int eps_n = 0;
  int eps_k = 0;
  std::string eps_fixed;
  std::string eps_order;
  auto* eps = app.add_subcommand("epsilon", "epsilon-type element (a_{F l1} ... a_{F lr})^2");
  eps->add_option("--n", eps_n)->required();
  eps->add_option("--k", eps_k)->required();
  eps->add_option("--fixed", eps_fixed, "comma separated (k-1)-set")->required();
  eps->add_option("--order", eps_order, "comma separated ordering of the complement")->required();
  eps->callback([&] {
    action = [&] {
      const auto params = GroupParams::make(eps_n, eps_k);
      out << format_word_file(epsilon_element(params, parse_index_list(eps_fixed), parse_index_list(eps_order)));
      return int{kOk};
    };
  });

  auto* inc = app.add_subcommand("include", "a_m -> a_{m+{n+1}} into G_{n+1}^{k+1}");
  inc->add_option("file", file_a, "word file")->required();
  inc->callback([&] {
    action = [&] {
      out << format_word_file(include_up(parse_word_file(read_file(file_a))));
      return int{kOk};
    };
  });

  auto* proj = app.add_subcommand("project", "drop letters without n, a_m -> a_{m-{n}}");
  proj->add_option("file", file_a, "word file")->required();
  proj->callback([&] {
    action = [&] {
      out << format_word_file(project_down(parse_word_file(read_file(file_a))));
      return int{kOk};
    };
  });

  // --- scanning -----------------------------------------------------------------
  bool word_only = false;
  auto* scan_cmd = app.add_subcommand("scan", "singular events and the word of a trajectory");
  scan_cmd->add_option("file", file_a, "trajectory file")->required();
  scan_cmd->add_flag("--word-only", word_only, "print only the word");
  add_scan_flags(scan_cmd, scan);
  scan_cmd->callback([&] {
    action = [&] {
      const Trajectory traj = geometry::parse_trajectory(read_file(file_a));
      const auto events = geometry::scan_events(traj, scan);
      if (!word_only) print_events(out, events);
      const Word w = geometry::events_to_word(traj.params(), events);
      out << (word_only ? "" : "word ") << format_word(w) << "\n";
      return int{kOk};
    };
  });

  // --- experiments ----------------------------------------------------------------
  auto* exp = app.add_subcommand("experiment", "run a construction and check its postconditions");
  exp->require_subcommand(1);
  std::string artifacts = "gnk_artifacts";
  std::string dump;
  std::uint64_t seed = 1;
  exp->add_option("--artifacts", artifacts, "directory for artifacts of failed runs")->capture_default_str();
  exp->add_option("--dump", dump, "write the constructed trajectory to this file");
  exp->add_option("--seed", seed, "seed of randomized inputs")->capture_default_str();
  add_scan_flags(exp, scan);

  constructions::RotationLoopOptions rot;
  auto* rot_cmd = exp->add_subcommand("rotation", "x3 circles the line x1x2: an epsilon-element");
  rot_cmd->add_option("--n", rot.n)->capture_default_str();
  rot_cmd->add_option("--delta", rot.delta)->capture_default_str();
  rot_cmd->callback([&] {
    action = [&] {
      Experiment ex{out, artifacts, dump};
      const auto loop = constructions::rotation_loop(rot);
      ex.maybe_dump(loop.trajectory);
      const auto events = geometry::scan_events(loop.trajectory, scan);
      const Word w = geometry::events_to_word(loop.trajectory.params(), events);
      out << "word     " << format_word(w) << "\nexpected " << format_word(loop.expected) << "\n";
      const auto start = geometry::eval_trajectory(loop.trajectory, 0.0);
      const auto end = geometry::eval_trajectory(loop.trajectory, 1.0);
      ex.check(start.points == end.points, "closed loop");
      ex.check(static_cast<int>(events.size()) == 2 * (rot.n - 3), "2(n-3) events");
      bool paired = events.size() % 2 == 0;
      const std::size_t half = events.size() / 2;
      for (std::size_t i = 0; paired && i < half; ++i) {
        paired = events[i].subset == events[i + half].subset &&
                 std::abs(events[i + half].t - events[i].t - 0.5) < kHalfTurnTol;
      }
      ex.check(paired, "events pair up half a turn apart");
      const auto v = equal(w, loop.expected);
      ex.check(v.status == Verdict::Equal, "word Equal to epsilon element (" + std::string(to_string(v.status)) + ")");
      return ex.finish("rotation", {{"trajectory.txt", format_trajectory(loop.trajectory)},
                                    {"word.txt", format_word_file(w)}});
    };
  });

  std::string lift_input;
  int lift_steps = 3;
  constructions::LiftOptions lift;
  auto* lift_cmd = exp->add_subcommand("lift", "lift a motion to n+1 points one dimension up");
  lift_cmd->add_option("--input", lift_input, "trajectory file (default: random n=4, k=3 motion)");
  lift_cmd->add_option("--steps", lift_steps, "legs of the random motion")->capture_default_str();
  lift_cmd->add_option("--growth", lift.growth)->capture_default_str();
  lift_cmd->add_option("--max-rounds", lift.max_rounds)->capture_default_str();
  lift_cmd->callback([&] {
    action = [&] {
      Experiment ex{out, artifacts, dump};
      Rng rng(seed);
      const Trajectory input =
          lift_input.empty()
              ? constructions::random_clean_polygonal(GroupParams::make(4, 3), lift_steps, rng, scan)
              : geometry::parse_trajectory(read_file(lift_input));
      lift.scan = scan;
      const Word original = geometry::trajectory_word(input, scan);
      out << "input    " << format_word(original) << "\n";
      std::optional<constructions::LiftResult> result;
      try {
        result = constructions::hierarchy_lift(input, lift);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::LiftFailed) {
          std::filesystem::create_directories(artifacts);
          const auto path = std::filesystem::path(artifacts) / "lift_input.txt";
          write_file(path.string(), format_trajectory(input));
          out << "  artifact " << path.string() << "\n";
        }
        throw;
      }
      ex.maybe_dump(result->trajectory);
      const Word lifted = geometry::events_to_word(result->trajectory.params(), result->lifted_events);
      const Word image = include_up(original);
      out << "lifted   " << format_word(lifted) << "\nimage    " << format_word(image) << "\nrounds   "
          << result->rounds << "\n";
      ex.check(lifted == image, "lifted word equals include_up image");
      ex.check(project_down(lifted) == original, "project_down recovers the input word");
      return ex.finish("lift", {{"input.txt", format_trajectory(input)},
                                {"lifted.txt", format_trajectory(result->trajectory)}});
    };
  });

  int circle_n = 5;
  int circle_steps = 1;
  bool full_turn = false;
  auto* circ = exp->add_subcommand("circle", "rigid rotation of points on a circle");
  circ->add_option("--n", circle_n)->capture_default_str();
  circ->add_option("--steps", circle_steps, "rotation by steps * 2pi/n")->capture_default_str();
  circ->add_flag("--full-turn", full_turn, "rotate by 2pi (steps = n)");
  circ->callback([&] {
    action = [&] {
      Experiment ex{out, artifacts, dump};
      const Trajectory traj = constructions::circle_rotation_loop(circle_n, full_turn ? circle_n : circle_steps);
      ex.maybe_dump(traj);
      const auto events = geometry::scan_events(traj, scan);
      const Word w = geometry::events_to_word(traj.params(), events);
      out << "events   " << events.size() << "\nword     " << format_word(w) << "\n";
      ex.check(events.empty(), "no singular moments");
      return ex.finish("circle", {{"trajectory.txt", format_trajectory(traj)}});
    };
  });

  int braid_i = 1;
  int braid_j = 2;
  int braid_n = 4;
  auto* braid = exp->add_subcommand("braid", "pure braid generator A_ij as a planar motion");
  braid->add_option("--i", braid_i)->capture_default_str();
  braid->add_option("--j", braid_j)->capture_default_str();
  braid->add_option("--n", braid_n)->capture_default_str();
  braid->callback([&] {
    action = [&] {
      Experiment ex{out, artifacts, dump};
      const Trajectory traj = constructions::pure_braid_generator(braid_i, braid_j, braid_n);
      ex.maybe_dump(traj);
      const Word w = geometry::trajectory_word(traj, scan);
      out << "word     " << format_word(w) << "\n";
      ex.check(abelianize(w).is_zero(), "every letter occurs an even number of times");
      const Word there_and_back =
          geometry::trajectory_word(geometry::concatenate(traj, geometry::reverse(traj)), scan);
      ex.check(equal(there_and_back, Word(w.params())).status == Verdict::Equal,
               "loop followed by its reverse is Equal to e");
      return ex.finish("braid", {{"trajectory.txt", format_trajectory(traj)}});
    };
  });

  std::string hemi_input;
  int hemi_n = 5;
  constructions::HemisphereOptions hemi;
  bool vertical = false;
  auto* hemi_cmd = exp->add_subcommand("hemisphere", "planar motion lifted to the upper hemisphere");
  hemi_cmd->add_option("--input", hemi_input, "planar trajectory file (default: random)");
  hemi_cmd->add_option("--n", hemi_n, "points of the random planar motion")->capture_default_str();
  hemi_cmd->add_option("--disc-margin", hemi.margin)->capture_default_str();
  hemi_cmd->add_flag("--vertical", vertical, "use (x, y, sqrt(1-r^2)) instead of the stereographic chart");
  hemi_cmd->callback([&] {
    action = [&] {
      Experiment ex{out, artifacts, dump};
      Rng rng(seed);
      const Trajectory planar = hemi_input.empty()
                                    ? constructions::random_polygonal(GroupParams::make(hemi_n, 3), 3, rng,
                                                                      std::nullopt, 0.6)
                                    : geometry::parse_trajectory(read_file(hemi_input));
      if (vertical) hemi.chart = constructions::HemisphereChart::Vertical;
      const auto lifted = constructions::hemisphere_lift(planar, hemi);
      ex.maybe_dump(lifted.trajectory);
      const auto coplanar = geometry::scan_events(lifted.trajectory, scan);
      const auto concyclic = constructions::concyclicity_events(planar, scan);
      out << "events   " << coplanar.size() << " coplanar, " << concyclic.size() << " concyclic\n"
          << "word     " << format_word(geometry::events_to_word(lifted.trajectory.params(), coplanar)) << "\n"
          << "fit      " << lifted.fit_error << "\n";
      bool same = coplanar.size() == concyclic.size();
      double worst = 0.0;
      for (std::size_t i = 0; same && i < coplanar.size(); ++i) {
        same = coplanar[i].subset == concyclic[i].subset;
        worst = std::max(worst, std::abs(coplanar[i].t - concyclic[i].t));
      }
      ex.check(same, "same subsets in the same order");
      ex.check(same && worst <= kHemisphereTimeTol, "event times agree within 1e-8 (worst " + format_time(worst) + ")");
      return ex.finish("hemisphere", {{"planar.txt", format_trajectory(planar)},
                                      {"lifted.txt", format_trajectory(lifted.trajectory)}});
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  if (print_config) {
    out << config_report();
    if (!action) return kOk;
  }
  if (!action) {
    err << app.help();
    return kUsage;
  }
  try {
    return action();
  } catch (const Error& e) {
    err << "error: " << e.what();
    if (!e.times().empty()) {
      err << " (t =";
      for (double t : e.times()) err << ' ' << format_time(t);
      err << ")";
    }
    err << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace gnk::cli
