#include "gnk/equality.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <mutex>
#include <set>
#include <unordered_map>

#include "gnk/error.hpp"
#include "gnk/word_io.hpp"
#include "internal.hpp"

namespace gnk {

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Equal: return "Equal";
    case Verdict::Distinct: return "Distinct";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

// Dense bitset over word positions.
class PositionSet {
 public:
  explicit PositionSet(std::size_t size = 0) : bits_((size + 63) / 64, 0) {}
  void set(std::size_t i) { bits_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (bits_[i / 64] >> (i % 64)) & 1U; }
  PositionSet& operator|=(const PositionSet& o) {
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
    return *this;
  }
  bool intersects(const PositionSet& o) const {
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_[i] & o.bits_[i]) return true;
    }
    return false;
  }

 private:
  std::vector<std::uint64_t> bits_;
};

struct LettersHash {
  std::size_t operator()(const std::vector<Generator>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Generator g : v) {
      h ^= std::hash<IndexMask>{}(g.mask()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

std::vector<Generator> reversed_block(const BlockMove& move, int k) {
  std::vector<Generator> out = move.arranged;
  const auto first = out.begin() + static_cast<std::ptrdiff_t>(move.block_start);
  std::reverse(first, first + k + 1);
  return out;
}

bool is_full_block(std::span<const Generator> block, int k) {
  if (static_cast<int>(block.size()) != k + 1) return false;
  IndexMask u = 0;
  for (Generator g : block) u |= g.mask();
  if (std::popcount(u) != k + 1) return false;
  std::vector<Generator> sorted(block.begin(), block.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() &&
         std::all_of(sorted.begin(), sorted.end(), [&](Generator g) { return g.size() == k; });
}

// --- S3 arithmetic ------------------------------------------------------------

using Perm3 = std::array<int, 3>;
constexpr std::array<Perm3, 6> kS3 = {{
    {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1},
}};

int s3_index(const Perm3& p) {
  for (int i = 0; i < 6; ++i) {
    if (kS3[i] == p) return i;
  }
  return -1;
}

const std::array<std::array<int, 6>, 6>& s3_table() {
  static const auto table = [] {
    std::array<std::array<int, 6>, 6> t{};
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) {
        Perm3 c{};
        for (int x = 0; x < 3; ++x) c[x] = kS3[a][kS3[b][x]];
        t[a][b] = s3_index(c);
      }
    }
    return t;
  }();
  return table;
}

std::string format_s3(int e) {
  static constexpr std::array<const char*, 6> names = {"()", "(0 1)", "(0 2)", "(1 2)", "(0 1 2)",
                                                       "(0 2 1)"};
  return names[e];
}

int fold(const std::vector<int>& sequence, const std::vector<int>& images) {
  const auto& table = s3_table();
  int acc = 0;
  for (int idx : sequence) acc = table[acc][images[idx]];
  return acc;
}

std::vector<int> subsequence_in(const Word& w, IndexMask support, const std::vector<Generator>& subsets) {
  std::vector<int> out;
  for (Generator g : w.letters()) {
    if ((g.mask() & ~support) != 0) continue;
    out.push_back(static_cast<int>(std::lower_bound(subsets.begin(), subsets.end(), g) - subsets.begin()));
  }
  return out;
}

// Calls visit(images) for every assignment with an odd number of
// transpositions; stops early when visit returns true.
template <typename Visit>
bool for_each_assignment(int slots, Visit&& visit) {
  std::vector<int> images(static_cast<std::size_t>(slots), 0);
  while (true) {
    const auto moved = std::count_if(images.begin(), images.end(), [](int v) { return v != 0; });
    if (moved % 2 == 1 && visit(images)) return true;
    int i = 0;
    while (i < slots && images[static_cast<std::size_t>(i)] == 3) images[static_cast<std::size_t>(i++)] = 0;
    if (i == slots) return false;
    ++images[static_cast<std::size_t>(i)];
  }
}

std::vector<IndexMask> supports_touching(const Word& a, const Word& b) {
  const int n = a.params().n;
  std::set<IndexMask> out;
  for (const Word* w : {&a, &b}) {
    for (Generator g : w->letters()) {
      for (int x = 1; x <= n; ++x) {
        if (!g.contains(x)) out.insert(g.mask() | (IndexMask{1} << (x - 1)));
      }
    }
  }
  return {out.begin(), out.end()};
}

void debug_check_battery(const GroupParams& params) {
#ifndef NDEBUG
  if (params.n > 7) return;
  static std::mutex mutex;
  static std::set<std::pair<int, int>> checked;
  std::lock_guard lock(mutex);
  if (checked.insert({params.n, params.k}).second) {
    assert(battery_respects_relators(params));
  }
#else
  (void)params;
#endif
}

// --- breadth-first search -------------------------------------------------------

struct Node {
  std::vector<Generator> letters;
  int parent = -1;
  int side = 0;
  int depth = 0;
  BlockMove edge;  // move applied to the parent's letters
};

class ChainBuilder {
 public:
  ChainBuilder(const GroupParams& params) : params_(params) {}

  void start(std::vector<Generator> letters) {
    chain_.push_back({StepKind::Start, Word(params_, std::move(letters)), 0});
  }
  void reduce(std::vector<Generator> letters) {
    if (std::equal(letters.begin(), letters.end(), chain_.back().word.letters().begin(),
                   chain_.back().word.letters().end())) {
      return;
    }
    Word w(params_, std::move(letters));
    if (chain_.back().kind == StepKind::ReduceEquivalent) {
      chain_.back().word = std::move(w);
    } else {
      chain_.push_back({StepKind::ReduceEquivalent, std::move(w), 0});
    }
  }
  void reverse(std::vector<Generator> letters, std::size_t block_start) {
    chain_.push_back({StepKind::Relation3, Word(params_, std::move(letters)), block_start});
  }
  // Crosses one edge; `forward` means in the direction the move was found.
  void cross(const BlockMove& move, bool forward, std::vector<Generator> target) {
    const int k = params_.k;
    if (forward) {
      reduce(move.arranged);
      reverse(reversed_block(move, k), move.block_start);
    } else {
      reduce(reversed_block(move, k));
      reverse(move.arranged, move.block_start);
    }
    reduce(std::move(target));
  }
  std::vector<CertificateStep> take() { return std::move(chain_); }

 private:
  GroupParams params_;
  std::vector<CertificateStep> chain_;
};

}  // namespace

std::vector<BlockMove> relation3_moves(std::span<const Generator> letters, int n, int k) {
  const std::size_t len = letters.size();
  std::vector<BlockMove> out;
  if (static_cast<int>(len) < k + 1) return out;

  // reach[i]: positions j > i joined to i by a chain of non-commuting letters.
  std::vector<PositionSet> reach(len, PositionSet(len));
  for (std::size_t i = len; i-- > 0;) {
    for (std::size_t j = i + 1; j < len; ++j) {
      if (!commute(letters[i], letters[j], k)) {
        reach[i].set(j);
        reach[i] |= reach[j];
      }
    }
  }

  std::set<IndexMask> candidates;
  for (Generator g : letters) {
    for (int x = 1; x <= n; ++x) {
      if (!g.contains(x)) candidates.insert(g.mask() | (IndexMask{1} << (x - 1)));
    }
  }

  for (IndexMask u : candidates) {
    std::vector<std::size_t> inside;
    for (std::size_t p = 0; p < len; ++p) {
      if ((letters[p].mask() & ~u) == 0) inside.push_back(p);
    }
    // Letters inside U pairwise fail to commute, so a movable block is a run
    // of k+1 consecutive inside-positions.
    for (std::size_t w = 0; w + static_cast<std::size_t>(k) < inside.size(); ++w) {
      std::span<const std::size_t> window(inside.data() + w, static_cast<std::size_t>(k) + 1);
      std::vector<Generator> block;
      for (std::size_t p : window) block.push_back(letters[p]);
      if (!is_full_block(block, k)) continue;

      PositionSet in_block(len);
      PositionSet after_block(len);
      for (std::size_t p : window) {
        in_block.set(p);
        after_block |= reach[p];
      }
      bool convex = true;
      for (std::size_t p = window.front() + 1; p < window.back() && convex; ++p) {
        if (!in_block.test(p) && after_block.test(p) && reach[p].intersects(in_block)) convex = false;
      }
      if (!convex) continue;

      BlockMove move;
      std::vector<Generator> tail;
      for (std::size_t p = 0; p < len; ++p) {
        if (in_block.test(p)) continue;
        if (reach[p].intersects(in_block)) {
          move.arranged.push_back(letters[p]);
        } else {
          tail.push_back(letters[p]);
        }
      }
      move.block_start = move.arranged.size();
      move.arranged.insert(move.arranged.end(), block.begin(), block.end());
      move.arranged.insert(move.arranged.end(), tail.begin(), tail.end());
      out.push_back(std::move(move));
    }
  }
  return out;
}

EqualityVerdict equal(const Word& lhs, const Word& rhs, const SearchBudget& budget) {
  if (lhs.params() != rhs.params()) {
    throw Error(ErrorCode::ParamsMismatch, to_string(lhs.params()) + " vs " + to_string(rhs.params()));
  }
  const GroupParams params = lhs.params();
  const int k = params.k;
  debug_check_battery(params);

  EqualityVerdict verdict;
  if (abelianize(lhs) != abelianize(rhs)) {
    verdict.status = Verdict::Distinct;
    verdict.separation = separate(lhs, rhs);
    return verdict;
  }

  auto nf_lhs = detail::normal_form_letters(lhs.letters(), k);
  auto nf_rhs = detail::normal_form_letters(rhs.letters(), k);
  if (nf_lhs == nf_rhs) {
    ChainBuilder chain(params);
    chain.start({lhs.letters().begin(), lhs.letters().end()});
    chain.reduce({rhs.letters().begin(), rhs.letters().end()});
    verdict.status = Verdict::Equal;
    verdict.chain = chain.take();
    verdict.visited = 1;
    return verdict;
  }

  std::vector<Node> nodes;
  std::unordered_map<std::vector<Generator>, int, LettersHash> index;
  nodes.push_back({nf_lhs, -1, 0, 0, {}});
  nodes.push_back({nf_rhs, -1, 1, 0, {}});
  index.emplace(nf_lhs, 0);
  index.emplace(nf_rhs, 1);

  std::array<std::vector<int>, 2> frontier{{{0}, {1}}};
  std::array<int, 2> levels{0, 0};
  int meet_from = -1;
  int meet_to = -1;
  BlockMove meet_move;
  bool exhausted = false;

  while (meet_from < 0 && !exhausted && levels[0] + levels[1] < budget.max_depth) {
    if (frontier[0].empty() || frontier[1].empty()) break;
    const int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    std::vector<int> next;
    for (int idx : frontier[side]) {
      // Copy: nodes may reallocate while we append.
      const std::vector<Generator> letters = nodes[static_cast<std::size_t>(idx)].letters;
      for (BlockMove& move : relation3_moves(letters, params.n, k)) {
        auto key = detail::normal_form_letters(reversed_block(move, k), k);
        if (auto it = index.find(key); it != index.end()) {
          if (nodes[static_cast<std::size_t>(it->second)].side != side) {
            meet_from = idx;
            meet_to = it->second;
            meet_move = std::move(move);
            break;
          }
          continue;
        }
        if (nodes.size() >= budget.max_visited) {
          exhausted = true;
          break;
        }
        const int depth = nodes[static_cast<std::size_t>(idx)].depth + 1;
        index.emplace(key, static_cast<int>(nodes.size()));
        next.push_back(static_cast<int>(nodes.size()));
        nodes.push_back({std::move(key), idx, side, depth, std::move(move)});
      }
      if (meet_from >= 0 || exhausted) break;
    }
    frontier[side] = std::move(next);
    ++levels[side];
  }
  verdict.visited = nodes.size();

  if (meet_from >= 0) {
    // Orient so that `a` lies on the lhs side.
    const bool found_forward = nodes[static_cast<std::size_t>(meet_from)].side == 0;
    const int a = found_forward ? meet_from : meet_to;
    const int b = found_forward ? meet_to : meet_from;

    std::vector<int> left_path;
    for (int i = a; i >= 0; i = nodes[static_cast<std::size_t>(i)].parent) left_path.push_back(i);
    std::reverse(left_path.begin(), left_path.end());

    ChainBuilder chain(params);
    chain.start({lhs.letters().begin(), lhs.letters().end()});
    chain.reduce(nodes[0].letters);
    for (std::size_t i = 1; i < left_path.size(); ++i) {
      const Node& node = nodes[static_cast<std::size_t>(left_path[i])];
      chain.cross(node.edge, true, node.letters);
    }
    chain.cross(meet_move, found_forward, nodes[static_cast<std::size_t>(b)].letters);
    for (int i = b; nodes[static_cast<std::size_t>(i)].parent >= 0; i = nodes[static_cast<std::size_t>(i)].parent) {
      const Node& node = nodes[static_cast<std::size_t>(i)];
      chain.cross(node.edge, false, nodes[static_cast<std::size_t>(node.parent)].letters);
    }
    chain.reduce({rhs.letters().begin(), rhs.letters().end()});
    verdict.status = Verdict::Equal;
    verdict.chain = chain.take();
    return verdict;
  }

  if (auto sep = separate(lhs, rhs)) {
    verdict.status = Verdict::Distinct;
    verdict.separation = std::move(sep);
    return verdict;
  }
  verdict.status = Verdict::Unknown;
  return verdict;
}

bool verify_certificate(const std::vector<CertificateStep>& chain) {
  if (chain.empty() || chain.front().kind != StepKind::Start) return false;
  const GroupParams params = chain.front().word.params();
  const int k = params.k;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const Word& prev = chain[i - 1].word;
    const Word& cur = chain[i].word;
    if (cur.params() != params) return false;
    switch (chain[i].kind) {
      case StepKind::Start:
        return false;
      case StepKind::ReduceEquivalent:
        if (normal_form(prev) != normal_form(cur)) return false;
        break;
      case StepKind::Relation3: {
        const std::size_t s = chain[i].block_start;
        const std::size_t len = static_cast<std::size_t>(k) + 1;
        if (prev.size() != cur.size() || s + len > prev.size()) return false;
        std::vector<Generator> expect(prev.letters().begin(), prev.letters().end());
        const auto first = expect.begin() + static_cast<std::ptrdiff_t>(s);
        if (!is_full_block(std::span<const Generator>(&*first, len), k)) return false;
        std::reverse(first, first + static_cast<std::ptrdiff_t>(len));
        if (!std::equal(expect.begin(), expect.end(), cur.letters().begin(), cur.letters().end())) {
          return false;
        }
        break;
      }
    }
  }
  return true;
}

std::string format_certificate(const std::vector<CertificateStep>& chain) {
  std::string out;
  for (const CertificateStep& step : chain) {
    switch (step.kind) {
      case StepKind::Start: out += "  start      "; break;
      case StepKind::ReduceEquivalent: out += "  (1)+(2) => "; break;
      case StepKind::Relation3:
        out += "  (3)@" + std::to_string(step.block_start) + "    => ";
        break;
    }
    out += format_word(step.word) + "\n";
  }
  return out;
}

int evaluate(const LocalS3Rep& rep, const Word& w, int k) {
  const auto subsets = subsets_of(rep.support, k);
  return fold(subsequence_in(w, rep.support, subsets), rep.images);
}

bool is_identity(int s3_element) { return s3_element == 0; }

std::optional<Separation> separate(const Word& lhs, const Word& rhs) {
  if (lhs.params() != rhs.params()) {
    throw Error(ErrorCode::ParamsMismatch, to_string(lhs.params()) + " vs " + to_string(rhs.params()));
  }
  const int k = lhs.params().k;
  const auto left_parity = abelianize(lhs);
  const auto right_parity = abelianize(rhs);
  if (left_parity != right_parity) {
    return Separation{"abelianization", format_parity(left_parity), format_parity(right_parity)};
  }

  for (IndexMask support : supports_touching(lhs, rhs)) {
    const auto subsets = subsets_of(support, k);
    const auto left_seq = subsequence_in(lhs, support, subsets);
    const auto right_seq = subsequence_in(rhs, support, subsets);
    std::optional<Separation> found;
    for_each_assignment(k + 1, [&](const std::vector<int>& images) {
      const int l = fold(left_seq, images);
      const int r = fold(right_seq, images);
      if (l == r) return false;
      std::string name = "S3 representation on " + format_generator(Generator::from_mask(support)) + " [";
      for (std::size_t i = 0; i < subsets.size(); ++i) {
        if (i) name += ' ';
        name += format_generator(subsets[i]) + "->" + format_s3(images[i]);
      }
      found = Separation{name + "]", format_s3(l), format_s3(r)};
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

bool battery_respects_relators(const GroupParams& params) {
  const int n = params.n;
  const int k = params.k;
  const IndexMask all = (n == 64) ? ~IndexMask{0} : ((IndexMask{1} << n) - 1);
  const auto generators = subsets_of(all, k);

  std::vector<Word> relators;
  for (Generator g : generators) {
    relators.push_back(relator(params, RelatorKind::Involution, std::array{g}));
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      if (commute(generators[i], generators[j], k)) {
        relators.push_back(relator(params, RelatorKind::Commutation, std::array{generators[i], generators[j]}));
      }
    }
  }
  for (Generator u : subsets_of(all, k + 1)) {
    auto order = subsets_of(u.mask(), k);
    do {
      relators.push_back(relator(params, RelatorKind::Tetrahedron, order));
    } while (std::next_permutation(order.begin(), order.end()));
  }

  for (const Word& r : relators) {
    if (!abelianize(r).is_zero()) return false;
  }
  for (Generator w : subsets_of(all, k + 1)) {
    const auto subsets = subsets_of(w.mask(), k);
    std::vector<std::vector<int>> sequences;
    for (const Word& r : relators) sequences.push_back(subsequence_in(r, w.mask(), subsets));
    const bool broken = for_each_assignment(k + 1, [&](const std::vector<int>& images) {
      return std::any_of(sequences.begin(), sequences.end(),
                         [&](const std::vector<int>& seq) { return fold(seq, images) != 0; });
    });
    if (broken) return false;
  }
  return true;
}

}  // namespace gnk
