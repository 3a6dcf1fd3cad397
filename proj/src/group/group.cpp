#include "gnk/group.hpp"

#include <algorithm>
#include <bit>
#include <queue>

#include "gnk/error.hpp"

namespace gnk {

namespace {

constexpr IndexMask bit_of(int index) { return IndexMask{1} << (index - 1); }

void require_same_params(const Word& a, const Word& b) {
  if (a.params() != b.params()) {
    throw Error(ErrorCode::ParamsMismatch, to_string(a.params()) + " vs " + to_string(b.params()));
  }
}

void validate_letter(Generator g, const GroupParams& params) {
  if (g.size() != params.k) {
    throw Error(ErrorCode::WrongCardinality,
                "generator has " + std::to_string(g.size()) + " indices, expected " +
                    std::to_string(params.k));
  }
  if (params.n < 64 && (g.mask() >> params.n) != 0) {
    throw Error(ErrorCode::IndexOutOfRange, "generator index exceeds n=" + std::to_string(params.n));
  }
}

}  // namespace

GroupParams GroupParams::make(int n, int k) {
  if (k < 2 || n <= k || n > kMaxPoints) {
    throw Error(ErrorCode::InvalidParams,
                "need n > k >= 2 and n <= 63, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  return GroupParams{n, k};
}

std::string to_string(const GroupParams& params) {
  return "n=" + std::to_string(params.n) + " k=" + std::to_string(params.k);
}

Generator Generator::make(std::span<const int> indices, const GroupParams& params) {
  if (static_cast<int>(indices.size()) != params.k) {
    throw Error(ErrorCode::WrongCardinality, "expected " + std::to_string(params.k) +
                                                 " indices, got " + std::to_string(indices.size()));
  }
  IndexMask mask = 0;
  for (int i : indices) {
    if (i < 1 || i > params.n) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "index " + std::to_string(i) + " outside 1.." + std::to_string(params.n));
    }
    if (mask & bit_of(i)) {
      throw Error(ErrorCode::DuplicateIndex, "index " + std::to_string(i) + " repeated");
    }
    mask |= bit_of(i);
  }
  return Generator(mask);
}

int Generator::size() const noexcept { return std::popcount(mask_); }

std::vector<int> Generator::indices() const {
  std::vector<int> out;
  for (IndexMask m = mask_; m != 0; m &= m - 1) {
    out.push_back(std::countr_zero(m) + 1);
  }
  return out;
}

std::strong_ordering operator<=>(Generator a, Generator b) noexcept {
  if (a.mask_ == b.mask_) return std::strong_ordering::equal;
  if (a.size() != b.size()) return a.indices() <=> b.indices();
  // Equal cardinality: the first differing position of the sorted tuples is
  // decided by the smallest index in the symmetric difference.
  const IndexMask low = (a.mask_ ^ b.mask_) & (~(a.mask_ ^ b.mask_) + 1);
  return (a.mask_ & low) ? std::strong_ordering::less : std::strong_ordering::greater;
}

Generator make_generator(std::span<const int> indices, const GroupParams& params) {
  return Generator::make(indices, params);
}

Generator make_generator(std::initializer_list<int> indices, const GroupParams& params) {
  return Generator::make(std::span<const int>(indices.begin(), indices.size()), params);
}

std::vector<Generator> subsets_of(IndexMask set, int k) {
  std::vector<int> elems;
  for (IndexMask m = set; m != 0; m &= m - 1) elems.push_back(std::countr_zero(m));
  std::vector<Generator> out;
  const int size = static_cast<int>(elems.size());
  if (k > size || k < 0) return out;
  // Lexicographic enumeration of k-combinations of the sorted elements.
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    IndexMask mask = 0;
    for (int p : pick) mask |= IndexMask{1} << elems[p];
    out.push_back(Generator::from_mask(mask));
    int i = k - 1;
    while (i >= 0 && pick[i] == size - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

Word::Word(const GroupParams& params, std::vector<Generator> letters)
    : params_(params), letters_(std::move(letters)) {
  for (Generator g : letters_) validate_letter(g, params_);
}

Word multiply(const Word& lhs, const Word& rhs) {
  require_same_params(lhs, rhs);
  std::vector<Generator> out(lhs.letters().begin(), lhs.letters().end());
  out.insert(out.end(), rhs.letters().begin(), rhs.letters().end());
  return Word(lhs.params(), std::move(out));
}

Word inverse(const Word& w) {
  std::vector<Generator> out(w.letters().rbegin(), w.letters().rend());
  return Word(w.params(), std::move(out));
}

namespace detail {

// Reduced word first (free cancellation modulo commutation), then the
// lexicographically least linearisation of its dependence order.
std::vector<Generator> normal_form_letters(std::span<const Generator> letters, int k) {
  std::vector<Generator> reduced;
  reduced.reserve(letters.size());
  for (Generator g : letters) {
    bool cancelled = false;
    for (std::size_t j = reduced.size(); j-- > 0;) {
      if (reduced[j] == g) {
        reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(j));
        cancelled = true;
        break;
      }
      if (!commute(reduced[j], g, k)) break;
    }
    if (!cancelled) reduced.push_back(g);
  }

  const std::size_t len = reduced.size();
  std::vector<std::vector<std::size_t>> successors(len);
  std::vector<std::size_t> blocked(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    for (std::size_t j = i + 1; j < len; ++j) {
      if (!commute(reduced[i], reduced[j], k)) {
        successors[i].push_back(j);
        ++blocked[j];
      }
    }
  }
  auto later = [&](std::size_t a, std::size_t b) { return reduced[b] < reduced[a]; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)> ready(later);
  for (std::size_t i = 0; i < len; ++i) {
    if (blocked[i] == 0) ready.push(i);
  }
  std::vector<Generator> out;
  out.reserve(len);
  while (!ready.empty()) {
    const std::size_t i = ready.top();
    ready.pop();
    out.push_back(reduced[i]);
    for (std::size_t j : successors[i]) {
      if (--blocked[j] == 0) ready.push(j);
    }
  }
  return out;
}

}  // namespace detail

Word normal_form(const Word& w) {
  return Word(w.params(), detail::normal_form_letters(w.letters(), w.params().k));
}

std::vector<Rewrite> applicable_rewrites(const Word& w) {
  const int k = w.params().k;
  const auto letters = w.letters();
  std::vector<Rewrite> out;
  for (std::size_t j = 0; j < letters.size(); ++j) {
    const Generator a = letters[j];
    // Walk left while a commutes with everything passed so far.
    for (std::size_t i = j; i-- > 0;) {
      const Generator b = letters[i];
      if (b == a) {
        out.push_back({RewriteKind::Cancel, i, j});
        break;
      }
      if (!commute(a, b, k)) break;
      if (a < b) out.push_back({RewriteKind::Reorder, i, j});
    }
  }
  return out;
}

Word apply_rewrite(const Word& w, const Rewrite& rewrite) {
  std::vector<Generator> letters(w.letters().begin(), w.letters().end());
  const auto from = static_cast<std::ptrdiff_t>(rewrite.from);
  const auto to = static_cast<std::ptrdiff_t>(rewrite.to);
  if (rewrite.kind == RewriteKind::Cancel) {
    letters.erase(letters.begin() + to);
    letters.erase(letters.begin() + from);
  } else {
    std::rotate(letters.begin() + from, letters.begin() + to, letters.begin() + to + 1);
  }
  return Word(w.params(), std::move(letters));
}

ParityVector::ParityVector(std::vector<Generator> odd) : odd_(std::move(odd)) {
  std::sort(odd_.begin(), odd_.end());
}

bool ParityVector::parity(Generator g) const {
  return std::binary_search(odd_.begin(), odd_.end(), g);
}

ParityVector abelianize(const Word& w) {
  std::vector<Generator> sorted(w.letters().begin(), w.letters().end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Generator> odd;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    if ((j - i) % 2 == 1) odd.push_back(sorted[i]);
    i = j;
  }
  return ParityVector(std::move(odd));
}

Word include_up(const Word& w) {
  const GroupParams& p = w.params();
  if (p.n + 1 > kMaxPoints) {
    throw Error(ErrorCode::InvalidParams, "include_up would exceed n=63");
  }
  const GroupParams up{p.n + 1, p.k + 1};
  std::vector<Generator> out;
  out.reserve(w.size());
  for (Generator g : w.letters()) out.push_back(Generator::from_mask(g.mask() | bit_of(p.n + 1)));
  return Word(up, std::move(out));
}

Word project_down(const Word& w) {
  const GroupParams& p = w.params();
  if (p.k < 3) {
    throw Error(ErrorCode::InvalidParams, "project_down needs k >= 3, got " + to_string(p));
  }
  const GroupParams down{p.n - 1, p.k - 1};
  std::vector<Generator> out;
  for (Generator g : w.letters()) {
    if (g.contains(p.n)) out.push_back(Generator::from_mask(g.mask() & ~bit_of(p.n)));
  }
  return Word(down, std::move(out));
}

Word delete_index(const Word& w, int index) {
  const GroupParams& p = w.params();
  if (p.k < 3 || index < 1 || index > p.n) {
    throw Error(ErrorCode::InvalidParams, "delete_index needs k >= 3 and 1 <= index <= n");
  }
  const GroupParams down{p.n - 1, p.k - 1};
  const IndexMask below = bit_of(index) - 1;
  std::vector<Generator> out;
  for (Generator g : w.letters()) {
    if (!g.contains(index)) continue;
    const IndexMask m = g.mask();
    out.push_back(Generator::from_mask((m & below) | ((m >> 1) & ~below)));
  }
  return Word(down, std::move(out));
}

Word epsilon_element(const GroupParams& params, std::span<const int> fixed,
                     std::span<const int> order) {
  if (static_cast<int>(fixed.size()) != params.k - 1) {
    throw Error(ErrorCode::WrongCardinality, "fixed set must have k-1 indices");
  }
  IndexMask fixed_mask = 0;
  for (int i : fixed) {
    if (i < 1 || i > params.n) throw Error(ErrorCode::IndexOutOfRange, "fixed index out of range");
    if (fixed_mask & bit_of(i)) throw Error(ErrorCode::DuplicateIndex, "fixed index repeated");
    fixed_mask |= bit_of(i);
  }
  if (static_cast<int>(order.size()) != params.n - params.k + 1) {
    throw Error(ErrorCode::WrongCardinality, "order must list the n-k+1 remaining indices");
  }
  IndexMask seen = 0;
  std::vector<Generator> half;
  for (int l : order) {
    if (l < 1 || l > params.n) throw Error(ErrorCode::IndexOutOfRange, "order index out of range");
    if ((fixed_mask | seen) & bit_of(l)) {
      throw Error(ErrorCode::DuplicateIndex, "order index repeated or fixed");
    }
    seen |= bit_of(l);
    half.push_back(Generator::from_mask(fixed_mask | bit_of(l)));
  }
  std::vector<Generator> letters = half;
  letters.insert(letters.end(), half.begin(), half.end());
  return Word(params, std::move(letters));
}

Word relator(const GroupParams& params, RelatorKind kind, std::span<const Generator> data) {
  for (Generator g : data) validate_letter(g, params);
  switch (kind) {
    case RelatorKind::Involution:
      if (data.size() != 1) throw Error(ErrorCode::InvalidRelatorData, "involution takes one generator");
      return Word(params, {data[0], data[0]});
    case RelatorKind::Commutation:
      if (data.size() != 2 || !commute(data[0], data[1], params.k)) {
        throw Error(ErrorCode::InvalidRelatorData, "commutation needs two generators with |p∩q| < k-1");
      }
      return Word(params, {data[0], data[1], data[0], data[1]});
    case RelatorKind::Tetrahedron: {
      if (static_cast<int>(data.size()) != params.k + 1) {
        throw Error(ErrorCode::InvalidRelatorData, "tetrahedron relator needs k+1 generators");
      }
      IndexMask u = 0;
      for (Generator g : data) u |= g.mask();
      std::vector<Generator> sorted(data.begin(), data.end());
      std::sort(sorted.begin(), sorted.end());
      if (std::popcount(u) != params.k + 1 || sorted != subsets_of(u, params.k)) {
        throw Error(ErrorCode::InvalidRelatorData,
                    "tetrahedron relator needs every k-subset of one (k+1)-set exactly once");
      }
      std::vector<Generator> letters(data.begin(), data.end());
      letters.insert(letters.end(), data.begin(), data.end());
      return Word(params, std::move(letters));
    }
  }
  throw Error(ErrorCode::InvalidRelatorData, "unknown relator kind");
}

}  // namespace gnk
