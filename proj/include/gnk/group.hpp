#pragma once

// Words in the groups G_n^k: generators a_m indexed by k-subsets m of
// {1..n}, subject to
//   (1) a_m^2 = 1,
//   (2) a_m a_m' = a_m' a_m whenever |m ∩ m'| < k-1,
//   (3) (a_{m^1} ... a_{m^{k+1}})^2 = 1 for every ordering of the k-subsets
//       of a (k+1)-set U.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gnk {

using IndexMask = std::uint64_t;

inline constexpr int kMaxPoints = 63;

struct GroupParams {
  int n = 0;
  int k = 0;

  /// Validated constructor: requires n > k >= 2 and n <= kMaxPoints.
  static GroupParams make(int n, int k);

  friend bool operator==(const GroupParams&, const GroupParams&) = default;
};

std::string to_string(const GroupParams& params);

/// A k-subset of {1..n}, stored as a bit mask (bit i-1 set for index i).
class Generator {
 public:
  Generator() = default;

  /// Sorts and validates; throws WrongCardinality, IndexOutOfRange or
  /// DuplicateIndex.
  static Generator make(std::span<const int> indices, const GroupParams& params);
  static constexpr Generator from_mask(IndexMask mask) noexcept { return Generator(mask); }

  constexpr IndexMask mask() const noexcept { return mask_; }
  int size() const noexcept;
  bool contains(int index) const noexcept { return (mask_ >> (index - 1)) & 1U; }
  std::vector<int> indices() const;

  friend constexpr bool operator==(Generator, Generator) = default;
  /// Lexicographic order on the sorted index tuples.
  friend std::strong_ordering operator<=>(Generator a, Generator b) noexcept;

 private:
  constexpr explicit Generator(IndexMask mask) : mask_(mask) {}
  IndexMask mask_ = 0;
};

Generator make_generator(std::span<const int> indices, const GroupParams& params);
Generator make_generator(std::initializer_list<int> indices, const GroupParams& params);

/// Relation (2): distinct generators whose index sets share fewer than k-1
/// elements. A generator does not "commute" with itself in this sense.
inline bool commute(Generator a, Generator b, int k) noexcept {
  return a != b && __builtin_popcountll(a.mask() & b.mask()) < k - 1;
}

/// All k-subsets of the index set `set`, in lexicographic order.
std::vector<Generator> subsets_of(IndexMask set, int k);

/// Immutable group element representative.
class Word {
 public:
  explicit Word(const GroupParams& params, std::vector<Generator> letters = {});

  const GroupParams& params() const noexcept { return params_; }
  std::span<const Generator> letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Generator operator[](std::size_t i) const { return letters_[i]; }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  GroupParams params_;
  std::vector<Generator> letters_;
};

Word multiply(const Word& lhs, const Word& rhs);
/// Every generator is an involution, so the inverse is the reversal.
Word inverse(const Word& w);

/// Shortlex-minimal word reachable using relations (1) and (2) only.
Word normal_form(const Word& w);

// --- rewrite system for relations (1)+(2) -------------------------------
//
// Cancel:  a u a -> u      when a commutes with every letter of u
// Reorder: b u a -> a b u  when a < b and a commutes with b and with u
//
// The system terminates and every maximal rewriting sequence ends at
// normal_form(w); tests exercise that claim with randomized orders.

enum class RewriteKind { Cancel, Reorder };

struct Rewrite {
  RewriteKind kind;
  std::size_t from;  ///< position of the left letter (a for Cancel, b for Reorder)
  std::size_t to;    ///< position of the right letter (the moving/cancelled a)
};

std::vector<Rewrite> applicable_rewrites(const Word& w);
Word apply_rewrite(const Word& w, const Rewrite& rewrite);

// --- abelianization -------------------------------------------------------

/// Letter counts mod 2. Every relation has even letter counts, so this is a
/// group invariant with values in an elementary abelian 2-group.
class ParityVector {
 public:
  ParityVector() = default;
  explicit ParityVector(std::vector<Generator> odd);

  bool is_zero() const noexcept { return odd_.empty(); }
  bool parity(Generator g) const;
  /// Generators with odd count, sorted.
  std::span<const Generator> support() const noexcept { return odd_; }

  friend bool operator==(const ParityVector&, const ParityVector&) = default;

 private:
  std::vector<Generator> odd_;
};

ParityVector abelianize(const Word& w);

// --- hierarchy --------------------------------------------------------------

/// G_n^k -> G_{n+1}^{k+1}, a_m -> a_{m ∪ {n+1}}.
Word include_up(const Word& w);
/// G_n^k -> G_{n-1}^{k-1}: letters without n vanish, a_m -> a_{m \ {n}}
/// otherwise. Requires k >= 3.
Word project_down(const Word& w);

/// Generalised projection deleting index `index` instead of n; the remaining
/// indices are relabelled to 1..n-1 preserving order.
Word delete_index(const Word& w, int index);

// --- distinguished elements -------------------------------------------------

/// (a_{F∪{l_1}} ... a_{F∪{l_r}})^2 for a (k-1)-set F and an ordering l of its
/// complement.
Word epsilon_element(const GroupParams& params, std::span<const int> fixed,
                     std::span<const int> order);

enum class RelatorKind { Involution = 1, Commutation = 2, Tetrahedron = 3 };

/// Relator words. Data per kind:
///   Involution:  {m}                -> a_m a_m
///   Commutation: {p, q}, |p∩q|<k-1  -> a_p a_q a_p a_q
///   Tetrahedron: all k+1 k-subsets of one (k+1)-set, in the desired order
///                -> (a_{m^1} ... a_{m^{k+1}})^2
Word relator(const GroupParams& params, RelatorKind kind, std::span<const Generator> data);

}  // namespace gnk
