#pragma once

// Semi-decision procedure for the word problem in G_n^k.
//
// Equal    - a bidirectional breadth-first search over normal forms (modulo
//            relations (1)+(2)) connected by relation-(3) block reversals
//            found a path; the path is returned as a checkable chain.
// Distinct - a homomorphism from the invariant battery separates the words.
// Unknown  - neither; the search budget ran out.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gnk/group.hpp"

namespace gnk {

struct SearchBudget {
  std::size_t max_visited = 10000;  ///< distinct normal forms stored, both sides
  int max_depth = 6;                ///< relation-(3) applications on a path
};

enum class Verdict { Equal, Distinct, Unknown };

std::string_view to_string(Verdict verdict);

enum class StepKind {
  Start,             ///< first word of the chain
  ReduceEquivalent,  ///< same normal form as the previous word
  Relation3,         ///< previous word with one (k+1)-block reversed
};

struct CertificateStep {
  StepKind kind;
  Word word;
  std::size_t block_start = 0;  ///< Relation3 only
};

struct Separation {
  std::string invariant;
  std::string left_value;
  std::string right_value;
};

struct EqualityVerdict {
  Verdict status = Verdict::Unknown;
  std::vector<CertificateStep> chain;       ///< non-empty iff Equal
  std::optional<Separation> separation;     ///< set iff Distinct
  std::size_t visited = 0;
};

EqualityVerdict equal(const Word& lhs, const Word& rhs, const SearchBudget& budget = {});

/// Re-checks every link of a chain produced by `equal`.
bool verify_certificate(const std::vector<CertificateStep>& chain);

std::string format_certificate(const std::vector<CertificateStep>& chain);

/// One application of relation (3) to a normal-form word: `arranged` is a
/// commutation-equivalent rearrangement in which the k+1 letters of one
/// (k+1)-set sit contiguously at `block_start`.
struct BlockMove {
  std::vector<Generator> arranged;
  std::size_t block_start;
};

std::vector<BlockMove> relation3_moves(std::span<const Generator> letters, int n, int k);

// --- invariant battery ------------------------------------------------------

/// A homomorphism G_n^k -> S3 supported on the k-subsets of one (k+1)-set W:
/// images[i] is the image of the i-th subset of W (lexicographic), coded
/// 0 = id, 1 = (0 1), 2 = (0 2), 3 = (1 2). An odd number of transpositions
/// makes every relation-(3) product an involution; all other generators map
/// to the identity.
struct LocalS3Rep {
  IndexMask support;
  std::vector<int> images;
};

/// Image of a word in S3 as an index into the table used by the battery.
int evaluate(const LocalS3Rep& rep, const Word& w, int k);
bool is_identity(int s3_element);

/// First separating invariant, if any: abelianization, then local S3 reps.
std::optional<Separation> separate(const Word& lhs, const Word& rhs);

/// Brute-force check that every battery member kills every relator of
/// G_n^k (all orderings for kind 3). Intended for small (n, k).
bool battery_respects_relators(const GroupParams& params);

}  // namespace gnk
