#pragma once
// Hand-rolled generators and independent oracles shared by the tests.

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "gnk/group.hpp"
#include "gnk/random.hpp"

namespace gnk::testing {

inline std::vector<int> shuffled(std::vector<int> v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
  return v;
}

inline std::vector<int> iota_from(int first, int count) {
  std::vector<int> v(static_cast<std::size_t>(count));
  std::iota(v.begin(), v.end(), first);
  return v;
}

inline IndexMask random_subset(int n, int size, Rng& rng) {
  const auto all = shuffled(iota_from(1, n), rng);
  IndexMask m = 0;
  for (int i = 0; i < size; ++i) m |= IndexMask{1} << (all[static_cast<std::size_t>(i)] - 1);
  return m;
}

inline Generator random_generator(const GroupParams& p, Rng& rng) {
  return Generator::from_mask(random_subset(p.n, p.k, rng));
}

/// Uniform letters, length uniform in [0, max_len].
inline Word random_word(const GroupParams& p, Rng& rng, std::size_t max_len) {
  const std::size_t len = rng.below(max_len + 1);
  std::vector<Generator> letters;
  for (std::size_t i = 0; i < len; ++i) letters.push_back(random_generator(p, rng));
  return Word(p, std::move(letters));
}

/// Random instance of a relator; kind 2 needs a commuting pair, which exists
/// only when n >= k + 2.
inline std::optional<Word> random_relator(const GroupParams& p, RelatorKind kind, Rng& rng) {
  switch (kind) {
    case RelatorKind::Involution: {
      const Generator g = random_generator(p, rng);
      return relator(p, kind, std::vector<Generator>{g});
    }
    case RelatorKind::Commutation: {
      if (p.n < p.k + 2) return std::nullopt;
      for (;;) {
        const Generator a = random_generator(p, rng);
        const Generator b = random_generator(p, rng);
        if (commute(a, b, p.k)) return relator(p, kind, std::vector<Generator>{a, b});
      }
    }
    case RelatorKind::Tetrahedron: {
      auto subsets = subsets_of(random_subset(p.n, p.k + 1, rng), p.k);
      for (std::size_t i = subsets.size(); i > 1; --i) std::swap(subsets[i - 1], subsets[rng.below(i)]);
      return relator(p, kind, subsets);
    }
  }
  return std::nullopt;
}

/// Splices `insert` into `w` at `pos`.
inline Word insert_at(const Word& w, const Word& insert, std::size_t pos) {
  std::vector<Generator> letters(w.letters().begin(), w.letters().begin() + static_cast<std::ptrdiff_t>(pos));
  letters.insert(letters.end(), insert.letters().begin(), insert.letters().end());
  letters.insert(letters.end(), w.letters().begin() + static_cast<std::ptrdiff_t>(pos), w.letters().end());
  return Word(w.params(), std::move(letters));
}

/// All (n, k) with 2 <= k, k < n <= max_n and k in [k_lo, k_hi].
inline std::vector<GroupParams> params_up_to(int max_n, int k_lo = 3, int k_hi = 5) {
  std::vector<GroupParams> out;
  for (int k = k_lo; k <= k_hi; ++k) {
    for (int n = k + 1; n <= max_n; ++n) out.push_back(GroupParams::make(n, k));
  }
  return out;
}

/// Laplace expansion along the first row; independent of the elimination
/// code under test.
inline double cofactor_det(const std::vector<std::vector<double>>& m) {
  const std::size_t size = m.size();
  if (size == 1) return m[0][0];
  double sum = 0.0;
  for (std::size_t col = 0; col < size; ++col) {
    std::vector<std::vector<double>> minor;
    for (std::size_t r = 1; r < size; ++r) {
      std::vector<double> row;
      for (std::size_t c = 0; c < size; ++c) {
        if (c != col) row.push_back(m[r][c]);
      }
      minor.push_back(std::move(row));
    }
    const double term = m[0][col] * cofactor_det(minor);
    sum += (col % 2 == 0) ? term : -term;
  }
  return sum;
}

}  // namespace gnk::testing
