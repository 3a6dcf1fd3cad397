#include <doctest.h>

#include "gnk/equality.hpp"
#include "gnk/error.hpp"
#include "gnk/word_io.hpp"
#include "support.hpp"

using namespace gnk;
using gnk::testing::random_relator;
using gnk::testing::random_word;

namespace {

Word w(const GroupParams& p, std::string_view text) { return parse_word(text, p); }

constexpr std::array kKinds{RelatorKind::Involution, RelatorKind::Commutation, RelatorKind::Tetrahedron};

}  // namespace

TEST_SUITE("equality verdicts") {
  TEST_CASE("relation (3) pair is Equal with a checkable chain") {
    const auto p = GroupParams::make(4, 3);
    const auto v = equal(w(p, "{1,2,3} {1,2,4} {1,3,4} {2,3,4}"), w(p, "{2,3,4} {1,3,4} {1,2,4} {1,2,3}"));
    CHECK(v.status == Verdict::Equal);
    REQUIRE(!v.chain.empty());
    CHECK(v.chain.front().kind == StepKind::Start);
    CHECK(verify_certificate(v.chain));
  }

  TEST_CASE("abelianization separates a letter from the identity") {
    const auto p = GroupParams::make(5, 3);
    const auto v = equal(w(p, "{1,2,3}"), w(p, "e"));
    CHECK(v.status == Verdict::Distinct);
    REQUIRE(v.separation.has_value());
    CHECK(v.separation->invariant == "abelianization");
    CHECK(v.separation->left_value == "{1,2,3}");
    CHECK(v.separation->right_value == "0");
  }

  TEST_CASE("involution is Equal to the identity within budget 1") {
    Rng rng(11);
    for (const auto& p : gnk::testing::params_up_to(7)) {
      const Generator g = gnk::testing::random_generator(p, rng);
      const auto v = equal(Word(p, {g, g}), Word(p), SearchBudget{1, 0});
      CHECK(v.status == Verdict::Equal);
    }
  }

  TEST_CASE("params mismatch is an error") {
    CHECK_THROWS_AS(equal(Word(GroupParams::make(5, 3)), Word(GroupParams::make(5, 4))), Error);
  }

  TEST_CASE("exhausted budget yields Unknown, not Distinct") {
    // Two independent relation (3) moves are needed.
    const auto p = GroupParams::make(5, 3);
    const Word lhs = w(p, "{1,2,3} {1,2,4} {1,3,4} {2,3,4} {2,3,5} {2,4,5} {3,4,5} {2,3,4}");
    const Word rhs = w(p, "{2,3,4} {1,3,4} {1,2,4} {1,2,3} {2,3,4} {3,4,5} {2,4,5} {2,3,5}");
    for (const SearchBudget budget : {SearchBudget{10000, 1}, SearchBudget{2, 6}}) {
      const auto v = equal(lhs, rhs, budget);
      CHECK(v.status == Verdict::Unknown);
      CHECK(v.chain.empty());
      CHECK(!v.separation.has_value());
    }
    CHECK(equal(lhs, rhs).status == Verdict::Equal);
  }

  TEST_CASE("a word distinguished only by an S3 representation") {
    // a_123 a_124 and a_124 a_123 have equal parities but do not commute.
    const auto p = GroupParams::make(4, 3);
    const auto v = equal(w(p, "{1,2,3} {1,2,4}"), w(p, "{1,2,4} {1,2,3}"));
    CHECK(v.status == Verdict::Distinct);
    REQUIRE(v.separation.has_value());
    CHECK(v.separation->invariant != "abelianization");
  }
}

TEST_SUITE("relators are trivial") {
  TEST_CASE("every kind, random instances, default budget") {
    Rng rng(21);
    for (const auto& p : gnk::testing::params_up_to(6)) {
      for (RelatorKind kind : kKinds) {
        for (int trial = 0; trial < 20; ++trial) {
          const auto r = random_relator(p, kind, rng);
          if (!r) break;
          const auto v = equal(*r, Word(p));
          CHECK_MESSAGE(v.status == Verdict::Equal, to_string(p), " ", format_word(*r));
          CHECK(verify_certificate(v.chain));
        }
      }
    }
  }

  TEST_CASE("kind 3 for every ordering of the subsets of U") {
    const auto p = GroupParams::make(5, 3);
    auto subsets = subsets_of(0b01111, 3);
    std::sort(subsets.begin(), subsets.end());
    int orderings = 0;
    do {
      const auto v = equal(relator(p, RelatorKind::Tetrahedron, subsets), Word(p));
      CHECK(v.status == Verdict::Equal);
      ++orderings;
    } while (std::next_permutation(subsets.begin(), subsets.end()));
    CHECK(orderings == 24);
  }
}

TEST_SUITE("group laws") {
  TEST_CASE("w times its inverse is Equal to e") {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
      const auto p = GroupParams::make(5 + static_cast<int>(rng.below(3)), 3 + static_cast<int>(rng.below(2)));
      const Word x = random_word(p, rng, 8);
      const auto v = equal(multiply(x, inverse(x)), Word(p));
      CHECK(v.status == Verdict::Equal);
    }
  }

  TEST_CASE("longer products with their inverse are never Distinct") {
    Rng rng(32);
    for (int trial = 0; trial < 50; ++trial) {
      const auto p = GroupParams::make(6, 3);
      const Word x = random_word(p, rng, 40);
      CHECK(equal(multiply(x, inverse(x)), Word(p)).status != Verdict::Distinct);
    }
  }

  TEST_CASE("words joined by relator insertions are never Distinct") {
    Rng rng(33);
    for (int trial = 0; trial < 300; ++trial) {
      const auto p = GroupParams::make(5 + static_cast<int>(rng.below(2)), 3);
      const Word base = random_word(p, rng, 10);
      Word other = base;
      for (int step = 0; step < 2; ++step) {
        const auto r = random_relator(p, kKinds[rng.below(3)], rng);
        if (r) other = gnk::testing::insert_at(other, *r, rng.below(other.size() + 1));
      }
      const auto v = equal(base, other);
      CHECK(v.status != Verdict::Distinct);
      if (v.status == Verdict::Equal) CHECK(verify_certificate(v.chain));
    }
  }
}

TEST_SUITE("certificates") {
  TEST_CASE("a tampered chain is rejected") {
    const auto p = GroupParams::make(5, 3);
    const auto subsets = subsets_of(0b11110, 3);
    const Word r = relator(p, RelatorKind::Tetrahedron, subsets);
    const Word lhs = multiply(w(p, "{1,2,3}"), r);
    auto v = equal(lhs, w(p, "{1,2,3}"));
    REQUIRE(v.status == Verdict::Equal);
    CHECK(verify_certificate(v.chain));
    auto broken = v.chain;
    broken.back().word = w(p, "{1,2,4}");
    CHECK_FALSE(verify_certificate(broken));
    CHECK_FALSE(verify_certificate({}));
    CHECK(format_certificate(v.chain).find("start") != std::string::npos);
  }

  TEST_CASE("relation (3) moves see through commuting letters") {
    // {1,5,6} commutes with every letter of U = {1,2,3,4} when k = 3.
    const auto p = GroupParams::make(6, 3);
    const Word lhs = w(p, "{1,2,3} {1,2,4} {4,5,6} {1,3,4} {2,3,4}");
    const Word rhs = w(p, "{4,5,6} {2,3,4} {1,3,4} {1,2,4} {1,2,3}");
    const auto v = equal(lhs, rhs);
    CHECK(v.status == Verdict::Equal);
    CHECK(verify_certificate(v.chain));
  }
}

TEST_SUITE("hierarchy maps and relators") {
  TEST_CASE("project_down sends relators to relators") {
    Rng rng(41);
    for (const auto& p : gnk::testing::params_up_to(7, 3, 4)) {
      for (RelatorKind kind : kKinds) {
        for (int trial = 0; trial < 10; ++trial) {
          const auto r = random_relator(p, kind, rng);
          if (!r) break;
          const auto v = equal(project_down(*r), Word(GroupParams::make(p.n - 1, p.k - 1)));
          CHECK(v.status == Verdict::Equal);
        }
      }
    }
  }

  TEST_CASE("include_up preserves relations (1) and (2)") {
    Rng rng(42);
    for (const auto& p : gnk::testing::params_up_to(6, 3, 4)) {
      for (RelatorKind kind : {RelatorKind::Involution, RelatorKind::Commutation}) {
        for (int trial = 0; trial < 10; ++trial) {
          const auto r = random_relator(p, kind, rng);
          if (!r) break;
          CHECK(equal(include_up(*r), Word(GroupParams::make(p.n + 1, p.k + 1))).status == Verdict::Equal);
        }
      }
    }
  }

  TEST_CASE("include_up image of a relation (3) relator is certified non-trivial") {
    // U ∪ {n+1} contains one more (k+1)-subset than the images use, so the
    // image is not a relator of the bigger group; an S3 representation
    // witnesses that it is not trivial there either.
    Rng rng(43);
    for (const auto& p : gnk::testing::params_up_to(6, 3, 4)) {
      const auto r = random_relator(p, RelatorKind::Tetrahedron, rng);
      const auto v = equal(include_up(*r), Word(GroupParams::make(p.n + 1, p.k + 1)));
      CHECK(v.status == Verdict::Distinct);
      REQUIRE(v.separation.has_value());
      CHECK(v.separation->invariant.find("S3") != std::string::npos);
    }
  }
}

TEST_SUITE("invariant battery") {
  TEST_CASE("every battery member kills every relator") {
    for (const auto& p : gnk::testing::params_up_to(6, 2, 4)) {
      CHECK_MESSAGE(battery_respects_relators(p), to_string(p));
    }
  }

  TEST_CASE("local S3 images multiply like permutations") {
    const auto p = GroupParams::make(4, 3);
    LocalS3Rep rep{0b1111, {1, 2, 3, 0}};
    // (01)(02) is a 3-cycle, so the square is not the identity.
    const int x = evaluate(rep, w(p, "{1,2,3} {1,2,4}"), p.k);
    CHECK_FALSE(is_identity(x));
    CHECK(is_identity(evaluate(rep, w(p, "{1,2,3} {1,2,3}"), p.k)));
    CHECK(is_identity(evaluate(rep, w(p, "{1,2,3} {1,2,4} {1,3,4} {2,3,4} {1,2,3} {1,2,4} {1,3,4} {2,3,4}"), p.k)));
  }
}
