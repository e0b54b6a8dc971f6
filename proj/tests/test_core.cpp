#include <random>

#include <gtest/gtest.h>

#include "support/random_towers.hpp"
#include "toeplitz/core.hpp"
#include "toeplitz/io.hpp"
#include "toeplitz/supernatural.hpp"

using namespace toeplitz;

namespace {
  Alphabet binary() {
    return Alphabet({"0", "1"});
  }
}  // namespace

TEST(Alphabet, RejectsDegenerateSymbolSets) {
  EXPECT_THROW(Alphabet({"0"}), AlphabetError);
  EXPECT_THROW(Alphabet({"0", "0"}), AlphabetError);
  EXPECT_THROW(Alphabet({"0", "_"}), AlphabetError);
  EXPECT_THROW(Alphabet({"0", "a b"}), AlphabetError);
  EXPECT_THROW(Alphabet({"0", ""}), AlphabetError);
  EXPECT_NO_THROW(Alphabet({"ab", "c"}));
}

TEST(Alphabet, LooksUpSymbols) {
  Alphabet a({"x", "yy", "z"});
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(a.index_of("yy"), 1);
  EXPECT_FALSE(a.find("q").has_value());
  EXPECT_THROW(a.index_of("q"), AlphabetError);
  EXPECT_FALSE(a.single_char());
  EXPECT_TRUE(binary().single_char());
}

TEST(PartialCyclicWord, IndexesCyclically) {
  auto w = parse_word(binary(), "0_1_00___0");
  EXPECT_EQ(w.length(), 10);
  EXPECT_EQ(w.at(2), 1);
  EXPECT_EQ(w.at(12), 1);
  EXPECT_EQ(w.at(-8), 1);
  EXPECT_EQ(w.at(-1), 0);
  EXPECT_EQ(w.blank_count(), 5);
  EXPECT_EQ(render(binary(), w.rotated(1)), "_1_00___00");
  EXPECT_EQ(render(binary(), w.repeated(2)), "0_1_00___00_1_00___0");
}

TEST(PartialCyclicWord, RendersMultiCharAlphabets) {
  Alphabet a({"aa", "b"});
  auto     w = parse_word(a, "aa _ b");
  EXPECT_EQ(render(a, w), "aa _ b");
  EXPECT_EQ(w.at(1), kBlank);
}

TEST(ValidateTower, AcceptsTheDoublingStages) {
  EXPECT_NO_THROW(make_tower({"0", "1"}, {{5, "0___0"}}));
  EXPECT_NO_THROW(make_tower({"0", "1"}, {{5, "0___0"}, {10, "0_1_00___0"}}));
}

TEST(ValidateTower, ReportsTheFirstConsistencyViolation) {
  try {
    make_tower({"0", "1"}, {{5, "0___0"}, {10, "1_1_00___0"}});
    FAIL() << "expected ConsistencyError";
  } catch (ConsistencyError const& e) {
    EXPECT_EQ(e.shallow_level, 0u);
    EXPECT_EQ(e.deep_level, 1u);
    EXPECT_EQ(e.index, 0);
  }
}

TEST(ValidateTower, RejectsStructuralErrors) {
  EXPECT_THROW(make_tower({"0", "1"}, {{4, "0__0"}, {10, "0_1_00___0"}}),
               DivisibilityError);
  EXPECT_THROW(make_tower({"0", "1"}, {{10, "0_1_00___0"}, {5, "0___0"}}),
               DivisibilityError);
  EXPECT_THROW(make_tower({"0", "1"}, {{5, "0___"}}), Error);
  EXPECT_THROW(make_tower({"0", "1"}, {{5, "0___0"}},
                          SupernaturalNumber::parse("3^inf")),
               ScaleError);
  TowerData d{binary(), {{2, PartialCyclicWord({0, 2})}}, std::nullopt};
  EXPECT_THROW(validate_tower(d), AlphabetError);
  TowerData empty{binary(), {}, std::nullopt};
  EXPECT_THROW(validate_tower(empty), Error);
}

TEST(ValidateTower, RejectsAHoleThatIsFilledUniformlyOneLevelDown) {
  // position 1 is a 5-hole but every cell of 1 + 5Z is 0 at period 10
  EXPECT_THROW(make_tower({"0", "1"}, {{5, "0___0"}, {10, "00__000__0"}}),
               ConsistencyError);
}

TEST(RotateTower, MatchesTheIndexShift) {
  auto t = make_tower({"0", "1"}, {{5, "0___0"}});
  EXPECT_EQ(rotate_tower(t, 5), t);
  EXPECT_EQ(render(t.alphabet(), rotate_tower(t, 1).deepest_word()), "___00");
}

TEST(SymbolAt, ReadsTheDeepestLevel) {
  auto g1 = generate_paper_example(1);
  auto g3 = generate_paper_example(3);
  EXPECT_EQ(symbol_at(g1, 2), 1);
  EXPECT_EQ(symbol_at(g1, 12), 1);
  EXPECT_EQ(symbol_at(g3, 27), kBlank);
}

TEST(RotateTower, GroupLawsOnRandomTowers) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto t = fixtures::random_tower(rng);
    auto n = t.deepest_period();
    auto a = fixtures::uniform(rng, -10 * n, 10 * n);
    auto b = fixtures::uniform(rng, -10 * n, 10 * n);
    EXPECT_EQ(rotate_tower(rotate_tower(t, a), -a), t);
    EXPECT_EQ(rotate_tower(rotate_tower(t, a), b), rotate_tower(t, a + b));
    EXPECT_EQ(validate_tower(t), t);
    for (std::int64_t i = -n; i <= n; ++i) {
      EXPECT_EQ(symbol_at(rotate_tower(t, a), i), symbol_at(t, i + a));
    }
  }
}

TEST(PadTower, RepeatsTheDeepestWord) {
  auto g1 = generate_paper_example(1);
  auto p  = pad_tower(g1, 40);
  EXPECT_EQ(p.deepest_period(), 40);
  EXPECT_EQ(p.levels().size(), 3u);
  EXPECT_THROW(pad_tower(g1, 25), IncompatiblePeriodsError);
}

TEST(Supernatural, ParsesAndPrintsCanonically) {
  auto u = SupernaturalNumber::parse(" 5 * 2^inf ");
  EXPECT_EQ(u.to_string(), "2^inf * 5");
  EXPECT_EQ(SupernaturalNumber::parse("1").to_string(), "1");
  EXPECT_EQ(SupernaturalNumber::parse("2^2*3").to_string(), "2^2 * 3");
  EXPECT_EQ(SupernaturalNumber::parse("2^1").to_string(), "2");
  EXPECT_THROW(SupernaturalNumber::parse("4"), ParseError);
  EXPECT_THROW(SupernaturalNumber::parse("2^0"), ParseError);
  EXPECT_THROW(SupernaturalNumber::parse("2 * 2"), ParseError);
  EXPECT_THROW(SupernaturalNumber::parse("2^x"), ParseError);
  EXPECT_THROW(SupernaturalNumber::parse(""), ParseError);
}

TEST(Supernatural, LcmAndDivisibility) {
  auto p = [](char const* s) { return SupernaturalNumber::parse(s); };
  EXPECT_EQ(supernatural_lcm(p("2^2 * 5"), p("2 * 3")), p("2^2 * 3 * 5"));
  EXPECT_EQ(supernatural_lcm(p("2^inf"), p("2^3")), p("2^inf"));
  EXPECT_TRUE(supernatural_equal(p("2^inf * 5"), p("5 * 2^inf")));
  EXPECT_TRUE(divides(40, p("2^inf * 5")));
  EXPECT_FALSE(divides(3, p("2^inf * 5")));
  EXPECT_FALSE(divides(25, p("2^inf * 5")));
  EXPECT_EQ(p("2^3 * 5").value(), 40u);
  EXPECT_THROW((void) p("2^inf").value(), Error);
  EXPECT_THROW((void) p("2^63 * 3").value(), OverflowError);
  EXPECT_EQ(SupernaturalNumber::lcm_of_progression(2, 2), p("2^inf"));
  EXPECT_EQ(SupernaturalNumber::lcm_of_progression(2, 4), p("2^inf"));
  EXPECT_EQ(SupernaturalNumber::lcm_of_progression(5, 2), p("2^inf * 5"));
}

TEST(Supernatural, LatticeLaws) {
  std::vector<SupernaturalNumber> sample;
  for (auto s : {"1", "2", "2^inf", "2^2 * 3", "3^inf * 5", "2 * 3 * 5 * 7",
                 "7^3", "2^inf * 3^inf"}) {
    sample.push_back(SupernaturalNumber::parse(s));
  }
  for (auto const& a : sample) {
    EXPECT_EQ(supernatural_lcm(a, a), a);
    for (auto const& b : sample) {
      EXPECT_EQ(supernatural_lcm(a, b), supernatural_lcm(b, a));
      for (auto const& c : sample) {
        EXPECT_EQ(supernatural_lcm(supernatural_lcm(a, b), c),
                  supernatural_lcm(a, supernatural_lcm(b, c)));
      }
    }
  }
  for (std::uint64_t q = 1; q <= 60; ++q) {
    for (std::uint64_t r = 1; r <= 60; ++r) {
      auto u = SupernaturalNumber::from_integer(r);
      if (r % q == 0) {
        EXPECT_TRUE(divides(q, u)) << q << " | " << r;
      } else {
        EXPECT_FALSE(divides(q, u)) << q << " | " << r;
      }
    }
  }
}
