#include <gtest/gtest.h>

#include "support/periodic.hpp"
#include "toeplitz/codes.hpp"
#include "toeplitz/conjugacy.hpp"
#include "toeplitz/oracle.hpp"
#include "toeplitz/skeleton.hpp"

using namespace toeplitz;

namespace {

  Alphabet binary() {
    return Alphabet({"0", "1"});
  }

  PeriodicWord word(std::string_view s) {
    return PeriodicWord::parse(binary(), s);
  }

  SkeletonTower single(PeriodicWord const& w) {
    return validate_tower(TowerData{
        binary(), {{w.length(), PartialCyclicWord(w.cells())}}, std::nullopt});
  }

}  // namespace

TEST(PeriodicWord, RejectsBlanksAndForeignSymbols) {
  EXPECT_THROW(PeriodicWord({0, kBlank}, 2), Error);
  EXPECT_THROW(PeriodicWord({0, 2}, 2), AlphabetError);
  EXPECT_THROW(PeriodicWord({}, 2), Error);
  EXPECT_THROW(PeriodicWord::parse(binary(), "0_1"), Error);
  EXPECT_EQ(word("0110").at(-1), 0);
}

TEST(ExactPeriodicAnalysis, Examples) {
  // positions 0, 2 carry 0, 1 but positions 1, 3 agree
  auto a = exact_periodic_analysis(word("0010"), 2);
  EXPECT_EQ(a.in, (std::vector<bool>{false, true}));
  EXPECT_EQ(a.skeleton, (std::vector<Cell>{kBlank, 0}));
  EXPECT_TRUE(a.essential);
  EXPECT_EQ(exact_periodic_analysis(word("0110"), 2).in,
            (std::vector<bool>{false, false}));

  auto b = exact_periodic_analysis(word("0101"), 2);
  EXPECT_EQ(b.in, (std::vector<bool>{true, true}));
  EXPECT_EQ(b.skeleton, (std::vector<Cell>{0, 1}));
  EXPECT_TRUE(b.essential);
  EXPECT_FALSE(exact_periodic_analysis(word("0101"), 4).essential);

  auto c = exact_periodic_analysis(word("011010"), 6);
  EXPECT_EQ(c.in, std::vector<bool>(6, true));
  EXPECT_THROW(exact_periodic_analysis(word("0101"), 3), NonDivisorError);
}

TEST(ExactConjugacySearch, Examples) {
  auto id = exact_conjugacy_search(word("0110"), word("0110"), 1);
  ASSERT_TRUE(id.has_value());
  EXPECT_EQ(id->radius, 0);
  EXPECT_EQ(id->shift, 0);
  EXPECT_EQ(id->forward, (std::map<std::vector<Cell>, Cell>{{{0}, 0}, {{1}, 1}}));

  auto half = exact_conjugacy_search(word("0011"), word("1100"), 0);
  ASSERT_TRUE(half.has_value());
  EXPECT_EQ(half->radius, 0);
  EXPECT_EQ(half->shift, 2);

  // orbits of equal size are conjugate; distinct 3-windows make radius 1
  // enough in both directions
  auto freq = exact_conjugacy_search(word("0011"), word("0111"), 1);
  ASSERT_TRUE(freq.has_value());
  EXPECT_EQ(freq->radius, 1);
  EXPECT_EQ(freq->inverse_radius, 1);
  EXPECT_FALSE(exact_conjugacy_search(word("0011"), word("0111"), 0).has_value());

  // a fixed point is never conjugate to a 2-cycle
  EXPECT_FALSE(exact_conjugacy_search(word("00"), word("01"), 2).has_value());
  EXPECT_THROW(exact_conjugacy_search(word("01"), PeriodicWord({0, 2}, 3), 0),
               AlphabetMismatchError);
}

TEST(OracleAgreement, SkeletonModuleOnAllShortWords) {
  for (std::int64_t n = 1; n <= 8; ++n) {
    for (auto const& cells : fixtures::all_words(2, n)) {
      PeriodicWord w(cells, 2);
      auto         t = single(w);
      for (auto p : divisors(n)) {
        auto exact = exact_periodic_analysis(w, p);
        auto s     = periodic_part(t, p);
        auto sk    = skeleton_word(t, p);
        for (std::int64_t r = 0; r < p; ++r) {
          ASSERT_EQ(s.membership(r) == Membership::In, exact.in[r]);
          ASSERT_NE(s.membership(r), Membership::Unknown);
          ASSERT_EQ(sk.word.at(r), exact.skeleton[r]);
        }
        auto st = essential_period_status(t, p);
        ASSERT_NE(st, EssentialStatus::Unknown);
        ASSERT_EQ(st == EssentialStatus::EssentialCertified, exact.essential)
            << render(binary(), t.deepest_word()) << " p=" << p;
      }
    }
  }
}

TEST(OracleAgreement, GammaIsABijectionUnderFoundConjugacies) {
  int checked = 0;
  for (std::int64_t n = 1; n <= 6; ++n) {
    auto words = fixtures::all_words(2, n);
    for (auto const& v : words) {
      for (auto const& w : words) {
        PeriodicWord pv(v, 2), pw(w, 2);
        auto         found = exact_conjugacy_search(pv, pw, 2);
        if (!found) {
          continue;
        }
        auto m  = std::max(found->radius, found->inverse_radius);
        auto ta = single(pv);
        auto tb = single(pw);
        for (auto p : divisors(n)) {
          auto sa = periodic_part(ta, p);
          auto sb = periodic_part(tb, p);
          bool margin = true;
          for (auto d = -m; d <= m; ++d) {
            margin &= sa.membership(d) == Membership::In
                      && sb.membership(found->shift + d) == Membership::In;
          }
          if (!margin) {
            continue;
          }
          ++checked;
          ASSERT_TRUE(std::holds_alternative<GammaConsistent>(
              gamma_map(ta, tb, p, found->shift)));
        }
      }
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(OracleAgreement, FoundCodesObeyTheMarginLaw) {
  for (std::int64_t n = 1; n <= 5; ++n) {
    auto words = fixtures::all_words(2, n);
    for (auto const& v : words) {
      for (auto const& w : words) {
        PeriodicWord pv(v, 2), pw(w, 2);
        auto         found = exact_conjugacy_search(pv, pw, 1);
        if (!found) {
          continue;
        }
        auto r    = found->radius;
        auto code = BlockCode::from_function(
            binary(), r, [&](std::span<Cell const> win) {
              auto it = found->forward.find({win.begin(), win.end()});
              return it == found->forward.end() ? Cell{0} : it->second;
            });
        auto ta  = single(pv);
        auto out = apply_block_code(ta, code);
        ASSERT_EQ(out.deepest_word(), single(pw).deepest_word().rotated(found->shift));
        for (auto p : divisors(n)) {
          auto sa = periodic_part(ta, p);
          auto sb = periodic_part(out, p);
          for (std::int64_t k = 0; k < p; ++k) {
            bool margin = true;
            for (auto d = -r; d <= r; ++d) {
              margin &= sa.membership(k + d) == Membership::In;
            }
            if (margin) {
              ASSERT_EQ(sb.membership(k), Membership::In);
            }
          }
        }
      }
    }
  }
}
