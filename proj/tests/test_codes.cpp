#include <random>

#include <gtest/gtest.h>

#include "support/random_towers.hpp"
#include "toeplitz/codes.hpp"
#include "toeplitz/io.hpp"
#include "toeplitz/skeleton.hpp"

using namespace toeplitz;

namespace {

  Alphabet binary() {
    return Alphabet({"0", "1"});
  }

  std::string deepest(SkeletonTower const& t) {
    return render(t.alphabet(), t.deepest_word());
  }

  BlockCode projection(std::int64_t radius, std::int64_t index) {
    return BlockCode::from_function(
        binary(), radius, [=](std::span<Cell const> w) { return w[index]; });
  }

}  // namespace

TEST(BlockCode, TableShapeIsChecked) {
  EXPECT_THROW(BlockCode(binary(), 1, std::vector<Cell>(7, 0)), Error);
  EXPECT_THROW(BlockCode(binary(), 0, {0, 2}), AlphabetError);
  EXPECT_THROW(BlockCode(binary(), -1, {}), Error);
  auto c = BlockCode::identity(binary());
  EXPECT_EQ(c.window_count(), 2u);
  EXPECT_EQ(c.table(), (std::vector<Cell>{0, 1}));
  auto mid = projection(1, 1);
  EXPECT_EQ(mid.window_index(std::vector<Cell>{1, 0, 0}), 4u);
}

TEST(ApplyBlockCode, IdentityKeepsTheTower) {
  auto g1 = generate_paper_example(1);
  EXPECT_EQ(apply_block_code(g1, BlockCode::identity(binary())), g1);
}

TEST(ApplyBlockCode, WindowsTouchingHolesLoseTheirCells) {
  auto g2  = generate_paper_example(2);
  auto out = apply_block_code(g2, projection(1, 1));
  // filled exactly at {10..19, 0..4}
  EXPECT_EQ(deepest(out), "00100_____0111001010");
  EXPECT_EQ(out.periods(), g2.periods());
}

TEST(ApplyBlockCode, LeftProjectionShiftsFullyWindowedCells) {
  auto g1  = generate_paper_example(1);
  auto out = apply_block_code(g1, projection(1, 0));
  // every filled cell of "0_1_00___0" has a Blank neighbour
  EXPECT_EQ(deepest(out), "__________");
  auto g2 = generate_paper_example(2);
  EXPECT_EQ(deepest(apply_block_code(g2, projection(1, 0))),
            "00010_____0011100101");
}

TEST(ApplyBlockCode, AlphabetsMustMatch) {
  auto g1 = generate_paper_example(1);
  EXPECT_THROW(apply_block_code(g1, BlockCode::identity(Alphabet({"a", "b"}))),
               AlphabetMismatchError);
}

TEST(ApplyBlockCode, RadiusZeroBijectionActsCellwise) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    auto t    = fixtures::random_tower(rng);
    auto k    = static_cast<Cell>(t.alphabet().size());
    auto code = BlockCode::from_function(
        t.alphabet(), 0, [k](std::span<Cell const> w) { return (w[0] + 1) % k; });
    std::vector<std::vector<Cell>> perms{std::vector<Cell>(k)};
    for (Cell c = 0; c < k; ++c) {
      perms[0][c] = (c + 1) % k;
    }
    PositionwisePermutation phi(t.alphabet(), perms);
    EXPECT_EQ(apply_block_code(t, code), apply_positionwise_permutation(t, phi));
  }
}

TEST(PositionwisePermutation, Examples) {
  auto g1  = generate_paper_example(1);
  auto phi = parse_perms(binary(), "1:0,id,id,id,1:0");
  EXPECT_EQ(deepest(apply_positionwise_permutation(g1, phi)), "1_1_11___1");
  EXPECT_EQ(apply_positionwise_permutation(
                g1, PositionwisePermutation::identity(binary(), 5)),
            g1);
  EXPECT_EQ(apply_positionwise_permutation(
                apply_positionwise_permutation(g1, phi), phi.inverse()),
            g1);
}

TEST(PositionwisePermutation, Preconditions) {
  auto g1 = generate_paper_example(1);
  EXPECT_THROW(PositionwisePermutation(binary(), {{0, 0}}), Error);
  EXPECT_THROW(PositionwisePermutation(binary(), {}), Error);
  EXPECT_THROW(apply_positionwise_permutation(
                   g1, PositionwisePermutation::identity(binary(), 3)),
               PeriodMismatchError);
  // 4 divides the deepest period 20 but not the declared period 10
  auto g2 = generate_paper_example(2);
  EXPECT_THROW(apply_positionwise_permutation(
                   g2, PositionwisePermutation::identity(binary(), 4)),
               PeriodMismatchError);
  EXPECT_THROW(apply_positionwise_permutation(
                   g1, PositionwisePermutation::identity(Alphabet({"a", "b"}), 5)),
               AlphabetMismatchError);
}

TEST(PositionwisePermutation, CommutesWithBlockAlignedRotation) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    auto t   = fixtures::random_tower(rng);
    auto ps  = t.periods();
    auto p   = ps[fixtures::uniform(rng, 0, static_cast<std::int64_t>(ps.size()) - 1)];
    auto phi = fixtures::random_perms(rng, t.alphabet(), p);
    auto r   = p * fixtures::uniform(rng, -5, 5);
    EXPECT_EQ(apply_positionwise_permutation(rotate_tower(t, r), phi),
              rotate_tower(apply_positionwise_permutation(t, phi), r));
  }
}

TEST(Properties, MarginLaw) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    auto t    = fixtures::random_tower(rng);
    auto code = fixtures::random_code(rng, t.alphabet(), 2);
    auto out  = apply_block_code(t, code);
    ASSERT_EQ(validate_tower(out), out);
    auto m = code.radius();
    for (auto p : divisors(t.deepest_period())) {
      auto a = periodic_part(t, p);
      auto b = periodic_part(out, p);
      for (std::int64_t k = 0; k < p; ++k) {
        bool margin = true;
        for (auto d = -m; d <= m; ++d) {
          margin &= a.membership(k + d) == Membership::In;
        }
        if (margin) {
          ASSERT_EQ(b.membership(k), Membership::In);
        }
      }
    }
  }
}
