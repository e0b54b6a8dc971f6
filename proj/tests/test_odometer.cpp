#include <random>

#include <gtest/gtest.h>

#include "toeplitz/odometer.hpp"

using namespace toeplitz;

namespace {
  using V = std::vector<std::int64_t>;
}

TEST(OdometerPoint, RejectsIncoherentCoordinates) {
  EXPECT_NO_THROW(OdometerPoint(V{2, 4, 8}, V{1, 3, 7}));
  EXPECT_THROW(OdometerPoint(V{2, 4, 8}, V{1, 2, 7}), Error);
  EXPECT_THROW(OdometerPoint(V{2, 4, 8}, V{1, 3, 8}), Error);
  EXPECT_THROW(OdometerPoint(V{4, 6}, V{0, 0}), DivisibilityError);
  EXPECT_THROW(OdometerPoint(V{1, 2}, V{0, 0}), DivisibilityError);
  EXPECT_THROW(OdometerPoint(V{2, 4}, V{0}), Error);
}

TEST(OdometerAdd, Examples) {
  EXPECT_EQ(odometer_add(OdometerPoint(V{2, 4, 8}, V{1, 3, 7}), 1).coords(),
            (V{0, 0, 0}));
  EXPECT_EQ(odometer_add(OdometerPoint(V{2, 4, 8}, V{0, 0, 0}), 5).coords(),
            (V{1, 1, 5}));
  EXPECT_EQ(odometer_add(OdometerPoint(V{2, 4, 8}, V{0, 0, 0}), -1).coords(),
            (V{1, 3, 7}));
}

TEST(PsiCoordinates, Examples) {
  EXPECT_EQ(psi_coordinates(7, V{2, 4, 8}).coords(), (V{1, 3, 7}));
  EXPECT_EQ(psi_coordinates(-1, V{2, 4, 8}).coords(), (V{1, 3, 7}));
}

TEST(PsiCoordinates, FactorRelation) {
  for (auto const& periods : {V{2, 4, 8}, V{5, 10, 20, 40}, V{3, 6, 30}}) {
    for (std::int64_t k = -100; k <= 100; ++k) {
      EXPECT_EQ(psi_coordinates(k + 1, periods),
                odometer_add(psi_coordinates(k, periods), 1));
    }
  }
}

TEST(OdometerAdd, GroupLaws) {
  std::mt19937_64 rng(1);
  std::vector<V>  chains{{2, 4, 8}, {5, 10, 20, 40, 80}, {3, 9, 27}, {2, 6, 30}};
  std::uniform_int_distribution<std::int64_t> any(-1'000'000, 1'000'000);
  for (int trial = 0; trial < 2000; ++trial) {
    auto const& c = chains[trial % chains.size()];
    auto        x = psi_coordinates(any(rng), c);
    auto        a = any(rng);
    auto        b = any(rng);
    EXPECT_EQ(odometer_add(odometer_add(x, a), b), odometer_add(x, a + b));
    EXPECT_EQ(odometer_add(x, 0), x);
    EXPECT_EQ(odometer_add(odometer_add(x, a), -a), x);
    EXPECT_EQ(odometer_add(x, c.back()), x);
  }
}

TEST(OdometersConjugate, Examples) {
  auto p = [](char const* s) { return SupernaturalNumber::parse(s); };
  EXPECT_TRUE(odometers_conjugate(SupernaturalNumber::lcm_of_progression(2, 2),
                                  SupernaturalNumber::lcm_of_progression(2, 4)));
  EXPECT_FALSE(odometers_conjugate(p("2^inf"), p("3^inf")));
  EXPECT_FALSE(odometers_conjugate(p("2^inf * 5"), p("2^inf")));
  EXPECT_TRUE(odometers_conjugate(p("2^inf * 5"), p("5 * 2^inf")));
}
