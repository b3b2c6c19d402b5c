#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "goodmat/diophantine.hpp"

using namespace goodmat;

namespace {

// Independent triple loop over |x| <= |y| <= |z| <= ceil(sqrt(4n - 1)).
std::set<SquareTriple> triple_loop(int n) {
  const int target = 4 * n - 1;
  const int bound = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(target))));
  std::set<SquareTriple> out;
  for (int x = 0; x <= bound; ++x) {
    for (int y = x; y <= bound; ++y) {
      for (int z = y; z <= bound; ++z) {
        if (x * x + y * y + z * z == target) out.insert({x, y, z});
      }
    }
  }
  return out;
}

}  // namespace

TEST(ThreeSquares, OrderSixtyNine) {
  EXPECT_EQ(three_squares(69), (std::vector<SquareTriple>{{1, 7, 15}, {5, 5, 15}, {5, 9, 13}}));
}

TEST(ThreeSquares, SmallOrders) {
  EXPECT_EQ(three_squares(3), (std::vector<SquareTriple>{{1, 1, 3}}));
  EXPECT_EQ(three_squares(15), (std::vector<SquareTriple>{{1, 3, 7}, {3, 5, 5}}));
  EXPECT_EQ(three_squares(1), (std::vector<SquareTriple>{{1, 1, 1}}));
}

TEST(ThreeSquares, RejectsEvenOrNonpositive) {
  EXPECT_THROW(three_squares(4), InvalidInput);
  EXPECT_THROW(three_squares(0), InvalidInput);
  EXPECT_THROW(three_squares(-3), InvalidInput);
}

TEST(ThreeSquares, MatchesTripleLoopUpToOneHundred) {
  for (int n = 1; n <= 100; n += 2) {
    const auto got = three_squares(n);
    const std::set<SquareTriple> as_set(got.begin(), got.end());
    ASSERT_EQ(as_set.size(), got.size()) << "duplicates at n=" << n;
    ASSERT_EQ(as_set, triple_loop(n)) << "n=" << n;
  }
}

TEST(SignedRowsums, Examples) {
  EXPECT_EQ(signed_rowsums(69),
            (std::vector<RowsumTriple>{{-15, -7, 1}, {-15, 5, 5}, {5, 9, 13}}));
  EXPECT_EQ(signed_rowsums(3), (std::vector<RowsumTriple>{{-1, -1, 3}}));
  EXPECT_EQ(signed_rowsums(15), (std::vector<RowsumTriple>{{-5, -5, 3}, {-1, 3, 7}}));
}

TEST(SignedRowsums, InvariantsUpToOneHundred) {
  for (int n = 1; n <= 100; n += 2) {
    const auto triples = signed_rowsums(n);
    ASSERT_EQ(triples.size(), three_squares(n).size());
    for (const auto& t : triples) {
      ASSERT_EQ(t.x * t.x + t.y * t.y + t.z * t.z, 4 * n - 1);
      for (int v : {t.x, t.y, t.z}) ASSERT_EQ(((v - n) % 4 + 4) % 4, 0) << "n=" << n << " v=" << v;
      ASSERT_LE(t.x, t.y);
      ASSERT_LE(t.y, t.z);
    }
  }
}

TEST(SignedRowsums, Admissibility) {
  const auto t = signed_rowsums(69);
  EXPECT_TRUE(rowsum_admissible(t, -7));
  EXPECT_TRUE(rowsum_admissible(t, 13));
  EXPECT_FALSE(rowsum_admissible(t, 7));
  EXPECT_FALSE(rowsum_admissible({}, 1));
}
