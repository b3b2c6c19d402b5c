#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "goodmat/rowfile.hpp"
#include "goodmat/seq.hpp"
#include "published_rows.hpp"

using namespace goodmat;

namespace {

std::vector<Entry> half_of(const PmSequence& x) {
  return {x.entries().begin() + 1, x.entries().begin() + 1 + static_cast<long>(x.size() / 2)};
}

std::vector<Entry> random_signs(std::mt19937_64& rng, std::size_t len) {
  std::vector<Entry> out(len);
  for (auto& v : out) v = (rng() & 1U) ? 1 : -1;
  return out;
}

}  // namespace

TEST(MakeSkew, SmallOrders) {
  const std::vector<Entry> h1{1};
  EXPECT_EQ(make_skew(h1, 3).seq(), (PmSequence{1, 1, -1}));
  const std::vector<Entry> h3{1, -1, 1};
  EXPECT_EQ(make_skew(h3, 7).seq(), (PmSequence{1, 1, -1, 1, -1, 1, -1}));
  EXPECT_EQ(rowsum(make_skew(h3, 7)), 1);
}

TEST(MakeSkew, RebuildsPublishedRow) {
  const auto a = parse_row(testdata::kOrder27[0]);
  EXPECT_EQ(make_skew(half_of(a), 27).seq(), a);
}

TEST(MakeSkew, RejectsBadInput) {
  const std::vector<Entry> h{1, 1};
  EXPECT_THROW(make_skew(h, 4), InvalidInput);
  EXPECT_THROW(make_skew(h, 7), InvalidInput);
  const std::vector<Entry> bad{1, 0, 1};
  EXPECT_THROW(make_skew(bad, 7), InvalidInput);
}

TEST(MakeSymmetric, SmallOrders) {
  const std::vector<Entry> plus{1}, minus{-1};
  EXPECT_EQ(make_symmetric(plus, 3).seq(), (PmSequence{1, 1, 1}));
  EXPECT_EQ(make_symmetric(minus, 3).seq(), (PmSequence{1, -1, -1}));
}

TEST(MakeSymmetric, RebuildsPublishedRowAndRowsum) {
  const auto b = parse_row(testdata::kOrder27[1]);
  const auto half = half_of(b);
  EXPECT_EQ(make_symmetric(half, 27).seq(), b);
  int half_sum = 0;
  for (Entry v : half) half_sum += v;
  EXPECT_EQ(rowsum(b), 1 + 2 * half_sum);
  EXPECT_EQ(rowsum(b), -1);
  EXPECT_EQ(((rowsum(b) % 4) + 4) % 4, 27 % 4);
}

TEST(Compress3, Examples) {
  EXPECT_EQ(compress3(PmSequence{1, 1, 1, 1, 1, 1, 1, 1, 1}), (CompressedRow{3, 3, 3}));
  // Entry-wise x_k + x_{k+9} + x_{k+18} of the published order-27 row A.
  EXPECT_EQ(compress3(parse_row(testdata::kOrder27[0])),
            (CompressedRow{1, 3, 3, -1, 1, -1, 1, -3, -3}));
  EXPECT_EQ(rowsum(compress3(parse_row(testdata::kOrder27[0]))), 1);
  EXPECT_THROW(compress3(PmSequence{1, 1, 1, 1}), InvalidInput);
}

TEST(Compress3, SkewAndSymmetricShapeProperty) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 3 * (1 + 2 * static_cast<int>(rng() % 6));  // 3, 9, ..., 33
    const auto half = random_signs(rng, static_cast<std::size_t>(n / 2));
    const auto a = compress3(make_skew(half, n));
    const auto b = compress3(make_symmetric(half, n));
    ASSERT_TRUE(is_skew_like(a));
    ASSERT_TRUE(is_symmetric(b));
    ASSERT_EQ(rowsum(a), 1);
    ASSERT_EQ(rowsum(b), rowsum(make_symmetric(half, n)));
    if (n == 9) ASSERT_EQ(a[2], -a[1]);
  }
}

TEST(Compress3, PreservesRowsumProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 3 * (1 + rng() % 20);
    const PmSequence x(random_signs(rng, n));
    ASSERT_EQ(rowsum(compress3(x)), rowsum(x));
  }
}

TEST(RowText, ParseAndFormat) {
  EXPECT_EQ(parse_row("++-"), (PmSequence{1, 1, -1}));
  EXPECT_EQ(format_row(PmSequence{1, -1}), "+-");
  EXPECT_EQ(parse_row("+\xE2\x88\x92+"), (PmSequence{1, -1, 1}));
}

TEST(RowText, ParseErrorsCarryPosition) {
  try {
    parse_row("++x-");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2U);
  }
  EXPECT_THROW(parse_row(""), ParseError);
}

TEST(RowText, RoundTripProperty) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const PmSequence x(random_signs(rng, 1 + rng() % 80));
    ASSERT_EQ(parse_row(format_row(x)), x);
  }
}

TEST(PublishedRows, SatisfyDeclaredStructure) {
  for (const auto& rows : {testdata::kOrder27, testdata::kOrder57}) {
    const auto a = parse_row(rows[0]);
    EXPECT_TRUE(is_skew(a));
    EXPECT_NO_THROW(SkewRow{a});
    for (int r = 1; r < 4; ++r) {
      const auto x = parse_row(rows[static_cast<std::size_t>(r)]);
      EXPECT_TRUE(is_symmetric(x));
      EXPECT_EQ(x[0], 1);
    }
  }
  EXPECT_EQ(parse_row(testdata::kOrder57[0]).size(), 57U);
}

TEST(StructuredRow, RejectsWrongShape) {
  EXPECT_THROW(SkewRow(PmSequence{1, 1, 1}), InvalidInput);
  EXPECT_THROW(SymRow(PmSequence{1, 1, -1}), InvalidInput);
  EXPECT_THROW(PmSequence({1, 0}), InvalidInput);
  EXPECT_THROW(CompressedRow({2}), InvalidInput);
}

TEST(GlobalOrder, PlusBeforeMinus) {
  EXPECT_LT((PmSequence{1, 1}), (PmSequence{1, -1}));
  EXPECT_LT((CompressedRow{3}), (CompressedRow{1}));
  EXPECT_LT((CompressedRow{1}), (CompressedRow{-1}));
  EXPECT_LT((CompressedRow{-1}), (CompressedRow{-3}));
  // Same order as the text form.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const PmSequence x(random_signs(rng, 9)), y(random_signs(rng, 9));
    ASSERT_EQ(x < y, format_row(x) < format_row(y));
  }
}

TEST(RowFile, QuadsRoundTrip) {
  std::vector<DefiningQuad> quads;
  quads.emplace_back(SkewRow(parse_row(testdata::kOrder27[0])), SymRow(parse_row(testdata::kOrder27[1])),
                     SymRow(parse_row(testdata::kOrder27[2])), SymRow(parse_row(testdata::kOrder27[3])));
  quads.emplace_back(SkewRow(PmSequence{1, 1, -1}), SymRow(PmSequence{1, 1, 1}),
                     SymRow(PmSequence{1, -1, -1}), SymRow(PmSequence{1, -1, -1}));
  std::stringstream ss;
  write_quads(ss, quads);
  EXPECT_EQ(read_quads(ss), quads);
}

TEST(RowFile, RejectsIncompleteQuad) {
  std::stringstream ss("++-\n+++\n\n");
  EXPECT_THROW(read_quads(ss), InvalidInput);
}

TEST(RowFile, CompressedQuadText) {
  const CompressedQuad q{{1}, {3}, {-1}, {-1}};
  EXPECT_EQ(format_compressed_quad(q), "1;3;-1;-1");
  EXPECT_EQ(parse_compressed_quad("1;3;-1;-1"), q);
  EXPECT_THROW(parse_compressed_quad("1;3;-1"), InvalidInput);
  EXPECT_THROW(parse_compressed_quad("1;3;-2;1"), ParseError);
}
