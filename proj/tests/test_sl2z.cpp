#include <barkfib/sl2z.hpp>

#include <gtest/gtest.h>

#include <limits>
#include <random>

using namespace barkfib;

namespace {

Mat2 random_mat(std::mt19937_64& rng, int letters) {
  std::uniform_int_distribution<int> e(-3, 3), g(0, 1);
  Mat2 m;
  for (int i = 0; i < letters; ++i) m = m * generator_power(g(rng) ? Gen::S0 : Gen::S2, e(rng));
  return m;
}

}  // namespace

TEST(Mat2, DefaultIsIdentity) {
  Mat2 m;
  EXPECT_EQ(m, Mat2(1, 0, 0, 1));
  EXPECT_EQ(trace(m), 2);
}

TEST(Mat2, RejectsDeterminantNotOne) {
  EXPECT_THROW(Mat2(1, 0, -1, 0), std::invalid_argument);
  EXPECT_THROW(Mat2(2, 0, 0, 2), std::invalid_argument);
  EXPECT_NO_THROW(Mat2(2, 1, 1, 1));
}

TEST(Mat2, GeneratorRelations) {
  const Mat2 s0 = generator(Gen::S0), s2 = generator(Gen::S2);
  const Mat2 a = s0 * s2;
  const Mat2 b = s0 * s2 * s0;
  EXPECT_EQ(a, Mat2(0, 1, -1, 1));
  EXPECT_EQ(b, Mat2(0, 1, -1, 0));
  EXPECT_EQ(power(a, 3), Mat2::minus_identity());
  EXPECT_EQ(power(b, 2), Mat2::minus_identity());
  EXPECT_EQ(power(a, 6), Mat2::identity());
  // braid relation s0 s2 s0 = s2 s0 s2
  EXPECT_EQ(s0 * s2 * s0, s2 * s0 * s2);
}

TEST(Mat2, ClosedFormGeneratorPowers) {
  for (Int e = -7; e <= 7; ++e) {
    EXPECT_EQ(generator_power(Gen::S0, e), power(generator(Gen::S0), e));
    EXPECT_EQ(generator_power(Gen::S2, e), power(generator(Gen::S2), e));
  }
}

TEST(Mat2, GroupLaws) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    Mat2 x = random_mat(rng, 4), y = random_mat(rng, 4), z = random_mat(rng, 4);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * inverse(x), Mat2::identity());
    EXPECT_EQ(inverse(x) * x, Mat2::identity());
    EXPECT_EQ(trace(conj(x, y)), trace(x));
    EXPECT_EQ(conj(conj(x, y), z), conj(x, z * y));
  }
}

TEST(Mat2, OverflowIsDetected) {
  const Int big = std::numeric_limits<Int>::max() / 2;
  Mat2 m(1, big, 0, 1);
  EXPECT_THROW(m * m * m, std::overflow_error);
  EXPECT_THROW(power(generator(Gen::S0), std::numeric_limits<Int>::max()) * generator(Gen::S0), std::overflow_error);
}

TEST(Word, NormalizesOnPush) {
  Word w;
  w.push(Gen::S0, 2).push(Gen::S0, -2).push(Gen::S2, 1).push(Gen::S2, 0).push(Gen::S0, 1);
  EXPECT_EQ(w.str(), "s2 s0");
  EXPECT_EQ(w.length(), 2u);
  EXPECT_EQ(Word{}.str(), "1");
}

TEST(Word, ParseAndPrintRoundTrip) {
  for (const char* s : {"s0^3 s2^-2 s0", "s2", "s0^-1 s2 s0^4", "1"}) EXPECT_EQ(parse_word(s).str(), s);
  EXPECT_EQ(parse_word("s0 s0 s0").str(), "s0^3");
  EXPECT_TRUE(parse_word("").empty());
}

TEST(Word, ParseRejectsGarbage) {
  EXPECT_THROW(parse_word("s1"), std::invalid_argument);
  EXPECT_THROW(parse_word("s0^"), std::invalid_argument);
  EXPECT_THROW(parse_word("s0^x"), std::invalid_argument);
  EXPECT_THROW(parse_word("s0^2a"), std::invalid_argument);
  EXPECT_THROW(parse_word("t0"), std::invalid_argument);
}

TEST(Word, EvalIsHomomorphism) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> e(-4, 4), g(0, 1), len(0, 6);
  for (int i = 0; i < 200; ++i) {
    Word u, v;
    for (int k = len(rng); k > 0; --k) u.push(g(rng) ? Gen::S0 : Gen::S2, e(rng));
    for (int k = len(rng); k > 0; --k) v.push(g(rng) ? Gen::S0 : Gen::S2, e(rng));
    EXPECT_EQ(eval_word(u * v), eval_word(u) * eval_word(v));
    EXPECT_EQ(eval_word(u.inverse()), inverse(eval_word(u)));
    EXPECT_EQ(eval_word(u.pow(3)), power(eval_word(u), 3));
    EXPECT_EQ(eval_word(u.pow(-2)), power(eval_word(u), -2));
  }
}

TEST(Word, WordOfRecoversMatrix) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    Mat2 m = random_mat(rng, 6);
    EXPECT_EQ(eval_word(word_of(m)), m) << m.str();
  }
  EXPECT_EQ(eval_word(word_of(Mat2::minus_identity())), Mat2::minus_identity());
  EXPECT_EQ(eval_word(word_of(Mat2(0, -1, 1, 0))), Mat2(0, -1, 1, 0));
}

TEST(Word, LetterCount) {
  EXPECT_EQ(parse_word("s0^3 s2^-2 s0").letter_count(), 6);
  EXPECT_EQ(Word{}.letter_count(), 0);
}
