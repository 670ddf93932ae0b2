#include <gtest/gtest.h>

#include <numeric>

#include "bdtk/arith.hpp"
#include "bdtk/error.hpp"
#include "bdtk/random.hpp"

using namespace bdtk;

namespace {

// p-adic valuation by repeated division: independent of factorize().
unsigned valuation(std::uint64_t n, std::uint64_t p) {
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

bool divides_oracle(std::uint64_t l, const std::map<std::uint64_t, int>& s) {
  // -1 stands for an infinite exponent
  std::uint64_t rest = l;
  for (const auto& [p, e] : s) {
    const unsigned v = valuation(l, p);
    if (e >= 0 && v > static_cast<unsigned>(e)) return false;
    for (unsigned i = 0; i < v; ++i) rest /= p;
  }
  return rest == 1;
}

}  // namespace

TEST(Supernatural, ParseAndPrint) {
  auto S = Supernatural::parse("3:1, 2:inf");
  EXPECT_EQ(S.to_string(), "2:inf,3:1");
  EXPECT_TRUE(S.is_infinite());
  EXPECT_FALSE(Supernatural::parse("2:3").is_infinite());
  EXPECT_EQ(Supernatural::parse("2:0,3:1").exponents().size(), 1u);
  EXPECT_THROW(Supernatural::parse("4:1"), Error);
  EXPECT_THROW(Supernatural::parse("2:x"), Error);
  EXPECT_THROW(Supernatural::parse("2:1,2:2"), Error);
}

TEST(Supernatural, DividesExamples) {
  auto S = Supernatural::parse("2:inf,3:1");
  EXPECT_TRUE(sn_divides(6, S));
  EXPECT_FALSE(sn_divides(9, S));
  EXPECT_TRUE(sn_divides(1024, Supernatural::parse("2:inf")));
  EXPECT_FALSE(sn_divides(5, S));
  EXPECT_TRUE(sn_divides(1, Supernatural{}));
}

TEST(Supernatural, DivisorLatticeExhaustive) {
  const std::vector<std::pair<std::string, std::map<std::uint64_t, int>>> cases = {
      {"2:inf", {{2, -1}}}, {"2:inf,3:1", {{2, -1}, {3, 1}}}, {"2:inf,3:inf", {{2, -1}, {3, -1}}}};
  for (const auto& [text, oracle] : cases) {
    auto S = Supernatural::parse(text);
    for (std::uint64_t a = 1; a <= 64; ++a) {
      ASSERT_EQ(sn_divides(a, S), divides_oracle(a, oracle)) << text << " " << a;
      for (std::uint64_t b = 1; b <= 64; ++b)
        if (sn_divides(a, S) && sn_divides(b, S)) ASSERT_TRUE(sn_divides(std::lcm(a, b), S));
    }
  }
}

TEST(Residue, EmbedExamples) {
  EXPECT_EQ(embed_int(7, 4).value, 3u);
  EXPECT_EQ(embed_int(-1, 5).value, 4u);
  EXPECT_EQ(embed_int(0, 9).value, 0u);
  for (std::int64_t k = -50; k <= 50; ++k)
    for (std::uint64_t l = 1; l <= 12; ++l)
      EXPECT_EQ(embed_int(k + static_cast<std::int64_t>(l), l), embed_int(k, l));
}

TEST(Residue, OdometerGroupAction) {
  EXPECT_EQ(odometer({3, 2}, 1).value, 0u);
  EXPECT_EQ(odometer({6, 0}, -1).value, 5u);
  for (std::uint64_t l = 1; l <= 64; l += 7)
    for (std::int64_t m = -128; m <= 128; m += 13)
      for (std::int64_t n = -128; n <= 128; n += 17)
        for (std::uint64_t v = 0; v < l; v += 3) {
          Residue x{l, v};
          ASSERT_EQ(odometer(odometer(x, m), n), odometer(x, m + n));
        }
  Residue x{7, 5};
  EXPECT_EQ(odometer(x, 0), x);
}

TEST(GsRational, MembershipExamples) {
  auto S = Supernatural::parse("2:inf,3:1");
  EXPECT_TRUE(gs_contains(Rational::make(1, 2), S));
  EXPECT_FALSE(gs_contains(Rational::make(1, 9), S));
  EXPECT_TRUE(gs_contains(Rational::make(4, 2), Supernatural{}));
  EXPECT_THROW(GsRational(Rational::make(1, 9), S), Error);
}

TEST(GsRational, AdditionExamples) {
  auto S = Supernatural::parse("2:inf,3:1");
  auto S2 = Supernatural::parse("2:inf");
  EXPECT_EQ(gs_add(GsRational({1, 2}, S), GsRational({1, 3}, S), S).value(), Rational::make(5, 6));
  EXPECT_EQ(gs_add(GsRational({1, 2}, S2), GsRational({-1, 2}, S2), S2).value(), Rational::make(0, 1));
  EXPECT_EQ(gs_add(GsRational({1, 4}, S2), GsRational({1, 4}, S2), S2).value(), Rational::make(1, 2));
}

TEST(GsRational, ClosureOnRandomPairs) {
  Rng rng(11);
  auto S = Supernatural::parse("2:inf,3:1");
  const auto dens = S.divisors_up_to(64);
  for (int i = 0; i < 10000; ++i) {
    GsRational a({rng.uniform(-100, 100), static_cast<std::int64_t>(rng.pick(dens))}, S);
    GsRational b({rng.uniform(-100, 100), static_cast<std::int64_t>(rng.pick(dens))}, S);
    auto c = gs_add(a, b, S);
    ASSERT_TRUE(sn_divides(static_cast<std::uint64_t>(c.denominator()), S));
    // compare with cross-multiplied rational sum
    ASSERT_EQ(static_cast<__int128>(c.numerator()) * a.denominator() * b.denominator(),
              (static_cast<__int128>(a.numerator()) * b.denominator() +
               static_cast<__int128>(b.numerator()) * a.denominator()) *
                  c.denominator());
  }
}
