#include <gtest/gtest.h>

#include "bdtk/error.hpp"
#include "bdtk/index.hpp"
#include "oracles.hpp"

using namespace bdtk;
using oracle::ulc;

namespace {

const Supernatural S = Supernatural::parse("2:inf,3:1");

BdElement V(std::int64_t n = 1) { return BdElement::shift(S, n); }

// Zero columns minus zero rows of a large truncation of T(V^n m_f), which for
// a single band with nowhere-vanishing f are exactly the kernel and cokernel.
std::int64_t monomial_index_oracle(std::int64_t n, const UlcFunction& f) {
  const std::int64_t N = 40;
  const ScalarMatrix t = bdt_truncate(toeplitz(BdElement::monomial(S, n, f)), N);
  std::int64_t zero_cols = 0, zero_rows = 0;
  for (std::int64_t s = 0; s < N - 8; ++s) {
    bool z = true;
    for (std::int64_t k = 0; k < N; ++k) z = z && t(k, s).is_zero();
    zero_cols += z;
  }
  for (std::int64_t k = 0; k < N - 8; ++k) {
    bool z = true;
    for (std::int64_t s = 0; s < N; ++s) z = z && t(k, s).is_zero();
    zero_rows += z;
  }
  return zero_cols - zero_rows;
}

UlcFunction invertible_f(Rng& rng, std::uint64_t l) {
  std::vector<Scalar> v;
  for (std::uint64_t r = 0; r < l; ++r) {
    const auto sign = rng.coin() ? 1 : -1;
    v.push_back(Scalar::rational(sign * rng.uniform(1, 8), rng.uniform(1, 2)));
  }
  return UlcFunction(std::move(v));
}

// k-th power of V times an invertible multiplication, plus bands whose sup
// norms sum to less than half of min |f|: invertible with winding k.
BdElement dominated(Rng& rng, std::int64_t k) {
  const UlcFunction f = invertible_f(rng, rng.pick(std::vector<std::uint64_t>{1, 2, 3, 6}));
  double fmin = 1e300;
  for (const Scalar& z : f.values()) fmin = std::min(fmin, z.abs());
  BdElement b = BdElement::monomial(S, k, f);
  for (int t = 0; t < 2; ++t) {
    const std::int64_t n = rng.uniform(-3, 3);
    if (n == k) continue;
    b.add_band(n, UlcFunction::constant(Scalar::from_double(fmin / 5.0 * (2.0 * rng.uniform_real() - 1.0))));
  }
  return b;
}

}  // namespace

TEST(Index, GeneratorHasIndexMinusOne) {
  const IndexResult r = fredholm_index(toeplitz(V(1)));
  EXPECT_EQ(r.index, -1);
  EXPECT_TRUE(r.stabilized);
  ASSERT_EQ(r.kernel_dims.size(), 4u);
  for (const auto& d : r.kernel_dims) {
    EXPECT_EQ(d.dim_ker, 0);
    EXPECT_EQ(d.dim_coker, 1);
  }
  EXPECT_EQ(fredholm_index(toeplitz(BdElement::identity(S))).index, 0);
}

TEST(Index, MonomialsMatchKernelOracle) {
  Rng rng(5);
  for (std::int64_t n = -4; n <= 4; ++n) {
    const UlcFunction f = invertible_f(rng, 6);
    const std::int64_t expected = monomial_index_oracle(n, f);
    EXPECT_EQ(expected, -n);
    EXPECT_EQ(fredholm_index(toeplitz(BdElement::monomial(S, n, f)), {64, 128, 256}).index, expected) << n;
  }
  const UlcFunction half = ulc({Scalar::rational(1, 2), Scalar(2), Scalar::rational(-3, 4)});
  EXPECT_EQ(fredholm_index(toeplitz(BdElement::monomial(S, -2, half)), {64, 128, 256}).index, 2);
}

TEST(Index, NotFredholmWhenSymbolVanishes) {
  try {
    fredholm_index(toeplitz(BdElement::identity(S) + V(1)));
    FAIL() << "expected NOT_FREDHOLM";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFredholm);
  }
  EXPECT_THROW(fredholm_index(toeplitz(V(1)), {64, 128}), Error);
}

TEST(Index, WindingExamples) {
  EXPECT_EQ(winding(V(1)), 1);
  EXPECT_EQ(winding(V(-3)), -3);
  EXPECT_EQ(winding(BdElement::multiplication(S, ulc({Scalar(2), Scalar(-1), Scalar::i()}))), 0);
  EXPECT_EQ(winding(BdElement::identity(S) * Scalar(2) + V(1)), 0);
  EXPECT_EQ(winding(BdElement::identity(S) + V(2) * Scalar(2)), 2);
  EXPECT_THROW(winding(BdElement::identity(S) - V(1)), Error);
}

TEST(Index, IndexIsMinusWinding) {
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    const std::int64_t k = rng.uniform(-3, 3);
    const BdElement b = dominated(rng, k);
    const std::int64_t w = winding(b);
    EXPECT_EQ(w, k);
    EXPECT_EQ(fredholm_index(toeplitz(b)).index, -w);
  }
}

TEST(Index, CompactPerturbationAndAdditivity) {
  Rng rng(23);
  CorpusConfig cfg;
  for (int i = 0; i < 10; ++i) {
    const BdtElement a1 = toeplitz(dominated(rng, rng.uniform(-2, 2)));
    const BdtElement a2 = toeplitz(dominated(rng, rng.uniform(-2, 2)));
    const std::int64_t i1 = fredholm_index(a1, {64, 128, 256}).index;
    const std::int64_t i2 = fredholm_index(a2, {64, 128, 256}).index;
    EXPECT_EQ(fredholm_index(a1 * a2, {64, 128, 256}).index, i1 + i2);
    const BdtElement pert = a1 + BdtElement::from_compact(S, random_compact(rng, cfg));
    EXPECT_EQ(fredholm_index(pert, {64, 128, 256}).index, i1);
  }
}

TEST(Index, K0Demo) {
  const K0Demo d = k0_demo(Supernatural::parse("2:inf"));
  EXPECT_TRUE(d.all_consistent);
  bool saw_38 = false, saw_13 = false;
  for (const auto& m : d.membership) {
    if (m.q == Rational::make(3, 8)) saw_38 = m.member;
    if (m.q == Rational::make(1, 3)) saw_13 = !m.member;
  }
  EXPECT_TRUE(saw_38);
  EXPECT_TRUE(saw_13);
  for (const auto& c : d.index_cases) EXPECT_EQ(c.index, c.expected) << c.label;
  for (const auto& q : d.quotient) EXPECT_TRUE(q.is_zero_class);
}
