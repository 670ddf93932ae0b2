#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace bdtk;
using oracle::ulc;

namespace {

const Supernatural S = Supernatural::parse("2:inf,3:1");

BdElement V(std::int64_t n = 1) { return BdElement::shift(S, n); }
BdElement m(const UlcFunction& f) { return BdElement::multiplication(S, f); }

// Half-line compression of the full-line window: rows/cols with index >= 0.
ScalarMatrix half_line_oracle(const BdElement& b, std::int64_t N) { return bd_apply(b, 0, N); }

}  // namespace

TEST(Bdt, ToeplitzExamples) {
  EXPECT_EQ(toeplitz(BdElement::identity(S)), BdtElement(BdElement::identity(S)));
  auto I = bdt_truncate(toeplitz(BdElement::identity(S)), 6);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(I(i, i), Scalar(1));
  auto U3 = bdt_truncate(toeplitz(V(3)), 10);
  EXPECT_EQ(U3(5, 2), Scalar(1));
  EXPECT_EQ(U3(2, 5), Scalar(0));
  Rng rng(3);
  CorpusConfig cfg;
  for (int i = 0; i < 50; ++i) {
    auto b = random_bd(rng, cfg);
    EXPECT_EQ(toeplitz(bd_adjoint(b)), bdt_adjoint(toeplitz(b)));
    EXPECT_TRUE(oracle::matrices_equal(bdt_truncate(toeplitz(b), 16), half_line_oracle(b, 16)));
    EXPECT_EQ(tau(toeplitz(b)), b);
  }
  EXPECT_TRUE(tau(BdtElement::from_compact(S, k_units(1, 2))).is_zero());
}

TEST(Bdt, CorrectionExamples) {
  EXPECT_EQ(correction(V(1), V(-1)), k_units(0, 0) * Scalar(-1));
  EXPECT_TRUE(correction(V(-1), V(1)).is_zero());
  auto f = ulc({Scalar(1), Scalar(2)}), g = ulc({Scalar(3), Scalar(-1), Scalar(2)});
  EXPECT_TRUE(correction(m(f), m(g)).is_zero());
  Rng rng(14);
  CorpusConfig cfg;
  for (int i = 0; i < 50; ++i) {
    BdElement b1(S), b2(S);
    for (int t = 0; t < 3; ++t) {
      b1.add_band(rng.uniform(0, 4), random_ulc(rng, cfg));
      b2.add_band(rng.uniform(0, 4), random_ulc(rng, cfg));
    }
    EXPECT_TRUE(correction(b1, b2).is_zero());
  }
  auto a = bdt_mul(toeplitz(V(1)), toeplitz(V(-1)));
  EXPECT_EQ(a, BdtElement(BdElement::identity(S), k_units(0, 0) * Scalar(-1)));
}

TEST(Bdt, CorrectionMatchesClosedForm) {
  Rng rng(41);
  CorpusConfig cfg;
  for (int i = 0; i < 200; ++i) {
    auto b1 = random_bd(rng, cfg, 5), b2 = random_bd(rng, cfg, 5);
    auto c = correction(b1, b2);
    ASSERT_EQ(c, oracle::closed_form_correction(b1, b2));
    ASSERT_LE(c.row_extent(), b1.bandwidth() + b2.bandwidth());
    ASSERT_LE(c.col_extent(), b2.bandwidth());
  }
}

TEST(Bdt, CorrectionMatchesTruncationDifference) {
  Rng rng(42);
  CorpusConfig cfg;
  for (int i = 0; i < 60; ++i) {
    auto b1 = random_bd(rng, cfg, 5), b2 = random_bd(rng, cfg, 5);
    const std::int64_t N = b1.bandwidth() + b2.bandwidth() + 8;
    const std::int64_t pad = b1.bandwidth() + b2.bandwidth() + 1;
    auto prod = oracle::truncated_product(bdt_truncate(toeplitz(b1), N + pad), bdt_truncate(toeplitz(b2), N + pad),
                                          static_cast<std::size_t>(N));
    auto diff = prod - bdt_truncate(toeplitz(bd_mul(b1, b2)), N);
    ASSERT_TRUE(oracle::matrices_equal(correction(b1, b2).to_dense(N, N), diff));
  }
}

TEST(Bdt, ProductIsExactOnTruncations) {
  Rng rng(43);
  CorpusConfig cfg;
  for (int i = 0; i < 60; ++i) {
    auto a1 = random_bdt(rng, cfg), a2 = random_bdt(rng, cfg);
    const std::int64_t N = 16;
    const std::int64_t pad = a1.symbol.bandwidth() + a2.symbol.bandwidth() + 8;
    auto prod = oracle::truncated_product(bdt_truncate(a1, N + pad), bdt_truncate(a2, N + pad),
                                          static_cast<std::size_t>(N));
    auto a = bdt_mul(a1, a2);
    ASSERT_TRUE(oracle::matrices_equal(bdt_truncate(a, N), prod));
    ASSERT_EQ(tau(a), bd_mul(tau(a1), tau(a2)));
  }
}

TEST(Bdt, DkExamplesAndLeibniz) {
  auto f = ulc({Scalar(2), Scalar(1)});
  EXPECT_TRUE(bdt_dK(toeplitz(m(f))).is_zero());
  EXPECT_EQ(bdt_dK(toeplitz(V())), toeplitz(V()));
  Rng rng(44);
  CorpusConfig cfg;
  for (int i = 0; i < 100; ++i) {
    auto a1 = random_bdt(rng, cfg), a2 = random_bdt(rng, cfg);
    auto lhs = bdt_dK(bdt_mul(a1, a2));
    auto rhs = bdt_mul(bdt_dK(a1), a2) + bdt_mul(a1, bdt_dK(a2));
    ASSERT_EQ(lhs, rhs);
    // d_K = [K, .] on truncations, K = diag(0, 1, ...)
    const std::int64_t N = 14;
    auto A = bdt_truncate(a1, N), D = bdt_truncate(bdt_dK(a1), N);
    for (std::int64_t k = 0; k < N; ++k)
      for (std::int64_t s = 0; s < N; ++s)
        ASSERT_EQ(D(k, s), A(k, s) * Scalar(static_cast<long long>(k - s)));
  }
}

TEST(Bdt, FourierExamplesAndQuadrature) {
  auto f = ulc({Scalar(2), Scalar(1)});
  auto a = toeplitz(BdElement::monomial(S, 1, f));
  EXPECT_EQ(bdt_fourier(a, 1), a);
  auto p = BdtElement::from_compact(S, k_units(2, 0));
  EXPECT_EQ(bdt_fourier(p, 2), p);
  Rng rng(45);
  CorpusConfig cfg;
  for (int i = 0; i < 5; ++i) {
    auto x = random_bdt(rng, cfg, 5);
    for (std::int64_t n = -8; n <= 8; ++n) ASSERT_EQ(bdt_fourier_quadrature(x, n), bdt_fourier(x, n)) << n;
  }
}

TEST(Bdt, GeneratorRelationsOnTruncations) {
  Rng rng(46);
  CorpusConfig cfg;
  const std::int64_t N = 64;
  auto U = bdt_truncate(toeplitz(V()), N);
  auto P = bdt_truncate(BdtElement::from_compact(S, k_units(0, 0)), N);
  for (int i = 0; i < 20; ++i) {
    auto f = random_ulc(rng, cfg);
    auto Mf = bdt_truncate(toeplitz(m(f)), N);
    auto Mfs = bdt_truncate(toeplitz(m(ulc_shift(f, 1))), N);
    EXPECT_TRUE(oracle::matrices_equal(Mf * U, U * Mfs));
    auto lhs = Mf * P;
    auto rhs = P;
    for (std::size_t r = 0; r < rhs.rows(); ++r)
      for (std::size_t c = 0; c < rhs.cols(); ++c) rhs(r, c) *= f(0);
    EXPECT_TRUE(oracle::matrices_equal(lhs, rhs));
  }
}
