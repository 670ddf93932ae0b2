#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace bdtk;

TEST(Compact, MatrixUnits) {
  EXPECT_EQ(k_units(0, 1) * k_units(1, 2), k_units(0, 2));
  EXPECT_TRUE((k_units(0, 1) * k_units(0, 2)).is_zero());
  EXPECT_EQ(k_adjoint(k_units(3, 5)), k_units(5, 3));
}

TEST(Compact, AlgebraAgainstDense) {
  Rng rng(2);
  CorpusConfig cfg;
  for (int i = 0; i < 100; ++i) {
    auto a = random_compact(rng, cfg), b = random_compact(rng, cfg);
    EXPECT_TRUE((a + a * Scalar(-1)).is_zero());
    EXPECT_EQ(k_adjoint(k_adjoint(a)), a);
    auto dense = a.to_dense(8, 8) * b.to_dense(8, 8);
    EXPECT_TRUE(oracle::matrices_equal(k_algebra(KOp::Mul, a, b).to_dense(8, 8), dense));
  }
}

TEST(Compact, DkExamplesAndLeibniz) {
  EXPECT_TRUE(k_dK(k_units(4, 4)).is_zero());
  EXPECT_EQ(k_dK(k_units(1, 0)), k_units(1, 0));
  Rng rng(6);
  CorpusConfig cfg;
  for (int i = 0; i < 100; ++i) {
    auto a = random_compact(rng, cfg), b = random_compact(rng, cfg);
    ASSERT_EQ(k_dK(a * b), k_dK(a) * b + a * k_dK(b));
  }
}

TEST(Compact, MnNormExamples) {
  for (unsigned M = 0; M <= 3; ++M)
    for (unsigned N = 0; N <= 3; ++N) EXPECT_NEAR(k_mn_norm(k_units(0, 0), M, N), 1.0, 1e-14);
  for (std::int64_t s = 0; s < 5; ++s)
    for (unsigned N = 0; N <= 3; ++N)
      EXPECT_NEAR(k_mn_norm(k_units(0, s), 0, N), std::pow(1.0 + s, N), 1e-12);
}

TEST(Compact, NormAxioms) {
  Rng rng(31);
  CorpusConfig cfg;
  for (int i = 0; i < 100; ++i) {
    auto c = random_compact(rng, cfg), c2 = random_compact(rng, cfg);
    for (unsigned M = 0; M <= 3; ++M)
      for (unsigned N = 0; N <= 3; ++N) {
        const double n = k_mn_norm(c, M, N);
        const double tol = 1e-9 * (1.0 + n);
        EXPECT_NEAR(k_mn_norm(c, M + 1, N), n + k_mn_norm(k_dK(c), M, N), tol);
        EXPECT_LE(n, k_mn_norm(c, M, N + 1) + tol);
        EXPECT_LE(k_mn_norm(c2 * c, M, N), k_mn_norm(c2, M, 0) * n + tol);
        EXPECT_LE(k_mn_norm(k_dK(c), M, N), k_mn_norm(c, M + 1, N) + tol);
        EXPECT_LE(k_mn_norm(k_adjoint(c), M, N), k_mn_norm(c, M + N, N) + tol);
        EXPECT_NEAR(k_mn_norm(k_rho(c, 0.3), M, N), n, 1e-12 * (1.0 + n));
      }
  }
}

TEST(Compact, RhoExamples) {
  CompactMatrix d;
  d.add(2, 2, Scalar(3));
  EXPECT_EQ(k_rho(d, 0.41), d);
  EXPECT_EQ(k_rho(k_units(1, 0), 0.5), k_units(1, 0) * Scalar(-1));
  Rng rng(7);
  CorpusConfig cfg;
  for (int i = 0; i < 100; ++i) {
    auto a = random_compact(rng, cfg), b = random_compact(rng, cfg);
    const double t = rng.uniform_real();
    ASSERT_EQ(k_rho(a * b, t), k_rho(a, t) * k_rho(b, t));
  }
}
