#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bdtk/error.hpp"
#include "oracles.hpp"

using namespace bdtk;
using oracle::ulc;

namespace {

const Supernatural S = Supernatural::parse("2:inf,3:1");

BdElement V(std::int64_t n = 1) { return BdElement::shift(S, n); }
BdElement m(const UlcFunction& f) { return BdElement::multiplication(S, f); }

// Interior of a window product: entries whose full band neighbourhoods lie in
// the padded window agree with the infinite product.
void expect_window_product(const BdElement& b1, const BdElement& b2, std::int64_t lo, std::int64_t hi) {
  const auto pad = b1.bandwidth() + b2.bandwidth() + 1;
  auto big = bd_apply(b1, lo - pad, hi + pad) * bd_apply(b2, lo - pad, hi + pad);
  auto prod = bd_apply(bd_mul(b1, b2), lo, hi);
  const auto n = static_cast<std::size_t>(hi - lo);
  EXPECT_TRUE(oracle::matrices_equal(prod, big.block(static_cast<std::size_t>(pad), static_cast<std::size_t>(pad), n, n)));
}

}  // namespace

TEST(Bd, MulExamples) {
  auto f = ulc({Scalar(1), Scalar(2)});
  auto g = ulc({Scalar(3), Scalar::i(), Scalar(-1)});
  EXPECT_EQ(bd_mul(BdElement::monomial(S, 1, f), BdElement::monomial(S, 1, g)),
            BdElement::monomial(S, 2, ulc_shift(f, 1) * g));
  auto b = BdElement::monomial(S, -2, g) + V(3);
  EXPECT_EQ(bd_mul(b, BdElement::identity(S)), b);
  auto w = V(1) + V(-1);
  EXPECT_EQ(bd_mul(w, w), V(2) + BdElement::scalar(S, Scalar(2)) + V(-2));
  expect_window_product(w, w, -32, 32);
}

TEST(Bd, MulMatchesWindowProduct) {
  Rng rng(17);
  CorpusConfig cfg;
  for (int i = 0; i < 60; ++i) expect_window_product(random_bd(rng, cfg), random_bd(rng, cfg), -10, 14);
}

TEST(Bd, AdjointExamples) {
  auto f = ulc({Scalar::gaussian(1, 2, 1, 1), Scalar(3)});
  EXPECT_EQ(bd_adjoint(V()), V(-1));
  EXPECT_EQ(bd_adjoint(m(f)), m(ulc_conj(f)));
  auto vf = BdElement::monomial(S, 1, f);
  EXPECT_EQ(bd_mul(bd_adjoint(vf), vf), m(f * ulc_conj(f)));
}

TEST(Bd, AdjointIsConjugateTranspose) {
  Rng rng(5);
  CorpusConfig cfg;
  for (int i = 0; i < 60; ++i) {
    auto b = random_bd(rng, cfg);
    auto A = bd_apply(b, -9, 9), B = bd_apply(bd_adjoint(b), -9, 9);
    for (std::size_t r = 0; r < A.rows(); ++r)
      for (std::size_t c = 0; c < A.cols(); ++c) ASSERT_EQ(B(r, c), A(c, r).conj());
    ASSERT_EQ(bd_adjoint(bd_adjoint(b)), b);
  }
}

TEST(Bd, DeltaLExamples) {
  auto f = ulc({Scalar(1), Scalar(-2)});
  EXPECT_TRUE(bd_delta_L(m(f)).is_zero());
  auto v3 = BdElement::monomial(S, 3, f);
  EXPECT_EQ(bd_delta_L(v3), v3 * Scalar(3));
}

TEST(Bd, DeltaLIsDerivation) {
  Rng rng(8);
  CorpusConfig cfg;
  for (int i = 0; i < 100; ++i) {
    auto b1 = random_bd(rng, cfg), b2 = random_bd(rng, cfg);
    ASSERT_TRUE((bd_delta_L(bd_mul(b1, b2)) - bd_mul(bd_delta_L(b1), b2) - bd_mul(b1, bd_delta_L(b2))).is_zero());
  }
}

TEST(Bd, FourierExamples) {
  auto f = ulc({Scalar(1), Scalar(3)});
  auto vf = BdElement::monomial(S, 1, f);
  EXPECT_EQ(bd_fourier(vf, 1), f);
  EXPECT_TRUE(bd_fourier(vf, 0).is_zero());
}

TEST(Bd, FourierQuadratureReproducesBands) {
  Rng rng(21);
  CorpusConfig cfg;
  for (int i = 0; i < 10; ++i) {
    auto b = random_bd(rng, cfg, 7);
    for (std::int64_t n = -5; n <= 5; ++n) ASSERT_EQ(bd_fourier_quadrature(b, n), bd_fourier(b, n)) << n;
  }
}

TEST(Bd, RhoExamples) {
  auto f = ulc({Scalar(1), Scalar(3)});
  EXPECT_EQ(bd_rho(m(f), 0.37), m(f));
  EXPECT_EQ(bd_rho(V(), 0.5), -V());
  Rng rng(4);
  CorpusConfig cfg;
  for (int i = 0; i < 100; ++i) {
    auto b1 = random_bd(rng, cfg), b2 = random_bd(rng, cfg);
    const double t = rng.uniform_real();
    ASSERT_EQ(bd_rho(bd_mul(b1, b2), t), bd_mul(bd_rho(b1, t), bd_rho(b2, t)));
  }
}

TEST(Bd, SymbolExamples) {
  auto S1 = Supernatural::parse("2:inf");
  auto s = bd_symbol(BdElement::shift(S1, 1));
  EXPECT_EQ(s.period, 1u);
  EXPECT_NEAR(std::abs(s.at(0.25)(0, 0) - std::complex<double>(0, 1)), 0.0, 1e-15);

  auto f = ulc({Scalar(2), Scalar(-1), Scalar(5)});
  auto d = bd_symbol(m(f));
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(3, 3);
  expect.diagonal() << 2.0, -1.0, 5.0;
  EXPECT_LT((d.at(0.3) - expect).norm(), 1e-15);

  // V m_f at l = 2 is [[0, f(1) z], [f(0), 0]]
  SymbolMatrix sv = bd_symbol(BdElement::monomial(S1, 1, ulc({Scalar(1), Scalar(2)})));
  const std::complex<double> z = std::polar(1.0, 2 * std::numbers::pi * 0.1);
  Eigen::MatrixXcd e(2, 2);
  e << 0.0, 2.0 * z, 1.0, 0.0;
  EXPECT_LT((sv.at(0.1) - e).norm(), 1e-14);
}

TEST(Bd, NormExamples) {
  for (std::int64_t n : {-3, 0, 1, 4}) EXPECT_NEAR(bd_norm(V(n), 1e-9), 1.0, 1e-9);
  auto f = ulc({Scalar(1), Scalar::gaussian(0, 1, -3, 1), Scalar::rational(5, 2)});
  EXPECT_NEAR(bd_norm(m(f), 1e-9), 3.0, 1e-9);
  auto br = bd_norm_bracket(V(1) + V(-1), 1e-9);
  EXPECT_LE(br.width(), 1e-9);
  EXPECT_NEAR(br.midpoint(), 2.0, 1e-9);
  EXPECT_THROW(bd_norm(V(), 0.0), Error);
}

TEST(Bd, NormBoundsTruncationsAndDenseSamples) {
  Rng rng(99);
  CorpusConfig cfg;
  for (int i = 0; i < 25; ++i) {
    auto b = random_bd(rng, cfg);
    auto br = bd_norm_bracket(b, 1e-8);
    // compressions never exceed the norm
    double prev = 0.0;
    for (std::int64_t N : {64, 256}) {
      const double t = bd_apply_banded(b, -N / 2, N / 2).max_singular_value();
      EXPECT_LE(t, br.upper + 1e-10);
      EXPECT_GE(t, prev - 1e-12);
      prev = t;
    }
    // a fine uniform sample of the symbol is a lower bound, and close
    auto sym = bd_symbol(b);
    double sample = 0.0;
    for (int k = 0; k < 4096; ++k) sample = std::max(sample, max_singular_value(sym.at(k / 4096.0)));
    EXPECT_LE(sample, br.upper + 1e-10);
    EXPECT_GE(sample, br.lower - 1e-3);
  }
}

TEST(Bd, PNormExamples) {
  auto f = ulc({Scalar(1), Scalar(-4)});
  for (unsigned P = 0; P <= 3; ++P) EXPECT_NEAR(bd_p_norm(m(f), P, 1e-9).value, 4.0, 1e-8);
  EXPECT_NEAR(bd_p_norm(V(), 1, 1e-9).value, 2.0, 1e-8);
  Rng rng(12);
  CorpusConfig cfg;
  for (int i = 0; i < 20; ++i) {
    auto b = random_bd(rng, cfg);
    for (unsigned P = 0; P < 3; ++P) {
      auto lhs = bd_p_norm(b, P + 1, 1e-8);
      auto r1 = bd_p_norm(b, P, 1e-8), r2 = bd_p_norm(bd_delta_L(b), P, 1e-8);
      EXPECT_NEAR(lhs.value, r1.value + r2.value, lhs.error_bound + r1.error_bound + r2.error_bound + 1e-12);
    }
  }
}

TEST(Bd, RelationConjugationByShift) {
  Rng rng(1);
  CorpusConfig cfg;
  for (int i = 0; i < 30; ++i) {
    auto f = random_ulc(rng, cfg);
    auto lhs = bd_mul(bd_mul(V(-1), m(f)), V(1));
    auto A = bd_apply(V(-1), -20, 20) * bd_apply(m(f), -20, 20) * bd_apply(V(1), -20, 20);
    EXPECT_TRUE(oracle::matrices_equal(A.block(1, 1, 38, 38), bd_apply(m(ulc_shift(f, 1)), -19, 19)));
    EXPECT_EQ(lhs, m(ulc_shift(f, 1)));
  }
}

TEST(Bd, RejectsPeriodNotDividingS) {
  EXPECT_THROW(BdElement::multiplication(S, ulc({Scalar(1), Scalar(2), Scalar(3), Scalar(4), Scalar(5)})), Error);
}
