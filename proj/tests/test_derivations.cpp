#include <gtest/gtest.h>

#include "bdtk/derivations.hpp"
#include "bdtk/error.hpp"
#include "oracles.hpp"

using namespace bdtk;
using oracle::ulc;

namespace {

const Supernatural S = Supernatural::parse("2:inf,3:1");

BdElement V(std::int64_t n = 1) { return BdElement::shift(S, n); }
BdtElement U() { return toeplitz(V(1)); }

DerivationSpec inner(const CompactMatrix& c) { return DerivationSpec{Scalar{}, BdElement(S), c}; }

std::int64_t reach(const BdtElement& a) {
  return std::max({a.symbol.bandwidth(), a.compact.row_extent(), a.compact.col_extent()});
}

// [x, a] by dense matrix products on a window wide enough to be exact in the
// leading n x n block.
ScalarMatrix commutator_oracle(const BdtElement& x, const BdtElement& a, std::size_t n) {
  const auto w = static_cast<std::int64_t>(n) + 2 * (reach(x) + reach(a)) + 2;
  const ScalarMatrix X = bdt_truncate(x, w), A = bdt_truncate(a, w);
  return (X * A - A * X).block(0, 0, n, n);
}

}  // namespace

TEST(Derivations, ApplyExamples) {
  const DerivationSpec dK{Scalar(1), BdElement(S), {}};
  EXPECT_EQ(der_apply(dK, U()), U());
  EXPECT_EQ(der_apply(inner(k_units(0, 0)), U()), BdtElement::from_compact(S, k_units(1, 0) * Scalar(-1)));
  EXPECT_TRUE(oracle::matrices_equal(bdt_truncate(der_apply(inner(k_units(0, 0)), U()), 8),
                                     commutator_oracle(BdtElement::from_compact(S, k_units(0, 0)), U(), 8)));
  Rng rng(1);
  CorpusConfig cfg;
  for (int i = 0; i < 20; ++i) {
    const DerivationSpec d{random_scalar(rng, cfg), random_bd(rng, cfg), random_compact(rng, cfg)};
    EXPECT_TRUE(der_apply(d, BdtElement(BdElement::identity(S))).is_zero());
    const BdtElement a = random_bdt(rng, cfg);
    const DerivationSpec no_gamma{Scalar{}, d.b, d.c};
    EXPECT_TRUE(oracle::matrices_equal(bdt_truncate(der_apply(no_gamma, a), 16), commutator_oracle(d.generator(), a, 16)));
  }
}

TEST(Derivations, LeibnizIsExact) {
  Rng rng(2);
  CorpusConfig cfg;
  for (int i = 0; i < 10; ++i) {
    const DerivationSpec d{random_scalar(rng, cfg), random_bd(rng, cfg), random_compact(rng, cfg)};
    const BdtElement a1 = random_bdt(rng, cfg), a2 = random_bdt(rng, cfg);
    EXPECT_EQ(der_leibniz_residual(d, a1, a2), 0.0);
  }
}

TEST(Derivations, IdealAndQuotient) {
  Rng rng(3);
  CorpusConfig cfg;
  for (int i = 0; i < 30; ++i) {
    const DerivationSpec d{random_scalar(rng, cfg), random_bd(rng, cfg), random_compact(rng, cfg)};
    EXPECT_TRUE(der_apply(d, BdtElement::from_compact(S, random_compact(rng, cfg))).symbol.is_zero());
    const BdtElement a = random_bdt(rng, cfg);
    const BdElement expected = bd_delta_L(a.symbol) * d.gamma + d.b * a.symbol - a.symbol * d.b;
    EXPECT_EQ(tau(der_apply(d, a)), expected);
    EXPECT_EQ(tau(der_apply(d, BdtElement(a.symbol, random_compact(rng, cfg)))), expected);
  }
}

TEST(Derivations, ComponentExamples) {
  const DerivationSpec dK{Scalar(3), BdElement(S), {}};
  EXPECT_EQ(der_component(dK, 0), dK);
  EXPECT_EQ(der_component(dK, 2), (DerivationSpec{Scalar{}, BdElement(S), {}}));
  const UlcFunction f = ulc({Scalar(1), Scalar(-2), Scalar::i()});
  const DerivationSpec single{Scalar{}, BdElement::monomial(S, 1, f), {}};
  EXPECT_EQ(der_component(single, 1), single);
  EXPECT_TRUE(der_component(single, 0).b.is_zero());
}

TEST(Derivations, ComponentsMatchQuadratureAndSum) {
  Rng rng(4);
  CorpusConfig cfg;
  for (int i = 0; i < 6; ++i) {
    const DerivationSpec d{random_scalar(rng, cfg), random_bd(rng, cfg, 5), random_compact(rng, cfg)};
    const Derivation black_box = der_closure(d);
    const BdtElement a = random_bdt(rng, cfg);
    const std::int64_t B = reach(d.generator());
    BdtElement total{BdElement(S)};
    for (std::int64_t n = -B; n <= B; ++n) {
      const BdtElement dn_a = der_apply(der_component(d, n), a);
      total += dn_a;
      if (n % 3 == 0)
        EXPECT_EQ(der_component_quadrature(black_box, S, n, a, reach(a) + B), dn_a) << n;
    }
    EXPECT_EQ(total, der_apply(d, a));
  }
}

TEST(Derivations, Covariance) {
  const std::vector<double> thetas{0.1, 0.25, 0.37, 0.5, 0.9};
  Rng rng(5);
  CorpusConfig cfg;
  const BdtElement a = random_bdt(rng, cfg);
  EXPECT_LE(der_check_covariance(DerivationSpec{Scalar(1), BdElement(S), {}}, 0, a, thetas), 1e-12);
  EXPECT_LE(der_check_covariance(inner(k_units(1, 0)), 1, a, thetas), 1e-12);
  for (int i = 0; i < 5; ++i) {
    const DerivationSpec d{random_scalar(rng, cfg), random_bd(rng, cfg), random_compact(rng, cfg)};
    for (std::int64_t n = -3; n <= 3; ++n)
      EXPECT_LE(der_check_covariance(der_component(d, n), n, random_bdt(rng, cfg), thetas), 1e-10);
  }
}

TEST(Derivations, ReconstructExamples) {
  EXPECT_TRUE(der_reconstruct(der_closure(inner({})), S, 4).is_zero());
  EXPECT_EQ(der_reconstruct(der_closure(inner(k_units(0, 0))), S, 4), k_units(0, 0));
  // [U^2 beta(K), .] with finite beta.
  CompactMatrix c;
  c.add(2, 0, Scalar(3));
  c.add(5, 3, Scalar::rational(-1, 2));
  c.add(6, 4, Scalar::i());
  std::vector<CovariantComponent> comps;
  EXPECT_EQ(der_reconstruct(der_closure(inner(c)), S, 4, &comps), c);
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_EQ(comps[0].n, 2);
  EXPECT_EQ(comps[0].beta.at(0), Scalar(3));
  EXPECT_EQ(comps[0].beta.at(3), Scalar::rational(-1, 2));
  EXPECT_EQ(comps[0].beta.at(4), Scalar::i());
}

TEST(Derivations, ReconstructRoundTrip) {
  Rng rng(6);
  CorpusConfig cfg;
  for (int i = 0; i < 25; ++i) {
    const CompactMatrix c = random_compact(rng, cfg);
    EXPECT_EQ(der_reconstruct(der_closure(inner(c)), S, cfg.compact_extent), c);
  }
}

TEST(Derivations, ReconstructRejects) {
  try {
    der_reconstruct(der_closure(DerivationSpec{Scalar(1), BdElement(S), {}}), S, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unsupported);
  }
  EXPECT_THROW(der_reconstruct(der_closure(inner(k_units(6, 0))), S, 3), Error);
  // Right on generators, wrong elsewhere.
  const Derivation wrong = [](const BdtElement& a) {
    BdtElement out = der_apply(inner(k_units(0, 0)), a);
    if (a.compact.entries().size() > 2) out.compact.add(0, 0, Scalar(1));
    return out;
  };
  try {
    der_reconstruct(wrong, S, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ReconstructionMismatch);
  }
}
