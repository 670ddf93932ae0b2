#include "bdtk/random.hpp"

#include "bdtk/error.hpp"

namespace bdtk {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error(ErrorCode::InvalidArgument, "empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  // rejection sampling removes modulo bias
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

std::vector<std::uint64_t> divisors_of(std::uint64_t n) {
  std::vector<std::uint64_t> d;
  for (std::uint64_t k = 1; k <= n; ++k)
    if (n % k == 0) d.push_back(k);
  return d;
}

Scalar random_rational(Rng& rng, const CorpusConfig& cfg) {
  const auto num = rng.uniform(-cfg.max_numerator, cfg.max_numerator);
  const auto den = rng.uniform(1, cfg.max_denominator);
  return Scalar::rational(num, den);
}

Scalar random_scalar(Rng& rng, const CorpusConfig& cfg) {
  Scalar re = random_rational(rng, cfg);
  if (!rng.coin(cfg.complex_probability)) return re;
  return re + random_rational(rng, cfg) * Scalar::i();
}

UlcFunction random_ulc(Rng& rng, const CorpusConfig& cfg) {
  if (!cfg.S.divides(cfg.l_max)) throw Error(ErrorCode::InvalidArgument, "l_max must divide S");
  const auto l = rng.pick(divisors_of(cfg.l_max));
  std::vector<Scalar> v;
  for (std::uint64_t r = 0; r < l; ++r) v.push_back(random_scalar(rng, cfg));
  return UlcFunction(std::move(v));
}

BdElement random_bd(Rng& rng, const CorpusConfig& cfg, int terms) {
  BdElement b(cfg.S);
  for (int t = 0; t < terms; ++t) b.add_band(rng.uniform(-cfg.max_band, cfg.max_band), random_ulc(rng, cfg));
  return b;
}

CompactMatrix random_compact(Rng& rng, const CorpusConfig& cfg) {
  CompactMatrix c;
  const auto count = rng.uniform(0, cfg.max_compact_entries);
  for (std::int64_t i = 0; i < count; ++i) {
    const auto k = rng.uniform(0, cfg.compact_extent - 1);
    const auto s = rng.uniform(0, cfg.compact_extent - 1);
    c.add(k, s, random_scalar(rng, cfg));
  }
  return c;
}

BdtElement random_bdt(Rng& rng, const CorpusConfig& cfg, int terms) {
  BdElement b = random_bd(rng, cfg, terms);
  return BdtElement(std::move(b), random_compact(rng, cfg));
}

BdElement random_self_adjoint_bd(Rng& rng, const CorpusConfig& cfg, int terms) {
  const BdElement b = random_bd(rng, cfg, terms);
  return b + bd_adjoint(b);
}

CompactMatrix random_self_adjoint_compact(Rng& rng, const CorpusConfig& cfg) {
  const CompactMatrix c = random_compact(rng, cfg);
  return c + k_adjoint(c);
}

}  // namespace bdtk
