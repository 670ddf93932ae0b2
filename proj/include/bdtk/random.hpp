#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bdtk/bdt.hpp"

namespace bdtk {

/// Seeded generator whose integer draws are identical on every platform
/// (std::uniform_int_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// Uniform on [0, 1).
  double uniform_real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool coin(double p = 0.5) { return uniform_real() < p; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 engine_;
};

struct CorpusConfig {
  Supernatural S = Supernatural::parse("2:inf,3:1");
  /// Periods are drawn from the divisors of l_max (l_max must divide S).
  std::uint64_t l_max = 6;
  std::int64_t max_band = 4;
  std::int64_t max_numerator = 16;
  std::int64_t max_denominator = 16;
  std::int64_t compact_extent = 8;
  std::int64_t max_compact_entries = 6;
  /// Probability that a coefficient has a nonzero imaginary part.
  double complex_probability = 0.5;
};

Scalar random_rational(Rng& rng, const CorpusConfig& cfg);
Scalar random_scalar(Rng& rng, const CorpusConfig& cfg);
UlcFunction random_ulc(Rng& rng, const CorpusConfig& cfg);
/// Up to `terms` bands drawn from [-max_band, max_band].
BdElement random_bd(Rng& rng, const CorpusConfig& cfg, int terms = 3);
CompactMatrix random_compact(Rng& rng, const CorpusConfig& cfg);
BdtElement random_bdt(Rng& rng, const CorpusConfig& cfg, int terms = 3);
/// b + b^*.
BdElement random_self_adjoint_bd(Rng& rng, const CorpusConfig& cfg, int terms = 2);
CompactMatrix random_self_adjoint_compact(Rng& rng, const CorpusConfig& cfg);

std::vector<std::uint64_t> divisors_of(std::uint64_t n);

}  // namespace bdtk
