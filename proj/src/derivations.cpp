#include "bdtk/derivations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bdtk/error.hpp"
#include "bdtk/random.hpp"

namespace bdtk {

namespace {

double truncated_norm(const BdtElement& a, std::int64_t N) {
  if (a.is_zero()) return 0.0;
  return bdt_truncate_banded(a, N, N).max_singular_value();
}

/// Smallest divisor of S not dividing n; it is always a prime power
/// p^{v_p(n) + 1}.
std::uint64_t separating_level(const Supernatural& S, std::int64_t n) {
  std::uint64_t best = 0;
  const auto m = static_cast<std::uint64_t>(std::abs(n));
  for (const auto& [p, e] : S.exponents()) {
    std::uint64_t v = 0, q = m;
    while (q % p == 0) q /= p, ++v;
    if (e != Supernatural::kInfinity && v + 1 > e) continue;
    std::uint64_t l = 1;
    for (std::uint64_t i = 0; i <= v; ++i) l *= p;
    if (best == 0 || l < best) best = l;
  }
  if (best == 0) throw Error(ErrorCode::Unsupported, "every divisor of S divides " + std::to_string(n));
  return best;
}

std::vector<BdtElement> check_corpus(const Supernatural& S) {
  CorpusConfig cfg;
  cfg.S = S;
  cfg.l_max = S.divisors_up_to(6).back();
  Rng rng(0x5eedULL);
  std::vector<BdtElement> out{toeplitz(BdElement::shift(S, 1)), toeplitz(BdElement::shift(S, -1))};
  while (out.size() < 20) out.push_back(random_bdt(rng, cfg));
  return out;
}

}  // namespace

BdtElement der_apply(const DerivationSpec& d, const BdtElement& a) {
  const BdtElement x = d.generator();
  BdtElement out = x * a - a * x;
  if (!d.gamma.is_zero()) out += bdt_dK(a) * d.gamma;
  return out;
}

Derivation der_closure(DerivationSpec d) {
  return [d = std::move(d)](const BdtElement& a) { return der_apply(d, a); };
}

double der_leibniz_residual(const DerivationSpec& d, const BdtElement& a1, const BdtElement& a2, std::int64_t N) {
  const BdtElement r = der_apply(d, a1 * a2) - der_apply(d, a1) * a2 - a1 * der_apply(d, a2);
  return truncated_norm(r, N);
}

DerivationSpec der_component(const DerivationSpec& d, std::int64_t n) {
  const BdtElement xn = bdt_fourier(d.generator(), n);
  return DerivationSpec{n == 0 ? d.gamma : Scalar{}, xn.symbol, xn.compact};
}

BdtElement der_component_quadrature(const Derivation& d, const Supernatural& S, std::int64_t n, const BdtElement& a,
                                    std::int64_t reach) {
  // theta -> exp(2 pi i n theta) rho_{-theta} d rho_theta (a) has frequencies
  // within reach + |n|, so Q > 2 (reach + |n|) points average it exactly.
  const auto Q = odd_prime_at_least(static_cast<std::uint64_t>(2 * (reach + std::abs(n)) + 1));
  const auto q = static_cast<std::int64_t>(Q);
  CyclotomicSum<BdtElement> avg(Q);
  for (std::int64_t j = 0; j < q; ++j) {
    const CyclotomicSum<BdtElement> rotated = bdt_rho_exact(a, j, Q);
    for (const auto& [e, part] : rotated.terms())
      avg += bdt_rho_exact(d(part), -j, Q).rotated(e + n * j);
  }
  return avg.collapse(BdtElement(BdElement(S))) * Scalar::rational(1, static_cast<long long>(Q));
}

double der_check_covariance(const DerivationSpec& dn, std::int64_t n, const BdtElement& a,
                            const std::vector<double>& thetas, std::int64_t N) {
  const BdtElement base = der_apply(dn, a);
  double worst = 0.0;
  for (double theta : thetas) {
    const BdtElement lhs = bdt_rho(der_apply(dn, bdt_rho(a, theta)), -theta);
    const std::complex<double> phase = std::exp(std::complex<double>(0.0, -2.0 * std::numbers::pi * n * theta));
    worst = std::max(worst, truncated_norm(lhs - base * Scalar::from_complex(phase), N));
  }
  return worst;
}

CompactMatrix der_reconstruct(const Derivation& d, const Supernatural& S, std::int64_t band_limit,
                              std::vector<CovariantComponent>* components) {
  if (band_limit < 0) throw Error(ErrorCode::InvalidArgument, "band_limit must be nonnegative");
  const auto require_compact = [&](const BdtElement& image, std::int64_t shift, const char* what) {
    if (!image.symbol.is_zero()) throw Error(ErrorCode::Unsupported, std::string(what) + " has a symbol part");
    for (const auto& [ix, z] : image.compact.entries())
      if (std::abs(ix.first - ix.second - shift) > band_limit)
        throw Error(ErrorCode::Unsupported, std::string(what) + " has a component beyond band_limit");
  };

  const BdtElement dU = d(toeplitz(BdElement::shift(S, 1)));
  require_compact(dU, 1, "d(U)");

  std::map<std::pair<std::uint64_t, std::uint64_t>, BdtElement> indicator_images;
  const auto d_indicator = [&](std::uint64_t l, std::uint64_t r) -> const BdtElement& {
    auto it = indicator_images.find({l, r});
    if (it == indicator_images.end()) {
      BdtElement image = d(toeplitz(BdElement::multiplication(S, ulc_indicator(l, r))));
      require_compact(image, 0, "d(M_delta)");
      it = indicator_images.emplace(std::make_pair(l, r), std::move(image)).first;
    }
    return it->second;
  };

  std::vector<CovariantComponent> comps;
  for (std::int64_t n = -band_limit; n <= band_limit; ++n) {
    CovariantComponent comp{n, {}};
    if (n == 0) {
      // d_0(U) = U alpha_0(K): alpha_0(k) sits at (k + 1, k).
      const CompactMatrix d0U = bdt_fourier_quadrature(dU, 1).compact;
      std::map<std::int64_t, Scalar> alpha;
      for (const auto& [ix, z] : d0U.entries())
        if (ix.first == ix.second + 1) alpha[ix.second] = z;
      Scalar tail;
      for (auto it = alpha.rbegin(); it != alpha.rend(); ++it) {
        tail -= it->second;
        // beta_0 is constant between support points of alpha.
        const std::int64_t lo = std::next(it) == alpha.rend() ? 0 : std::next(it)->first + 1;
        for (std::int64_t k = lo; k <= it->first; ++k)
          if (!tail.is_zero()) comp.beta[k] = tail;
      }
    } else {
      const std::uint64_t l = separating_level(S, n);
      for (std::uint64_t r = 0; r < l; ++r) {
        const CompactMatrix dn = bdt_fourier_quadrature(d_indicator(l, r), n).compact;
        for (const auto& [ix, z] : dn.entries()) {
          const std::int64_t col = ix.second;
          if (ix.first - col != n || euclid_mod(col, static_cast<std::int64_t>(l)) != static_cast<std::int64_t>(r))
            continue;
          comp.beta[n > 0 ? col : ix.first] = z;
        }
      }
    }
    if (!comp.beta.empty()) comps.push_back(std::move(comp));
  }

  CompactMatrix c;
  for (const auto& comp : comps)
    for (const auto& [k, z] : comp.beta) {
      // n >= 0: U^n beta(K) sends E_k to beta(k) E_{k+n};
      // n < 0: beta(K) (U^*)^{-n} sends E_{k-n} to beta(k) E_k.
      if (comp.n >= 0)
        c.add(k + comp.n, k, z);
      else
        c.add(k, k - comp.n, z);
    }

  const BdtElement x = BdtElement::from_compact(S, c);
  for (const BdtElement& a : check_corpus(S))
    if (d(a) != x * a - a * x)
      throw Error(ErrorCode::ReconstructionMismatch, "d(a) != [c, a] on the check corpus");
  if (components) *components = std::move(comps);
  return c;
}

}  // namespace bdtk
