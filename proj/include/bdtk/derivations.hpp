#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "bdtk/bdt.hpp"

namespace bdtk {

/// d = gamma d_K + [T(b) + c, .].
struct DerivationSpec {
  Scalar gamma;
  BdElement b;
  CompactMatrix c;

  const Supernatural& S() const { return b.S(); }
  BdtElement generator() const { return BdtElement(b, c); }
  friend bool operator==(const DerivationSpec&, const DerivationSpec&) = default;
};

/// Sequence beta_n(k) of d_n = [U^n beta_n(K), .] (n >= 0) or
/// [beta_n(K) (U^*)^{-n}, .] (n < 0).
struct CovariantComponent {
  std::int64_t n = 0;
  std::map<std::int64_t, Scalar> beta;
};

using Derivation = std::function<BdtElement(const BdtElement&)>;

BdtElement der_apply(const DerivationSpec& d, const BdtElement& a);
/// Closure of der_apply, usable as a black box.
Derivation der_closure(DerivationSpec d);

/// sigma_max of the N x N truncation of d(a1 a2) - d(a1) a2 - a1 d(a2); 0
/// when the difference is exactly zero.
double der_leibniz_residual(const DerivationSpec& d, const BdtElement& a1, const BdtElement& a2, std::int64_t N = 64);

/// n-th Fourier component: gamma d_K [n = 0] + [x_n, .] with x_n the n-th
/// Fourier coefficient of T(b) + c.
DerivationSpec der_component(const DerivationSpec& d, std::int64_t n);

/// d_n(a) as the roots-of-unity average of exp(2 pi i n theta)
/// rho_theta^{-1} d rho_theta (a), evaluated exactly in cyclotomic
/// arithmetic.  Works for any linear black box whose output bands stay within
/// `reach` of a's.
BdtElement der_component_quadrature(const Derivation& d, const Supernatural& S, std::int64_t n, const BdtElement& a,
                                    std::int64_t reach);

/// max over theta of sigma_max of the N x N truncation of
///   rho_theta^{-1} d_n rho_theta (a) - exp(-2 pi i n theta) d_n (a).
double der_check_covariance(const DerivationSpec& dn, std::int64_t n, const BdtElement& a,
                            const std::vector<double>& thetas, std::int64_t N = 32);

/// Recovers c from a derivation with finite-support range, using only its
/// values on U and on the indicators M_{delta_r} of residue classes mod l.
///
/// For n != 0 and l the smallest divisor of S with l not dividing n, the
/// indicator of r = k mod l gives <E_{k+n}, d_n(M_{delta_r}) E_k> = beta_n(k)
/// (for n < 0 the entry is beta_n(k + n)).  For n = 0,
/// d_0(U) = U alpha_0(K) and beta_0(k) = -sum_{r >= k} alpha_0(r).
///
/// The result is checked against d(a) = [c, a] on a fixed 20-element corpus.
/// Throws Unsupported if a generator image has a symbol part or a component
/// beyond band_limit is nonzero, ReconstructionMismatch if the check fails.
CompactMatrix der_reconstruct(const Derivation& d, const Supernatural& S, std::int64_t band_limit,
                              std::vector<CovariantComponent>* components = nullptr);

}  // namespace bdtk
