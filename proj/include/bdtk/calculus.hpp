#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bdtk/bdt.hpp"

namespace bdtk {

/// Approximation together with a bound on its operator-norm distance from
/// the exact target.
template <class T>
struct Certified {
  T value;
  double residual_bound = 0.0;
  std::string method;
};
using CertifiedBd = Certified<BdElement>;
using CertifiedBdt = Certified<BdtElement>;

inline constexpr std::int64_t kDefaultMaxBand = 64;
std::vector<std::int64_t> default_invert_schedule();

/// b^{-1} by sampling B(z)^{-1} on K roots of unity and transforming back to
/// bands, K doubling from 64 up to 4096.  With r = ||b b~ - 1|| < 1,
///   ||b^{-1} - b~|| <= ||b~|| r / (1 - r).
/// The bound is returned as is even if it stays above tol at K = 4096.
///
/// A single band with nowhere-vanishing coefficient is inverted exactly.
/// Throws NotInvertible without a certified positive lower bound for
/// sigma_min(B), ToleranceUnreachable if r >= 1 at the finest grid.
CertifiedBd bd_invert(const BdElement& b, double tol, std::int64_t max_band = kDefaultMaxBand);

/// (T(b) + c)^{-1} = T(b~) + c~ where b~ = bd_invert(b) and c~ solves
///   a c~ = -(correction(b, b~) + c T(b~))
/// on N x N truncations from `sizes`.  With a x = 1 - F the residual is
/// r <= ||1 - b b~|| + ||a c~ - rhs||, and the bound ||x|| r / (1 - r).
///
/// Throws NotInvertible if the winding number of tau(a) is not 0 (the index
/// would be nonzero) or a truncation is numerically singular;
/// ToleranceUnreachable if tol is not reached at the largest size.
CertifiedBdt bdt_invert(const BdtElement& a, double tol,
                        const std::vector<std::int64_t>& sizes = default_invert_schedule());

/// e^{ib} together with bounds for ||delta_L^j (e^{ib} - value)||, j <= P.
struct GradedExp {
  BdElement value;
  std::vector<double> delta_errors;
  std::string method;
};

/// Per-sample eigen-exponential of the Hermitian symbol, transformed back to
/// bands.  The certificate uses Cauchy estimates: e^{iB(z)} is entire and
/// ||e^{iB(z)}|| <= exp(sum_q |z|^q ||C_q||), which bounds both the aliasing
/// of the K-point transform and the neglected Fourier tail.
///
/// Throws InvalidArgument unless b = b^*; ToleranceUnreachable if no grid
/// up to 4096 points reaches tol.
GradedExp bd_exp_graded(const BdElement& b, double tol, std::int64_t max_band, unsigned P);
CertifiedBd bd_exp(const BdElement& b, double tol, std::int64_t max_band = kDefaultMaxBand);

/// I + (e^{iC} - I) with C the dense support block of c.  Throws
/// InvalidArgument unless c = c^*.
BdtElement k_exp(const Supernatural& S, const CompactMatrix& c);

/// e^{ita} for a = T(b) + c self-adjoint, as T(e^{itb}) + K.
///
/// K is read off columns [0, M) of e^{itA_N} - T(u), u = bd_exp(tb).  Both
/// cut-offs are controlled by finite propagation: (A^k x) only reaches k
/// bandwidths beyond the support of x, so the truncation error is bounded
/// by |t| ||A|| sum_{k >= k0} (|t| ||A||)^k / k!, and columns beyond M only
/// feel the boundary after k_M steps.
CertifiedBdt bdt_exp(const BdtElement& a, double t, double tol, std::int64_t max_band = kDefaultMaxBand);

/// f(a) = sum_n f_n exp(2 pi i n a / L) for finitely many n.  tail_bound is
/// the caller's bound for the neglected coefficients and is added to the
/// certificate.
CertifiedBdt smooth_calc(const BdtElement& a, const std::map<std::int64_t, std::complex<double>>& coeffs,
                         double L, double tol, double tail_bound = 0.0);

struct ExpBoundCheck {
  /// Lower bound for the left side (the exact value for the compact check).
  double lhs_lower = 0.0;
  double lhs_estimate = 0.0;
  /// lhs_estimate - lhs_lower, or the float slack for the compact check.
  double certificate = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

/// ||e^{ib}||_M against prod_{j=1}^M (1 + ||b||_j)^{2^{M-j}}.
ExpBoundCheck check_exp_bound_b(const BdElement& b, unsigned M, double tol);
/// ||e^{ic}||_{M,0} against prod_{j=1}^M (1 + ||c||_{j,0})^{2^{M-j}}.
ExpBoundCheck check_exp_bound_c(const CompactMatrix& c, unsigned M);

}  // namespace bdtk
