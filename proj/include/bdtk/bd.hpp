#pragma once

#include <cstdint>
#include <map>

#include <Eigen/Dense>

#include "bdtk/arith.hpp"
#include "bdtk/cyclotomic.hpp"
#include "bdtk/linalg.hpp"
#include "bdtk/ulc.hpp"

namespace bdtk {

/// Finite band sum b = sum_n V^n m_{f_n} acting on l^2(Z):
///   <E_k, b E_s> = f_{k-s}(s).
///
/// Zero bands are never stored, so == is structural.
class BdElement {
 public:
  /// Zero element over S = 1.
  BdElement() = default;
  explicit BdElement(Supernatural S) : S_(std::move(S)) {}
  /// Throws PeriodMismatch if a band period does not divide S.
  BdElement(Supernatural S, std::map<std::int64_t, UlcFunction> bands);

  static BdElement identity(const Supernatural& S);
  static BdElement scalar(const Supernatural& S, const Scalar& z);
  /// V^n m_f.
  static BdElement monomial(const Supernatural& S, std::int64_t n, const UlcFunction& f);
  static BdElement shift(const Supernatural& S, std::int64_t n) {
    return monomial(S, n, UlcFunction::constant(1));
  }
  static BdElement multiplication(const Supernatural& S, const UlcFunction& f) {
    return monomial(S, 0, f);
  }

  const Supernatural& S() const { return S_; }
  const std::map<std::int64_t, UlcFunction>& bands() const { return bands_; }
  /// f_n, the zero function when absent.
  UlcFunction band(std::int64_t n) const;
  /// lcm of the band periods.
  std::uint64_t period() const;
  /// max |n| over stored bands (0 for the zero element).
  std::int64_t bandwidth() const;
  std::int64_t min_band() const;
  std::int64_t max_band() const;

  bool is_zero() const { return bands_.empty(); }
  bool is_exact() const;

  /// Adds V^n m_f.
  void add_band(std::int64_t n, const UlcFunction& f);

  BdElement& operator+=(const BdElement& o);
  BdElement& operator-=(const BdElement& o);
  BdElement& operator*=(const Scalar& z);
  friend BdElement operator+(BdElement a, const BdElement& b) { return a += b; }
  friend BdElement operator-(BdElement a, const BdElement& b) { return a -= b; }
  friend BdElement operator*(BdElement a, const Scalar& z) { return a *= z; }
  friend BdElement operator*(const Scalar& z, BdElement a) { return a *= z; }
  BdElement operator-() const;

  friend bool operator==(const BdElement& a, const BdElement& b);
  friend bool operator!=(const BdElement& a, const BdElement& b) { return !(a == b); }

 private:
  void check_same_S(const BdElement& o) const;

  Supernatural S_;
  std::map<std::int64_t, UlcFunction> bands_;
};

/// (V^n m_f)(V^m m_g) = V^{n+m} m_{(f o phi^m) g}.
BdElement bd_mul(const BdElement& a, const BdElement& b);
inline BdElement operator*(const BdElement& a, const BdElement& b) { return bd_mul(a, b); }
/// (V^n m_f)^* = V^{-n} m_{conj(f) o phi^{-n}}.
BdElement bd_adjoint(const BdElement& b);
/// Band n multiplied by n.
BdElement bd_delta_L(const BdElement& b);
BdElement bd_delta_L_power(const BdElement& b, unsigned j);
UlcFunction bd_fourier(const BdElement& b, std::int64_t n);
/// Band n multiplied by exp(2 pi i n theta); float-tagged.
BdElement bd_rho(const BdElement& b, double theta);
/// rho_{p/q}(b) kept exact: band n is filed under the power zeta_q^{n p}.
CyclotomicSum<BdElement> bd_rho_exact(const BdElement& b, std::int64_t p, std::uint64_t q);
/// Fourier component by roots-of-unity averaging of rho (independent of the
/// structural read-off in bd_fourier).
UlcFunction bd_fourier_quadrature(const BdElement& b, std::int64_t n);

/// Bloch symbol B(z) = sum_q z^q C_q, an l x l Laurent matrix polynomial with
/// l the period of b.  Column r collects the basis vectors E_{r + l j}.
struct SymbolMatrix {
  std::uint64_t period = 1;
  std::map<std::int64_t, Eigen::MatrixXcd> coefficients;

  Eigen::MatrixXcd at(double theta) const;
  /// H(theta) = B^* B as a trigonometric polynomial.
  HermitianTrigPoly gram() const;
  /// H(theta) = B B^*.
  HermitianTrigPoly cogram() const;

  /// D_row(z)^{-1} B(z) D_col(z) for diagonal unitaries D = diag(z^{p_i}) chosen
  /// along a spanning forest of the sparsity pattern, so that every tree edge
  /// becomes z-independent.  Singular values are unchanged; a pattern without
  /// cycles gives a constant symbol.
  SymbolMatrix gauge_reduced() const;
};

SymbolMatrix bd_symbol(const BdElement& b);

/// Certified bracket for ||b|| on l^2(Z); width <= tol.
CertifiedBracket bd_norm_bracket(const BdElement& b, double tol);
/// Value within tol of ||b||.  Throws InvalidArgument if tol <= 0.
double bd_norm(const BdElement& b, double tol);
/// Certified bracket for min_theta sigma_min(B(theta)), the distance of b
/// from the non-invertibles' boundary (||b^{-1}||^{-1}).
CertifiedBracket bd_min_singular_bracket(const BdElement& b, double tol);

struct NormEstimate {
  double value = 0.0;
  /// |value - true norm| <= error_bound.
  double error_bound = 0.0;
};

/// ||b||_P = sum_j binom(P, j) ||delta_L^j b||.
NormEstimate bd_p_norm(const BdElement& b, unsigned P, double tol);

/// Matrix of b on the basis window [lo, hi) of l^2(Z).
ScalarMatrix bd_apply(const BdElement& b, std::int64_t lo, std::int64_t hi);
/// Float band-storage version of bd_apply for large windows.
BandMatrix bd_apply_banded(const BdElement& b, std::int64_t lo, std::int64_t hi);

}  // namespace bdtk
