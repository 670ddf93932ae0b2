#pragma once

#include <cstdint>

#include "bdtk/bd.hpp"
#include "bdtk/compact.hpp"

namespace bdtk {

/// a = T(b) + c on the half-line, stored in canonical form (b, c).
///
/// T(b) = sum_{n>=0} U^n M_{f_n} + sum_{n<0} M_{f_n} (U^*)^{-n}; its matrix
/// entry (k, s) is f_{k-s}(s) for k, s >= 0.
struct BdtElement {
  BdElement symbol;
  CompactMatrix compact;

  BdtElement() = default;
  explicit BdtElement(BdElement b, CompactMatrix c = {}) : symbol(std::move(b)), compact(std::move(c)) {}
  /// Pure compact element over S.
  static BdtElement from_compact(const Supernatural& S, CompactMatrix c) {
    return BdtElement(BdElement(S), std::move(c));
  }

  const Supernatural& S() const { return symbol.S(); }
  bool is_zero() const { return symbol.is_zero() && compact.is_zero(); }
  bool is_exact() const { return symbol.is_exact() && compact.is_exact(); }

  BdtElement& operator+=(const BdtElement& o);
  BdtElement& operator-=(const BdtElement& o);
  BdtElement& operator*=(const Scalar& z);
  friend BdtElement operator+(BdtElement a, const BdtElement& b) { return a += b; }
  friend BdtElement operator-(BdtElement a, const BdtElement& b) { return a -= b; }
  friend BdtElement operator*(BdtElement a, const Scalar& z) { return a *= z; }
  friend BdtElement operator*(const Scalar& z, BdtElement a) { return a *= z; }
  BdtElement operator-() const { return BdtElement(-symbol, -compact); }

  friend bool operator==(const BdtElement& a, const BdtElement& b) {
    return a.symbol == b.symbol && a.compact == b.compact;
  }
  friend bool operator!=(const BdtElement& a, const BdtElement& b) { return !(a == b); }
};

BdtElement toeplitz(const BdElement& b);
BdElement tau(const BdtElement& a);

/// T(b1) T(b2) - T(b1 b2), computed by reducing words in U, U^*, M_f.
CompactMatrix correction(const BdElement& b1, const BdElement& b2);
/// T(b) c and c T(b).
CompactMatrix toeplitz_times_compact(const BdElement& b, const CompactMatrix& c);
CompactMatrix compact_times_toeplitz(const CompactMatrix& c, const BdElement& b);

BdtElement bdt_mul(const BdtElement& a1, const BdtElement& a2);
inline BdtElement operator*(const BdtElement& a, const BdtElement& b) { return bdt_mul(a, b); }
BdtElement bdt_adjoint(const BdtElement& a);
/// (delta_L(b), d_K(c)).
BdtElement bdt_dK(const BdtElement& a);
BdtElement bdt_dK_power(const BdtElement& a, unsigned j);
/// (T(V^n m_{f_n}), n-th diagonal of c).
BdtElement bdt_fourier(const BdtElement& a, std::int64_t n);
/// Component n by roots-of-unity averaging of rho (test oracle).
BdtElement bdt_fourier_quadrature(const BdtElement& a, std::int64_t n);
/// Rows [0, rows) and columns [0, cols) of the half-line matrix.
ScalarMatrix bdt_truncate(const BdtElement& a, std::int64_t rows, std::int64_t cols);
inline ScalarMatrix bdt_truncate(const BdtElement& a, std::int64_t N) { return bdt_truncate(a, N, N); }
BandMatrix bdt_truncate_banded(const BdtElement& a, std::int64_t rows, std::int64_t cols);
BdtElement bdt_rho(const BdtElement& a, double theta);
CyclotomicSum<BdtElement> bdt_rho_exact(const BdtElement& a, std::int64_t p, std::uint64_t q);

}  // namespace bdtk
