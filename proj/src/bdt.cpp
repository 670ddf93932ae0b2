#include "bdtk/bdt.hpp"

#include <algorithm>

#include "bdtk/error.hpp"

namespace bdtk {

BdtElement& BdtElement::operator+=(const BdtElement& o) {
  symbol += o.symbol;
  compact += o.compact;
  return *this;
}

BdtElement& BdtElement::operator-=(const BdtElement& o) {
  symbol -= o.symbol;
  compact -= o.compact;
  return *this;
}

BdtElement& BdtElement::operator*=(const Scalar& z) {
  symbol *= z;
  compact *= z;
  return *this;
}

BdtElement toeplitz(const BdElement& b) { return BdtElement(b); }

BdElement tau(const BdtElement& a) { return a.symbol; }

namespace {

// U^a M_h (U^*)^b
struct Word {
  std::int64_t a;
  UlcFunction h;
  std::int64_t b;
};

Word word_of_band(std::int64_t n, const UlcFunction& f) {
  if (n >= 0) return {n, f, 0};
  return {0, ulc_shift(f, -n), -n};
}

// Multiplies two normal-form words and reduces the result back to normal
// form, adding the matrix-unit terms shed on the way to `emitted`.
Word multiply_words(const Word& w1, const Word& w2, CompactMatrix& emitted) {
  Word out{};
  const std::int64_t b = w1.b, c = w2.a;
  if (c >= b) {
    // M_h U^e = U^e M_{h o phi^e}
    out.a = w1.a + (c - b);
    out.h = ulc_shift(w1.h, c - b) * w2.h;
    out.b = w2.b;
  } else {
    // (U^*)^e M_g = M_{g o phi^e} (U^*)^e
    out.a = w1.a;
    out.h = w1.h * ulc_shift(w2.h, b - c);
    out.b = (b - c) + w2.b;
  }
  // U M_h U^* = M_{h o phi^{-1}} - h(-1) P_00
  while (out.a > 0 && out.b > 0) {
    emitted.add(out.a - 1, out.b - 1, -out.h(-1));
    out.h = ulc_shift(out.h, -1);
    --out.a;
    --out.b;
  }
  return out;
}

}  // namespace

CompactMatrix correction(const BdElement& b1, const BdElement& b2) {
  if (!(b1.S() == b2.S())) throw Error(ErrorCode::InvalidArgument, "correction over different S");
  CompactMatrix emitted;
  for (const auto& [n, f] : b1.bands()) {
    const Word w1 = word_of_band(n, f);
    for (const auto& [m, g] : b2.bands()) multiply_words(w1, word_of_band(m, g), emitted);
  }
  return emitted;
}

CompactMatrix toeplitz_times_compact(const BdElement& b, const CompactMatrix& c) {
  CompactMatrix out;
  for (const auto& [ix, z] : c.entries()) {
    const auto [t, s] = ix;
    for (const auto& [n, f] : b.bands())
      if (t + n >= 0) out.add(t + n, s, f(t) * z);
  }
  return out;
}

CompactMatrix compact_times_toeplitz(const CompactMatrix& c, const BdElement& b) {
  CompactMatrix out;
  for (const auto& [ix, z] : c.entries()) {
    const auto [k, t] = ix;
    for (const auto& [n, f] : b.bands())
      if (t - n >= 0) out.add(k, t - n, z * f(t - n));
  }
  return out;
}

BdtElement bdt_mul(const BdtElement& a1, const BdtElement& a2) {
  if (!(a1.S() == a2.S())) throw Error(ErrorCode::InvalidArgument, "bdt_mul over different S");
  BdtElement out(bd_mul(a1.symbol, a2.symbol), correction(a1.symbol, a2.symbol));
  out.compact += toeplitz_times_compact(a1.symbol, a2.compact);
  out.compact += compact_times_toeplitz(a1.compact, a2.symbol);
  out.compact += a1.compact * a2.compact;
  return out;
}

BdtElement bdt_adjoint(const BdtElement& a) {
  return BdtElement(bd_adjoint(a.symbol), k_adjoint(a.compact));
}

BdtElement bdt_dK(const BdtElement& a) { return BdtElement(bd_delta_L(a.symbol), k_dK(a.compact)); }

BdtElement bdt_dK_power(const BdtElement& a, unsigned j) {
  BdtElement out = a;
  for (unsigned i = 0; i < j; ++i) out = bdt_dK(out);
  return out;
}

BdtElement bdt_fourier(const BdtElement& a, std::int64_t n) {
  return BdtElement(BdElement::monomial(a.S(), n, a.symbol.band(n)), k_diagonal(a.compact, n));
}

CyclotomicSum<BdtElement> bdt_rho_exact(const BdtElement& a, std::int64_t p, std::uint64_t q) {
  CyclotomicSum<BdtElement> out(q);
  for (const auto& [n, f] : a.symbol.bands())
    out.add(n * p, toeplitz(BdElement::monomial(a.S(), n, f)));
  for (const auto& [ix, z] : a.compact.entries()) {
    CompactMatrix unit;
    unit.add(ix.first, ix.second, z);
    out.add((ix.first - ix.second) * p, BdtElement::from_compact(a.S(), std::move(unit)));
  }
  return out;
}

BdtElement bdt_fourier_quadrature(const BdtElement& a, std::int64_t n) {
  std::int64_t reach = std::max(a.symbol.bandwidth(), std::abs(n));
  reach = std::max(reach, std::max(a.compact.row_extent(), a.compact.col_extent()));
  const auto Q = odd_prime_at_least(static_cast<std::uint64_t>(2 * reach + 1));
  CyclotomicSum<BdtElement> avg(Q);
  for (std::uint64_t j = 0; j < Q; ++j) {
    const auto J = static_cast<std::int64_t>(j);
    avg += bdt_rho_exact(a, J, Q).rotated(-n * J);
  }
  return avg.collapse(BdtElement(BdElement(a.S()))) *
         Scalar::rational(1, static_cast<long long>(Q));
}

ScalarMatrix bdt_truncate(const BdtElement& a, std::int64_t rows, std::int64_t cols) {
  if (rows < 0 || cols < 0) throw Error(ErrorCode::InvalidArgument, "negative truncation size");
  ScalarMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::int64_t s = 0; s < cols; ++s)
    for (const auto& [n, f] : a.symbol.bands()) {
      const std::int64_t k = s + n;
      if (k >= 0 && k < rows) m(static_cast<std::size_t>(k), static_cast<std::size_t>(s)) = f(s);
    }
  for (const auto& [ix, z] : a.compact.entries())
    if (ix.first < rows && ix.second < cols)
      m(static_cast<std::size_t>(ix.first), static_cast<std::size_t>(ix.second)) += z;
  return m;
}

BandMatrix bdt_truncate_banded(const BdtElement& a, std::int64_t rows, std::int64_t cols) {
  std::int64_t kl = std::max<std::int64_t>(a.symbol.max_band(), 0);
  std::int64_t ku = std::max<std::int64_t>(-a.symbol.min_band(), 0);
  for (const auto& [ix, z] : a.compact.entries()) {
    kl = std::max(kl, ix.first - ix.second);
    ku = std::max(ku, ix.second - ix.first);
  }
  BandMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
               static_cast<std::size_t>(kl), static_cast<std::size_t>(ku));
  for (std::int64_t s = 0; s < cols; ++s)
    for (const auto& [n, f] : a.symbol.bands()) {
      const std::int64_t k = s + n;
      if (k >= 0 && k < rows)
        m.set(static_cast<std::size_t>(k), static_cast<std::size_t>(s), f(s).to_complex());
    }
  for (const auto& [ix, z] : a.compact.entries())
    if (ix.first < rows && ix.second < cols) {
      const auto i = static_cast<std::size_t>(ix.first), j = static_cast<std::size_t>(ix.second);
      m.set(i, j, m.get(i, j) + z.to_complex());
    }
  return m;
}

BdtElement bdt_rho(const BdtElement& a, double theta) {
  return BdtElement(bd_rho(a.symbol, theta), k_rho(a.compact, theta));
}

}  // namespace bdtk
