#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "bdtk/arith.hpp"
#include "bdtk/error.hpp"
#include "bdtk/scalar.hpp"

namespace bdtk {

/// Integer coefficients of the cyclotomic polynomial Phi_q, lowest degree first.
std::vector<std::int64_t> cyclotomic_polynomial(std::uint64_t q);

/// Formal sum  sum_e zeta^e T_e  with zeta = exp(2 pi i / q) a primitive q-th
/// root of unity.  T needs +=, -=, * Scalar and is_zero().
///
/// Used for exact roots-of-unity quadrature: the averages that pick out a
/// Fourier component are rational combinations of powers of zeta, and
/// collapse() reduces modulo Phi_q to recover the rational value.
template <class T>
class CyclotomicSum {
 public:
  explicit CyclotomicSum(std::uint64_t order) : order_(order) {
    if (order == 0) throw Error(ErrorCode::InvalidArgument, "root of unity order must be >= 1");
  }

  std::uint64_t order() const { return order_; }
  const std::map<std::int64_t, T>& terms() const { return terms_; }

  /// Adds zeta^e * t.
  void add(std::int64_t e, const T& t) {
    const auto k = euclid_mod(e, static_cast<std::int64_t>(order_));
    auto it = terms_.find(k);
    if (it == terms_.end())
      terms_.emplace(k, t);
    else
      it->second += t;
  }

  CyclotomicSum& operator+=(const CyclotomicSum& o) {
    check_order(o);
    for (const auto& [e, t] : o.terms_) add(e, t);
    return *this;
  }

  /// Multiplies every term by zeta^e.
  CyclotomicSum rotated(std::int64_t e) const {
    CyclotomicSum out(order_);
    for (const auto& [k, t] : terms_) out.add(k + e, t);
    return out;
  }

  CyclotomicSum scaled(const Scalar& z) const {
    CyclotomicSum out(order_);
    for (const auto& [k, t] : terms_) out.add(k, t * z);
    return out;
  }

  /// Applies a Q-linear map termwise.
  template <class F>
  auto map(F&& f) const -> CyclotomicSum<decltype(f(std::declval<const T&>()))> {
    CyclotomicSum<decltype(f(std::declval<const T&>()))> out(order_);
    for (const auto& [k, t] : terms_) out.add(k, f(t));
    return out;
  }

  /// Reduces modulo Phi_q and returns the value when it lies in the
  /// coefficient space (no zeta left).  The coefficient field is Q(i), so
  /// orders divisible by 4 (where i is itself a power of zeta) are rejected.
  /// Throws Unsupported if the reduced sum still involves zeta.
  T collapse(const T& zero) const {
    if (order_ % 4 == 0)
      throw Error(ErrorCode::Unsupported, "exact collapse needs an order not divisible by 4");
    const auto phi = cyclotomic_polynomial(order_);
    const std::size_t deg = phi.size() - 1;
    std::vector<T> c(order_, zero);
    for (const auto& [k, t] : terms_) c[static_cast<std::size_t>(k)] += t;
    // Phi_q is monic: x^deg = -sum_{i<deg} phi_i x^i.
    for (std::size_t d = order_; d-- > deg;) {
      if (c[d].is_zero()) continue;
      const T lead = c[d];
      for (std::size_t i = 0; i < deg; ++i)
        if (phi[i] != 0) c[d - deg + i] -= lead * Scalar(static_cast<long long>(phi[i]));
      c[d] = zero;
    }
    for (std::size_t i = 1; i < deg; ++i)
      if (!c[i].is_zero()) throw Error(ErrorCode::Unsupported, "cyclotomic sum is not rational");
    return c[0];
  }

 private:
  void check_order(const CyclotomicSum& o) const {
    if (o.order_ != order_) throw Error(ErrorCode::InvalidArgument, "cyclotomic order mismatch");
  }

  std::uint64_t order_;
  std::map<std::int64_t, T> terms_;
};

/// Smallest odd prime >= n; a convenient quadrature order since Q(zeta_p)
/// meets Q(i) only in Q.
std::uint64_t odd_prime_at_least(std::uint64_t n);

}  // namespace bdtk
