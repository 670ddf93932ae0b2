#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bdtk {

/// Formal product S = prod p^{e_p} with e_p in {0, 1, ..., INFINITY}.
///
/// Only finitely many primes can be stored; an infinite supernatural number
/// must therefore carry at least one INFINITY exponent.  Finite S is allowed
/// (useful for exhaustive tests); callers that need S infinite check
/// is_infinite().
class Supernatural {
 public:
  using Exponent = std::uint32_t;
  static constexpr Exponent kInfinity = std::numeric_limits<Exponent>::max();

  /// S = 1.
  Supernatural() = default;
  /// Throws InvalidArgument if a key is not prime; exponent-0 entries are dropped.
  explicit Supernatural(std::map<std::uint64_t, Exponent> exponents);

  /// Parses "2:inf,3:1" (also accepts "1" or "" for S = 1).
  static Supernatural parse(std::string_view text);

  const std::map<std::uint64_t, Exponent>& exponents() const { return exponents_; }
  Exponent exponent(std::uint64_t prime) const;
  bool is_infinite() const;

  /// True iff l | S, i.e. the p-adic valuation of l is <= e_p for every p.
  bool divides(std::uint64_t l) const;

  /// Divisors l of S with l <= bound, ascending.
  std::vector<std::uint64_t> divisors_up_to(std::uint64_t bound) const;

  std::string to_string() const;

  friend bool operator==(const Supernatural&, const Supernatural&) = default;

 private:
  std::map<std::uint64_t, Exponent> exponents_;
};

bool is_prime(std::uint64_t n);
std::map<std::uint64_t, std::uint32_t> factorize(std::uint64_t n);
std::uint64_t lcm_checked(std::uint64_t a, std::uint64_t b);

/// Euclidean remainder: always in [0, m).
inline std::int64_t euclid_mod(std::int64_t k, std::int64_t m) {
  std::int64_t r = k % m;
  return r < 0 ? r + m : r;
}

bool sn_divides(std::uint64_t l, const Supernatural& S);

/// Finite-level approximation of a point of Z/SZ: value mod level.
struct Residue {
  std::uint64_t level = 1;
  std::uint64_t value = 0;

  friend bool operator==(const Residue&, const Residue&) = default;
};

Residue embed_int(std::int64_t k, std::uint64_t level);
/// phi^m at finite level: value + m mod level.
Residue odometer(const Residue& x, std::int64_t m);

/// Reduced rational num/den with den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  /// Parses "k/l" or "k".
  static Rational parse(std::string_view text);

  friend bool operator==(const Rational&, const Rational&) = default;
  std::string to_string() const;
};

/// Element of G_S = { k/l : l | S }.
class GsRational {
 public:
  /// Throws NotInGroup if the reduced denominator does not divide S.
  GsRational(Rational q, const Supernatural& S);

  std::int64_t numerator() const { return q_.num; }
  std::int64_t denominator() const { return q_.den; }
  const Rational& value() const { return q_; }

  friend bool operator==(const GsRational&, const GsRational&) = default;

 private:
  Rational q_;
};

bool gs_contains(const Rational& q, const Supernatural& S);
GsRational gs_add(const GsRational& a, const GsRational& b, const Supernatural& S);

}  // namespace bdtk
