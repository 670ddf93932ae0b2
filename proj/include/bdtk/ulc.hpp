#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bdtk/arith.hpp"
#include "bdtk/scalar.hpp"

namespace bdtk {

/// Uniformly locally constant function on Z/SZ, stored as one period of
/// values: f(x) = values[x mod period].
///
/// The stored period is the minimal one, so structural equality is canonical.
/// Float-tagged values compare within kFloatEqTol but only shorten the
/// stored period when bitwise equal, so storing never perturbs a value.
class UlcFunction {
 public:
  /// The zero function.
  UlcFunction() : values_{Scalar{}} {}
  /// Throws InvalidArgument on an empty sequence.
  explicit UlcFunction(std::vector<Scalar> values);

  static UlcFunction constant(Scalar z) { return UlcFunction(std::vector<Scalar>{std::move(z)}); }

  std::uint64_t period() const { return values_.size(); }
  std::span<const Scalar> values() const { return values_; }

  const Scalar& operator()(std::int64_t k) const {
    return values_[static_cast<std::size_t>(euclid_mod(k, static_cast<std::int64_t>(values_.size())))];
  }

  /// Values repeated out to a multiple of the minimal period.
  std::vector<Scalar> values_at_period(std::uint64_t period) const;

  bool is_zero() const;
  bool is_exact() const;

  UlcFunction& operator+=(const UlcFunction& g);
  UlcFunction& operator-=(const UlcFunction& g);
  UlcFunction& operator*=(const UlcFunction& g);
  UlcFunction& operator*=(const Scalar& z);
  friend UlcFunction operator+(UlcFunction f, const UlcFunction& g) { return f += g; }
  friend UlcFunction operator-(UlcFunction f, const UlcFunction& g) { return f -= g; }
  friend UlcFunction operator*(UlcFunction f, const UlcFunction& g) { return f *= g; }
  friend UlcFunction operator*(UlcFunction f, const Scalar& z) { return f *= z; }
  friend UlcFunction operator*(const Scalar& z, UlcFunction f) { return f *= z; }
  UlcFunction operator-() const;

  friend bool operator==(const UlcFunction& f, const UlcFunction& g);
  friend bool operator!=(const UlcFunction& f, const UlcFunction& g) { return !(f == g); }

 private:
  void canonicalize();
  std::vector<Scalar> values_;
};

enum class PointwiseOp { Add, Mul, Conj, Scale };

Scalar ulc_eval(const UlcFunction& f, std::int64_t k);
/// f o phi^m: new values[r] = f(r + m).
UlcFunction ulc_shift(const UlcFunction& f, std::int64_t m);
UlcFunction ulc_conj(const UlcFunction& f);
/// Pointwise algebra after refining both operands to lcm(periods).  Conj
/// ignores g; Scale multiplies f by g's constant value (g must be constant).
/// Throws PeriodMismatch if S is given and lcm(periods) does not divide it.
UlcFunction ulc_pointwise(PointwiseOp op, const UlcFunction& f, const UlcFunction& g,
                          const Supernatural* S = nullptr);
double ulc_sup_norm(const UlcFunction& f);
/// r -> exp(2 pi i j r / l), float-tagged.
UlcFunction ulc_character(std::uint64_t l, std::int64_t j);
/// Indicator of the residue class r mod l (exact).
UlcFunction ulc_indicator(std::uint64_t l, std::uint64_t r);

}  // namespace bdtk
