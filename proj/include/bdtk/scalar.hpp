#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace bdtk {

/// Equality tolerance used once a float-tagged value takes part in a comparison.
inline constexpr double kFloatEqTol = 1e-12;

/// Complex scalar that is either exact (Gaussian rational, re + i*im with
/// re, im in Q) or float-tagged (std::complex<double>).
///
/// Arithmetic between two exact scalars stays exact; any float operand turns
/// the result into a float.  Equality is exact between exact scalars and
/// within kFloatEqTol otherwise.
class Scalar {
 public:
  Scalar() : value_(Exact{}) {}
  Scalar(int v) : value_(Exact{mpq_class(v), mpq_class(0)}) {}
  Scalar(long v) : value_(Exact{mpq_class(v), mpq_class(0)}) {}
  Scalar(long long v) : value_(Exact{mpq_class(std::to_string(v)), mpq_class(0)}) {}
  Scalar(mpq_class re, mpq_class im = 0);

  static Scalar rational(long long num, long long den = 1);
  static Scalar gaussian(long long re_num, long long re_den, long long im_num,
                         long long im_den);
  static Scalar from_complex(std::complex<double> z) { return Scalar(FloatTag{}, z); }
  static Scalar from_double(double x) { return from_complex({x, 0.0}); }
  static Scalar i();

  bool is_exact() const { return std::holds_alternative<Exact>(value_); }
  bool is_float() const { return !is_exact(); }

  /// Real/imaginary parts; precondition is_exact().
  const mpq_class& re() const;
  const mpq_class& im() const;

  std::complex<double> to_complex() const;
  double abs() const { return std::abs(to_complex()); }

  /// True for exact zero or a float that compares equal to 0.0.
  bool is_zero() const;
  bool is_real() const;

  Scalar conj() const;
  Scalar to_float() const { return from_complex(to_complex()); }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Human-readable form, e.g. "3/4-1/2i" or "(0.5,1.25)".
  std::string to_string() const;

 private:
  struct Exact {
    mpq_class re;
    mpq_class im;
  };
  struct FloatTag {};
  Scalar(FloatTag, std::complex<double> z) : value_(z) {}

  std::variant<Exact, std::complex<double>> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Integer power of a scalar (exponent may be negative for nonzero base).
Scalar pow(const Scalar& base, long long exponent);

}  // namespace bdtk
