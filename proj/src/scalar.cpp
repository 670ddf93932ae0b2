#include "bdtk/scalar.hpp"

#include <ostream>
#include <sstream>

#include "bdtk/error.hpp"

namespace bdtk {

Scalar::Scalar(mpq_class re, mpq_class im) : value_(Exact{std::move(re), std::move(im)}) {
  auto& e = std::get<Exact>(value_);
  e.re.canonicalize();
  e.im.canonicalize();
}

Scalar Scalar::rational(long long num, long long den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  mpq_class q(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  q.canonicalize();
  return Scalar(q, 0);
}

Scalar Scalar::gaussian(long long re_num, long long re_den, long long im_num,
                        long long im_den) {
  Scalar re = rational(re_num, re_den);
  Scalar im = rational(im_num, im_den);
  return Scalar(re.re(), im.re());
}

Scalar Scalar::i() { return Scalar(mpq_class(0), mpq_class(1)); }

const mpq_class& Scalar::re() const {
  if (!is_exact()) throw Error(ErrorCode::InvalidArgument, "re() of float scalar");
  return std::get<Exact>(value_).re;
}

const mpq_class& Scalar::im() const {
  if (!is_exact()) throw Error(ErrorCode::InvalidArgument, "im() of float scalar");
  return std::get<Exact>(value_).im;
}

std::complex<double> Scalar::to_complex() const {
  if (const auto* e = std::get_if<Exact>(&value_)) return {e->re.get_d(), e->im.get_d()};
  return std::get<std::complex<double>>(value_);
}

bool Scalar::is_zero() const {
  if (const auto* e = std::get_if<Exact>(&value_)) return sgn(e->re) == 0 && sgn(e->im) == 0;
  const auto& z = std::get<std::complex<double>>(value_);
  return z.real() == 0.0 && z.imag() == 0.0;
}

bool Scalar::is_real() const {
  if (const auto* e = std::get_if<Exact>(&value_)) return sgn(e->im) == 0;
  return std::abs(std::get<std::complex<double>>(value_).imag()) <= kFloatEqTol;
}

Scalar Scalar::conj() const {
  if (const auto* e = std::get_if<Exact>(&value_)) return Scalar(e->re, -e->im);
  return from_complex(std::conj(std::get<std::complex<double>>(value_)));
}

Scalar Scalar::operator-() const {
  if (const auto* e = std::get_if<Exact>(&value_)) return Scalar(-e->re, -e->im);
  return from_complex(-std::get<std::complex<double>>(value_));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    auto& e = std::get<Exact>(value_);
    e.re += o.re();
    e.im += o.im();
  } else {
    value_ = to_complex() + o.to_complex();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    auto& e = std::get<Exact>(value_);
    e.re -= o.re();
    e.im -= o.im();
  } else {
    value_ = to_complex() - o.to_complex();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    auto& e = std::get<Exact>(value_);
    const auto& f = std::get<Exact>(o.value_);
    mpq_class re = e.re * f.re - e.im * f.im;
    mpq_class im = e.re * f.im + e.im * f.re;
    e.re = std::move(re);
    e.im = std::move(im);
  } else {
    value_ = to_complex() * o.to_complex();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero scalar");
  if (is_exact() && o.is_exact()) {
    const auto& f = std::get<Exact>(o.value_);
    mpq_class norm = f.re * f.re + f.im * f.im;
    *this *= Scalar(f.re / norm, -f.im / norm);
  } else {
    value_ = to_complex() / o.to_complex();
  }
  return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.re() == b.re() && a.im() == b.im();
  return std::abs(a.to_complex() - b.to_complex()) <= kFloatEqTol;
}

std::string Scalar::to_string() const {
  std::ostringstream os;
  if (const auto* e = std::get_if<Exact>(&value_)) {
    if (sgn(e->im) == 0) {
      os << e->re.get_str();
    } else if (sgn(e->re) == 0) {
      os << e->im.get_str() << "i";
    } else {
      os << e->re.get_str() << (sgn(e->im) > 0 ? "+" : "") << e->im.get_str() << "i";
    }
  } else {
    os.precision(17);
    os << std::get<std::complex<double>>(value_);
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar pow(const Scalar& base, long long exponent) {
  if (exponent < 0) return pow(Scalar(1) / base, -exponent);
  Scalar result(1);
  Scalar b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    b *= b;
    exponent >>= 1;
  }
  return result;
}

}  // namespace bdtk
