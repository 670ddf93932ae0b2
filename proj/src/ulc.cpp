#include "bdtk/ulc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bdtk/error.hpp"

namespace bdtk {

UlcFunction::UlcFunction(std::vector<Scalar> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorCode::InvalidArgument, "ULC function needs period >= 1");
  canonicalize();
}

namespace {

// Period reduction must not move float values, so floats only merge when
// bitwise equal.
bool identical(const Scalar& a, const Scalar& b) {
  if (a.is_exact() != b.is_exact()) return false;
  return a.is_exact() ? a == b : a.to_complex() == b.to_complex();
}

}  // namespace

void UlcFunction::canonicalize() {
  const std::size_t l = values_.size();
  for (std::size_t d = 1; d < l; ++d) {
    if (l % d != 0) continue;
    bool periodic = true;
    for (std::size_t r = d; r < l && periodic; ++r) periodic = identical(values_[r], values_[r % d]);
    if (periodic) {
      values_.resize(d);
      return;
    }
  }
}

std::vector<Scalar> UlcFunction::values_at_period(std::uint64_t period) const {
  if (period == 0 || period % values_.size() != 0)
    throw Error(ErrorCode::PeriodMismatch, "refinement period must be a multiple of the period");
  std::vector<Scalar> out;
  out.reserve(period);
  for (std::uint64_t r = 0; r < period; ++r) out.push_back(values_[r % values_.size()]);
  return out;
}

bool UlcFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Scalar& z) { return z.is_zero(); });
}

bool UlcFunction::is_exact() const {
  return std::all_of(values_.begin(), values_.end(), [](const Scalar& z) { return z.is_exact(); });
}

namespace {

template <class Op>
UlcFunction combine(const UlcFunction& f, const UlcFunction& g, Op op) {
  const auto l = lcm_checked(f.period(), g.period());
  std::vector<Scalar> out;
  out.reserve(l);
  for (std::uint64_t r = 0; r < l; ++r) {
    const auto k = static_cast<std::int64_t>(r);
    out.push_back(op(f(k), g(k)));
  }
  return UlcFunction(std::move(out));
}

}  // namespace

UlcFunction& UlcFunction::operator+=(const UlcFunction& g) {
  return *this = combine(*this, g, [](const Scalar& a, const Scalar& b) { return a + b; });
}

UlcFunction& UlcFunction::operator-=(const UlcFunction& g) {
  return *this = combine(*this, g, [](const Scalar& a, const Scalar& b) { return a - b; });
}

UlcFunction& UlcFunction::operator*=(const UlcFunction& g) {
  return *this = combine(*this, g, [](const Scalar& a, const Scalar& b) { return a * b; });
}

UlcFunction& UlcFunction::operator*=(const Scalar& z) {
  for (auto& v : values_) v *= z;
  canonicalize();
  return *this;
}

UlcFunction UlcFunction::operator-() const {
  UlcFunction out = *this;
  for (auto& v : out.values_) v = -v;
  return out;
}

bool operator==(const UlcFunction& f, const UlcFunction& g) {
  if (f.is_exact() && g.is_exact() && f.period() != g.period()) return false;
  const auto l = lcm_checked(f.period(), g.period());
  for (std::uint64_t r = 0; r < l; ++r) {
    const auto k = static_cast<std::int64_t>(r);
    if (f(k) != g(k)) return false;
  }
  return true;
}

Scalar ulc_eval(const UlcFunction& f, std::int64_t k) { return f(k); }

UlcFunction ulc_shift(const UlcFunction& f, std::int64_t m) {
  const auto l = f.period();
  std::vector<Scalar> out;
  out.reserve(l);
  for (std::uint64_t r = 0; r < l; ++r) out.push_back(f(static_cast<std::int64_t>(r) + m));
  return UlcFunction(std::move(out));
}

UlcFunction ulc_conj(const UlcFunction& f) {
  std::vector<Scalar> out;
  for (const auto& v : f.values()) out.push_back(v.conj());
  return UlcFunction(std::move(out));
}

UlcFunction ulc_pointwise(PointwiseOp op, const UlcFunction& f, const UlcFunction& g,
                          const Supernatural* S) {
  if (S != nullptr && op != PointwiseOp::Conj && op != PointwiseOp::Scale) {
    const auto l = lcm_checked(f.period(), g.period());
    if (!S->divides(l))
      throw Error(ErrorCode::PeriodMismatch,
                  "period " + std::to_string(l) + " does not divide S = " + S->to_string());
  }
  switch (op) {
    case PointwiseOp::Add: return f + g;
    case PointwiseOp::Mul: return f * g;
    case PointwiseOp::Conj: return ulc_conj(f);
    case PointwiseOp::Scale:
      if (g.period() != 1) throw Error(ErrorCode::InvalidArgument, "scale needs a constant");
      return f * g(0);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown pointwise op");
}

double ulc_sup_norm(const UlcFunction& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, v.abs());
  return m;
}

UlcFunction ulc_character(std::uint64_t l, std::int64_t j) {
  if (l == 0) throw Error(ErrorCode::InvalidArgument, "character level must be >= 1");
  std::vector<Scalar> out;
  out.reserve(l);
  const auto L = static_cast<std::int64_t>(l);
  for (std::int64_t r = 0; r < L; ++r) {
    // reduce the phase exactly before going to floating point
    const auto k = euclid_mod(j * r, L);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(L);
    double c = std::cos(angle), s = std::sin(angle);
    if (4 * k == L || 4 * k == 3 * L) c = 0.0;
    if (2 * k == L) s = 0.0;
    out.push_back(Scalar::from_complex({c, s}));
  }
  return UlcFunction(std::move(out));
}

UlcFunction ulc_indicator(std::uint64_t l, std::uint64_t r) {
  if (l == 0 || r >= l) throw Error(ErrorCode::InvalidArgument, "indicator needs 0 <= r < l");
  std::vector<Scalar> out(l, Scalar(0));
  out[r] = Scalar(1);
  return UlcFunction(std::move(out));
}

}  // namespace bdtk
