#include "bdtk/compact.hpp"

#include <cmath>
#include <numbers>

#include "bdtk/error.hpp"

namespace bdtk {

void CompactMatrix::add(std::int64_t k, std::int64_t s, const Scalar& z) {
  if (k < 0 || s < 0) throw Error(ErrorCode::InvalidArgument, "compact index must be >= 0");
  if (z.is_zero()) return;
  auto [it, inserted] = entries_.try_emplace({k, s}, z);
  if (inserted) return;
  it->second += z;
  if (it->second.is_zero()) entries_.erase(it);
}

void CompactMatrix::set(std::int64_t k, std::int64_t s, const Scalar& z) {
  if (k < 0 || s < 0) throw Error(ErrorCode::InvalidArgument, "compact index must be >= 0");
  if (z.is_zero())
    entries_.erase({k, s});
  else
    entries_[{k, s}] = z;
}

Scalar CompactMatrix::get(std::int64_t k, std::int64_t s) const {
  auto it = entries_.find({k, s});
  return it == entries_.end() ? Scalar{} : it->second;
}

bool CompactMatrix::is_exact() const {
  for (const auto& [ix, z] : entries_)
    if (!z.is_exact()) return false;
  return true;
}

std::int64_t CompactMatrix::row_extent() const {
  std::int64_t r = 0;
  for (const auto& [ix, z] : entries_) r = std::max(r, ix.first + 1);
  return r;
}

std::int64_t CompactMatrix::col_extent() const {
  std::int64_t c = 0;
  for (const auto& [ix, z] : entries_) c = std::max(c, ix.second + 1);
  return c;
}

CompactMatrix& CompactMatrix::operator+=(const CompactMatrix& o) {
  for (const auto& [ix, z] : o.entries_) add(ix.first, ix.second, z);
  return *this;
}

CompactMatrix& CompactMatrix::operator-=(const CompactMatrix& o) {
  for (const auto& [ix, z] : o.entries_) add(ix.first, ix.second, -z);
  return *this;
}

CompactMatrix& CompactMatrix::operator*=(const Scalar& z) {
  for (auto it = entries_.begin(); it != entries_.end();) {
    it->second *= z;
    it = it->second.is_zero() ? entries_.erase(it) : std::next(it);
  }
  return *this;
}

CompactMatrix CompactMatrix::operator-() const {
  CompactMatrix out = *this;
  for (auto& [ix, z] : out.entries_) z = -z;
  return out;
}

CompactMatrix operator*(const CompactMatrix& a, const CompactMatrix& b) {
  // index b by row for the inner sum
  std::map<std::int64_t, std::vector<std::pair<std::int64_t, const Scalar*>>> rows;
  for (const auto& [ix, z] : b.entries_) rows[ix.first].push_back({ix.second, &z});
  CompactMatrix out;
  for (const auto& [ix, z] : a.entries_) {
    auto it = rows.find(ix.second);
    if (it == rows.end()) continue;
    for (const auto& [t, w] : it->second) out.add(ix.first, t, z * *w);
  }
  return out;
}

bool operator==(const CompactMatrix& a, const CompactMatrix& b) {
  if (a.entries_.size() != b.entries_.size()) {
    // float entries may cancel to tiny values on one side only
    if (a.is_exact() && b.is_exact()) return false;
  }
  CompactMatrix d = a - b;
  for (const auto& [ix, z] : d.entries_)
    if (z != Scalar{}) return false;
  return true;
}

ScalarMatrix CompactMatrix::to_dense(std::int64_t rows, std::int64_t cols) const {
  ScalarMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (const auto& [ix, z] : entries_)
    if (ix.first < rows && ix.second < cols)
      m(static_cast<std::size_t>(ix.first), static_cast<std::size_t>(ix.second)) = z;
  return m;
}

CompactMatrix CompactMatrix::from_dense(const ScalarMatrix& m) {
  CompactMatrix c;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      c.add(static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), m(i, j));
  return c;
}

CompactMatrix k_units(std::int64_t k, std::int64_t s) {
  CompactMatrix c;
  c.add(k, s, Scalar(1));
  return c;
}

CompactMatrix k_adjoint(const CompactMatrix& c) {
  CompactMatrix out;
  for (const auto& [ix, z] : c.entries()) out.add(ix.second, ix.first, z.conj());
  return out;
}

CompactMatrix k_algebra(KOp op, const CompactMatrix& a, const CompactMatrix& b, const Scalar& z) {
  switch (op) {
    case KOp::Add: return a + b;
    case KOp::Mul: return a * b;
    case KOp::Adjoint: return k_adjoint(a);
    case KOp::Scale: return a * z;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown compact op");
}

CompactMatrix k_dK(const CompactMatrix& c) {
  CompactMatrix out;
  for (const auto& [ix, z] : c.entries())
    out.add(ix.first, ix.second, z * Scalar(static_cast<long long>(ix.first - ix.second)));
  return out;
}

CompactMatrix k_dK_power(const CompactMatrix& c, unsigned j) {
  CompactMatrix out = c;
  for (unsigned i = 0; i < j; ++i) out = k_dK(out);
  return out;
}

namespace {

std::uint64_t binomial(unsigned n, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

double k_mn_norm(const CompactMatrix& c, unsigned M, unsigned N) {
  if (c.is_zero()) return 0.0;
  const auto rows = c.row_extent(), cols = c.col_extent();
  double total = 0.0;
  for (unsigned j = 0; j <= M; ++j) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, cols);
    bool any = false;
    for (const auto& [ix, z] : c.entries()) {
      const auto [k, s] = ix;
      // exact integer weight before the float stage
      mpz_class w = 1;
      for (unsigned i = 0; i < j; ++i) w *= static_cast<long>(k - s);
      for (unsigned i = 0; i < N; ++i) w *= static_cast<long>(1 + s);
      if (w == 0) continue;
      any = true;
      const Scalar weighted = z * Scalar(mpq_class(w));
      m(k, s) = weighted.to_complex();
    }
    if (any) total += static_cast<double>(binomial(M, j)) * max_singular_value(m);
  }
  return total;
}

CompactMatrix k_rho(const CompactMatrix& c, double theta) {
  CompactMatrix out;
  for (const auto& [ix, z] : c.entries()) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(ix.first - ix.second) * theta;
    out.add(ix.first, ix.second, z * Scalar::from_complex(std::polar(1.0, angle)));
  }
  return out;
}

CompactMatrix k_diagonal(const CompactMatrix& c, std::int64_t n) {
  CompactMatrix out;
  for (const auto& [ix, z] : c.entries())
    if (ix.first - ix.second == n) out.add(ix.first, ix.second, z);
  return out;
}

double k_operator_norm(const CompactMatrix& c) { return k_mn_norm(c, 0, 0); }

}  // namespace bdtk
