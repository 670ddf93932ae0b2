#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "bdtk/linalg.hpp"
#include "bdtk/scalar.hpp"

namespace bdtk {

/// Finite-support matrix c = sum c_{ks} P_{ks} on the basis E_0, E_1, ... of
/// the half-line.  Zero entries are never stored.
class CompactMatrix {
 public:
  using Index = std::pair<std::int64_t, std::int64_t>;

  CompactMatrix() = default;

  /// Throws InvalidArgument on a negative index.
  void add(std::int64_t k, std::int64_t s, const Scalar& z);
  void set(std::int64_t k, std::int64_t s, const Scalar& z);
  Scalar get(std::int64_t k, std::int64_t s) const;

  const std::map<Index, Scalar>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  bool is_exact() const;
  /// One past the largest row / column index in the support (0 if empty).
  std::int64_t row_extent() const;
  std::int64_t col_extent() const;
  std::int64_t extent() const { return std::max(row_extent(), col_extent()); }

  CompactMatrix& operator+=(const CompactMatrix& o);
  CompactMatrix& operator-=(const CompactMatrix& o);
  CompactMatrix& operator*=(const Scalar& z);
  friend CompactMatrix operator+(CompactMatrix a, const CompactMatrix& b) { return a += b; }
  friend CompactMatrix operator-(CompactMatrix a, const CompactMatrix& b) { return a -= b; }
  friend CompactMatrix operator*(CompactMatrix a, const Scalar& z) { return a *= z; }
  friend CompactMatrix operator*(const Scalar& z, CompactMatrix a) { return a *= z; }
  friend CompactMatrix operator*(const CompactMatrix& a, const CompactMatrix& b);
  CompactMatrix operator-() const;

  friend bool operator==(const CompactMatrix& a, const CompactMatrix& b);
  friend bool operator!=(const CompactMatrix& a, const CompactMatrix& b) { return !(a == b); }

  /// Dense [0, rows) x [0, cols) block.
  ScalarMatrix to_dense(std::int64_t rows, std::int64_t cols) const;
  static CompactMatrix from_dense(const ScalarMatrix& m);

 private:
  std::map<Index, Scalar> entries_;
};

/// Matrix unit P_{ks}.
CompactMatrix k_units(std::int64_t k, std::int64_t s);

enum class KOp { Add, Mul, Adjoint, Scale };
/// Adjoint ignores b; Scale uses z.
CompactMatrix k_algebra(KOp op, const CompactMatrix& a, const CompactMatrix& b = {},
                        const Scalar& z = Scalar(1));
CompactMatrix k_adjoint(const CompactMatrix& c);

/// [K, c]: entry (k, s) times (k - s).
CompactMatrix k_dK(const CompactMatrix& c);
CompactMatrix k_dK_power(const CompactMatrix& c, unsigned j);
/// ||c||_{M,N} = sum_j binom(M, j) ||d_K^j(c) (I + K)^N||.
double k_mn_norm(const CompactMatrix& c, unsigned M, unsigned N);
/// Entry (k, s) times exp(2 pi i (k - s) theta); float-tagged.
CompactMatrix k_rho(const CompactMatrix& c, double theta);
/// Entries with k - s = n.
CompactMatrix k_diagonal(const CompactMatrix& c, std::int64_t n);

/// Largest singular value of the bounding block.
double k_operator_norm(const CompactMatrix& c);

}  // namespace bdtk
