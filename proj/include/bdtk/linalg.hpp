#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "bdtk/scalar.hpp"

namespace bdtk {

/// Dense row-major matrix of exact-or-float scalars.  Used for truncations and
/// exact oracles, not for heavy numerics.
class ScalarMatrix {
 public:
  ScalarMatrix() = default;
  ScalarMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  ScalarMatrix block(std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) const;
  Eigen::MatrixXcd to_eigen() const;

  friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b);
  friend ScalarMatrix operator-(const ScalarMatrix& a, const ScalarMatrix& b);
  friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

/// General band matrix in LAPACK band storage (column-major, ldab = kl + ku + 1).
class BandMatrix {
 public:
  BandMatrix(std::size_t rows, std::size_t cols, std::size_t kl, std::size_t ku);

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::size_t lower() const { return kl_; }
  std::size_t upper() const { return ku_; }

  /// Entries outside the band are rejected.
  void set(std::size_t i, std::size_t j, std::complex<double> v);
  std::complex<double> get(std::size_t i, std::size_t j) const;
  bool in_band(std::size_t i, std::size_t j) const {
    return i + ku_ >= j && j + kl_ >= i;
  }

  std::vector<double> singular_values() const;
  double max_singular_value() const;

  Eigen::MatrixXcd to_dense() const;

 private:
  std::size_t m_, n_, kl_, ku_;
  std::vector<std::complex<double>> ab_;
};

double max_singular_value(const Eigen::MatrixXcd& a);
double min_singular_value(const Eigen::MatrixXcd& a);

/// Hermitian-matrix-valued trigonometric polynomial
///   H(theta) = sum_k exp(2 pi i k theta) D_k,   D_{-k} = D_k^*.
struct HermitianTrigPoly {
  std::map<std::int64_t, Eigen::MatrixXcd> coefficients;

  Eigen::MatrixXcd at(double theta) const;
  Eigen::MatrixXcd derivative_at(double theta) const;
  Eigen::MatrixXcd second_derivative_at(double theta) const;
  /// Upper bound for sup_theta ||H^{(order)}(theta)||.
  double derivative_bound(int order) const;
  Eigen::Index dim() const;
};

/// Two-sided bracket for an extremum, with the number of symbol evaluations.
struct CertifiedBracket {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t evaluations = 0;

  double midpoint() const { return 0.5 * (lower + upper); }
  double width() const { return upper - lower; }
};

/// Certified bracket for max_theta lambda_max(H(theta)) (or min_theta
/// lambda_min when `maximize` is false).  With `sqrt_scale` the bracket is
/// reported for sqrt(max(lambda, 0)), i.e. singular values when H = B^* B,
/// and `tol` applies on that scale.  A `tol` below the rounding floor of the
/// eigenvalue evaluations is not reachable; the search then stops at the
/// floor and width() reports what was achieved.
///
/// Branch and bound over theta in [0, 1).  On an interval of half-width h the
/// bound uses the convexity of t -> lambda_max(H0 + t H1) together with the
/// smaller of the remainders sup ||H''|| h^2 / 2 and
/// max(lambda_max(H''(c)), 0) h^2 / 2 + sup ||H'''|| h^3 / 6.
CertifiedBracket certified_eigen_extremum(const HermitianTrigPoly& h, double tol, bool maximize,
                                          bool sqrt_scale = false);

}  // namespace bdtk
