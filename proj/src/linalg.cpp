#include "bdtk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include <lapacke.h>

#include "bdtk/error.hpp"

namespace bdtk {

ScalarMatrix ScalarMatrix::block(std::size_t row0, std::size_t col0, std::size_t rows,
                                 std::size_t cols) const {
  if (row0 + rows > rows_ || col0 + cols > cols_)
    throw Error(ErrorCode::InvalidArgument, "block out of range");
  ScalarMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = (*this)(row0 + i, col0 + j);
  return out;
}

Eigen::MatrixXcd ScalarMatrix::to_eigen() const {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).to_complex();
  return m;
}

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
  ScalarMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& bkj = b(k, j);
        if (!bkj.is_zero()) out(i, j) += aik * bkj;
      }
    }
  return out;
}

ScalarMatrix operator-(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
  ScalarMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

BandMatrix::BandMatrix(std::size_t rows, std::size_t cols, std::size_t kl, std::size_t ku)
    : m_(rows), n_(cols), kl_(kl), ku_(ku), ab_((kl + ku + 1) * cols) {}

void BandMatrix::set(std::size_t i, std::size_t j, std::complex<double> v) {
  if (i >= m_ || j >= n_ || !in_band(i, j))
    throw Error(ErrorCode::InvalidArgument, "band matrix entry outside band");
  ab_[(ku_ + i - j) + j * (kl_ + ku_ + 1)] = v;
}

std::complex<double> BandMatrix::get(std::size_t i, std::size_t j) const {
  if (i >= m_ || j >= n_ || !in_band(i, j)) return {};
  return ab_[(ku_ + i - j) + j * (kl_ + ku_ + 1)];
}

Eigen::MatrixXcd BandMatrix::to_dense() const {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(n_));
  for (std::size_t j = 0; j < n_; ++j) {
    const std::size_t lo = j > ku_ ? j - ku_ : 0;
    const std::size_t hi = std::min(m_, j + kl_ + 1);
    for (std::size_t i = lo; i < hi; ++i)
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = get(i, j);
  }
  return d;
}

std::vector<double> BandMatrix::singular_values() const {
  const auto m = static_cast<lapack_int>(m_);
  const auto n = static_cast<lapack_int>(n_);
  const auto k = std::min(m, n);
  if (k == 0) return {};
  std::vector<std::complex<double>> ab = ab_;
  std::vector<double> d(static_cast<std::size_t>(k)), e(static_cast<std::size_t>(std::max(k - 1, 1)));
  lapack_complex_double dummy{};
  auto info = LAPACKE_zgbbrd(LAPACK_COL_MAJOR, 'N', m, n, 0, static_cast<lapack_int>(kl_),
                             static_cast<lapack_int>(ku_),
                             reinterpret_cast<lapack_complex_double*>(ab.data()),
                             static_cast<lapack_int>(kl_ + ku_ + 1), d.data(), e.data(), &dummy, 1,
                             &dummy, 1, &dummy, 1);
  if (info != 0) throw Error(ErrorCode::InvalidArgument, "zgbbrd failed");
  double ddummy = 0.0;
  info = LAPACKE_dbdsqr(LAPACK_COL_MAJOR, m >= n ? 'U' : 'L', k, 0, 0, 0, d.data(), e.data(),
                        &ddummy, 1, &ddummy, 1, &ddummy, 1);
  if (info != 0) throw Error(ErrorCode::InvalidArgument, "dbdsqr failed to converge");
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

double BandMatrix::max_singular_value() const {
  auto s = singular_values();
  return s.empty() ? 0.0 : s.front();
}

double max_singular_value(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

double min_singular_value(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

Eigen::MatrixXcd HermitianTrigPoly::at(double theta) const {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim(), dim());
  for (const auto& [k, d] : coefficients)
    h += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) * theta) * d;
  return 0.5 * (h + h.adjoint());
}

Eigen::MatrixXcd HermitianTrigPoly::derivative_at(double theta) const {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim(), dim());
  for (const auto& [k, d] : coefficients) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(k);
    h += std::complex<double>(0.0, w) * std::polar(1.0, w * theta) * d;
  }
  return 0.5 * (h + h.adjoint());
}

Eigen::MatrixXcd HermitianTrigPoly::second_derivative_at(double theta) const {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim(), dim());
  for (const auto& [k, d] : coefficients) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(k);
    h -= (w * w) * std::polar(1.0, w * theta) * d;
  }
  return 0.5 * (h + h.adjoint());
}

double HermitianTrigPoly::derivative_bound(int order) const {
  double b = 0.0;
  for (const auto& [k, d] : coefficients)
    b += std::pow(2.0 * std::numbers::pi * std::abs(static_cast<double>(k)), order) * d.norm();
  return b;
}

Eigen::Index HermitianTrigPoly::dim() const {
  return coefficients.empty() ? 0 : coefficients.begin()->second.rows();
}

namespace {

double lambda_max(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

struct Interval {
  double center;
  double half_width;
  double bound;
  bool operator<(const Interval& o) const { return bound < o.bound; }
};

}  // namespace

namespace {

CertifiedBracket extremum_of_block(const HermitianTrigPoly& poly, double tol, bool maximize,
                                   bool sqrt_scale) {
  CertifiedBracket out;
  if (poly.dim() == 0) return out;

  // Work on g = s * H and maximize lambda_max(g); s = -1 turns a minimum of
  // lambda_min(H) into a maximum.
  HermitianTrigPoly g = poly;
  if (!maximize)
    for (auto& [k, d] : g.coefficients) d = -d;

  const double m2 = g.derivative_bound(2), m3 = g.derivative_bound(3);
  double scale = 0.0;
  for (const auto& [k, d] : g.coefficients) scale += d.norm();
  const double slack = 64.0 * std::numeric_limits<double>::epsilon() * scale + 1e-300;

  double best = -std::numeric_limits<double>::infinity();
  std::priority_queue<Interval> queue;
  auto evaluate = [&](double c, double h) {
    const Eigen::MatrixXcd h0 = g.at(c);
    const Eigen::MatrixXcd h1 = g.derivative_at(c);
    best = std::max(best, lambda_max(h0));
    const double curvature = std::min(m2, std::max(lambda_max(g.second_derivative_at(c)), 0.0) + m3 * h / 3.0);
    const double up = std::max(lambda_max(h0 - h * h1), lambda_max(h0 + h * h1)) + 0.5 * curvature * h * h + slack;
    ++out.evaluations;
    queue.push({c, h, up});
  };

  constexpr int kInitialGrid = 16;
  for (int i = 0; i < kInitialGrid; ++i) evaluate((i + 0.5) / kInitialGrid, 0.5 / kInitialGrid);

  auto transform = [&](double v) {
    if (!sqrt_scale) return v;
    return std::sqrt(std::max(maximize ? v : -v, 0.0));
  };
  auto gap = [&](double top) { return std::abs(transform(top) - transform(best)); };

  constexpr std::size_t kMaxEvaluations = 4'000'000;
  while (true) {
    const Interval top = queue.top();
    // below 4 * slack the bound is limited by rounding, not by resolution
    if (gap(top.bound) <= tol || top.bound - best <= 4.0 * slack || top.half_width < 1e-14 ||
        out.evaluations > kMaxEvaluations)
      break;
    queue.pop();
    const double h = 0.5 * top.half_width;
    evaluate(top.center - h, h);
    evaluate(top.center + h, h);
  }
  const double top = std::max(queue.top().bound, best);
  if (maximize) {
    out.lower = transform(best);
    out.upper = transform(top);
  } else {
    out.lower = sqrt_scale ? transform(top) : -top;
    out.upper = sqrt_scale ? transform(best) : -best;
  }
  return out;
}

// Connected components of the joint sparsity pattern of the coefficients.
// H(theta) is block diagonal along them, and a block whose eigenvalues do not
// move with theta would otherwise force the search to resolve a flat maximum.
std::vector<std::vector<Eigen::Index>> pattern_components(const HermitianTrigPoly& poly) {
  const Eigen::Index n = poly.dim();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](Eigen::Index i) {
    while (parent[static_cast<std::size_t>(i)] != i)
      i = parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
    return i;
  };
  for (const auto& [k, d] : poly.coefficients)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (d(i, j) != std::complex<double>(0.0, 0.0)) parent[static_cast<std::size_t>(find(i))] = find(j);
  std::map<Eigen::Index, std::vector<Eigen::Index>> groups;
  for (Eigen::Index i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<Eigen::Index>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

}  // namespace

CertifiedBracket certified_eigen_extremum(const HermitianTrigPoly& poly, double tol, bool maximize,
                                          bool sqrt_scale) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (poly.dim() == 0) return {};
  const auto components = pattern_components(poly);
  if (components.size() == 1) return extremum_of_block(poly, tol, maximize, sqrt_scale);

  CertifiedBracket out;
  bool first = true;
  for (const auto& idx : components) {
    HermitianTrigPoly block;
    const auto m = static_cast<Eigen::Index>(idx.size());
    for (const auto& [k, d] : poly.coefficients) {
      Eigen::MatrixXcd sub(m, m);
      for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
          sub(i, j) = d(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
      if (k == 0 || sub.norm() > 0.0) block.coefficients.emplace(k, std::move(sub));
    }
    const auto br = extremum_of_block(block, tol, maximize, sqrt_scale);
    out.evaluations += br.evaluations;
    if (first) {
      out.lower = br.lower;
      out.upper = br.upper;
      first = false;
    } else if (maximize) {
      out.lower = std::max(out.lower, br.lower);
      out.upper = std::max(out.upper, br.upper);
    } else {
      out.lower = std::min(out.lower, br.lower);
      out.upper = std::min(out.upper, br.upper);
    }
  }
  return out;
}

}  // namespace bdtk
