#include "bdtk/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/FFT>

#include "bdtk/error.hpp"
#include "bdtk/index.hpp"

namespace bdtk {

std::vector<std::int64_t> default_invert_schedule() { return {32, 64, 128, 256}; }

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::int64_t kMinGrid = 64;
constexpr std::int64_t kMaxGrid = 4096;
using Cplx = std::complex<double>;

double band_sup_sum(const BdElement& b) {
  double s = 0.0;
  for (const auto& [n, f] : b.bands()) s += ulc_sup_norm(f);
  return s;
}

bool is_self_adjoint(const BdElement& b) {
  return band_sup_sum(b - bd_adjoint(b)) <= 1e-12 * (1.0 + band_sup_sum(b));
}

double entry_abs_sum(const CompactMatrix& c) {
  double s = 0.0;
  for (const auto& [ix, z] : c.entries()) s += z.abs();
  return s;
}

bool is_self_adjoint(const CompactMatrix& c) {
  return entry_abs_sum(c - k_adjoint(c)) <= 1e-12 * (1.0 + entry_abs_sum(c));
}

/// Fourier coefficients E_q, q in [-K/2, K/2), of theta -> F(theta) from the
/// samples F(j / K).
std::map<std::int64_t, Eigen::MatrixXcd> grid_transform(const std::vector<Eigen::MatrixXcd>& samples) {
  const auto K = static_cast<std::int64_t>(samples.size());
  const Eigen::Index l = samples.front().rows();
  std::map<std::int64_t, Eigen::MatrixXcd> out;
  for (std::int64_t q = -K / 2; q < K / 2; ++q) out[q] = Eigen::MatrixXcd::Zero(l, l);
  Eigen::FFT<double> fft;
  std::vector<Cplx> in(static_cast<std::size_t>(K)), spec;
  for (Eigen::Index i = 0; i < l; ++i)
    for (Eigen::Index j = 0; j < l; ++j) {
      for (std::int64_t t = 0; t < K; ++t) in[static_cast<std::size_t>(t)] = samples[static_cast<std::size_t>(t)](i, j);
      fft.fwd(spec, in);
      for (std::int64_t q = -K / 2; q < K / 2; ++q)
        out[q](i, j) = spec[static_cast<std::size_t>(euclid_mod(q, K))] / static_cast<double>(K);
    }
  return out;
}

/// Band table of the element with Bloch coefficients `coeffs`: entry (r', r)
/// of C_q is f_n(r) with n = q l + r' - r.
std::map<std::int64_t, std::vector<Cplx>> symbol_to_bands(std::uint64_t period,
                                                          const std::map<std::int64_t, Eigen::MatrixXcd>& coeffs) {
  const auto l = static_cast<std::int64_t>(period);
  std::map<std::int64_t, std::vector<Cplx>> bands;
  for (const auto& [q, C] : coeffs)
    for (std::int64_t rp = 0; rp < l; ++rp)
      for (std::int64_t r = 0; r < l; ++r) {
        const std::int64_t n = q * l + rp - r;
        auto& v = bands[n];
        if (v.empty()) v.assign(static_cast<std::size_t>(l), Cplx{});
        v[static_cast<std::size_t>(r)] = C(rp, r);
      }
  return bands;
}

struct BandSplit {
  BdElement kept;
  /// Bound on ||delta_L^j (table - kept)|| for j = 0..P, including the
  /// perturbation from storing float values at their minimal period.
  std::vector<double> error;
};

BandSplit split_bands(const Supernatural& S, const std::map<std::int64_t, std::vector<Cplx>>& table,
                      std::int64_t max_band, double drop, unsigned P) {
  BandSplit out{BdElement(S), std::vector<double>(P + 1, 0.0)};
  const auto weight = [](std::int64_t n, unsigned j) { return std::pow(std::abs(static_cast<double>(n)), j); };
  for (const auto& [n, v] : table) {
    double sup = 0.0;
    for (const Cplx& z : v) sup = std::max(sup, std::abs(z));
    if (sup == 0.0) continue;
    if (std::abs(n) > max_band || sup < drop) {
      for (unsigned j = 0; j <= P; ++j) out.error[j] += weight(n, j) * sup;
      continue;
    }
    std::vector<Scalar> vals;
    vals.reserve(v.size());
    for (const Cplx& z : v) vals.push_back(Scalar::from_complex(z));
    UlcFunction f(std::move(vals));
    double merge = 0.0;
    for (std::size_t r = 0; r < v.size(); ++r)
      merge = std::max(merge, std::abs(v[r] - f(static_cast<std::int64_t>(r)).to_complex()));
    for (unsigned j = 0; j <= P; ++j) out.error[j] += weight(n, j) * merge;
    out.kept.add_band(n, f);
  }
  return out;
}

std::int64_t grid_start(const SymbolMatrix& sym) {
  std::int64_t reach = 0;
  for (const auto& [q, C] : sym.coefficients) reach = std::max(reach, std::abs(q));
  std::int64_t K = kMinGrid;
  while (K < 8 * (reach + 1)) K *= 2;
  return K;
}

/// sum_{p >= p0} exp(log_c) ((p + 1) l)^j R^{-p}.
double weighted_geometric_tail(double log_c, double R, std::int64_t p0, double l, unsigned j) {
  const double logR = std::log(R);
  double sum = 0.0;
  for (std::int64_t p = p0; p < p0 + 1'000'000; ++p) {
    const double term = std::exp(log_c + j * std::log((static_cast<double>(p) + 1.0) * l) - static_cast<double>(p) * logR);
    sum += term;
    const double ratio = std::pow((p + 2.0) / (p + 1.0), j) / R;
    if (ratio < 0.99 && term <= 1e-18 * sum) return sum + term * ratio / (1.0 - ratio);
  }
  return std::numeric_limits<double>::infinity();
}

double log_sym_bound(const SymbolMatrix& sym, double rho) {
  double s = 0.0;
  for (const auto& [q, C] : sym.coefficients) s += std::pow(rho, static_cast<double>(q)) * C.norm();
  return s;
}

/// sum_{k >= k0} x^k / k!.
double exp_tail(double x, std::int64_t k0) {
  if (x == 0.0) return k0 == 0 ? 1.0 : 0.0;
  double sum = 0.0;
  for (std::int64_t k = std::max<std::int64_t>(k0, 0); k < k0 + 100000; ++k) {
    const double term = std::exp(static_cast<double>(k) * std::log(x) - std::lgamma(static_cast<double>(k) + 1.0));
    sum += term;
    if (static_cast<double>(k) > 2.0 * x && term <= 1e-18 * sum) return sum + term;
  }
  return std::numeric_limits<double>::infinity();
}

double binom(unsigned n, unsigned k) {
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Exact inverse of a single band V^n m_f: V^{-n} m_g with g(r) = 1 / f(r - n).
std::optional<CertifiedBd> invert_monomial(const BdElement& b) {
  if (b.bands().size() != 1) return std::nullopt;
  const auto& [n, f] = *b.bands().begin();
  std::vector<Scalar> g;
  for (std::uint64_t r = 0; r < f.period(); ++r) {
    const Scalar& z = f(static_cast<std::int64_t>(r) - n);
    if (z.is_zero()) throw Error(ErrorCode::NotInvertible, "single band with a vanishing coefficient");
    g.push_back(Scalar(1) / z);
  }
  const UlcFunction gf(std::move(g));
  const double bound = f.is_exact() ? 0.0 : 2.0 * kEps * ulc_sup_norm(gf);
  return CertifiedBd{BdElement::monomial(b.S(), -n, gf), bound, "exact single-band inverse"};
}

double certified_sigma_min(const BdElement& b, double scale) {
  double tol = 0.1 * scale;
  for (int it = 0; it < 40; ++it) {
    const CertifiedBracket br = bd_min_singular_bracket(b, tol);
    if (br.lower > 0) return br.lower;
    if (br.upper <= 1e-13 * scale) break;
    tol = std::max(br.upper / 8.0, 1e-15 * scale);
  }
  throw Error(ErrorCode::NotInvertible, "no certified positive lower bound for sigma_min of the symbol");
}

}  // namespace

CertifiedBd bd_invert(const BdElement& b, double tol, std::int64_t max_band) {
  if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (max_band < 0) throw Error(ErrorCode::InvalidArgument, "max_band must be nonnegative");
  if (b.is_zero()) throw Error(ErrorCode::NotInvertible, "b = 0");
  if (auto exact = invert_monomial(b)) return *exact;

  const double scale = bd_norm_bracket(b, 1e-3 * band_sup_sum(b)).upper;
  certified_sigma_min(b, scale);

  const SymbolMatrix sym = bd_symbol(b);
  const BdElement one = BdElement::identity(b.S());
  const double drop = tol / (4.0 * static_cast<double>(std::max<std::int64_t>(max_band, 1)));
  std::optional<CertifiedBd> best;
  for (std::int64_t K = grid_start(sym); K <= kMaxGrid; K *= 2) {
    std::vector<Eigen::MatrixXcd> samples;
    samples.reserve(static_cast<std::size_t>(K));
    for (std::int64_t j = 0; j < K; ++j)
      samples.push_back(sym.at(static_cast<double>(j) / static_cast<double>(K)).inverse());
    const BandSplit split = split_bands(b.S(), symbol_to_bands(sym.period, grid_transform(samples)), max_band, drop, 0);
    const BdElement& inv = split.kept;
    const double r = bd_norm_bracket(b * inv - one, std::max(1e-3 * tol, 1e-15)).upper + 1e-15 * scale;
    if (!(r < 1.0)) continue;
    const double inv_norm = bd_norm_bracket(inv, 1e-6 * band_sup_sum(inv)).upper;
    const double bound = inv_norm * r / (1.0 - r);
    const bool improved = !best || bound < 0.5 * best->residual_bound;
    if (!best || bound < best->residual_bound)
      best = CertifiedBd{inv, bound, "symbol inversion on " + std::to_string(K) + " roots of unity"};
    if (bound <= tol) return *best;
    // Once the grid resolves every kept band, doubling only reduces aliasing.
    if (!improved && K * static_cast<std::int64_t>(sym.period) > 4 * max_band) break;
  }
  if (!best) throw Error(ErrorCode::ToleranceUnreachable, "||b b~ - 1|| >= 1 at max_band");
  return *best;
}

CertifiedBdt bdt_invert(const BdtElement& a, double tol, const std::vector<std::int64_t>& sizes) {
  if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (sizes.empty() || !std::is_sorted(sizes.begin(), sizes.end()))
    throw Error(ErrorCode::InvalidArgument, "sizes must be a nonempty increasing schedule");
  const BdElement& b = a.symbol;
  if (b.is_zero()) throw Error(ErrorCode::NotInvertible, "tau(a) = 0");
  if (winding(b) != 0) throw Error(ErrorCode::NotInvertible, "tau(a) has nonzero winding, so a has nonzero index");

  const CertifiedBd inv = bd_invert(b, tol / 4.0);
  const BdElement& bt = inv.value;
  const double scale = bd_norm_bracket(b, 1e-3 * band_sup_sum(b)).upper;
  const double sym_r = bd_norm_bracket(b * bt - BdElement::identity(b.S()), std::max(1e-3 * tol, 1e-15)).upper;
  const double bt_norm = bd_norm_bracket(bt, 1e-6 * (1.0 + band_sup_sum(bt))).upper;

  const CompactMatrix rhs = -(correction(b, bt) + compact_times_toeplitz(a.compact, bt));
  if (rhs.is_zero()) {
    if (sym_r >= 1.0) throw Error(ErrorCode::ToleranceUnreachable, "symbol residual >= 1");
    return CertifiedBdt{toeplitz(bt), bt_norm * sym_r / (1.0 - sym_r),
                        "T(b~), no compact correction"};
  }
  const std::int64_t m = rhs.col_extent();
  const std::int64_t reach = std::max(rhs.row_extent(), a.compact.extent());
  std::optional<CertifiedBdt> best;
  for (std::int64_t N : sizes) {
    if (N < std::max(m, reach)) continue;
    const Eigen::MatrixXcd AN = bdt_truncate_banded(a, N, N).to_dense();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(AN);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 1e-12 * sv(0)) throw Error(ErrorCode::NotInvertible, "truncation is numerically singular");
    const Eigen::MatrixXcd R = rhs.to_dense(N, m).to_eigen();
    const Eigen::MatrixXcd X = AN.partialPivLu().solve(R);
    CompactMatrix ct;
    for (Eigen::Index i = 0; i < X.rows(); ++i)
      for (Eigen::Index j = 0; j < X.cols(); ++j)
        if (X(i, j) != Cplx{}) ct.set(i, j, Scalar::from_complex(X(i, j)));
    const CompactMatrix F = toeplitz_times_compact(b, ct) + a.compact * ct - rhs;
    const double f_norm = F.is_zero() ? 0.0 : max_singular_value(F.to_dense(F.row_extent(), F.col_extent()).to_eigen());
    const double r = sym_r + f_norm + 64.0 * kEps * scale * static_cast<double>(N);
    if (r >= 1.0) continue;
    const double x_norm = bt_norm + (ct.is_zero() ? 0.0 : max_singular_value(X));
    const double bound = x_norm * r / (1.0 - r);
    if (!best || bound < best->residual_bound)
      best = CertifiedBdt{BdtElement(bt, ct), bound, "truncated solve at N = " + std::to_string(N)};
    if (bound <= tol) return *best;
  }
  if (!best) throw Error(ErrorCode::ToleranceUnreachable, "||a x - 1|| >= 1 at every truncation size");
  std::ostringstream msg;
  msg << "best certified bound " << best->residual_bound << " exceeds tol " << tol;
  throw Error(ErrorCode::ToleranceUnreachable, msg.str());
}

GradedExp bd_exp_graded(const BdElement& b, double tol, std::int64_t max_band, unsigned P) {
  if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (!is_self_adjoint(b)) throw Error(ErrorCode::InvalidArgument, "bd_exp needs b = b^*");
  const Supernatural& S = b.S();
  if (b.is_zero()) return {BdElement::identity(S), std::vector<double>(P + 1, 0.0), "exact"};

  if (b.bands().size() == 1 && b.bands().begin()->first == 0) {
    const UlcFunction& f = b.bands().begin()->second;
    std::vector<Scalar> vals;
    for (const Scalar& z : f.values()) vals.push_back(Scalar::from_complex(std::exp(Cplx(0.0, z.to_complex().real()))));
    std::vector<double> err(P + 1, 0.0);
    err[0] = 4.0 * kEps;
    return {BdElement::multiplication(S, UlcFunction(std::move(vals))), err, "diagonal"};
  }

  const SymbolMatrix sym = bd_symbol(b);
  const auto l = static_cast<double>(sym.period);
  const double drop = tol / (4.0 * static_cast<double>(std::max<std::int64_t>(max_band, 1)));
  const double beta1 = log_sym_bound(sym, 1.0);
  double last_err = std::numeric_limits<double>::infinity();
  for (std::int64_t K = grid_start(sym); K <= kMaxGrid; K *= 2) {
    std::vector<Eigen::MatrixXcd> samples;
    samples.reserve(static_cast<std::size_t>(K));
    for (std::int64_t j = 0; j < K; ++j) {
      const Eigen::MatrixXcd B = sym.at(static_cast<double>(j) / static_cast<double>(K));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (B + B.adjoint()));
      const Eigen::VectorXcd phase = (Cplx(0.0, 1.0) * es.eigenvalues().cast<Cplx>()).array().exp();
      samples.push_back(es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint());
    }
    BandSplit split = split_bands(S, symbol_to_bands(sym.period, grid_transform(samples)), max_band, drop, P);

    std::vector<double> err = split.error;
    for (unsigned j = 0; j <= P; ++j) {
      // Aliasing into the computed range plus the uncomputed range itself.
      double cauchy = std::numeric_limits<double>::infinity();
      for (double R : {1.05, 1.1, 1.2, 1.35, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0, 32.0, 64.0}) {
        const double t = weighted_geometric_tail(log_sym_bound(sym, R), R, K / 2, l, j) +
                         weighted_geometric_tail(log_sym_bound(sym, 1.0 / R), R, K / 2 + 1, l, j);
        cauchy = std::min(cauchy, 2.0 * t);
      }
      // Sample errors of size delta give transform errors with sum of squares
      // at most delta^2 (Parseval), hence weighted sum <= delta sqrt(sum w^2).
      double w2 = 0.0;
      for (std::int64_t q = -K / 2; q < K / 2; ++q)
        w2 += std::pow((std::abs(static_cast<double>(q)) + 1.0) * l, 2.0 * j);
      const double rounding = 16.0 * l * kEps * (1.0 + beta1) * std::sqrt(w2);
      err[j] += cauchy + rounding;
    }
    if (err[0] <= tol)
      return {std::move(split.kept), err, "symbol exponential on " + std::to_string(K) + " roots of unity"};
    if (err[0] >= last_err && K * static_cast<std::int64_t>(l) > 4 * max_band) break;
    last_err = err[0];
  }
  throw Error(ErrorCode::ToleranceUnreachable, "bd_exp certificate did not reach tol (raise max_band?)");
}

CertifiedBd bd_exp(const BdElement& b, double tol, std::int64_t max_band) {
  GradedExp g = bd_exp_graded(b, tol, max_band, 0);
  return {std::move(g.value), g.delta_errors[0], g.method};
}

BdtElement k_exp(const Supernatural& S, const CompactMatrix& c) {
  if (!is_self_adjoint(c)) throw Error(ErrorCode::InvalidArgument, "k_exp needs c = c^*");
  if (c.is_zero()) return BdtElement(BdElement::identity(S));
  const std::int64_t n = c.extent();
  Eigen::MatrixXcd C = c.to_dense(n, n).to_eigen();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (C + C.adjoint()));
  const Eigen::VectorXcd phase = (Cplx(0.0, 1.0) * es.eigenvalues().cast<Cplx>()).array().exp();
  const Eigen::MatrixXcd E =
      es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint() - Eigen::MatrixXcd::Identity(n, n);
  CompactMatrix out;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (E(i, j) != Cplx{}) out.set(i, j, Scalar::from_complex(E(i, j)));
  return BdtElement(BdElement::identity(S), std::move(out));
}

CertifiedBdt bdt_exp(const BdtElement& a, double t, double tol, std::int64_t max_band) {
  if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  const BdElement& b = a.symbol;
  const CompactMatrix& c = a.compact;
  if (!is_self_adjoint(b) || !is_self_adjoint(c)) throw Error(ErrorCode::InvalidArgument, "bdt_exp needs a = a^*");
  const Supernatural& S = b.S();
  if (t == 0.0 || a.is_zero()) return {BdtElement(BdElement::identity(S)), 0.0, "exact"};
  if (b.is_zero()) return {k_exp(S, c * Scalar::from_double(t)), 64.0 * kEps * (1.0 + std::abs(t) * entry_abs_sum(c)), "block exponential"};

  const double part = tol / 6.0;
  const double a_norm = bd_norm_bracket(b, 1e-6 * band_sup_sum(b)).upper + (c.is_zero() ? 0.0 : k_operator_norm(c));
  const double x = std::abs(t) * a_norm;
  const std::int64_t w = std::max<std::int64_t>(b.bandwidth(), 1);
  const std::int64_t j0 = std::max(c.col_extent(), w);

  std::int64_t kM = 0;
  while (2.0 * exp_tail(x, kM + 1) > part) ++kM;
  std::int64_t k0 = 0;
  while (x * exp_tail(x, k0) > part) ++k0;
  const std::int64_t M = j0 + w * kM;

  const CertifiedBd u = bd_exp(b * Scalar::from_double(t), part, max_band);
  const std::int64_t u_reach = u.value.is_zero() ? 0 : std::max(u.value.max_band(), -u.value.min_band());
  const std::int64_t N = std::max({M + w * (k0 + 1), M + u_reach, c.extent()});

  const Eigen::MatrixXcd A = bdt_truncate_banded(a, N, N).to_dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (A + A.adjoint()));
  const Eigen::VectorXcd phase = (Cplx(0.0, t) * es.eigenvalues().cast<Cplx>()).array().exp();
  const Eigen::MatrixXcd Y = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().leftCols(M).adjoint();
  const Eigen::MatrixXcd Tu = bdt_truncate_banded(toeplitz(u.value), N, M).to_dense();
  const Eigen::MatrixXcd Kd = Y - Tu;

  const double drop = part / (4.0 * static_cast<double>(std::max(N, M)));
  double dropped = 0.0;
  CompactMatrix k;
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = 0; j < M; ++j) {
      const Cplx z = Kd(i, j);
      if (std::abs(z) < drop) {
        dropped += std::norm(z);
      } else {
        k.set(i, j, Scalar::from_complex(z));
      }
    }
  const double bound = 2.0 * u.residual_bound + x * exp_tail(x, k0) + 2.0 * exp_tail(x, kM + 1) + std::sqrt(dropped) +
                       64.0 * kEps * static_cast<double>(N) * (1.0 + x);
  return {BdtElement(u.value, std::move(k)), bound,
          "Duhamel split, N = " + std::to_string(N) + ", M = " + std::to_string(M)};
}

CertifiedBdt smooth_calc(const BdtElement& a, const std::map<std::int64_t, std::complex<double>>& coeffs, double L,
                         double tol, double tail_bound) {
  if (!(L > 0) || !(tol > 0) || tail_bound < 0) throw Error(ErrorCode::InvalidArgument, "need L > 0, tol > 0, tail >= 0");
  double weight = 0.0;
  for (const auto& [n, f] : coeffs)
    if (n != 0) weight += std::abs(f);
  CertifiedBdt out{BdtElement(BdElement(a.S())), tail_bound, "Fourier series of exponentials"};
  for (const auto& [n, f] : coeffs) {
    if (f == Cplx{}) continue;
    const Scalar fz = Scalar::from_complex(f);
    if (n == 0) {
      out.value += BdtElement(BdElement::identity(a.S())) * fz;
      continue;
    }
    const CertifiedBdt e = bdt_exp(a, 2.0 * std::numbers::pi * static_cast<double>(n) / L, tol / weight);
    out.value += e.value * fz;
    out.residual_bound += std::abs(f) * e.residual_bound;
  }
  return out;
}

ExpBoundCheck check_exp_bound_b(const BdElement& b, unsigned M, double tol) {
  if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  ExpBoundCheck out;
  const GradedExp e = bd_exp_graded(b, std::min(tol, 1e-9), 1024, M);
  const NormEstimate lhs = bd_p_norm(e.value, M, tol);
  double err = lhs.error_bound;
  for (unsigned j = 0; j <= M; ++j) err += binom(M, j) * e.delta_errors[j];
  out.lhs_estimate = lhs.value;
  out.certificate = err;
  out.lhs_lower = lhs.value - err;
  out.rhs = 1.0;
  for (unsigned j = 1; j <= M; ++j) {
    const NormEstimate bj = bd_p_norm(b, j, tol);
    out.rhs *= std::pow(1.0 + bj.value + bj.error_bound, std::pow(2.0, M - j));
  }
  out.pass = out.lhs_lower <= out.rhs + tol;
  return out;
}

ExpBoundCheck check_exp_bound_c(const CompactMatrix& c, unsigned M) {
  ExpBoundCheck out;
  const BdtElement e = k_exp(Supernatural(), c);
  const CompactMatrix& X = e.compact;
  double lhs = 1.0;
  if (!X.is_zero()) {
    const std::int64_t n = X.extent();
    const Eigen::MatrixXcd U = X.to_dense(n, n).to_eigen() + Eigen::MatrixXcd::Identity(n, n);
    lhs = std::max(1.0, max_singular_value(U)) + k_mn_norm(X, M, 0) - k_mn_norm(X, 0, 0);
  }
  out.lhs_lower = out.lhs_estimate = lhs;
  out.rhs = 1.0;
  for (unsigned j = 1; j <= M; ++j) out.rhs *= std::pow(1.0 + k_mn_norm(c, j, 0), std::pow(2.0, M - j));
  out.certificate = 1e-12 * (lhs + out.rhs);
  out.pass = out.lhs_lower <= out.rhs + out.certificate;
  return out;
}

}  // namespace bdtk
