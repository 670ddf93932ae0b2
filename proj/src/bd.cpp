#include "bdtk/bd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bdtk/error.hpp"

namespace bdtk {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

BdElement::BdElement(Supernatural S, std::map<std::int64_t, UlcFunction> bands) : S_(std::move(S)) {
  for (auto& [n, f] : bands) add_band(n, f);
}

BdElement BdElement::identity(const Supernatural& S) { return scalar(S, Scalar(1)); }

BdElement BdElement::scalar(const Supernatural& S, const Scalar& z) {
  return monomial(S, 0, UlcFunction::constant(z));
}

BdElement BdElement::monomial(const Supernatural& S, std::int64_t n, const UlcFunction& f) {
  BdElement b(S);
  b.add_band(n, f);
  return b;
}

UlcFunction BdElement::band(std::int64_t n) const {
  auto it = bands_.find(n);
  return it == bands_.end() ? UlcFunction{} : it->second;
}

std::uint64_t BdElement::period() const {
  std::uint64_t l = 1;
  for (const auto& [n, f] : bands_) l = lcm_checked(l, f.period());
  return l;
}

std::int64_t BdElement::bandwidth() const {
  if (bands_.empty()) return 0;
  return std::max(std::abs(bands_.begin()->first), std::abs(bands_.rbegin()->first));
}

std::int64_t BdElement::min_band() const { return bands_.empty() ? 0 : bands_.begin()->first; }
std::int64_t BdElement::max_band() const { return bands_.empty() ? 0 : bands_.rbegin()->first; }

bool BdElement::is_exact() const {
  return std::all_of(bands_.begin(), bands_.end(), [](const auto& kv) { return kv.second.is_exact(); });
}

void BdElement::add_band(std::int64_t n, const UlcFunction& f) {
  if (!S_.divides(f.period()))
    throw Error(ErrorCode::PeriodMismatch,
                "band period " + std::to_string(f.period()) + " does not divide S = " + S_.to_string());
  auto it = bands_.find(n);
  if (it == bands_.end()) {
    if (!f.is_zero()) bands_.emplace(n, f);
    return;
  }
  it->second += f;
  if (it->second.is_zero()) bands_.erase(it);
}

void BdElement::check_same_S(const BdElement& o) const {
  if (!(S_ == o.S_))
    throw Error(ErrorCode::InvalidArgument,
                "elements over different S (" + S_.to_string() + " vs " + o.S_.to_string() + ")");
}

BdElement& BdElement::operator+=(const BdElement& o) {
  check_same_S(o);
  for (const auto& [n, f] : o.bands_) add_band(n, f);
  return *this;
}

BdElement& BdElement::operator-=(const BdElement& o) {
  check_same_S(o);
  for (const auto& [n, f] : o.bands_) add_band(n, -f);
  return *this;
}

BdElement& BdElement::operator*=(const Scalar& z) {
  for (auto it = bands_.begin(); it != bands_.end();) {
    it->second *= z;
    it = it->second.is_zero() ? bands_.erase(it) : std::next(it);
  }
  return *this;
}

BdElement BdElement::operator-() const {
  BdElement out = *this;
  for (auto& [n, f] : out.bands_) f = -f;
  return out;
}

bool operator==(const BdElement& a, const BdElement& b) {
  if (!(a.S_ == b.S_) || a.bands_.size() != b.bands_.size()) return false;
  for (auto ia = a.bands_.begin(), ib = b.bands_.begin(); ia != a.bands_.end(); ++ia, ++ib)
    if (ia->first != ib->first || ia->second != ib->second) return false;
  return true;
}

BdElement bd_mul(const BdElement& a, const BdElement& b) {
  if (!(a.S() == b.S())) throw Error(ErrorCode::InvalidArgument, "bd_mul over different S");
  BdElement out(a.S());
  for (const auto& [n, f] : a.bands())
    for (const auto& [m, g] : b.bands()) out.add_band(n + m, ulc_shift(f, m) * g);
  return out;
}

BdElement bd_adjoint(const BdElement& b) {
  BdElement out(b.S());
  for (const auto& [n, f] : b.bands()) out.add_band(-n, ulc_shift(ulc_conj(f), -n));
  return out;
}

BdElement bd_delta_L(const BdElement& b) {
  BdElement out(b.S());
  for (const auto& [n, f] : b.bands()) out.add_band(n, f * Scalar(static_cast<long long>(n)));
  return out;
}

BdElement bd_delta_L_power(const BdElement& b, unsigned j) {
  BdElement out = b;
  for (unsigned i = 0; i < j; ++i) out = bd_delta_L(out);
  return out;
}

UlcFunction bd_fourier(const BdElement& b, std::int64_t n) { return b.band(n); }

BdElement bd_rho(const BdElement& b, double theta) {
  BdElement out(b.S());
  for (const auto& [n, f] : b.bands()) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(n) * theta;
    out.add_band(n, f * Scalar::from_complex(std::polar(1.0, angle)));
  }
  return out;
}

CyclotomicSum<BdElement> bd_rho_exact(const BdElement& b, std::int64_t p, std::uint64_t q) {
  CyclotomicSum<BdElement> out(q);
  for (const auto& [n, f] : b.bands()) out.add(n * p, BdElement::monomial(b.S(), n, f));
  return out;
}

UlcFunction bd_fourier_quadrature(const BdElement& b, std::int64_t n) {
  const auto reach = std::max(b.bandwidth(), std::abs(n));
  const auto Q = odd_prime_at_least(static_cast<std::uint64_t>(2 * reach + 1));
  const BdElement v_minus_n = BdElement::shift(b.S(), -n);
  CyclotomicSum<BdElement> avg(Q);
  for (std::uint64_t j = 0; j < Q; ++j) {
    const auto J = static_cast<std::int64_t>(j);
    avg += bd_rho_exact(b, J, Q)
               .map([&](const BdElement& t) { return bd_mul(v_minus_n, t); })
               .rotated(-n * J);
  }
  const BdElement mean = avg.collapse(BdElement(b.S())) * Scalar::rational(1, static_cast<long long>(Q));
  return mean.band(0);
}

Eigen::MatrixXcd SymbolMatrix::at(double theta) const {
  const auto l = static_cast<Eigen::Index>(period);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(l, l);
  for (const auto& [q, c] : coefficients)
    m += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(q) * theta) * c;
  return m;
}

namespace {

HermitianTrigPoly product_poly(const std::map<std::int64_t, Eigen::MatrixXcd>& left_adj,
                               const std::map<std::int64_t, Eigen::MatrixXcd>& right,
                               bool adjoint_first) {
  HermitianTrigPoly h;
  for (const auto& [q, a] : left_adj)
    for (const auto& [p, c] : right) {
      // adjoint_first: C_q^* C_p at frequency p - q; otherwise C_p C_q^* at p - q.
      const Eigen::MatrixXcd term = adjoint_first ? Eigen::MatrixXcd(a.adjoint() * c)
                                                  : Eigen::MatrixXcd(c * a.adjoint());
      auto [it, inserted] = h.coefficients.try_emplace(p - q, term);
      if (!inserted) it->second += term;
    }
  return h;
}

}  // namespace

HermitianTrigPoly SymbolMatrix::gram() const { return product_poly(coefficients, coefficients, true); }
HermitianTrigPoly SymbolMatrix::cogram() const {
  return product_poly(coefficients, coefficients, false);
}

SymbolMatrix SymbolMatrix::gauge_reduced() const {
  const auto l = static_cast<Eigen::Index>(period);
  // lowest frequency present at each entry
  std::map<std::pair<Eigen::Index, Eigen::Index>, std::int64_t> edge;
  for (const auto& [q, c] : coefficients)
    for (Eigen::Index i = 0; i < l; ++i)
      for (Eigen::Index j = 0; j < l; ++j)
        if (c(i, j) != std::complex<double>(0.0, 0.0)) edge.try_emplace({i, j}, q);

  // nodes 0..l-1 are rows, l..2l-1 are columns
  const auto nodes = static_cast<std::size_t>(2 * l);
  std::vector<std::int64_t> pot(nodes, 0);
  std::vector<bool> seen(nodes, false);
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> adj(nodes);
  for (const auto& [ij, q] : edge) {
    const auto row = static_cast<std::size_t>(ij.first);
    const auto col = static_cast<std::size_t>(l + ij.second);
    adj[row].push_back({col, -q});
    adj[col].push_back({row, q});
  }
  for (std::size_t root = 0; root < nodes; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (const auto& [v, dq] : adj[u])
        if (!seen[v]) {
          seen[v] = true;
          pot[v] = pot[u] + dq;
          stack.push_back(v);
        }
    }
  }
  // entry (i, j) at frequency q moves to q - (pot_row(i) - pot_col(j))
  SymbolMatrix out;
  out.period = period;
  for (const auto& [q, c] : coefficients)
    for (Eigen::Index i = 0; i < l; ++i)
      for (Eigen::Index j = 0; j < l; ++j) {
        if (c(i, j) == std::complex<double>(0.0, 0.0)) continue;
        const std::int64_t nq =
            q - (pot[static_cast<std::size_t>(i)] - pot[static_cast<std::size_t>(l + j)]);
        auto [it, inserted] = out.coefficients.try_emplace(nq, Eigen::MatrixXcd::Zero(l, l));
        it->second(i, j) += c(i, j);
      }
  return out;
}

SymbolMatrix bd_symbol(const BdElement& b) {
  SymbolMatrix s;
  s.period = b.period();
  const auto l = static_cast<std::int64_t>(s.period);
  for (const auto& [n, f] : b.bands()) {
    for (std::int64_t r = 0; r < l; ++r) {
      const std::int64_t q = floor_div(r + n, l);
      const std::int64_t rr = euclid_mod(r + n, l);
      auto [it, inserted] = s.coefficients.try_emplace(q, Eigen::MatrixXcd::Zero(l, l));
      it->second(rr, r) += f(r).to_complex();
    }
  }
  return s;
}

CertifiedBracket bd_norm_bracket(const BdElement& b, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (b.is_zero()) return {};
  return certified_eigen_extremum(bd_symbol(b).gauge_reduced().gram(), tol, true, true);
}

double bd_norm(const BdElement& b, double tol) { return bd_norm_bracket(b, tol).midpoint(); }

CertifiedBracket bd_min_singular_bracket(const BdElement& b, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (b.is_zero()) return {};
  return certified_eigen_extremum(bd_symbol(b).gauge_reduced().gram(), tol, false, true);
}

NormEstimate bd_p_norm(const BdElement& b, unsigned P, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  NormEstimate out;
  BdElement d = b;
  for (unsigned j = 0; j <= P; ++j) {
    const auto w = static_cast<double>(binomial(P, j));
    const auto br = bd_norm_bracket(d, tol / std::ldexp(1.0, static_cast<int>(j) + 1));
    out.value += w * br.midpoint();
    out.error_bound += w * 0.5 * br.width();
    d = bd_delta_L(d);
  }
  return out;
}

ScalarMatrix bd_apply(const BdElement& b, std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error(ErrorCode::InvalidArgument, "empty window");
  const auto n = static_cast<std::size_t>(hi - lo);
  ScalarMatrix m(n, n);
  for (std::int64_t s = lo; s < hi; ++s)
    for (const auto& [d, f] : b.bands()) {
      const std::int64_t k = s + d;
      if (k >= lo && k < hi) m(static_cast<std::size_t>(k - lo), static_cast<std::size_t>(s - lo)) = f(s);
    }
  return m;
}

BandMatrix bd_apply_banded(const BdElement& b, std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error(ErrorCode::InvalidArgument, "empty window");
  const auto n = static_cast<std::size_t>(hi - lo);
  const auto kl = static_cast<std::size_t>(std::max<std::int64_t>(b.max_band(), 0));
  const auto ku = static_cast<std::size_t>(std::max<std::int64_t>(-b.min_band(), 0));
  BandMatrix m(n, n, kl, ku);
  for (std::int64_t s = lo; s < hi; ++s)
    for (const auto& [d, f] : b.bands()) {
      const std::int64_t k = s + d;
      if (k >= lo && k < hi)
        m.set(static_cast<std::size_t>(k - lo), static_cast<std::size_t>(s - lo), f(s).to_complex());
    }
  return m;
}

}  // namespace bdtk
