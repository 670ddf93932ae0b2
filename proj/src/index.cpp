#include "bdtk/index.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bdtk/error.hpp"

namespace bdtk {

std::vector<std::int64_t> default_index_schedule() { return {64, 128, 256, 512}; }

namespace {

struct Count {
  std::int64_t zeros = 0;
  double gap = 0.0;
};

std::int64_t lower_bandwidth(const BdtElement& a) {
  std::int64_t w = std::max<std::int64_t>(a.symbol.is_zero() ? 0 : a.symbol.max_band(), 0);
  for (const auto& [ix, z] : a.compact.entries()) w = std::max(w, ix.first - ix.second);
  return w;
}

Count count_kernel(const BdtElement& a, std::int64_t N, double threshold) {
  const std::int64_t w = lower_bandwidth(a);
  std::vector<double> sv = bdt_truncate_banded(a, N + w, N).singular_values();
  std::sort(sv.begin(), sv.end());
  Count out;
  while (out.zeros < static_cast<std::int64_t>(sv.size()) && sv[static_cast<std::size_t>(out.zeros)] < threshold)
    ++out.zeros;
  const double below = out.zeros > 0 ? std::max(sv[static_cast<std::size_t>(out.zeros - 1)], 1e-300) : threshold;
  const double above = out.zeros < static_cast<std::int64_t>(sv.size())
                           ? sv[static_cast<std::size_t>(out.zeros)]
                           : std::numeric_limits<double>::infinity();
  out.gap = above / below;
  return out;
}

}  // namespace

IndexResult index_scan(const BdtElement& a, const std::vector<std::int64_t>& schedule, double svd_threshold) {
  if (schedule.size() < 3 || !std::is_sorted(schedule.begin(), schedule.end()) || schedule.front() <= 0 ||
      std::adjacent_find(schedule.begin(), schedule.end()) != schedule.end())
    throw Error(ErrorCode::InvalidArgument, "index schedule must be increasing with at least 3 sizes");
  if (!(svd_threshold > 0)) throw Error(ErrorCode::InvalidArgument, "svd_threshold must be positive");

  const BdElement& b = a.symbol;
  if (b.is_zero()) throw Error(ErrorCode::NotFredholm, "tau(a) = 0");
  const double scale = bd_norm_bracket(b, 1e-3).upper;
  CertifiedBracket low = bd_min_singular_bracket(b, std::max(1e-9, 1e-6 * scale));
  if (!(low.lower > 0)) throw Error(ErrorCode::NotFredholm, "tau(a) is not certified invertible");

  const BdtElement adj = bdt_adjoint(a);
  IndexResult out;
  for (std::int64_t N : schedule) {
    const Count k = count_kernel(a, N, svd_threshold);
    const Count c = count_kernel(adj, N, svd_threshold);
    out.kernel_dims.push_back({N, k.zeros, c.zeros, k.gap, c.gap});
  }
  const auto& d = out.kernel_dims;
  const std::size_t last = d.size() - 1;
  out.index = d[last].dim_ker - d[last].dim_coker;
  out.stabilized = true;
  for (std::size_t i = last - 2; i <= last; ++i) {
    if (d[i].dim_ker - d[i].dim_coker != out.index) out.stabilized = false;
    if (d[i].gap_ker < kRequiredGap || d[i].gap_coker < kRequiredGap) out.stabilized = false;
  }
  return out;
}

IndexResult fredholm_index(const BdtElement& a, const std::vector<std::int64_t>& schedule, double svd_threshold) {
  IndexResult r = index_scan(a, schedule, svd_threshold);
  if (!r.stabilized) {
    std::ostringstream msg;
    msg << "index did not stabilize:";
    for (const auto& d : r.kernel_dims)
      msg << " N=" << d.N << " ker=" << d.dim_ker << " coker=" << d.dim_coker << " gaps=" << d.gap_ker << ","
          << d.gap_coker;
    throw Error(ErrorCode::Unstable, msg.str());
  }
  return r;
}

std::int64_t winding(const BdElement& b) {
  if (b.is_zero()) throw Error(ErrorCode::NotInvertible, "b = 0");
  const SymbolMatrix sym = bd_symbol(b);
  const double l = static_cast<double>(sym.period);
  double norm_bound = 0.0, deriv_bound = 0.0;
  for (const auto& [q, C] : sym.coefficients) {
    norm_bound += C.norm();
    deriv_bound += 2.0 * std::numbers::pi * std::abs(static_cast<double>(q)) * C.norm();
  }
  const CertifiedBracket low = bd_min_singular_bracket(b, std::max(1e-9, 1e-6 * norm_bound));
  if (!(low.lower > 0)) throw Error(ErrorCode::NotInvertible, "b is not certified invertible");

  // |det B| >= sigma_min^l, and by multilinearity in the columns
  // |d/dtheta det B| <= l ||B'|| ||B||^{l-1}.  A step of |det|/(4 Lip) moves
  // det by at most a quarter of its modulus, so each phase increment is
  // unambiguous.
  const double lip = l * deriv_bound * std::pow(norm_bound, l - 1.0);
  const double floor_det = std::pow(low.lower, l);
  if (lip == 0.0) return 0;
  constexpr std::size_t kMaxSteps = 20'000'000;
  const double min_step = floor_det / (4.0 * lip);
  double theta = 0.0, total = 0.0;
  std::complex<double> prev = sym.at(0.0).determinant();
  std::size_t steps = 0;
  while (theta < 1.0) {
    const double h = std::max(std::abs(prev) / (4.0 * lip), min_step);
    theta = std::min(1.0, theta + h);
    const std::complex<double> cur = sym.at(theta).determinant();
    total += std::arg(cur / prev);
    prev = cur;
    if (++steps > kMaxSteps) throw Error(ErrorCode::NotInvertible, "winding: determinant too close to 0");
  }
  const double turns = total / (2.0 * std::numbers::pi);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 1e-6) throw Error(ErrorCode::Unstable, "winding: phase did not close");
  return static_cast<std::int64_t>(rounded);
}

K0Demo k0_demo(const Supernatural& S) {
  K0Demo out;
  out.S = S.to_string();
  for (const auto& [n, d] : std::vector<std::pair<std::int64_t, std::int64_t>>{
           {1, 2}, {3, 8}, {1, 3}, {5, 6}, {1, 9}, {7, 64}, {1, 5}, {4, 2}, {-5, 12}, {11, 72}}) {
    const Rational q = Rational::make(n, d);
    out.membership.push_back({q, gs_contains(q, S)});
  }

  const std::vector<std::int64_t> schedule{32, 64, 128};
  const auto T = [&](std::int64_t n) { return toeplitz(BdElement::shift(S, n)); };
  const auto ind = [&](const BdtElement& a) { return fredholm_index(a, schedule).index; };
  out.index_cases.push_back({"T(V) = U", ind(T(1)), -1});
  out.index_cases.push_back({"T(V^-1) = U^*", ind(T(-1)), 1});
  out.index_cases.push_back({"U^* U = I", ind(T(-1) * T(1)), 0});
  out.index_cases.push_back({"U U^* = I - P00", ind(T(1) * T(-1)), 0});
  out.index_cases.push_back({"U U", ind(T(1) * T(1)), 2 * ind(T(1))});
  out.index_cases.push_back({"U^* T(V^2)", ind(T(-1) * T(2)), ind(T(-1)) + ind(T(2))});
  out.index_cases.push_back({"T(V^3) + P00", ind(T(3) + BdtElement::from_compact(S, k_units(0, 0))), ind(T(3))});

  for (std::uint64_t l : S.divisors_up_to(12))
    for (std::int64_t k : {-7, -1, 0, 3, 13}) {
      // At a finite level every residue is the image of the integer value
      // itself, so the class in (Z/SZ)/Z is 0.
      const Residue r = embed_int(k, l);
      out.quotient.push_back({k, r, embed_int(static_cast<std::int64_t>(r.value), l) == r});
    }

  for (const auto& m : out.membership)
    out.all_consistent = out.all_consistent && (m.member == S.divides(static_cast<std::uint64_t>(m.q.den)));
  for (const auto& c : out.index_cases) out.all_consistent = out.all_consistent && c.index == c.expected;
  return out;
}

}  // namespace bdtk
