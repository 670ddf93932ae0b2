#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bdtk/bdt.hpp"

namespace bdtk {

struct TruncationDims {
  std::int64_t N = 0;
  std::int64_t dim_ker = 0;
  std::int64_t dim_coker = 0;
  /// Smallest singular value not counted as zero over the largest counted one
  /// (over the threshold when none is counted), for a and a^* respectively.
  double gap_ker = 0.0;
  double gap_coker = 0.0;
};

struct IndexResult {
  std::int64_t index = 0;
  std::vector<TruncationDims> kernel_dims;
  bool stabilized = false;
};

inline constexpr double kDefaultSvdThreshold = 1e-8;
inline constexpr double kRequiredGap = 1e3;
std::vector<std::int64_t> default_index_schedule();

/// Kernel and cokernel counts of a = T(b) + c over the schedule, without
/// throwing on instability.
///
/// Square N x N truncations always have index 0, so ker a is read off the
/// (N + w) x N block a P_N (w = lower bandwidth of a, so no row of a P_N is
/// lost) and coker a = ker a^* likewise.  stabilized requires equal
/// dim ker - dim coker over the last three sizes, each with singular-value
/// gap >= kRequiredGap.
///
/// Throws NotFredholm if tau(a) is not certified invertible.
IndexResult index_scan(const BdtElement& a, const std::vector<std::int64_t>& schedule = default_index_schedule(),
                       double svd_threshold = kDefaultSvdThreshold);

/// index_scan, throwing Unstable unless stabilized.
IndexResult fredholm_index(const BdtElement& a, const std::vector<std::int64_t>& schedule = default_index_schedule(),
                           double svd_threshold = kDefaultSvdThreshold);

/// Winding number of theta -> det B(exp(2 pi i theta)) about 0.  Throws
/// NotInvertible if b is not certified invertible.
std::int64_t winding(const BdElement& b);

struct K0Demo {
  struct Membership {
    Rational q;
    bool member = false;
  };
  struct IndexCase {
    std::string label;
    std::int64_t index = 0;
    std::int64_t expected = 0;
  };
  struct QuotientCase {
    std::int64_t k = 0;
    Residue residue;
    bool is_zero_class = false;
  };
  std::string S;
  std::vector<Membership> membership;
  std::vector<IndexCase> index_cases;
  std::vector<QuotientCase> quotient;
  bool all_consistent = true;
};

K0Demo k0_demo(const Supernatural& S);

}  // namespace bdtk
