#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bdtk/json_io.hpp"

namespace bdtk {

/// One checked inequality lhs <= rhs + tolerance (or an equality written as
/// |difference| <= tolerance, with rhs = 0).
struct CaseRecord {
  /// "<index>" or "<index>:<detail>"; the index alone regenerates the inputs.
  std::string id;
  /// FNV-1a of the JSON inputs, hex.
  std::string digest;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  /// Message of an exception thrown while evaluating the case.
  std::string error;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CaseRecord> cases;
  std::size_t passed = 0;
  std::size_t failed = 0;

  bool all_passed() const { return failed == 0 && !cases.empty(); }
};

struct SuiteInfo {
  std::string name;
  std::string description;
  std::size_t default_cases = 0;
};

const std::vector<SuiteInfo>& suites();

/// Runs `cases` cases (the suite default when empty).  Case i draws its inputs
/// from an Rng seeded by (seed, suite, i) only, so reports are identical for
/// equal seeds and independent of the thread count (BDTK_THREADS caps it).
/// Throws InvalidArgument for an unknown suite.
VerifyReport run_suite(std::string_view suite, std::uint64_t seed, std::optional<std::size_t> cases = {});

io::Json to_json(const VerifyReport& report);

std::uint64_t fnv1a(std::string_view bytes);

}  // namespace bdtk
