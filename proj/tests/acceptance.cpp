// Acceptance gate: runs every verify suite at its criterion size and time
// limit and prints one PASS/FAIL line per criterion.  Exits 1 when any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "bdtk/verify.hpp"

namespace {

constexpr std::uint64_t kSeed = 7;

struct Run {
  std::string suite;
  std::size_t cases;
};

struct Criterion {
  int number;
  std::string title;
  std::vector<Run> runs;
  double limit_seconds;
};

const std::vector<Criterion> kCriteria{
    {1, "generator relations", {{"generator-relations", 100}}, 5},
    {2, "Toeplitz map properties", {{"toeplitz-properties", 200}}, 10},
    {3, "correction exactness", {{"correction", 200}}, 30},
    {4, "correction estimate", {{"correction-estimate", 200}}, 60},
    {5, "norm axioms", {{"mn-norm", 200}, {"p-norm", 200}}, 60},
    {6, "Toeplitz-compact norm inequalities", {{"toeplitz-compact-norms", 200}}, 60},
    {7, "Bloch norm consistency", {{"bloch-norm", 100}}, 120},
    {8, "exponential bounds", {{"exp-bounds", 50}}, 120},
    {9, "inversion", {{"inversion", 50}}, 120},
    {10, "derivation round trip", {{"derivations", 100}}, 60},
    {11, "Fredholm index", {{"index", 30}}, 60},
    {12, "G_S arithmetic", {{"gs-arithmetic", 15}}, 5},
};

}  // namespace

int main() {
  int failures = 0;
  for (const Criterion& c : kCriteria) {
    const auto start = std::chrono::steady_clock::now();
    std::size_t passed = 0, total = 0;
    std::string first_failure, error;
    try {
      for (const Run& r : c.runs) {
        const bdtk::VerifyReport report = bdtk::run_suite(r.suite, kSeed, r.cases);
        passed += report.passed;
        total += report.cases.size();
        for (const auto& rec : report.cases)
          if (!rec.pass && first_failure.empty())
            first_failure = r.suite + "#" + rec.id + (rec.error.empty() ? "" : " (" + rec.error + ")");
      }
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = error.empty() && total > 0 && passed == total && seconds < c.limit_seconds;
    failures += !ok;
    std::printf("criterion %2d %-36s %s  %zu/%zu records  %.2f s (limit %.0f s)\n", c.number, c.title.c_str(),
                ok ? "PASS" : "FAIL", passed, total, seconds, c.limit_seconds);
    if (!error.empty()) std::printf("    error: %s\n", error.c_str());
    if (!first_failure.empty()) std::printf("    first failure: %s\n", first_failure.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, kCriteria.size());
  return failures == 0 ? 0 : 1;
}
