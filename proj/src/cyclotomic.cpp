#include "bdtk/cyclotomic.hpp"

namespace bdtk {

namespace {

using Poly = std::vector<std::int64_t>;

// Exact division of integer polynomials by a monic divisor.
Poly divide_monic(Poly num, const Poly& den) {
  const std::size_t dn = den.size() - 1;
  Poly quot(num.size() - dn, 0);
  for (std::size_t d = num.size(); d-- > dn;) {
    const std::int64_t lead = num[d];
    quot[d - dn] = lead;
    for (std::size_t i = 0; i <= dn; ++i) num[d - dn + i] -= lead * den[i];
  }
  for (std::size_t i = 0; i < dn; ++i)
    if (num[i] != 0) throw Error(ErrorCode::InvalidArgument, "inexact cyclotomic division");
  return quot;
}

}  // namespace

std::vector<std::int64_t> cyclotomic_polynomial(std::uint64_t q) {
  if (q == 0) throw Error(ErrorCode::InvalidArgument, "cyclotomic order must be >= 1");
  Poly p(q + 1, 0);
  p[0] = -1;
  p[q] = 1;
  for (std::uint64_t d = 1; d < q; ++d)
    if (q % d == 0) p = divide_monic(p, cyclotomic_polynomial(d));
  return p;
}

std::uint64_t odd_prime_at_least(std::uint64_t n) {
  std::uint64_t p = std::max<std::uint64_t>(n, 3);
  while (p % 2 == 0 || !is_prime(p)) ++p;
  return p;
}

}  // namespace bdtk
