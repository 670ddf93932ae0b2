#include "bdtk/arith.hpp"

#include <charconv>
#include <numeric>
#include <sstream>

#include "bdtk/error.hpp"

namespace bdtk {

namespace {

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::Parse, "bad integer '" + std::string(s) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::int64_t checked(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorCode::InvalidArgument, "64-bit overflow in rational arithmetic");
  return static_cast<std::int64_t>(v);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::map<std::uint64_t, std::uint32_t> factorize(std::uint64_t n) {
  std::map<std::uint64_t, std::uint32_t> f;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      ++f[d];
      n /= d;
    }
  }
  if (n > 1) ++f[n];
  return f;
}

std::uint64_t lcm_checked(std::uint64_t a, std::uint64_t b) {
  std::uint64_t g = std::gcd(a, b);
  unsigned __int128 v = static_cast<unsigned __int128>(a / g) * b;
  if (v > std::numeric_limits<std::uint64_t>::max())
    throw Error(ErrorCode::InvalidArgument, "period lcm overflows");
  return static_cast<std::uint64_t>(v);
}

Supernatural::Supernatural(std::map<std::uint64_t, Exponent> exponents) {
  for (const auto& [p, e] : exponents) {
    if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    if (e != 0) exponents_.emplace(p, e);
  }
}

Supernatural Supernatural::parse(std::string_view text) {
  text = trim(text);
  std::map<std::uint64_t, Exponent> exps;
  if (text.empty() || text == "1") return Supernatural{};
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    auto colon = item.find(':');
    if (colon == std::string_view::npos)
      throw Error(ErrorCode::Parse, "expected prime:exponent, got '" + std::string(item) + "'");
    auto p = parse_int(trim(item.substr(0, colon)));
    auto es = trim(item.substr(colon + 1));
    if (p < 2) throw Error(ErrorCode::Parse, "bad prime in supernatural number");
    Exponent e;
    if (es == "inf" || es == "INF" || es == "infinity") {
      e = kInfinity;
    } else {
      auto v = parse_int(es);
      if (v < 0 || v >= static_cast<std::int64_t>(kInfinity))
        throw Error(ErrorCode::Parse, "bad exponent");
      e = static_cast<Exponent>(v);
    }
    if (exps.count(static_cast<std::uint64_t>(p)))
      throw Error(ErrorCode::Parse, "repeated prime in supernatural number");
    exps[static_cast<std::uint64_t>(p)] = e;
  }
  try {
    return Supernatural(std::move(exps));
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

Supernatural::Exponent Supernatural::exponent(std::uint64_t prime) const {
  auto it = exponents_.find(prime);
  return it == exponents_.end() ? 0 : it->second;
}

bool Supernatural::is_infinite() const {
  for (const auto& [p, e] : exponents_)
    if (e == kInfinity) return true;
  return false;
}

bool Supernatural::divides(std::uint64_t l) const {
  if (l == 0) throw Error(ErrorCode::InvalidArgument, "divisibility test needs l >= 1");
  for (const auto& [p, e] : factorize(l))
    if (e > exponent(p)) return false;
  return true;
}

std::vector<std::uint64_t> Supernatural::divisors_up_to(std::uint64_t bound) const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t l = 1; l <= bound; ++l)
    if (divides(l)) out.push_back(l);
  return out;
}

std::string Supernatural::to_string() const {
  if (exponents_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, e] : exponents_) {
    if (!first) os << ',';
    first = false;
    os << p << ':';
    if (e == kInfinity)
      os << "inf";
    else
      os << e;
  }
  return os.str();
}

bool sn_divides(std::uint64_t l, const Supernatural& S) { return S.divides(l); }

Residue embed_int(std::int64_t k, std::uint64_t level) {
  if (level == 0) throw Error(ErrorCode::InvalidArgument, "residue level must be >= 1");
  if (level > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
    throw Error(ErrorCode::InvalidArgument, "residue level too large");
  return {level, static_cast<std::uint64_t>(euclid_mod(k, static_cast<std::int64_t>(level)))};
}

Residue odometer(const Residue& x, std::int64_t m) {
  auto l = static_cast<std::int64_t>(x.level);
  auto step = euclid_mod(m, l);
  return {x.level, static_cast<std::uint64_t>((static_cast<std::int64_t>(x.value) + step) % l)};
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = checked(-static_cast<__int128>(num));
    den = checked(-static_cast<__int128>(den));
  }
  auto g = std::gcd(num, den);
  if (g == 0) g = 1;
  return {num / g, den / g};
}

Rational Rational::parse(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return make(parse_int(text), 1);
  return make(parse_int(trim(text.substr(0, slash))), parse_int(trim(text.substr(slash + 1))));
}

std::string Rational::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

GsRational::GsRational(Rational q, const Supernatural& S) : q_(Rational::make(q.num, q.den)) {
  if (!S.divides(static_cast<std::uint64_t>(q_.den)))
    throw Error(ErrorCode::NotInGroup,
                q_.to_string() + " has denominator not dividing S = " + S.to_string());
}

bool gs_contains(const Rational& q, const Supernatural& S) {
  auto r = Rational::make(q.num, q.den);
  return S.divides(static_cast<std::uint64_t>(r.den));
}

GsRational gs_add(const GsRational& a, const GsRational& b, const Supernatural& S) {
  if (!S.divides(static_cast<std::uint64_t>(a.denominator())) ||
      !S.divides(static_cast<std::uint64_t>(b.denominator())))
    throw Error(ErrorCode::NotInGroup, "gs_add operand outside G_S");
  __int128 num = static_cast<__int128>(a.numerator()) * b.denominator() +
                 static_cast<__int128>(b.numerator()) * a.denominator();
  __int128 den = static_cast<__int128>(a.denominator()) * b.denominator();
  // reduce in 128 bits before narrowing
  __int128 x = num < 0 ? -num : num, y = den;
  while (y != 0) {
    __int128 t = x % y;
    x = y;
    y = t;
  }
  if (x == 0) x = 1;
  return GsRational(Rational::make(checked(num / x), checked(den / x)), S);
}

}  // namespace bdtk
