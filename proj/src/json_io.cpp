#include "bdtk/json_io.hpp"

#include "bdtk/error.hpp"

namespace bdtk::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object()) fail(std::string("expected an object with \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing member \"") + key + "\"");
  return *it;
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  return j;
}

std::int64_t integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
    fail(std::string(what) + " out of range");
  return j.get<std::int64_t>();
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) fail(std::string(what) + " must be a number");
  return j.get<double>();
}

Json to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
  return Json(z.get_str());
}

mpz_class mpz_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<std::uint64_t>()));
    return mpz_class(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) fail("bad integer string " + j.get<std::string>());
    return z;
  }
  fail("expected an integer or a decimal string");
}

mpq_class mpq_from_parts(const Json& num, const Json& den) {
  const mpz_class d = mpz_from_json(den);
  if (d == 0) fail("zero denominator");
  mpq_class q(mpz_from_json(num), d);
  q.canonicalize();
  return q;
}

}  // namespace

Json to_json(const Supernatural& S) {
  Json out = Json::array();
  for (const auto& [p, e] : S.exponents())
    out.push_back(Json::array({p, e == Supernatural::kInfinity ? Json("inf") : Json(e)}));
  return out;
}

Json to_json(const Scalar& z) {
  if (z.is_float()) {
    const auto c = z.to_complex();
    return Json::array({c.real(), c.imag()});
  }
  return Json::array({to_json(z.re().get_num()), to_json(z.re().get_den()), to_json(z.im().get_num()),
                      to_json(z.im().get_den())});
}

Json to_json(const UlcFunction& f) {
  Json values = Json::array();
  for (const Scalar& z : f.values()) values.push_back(to_json(z));
  Json out{{"period", f.period()}, {"values", std::move(values)}};
  if (!f.is_exact()) out["float"] = true;
  return out;
}

Json to_json(const BdElement& b) {
  Json bands = Json::array();
  for (const auto& [n, f] : b.bands()) bands.push_back(Json::array({n, to_json(f)}));
  return Json{{"S", to_json(b.S())}, {"bands", std::move(bands)}};
}

Json to_json(const CompactMatrix& c) {
  Json entries = Json::array();
  for (const auto& [ks, z] : c.entries()) entries.push_back(Json::array({ks.first, ks.second, to_json(z)}));
  return Json{{"entries", std::move(entries)}};
}

Json to_json(const BdtElement& a) { return Json{{"symbol", to_json(a.symbol)}, {"compact", to_json(a.compact)}}; }

Json to_json(const CertifiedBd& x) {
  Json out = to_json(x.value);
  out["residual_bound"] = x.residual_bound;
  out["method"] = x.method;
  return out;
}

Json to_json(const CertifiedBdt& x) {
  Json out = to_json(x.value);
  out["residual_bound"] = x.residual_bound;
  out["method"] = x.method;
  return out;
}

Json to_json(const DerivationSpec& d) {
  return Json{{"gamma", to_json(d.gamma)}, {"b", to_json(d.b)}, {"c", to_json(d.c)}};
}

Json to_json(const CovariantComponent& c) {
  Json beta = Json::array();
  for (const auto& [k, z] : c.beta) beta.push_back(Json::array({k, to_json(z)}));
  return Json{{"n", c.n}, {"beta", std::move(beta)}};
}

Json to_json(const IndexResult& r) {
  Json dims = Json::array();
  for (const auto& d : r.kernel_dims)
    dims.push_back(Json{{"N", d.N},
                        {"dim_ker", d.dim_ker},
                        {"dim_coker", d.dim_coker},
                        {"gap_ker", d.gap_ker},
                        {"gap_coker", d.gap_coker}});
  return Json{{"index", r.index}, {"stabilized", r.stabilized}, {"kernel_dims", std::move(dims)}};
}

Json to_json(const Rational& q) { return Json::array({q.num, q.den}); }
Json to_json(const Residue& r) { return Json::array({r.value, r.level}); }

Json to_json(const K0Demo& demo) {
  Json membership = Json::array(), cases = Json::array(), quotient = Json::array();
  for (const auto& m : demo.membership) membership.push_back(Json{{"q", to_json(m.q)}, {"member", m.member}});
  for (const auto& c : demo.index_cases)
    cases.push_back(Json{{"label", c.label}, {"index", c.index}, {"expected", c.expected}});
  for (const auto& q : demo.quotient)
    quotient.push_back(Json{{"k", q.k}, {"residue", to_json(q.residue)}, {"is_zero_class", q.is_zero_class}});
  return Json{{"S", demo.S},
              {"membership", std::move(membership)},
              {"index_cases", std::move(cases)},
              {"quotient", std::move(quotient)},
              {"all_consistent", demo.all_consistent}};
}

namespace {

Supernatural supernatural_unchecked(const Json& j) {
  if (j.is_string()) return Supernatural::parse(j.get<std::string>());
  std::map<std::uint64_t, Supernatural::Exponent> exps;
  for (const Json& pe : array(j, "supernatural")) {
    if (!pe.is_array() || pe.size() != 2) fail("supernatural entries are [prime, exponent]");
    const std::int64_t p = integer(pe[0], "prime");
    if (p < 2) fail("prime must be >= 2");
    Supernatural::Exponent e;
    if (pe[1].is_string()) {
      if (pe[1].get<std::string>() != "inf") fail("exponent string must be \"inf\"");
      e = Supernatural::kInfinity;
    } else {
      const std::int64_t v = integer(pe[1], "exponent");
      if (v < 0 || v >= static_cast<std::int64_t>(Supernatural::kInfinity)) fail("exponent out of range");
      e = static_cast<Supernatural::Exponent>(v);
    }
    if (!exps.emplace(static_cast<std::uint64_t>(p), e).second) fail("repeated prime");
  }
  return Supernatural(std::move(exps));
}

}  // namespace

Supernatural supernatural_from_json(const Json& j) {
  try {
    return supernatural_unchecked(j);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) fail(e.what());
    throw;
  }
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_number_integer()) return Scalar(mpq_class(mpz_from_json(j)));
  if (j.is_number_float()) return Scalar::from_double(j.get<double>());
  if (!j.is_array()) fail("scalar must be an array");
  if (j.size() == 4) return Scalar(mpq_from_parts(j[0], j[1]), mpq_from_parts(j[2], j[3]));
  if (j.size() == 2) return Scalar::from_complex({number(j[0], "re"), number(j[1], "im")});
  fail("scalar arrays have 4 (exact) or 2 (float) entries");
}

UlcFunction ulc_from_json(const Json& j) {
  const std::int64_t period = integer(member(j, "period"), "period");
  const Json& values = array(member(j, "values"), "values");
  if (period < 1 || static_cast<std::size_t>(period) != values.size()) fail("period must equal the number of values");
  const bool is_float = j.contains("float") && j["float"].is_boolean() && j["float"].get<bool>();
  std::vector<Scalar> v;
  for (const Json& z : values) {
    Scalar s = scalar_from_json(z);
    if (!is_float && s.is_float()) fail("float values need \"float\": true");
    v.push_back(std::move(s));
  }
  return UlcFunction(std::move(v));
}

BdElement bd_from_json(const Json& j, const Supernatural& fallback_S) {
  const Supernatural S = j.is_object() && j.contains("S") ? supernatural_from_json(j["S"]) : fallback_S;
  std::map<std::int64_t, UlcFunction> bands;
  for (const Json& nb : array(member(j, "bands"), "bands")) {
    if (!nb.is_array() || nb.size() != 2) fail("bands are [n, ulc] pairs");
    const std::int64_t n = integer(nb[0], "band index");
    UlcFunction f = ulc_from_json(nb[1]);
    auto [it, fresh] = bands.emplace(n, f);
    if (!fresh) it->second += f;
  }
  try {
    return BdElement(S, std::move(bands));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::PeriodMismatch) fail(e.what());
    throw;
  }
}

CompactMatrix compact_from_json(const Json& j) {
  CompactMatrix c;
  for (const Json& e : array(member(j, "entries"), "entries")) {
    if (!e.is_array() || e.size() != 3) fail("entries are [k, s, scalar]");
    const std::int64_t k = integer(e[0], "row"), s = integer(e[1], "column");
    if (k < 0 || s < 0) fail("matrix indices must be nonnegative");
    c.add(k, s, scalar_from_json(e[2]));
  }
  return c;
}

BdtElement bdt_from_json(const Json& j, const Supernatural& fallback_S) {
  switch (classify(j)) {
    case ElementKind::Compact: return BdtElement::from_compact(fallback_S, compact_from_json(j));
    case ElementKind::Bd: fail("expected a BDT element, got a BD element (use toeplitz)");
    case ElementKind::Bdt: break;
  }
  BdElement b = j.contains("symbol") ? bd_from_json(j["symbol"], fallback_S) : BdElement(fallback_S);
  CompactMatrix c = j.contains("compact") ? compact_from_json(j["compact"]) : CompactMatrix{};
  return BdtElement(std::move(b), std::move(c));
}

DerivationSpec derivation_from_json(const Json& j, const Supernatural& fallback_S) {
  DerivationSpec d;
  d.gamma = j.contains("gamma") ? scalar_from_json(j["gamma"]) : Scalar{};
  d.b = j.contains("b") ? bd_from_json(j["b"], fallback_S) : BdElement(fallback_S);
  d.c = j.contains("c") ? compact_from_json(j["c"]) : CompactMatrix{};
  return d;
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (!j.is_array() || j.size() != 2) fail("rationals are [numerator, denominator]");
  const std::int64_t den = integer(j[1], "denominator");
  if (den == 0) fail("zero denominator");
  return Rational::make(integer(j[0], "numerator"), den);
}

Residue residue_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) fail("residues are [value, level]");
  const std::int64_t v = integer(j[0], "value"), l = integer(j[1], "level");
  if (l < 1 || v < 0 || v >= l) fail("residue value must lie in [0, level)");
  return Residue{static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(v)};
}

ElementKind classify(const Json& j) {
  if (!j.is_object()) fail("element must be a JSON object");
  if (j.contains("symbol") || j.contains("compact")) return ElementKind::Bdt;
  if (j.contains("bands")) return ElementKind::Bd;
  if (j.contains("entries")) return ElementKind::Compact;
  fail("cannot tell the element type: need \"bands\", \"entries\" or \"symbol\"");
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

}  // namespace bdtk::io
