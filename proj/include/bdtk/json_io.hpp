#pragma once

#include <string>

#include <json.hpp>

#include "bdtk/arith.hpp"
#include "bdtk/calculus.hpp"
#include "bdtk/derivations.hpp"
#include "bdtk/index.hpp"

namespace bdtk::io {

/// Insertion-ordered, so dumps follow the field order written here.
using Json = nlohmann::ordered_json;

// Exact scalars are [re_num, re_den, im_num, im_den] (integers, or decimal
// strings once a part leaves the int64 range); float scalars are [re, im].
// Every from_json throws Error(Parse) on malformed input.

Json to_json(const Supernatural& S);
Json to_json(const Scalar& z);
Json to_json(const UlcFunction& f);
Json to_json(const BdElement& b);
Json to_json(const CompactMatrix& c);
Json to_json(const BdtElement& a);
Json to_json(const CertifiedBd& x);
Json to_json(const CertifiedBdt& x);
Json to_json(const DerivationSpec& d);
Json to_json(const CovariantComponent& c);
Json to_json(const IndexResult& r);
Json to_json(const Rational& q);
Json to_json(const Residue& r);
Json to_json(const K0Demo& demo);

Supernatural supernatural_from_json(const Json& j);
Scalar scalar_from_json(const Json& j);
UlcFunction ulc_from_json(const Json& j);
/// `fallback_S` is used when the object has no "S" member.
BdElement bd_from_json(const Json& j, const Supernatural& fallback_S = Supernatural());
CompactMatrix compact_from_json(const Json& j);
BdtElement bdt_from_json(const Json& j, const Supernatural& fallback_S = Supernatural());
DerivationSpec derivation_from_json(const Json& j, const Supernatural& fallback_S = Supernatural());
Rational rational_from_json(const Json& j);
Residue residue_from_json(const Json& j);

enum class ElementKind { Bd, Compact, Bdt };
/// Decided by the members present: "symbol" (or "compact"), "bands", "entries".
ElementKind classify(const Json& j);

/// Parses text, mapping nlohmann errors to Error(Parse).
Json parse(const std::string& text);

}  // namespace bdtk::io
