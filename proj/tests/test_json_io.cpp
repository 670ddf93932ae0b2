#include <gtest/gtest.h>

#include <cmath>

#include "bdtk/error.hpp"
#include "bdtk/json_io.hpp"
#include "bdtk/random.hpp"
#include "bdtk/verify.hpp"

using namespace bdtk;

namespace {

const Supernatural S = Supernatural::parse("2:inf,3:1");

void expect_parse_error(const std::string& text, const char* what) {
  try {
    const io::Json j = io::parse(text);
    (void)io::bdt_from_json(j, S);
    ADD_FAILURE() << what << ": accepted " << text;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse) << what << ": " << e.what();
  }
}

}  // namespace

TEST(JsonIo, CorpusRoundTrip) {
  Rng rng(11);
  CorpusConfig cfg;
  for (int i = 0; i < 200; ++i) {
    const BdElement b = random_bd(rng, cfg);
    EXPECT_EQ(io::bd_from_json(io::parse(io::to_json(b).dump())), b);
    const CompactMatrix c = random_compact(rng, cfg);
    EXPECT_EQ(io::compact_from_json(io::parse(io::to_json(c).dump())), c);
    const BdtElement a = random_bdt(rng, cfg);
    EXPECT_EQ(io::bdt_from_json(io::parse(io::to_json(a).dump(2))), a);
    EXPECT_EQ(io::classify(io::to_json(b)), io::ElementKind::Bd);
    EXPECT_EQ(io::classify(io::to_json(c)), io::ElementKind::Compact);
    EXPECT_EQ(io::classify(io::to_json(a)), io::ElementKind::Bdt);
  }
}

TEST(JsonIo, Scalars) {
  const mpz_class big("123456789012345678901234567890");
  const Scalar exact(mpq_class(big, 7), mpq_class(-3, 4));
  const io::Json j = io::to_json(exact);
  EXPECT_TRUE(j[0].is_string());
  EXPECT_EQ(io::scalar_from_json(io::parse(j.dump())), exact);

  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::nextafter(1.0, 2.0)}) {
    const Scalar z = Scalar::from_complex({x, -x / 7.0});
    const Scalar back = io::scalar_from_json(io::parse(io::to_json(z).dump()));
    EXPECT_EQ(back.to_complex(), z.to_complex());
  }
  EXPECT_EQ(io::scalar_from_json(io::parse("5")), Scalar(5));
  EXPECT_TRUE(io::scalar_from_json(io::parse("0.5")).is_float());
}

TEST(JsonIo, FloatUlc) {
  const UlcFunction f(std::vector<Scalar>{Scalar::from_double(0.25), Scalar(1)});
  const io::Json j = io::to_json(f);
  EXPECT_TRUE(j["float"].get<bool>());
  const UlcFunction g = io::ulc_from_json(io::parse(j.dump()));
  EXPECT_EQ(g.period(), 2u);
  EXPECT_EQ(g(0).to_complex(), f(0).to_complex());
  EXPECT_EQ(g(1).to_complex(), f(1).to_complex());
  EXPECT_THROW(io::ulc_from_json(io::parse(R"({"period": 1, "values": [[0.5, 0.0]]})")), Error);
}

TEST(JsonIo, Supernatural) {
  EXPECT_EQ(io::supernatural_from_json(io::to_json(S)), S);
  EXPECT_EQ(io::to_json(S).dump(), R"([[2,"inf"],[3,1]])");
  EXPECT_EQ(io::supernatural_from_json(io::parse(R"("2:inf,3:1")")), S);
  const BdElement b = io::bd_from_json(io::parse(R"({"bands": [[1, {"period": 1, "values": [1]}]]})"), S);
  EXPECT_EQ(b, BdElement::shift(S, 1));
}

TEST(JsonIo, OtherTypes) {
  const Rational q = Rational::make(-5, 12);
  EXPECT_EQ(io::rational_from_json(io::to_json(q)), q);
  const Residue r{9, 4};
  EXPECT_EQ(io::residue_from_json(io::to_json(r)), r);
  DerivationSpec d;
  d.gamma = Scalar::rational(1, 2);
  d.b = BdElement::shift(S, 2);
  d.c = k_units(1, 0);
  EXPECT_EQ(io::derivation_from_json(io::parse(io::to_json(d).dump())), d);
}

TEST(JsonIo, MalformedInputs) {
  expect_parse_error("{", "truncated text");
  expect_parse_error("[1, 2]", "not an object");
  expect_parse_error(R"({"foo": 1})", "no recognised members");
  expect_parse_error(R"({"bands": [[1, {"period": 2, "values": [1]}]]})", "period and value count differ");
  expect_parse_error(R"({"entries": [[0, -1, 1]]})", "negative index");
  expect_parse_error(R"({"entries": [[0, 0, [1, 0, 0, 1]]]})", "zero denominator");
  expect_parse_error(R"({"entries": [[0, 0, [1, 2, 3]]]})", "scalar arity");
  expect_parse_error(R"({"symbol": {"S": [[4, 1]], "bands": []}})", "composite prime");
  expect_parse_error(R"({"symbol": {"bands": [[0, {"period": 5, "values": [1,2,3,4,5]}]]}})", "period not dividing S");
  EXPECT_THROW(io::bdt_from_json(io::parse(R"({"bands": []})"), S), Error);
}

TEST(Verify, ReportsAreDeterministic) {
  for (const char* suite : {"toeplitz-properties", "derivations", "gs-arithmetic"}) {
    const std::string a = to_json(run_suite(suite, 7, 20)).dump(2);
    const std::string b = to_json(run_suite(suite, 7, 20)).dump(2);
    EXPECT_EQ(a, b) << suite;
    EXPECT_NE(a, to_json(run_suite(suite, 8, 20)).dump(2)) << suite;
  }
}

TEST(Verify, UnknownSuite) {
  try {
    run_suite("no-such-suite", 1);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}
