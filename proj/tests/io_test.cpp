#include <gtest/gtest.h>

#include "loopalg/report.hpp"

using namespace loopalg;

TEST(Io, TextComplex) {
  const auto k = complex_from_text("# square\n1 2\n2 3\n3 4 # last two\n4 1\n");
  EXPECT_EQ(k, SimplicialComplex::cycle(4));
  EXPECT_EQ(complex_from_text("").vertex_count(), 0);
  EXPECT_THROW(complex_from_text("1 x\n"), Error);
  try {
    complex_from_text("0 1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfRange);
  }
}

TEST(Io, JsonComplexRoundTrip) {
  const auto k = SimplicialComplex::simplex_boundary(4);
  EXPECT_EQ(complex_from_json(complex_to_json(k)), k);
  // {∅} keeps its single empty facet
  EXPECT_EQ(complex_to_json(SimplicialComplex())["facets"], Json::array({Json::array()}));
  EXPECT_EQ(complex_from_json(complex_to_json(SimplicialComplex())), SimplicialComplex());
  EXPECT_THROW(complex_from_json(Json{{"m", 2}}), Error);
  try {
    complex_from_json(Json{{"m", 3}, {"facets", {{1, 2}}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GhostVertex);
  }
}

TEST(Io, BigIntegers) {
  EXPECT_EQ(big_to_json(BigInt(-5)), Json(-5));
  const BigInt huge = BigInt(1) << 80;
  EXPECT_TRUE(big_to_json(huge).is_string());
  EXPECT_EQ(big_from_json(big_to_json(huge)), huge);
  EXPECT_THROW(big_from_json(Json("12a")), Error);
  EXPECT_THROW(big_from_json(Json(1.5)), Error);
}

TEST(Io, SeriesRetruncation) {
  const Json j{{"trunc", 5}, {"coeffs", {1, 2, 3}}};
  const auto s = series_from_json(j, 3);
  EXPECT_EQ(s.trunc(), 3);
  EXPECT_EQ(s.coeffs(), (std::vector<BigInt>{1, 2, 3, 0}));
  EXPECT_THROW(series_from_json(j, 6), Error);
  EXPECT_THROW(series_from_json(Json{{"trunc", 1}, {"coeffs", {1, 2, 3}}}, 1), Error);
  EXPECT_EQ(series_from_json(series_to_json(s), 3), s);
}

TEST(Report, Fields) {
  EXPECT_TRUE(parse_field("q").is_rational());
  EXPECT_EQ(parse_field("fp:7").characteristic(), 7u);
  EXPECT_THROW(parse_field("fp:9"), Error);
  EXPECT_THROW(parse_field("fp:"), Error);
  EXPECT_THROW(parse_field("r"), Error);
}

TEST(Report, BbTableIsSparseAndOrdered) {
  RunConfig c;
  const Json r = cmd_bb(SimplicialComplex::discrete(2), c);
  EXPECT_EQ(r["schema"], 1);
  EXPECT_FALSE(r["config"].contains("jobs"));
  // only b_∅ and b_{12} are non-zero
  const Json& t = r["bb_table"];
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0]["J"], Json::array());
  EXPECT_EQ(t[1]["J"], (Json{1, 2}));
}

TEST(Report, DecomposeOverFpWarns) {
  RunConfig c;
  c.field = FieldSpec::prime(2);
  const Json r = cmd_decompose(SimplicialComplex::discrete(3), c);
  EXPECT_TRUE(r["exponents"].is_null());
  EXPECT_EQ(r["warnings"].size(), 1u);
}

TEST(Report, IdenticalAcrossJobs) {
  RunConfig one, four;
  four.jobs = 4;
  const auto k = SimplicialComplex::cycle(5);
  EXPECT_EQ(cmd_decompose(k, one).dump(), cmd_decompose(k, four).dump());
  EXPECT_EQ(cmd_series(k, one).dump(), cmd_series(k, four).dump());
}

TEST(Report, FanRefusalCarriesPi1) {
  const Fan f = make_fan(2, {{1, 2}, {1, 0}}, {{1, 2}});
  try {
    cmd_fan(f, RunConfig{});
    FAIL();
  } catch (const ReportedError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSimplyConnected);
    EXPECT_EQ(e.report()["orbifold"]["pi1_invariants"], (Json{2}));
  }
}
