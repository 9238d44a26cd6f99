#include <gtest/gtest.h>

#include <random>

#include "weylbranch/records.hpp"

using namespace weylbranch;

TEST(Records, RationalEncoding) {
  EXPECT_EQ(rational_to_json(Rational(3)), json(3));
  EXPECT_EQ(rational_to_json(Rational(-2, 3)), json("-2/3"));
  EXPECT_EQ(rational_from_json(json(4)), Rational(4));
  EXPECT_EQ(rational_from_json(json("5/10")), Rational(1, 2));
  EXPECT_THROW(rational_from_json(json(1.5)), parse_error);
  EXPECT_THROW(rational_from_json(json::array()), parse_error);
}

TEST(Records, EveryCatalogMatrixRoundTrips) {
  for (const auto& e : catalog_entries()) {
    const auto back = matrix_from_record(json::parse(matrix_record(e).dump()));
    EXPECT_EQ(back, e) << e.key();
  }
  const auto inv = invert_projection(catalog(parse_algebra("A3"), parse_algebra("A2xU1")));
  EXPECT_EQ(matrix_from_record(matrix_record(inv)), inv);
}

TEST(Records, RuleRoundTrips) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(0, 2);
  for (const auto& p : catalog_entries()) {
    if (p.source().dimension() > 6) continue;
    Coords x(p.source().dimension());
    for (auto& v : x) v = d(rng);
    const auto rule = branch(Weight(p.source(), x), p);
    const auto back = rule_from_record(json::parse(rule_record(rule).dump()));
    EXPECT_EQ(back.source_seed, rule.source_seed);
    EXPECT_EQ(back.projection, rule.projection);
    EXPECT_EQ(back.terms, rule.terms) << p.key();
  }
}

TEST(Records, FractionalRuleRoundTrips) {
  const auto rule = branch(parse_weight(parse_algebra("A2"), "(1/2,1/3)"),
                           catalog(parse_algebra("A2"), parse_algebra("A1xU1")));
  const auto back = rule_from_record(json::parse(rule_record(rule).dump()));
  EXPECT_EQ(back.terms, rule.terms);
}

TEST(Records, MalformedRecords) {
  EXPECT_THROW(matrix_from_record(json::parse(R"({"source":"A2","target":"A1"})")), parse_error);
  EXPECT_THROW(matrix_from_record(json::parse(R"({"source":"A2","target":"A1","rows":1,"cols":2,"entries":[2]})")),
               parse_error);
  EXPECT_THROW(
      matrix_from_record(json::parse(R"({"source":"A2","target":"A1","rows":1,"cols":3,"entries":[2,2,2]})")),
      projection_error);
  auto rec = rule_record(branch(parse_weight(parse_algebra("A2"), "(1,0)"), catalog(parse_algebra("A2"), parse_algebra("A1"))));
  rec["target"] = "C2";
  EXPECT_THROW(rule_from_record(rec), parse_error);
}

TEST(Records, OrbitRecord) {
  const auto r = orbit_record(generate_orbit(parse_weight(parse_algebra("A2"), "(1,0)")));
  EXPECT_EQ(r.at("size"), 3);
  EXPECT_EQ(r.at("points"), json({"(1,0)", "(0,-1)", "(-1,1)"}));
  EXPECT_EQ(r.at("algebra"), "A2");
}
