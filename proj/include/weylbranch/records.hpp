// Line-delimited JSON records for projection matrices, branching rules and
// orbits. One record per line; field names are stable.
//
//   matrix: {"source","target","rows","cols","entries":[row-major],
//            "provenance","variant"}      entries are integers when integral,
//                                          otherwise "p/q" strings
//   rule:   {"source","target","seed","terms":[{"weight","multiplicity"}],
//            "projection": matrix}
//   orbit:  {"algebra","seed","size","points":[...]}

#ifndef WEYLBRANCH_RECORDS_HPP_
#define WEYLBRANCH_RECORDS_HPP_

#include <string>
#include <vector>

#include <json.hpp>

#include "branching.hpp"
#include "projections.hpp"

namespace weylbranch {

using json = nlohmann::json;

inline json rational_to_json(const Rational& r) {
  if (r.is_integer()) return r.num();
  return r.str();
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw parse_error("expected an integer or a \"p/q\" string, got " + j.dump());
}

inline json matrix_record(const ProjectionMatrix& p) {
  json entries = json::array();
  for (const auto& v : p.entries().data()) entries.push_back(rational_to_json(v));
  return json{{"source", p.source().name()},
              {"target", p.target().name()},
              {"rows", p.entries().rows()},
              {"cols", p.entries().cols()},
              {"entries", std::move(entries)},
              {"provenance", to_string(p.provenance())},
              {"variant", p.variant()}};
}

inline ProjectionMatrix matrix_from_record(const json& j) {
  try {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto& e = j.at("entries");
    if (!e.is_array() || e.size() != rows * cols) throw parse_error("matrix record: entry count mismatch");
    RationalMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t c = 0; c < cols; ++c) m(i, c) = rational_from_json(e[i * cols + c]);
    return ProjectionMatrix(parse_algebra(j.at("source").get<std::string>()),
                            parse_algebra(j.at("target").get<std::string>()), std::move(m),
                            parse_provenance(j.value("provenance", std::string("derived"))),
                            j.value("variant", std::string()));
  } catch (const json::exception& ex) {
    throw parse_error(std::string("matrix record: ") + ex.what());
  }
}

inline json rule_record(const BranchingRule& r) {
  json terms = json::array();
  for (const auto& t : r.terms) terms.push_back({{"weight", format_weight(t.weight)}, {"multiplicity", t.multiplicity}});
  return json{{"source", r.projection.source().name()},
              {"target", r.projection.target().name()},
              {"seed", format_weight(r.source_seed)},
              {"terms", std::move(terms)},
              {"projection", matrix_record(r.projection)}};
}

inline BranchingRule rule_from_record(const json& j) {
  try {
    auto p = matrix_from_record(j.at("projection"));
    if (p.source() != parse_algebra(j.at("source").get<std::string>()) ||
        p.target() != parse_algebra(j.at("target").get<std::string>()))
      throw parse_error("rule record: source/target disagree with the embedded projection");
    Weight seed = parse_weight(p.source(), j.at("seed").get<std::string>());
    std::vector<BranchTerm> terms;
    for (const auto& t : j.at("terms"))
      terms.push_back({parse_weight(p.target(), t.at("weight").get<std::string>()),
                       t.at("multiplicity").get<std::int64_t>()});
    return BranchingRule{std::move(seed), std::move(p), std::move(terms)};
  } catch (const json::exception& ex) {
    throw parse_error(std::string("rule record: ") + ex.what());
  }
}

inline json orbit_record(const Orbit& o) {
  json pts = json::array();
  for (const auto& x : o.points) pts.push_back(format_coords(o.algebra(), x));
  return json{{"algebra", o.algebra().name()}, {"seed", format_weight(o.seed)}, {"size", o.size()}, {"points", pts}};
}

}  // namespace weylbranch

#endif  // WEYLBRANCH_RECORDS_HPP_
