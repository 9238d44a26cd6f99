// Command-line front end. run() is separate from main() so the tests can
// drive it in-process.
//
// Exit status: 0 success, 1 usage or input error, 2 verification failure.

#ifndef WEYLBRANCH_TOOLS_CLI_HPP_
#define WEYLBRANCH_TOOLS_CLI_HPP_

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weylbranch/weylbranch.hpp"

namespace weylbranch::cli {

inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kVerifyFailed = 2;

struct verification_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Matrix operand grammar:
//   SRC:TGT[:VARIANT]   catalog entry
//   inv(OPERAND)        inverse of another operand
//   @FILE               first matrix record in FILE
inline ProjectionMatrix resolve_matrix(const std::string& operand) {
  if (operand.size() > 5 && operand.rfind("inv(", 0) == 0 && operand.back() == ')')
    return invert_projection(resolve_matrix(operand.substr(4, operand.size() - 5)));
  if (!operand.empty() && operand.front() == '@') {
    std::ifstream in(operand.substr(1));
    if (!in) throw parse_error("cannot open matrix file '" + operand.substr(1) + "'");
    std::string line;
    while (std::getline(in, line))
      if (line.find_first_not_of(" \t\r") != std::string::npos) return matrix_from_record(json::parse(line));
    throw parse_error("matrix file '" + operand.substr(1) + "' holds no record");
  }
  const auto c1 = operand.find(':');
  if (c1 == std::string::npos) throw parse_error("matrix operand '" + operand + "' must look like SRC:TGT[:VARIANT]");
  const auto c2 = operand.find(':', c1 + 1);
  const std::string src = operand.substr(0, c1);
  const std::string tgt = operand.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1);
  const std::string variant = c2 == std::string::npos ? std::string() : operand.substr(c2 + 1);
  return catalog(parse_algebra(src), parse_algebra(tgt), variant);
}

inline std::string matrix_text(const ProjectionMatrix& p) {
  std::ostringstream os;
  os << p.key() << "  " << to_string(p.provenance()) << '\n';
  const auto& m = p.entries();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << '\n';
  }
  return os.str();
}

// (src "(1,0,0)", tgt "(1,0)") from "(1,0,0)=(1,0)".
inline std::pair<Weight, Weight> parse_pair(const ReductiveAlgebra& s, const ReductiveAlgebra& t,
                                            const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw parse_error("pair '" + text + "' must look like SOURCE=TARGET");
  return {parse_weight(s, text.substr(0, eq)), parse_weight(t, text.substr(eq + 1))};
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weyl group orbits of classical Lie algebras and their branching to subalgebras", "weylbranch"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  std::string format = "text";
  std::string output_path;
  app.add_option("--format", format, "Output mode")->check(CLI::IsMember({"text", "json"}));
  app.add_option("-o,--output", output_path, "Write output to this file instead of stdout");

  std::string alg_a, alg_b, weight_text, variant, matrix_operand, outer_operand, inner_operand;
  std::vector<std::string> pairs, onto, seeds;
  std::string from_orbit;
  bool count_only = false, list = false, export_all = false, verify_all = false;

  auto* orbit_cmd = app.add_subcommand("orbit", "List the points of a Weyl group orbit");
  orbit_cmd->add_option("algebra", alg_a, "Algebra, e.g. A3 or A2xA1xU1")->required();
  orbit_cmd->add_option("weight", weight_text, "Dominant seed, e.g. \"(2,0,1)\"")->required();
  orbit_cmd->add_flag("--count", count_only, "Print only the orbit size");

  auto* branch_cmd = app.add_subcommand("branch", "Branch an orbit to a subalgebra");
  branch_cmd->add_option("source", alg_a)->required();
  branch_cmd->add_option("target", alg_b)->required();
  branch_cmd->add_option("weight", weight_text)->required();
  branch_cmd->add_option("--variant", variant, "Catalog variant (unified, subjoined)");
  branch_cmd->add_option("--matrix", matrix_operand, "Use this matrix operand instead of the catalog");

  auto* catalog_cmd = app.add_subcommand("catalog", "Show catalog projection matrices");
  catalog_cmd->add_flag("--list", list, "List every stored pair with its provenance");
  catalog_cmd->add_flag("--export", export_all, "Dump every stored matrix as records");
  catalog_cmd->add_option("source", alg_a);
  catalog_cmd->add_option("target", alg_b);
  catalog_cmd->add_option("--variant", variant);

  auto* derive_cmd = app.add_subcommand("derive", "Derive a projection matrix from associated weights");
  derive_cmd->add_option("source", alg_a)->required();
  derive_cmd->add_option("target", alg_b)->required();
  derive_cmd->add_option("--pair", pairs, "SOURCE=TARGET weight pair; repeatable");
  derive_cmd->add_option("--from-orbit", from_orbit, "Associate the points of this source orbit ...");
  derive_cmd->add_option("--onto", onto, "... with the points of these target orbits");

  auto* compose_cmd = app.add_subcommand("compose", "Matrix product OUTER * INNER");
  compose_cmd->add_option("outer", outer_operand)->required();
  compose_cmd->add_option("inner", inner_operand)->required();

  auto* invert_cmd = app.add_subcommand("invert", "Invert a square projection matrix");
  invert_cmd->add_option("matrix", matrix_operand)->required();

  auto* verify_cmd = app.add_subcommand("verify", "Validate projection matrices on seed orbits");
  verify_cmd->add_flag("--all", verify_all, "Every catalog entry on the standard seeds");
  verify_cmd->add_option("matrix", matrix_operand);
  verify_cmd->add_option("seeds", seeds);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // --help and --version come through here with status 0.
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  std::ostringstream buf;
  const bool as_json = format == "json";
  int status = kOk;
  try {
    if (orbit_cmd->parsed()) {
      const auto alg = parse_algebra(alg_a);
      const auto seed = parse_weight(alg, weight_text);
      if (count_only) {
        if (as_json)
          buf << json{{"algebra", alg.name()}, {"seed", format_weight(seed)}, {"size", orbit_size(seed)}}.dump() << '\n';
        else
          buf << orbit_size(seed) << '\n';
      } else {
        const auto orbit = generate_orbit(seed);
        if (as_json)
          buf << orbit_record(orbit).dump() << '\n';
        else
          for (const auto& x : orbit.points) buf << format_coords(alg, x) << '\n';
      }
    } else if (branch_cmd->parsed()) {
      const auto src = parse_algebra(alg_a);
      const auto tgt = parse_algebra(alg_b);
      const auto p = matrix_operand.empty() ? catalog(src, tgt, variant) : resolve_matrix(matrix_operand);
      if (p.source() != src || p.target() != tgt)
        throw projection_error("matrix " + p.key() + " does not map " + src.name() + " -> " + tgt.name());
      BranchingRule rule = [&] {
        try {
          return branch(parse_weight(src, weight_text), p);
        } catch (const branching_error& e) {
          throw verification_failure(e.what());
        }
      }();
      if (as_json)
        buf << rule_record(rule).dump() << '\n';
      else
        buf << format_rule(rule) << '\n';
    } else if (catalog_cmd->parsed()) {
      if (list || export_all) {
        for (const auto& e : catalog_entries()) {
          if (export_all || as_json)
            buf << matrix_record(e).dump() << '\n';
          else
            buf << e.key() << "  " << to_string(e.provenance()) << '\n';
        }
      } else {
        if (alg_a.empty() || alg_b.empty()) throw parse_error("catalog: give SOURCE TARGET, --list or --export");
        const auto p = catalog(parse_algebra(alg_a), parse_algebra(alg_b), variant);
        buf << (as_json ? matrix_record(p).dump() + "\n" : matrix_text(p));
      }
    } else if (derive_cmd->parsed()) {
      const auto src = parse_algebra(alg_a);
      const auto tgt = parse_algebra(alg_b);
      std::vector<std::pair<Weight, Weight>> assoc;
      for (const auto& t : pairs) assoc.push_back(parse_pair(src, tgt, t));
      if (!from_orbit.empty()) {
        if (onto.empty()) throw parse_error("derive: --from-orbit needs at least one --onto orbit");
        std::vector<Weight> targets;
        for (const auto& o : onto) {
          const auto orb = generate_orbit(parse_weight(tgt, o));
          for (const auto& x : orb.points) targets.emplace_back(tgt, x);
        }
        auto more = auto_associate(generate_orbit(parse_weight(src, from_orbit)), targets);
        assoc.insert(assoc.end(), more.begin(), more.end());
      }
      if (assoc.empty()) throw parse_error("derive: give --pair or --from-orbit/--onto");
      const auto p = derive_projection(src, tgt, assoc);
      buf << (as_json ? matrix_record(p).dump() + "\n" : matrix_text(p));
    } else if (compose_cmd->parsed()) {
      const auto p = compose_projection(resolve_matrix(outer_operand), resolve_matrix(inner_operand));
      buf << (as_json ? matrix_record(p).dump() + "\n" : matrix_text(p));
    } else if (invert_cmd->parsed()) {
      const auto p = invert_projection(resolve_matrix(matrix_operand));
      buf << (as_json ? matrix_record(p).dump() + "\n" : matrix_text(p));
    } else if (verify_cmd->parsed()) {
      std::vector<ProjectionMatrix> targets;
      if (verify_all) {
        targets = catalog_entries();
      } else {
        if (matrix_operand.empty()) throw parse_error("verify: give --all or a matrix operand");
        targets.push_back(resolve_matrix(matrix_operand));
      }
      std::size_t checked = 0, failed = 0;
      for (const auto& p : targets) {
        std::vector<Weight> ws;
        if (seeds.empty() || verify_all)
          ws = standard_seeds(p.source());
        else
          for (const auto& s : seeds) ws.push_back(parse_weight(p.source(), s));
        const auto rep = validate_projection(p, ws);
        for (const auto& s : rep.seeds) {
          ++checked;
          failed += s.passed ? 0 : 1;
          if (as_json)
            buf << json{{"matrix", p.key()}, {"seed", format_weight(s.seed)}, {"passed", s.passed}, {"detail", s.detail}}
                       .dump()
                << '\n';
          else
            buf << (s.passed ? "PASS " : "FAIL ") << p.key() << "  " << format_weight(s.seed) << "  " << s.detail
                << '\n';
        }
      }
      if (!as_json) buf << checked - failed << '/' << checked << " seeds passed\n";
      if (failed) status = kVerifyFailed;
    }
  } catch (const unknown_pair_error& e) {
    err << "error: " << e.what() << '\n';
    if (!e.nearest().empty()) {
      err << "nearest catalog entries:\n";
      for (const auto& n : e.nearest()) err << "  " << n << '\n';
    }
    return kUsage;
  } catch (const verification_failure& e) {
    err << "verification failed: " << e.what() << '\n';
    return kVerifyFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (!output_path.empty()) {
    std::ofstream f(output_path);
    if (!f) {
      err << "error: cannot write '" << output_path << "'\n";
      return kUsage;
    }
    f << buf.str();
  } else {
    out << buf.str();
  }
  return status;
}

}  // namespace weylbranch::cli

#endif  // WEYLBRANCH_TOOLS_CLI_HPP_
