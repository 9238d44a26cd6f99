// Orbit branching: project every point of a W(L) orbit and regroup the
// images into W(L') orbits with exact multiplicities.

#ifndef WEYLBRANCH_BRANCHING_HPP_
#define WEYLBRANCH_BRANCHING_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lattice.hpp"
#include "orbits.hpp"
#include "projections.hpp"

namespace weylbranch {

struct branching_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BranchTerm {
  Weight weight;              // dominant in the target algebra
  std::int64_t multiplicity;  // positive

  friend bool operator==(const BranchTerm&, const BranchTerm&) = default;
};

// Term order: U_1 labels first, then the simple-component coordinates, both
// descending lexicographic.
inline Coords term_sort_key(const ReductiveAlgebra& a, const Coords& x) {
  const std::size_t ss = a.semisimple_rank();
  Coords key(x.begin() + static_cast<std::ptrdiff_t>(ss), x.end());
  key.insert(key.end(), x.begin(), x.begin() + static_cast<std::ptrdiff_t>(ss));
  return key;
}

inline void sort_terms(std::vector<BranchTerm>& terms) {
  std::sort(terms.begin(), terms.end(), [](const BranchTerm& a, const BranchTerm& b) {
    return term_sort_key(a.weight.algebra(), a.weight.coords()) >
           term_sort_key(b.weight.algebra(), b.weight.coords());
  });
}

struct BranchingRule {
  Weight source_seed;
  ProjectionMatrix projection;
  std::vector<BranchTerm> terms;

  const ReductiveAlgebra& target() const noexcept { return projection.target(); }
  std::int64_t multiplicity_of(const Coords& x) const {
    for (const auto& t : terms)
      if (t.weight.coords() == x) return t.multiplicity;
    return 0;
  }
};

inline std::string format_terms(const std::vector<BranchTerm>& terms) {
  std::string out;
  for (const auto& t : terms) {
    if (!out.empty()) out += " + ";
    if (t.multiplicity != 1) out += std::to_string(t.multiplicity);
    out += format_weight(t.weight);
  }
  return out;
}

inline std::string format_rule(const BranchingRule& r) { return format_terms(r.terms); }

// Reads "(2,0)(5) + 2(2,1)(1)". Terms come back in canonical order with
// repeated weights merged.
inline std::vector<BranchTerm> parse_terms(const ReductiveAlgebra& a, std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == '+' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
      continue;
    }
    cur += ch;
  }
  parts.push_back(cur);
  std::map<Coords, std::int64_t> merged;
  for (auto& part : parts) {
    std::string_view s = part;
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    const auto paren = s.find('(');
    if (paren == std::string_view::npos) throw parse_error("branching term '" + std::string(s) + "' has no weight");
    std::int64_t mult = 1;
    if (paren > 0) {
      const Rational m = Rational::parse(s.substr(0, paren));
      if (!m.is_integer() || m.sign() <= 0)
        throw parse_error("branching term '" + std::string(s) + "' needs a positive integer multiplicity");
      mult = m.num();
    }
    merged[parse_weight(a, s.substr(paren)).coords()] += mult;
  }
  std::vector<BranchTerm> terms;
  for (auto& [x, m] : merged) terms.push_back({Weight(a, x), m});
  sort_terms(terms);
  return terms;
}

// Multiplicity of a target dominant = (number of projected points reducing
// to it) / (its orbit size). A remainder means the matrix is not an orbit
// projection for this pair.
inline BranchingRule branch(const Weight& seed, const ProjectionMatrix& p) {
  if (seed.algebra() != p.source())
    throw projection_error("branch: seed of " + seed.algebra().name() + " given to projection " + p.key());
  require_dominant(seed, "branch");
  const detail::ScaledMatrix m(p.entries());
  const std::int64_t seed_scale = detail::denominator_lcm(seed.coords());
  const std::int64_t scale = detail::checked_mul(seed_scale, m.scale);
  const detail::Components source(seed.algebra()), target(p.target());
  detail::RowCounter counts(m.rows, 0);
  std::vector<std::int64_t> d(m.rows);
  detail::walk_orbit(seed, seed_scale, source, &m, [&](const auto&, const std::vector<std::int64_t>& y) {
    std::copy(y.begin(), y.end(), d.begin());
    target.make_dominant(d.data());
    ++counts[d.data()];
  });
  std::vector<BranchTerm> terms;
  terms.reserve(counts.size());
  counts.for_each([&](std::span<const std::int64_t> d, std::int64_t count) {
    Weight w(p.target(), detail::unscaled(d, scale));
    const auto size = static_cast<std::int64_t>(orbit_size(w));
    if (count % size != 0)
      throw branching_error("branch " + p.key() + " of " + format_weight(seed) + ": " + std::to_string(count) +
                            " projected points reduce to " + format_weight(w) + " whose orbit has " +
                            std::to_string(size) + " points");
    terms.push_back({std::move(w), count / size});
  });
  sort_terms(terms);
  return BranchingRule{seed, p, std::move(terms)};
}

struct VerificationReport {
  bool passed = false;
  std::string detail;
  std::uint64_t source_points = 0;
  std::uint64_t covered_points = 0;  // sum of multiplicity x target orbit size
};

// Rebuilds every target orbit, forms their multiplicity-weighted union and
// compares it point for point with the projected source orbit.
inline VerificationReport verify_branch(const BranchingRule& rule) {
  VerificationReport rep;
  const auto& p = rule.projection;
  if (rule.source_seed.algebra() != p.source() || !is_dominant(rule.source_seed)) {
    rep.detail = "source seed is not a dominant weight of " + p.source().name();
    return rep;
  }
  const detail::ScaledMatrix m(p.entries());
  const std::int64_t seed_scale = detail::denominator_lcm(rule.source_seed.coords());
  const std::int64_t scale = detail::checked_mul(seed_scale, m.scale);
  const detail::Components source(p.source()), target(p.target());
  detail::RowCounter residue(m.rows, static_cast<std::size_t>(orbit_size(rule.source_seed)));
  detail::walk_orbit(rule.source_seed, seed_scale, source, &m, [&](const auto&, const std::vector<std::int64_t>& y) {
    ++residue[y.data()];
    ++rep.source_points;
  });

  for (const auto& t : rule.terms) {
    if (t.weight.algebra() != p.target() || !is_dominant(t.weight)) {
      rep.detail = "term " + format_weight(t.weight) + " is not a dominant weight of " + p.target().name();
      return rep;
    }
    if (t.multiplicity <= 0) {
      rep.detail = "term " + format_weight(t.weight) + " has non-positive multiplicity";
      return rep;
    }
    rep.covered_points += orbit_size(t.weight) * static_cast<std::uint64_t>(t.multiplicity);
  }
  if (rep.covered_points != rep.source_points) {
    rep.detail = "cardinality mismatch: source orbit has " + std::to_string(rep.source_points) +
                 " points, terms cover " + std::to_string(rep.covered_points);
    return rep;
  }

  for (const auto& t : rule.terms) {
    std::optional<std::string> missing;
    const auto visit = [&](const std::vector<std::int64_t>& x, const auto&) {
      if (missing) return;
      std::int64_t* c = residue.find(x.data());
      if (!c || *c < t.multiplicity)
        missing = "multiset mismatch: " + format_coords(p.target(), detail::unscaled(x, scale)) + " occurs " +
                  std::to_string(c ? *c : 0) + " times among the projected points, term " +
                  format_weight(t.weight) + " needs " + std::to_string(t.multiplicity);
      else
        *c -= t.multiplicity;
    };
    if (!detail::walk_orbit(t.weight, scale, target, nullptr, visit))
      missing = "multiset mismatch: " + format_weight(t.weight) + " occurs 0 times among the projected points, term " +
                format_weight(t.weight) + " needs " + std::to_string(t.multiplicity);
    if (missing) {
      rep.detail = *missing;
      return rep;
    }
  }
  std::optional<std::string> left;
  residue.for_each([&](std::span<const std::int64_t> x, std::int64_t c) {
    if (c != 0 && !left)
      left = "multiset mismatch: projected point " + format_coords(p.target(), detail::unscaled(x, scale)) +
             " left unassigned";
  });
  if (left) {
    rep.detail = *left;
    return rep;
  }
  rep.passed = true;
  rep.detail = "ok";
  return rep;
}

struct SeedValidation {
  Weight seed;
  bool passed;
  std::string detail;
};

struct ValidationReport {
  std::vector<SeedValidation> seeds;
  bool passed() const {
    return std::all_of(seeds.begin(), seeds.end(), [](const SeedValidation& s) { return s.passed; });
  }
};

// Failures are reported per seed, never thrown.
inline ValidationReport validate_projection(const ProjectionMatrix& p, const std::vector<Weight>& seeds) {
  ValidationReport out;
  for (const auto& seed : seeds) {
    try {
      const auto rule = branch(seed, p);
      const auto rep = verify_branch(rule);
      out.seeds.push_back({seed, rep.passed, rep.passed ? format_rule(rule) : rep.detail});
    } catch (const std::exception& e) {
      out.seeds.push_back({seed, false, e.what()});
    }
  }
  return out;
}

// (1,0,...,0), (0,...,0,1), (1,0,...,0,1), (1,1,...,1) in the source algebra.
inline std::vector<Weight> standard_seeds(const ReductiveAlgebra& a) {
  const std::size_t n = a.dimension();
  std::vector<Coords> raw(4, Coords(n));
  raw[0][0] = 1;
  raw[1][n - 1] = 1;
  raw[2][0] = 1;
  raw[2][n - 1] = 1;
  for (auto& v : raw[3]) v = 1;
  std::vector<Weight> out;
  for (auto& r : raw) {
    Weight w(a, r);
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Signed multisets and the experimental inverse direction

struct SignedPointMultiset {
  ReductiveAlgebra algebra;
  std::map<Coords, std::int64_t, DescendingLex> counts;  // zero counts are erased

  void add(const Coords& x, std::int64_t c) {
    if (x.size() != algebra.dimension()) throw weight_error("multiset point has wrong dimension");
    auto& v = counts[x];
    v += c;
    if (v == 0) counts.erase(x);
  }
  void add_orbit(const Orbit& o, std::int64_t c) {
    for (const auto& x : o.points) add(x, c);
  }
  std::int64_t total() const {
    std::int64_t t = 0;
    for (const auto& [x, c] : counts) t += c;
    return t;
  }
  friend bool operator==(const SignedPointMultiset&, const SignedPointMultiset&) = default;
};

// Images of the points of the orbit of `seed` under an inverted projection.
// No orbit structure is claimed for the result.
inline SignedPointMultiset pullback_points(const ProjectionMatrix& p_inv, const Weight& seed) {
  if (p_inv.provenance() != Provenance::inverted)
    throw projection_error("pullback_points: expected an inverted projection, got provenance " +
                           to_string(p_inv.provenance()));
  if (seed.algebra() != p_inv.source())
    throw projection_error("pullback_points: seed of " + seed.algebra().name() + " does not match " + p_inv.key());
  SignedPointMultiset out{p_inv.target(), {}};
  for (const auto& x : generate_orbit(seed).points) out.add(p_inv.apply(std::span<const Rational>(x)), 1);
  return out;
}

// a >= b in the dominance order: a - b is a nonnegative rational combination
// of simple roots, and the U_1 coordinates agree.
inline bool dominates(const ReductiveAlgebra& alg, const Coords& a, const Coords& b) {
  const std::size_t ss = alg.semisimple_rank();
  for (std::size_t i = ss; i < alg.dimension(); ++i)
    if (a[i] != b[i]) return false;
  for (std::size_t ci = 0; ci < alg.components().size(); ++ci) {
    const auto& c = alg.components()[ci];
    const auto inv = *inverse(to_rational(cartan_matrix(c)));
    const std::size_t off = alg.offset(ci);
    const auto r = static_cast<std::size_t>(c.rank());
    // Root coordinates of (a - b): row vector (a - b) C^{-1}.
    for (std::size_t k = 0; k < r; ++k) {
      Rational coef = 0;
      for (std::size_t j = 0; j < r; ++j) coef += (a[off + j] - b[off + j]) * inv(j, k);
      if (coef.sign() < 0) return false;
    }
  }
  return true;
}

struct SignedOrbitSum {
  ReductiveAlgebra algebra;
  std::vector<std::pair<Weight, std::int64_t>> terms;  // distinct dominant weights, nonzero coefficients

  SignedPointMultiset expand() const {
    SignedPointMultiset m{algebra, {}};
    for (const auto& [w, c] : terms) m.add_orbit(generate_orbit(w), c);
    return m;
  }
};

struct decomposition_error : std::runtime_error {
  decomposition_error(const std::string& msg, Weight point) : std::runtime_error(msg), point_(std::move(point)) {}
  const Weight& point() const noexcept { return point_; }

private:
  Weight point_;
};

// Greedy peel: take a maximal point of the residue, which must be dominant,
// and subtract its orbit with the residue's coefficient. Points of maximal
// height are maximal in the dominance order, and in a genuine virtual orbit
// sum every maximal point is dominant.
inline SignedOrbitSum signed_orbit_decomposition(const SignedPointMultiset& input) {
  const auto& alg = input.algebra;
  SignedPointMultiset residue{alg, {}};
  for (const auto& [x, c] : input.counts)
    if (c != 0) residue.counts.emplace(x, c);
  std::map<Coords, Rational> heights;
  auto height_of = [&](const Coords& x) -> const Rational& {
    auto it = heights.find(x);
    if (it == heights.end()) it = heights.emplace(x, height(alg, x)).first;
    return it->second;
  };

  SignedOrbitSum out{alg, {}};
  while (!residue.counts.empty()) {
    std::optional<Rational> top;
    for (const auto& [x, c] : residue.counts) {
      const Rational& h = height_of(x);
      if (!top || h > *top) top = h;
    }
    // Candidates are visited in descending lexicographic order.
    const Coords* chosen = nullptr;
    for (const auto& [x, c] : residue.counts) {
      if (height_of(x) != *top) continue;
      if (!is_dominant(alg, x)) {
        throw decomposition_error("maximal residue point " + format_coords(alg, x) + " (coefficient " +
                                      std::to_string(c) +
                                      ") is not dominant; the input is not an integer combination of orbits",
                                  Weight(alg, x));
      }
      if (!chosen) chosen = &x;
    }
    Weight mu(alg, *chosen);
    const std::int64_t coef = residue.counts.at(*chosen);
    residue.add_orbit(generate_orbit(mu), -coef);
    out.terms.emplace_back(std::move(mu), coef);
  }
  return out;
}

}  // namespace weylbranch

#endif  // WEYLBRANCH_BRANCHING_HPP_
