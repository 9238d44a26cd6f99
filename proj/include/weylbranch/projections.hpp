// Projection matrices from an algebra's omega coordinates to those of a
// subalgebra: the fixed-rank catalog (A_n for n <= 8), the general-rank
// series, derivation from associated weight pairs, composition and inversion.

#ifndef WEYLBRANCH_PROJECTIONS_HPP_
#define WEYLBRANCH_PROJECTIONS_HPP_

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "matrix.hpp"
#include "orbits.hpp"

namespace weylbranch {

enum class Provenance { catalog, series, derived, composed, inverted, subjoined };

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::catalog: return "catalog";
    case Provenance::series: return "series";
    case Provenance::derived: return "derived";
    case Provenance::composed: return "composed";
    case Provenance::inverted: return "inverted";
    case Provenance::subjoined: return "subjoined";
  }
  return "?";
}

inline Provenance parse_provenance(std::string_view s) {
  for (auto p : {Provenance::catalog, Provenance::series, Provenance::derived, Provenance::composed,
                 Provenance::inverted, Provenance::subjoined})
    if (to_string(p) == s) return p;
  throw parse_error("unknown provenance '" + std::string(s) + "'");
}

struct projection_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Maps column vectors of source coordinates to target coordinates:
// rows = target dimension, columns = source dimension.
class ProjectionMatrix {
public:
  ProjectionMatrix(ReductiveAlgebra source, ReductiveAlgebra target, RationalMatrix entries,
                   Provenance provenance, std::string variant = {})
      : source_(std::move(source)),
        target_(std::move(target)),
        entries_(std::move(entries)),
        provenance_(provenance),
        variant_(std::move(variant)) {
    if (entries_.rows() != target_.dimension() || entries_.cols() != source_.dimension())
      throw projection_error("projection " + source_.name() + " -> " + target_.name() + " must be " +
                             std::to_string(target_.dimension()) + "x" + std::to_string(source_.dimension()) +
                             ", got " + std::to_string(entries_.rows()) + "x" +
                             std::to_string(entries_.cols()));
  }

  const ReductiveAlgebra& source() const noexcept { return source_; }
  const ReductiveAlgebra& target() const noexcept { return target_; }
  const RationalMatrix& entries() const noexcept { return entries_; }
  Provenance provenance() const noexcept { return provenance_; }
  // Distinguishes several catalog matrices for one (source, target) pair.
  const std::string& variant() const noexcept { return variant_; }

  Coords apply(std::span<const Rational> x) const { return entries_.apply(x); }
  Weight apply(const Weight& w) const {
    if (w.algebra() != source_)
      throw projection_error("weight of " + w.algebra().name() + " given to projection from " + source_.name());
    return Weight(target_, apply(std::span<const Rational>(w.coords())));
  }

  std::string key() const {
    return source_.name() + " -> " + target_.name() + (variant_.empty() ? "" : " [" + variant_ + "]");
  }

  friend bool operator==(const ProjectionMatrix&, const ProjectionMatrix&) = default;

private:
  ReductiveAlgebra source_;
  ReductiveAlgebra target_;
  RationalMatrix entries_;
  Provenance provenance_;
  std::string variant_;
};

inline RationalMatrix integer_matrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  RationalMatrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (auto v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

// ---------------------------------------------------------------------------
// General-rank series

// A_n -> A_{n-k-1} x A_k x U_1. Rows: identity on the first n-k-1
// coordinates, identity on the last k coordinates, then the U_1 row
//   j(k+1) for columns j = 1..n-k,  (n-j+1)(n-k) ... for the last k columns.
// k = 0 gives A_n -> A_{n-1} x U_1 with U_1 row (1, 2, ..., n).
inline ProjectionMatrix series_equidimensional(int n, int k) {
  if (n < 1 || k < 0 || k > (n - 1) / 2)
    throw projection_error("series_equidimensional: need n >= 1 and 0 <= k <= (n-1)/2, got n=" +
                           std::to_string(n) + " k=" + std::to_string(k));
  const int m = n - k - 1;
  std::vector<SimpleComponent> comps;
  if (m > 0) comps.push_back(A(m));
  if (k > 0) comps.push_back(A(k));
  ReductiveAlgebra target(std::move(comps), 1);
  const auto un = static_cast<std::size_t>(n);
  RationalMatrix p(target.dimension(), un);
  std::size_t row = 0;
  for (int i = 0; i < m; ++i) p(row++, static_cast<std::size_t>(i)) = 1;
  for (int i = 0; i < k; ++i) p(row++, static_cast<std::size_t>(n - k + i)) = 1;
  for (int j = 1; j <= n; ++j)
    p(row, static_cast<std::size_t>(j - 1)) = j <= n - k ? j * (k + 1) : (n - j + 1) * (n - k);
  return ProjectionMatrix(A(n), std::move(target), std::move(p), Provenance::series);
}

// Odd n >= 3: A_n -> A_{n-2} x A_1 x U_1 with the U_1 row halved so the last
// entry is (n-1)/2. U_1 labels are half those of series_equidimensional(n, 1).
inline ProjectionMatrix series_equidimensional_halved(int n) {
  if (n < 3 || n % 2 == 0)
    throw projection_error("series_equidimensional_halved: need odd n >= 3, got " + std::to_string(n));
  auto full = series_equidimensional(n, 1);
  RationalMatrix p = full.entries();
  const std::size_t last = p.rows() - 1;
  for (std::size_t j = 0; j < p.cols(); ++j) p(last, j) /= 2;
  return ProjectionMatrix(full.source(), full.target(), std::move(p), Provenance::series);
}

namespace detail {

// Rows 1..n-1 of the B/C/D series: units at columns i and N+1-i.
inline RationalMatrix folded_rows(int n, int source_rank) {
  RationalMatrix p(static_cast<std::size_t>(n), static_cast<std::size_t>(source_rank));
  for (int i = 0; i + 1 < n; ++i) {
    p(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = 1;
    p(static_cast<std::size_t>(i), static_cast<std::size_t>(source_rank - 1 - i)) = 1;
  }
  return p;
}

}  // namespace detail

inline ProjectionMatrix series_A2n_Bn(int n) {
  if (n < 3) throw projection_error("series_A2n_Bn: need n >= 3, got " + std::to_string(n));
  auto p = detail::folded_rows(n, 2 * n);
  const auto last = static_cast<std::size_t>(n - 1);
  p(last, last) = 2;
  p(last, last + 1) = 2;
  return ProjectionMatrix(A(2 * n), B(n), std::move(p), Provenance::series);
}

inline ProjectionMatrix series_A2n1_Cn(int n) {
  if (n < 2) throw projection_error("series_A2n1_Cn: need n >= 2, got " + std::to_string(n));
  auto p = detail::folded_rows(n, 2 * n - 1);
  const auto last = static_cast<std::size_t>(n - 1);
  p(last, last) = 1;
  return ProjectionMatrix(A(2 * n - 1), C(n), std::move(p), Provenance::series);
}

inline ProjectionMatrix series_A2n1_Dn(int n) {
  if (n < 4) throw projection_error("series_A2n1_Dn: need n >= 4, got " + std::to_string(n));
  auto p = detail::folded_rows(n, 2 * n - 1);
  const auto last = static_cast<std::size_t>(n - 1);
  p(last, last - 1) = 1;
  p(last, last) = 2;
  p(last, last + 1) = 1;
  return ProjectionMatrix(A(2 * n - 1), D(n), std::move(p), Provenance::series);
}

// ---------------------------------------------------------------------------
// Catalog

inline const std::string kUnifiedVariant = "unified";
inline const std::string kSubjoinedVariant = "subjoined";

namespace detail {

inline std::vector<ProjectionMatrix> build_catalog() {
  std::vector<ProjectionMatrix> out;
  auto fixed = [&](std::string_view src, std::string_view tgt, RationalMatrix m,
                   Provenance prov = Provenance::catalog, std::string variant = {}) {
    out.emplace_back(parse_algebra(src), parse_algebra(tgt), std::move(m), prov, std::move(variant));
  };

  // Equal-rank subalgebras A_{n-k-1} x A_k x U_1.
  fixed("A1", "U1", integer_matrix({{1}}));
  fixed("A2", "A1xU1", integer_matrix({{1, 0}, {1, 2}}));
  fixed("A3", "A2xU1", integer_matrix({{1, 0, 0}, {0, 1, 0}, {1, 2, 3}}));
  fixed("A3", "A1xA1xU1", integer_matrix({{1, 0, 0}, {0, 0, 1}, {1, 2, 1}}));
  out.push_back(series_equidimensional(3, 1));
  out.back() = ProjectionMatrix(out.back().source(), out.back().target(), out.back().entries(),
                                Provenance::series, kUnifiedVariant);
  fixed("A4", "A2xA1xU1", integer_matrix({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {2, 4, 6, 3}}));
  out.push_back(series_equidimensional(4, 0));
  for (int n = 5; n <= 8; ++n) {
    for (int k = 0; k <= (n - 1) / 2; ++k) {
      if (k == 1 && n % 2 == 1) {
        out.push_back(series_equidimensional_halved(n));
        auto full = series_equidimensional(n, 1);
        out.emplace_back(full.source(), full.target(), full.entries(), Provenance::series, kUnifiedVariant);
      } else {
        out.push_back(series_equidimensional(n, k));
      }
    }
  }

  // Maximal semisimple subalgebras.
  fixed("A2", "A1", integer_matrix({{2, 2}}));
  fixed("A3", "C2", integer_matrix({{1, 0, 1}, {0, 1, 0}}));
  fixed("A3", "A1xA1", integer_matrix({{1, 0, 1}, {1, 2, 1}}));
  fixed("A4", "C2", integer_matrix({{0, 2, 2, 0}, {1, 0, 0, 1}}));
  fixed("A5", "A3", integer_matrix({{0, 1, 0, 1, 0}, {1, 0, 0, 0, 1}, {0, 1, 2, 1, 0}}));
  fixed("A5", "C3", integer_matrix({{1, 0, 0, 0, 1}, {0, 1, 0, 1, 0}, {0, 0, 1, 0, 0}}));
  fixed("A5", "A2", integer_matrix({{0, 1, 3, 2, 2}, {2, 2, 0, 1, 0}}));
  fixed("A5", "A1xA2", integer_matrix({{1, 0, 1, 0, 1}, {1, 2, 1, 0, 0}, {0, 0, 1, 2, 1}}));
  fixed("A6", "B3", integer_matrix({{1, 0, 0, 0, 0, 1}, {0, 1, 0, 0, 1, 0}, {0, 0, 2, 2, 0, 0}}));
  fixed("A7", "C4", integer_matrix({{1, 0, 0, 0, 0, 0, 1},
                                    {0, 1, 0, 0, 0, 1, 0},
                                    {0, 0, 1, 0, 1, 0, 0},
                                    {0, 0, 0, 1, 0, 0, 0}}));
  fixed("A7", "D4", integer_matrix({{1, 0, 0, 0, 0, 0, 1},
                                    {0, 1, 0, 0, 0, 1, 0},
                                    {0, 0, 1, 0, 1, 0, 0},
                                    {0, 0, 1, 2, 1, 0, 0}}));
  fixed("A7", "A1xA3", integer_matrix({{1, 0, 1, 0, 1, 0, 1},
                                       {1, 2, 1, 0, 0, 0, 0},
                                       {0, 0, 1, 2, 1, 0, 0},
                                       {0, 0, 0, 0, 1, 2, 1}}));
  fixed("A8", "B4", integer_matrix({{1, 0, 0, 0, 0, 0, 0, 1},
                                    {0, 1, 0, 0, 0, 0, 1, 0},
                                    {0, 0, 1, 0, 0, 1, 0, 0},
                                    {0, 0, 0, 2, 2, 0, 0, 0}}));
  fixed("A8", "A2xA2", integer_matrix({{1, 0, 1, 1, 0, 1, 1, 0},
                                       {0, 1, 1, 0, 1, 1, 0, 1},
                                       {1, 2, 1, 2, 1, 1, 0, 0},
                                       {0, 0, 1, 1, 2, 1, 2, 1}}));

  // Subjoining: carries the A_3 orbit (1,0,0) onto the C_2 orbit (0,1)
  // without an algebra homomorphism behind it.
  fixed("A3", "C2", integer_matrix({{0, 2, 0}, {1, 0, 1}}), Provenance::subjoined, kSubjoinedVariant);
  return out;
}

}  // namespace detail

// Every stored entry, in a fixed order. Entries with provenance subjoined are
// not maximal subalgebra relations.
inline const std::vector<ProjectionMatrix>& catalog_entries() {
  static const std::vector<ProjectionMatrix> entries = detail::build_catalog();
  return entries;
}

inline bool is_maximal_entry(const ProjectionMatrix& p) { return p.provenance() != Provenance::subjoined; }

struct unknown_pair_error : std::invalid_argument {
  unknown_pair_error(const std::string& msg, std::vector<std::string> nearest)
      : std::invalid_argument(msg), nearest_(std::move(nearest)) {}
  const std::vector<std::string>& nearest() const noexcept { return nearest_; }

private:
  std::vector<std::string> nearest_;
};

namespace detail {

// Recognizes general-series requests beyond the stored table.
inline std::optional<ProjectionMatrix> series_for(const ReductiveAlgebra& source, const ReductiveAlgebra& target,
                                                  const std::string& variant) {
  if (!source.is_pure_a()) return std::nullopt;
  const int n = source.components()[0].rank();
  const auto& tc = target.components();
  if (target.u1_count() == 0 && tc.size() == 1 && variant.empty()) {
    const int r = tc[0].rank();
    switch (tc[0].family()) {
      case Family::B:
        if (n == 2 * r) return series_A2n_Bn(r);
        break;
      case Family::C:
        if (n == 2 * r - 1) return series_A2n1_Cn(r);
        break;
      case Family::D:
        if (n == 2 * r - 1) return series_A2n1_Dn(r);
        break;
      default: break;
    }
    return std::nullopt;
  }
  if (target.u1_count() != 1 || tc.size() > 2) return std::nullopt;
  for (const auto& c : tc)
    if (c.family() != Family::A) return std::nullopt;
  const int m = tc.empty() ? 0 : tc[0].rank();
  const int k = tc.size() == 2 ? tc[1].rank() : 0;
  if (m + k + 1 != n || k > m) return std::nullopt;
  if (k == 1 && n % 2 == 1 && variant.empty()) return series_equidimensional_halved(n);
  if (!variant.empty() && !(variant == kUnifiedVariant && k == 1 && n % 2 == 1)) return std::nullopt;
  auto p = series_equidimensional(n, k);
  return ProjectionMatrix(p.source(), p.target(), p.entries(), Provenance::series, variant);
}

}  // namespace detail

inline ProjectionMatrix catalog(const ReductiveAlgebra& source, const ReductiveAlgebra& target,
                                const std::string& variant = {}) {
  for (const auto& e : catalog_entries())
    if (e.source() == source && e.target() == target && e.variant() == variant) return e;
  if (auto s = detail::series_for(source, target, variant)) return *s;

  std::vector<std::string> nearest;
  for (const auto& e : catalog_entries())
    if (e.source() == source) nearest.push_back(e.key());
  if (nearest.empty())
    for (const auto& e : catalog_entries())
      if (e.target() == target) nearest.push_back(e.key());
  std::string msg = "no projection matrix for " + source.name() + " -> " + target.name();
  if (!variant.empty()) msg += " [" + variant + "]";
  throw unknown_pair_error(msg, std::move(nearest));
}

// ---------------------------------------------------------------------------
// Derivation, composition, inversion

// Solves P v_i = w_i. A spanning subset of the source vectors (first
// independent ones in input order) fixes P; every other pair is then checked.
inline ProjectionMatrix derive_projection(const ReductiveAlgebra& source, const ReductiveAlgebra& target,
                                          const std::vector<std::pair<Weight, Weight>>& pairs) {
  const std::size_t n = source.dimension();
  const std::size_t m = target.dimension();
  for (const auto& [v, w] : pairs)
    if (v.algebra() != source || w.algebra() != target)
      throw projection_error("derive_projection: pair (" + format_weight(v) + ", " + format_weight(w) +
                             ") does not belong to " + source.name() + " -> " + target.name());
  RationalMatrix vs(n, pairs.size());
  for (std::size_t j = 0; j < pairs.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) vs(i, j) = pairs[j].first[i];
  const auto basis = independent_columns(vs);
  if (basis.size() < n)
    throw projection_error("derive_projection: source weights span only " + std::to_string(basis.size()) +
                           " of " + std::to_string(n) + " dimensions");

  // P V = W  <=>  V^T P^T = W^T on the chosen basis.
  RationalMatrix vt(n, n), wt(n, m);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& [v, w] = pairs[basis[r]];
    for (std::size_t i = 0; i < n; ++i) vt(r, i) = v[i];
    for (std::size_t i = 0; i < m; ++i) wt(r, i) = w[i];
  }
  auto pt = solve(vt, wt);
  if (!pt) throw std::logic_error("derive_projection: independent basis turned out singular");
  ProjectionMatrix p(source, target, pt->transpose(), Provenance::derived);
  for (const auto& [v, w] : pairs)
    if (p.apply(std::span<const Rational>(v.coords())) != w.coords())
      throw projection_error("derive_projection: inconsistent pairs, " + format_weight(v) + " maps to " +
                             format_coords(target, p.apply(std::span<const Rational>(v.coords()))) +
                             " instead of " + format_weight(w));
  return p;
}

// Association order: descending height, ties by descending lexicographic
// coordinates. Best effort only; feed the result through validation.
inline std::vector<std::pair<Weight, Weight>> auto_associate(const Orbit& source_orbit,
                                                             const std::vector<Weight>& target_points) {
  if (source_orbit.size() != target_points.size())
    throw projection_error("auto_associate: " + std::to_string(source_orbit.size()) + " source points vs " +
                           std::to_string(target_points.size()) + " target points");
  auto order = [](const ReductiveAlgebra& a, std::vector<Coords> pts) {
    std::vector<std::pair<Rational, Coords>> keyed;
    keyed.reserve(pts.size());
    for (auto& p : pts) keyed.emplace_back(height(a, p), std::move(p));
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first > y.first;
      return x.second > y.second;
    });
    return keyed;
  };
  const auto& sa = source_orbit.algebra();
  std::vector<Coords> tp;
  for (const auto& w : target_points) tp.push_back(w.coords());
  const auto& ta = target_points.empty() ? sa : target_points.front().algebra();
  auto s = order(sa, source_orbit.points);
  auto t = order(ta, std::move(tp));
  std::vector<std::pair<Weight, Weight>> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    out.emplace_back(Weight(sa, std::move(s[i].second)), Weight(ta, std::move(t[i].second)));
  return out;
}

// outer . inner, i.e. apply inner first.
inline ProjectionMatrix compose_projection(const ProjectionMatrix& outer, const ProjectionMatrix& inner) {
  if (inner.target() != outer.source())
    throw projection_error("compose_projection: inner target " + inner.target().name() +
                           " differs from outer source " + outer.source().name());
  return ProjectionMatrix(inner.source(), outer.target(), outer.entries() * inner.entries(), Provenance::composed);
}

inline ProjectionMatrix invert_projection(const ProjectionMatrix& p) {
  if (!p.entries().square())
    throw projection_error("invert_projection: " + p.key() + " is not square");
  auto inv = inverse(p.entries());
  if (!inv) throw projection_error("invert_projection: " + p.key() + " is singular");
  return ProjectionMatrix(p.target(), p.source(), std::move(*inv), Provenance::inverted);
}

// Direct sum with the identity on `extra` further U_1 coordinates, appended
// to both source and target.
inline ProjectionMatrix extend_with_u1(const ProjectionMatrix& p, int extra) {
  ReductiveAlgebra src(p.source().components(), p.source().u1_count() + extra);
  ReductiveAlgebra tgt(p.target().components(), p.target().u1_count() + extra);
  RationalMatrix m(tgt.dimension(), src.dimension());
  for (std::size_t i = 0; i < p.entries().rows(); ++i)
    for (std::size_t j = 0; j < p.entries().cols(); ++j) m(i, j) = p.entries()(i, j);
  for (int e = 0; e < extra; ++e)
    m(p.entries().rows() + static_cast<std::size_t>(e), p.entries().cols() + static_cast<std::size_t>(e)) = 1;
  return ProjectionMatrix(std::move(src), std::move(tgt), std::move(m), p.provenance(), p.variant());
}

}  // namespace weylbranch

#endif  // WEYLBRANCH_PROJECTIONS_HPP_
