// Weights in the omega basis and their Weyl group orbits.

#ifndef WEYLBRANCH_ORBITS_HPP_
#define WEYLBRANCH_ORBITS_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "rational.hpp"

namespace weylbranch {

using Coords = std::vector<Rational>;

struct CoordsHash {
  std::size_t operator()(const Coords& c) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const auto& v : c) h = (h ^ std::hash<Rational>{}(v)) * 0x100000001b3ULL;
    return h;
  }
};

// Canonical order for points and terms: descending lexicographic.
struct DescendingLex {
  bool operator()(const Coords& a, const Coords& b) const { return b < a; }
};

struct weight_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class Weight {
public:
  Weight(ReductiveAlgebra algebra, Coords coords)
      : algebra_(std::move(algebra)), coords_(std::move(coords)) {
    if (coords_.size() != algebra_.dimension())
      throw weight_error("weight has " + std::to_string(coords_.size()) +
                         " coordinates but " + algebra_.name() + " needs " +
                         std::to_string(algebra_.dimension()));
  }

  const ReductiveAlgebra& algebra() const noexcept { return algebra_; }
  const Coords& coords() const noexcept { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }

  std::span<const Rational> component(std::size_t i) const {
    return std::span<const Rational>(coords_).subspan(
        algebra_.offset(i), static_cast<std::size_t>(algebra_.components()[i].rank()));
  }
  std::span<const Rational> u1() const {
    return std::span<const Rational>(coords_).subspan(algebra_.semisimple_rank());
  }

  friend bool operator==(const Weight&, const Weight&) = default;

private:
  ReductiveAlgebra algebra_;
  Coords coords_;
};

inline Weight zero_weight(const ReductiveAlgebra& a) { return Weight(a, Coords(a.dimension())); }

inline bool is_dominant(const ReductiveAlgebra& a, std::span<const Rational> coords) {
  const std::size_t n = a.semisimple_rank();
  for (std::size_t i = 0; i < n; ++i)
    if (coords[i].sign() < 0) return false;
  return true;
}
inline bool is_dominant(const Weight& w) { return is_dominant(w.algebra(), w.coords()); }

namespace detail {

// In-place r_i on one component's coordinates: x <- x - x_i * (row i of C).
inline void reflect(std::span<Rational> x, const CartanMatrix& cm, std::size_t i) {
  const Rational xi = x[i];
  if (xi.sign() == 0) return;
  const auto row = cm.row(i);
  for (std::size_t j = 0; j < x.size(); ++j)
    if (row[j] != 0) x[j] -= xi * Rational(row[j]);
}

// Lowest-indexed negative coordinate is reflected until none remain. Each
// step raises the point by a positive multiple of a simple root.
inline void make_dominant(std::span<Rational> x, const CartanMatrix& cm) {
  while (true) {
    std::size_t i = 0;
    while (i < x.size() && x[i].sign() >= 0) ++i;
    if (i == x.size()) return;
    reflect(x, cm, i);
  }
}

// Orbit of a dominant point of one simple component. Every non-dominant
// point nu has one parent, r_j nu with j its lowest negative coordinate
// (the step make_dominant takes). Walking the parent tree downwards visits
// each point exactly once, so no deduplication is needed: mu spawns
// nu = r_i mu iff mu_i > 0 and nu has no negative coordinate before i.
inline std::vector<Coords> simple_orbit(const CartanMatrix& cm, const Coords& seed) {
  std::vector<Coords> all{seed};
  const std::size_t n = seed.size();
  for (std::size_t k = 0; k < all.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (all[k][i].sign() <= 0) continue;
      Coords y = all[k];
      reflect(y, cm, i);
      bool first_negative = true;
      for (std::size_t j = 0; j < i && first_negative; ++j) first_negative = y[j].sign() >= 0;
      if (first_negative) all.push_back(std::move(y));
    }
  }
  return all;
}

}  // namespace detail

inline void require_component(const ReductiveAlgebra& a, std::size_t component, std::size_t node) {
  if (component >= a.components().size())
    throw weight_error("component index " + std::to_string(component) + " is not a simple component of " +
                       a.name() + " (U1 coordinates have no reflections)");
  if (node >= static_cast<std::size_t>(a.components()[component].rank()))
    throw weight_error("node index " + std::to_string(node) + " out of range for " +
                       a.components()[component].name());
}

// Reflection at simple root `node` (0-based) of simple component `component`.
inline Weight apply_reflection(const Weight& w, std::size_t component, std::size_t node) {
  require_component(w.algebra(), component, node);
  Coords x = w.coords();
  const auto& c = w.algebra().components()[component];
  detail::reflect(std::span<Rational>(x).subspan(w.algebra().offset(component),
                                                 static_cast<std::size_t>(c.rank())),
                  cartan_matrix(c), node);
  return Weight(w.algebra(), std::move(x));
}

// Cached Cartan matrices for every simple component of an algebra.
class CartanSet {
public:
  explicit CartanSet(const ReductiveAlgebra& a) : algebra_(a) {
    for (const auto& c : a.components()) matrices_.push_back(cartan_matrix(c));
  }
  const ReductiveAlgebra& algebra() const noexcept { return algebra_; }
  const CartanMatrix& operator[](std::size_t i) const { return matrices_[i]; }
  std::size_t size() const noexcept { return matrices_.size(); }

  void make_dominant(Coords& x) const {
    std::size_t off = 0;
    for (std::size_t i = 0; i < matrices_.size(); ++i) {
      const std::size_t r = matrices_[i].rows();
      detail::make_dominant(std::span<Rational>(x).subspan(off, r), matrices_[i]);
      off += r;
    }
  }

private:
  ReductiveAlgebra algebra_;
  std::vector<CartanMatrix> matrices_;
};

inline Weight to_dominant(const Weight& w) {
  Coords x = w.coords();
  CartanSet(w.algebra()).make_dominant(x);
  return Weight(w.algebra(), std::move(x));
}

struct Orbit {
  Weight seed;
  std::vector<Coords> points;  // distinct, descending lexicographic

  const ReductiveAlgebra& algebra() const noexcept { return seed.algebra(); }
  std::size_t size() const noexcept { return points.size(); }
  bool contains(const Coords& x) const {
    return std::binary_search(points.begin(), points.end(), x, DescendingLex{});
  }
};

inline void require_dominant(const Weight& w, const char* what) {
  if (!is_dominant(w))
    throw weight_error(std::string(what) + ": seed is not dominant (negative simple-component coordinate)");
}

namespace detail {

// Cartesian product of the component orbits; U_1 coordinates stay fixed.
// Each part is sorted, so the product is already in descending
// lexicographic order.
inline std::vector<Coords> sorted_orbit_points(const Weight& seed) {
  const auto& a = seed.algebra();
  const auto u = seed.u1();
  std::vector<std::vector<Coords>> parts;
  for (std::size_t i = 0; i < a.components().size(); ++i) {
    const auto s = seed.component(i);
    parts.push_back(simple_orbit(cartan_matrix(a.components()[i]), Coords(s.begin(), s.end())));
    std::sort(parts.back().begin(), parts.back().end(), DescendingLex{});
  }
  if (parts.size() == 1 && u.empty()) return std::move(parts.front());
  std::vector<Coords> points{Coords{}};
  for (const auto& part : parts) {
    std::vector<Coords> grown;
    grown.reserve(points.size() * part.size());
    for (const auto& head : points)
      for (const auto& tail : part) {
        Coords x;
        x.reserve(a.dimension());
        x.insert(x.end(), head.begin(), head.end());
        x.insert(x.end(), tail.begin(), tail.end());
        grown.push_back(std::move(x));
      }
    points = std::move(grown);
  }
  for (auto& x : points) x.insert(x.end(), u.begin(), u.end());
  return points;
}

}  // namespace detail

inline Orbit generate_orbit(const Weight& seed) {
  require_dominant(seed, "generate_orbit");
  return Orbit{seed, detail::sorted_orbit_points(seed)};
}

namespace detail {

// Order of the parabolic subgroup generated by reflections at the zero
// coordinates of a dominant point of one simple component. The zero nodes
// induce a subdiagram; each connected piece is A_k, B_k/C_k (contains a
// double bond) or D_k (contains a trivalent node).
inline std::uint64_t stabilizer_order(const SimpleComponent& c, std::span<const Rational> x) {
  const auto cm = cartan_matrix(c);
  const std::size_t n = x.size();
  std::vector<bool> zero(n), seen(n);
  for (std::size_t i = 0; i < n; ++i) zero[i] = x[i].sign() == 0;
  std::uint64_t order = 1;
  for (std::size_t s = 0; s < n; ++s) {
    if (!zero[s] || seen[s]) continue;
    std::vector<std::size_t> piece{s};
    seen[s] = true;
    for (std::size_t k = 0; k < piece.size(); ++k)
      for (std::size_t j = 0; j < n; ++j)
        if (zero[j] && !seen[j] && cm(piece[k], j) != 0) {
          seen[j] = true;
          piece.push_back(j);
        }
    const int k = static_cast<int>(piece.size());
    bool double_bond = false, trivalent = false;
    for (auto u : piece) {
      int degree = 0;
      for (auto v : piece) {
        if (u == v || cm(u, v) == 0) continue;
        ++degree;
        if (cm(u, v) == -2) double_bond = true;
      }
      trivalent = trivalent || degree == 3;
    }
    if (double_bond)
      order = checked_mul(order, checked_mul(pow2(k), factorial(k)));
    else if (trivalent)
      order = checked_mul(order, checked_mul(pow2(k - 1), factorial(k)));
    else
      order = checked_mul(order, factorial(k + 1));
  }
  return order;
}

}  // namespace detail

// |W| / |W_seed| per simple component, via the parabolic stabilizer.
inline std::uint64_t orbit_size(const Weight& seed) {
  require_dominant(seed, "orbit_size");
  std::uint64_t size = 1;
  const auto& comps = seed.algebra().components();
  for (std::size_t i = 0; i < comps.size(); ++i)
    size = detail::checked_mul(size, weyl_order(comps[i]) / detail::stabilizer_order(comps[i], seed.component(i)));
  return size;
}

// Cross-check path: count points by explicit enumeration.
inline std::uint64_t orbit_size_by_enumeration(const Weight& seed) {
  return generate_orbit(seed).points.size();
}

// (q_1, ..., q_n) -> (q_n, ..., q_1) for a pure A_n weight.
inline Weight contragredient(const Weight& w) {
  if (!w.algebra().is_pure_a())
    throw weight_error("contragredient is defined here for a single A_n component only, got " +
                       w.algebra().name());
  Coords x(w.coords().rbegin(), w.coords().rend());
  return Weight(w.algebra(), std::move(x));
}

inline Rational squared_norm(const QuadraticForm& q, std::span<const Rational> x) {
  Rational acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].sign() == 0) continue;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j].sign() != 0) acc += x[i] * q(i, j) * x[j];
  }
  return acc;
}

// Sum of simple-root coordinates of the semisimple part, i.e. the value of
// the height functional. U_1 coordinates do not contribute.
inline Rational height(const ReductiveAlgebra& a, std::span<const Rational> coords) {
  Rational h = 0;
  for (std::size_t i = 0; i < a.components().size(); ++i) {
    const auto& c = a.components()[i];
    auto inv = inverse(to_rational(cartan_matrix(c)));
    const std::size_t off = a.offset(i);
    for (std::size_t r = 0; r < inv->rows(); ++r)
      for (std::size_t k = 0; k < inv->cols(); ++k) h += coords[off + r] * (*inv)(r, k);
  }
  return h;
}

// Text form: one parenthesized group per simple component and per U_1
// factor, e.g. "(2,0)(5)".
inline std::string format_coords(const ReductiveAlgebra& a, std::span<const Rational> x) {
  std::string out;
  std::size_t off = 0;
  auto group = [&](std::size_t len) {
    out += '(';
    for (std::size_t k = 0; k < len; ++k) {
      if (k) out += ',';
      out += x[off + k].str();
    }
    out += ')';
    off += len;
  };
  for (const auto& c : a.components()) group(static_cast<std::size_t>(c.rank()));
  for (int i = 0; i < a.u1_count(); ++i) group(1);
  return out;
}

inline std::string format_weight(const Weight& w) { return format_coords(w.algebra(), w.coords()); }

inline std::ostream& operator<<(std::ostream& os, const Weight& w) { return os << format_weight(w); }

// Reads the text form above. A single group holding every coordinate is also
// accepted for multi-factor algebras.
inline Weight parse_weight(const ReductiveAlgebra& a, std::string_view text) {
  std::vector<std::vector<Rational>> groups;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  skip();
  while (pos < text.size()) {
    if (text[pos] != '(') throw parse_error("weight '" + std::string(text) + "': expected '('");
    const auto close = text.find(')', pos);
    if (close == std::string_view::npos)
      throw parse_error("weight '" + std::string(text) + "': missing ')'");
    std::vector<Rational> g;
    std::string_view body = text.substr(pos + 1, close - pos - 1);
    std::size_t start = 0;
    while (true) {
      const auto comma = body.find(',', start);
      g.push_back(Rational::parse(body.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                         : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    groups.push_back(std::move(g));
    pos = close + 1;
    skip();
  }
  if (groups.empty()) throw parse_error("empty weight string");

  Coords flat;
  for (const auto& g : groups) flat.insert(flat.end(), g.begin(), g.end());
  if (groups.size() == 1) return Weight(a, std::move(flat));

  const std::size_t expected = a.components().size() + static_cast<std::size_t>(a.u1_count());
  if (groups.size() != expected)
    throw parse_error("weight '" + std::string(text) + "' has " + std::to_string(groups.size()) +
                      " groups but " + a.name() + " has " + std::to_string(expected) + " factors");
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const std::size_t want =
        i < a.components().size() ? static_cast<std::size_t>(a.components()[i].rank()) : 1;
    if (groups[i].size() != want)
      throw parse_error("weight '" + std::string(text) + "': group " + std::to_string(i + 1) + " needs " +
                        std::to_string(want) + " entries");
  }
  return Weight(a, std::move(flat));
}

}  // namespace weylbranch

#endif  // WEYLBRANCH_ORBITS_HPP_
