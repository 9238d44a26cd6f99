// Integer kernel behind branch() and verify_branch(). Coordinates are scaled
// by a common denominator so all arithmetic is on int64, overflow-checked.
// Orbits are streamed, not stored: the parent tree of each component is
// walked depth-first in one buffer, undoing each reflection on the way back.

#ifndef WEYLBRANCH_LATTICE_HPP_
#define WEYLBRANCH_LATTICE_HPP_

#include <algorithm>
#include <array>
#include <functional>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "matrix.hpp"
#include "orbits.hpp"
#include "rational.hpp"

namespace weylbranch::detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("integer kernel overflow");
  return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw overflow_error("integer kernel overflow");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw overflow_error("integer kernel overflow");
  return r;
}

inline std::int64_t lcm_checked(std::int64_t a, std::int64_t b) { return checked_mul(a / std::gcd(a, b), b); }

inline std::int64_t denominator_lcm(std::span<const Rational> xs) {
  std::int64_t l = 1;
  for (const auto& v : xs) l = lcm_checked(l, v.den());
  return l;
}

// x * scale as integers, or nullopt if some coordinate is not a multiple of 1/scale.
inline std::optional<std::vector<std::int64_t>> scaled(std::span<const Rational> x, std::int64_t scale) {
  std::vector<std::int64_t> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (scale % x[i].den() != 0) return std::nullopt;
    out[i] = checked_mul(x[i].num(), scale / x[i].den());
  }
  return out;
}

inline Coords unscaled(std::span<const std::int64_t> row, std::int64_t scale) {
  Coords x(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) x[i] = Rational(row[i], scale);
  return x;
}

// Integer form of a rational matrix: entries * scale.
struct ScaledMatrix {
  std::size_t rows = 0, cols = 0;
  std::int64_t scale = 1;
  std::vector<std::int64_t> entries;

  explicit ScaledMatrix(const RationalMatrix& m) : rows(m.rows()), cols(m.cols()) {
    for (std::size_t i = 0; i < rows; ++i) scale = lcm_checked(scale, denominator_lcm(m.row(i)));
    entries.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) entries.push_back(checked_mul(m(i, j).num(), scale / m(i, j).den()));
  }

  void apply(const std::int64_t* x, std::int64_t* y) const {
    for (std::size_t i = 0; i < rows; ++i) {
      std::int64_t acc = 0;
      const std::int64_t* r = entries.data() + i * cols;
      for (std::size_t j = 0; j < cols; ++j)
        if (r[j] != 0 && x[j] != 0) acc = checked_add(acc, checked_mul(r[j], x[j]));
      y[i] = acc;
    }
  }
};

// One simple component as sparse bonds: node i touches x_j for (j, C_ij).
// first[i] is the lowest index among i and its neighbours.
struct SparseCartan {
  std::size_t rank = 0;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> bonds;
  std::vector<std::size_t> first;
  std::vector<std::int64_t> dense;
  bool type_a = false;

  SparseCartan(const SimpleComponent& comp, const CartanMatrix& cm)
      : rank(cm.rows()),
        bonds(rank),
        first(rank),
        dense(cm.row(0).data(), cm.row(0).data() + rank * rank),
        type_a(comp.family() == Family::A) {
    for (std::size_t i = 0; i < rank; ++i) {
      first[i] = i;
      for (std::size_t j = 0; j < rank; ++j)
        if (cm(i, j) != 0) {
          bonds[i].emplace_back(j, cm(i, j));
          first[i] = std::min(first[i], j);
        }
    }
  }

  void reflect(std::int64_t* x, std::size_t i) const {
    const std::int64_t xi = x[i];
    if (xi == 0) return;
    for (const auto& [j, c] : bonds[i]) x[j] = checked_sub(x[j], checked_mul(xi, c));
  }

  // Lowest negative coordinate first, as make_dominant does; after r_i only
  // the neighbours of i can have turned negative. For A_n the result is
  // reached directly: W permutes the n+1 coordinates e_k = x_k + ... + x_n
  // (e_{n+1} = 0) and the dominant point has them in descending order.
  void make_dominant(std::int64_t* x) const {
    constexpr std::size_t kSortLimit = 32;
    if (type_a && rank < kSortLimit) {
      std::array<std::int64_t, kSortLimit> e{};
      for (std::size_t k = rank; k-- > 0;) e[k] = checked_add(e[k + 1], x[k]);
      std::sort(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(rank + 1), std::greater<>{});
      for (std::size_t k = 0; k < rank; ++k) x[k] = e[k] - e[k + 1];
      return;
    }
    std::size_t i = 0;
    while (true) {
      while (i < rank && x[i] >= 0) ++i;
      if (i == rank) return;
      reflect(x, i);
      i = first[i];
    }
  }

  // Would r_i x keep x_j >= 0 for every j < i? lowest_negative is the index
  // of the first negative coordinate of x (rank if none). With none before
  // i the answer is yes, since off-diagonal Cartan entries are <= 0.
  bool spawns(const std::int64_t* x, std::size_t i, std::size_t lowest_negative) const {
    if (lowest_negative > i) return true;
    const std::int64_t xi = x[i];
    const std::int64_t* row = dense.data() + i * rank;
    for (std::size_t j = lowest_negative; j < i; ++j)
      if (checked_sub(x[j], checked_mul(xi, row[j])) < 0) return false;
    return true;
  }
};

// Simple components of one algebra with their offsets.
struct Components {
  std::vector<SparseCartan> cartan;
  std::vector<std::size_t> offset;

  explicit Components(const ReductiveAlgebra& a) {
    for (std::size_t c = 0; c < a.components().size(); ++c) {
      cartan.emplace_back(a.components()[c], cartan_matrix(a.components()[c]));
      offset.push_back(a.offset(c));
    }
  }

  void make_dominant(std::int64_t* x) const {
    for (std::size_t c = 0; c < cartan.size(); ++c) cartan[c].make_dominant(x + offset[c]);
  }
};

// Calls visit(x, y) once per orbit point: x the point and, if a matrix is
// given, y its image (empty otherwise). Component c is walked as the parent
// tree of simple_orbit: x spawns r_i x iff x_i > 0 and r_i x has no negative
// coordinate before i. Since r_i x = x - x_i a_i (a_i = row i of C), the
// image moves by -x_i M a_i, so y costs O(rows) per step.
template <class Visit>
class OrbitWalker {
public:
  OrbitWalker(const Components& comps, std::vector<std::int64_t> seed, const ScaledMatrix* image, Visit& visit)
      : comps_(comps), x_(std::move(seed)), visit_(visit) {
    if (!image) return;
    y_.resize(image->rows);
    image->apply(x_.data(), y_.data());
    for (std::size_t c = 0; c < comps_.cartan.size(); ++c) {
      const auto& sc = comps_.cartan[c];
      std::vector<std::vector<std::int64_t>> d(sc.rank, std::vector<std::int64_t>(image->rows));
      for (std::size_t i = 0; i < sc.rank; ++i)
        for (std::size_t r = 0; r < image->rows; ++r)
          for (const auto& [k, v] : sc.bonds[i])
            d[i][r] = checked_add(d[i][r], checked_mul(image->entries[r * image->cols + comps_.offset[c] + k], v));
      deltas_.push_back(std::move(d));
    }
  }

  void run() { component(0); }

private:
  void component(std::size_t c) {
    if (c == comps_.cartan.size())
      visit_(std::as_const(x_), std::as_const(y_));
    else
      node(c);
  }

  void step(std::size_t c, std::size_t i) {
    std::int64_t* x = x_.data() + comps_.offset[c];
    if (!deltas_.empty()) {
      const auto& d = deltas_[c][i];
      for (std::size_t r = 0; r < y_.size(); ++r) y_[r] = checked_sub(y_[r], checked_mul(x[i], d[r]));
    }
    comps_.cartan[c].reflect(x, i);
  }

  void node(std::size_t c) {
    component(c + 1);
    const auto& sc = comps_.cartan[c];
    const std::int64_t* x = x_.data() + comps_.offset[c];
    std::size_t lowest_negative = 0;
    while (lowest_negative < sc.rank && x[lowest_negative] >= 0) ++lowest_negative;
    for (std::size_t i = 0; i < sc.rank; ++i) {
      if (x[i] <= 0 || !sc.spawns(x, i, lowest_negative)) continue;
      step(c, i);
      node(c);
      step(c, i);
    }
  }

  const Components& comps_;
  std::vector<std::int64_t> x_, y_;
  std::vector<std::vector<std::vector<std::int64_t>>> deltas_;
  Visit& visit_;
};

// Streams the orbit of a dominant seed scaled by `scale` through visit(x, y),
// y = image * x. Returns false without visiting anything if the seed is not
// in (1/scale)Z^n.
template <class Visit>
bool walk_orbit(const Weight& seed, std::int64_t scale, const Components& comps, const ScaledMatrix* image,
                Visit&& visit) {
  auto x = scaled(seed.coords(), scale);
  if (!x) return false;
  OrbitWalker<std::remove_reference_t<Visit>> w(comps, std::move(*x), image, visit);
  w.run();
  return true;
}

// Open-addressing counter for fixed-width integer rows, stored inline.
class RowCounter {
public:
  RowCounter(std::size_t width, std::size_t expected) : width_(width) {
    std::size_t c = 64;
    while (3 * c < 4 * expected) c *= 2;
    rehash(c);
  }

  std::int64_t& operator[](const std::int64_t* row) {
    if (4 * (size_ + 1) > 3 * capacity_) rehash(2 * capacity_);
    const std::size_t s = probe(row);
    if (!used_[s]) {
      used_[s] = 1;
      std::copy_n(row, width_, keys_.begin() + static_cast<std::ptrdiff_t>(s * width_));
      counts_[s] = 0;
      ++size_;
    }
    return counts_[s];
  }

  // nullptr if absent.
  std::int64_t* find(const std::int64_t* row) {
    const std::size_t s = probe(row);
    return used_[s] ? &counts_[s] : nullptr;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t s = 0; s < capacity_; ++s)
      if (used_[s]) f(std::span<const std::int64_t>(keys_.data() + s * width_, width_), counts_[s]);
  }

  std::size_t size() const noexcept { return size_; }

private:
  std::size_t hash(const std::int64_t* row) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::size_t i = 0; i < width_; ++i) {
      h ^= static_cast<std::uint64_t>(row[i]);
      h *= 0xff51afd7ed558ccdULL;
      h ^= h >> 32;
    }
    return static_cast<std::size_t>(h);
  }

  std::size_t probe(const std::int64_t* row) const noexcept {
    std::size_t s = hash(row) & (capacity_ - 1);
    while (used_[s] && !std::equal(row, row + width_, keys_.begin() + static_cast<std::ptrdiff_t>(s * width_)))
      s = (s + 1) & (capacity_ - 1);
    return s;
  }

  void rehash(std::size_t capacity) {
    std::vector<std::int64_t> keys(capacity * width_), counts(capacity);
    std::vector<unsigned char> used(capacity);
    keys.swap(keys_);
    counts.swap(counts_);
    used.swap(used_);
    const std::size_t old = capacity_;
    capacity_ = capacity;
    for (std::size_t s = 0; s < old; ++s) {
      if (!used[s]) continue;
      const std::int64_t* row = keys.data() + s * width_;
      const std::size_t t = probe(row);
      used_[t] = 1;
      std::copy_n(row, width_, keys_.begin() + static_cast<std::ptrdiff_t>(t * width_));
      counts_[t] = counts[s];
    }
  }

  std::size_t width_;
  std::size_t size_ = 0;
  std::size_t capacity_ = 0;
  std::vector<std::int64_t> keys_;
  std::vector<std::int64_t> counts_;
  std::vector<unsigned char> used_;
};

}  // namespace weylbranch::detail

#endif  // WEYLBRANCH_LATTICE_HPP_
