// Classical simple Lie algebras A_n, B_n, C_n, D_n and reductive products of
// them with one-parameter U_1 factors.
//
// Conventions (Dynkin numbering, nodes 1..n, stored 0-based):
//   A_n  path 1 - 2 - ... - n
//   B_n  path with node n short
//   C_n  path with node n long
//   D_n  path 1 - ... - (n-2), nodes n-1 and n both attached to n-2
// Cartan entries are C_ij = 2(a_i, a_j) / (a_j, a_j), so row i of C is the
// simple root a_i written in the fundamental-weight (omega) basis. Long roots
// have squared length 2. D_2 and D_3 are not constructible: write A_1xA_1
// and A_3 instead.

#ifndef WEYLBRANCH_ALGEBRA_HPP_
#define WEYLBRANCH_ALGEBRA_HPP_

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "matrix.hpp"
#include "rational.hpp"

namespace weylbranch {

struct algebra_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D' };

inline int min_rank(Family f) {
  switch (f) {
    case Family::A: return 1;
    case Family::B:
    case Family::C: return 2;
    case Family::D: return 4;
  }
  return 1;
}

class SimpleComponent {
public:
  SimpleComponent(Family family, int rank) : family_(family), rank_(rank) {
    if (rank < min_rank(family))
      throw algebra_error(std::string(1, static_cast<char>(family)) + std::to_string(rank) +
                          " is not constructible (minimum rank for this family is " +
                          std::to_string(min_rank(family)) +
                          (family == Family::D ? "; write D3 as A3 and D2 as A1xA1)" : ")"));
  }

  Family family() const noexcept { return family_; }
  int rank() const noexcept { return rank_; }
  std::string name() const { return static_cast<char>(family_) + std::to_string(rank_); }

  friend bool operator==(const SimpleComponent&, const SimpleComponent&) = default;
  friend auto operator<=>(const SimpleComponent&, const SimpleComponent&) = default;

private:
  Family family_;
  int rank_;
};

inline SimpleComponent A(int n) { return {Family::A, n}; }
inline SimpleComponent B(int n) { return {Family::B, n}; }
inline SimpleComponent C(int n) { return {Family::C, n}; }
inline SimpleComponent D(int n) { return {Family::D, n}; }

// Ordered product of simple components followed by u1_count U_1 factors.
// Coordinates are laid out component by component, U_1 coordinates last.
class ReductiveAlgebra {
public:
  ReductiveAlgebra() = default;
  ReductiveAlgebra(SimpleComponent c) : components_{c} {}  // NOLINT: implicit by intent
  ReductiveAlgebra(std::vector<SimpleComponent> components, int u1_count = 0)
      : components_(std::move(components)), u1_count_(u1_count) {
    if (u1_count < 0) throw algebra_error("negative U1 count");
  }

  const std::vector<SimpleComponent>& components() const noexcept { return components_; }
  int u1_count() const noexcept { return u1_count_; }

  std::size_t semisimple_rank() const {
    std::size_t r = 0;
    for (const auto& c : components_) r += static_cast<std::size_t>(c.rank());
    return r;
  }
  std::size_t dimension() const { return semisimple_rank() + static_cast<std::size_t>(u1_count_); }

  // Offset of component i's first coordinate.
  std::size_t offset(std::size_t i) const {
    std::size_t off = 0;
    for (std::size_t k = 0; k < i; ++k) off += static_cast<std::size_t>(components_[k].rank());
    return off;
  }

  bool is_simple() const { return components_.size() == 1 && u1_count_ == 0; }
  bool is_pure_a() const { return is_simple() && components_[0].family() == Family::A; }

  std::string name() const {
    std::string out;
    for (const auto& c : components_) {
      if (!out.empty()) out += 'x';
      out += c.name();
    }
    for (int i = 0; i < u1_count_; ++i) {
      if (!out.empty()) out += 'x';
      out += "U1";
    }
    return out.empty() ? std::string("0") : out;
  }

  friend bool operator==(const ReductiveAlgebra&, const ReductiveAlgebra&) = default;
  friend auto operator<=>(const ReductiveAlgebra&, const ReductiveAlgebra&) = default;

private:
  std::vector<SimpleComponent> components_;
  int u1_count_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const ReductiveAlgebra& a) { return os << a.name(); }
inline std::ostream& operator<<(std::ostream& os, const SimpleComponent& c) { return os << c.name(); }

using CartanMatrix = Matrix<std::int64_t>;
using QuadraticForm = RationalMatrix;

inline CartanMatrix cartan_matrix(const SimpleComponent& c) {
  const auto n = static_cast<std::size_t>(c.rank());
  CartanMatrix m(n, n, 0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 2;
  if (c.family() == Family::D) {
    for (std::size_t i = 0; i + 3 < n; ++i) m(i, i + 1) = m(i + 1, i) = -1;
    m(n - 3, n - 2) = m(n - 2, n - 3) = -1;
    m(n - 3, n - 1) = m(n - 1, n - 3) = -1;
    return m;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = -1;
  if (c.family() == Family::B) m(n - 2, n - 1) = -2;  // a_n short
  if (c.family() == Family::C) m(n - 1, n - 2) = -2;  // a_n long
  return m;
}

// Half squared length of each simple root (1 for long roots).
inline std::vector<Rational> root_half_norms(const SimpleComponent& c) {
  const auto n = static_cast<std::size_t>(c.rank());
  std::vector<Rational> d(n, Rational(1));
  if (c.family() == Family::B) d[n - 1] = Rational(1, 2);
  if (c.family() == Family::C)
    for (std::size_t i = 0; i + 1 < n; ++i) d[i] = Rational(1, 2);
  return d;
}

inline RationalMatrix to_rational(const CartanMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

// Gram matrix <omega_j, omega_k>. Since (a_k, omega_j) = delta_kj (a_j,a_j)/2,
// the form is C^{-1} diag(d) with d the half squared root lengths.
inline QuadraticForm quadratic_form(const SimpleComponent& c) {
  auto inv = inverse(to_rational(cartan_matrix(c)));
  if (!inv) throw std::logic_error("singular Cartan matrix");
  const auto d = root_half_norms(c);
  QuadraticForm q = *inv;
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) q(i, j) *= d[j];
  return q;
}

// Adjacency lists of the Dynkin diagram, read off the Cartan matrix.
inline std::vector<std::vector<std::size_t>> dynkin_adjacency(const SimpleComponent& c) {
  const auto m = cartan_matrix(c);
  std::vector<std::vector<std::size_t>> adj(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != 0) adj[i].push_back(j);
  return adj;
}

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("Weyl group order overflows 64 bits");
  return r;
}

inline std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r = checked_mul(r, static_cast<std::uint64_t>(i));
  return r;
}

inline std::uint64_t pow2(int n) {
  if (n >= 64) throw overflow_error("Weyl group order overflows 64 bits");
  return std::uint64_t{1} << n;
}

}  // namespace detail

inline std::uint64_t weyl_order(const SimpleComponent& c) {
  const int n = c.rank();
  switch (c.family()) {
    case Family::A: return detail::factorial(n + 1);
    case Family::B:
    case Family::C: return detail::checked_mul(detail::pow2(n), detail::factorial(n));
    case Family::D: return detail::checked_mul(detail::pow2(n - 1), detail::factorial(n));
  }
  return 1;
}

inline std::uint64_t weyl_order(const ReductiveAlgebra& a) {
  std::uint64_t r = 1;
  for (const auto& c : a.components()) r = detail::checked_mul(r, weyl_order(c));
  return r;
}

// Grammar: name := comp ("x" comp)*,  comp := ("A"|"B"|"C"|"D") int | "U1".
// Case-insensitive; U1 factors may appear anywhere and are collected last.
inline ReductiveAlgebra parse_algebra(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)))
      s += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (s.empty()) throw algebra_error("empty algebra name");

  std::vector<SimpleComponent> comps;
  int u1 = 0;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = s.find('X', pos);
    std::string part = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    if (part.size() < 2) throw algebra_error("malformed algebra name '" + std::string(text) + "'");
    const char f = part[0];
    std::string digits = part.substr(1);
    if (!std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) ||
        digits.size() > 6)
      throw algebra_error("malformed algebra name '" + std::string(text) + "'");
    const int k = std::stoi(digits);
    if (f == 'U') {
      if (k != 1) throw algebra_error("only U1 factors are supported, got '" + part + "'");
      ++u1;
    } else if (f == 'A' || f == 'B' || f == 'C' || f == 'D') {
      comps.emplace_back(static_cast<Family>(f), k);
    } else {
      throw algebra_error("unknown algebra family in '" + std::string(text) + "'");
    }
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return ReductiveAlgebra(std::move(comps), u1);
}

}  // namespace weylbranch

#endif  // WEYLBRANCH_ALGEBRA_HPP_
