// Dense row-major matrices over an exact scalar type, plus fraction-free
// (Bareiss) elimination for rank, determinant, linear solves and inverses.

#ifndef WEYLBRANCH_MATRIX_HPP_
#define WEYLBRANCH_MATRIX_HPP_

#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace weylbranch {

template <typename T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  const std::vector<T>& data() const noexcept { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("matrix product shape mismatch: " + std::to_string(a.rows_) +
                                  "x" + std::to_string(a.cols_) + " * " +
                                  std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  // y = M x for a column vector given as a span.
  std::vector<T> apply(std::span<const T> x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<T> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      T acc{};
      for (std::size_t j = 0; j < cols_; ++j) {
        const T& m = (*this)(i, j);
        if (m != T(0) && x[j] != T(0)) acc += m * x[j];
      }
      y[i] = acc;
    }
    return y;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;

template <typename T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

inline bool is_integral(const RationalMatrix& m) {
  for (const auto& v : m.data())
    if (!v.is_integer()) return false;
  return true;
}

namespace detail {

// Scales each row of m by the lcm of its denominators so that Bareiss runs on
// integer data. Row scaling preserves rank and the solution set of [A | B].
inline void clear_row_denominators(RationalMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::int64_t l = 1;
    for (const auto& v : m.row(i)) l = std::lcm(l, v.den());
    if (l == 1) continue;
    for (auto& v : m.row(i)) v *= Rational(l);
  }
}

struct EchelonResult {
  RationalMatrix reduced;            // upper-trapezoidal after Bareiss
  std::vector<std::size_t> pivots;   // pivot column per pivot row
  int swaps = 0;
};

// Bareiss elimination restricted to the first `pivot_cols` columns; the
// remaining columns are carried along (augmented right-hand sides).
inline EchelonResult bareiss(RationalMatrix m, std::size_t pivot_cols) {
  clear_row_denominators(m);
  EchelonResult res;
  const std::size_t n = m.rows();
  Rational prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < n; ++c) {
    std::size_t p = r;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) continue;
    if (p != r) {
      m.swap_rows(p, r);
      ++res.swaps;
    }
    const Rational pivot = m(r, c);
    for (std::size_t i = r + 1; i < n; ++i) {
      const Rational lead = m(i, c);
      for (std::size_t j = c + 1; j < m.cols(); ++j)
        m(i, j) = (pivot * m(i, j) - lead * m(r, j)) / prev;
      m(i, c) = 0;
    }
    // Sylvester's identity makes the division by prev exact.
    prev = pivot;
    res.pivots.push_back(c);
    ++r;
  }
  res.reduced = std::move(m);
  return res;
}

}  // namespace detail

inline std::size_t rank(const RationalMatrix& m) {
  return detail::bareiss(m, m.cols()).pivots.size();
}

inline Rational determinant(const RationalMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  // Undo the row scaling applied before elimination.
  Rational scale = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::int64_t l = 1;
    for (const auto& v : m.row(i)) l = std::lcm(l, v.den());
    scale *= Rational(l);
  }
  auto e = detail::bareiss(m, m.cols());
  if (e.pivots.size() < m.rows()) return 0;
  Rational det = e.reduced(m.rows() - 1, m.cols() - 1);
  if (e.swaps % 2) det = -det;
  return det / scale;
}

// Solves A X = B for square nonsingular A. Returns nullopt when A is singular.
inline std::optional<RationalMatrix> solve(const RationalMatrix& a, const RationalMatrix& b) {
  if (!a.square() || a.rows() != b.rows())
    throw std::invalid_argument("solve: shape mismatch");
  const std::size_t n = a.rows();
  const std::size_t k = b.cols();
  RationalMatrix aug(n, n + k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < k; ++j) aug(i, n + j) = b(i, j);
  }
  auto e = detail::bareiss(std::move(aug), n);
  if (e.pivots.size() < n) return std::nullopt;
  const auto& u = e.reduced;
  RationalMatrix x(n, k);
  for (std::size_t col = 0; col < k; ++col) {
    for (std::size_t ii = n; ii-- > 0;) {
      Rational acc = u(ii, n + col);
      for (std::size_t j = ii + 1; j < n; ++j) acc -= u(ii, j) * x(j, col);
      x(ii, col) = acc / u(ii, ii);
    }
  }
  return x;
}

inline std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
  if (!a.square()) throw std::invalid_argument("inverse of a non-square matrix");
  return solve(a, RationalMatrix::identity(a.rows()));
}

// Indices of a maximal linearly independent subset of the columns of m,
// chosen greedily in column order.
inline std::vector<std::size_t> independent_columns(const RationalMatrix& m) {
  return detail::bareiss(m, m.cols()).pivots;
}

}  // namespace weylbranch

#endif  // WEYLBRANCH_MATRIX_HPP_
