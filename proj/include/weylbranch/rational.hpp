// Exact rational numbers over 64-bit integers.
//
// Every operation is checked: a result that does not fit in int64 after
// reduction throws weylbranch::overflow_error instead of wrapping. The
// common integer case (denominator 1) skips gcd work entirely, which keeps
// orbit enumeration of large Weyl groups cheap.

#ifndef WEYLBRANCH_RATIONAL_HPP_
#define WEYLBRANCH_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace weylbranch {

struct overflow_error : std::overflow_error {
  using std::overflow_error::overflow_error;
};

struct parse_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class Rational {
public:
  constexpr Rational() noexcept = default;
  constexpr Rational(std::int64_t value) noexcept : num_(value) {}  // NOLINT: implicit by intent
  Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_integer() const noexcept { return den_ == 1; }
  int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

  Rational operator-() const {
    if (num_ == INT64_MIN) throw overflow_error("rational negation overflow");
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == 1 && b.den_ == 1) return from_wide(static_cast<__int128>(a.num_) + b.num_);
    __int128 num = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
    __int128 den = static_cast<__int128>(a.den_) * b.den_;
    return reduce_wide(num, den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    if (a.den_ == 1 && b.den_ == 1) return from_wide(static_cast<__int128>(a.num_) - b.num_);
    __int128 num = static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_;
    __int128 den = static_cast<__int128>(a.den_) * b.den_;
    return reduce_wide(num, den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.den_ == 1 && b.den_ == 1) return from_wide(static_cast<__int128>(a.num_) * b.num_);
    return reduce_wide(static_cast<__int128>(a.num_) * b.num_,
                       static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return reduce_wide(static_cast<__int128>(a.num_) * b.den_,
                       static_cast<__int128>(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "7", "-3", "+2", "5/4", "-10/6"; surrounding blanks are ignored.
  static Rational parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
      return s;
    };
    text = trim(text);
    auto slash = text.find('/');
    std::int64_t num = parse_int(trim(text.substr(0, slash)), text);
    std::int64_t den = 1;
    if (slash != std::string_view::npos) {
      auto rest = trim(text.substr(slash + 1));
      if (!rest.empty() && (rest.front() == '-' || rest.front() == '+'))
        throw parse_error("bad rational '" + std::string(text) + "': signed denominator");
      den = parse_int(rest, text);
      if (den == 0) throw parse_error("bad rational '" + std::string(text) + "': zero denominator");
    }
    return Rational(num, den);
  }

private:
  void assign(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    *this = reduce_wide(num, den);
  }

  static Rational from_wide(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(v);
    return r;
  }

  static __int128 gcd_wide(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational reduce_wide(__int128 num, __int128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (num == 0) return Rational();
    if (den != 1) {
      __int128 g = gcd_wide(num, den);
      num /= g;
      den /= g;
    }
    if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
      throw overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  static std::int64_t parse_int(std::string_view s, std::string_view whole) {
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
      neg = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) throw parse_error("bad rational '" + std::string(whole) + "'");
    __int128 v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw parse_error("bad rational '" + std::string(whole) + "'");
      v = v * 10 + (c - '0');
      if (v > static_cast<__int128>(INT64_MAX) + 1)
        throw parse_error("rational literal out of range: '" + std::string(whole) + "'");
    }
    if (neg) v = -v;
    if (v > INT64_MAX || v < INT64_MIN)
      throw parse_error("rational literal out of range: '" + std::string(whole) + "'");
    return static_cast<std::int64_t>(v);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace weylbranch

template <>
struct std::hash<weylbranch::Rational> {
  std::size_t operator()(const weylbranch::Rational& r) const noexcept {
    std::size_t h = std::hash<std::int64_t>{}(r.num());
    return h ^ (std::hash<std::int64_t>{}(r.den()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};

#endif  // WEYLBRANCH_RATIONAL_HPP_
