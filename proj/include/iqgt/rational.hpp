#pragma once

// Exact rationals and Gaussian rationals on 64-bit integers.
//
// Every intermediate is formed in 128 bits and reduced before narrowing;
// a result that does not fit in 64 bits raises std::overflow_error instead
// of wrapping silently.

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace iqgt {

__extension__ typedef __int128 wide_int;

class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  /// Largest integer not exceeding the value.
  std::int64_t floor() const;
  Rational abs() const { return num_ < 0 ? -*this : *this; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "3", "-1/2".
  std::string to_string() const;
  /// Accepts "a" or "a/b" with optional sign; decimals are rejected.
  static Rational parse(std::string_view text);

 private:
  static Rational from_wide(wide_int n, wide_int d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// re + i*im with exact rational parts.
struct Gaussian {
  Rational re;
  Rational im;

  constexpr Gaussian() = default;
  constexpr Gaussian(Rational r) : re(r) {}  // NOLINT(implicit)
  constexpr Gaussian(std::int64_t r) : re(r) {}  // NOLINT(implicit)
  constexpr Gaussian(Rational r, Rational i) : re(r), im(i) {}

  static Gaussian imag_unit() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_one() const { return re == Rational(1) && im.is_zero(); }

  Gaussian operator-() const { return {-re, -im}; }
  Gaussian& operator+=(const Gaussian& o);
  Gaussian& operator-=(const Gaussian& o);
  Gaussian& operator*=(const Gaussian& o);
  Gaussian& operator/=(const Gaussian& o);

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }

  friend bool operator==(const Gaussian&, const Gaussian&) = default;
  friend auto operator<=>(const Gaussian&, const Gaussian&) = default;

  Gaussian inverse() const;
  std::string to_string() const;
};

}  // namespace iqgt

template <>
struct std::hash<iqgt::Rational> {
  std::size_t operator()(const iqgt::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 1000003u ^ std::hash<std::int64_t>{}(r.den());
  }
};
