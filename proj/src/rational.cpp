#include "iqgt/rational.hpp"

#include <charconv>
#include <limits>
#include <ostream>

namespace iqgt {

namespace {

wide_int gcd128(wide_int a, wide_int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    wide_int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(wide_int v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("iqgt::Rational: 64-bit overflow");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  *this = from_wide(n, d);
}

Rational Rational::from_wide(wide_int n, wide_int d) {
  if (d == 0) throw std::domain_error("iqgt::Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n == 0) return Rational();
  if (d != 1) {
    wide_int g = gcd128(n, d);
    n /= g;
    d /= g;
  }
  Rational r;
  r.num_ = narrow(n);
  r.den_ = narrow(d);
  return r;
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if ((num_ % den_ != 0) && (num_ < 0)) --q;
  return q;
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = narrow(-static_cast<wide_int>(num_));
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_ == 1 && o.den_ == 1) {
    num_ = narrow(static_cast<wide_int>(num_) + o.num_);
    return *this;
  }
  *this = from_wide(static_cast<wide_int>(num_) * o.den_ + static_cast<wide_int>(o.num_) * den_,
                    static_cast<wide_int>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  return *this += -o;
}

Rational& Rational::operator*=(const Rational& o) {
  if (den_ == 1 && o.den_ == 1) {
    num_ = narrow(static_cast<wide_int>(num_) * o.num_);
    return *this;
  }
  *this = from_wide(static_cast<wide_int>(num_) * o.num_, static_cast<wide_int>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("iqgt::Rational: division by zero");
  *this = from_wide(static_cast<wide_int>(num_) * o.den_, static_cast<wide_int>(den_) * o.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return a.num_ <=> b.num_;
  wide_int l = static_cast<wide_int>(a.num_) * b.den_;
  wide_int r = static_cast<wide_int>(b.num_) * a.den_;
  return l < r ? std::strong_ordering::less
               : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'");
    }
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

Gaussian& Gaussian::operator+=(const Gaussian& o) {
  re += o.re;
  if (!o.im.is_zero()) im += o.im;
  return *this;
}

Gaussian& Gaussian::operator-=(const Gaussian& o) {
  re -= o.re;
  if (!o.im.is_zero()) im -= o.im;
  return *this;
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  if (im.is_zero() && o.im.is_zero()) {
    re *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = r;
  im = i;
  return *this;
}

Gaussian Gaussian::inverse() const {
  if (is_zero()) throw std::domain_error("iqgt::Gaussian: inverse of zero");
  if (im.is_zero()) return Gaussian(Rational(1) / re);
  Rational norm = re * re + im * im;
  return {re / norm, -im / norm};
}

Gaussian& Gaussian::operator/=(const Gaussian& o) {
  return *this *= o.inverse();
}

std::string Gaussian::to_string() const {
  if (im.is_zero()) return re.to_string();
  std::string imag = (im == Rational(1)) ? "i" : (im == Rational(-1) ? "-i" : im.to_string() + "*i");
  if (re.is_zero()) return imag;
  return "(" + re.to_string() + (im.sign() > 0 ? "+" : "") + imag + ")";
}

}  // namespace iqgt
