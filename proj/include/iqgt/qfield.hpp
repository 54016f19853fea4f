#pragma once

// Exact arithmetic in rational functions of a formal q and symbolic
// parameter generators.
//
// A parameter generator x_p stands for q^p, so a monomial
// q^c * x_1^{c_1} * ... * x_k^{c_k} is the formal power q^{c + sum c_i p_i}.
// Exponents on every generator are exact rationals and coefficients are
// Gaussian rationals (the actions carry a factor i).
//
// RatFunc keeps a partially factored form: an expanded polynomial residual
// times a product of canonical polynomial factors raised to signed integer
// powers. Products cancel shared factors for free; sums only take a common
// multiple over the factors they already know about. There is no GCD
// computation, and equality is decided by clearing denominators.

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iqgt/rational.hpp"

namespace iqgt {

/// Number of generators a monomial can carry, including q itself.
inline constexpr std::size_t kMaxGenerators = 8;

/// A named parameter generator. Names are interned in a process-wide table;
/// "l", "p", "r", "l0" and "m0" are always present.
class ParamSymbol {
 public:
  static ParamSymbol named(std::string_view name);

  std::string_view name() const;
  /// Generator slot inside a Monomial (q occupies slot 0).
  std::size_t slot() const { return id_; }

  friend bool operator==(ParamSymbol, ParamSymbol) = default;
  friend auto operator<=>(ParamSymbol, ParamSymbol) = default;

  static ParamSymbol from_slot(std::size_t slot);

 private:
  explicit ParamSymbol(std::uint8_t id) : id_(id) {}
  std::uint8_t id_;
};

/// constant + sum coeff_p * p over parameter symbols; zero coefficients are
/// never stored.
class ExponentForm {
 public:
  ExponentForm() = default;
  ExponentForm(Rational constant) : constant_(constant) {}  // NOLINT(implicit)
  ExponentForm(std::int64_t constant) : constant_(constant) {}  // NOLINT(implicit)

  static ExponentForm symbol(ParamSymbol s, Rational coeff = Rational(1));

  const Rational& constant() const { return constant_; }
  const std::map<ParamSymbol, Rational>& coeffs() const { return coeffs_; }
  Rational coeff(ParamSymbol s) const;
  bool is_constant() const { return coeffs_.empty(); }

  ExponentForm operator-() const;
  ExponentForm& operator+=(const ExponentForm& o);
  ExponentForm& operator-=(const ExponentForm& o);
  ExponentForm& operator*=(const Rational& k);
  friend ExponentForm operator+(ExponentForm a, const ExponentForm& b) { return a += b; }
  friend ExponentForm operator-(ExponentForm a, const ExponentForm& b) { return a -= b; }
  friend ExponentForm operator*(ExponentForm a, const Rational& k) { return a *= k; }
  friend ExponentForm operator*(const Rational& k, ExponentForm a) { return a *= k; }

  friend bool operator==(const ExponentForm&, const ExponentForm&) = default;

  /// "l0+2", "-m0-1/2", "3".
  std::string to_string() const;

 private:
  Rational constant_;
  std::map<ParamSymbol, Rational> coeffs_;
};

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(const ExponentForm& e);

  const Rational& exponent(std::size_t slot) const { return exps_[slot]; }
  void set_exponent(std::size_t slot, Rational e) { exps_[slot] = e; }
  bool is_one() const;

  Monomial& operator*=(const Monomial& o);
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }
  Monomial inverse() const;

  /// Slot-wise minimum (the gcd of two monomials).
  static Monomial meet(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

  std::string to_string() const;

 private:
  std::array<Rational, kMaxGenerators> exps_{};
};

/// Finite sum of Gaussian-rational multiples of monomials, sorted by
/// monomial; zero coefficients are never stored.
class PolyQ {
 public:
  using Term = std::pair<Monomial, Gaussian>;

  PolyQ() = default;
  PolyQ(Gaussian c);  // NOLINT(implicit)
  PolyQ(const Monomial& m, Gaussian c = Gaussian(1));
  static PolyQ from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_term() const { return terms_.size() == 1; }
  bool is_one() const;

  PolyQ operator-() const;
  PolyQ& operator+=(const PolyQ& o);
  PolyQ& operator-=(const PolyQ& o);
  friend PolyQ operator+(PolyQ a, const PolyQ& b) { return a += b; }
  friend PolyQ operator-(PolyQ a, const PolyQ& b) { return a -= b; }
  friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
  PolyQ scaled(const Gaussian& c, const Monomial& m) const;
  PolyQ pow(int k) const;

  /// Slot-wise minimum exponent over all terms.
  Monomial content() const;

  friend bool operator==(const PolyQ&, const PolyQ&) = default;
  friend auto operator<=>(const PolyQ& a, const PolyQ& b) { return a.terms_ <=> b.terms_; }

  std::complex<double> evaluate(const std::array<std::complex<double>, kMaxGenerators>& logs) const;

  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

/// Exact rational function; see the header comment for the representation.
class RatFunc {
 public:
  RatFunc() = default;  // zero
  RatFunc(Gaussian c);  // NOLINT(implicit)
  RatFunc(Rational c) : RatFunc(Gaussian(c)) {}  // NOLINT(implicit)
  RatFunc(std::int64_t c) : RatFunc(Gaussian(c)) {}  // NOLINT(implicit)
  RatFunc(int c) : RatFunc(Gaussian(c)) {}  // NOLINT(implicit)

  /// Keeps p expanded.
  static RatFunc from_poly(PolyQ p);
  /// Stores p as a factor so later products can cancel it.
  static RatFunc factored(const PolyQ& p);
  static RatFunc imag_unit() { return RatFunc(Gaussian::imag_unit()); }

  bool is_zero() const { return residual_.is_zero(); }
  /// The value as c * monomial when it is a single term without factors.
  std::optional<std::pair<Gaussian, Monomial>> as_term() const;

  /// Expanded numerator and denominator. The denominator is monic and free
  /// of monomial content.
  PolyQ numerator() const;
  PolyQ denominator() const;

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc inverse() const;
  RatFunc pow(int k) const;

  /// Numeric value with q = q_value and every parameter symbol p set so that
  /// x_p = q_value^{param_values[p]}; unspecified symbols default to 0.
  std::complex<double> evaluate(std::complex<double> q_value,
                                const std::map<ParamSymbol, std::complex<double>>& param_values = {}) const;

  /// Canonical text: "num" or "(num)/(den)".
  std::string to_string() const;

  /// Size of the expanded numerator; used to keep an eye on growth.
  std::size_t complexity() const;

 private:
  PolyQ residual_;
  std::map<PolyQ, int> factors_;  // canonical factor -> nonzero exponent
};

/// Thrown on division by an exactly zero RatFunc.
class ZeroDivisionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Spec-level operations.

RatFunc qpow(const ExponentForm& e);
/// [e] = (q^e - q^{-e}) / (q - q^{-1}).
RatFunc qbracket(const ExponentForm& e);
/// [e]/[2e] in the closed form 1/(q^e + q^{-e}); equals 1/2 at e = 0.
RatFunc bracket_half_ratio(const ExponentForm& e);

bool rf_equal(const RatFunc& a, const RatFunc& b);
inline bool rf_is_zero(const RatFunc& a) { return a.is_zero(); }
inline RatFunc rf_add(const RatFunc& a, const RatFunc& b) { return a + b; }
inline RatFunc rf_mul(const RatFunc& a, const RatFunc& b) { return a * b; }
inline RatFunc rf_neg(const RatFunc& a) { return -a; }
inline RatFunc rf_div(const RatFunc& a, const RatFunc& b) { return a / b; }

/// Parses the canonical text grammar (and general +,-,*,/,^ expressions over
/// rationals, i, q and parameter names).
RatFunc parse_ratfunc(std::string_view text);

}  // namespace iqgt
