#include "iqgt/qfield.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <stdexcept>

namespace iqgt {

// ---------------------------------------------------------------- symbols

namespace {

struct SymbolTable {
  std::mutex mu;
  std::vector<std::string> names{"q", "l", "p", "r", "l0", "m0"};
};

SymbolTable& symbols() {
  static SymbolTable table;
  return table;
}

}  // namespace

ParamSymbol ParamSymbol::named(std::string_view name) {
  if (name.empty() || name == "q" || name == "i") {
    throw std::invalid_argument("reserved or empty parameter name: '" + std::string(name) + "'");
  }
  auto& t = symbols();
  std::lock_guard lock(t.mu);
  for (std::size_t k = 1; k < t.names.size(); ++k) {
    if (t.names[k] == name) return ParamSymbol(static_cast<std::uint8_t>(k));
  }
  if (t.names.size() >= kMaxGenerators) {
    throw std::length_error("too many parameter symbols (limit " + std::to_string(kMaxGenerators - 1) + ")");
  }
  t.names.emplace_back(name);
  return ParamSymbol(static_cast<std::uint8_t>(t.names.size() - 1));
}

std::string_view ParamSymbol::name() const {
  auto& t = symbols();
  std::lock_guard lock(t.mu);
  return t.names[id_];
}

ParamSymbol ParamSymbol::from_slot(std::size_t slot) {
  auto& t = symbols();
  std::lock_guard lock(t.mu);
  if (slot == 0 || slot >= t.names.size()) throw std::out_of_range("no parameter symbol in this slot");
  return ParamSymbol(static_cast<std::uint8_t>(slot));
}

// ---------------------------------------------------------- ExponentForm

ExponentForm ExponentForm::symbol(ParamSymbol s, Rational coeff) {
  ExponentForm e;
  if (!coeff.is_zero()) e.coeffs_.emplace(s, coeff);
  return e;
}

Rational ExponentForm::coeff(ParamSymbol s) const {
  auto it = coeffs_.find(s);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

ExponentForm ExponentForm::operator-() const {
  ExponentForm e = *this;
  e.constant_ = -e.constant_;
  for (auto& [s, c] : e.coeffs_) c = -c;
  return e;
}

ExponentForm& ExponentForm::operator+=(const ExponentForm& o) {
  constant_ += o.constant_;
  for (const auto& [s, c] : o.coeffs_) {
    Rational v = coeff(s) + c;
    if (v.is_zero()) {
      coeffs_.erase(s);
    } else {
      coeffs_[s] = v;
    }
  }
  return *this;
}

ExponentForm& ExponentForm::operator-=(const ExponentForm& o) {
  return *this += -o;
}

ExponentForm& ExponentForm::operator*=(const Rational& k) {
  if (k.is_zero()) {
    *this = ExponentForm();
    return *this;
  }
  constant_ *= k;
  for (auto& [s, c] : coeffs_) c *= k;
  return *this;
}

std::string ExponentForm::to_string() const {
  std::string out;
  for (const auto& [s, c] : coeffs_) {
    std::string name(s.name());
    if (c == Rational(1)) {
      out += out.empty() ? name : "+" + name;
    } else if (c == Rational(-1)) {
      out += "-" + name;
    } else {
      out += (c.sign() > 0 && !out.empty() ? "+" : "") + c.to_string() + "*" + name;
    }
  }
  if (!constant_.is_zero() || out.empty()) {
    out += (constant_.sign() > 0 && !out.empty() ? "+" : "") + constant_.to_string();
  }
  return out;
}

// -------------------------------------------------------------- Monomial

Monomial::Monomial(const ExponentForm& e) {
  exps_[0] = e.constant();
  for (const auto& [s, c] : e.coeffs()) exps_[s.slot()] = c;
}

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](const Rational& r) { return r.is_zero(); });
}

Monomial& Monomial::operator*=(const Monomial& o) {
  for (std::size_t k = 0; k < kMaxGenerators; ++k) {
    if (!o.exps_[k].is_zero()) exps_[k] += o.exps_[k];
  }
  return *this;
}

Monomial Monomial::inverse() const {
  Monomial m;
  for (std::size_t k = 0; k < kMaxGenerators; ++k) {
    if (!exps_[k].is_zero()) m.exps_[k] = -exps_[k];
  }
  return m;
}

Monomial Monomial::meet(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t k = 0; k < kMaxGenerators; ++k) m.exps_[k] = std::min(a.exps_[k], b.exps_[k]);
  return m;
}

std::string Monomial::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < kMaxGenerators; ++k) {
    const Rational& e = exps_[k];
    if (e.is_zero()) continue;
    if (!out.empty()) out += "*";
    out += k == 0 ? std::string("q") : std::string(ParamSymbol::from_slot(k).name());
    if (e == Rational(1)) continue;
    if (e.is_integer() && e.sign() > 0) {
      out += "^" + e.to_string();
    } else {
      out += "^(" + e.to_string() + ")";
    }
  }
  return out.empty() ? "1" : out;
}

// ----------------------------------------------------------------- PolyQ

PolyQ::PolyQ(Gaussian c) {
  if (!c.is_zero()) terms_.emplace_back(Monomial(), c);
}

PolyQ::PolyQ(const Monomial& m, Gaussian c) {
  if (!c.is_zero()) terms_.emplace_back(m, c);
}

PolyQ PolyQ::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  PolyQ p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
    } else if (!t.second.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool PolyQ::is_one() const {
  return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second.is_one();
}

PolyQ PolyQ::operator-() const {
  PolyQ p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

PolyQ& PolyQ::operator+=(const PolyQ& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      Gaussian c = a->second + b->second;
      if (!c.is_zero()) merged.emplace_back(std::move(a->first), c);
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

PolyQ& PolyQ::operator-=(const PolyQ& o) {
  return *this += -o;
}

PolyQ operator*(const PolyQ& a, const PolyQ& b) {
  if (a.is_zero() || b.is_zero()) return PolyQ();
  if (a.is_term()) return b.scaled(a.terms_[0].second, a.terms_[0].first);
  if (b.is_term()) return a.scaled(b.terms_[0].second, b.terms_[0].first);
  std::vector<PolyQ::Term> out;
  out.reserve(a.size() * b.size());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.emplace_back(ma * mb, ca * cb);
  }
  return PolyQ::from_terms(std::move(out));
}

PolyQ PolyQ::scaled(const Gaussian& c, const Monomial& m) const {
  if (c.is_zero()) return PolyQ();
  PolyQ p = *this;
  const bool unit_c = c.is_one();
  const bool unit_m = m.is_one();
  for (auto& t : p.terms_) {
    if (!unit_m) t.first *= m;
    if (!unit_c) t.second *= c;
  }
  return p;
}

PolyQ PolyQ::pow(int k) const {
  if (k < 0) throw std::invalid_argument("PolyQ::pow: negative exponent");
  PolyQ result(Gaussian(1));
  PolyQ base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Monomial PolyQ::content() const {
  if (terms_.empty()) return Monomial();
  Monomial m = terms_.front().first;
  for (const auto& t : terms_) m = Monomial::meet(m, t.first);
  return m;
}

std::complex<double> PolyQ::evaluate(const std::array<std::complex<double>, kMaxGenerators>& logs) const {
  std::complex<double> sum = 0.0;
  for (const auto& [m, c] : terms_) {
    std::complex<double> expo = 0.0;
    for (std::size_t k = 0; k < kMaxGenerators; ++k) {
      if (!m.exponent(k).is_zero()) expo += m.exponent(k).to_double() * logs[k];
    }
    sum += std::complex<double>(c.re.to_double(), c.im.to_double()) * std::exp(expo);
  }
  return sum;
}

std::string PolyQ::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::string coeff;
    bool negative = false;
    if (c.im.is_zero()) {
      negative = c.re.sign() < 0;
      coeff = c.re.abs().to_string();
    } else if (c.re.is_zero()) {
      negative = c.im.sign() < 0;
      Rational a = c.im.abs();
      coeff = a == Rational(1) ? "i" : a.to_string() + "*i";
    } else {
      coeff = c.to_string();
    }
    std::string body;
    if (m.is_one()) {
      body = coeff;
    } else if (coeff == "1") {
      body = m.to_string();
    } else {
      body = coeff + "*" + m.to_string();
    }
    if (out.empty()) {
      out = negative ? "-" + body : body;
    } else {
      out += (negative ? "-" : "+") + body;
    }
  }
  return out;
}

// --------------------------------------------------------------- RatFunc

namespace {

// p = unit * canonical, where canonical has zero content and leading
// coefficient 1. Requires p to have at least two terms.
std::pair<PolyQ, PolyQ> split_unit(const PolyQ& p) {
  Monomial c = p.content();
  Gaussian lead = p.terms().back().second;
  PolyQ canon = p.scaled(lead.inverse(), c.inverse());
  return {PolyQ(c, lead), std::move(canon)};
}

PolyQ invert_term(const PolyQ& t) {
  return PolyQ(t.terms()[0].first.inverse(), t.terms()[0].second.inverse());
}

}  // namespace

RatFunc::RatFunc(Gaussian c) : residual_(c) {}

RatFunc RatFunc::from_poly(PolyQ p) {
  RatFunc r;
  r.residual_ = std::move(p);
  return r;
}

RatFunc RatFunc::factored(const PolyQ& p) {
  if (p.size() <= 1) return from_poly(p);
  auto [unit, canon] = split_unit(p);
  RatFunc r;
  r.residual_ = std::move(unit);
  r.factors_.emplace(std::move(canon), 1);
  return r;
}

std::optional<std::pair<Gaussian, Monomial>> RatFunc::as_term() const {
  if (!factors_.empty() || !residual_.is_term()) return std::nullopt;
  return std::make_pair(residual_.terms()[0].second, residual_.terms()[0].first);
}

PolyQ RatFunc::numerator() const {
  PolyQ n = residual_;
  for (const auto& [f, e] : factors_) {
    if (e > 0) n = n * f.pow(e);
  }
  return n;
}

PolyQ RatFunc::denominator() const {
  PolyQ d(Gaussian(1));
  for (const auto& [f, e] : factors_) {
    if (e < 0) d = d * f.pow(-e);
  }
  return d;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.residual_ = -r.residual_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    *this = o;
    return *this;
  }
  if (factors_ == o.factors_) {
    residual_ += o.residual_;
    if (residual_.is_zero()) factors_.clear();
    return *this;
  }
  // Common part: the minimum exponent of every known factor.
  std::map<PolyQ, int> common;
  PolyQ lhs = residual_;
  PolyQ rhs = o.residual_;
  auto a = factors_.begin();
  auto b = o.factors_.begin();
  while (a != factors_.end() || b != o.factors_.end()) {
    if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      int e = std::min(a->second, 0);
      if (e != 0) common.emplace(a->first, e);
      if (a->second - e > 0) lhs = lhs * a->first.pow(a->second - e);
      if (e < 0) rhs = rhs * a->first.pow(-e);
      ++a;
    } else if (a == factors_.end() || b->first < a->first) {
      int e = std::min(b->second, 0);
      if (e != 0) common.emplace(b->first, e);
      if (b->second - e > 0) rhs = rhs * b->first.pow(b->second - e);
      if (e < 0) lhs = lhs * b->first.pow(-e);
      ++b;
    } else {
      int e = std::min(a->second, b->second);
      if (e != 0) common.emplace(a->first, e);
      if (a->second - e > 0) lhs = lhs * a->first.pow(a->second - e);
      if (b->second - e > 0) rhs = rhs * b->first.pow(b->second - e);
      ++a;
      ++b;
    }
  }
  residual_ = lhs + rhs;
  factors_ = residual_.is_zero() ? std::map<PolyQ, int>{} : std::move(common);
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) {
  return *this += -o;
}

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) {
    *this = RatFunc();
    return *this;
  }
  residual_ = residual_ * o.residual_;
  for (const auto& [f, e] : o.factors_) {
    auto [it, inserted] = factors_.emplace(f, e);
    if (!inserted) {
      it->second += e;
      if (it->second == 0) factors_.erase(it);
    }
  }
  return *this;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw ZeroDivisionError("division by a rational function that is exactly zero");
  RatFunc r;
  for (const auto& [f, e] : factors_) r.factors_.emplace(f, -e);
  if (residual_.is_term()) {
    r.residual_ = invert_term(residual_);
  } else {
    auto [unit, canon] = split_unit(residual_);
    r.residual_ = invert_term(unit);
    auto [it, inserted] = r.factors_.emplace(std::move(canon), -1);
    if (!inserted) {
      it->second -= 1;
      if (it->second == 0) r.factors_.erase(it);
    }
  }
  return r;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  return *this *= o.inverse();
}

RatFunc RatFunc::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  RatFunc result(1);
  for (int i = 0; i < k; ++i) result *= *this;
  return result;
}

std::complex<double> RatFunc::evaluate(std::complex<double> q_value,
                                       const std::map<ParamSymbol, std::complex<double>>& param_values) const {
  std::array<std::complex<double>, kMaxGenerators> logs{};
  const std::complex<double> log_q = std::log(q_value);
  logs[0] = log_q;
  for (const auto& [s, v] : param_values) logs[s.slot()] = v * log_q;
  std::complex<double> value = residual_.evaluate(logs);
  for (const auto& [f, e] : factors_) value *= std::pow(f.evaluate(logs), e);
  return value;
}

std::string RatFunc::to_string() const {
  PolyQ den = denominator();
  if (den.is_one()) return numerator().to_string();
  return "(" + numerator().to_string() + ")/(" + den.to_string() + ")";
}

std::size_t RatFunc::complexity() const {
  std::size_t n = residual_.size();
  for (const auto& [f, e] : factors_) n += f.size() * static_cast<std::size_t>(std::abs(e));
  return n;
}

// ------------------------------------------------------ q-number helpers

RatFunc qpow(const ExponentForm& e) {
  return RatFunc::from_poly(PolyQ(Monomial(e)));
}

RatFunc qbracket(const ExponentForm& e) {
  if (e == ExponentForm()) return RatFunc();
  static const RatFunc q_minus_qinv = RatFunc::factored(PolyQ(Monomial(ExponentForm(1))) -
                                                        PolyQ(Monomial(ExponentForm(-1))));
  PolyQ num = PolyQ(Monomial(e)) - PolyQ(Monomial(-e));
  return RatFunc::factored(num) / q_minus_qinv;
}

RatFunc bracket_half_ratio(const ExponentForm& e) {
  PolyQ den = PolyQ(Monomial(e)) + PolyQ(Monomial(-e));
  return RatFunc::factored(den).inverse();
}

bool rf_equal(const RatFunc& a, const RatFunc& b) {
  return (a - b).is_zero();
}

// ----------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse_ratfunc: " + what + " at position " + std::to_string(pos_) + " in '" +
                                std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }

  RatFunc expr() {
    RatFunc acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  RatFunc term() {
    RatFunc acc = factor();
    while (true) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        RatFunc d = factor();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  RatFunc factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    RatFunc base = primary();
    if (!accept('^')) return base;
    Rational e = exponent();
    if (auto t = base.as_term(); t && t->first.is_one()) {
      Monomial m;
      for (std::size_t k = 0; k < kMaxGenerators; ++k) m.set_exponent(k, t->second.exponent(k) * e);
      return RatFunc::from_poly(PolyQ(m));
    }
    if (!e.is_integer()) fail("fractional power of a non-monomial");
    return base.pow(static_cast<int>(e.num()));
  }

  Rational exponent() {
    if (accept('(')) {
      bool neg = accept('-');
      if (!neg) accept('+');
      Rational r(integer());
      if (accept('/')) r = r / Rational(integer());
      if (!accept(')')) fail("expected ')' after exponent");
      return neg ? -r : r;
    }
    bool neg = accept('-');
    Rational r(integer());
    return neg ? -r : r;
  }

  RatFunc primary() {
    skip_ws();
    if (accept('(')) {
      RatFunc r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      return RatFunc(Rational(integer()));
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a number, name or '('");
    std::string_view name = text_.substr(start, pos_ - start);
    if (name == "i") return RatFunc::imag_unit();
    if (name == "q") return qpow(ExponentForm(1));
    return qpow(ExponentForm::symbol(ParamSymbol::named(name)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RatFunc parse_ratfunc(std::string_view text) {
  return Parser(text).parse();
}

}  // namespace iqgt
