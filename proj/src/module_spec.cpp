#include "iqgt/module_spec.hpp"

namespace iqgt {

namespace symbols {
ParamSymbol ell() { return ParamSymbol::named("l"); }
ParamSymbol p() { return ParamSymbol::named("p"); }
ParamSymbol r() { return ParamSymbol::named("r"); }
ParamSymbol l0() { return ParamSymbol::named("l0"); }
ParamSymbol m0() { return ParamSymbol::named("m0"); }
}  // namespace symbols

ParamValue ParamValue::parse(std::string_view text) {
  if (text == "generic" || text == "symbolic") return symbolic();
  return rational(Rational::parse(text));
}

const Rational& ParamValue::value() const {
  if (symbolic_) throw std::logic_error("ParamValue::value on a symbolic parameter");
  return value_;
}

ModuleSpec ModuleSpec::so3(ParamValue ell, ParamValue m0, ModuleKind kind) {
  ModuleSpec s;
  s.rank = 3;
  s.kind = kind;
  s.ell = ell;
  s.m0 = m0;
  s.validate();
  return s;
}

ModuleSpec ModuleSpec::so4(ParamValue p, ParamValue r, ParamValue l0, ParamValue m0, ModuleKind kind) {
  ModuleSpec s;
  s.rank = 4;
  s.kind = kind;
  s.p = p;
  s.r = r;
  s.l0 = l0;
  s.m0 = m0;
  s.validate();
  return s;
}

namespace {

bool is_half_integer(const Rational& x) { return (x * Rational(2)).is_integer(); }
bool is_integer_diff(const Rational& a, const Rational& b) { return (a - b).is_integer(); }

void require_rational(const ParamValue& v, const char* name) {
  if (v.is_symbolic()) {
    throw InvalidSpecError(std::string("finite module needs a rational value for ") + name);
  }
}

}  // namespace

void ModuleSpec::validate() const {
  if (rank != 3 && rank != 4) throw InvalidSpecError("rank must be 3 or 4, got " + std::to_string(rank));
  if (kind != ModuleKind::FiniteHighestWeight) return;
  if (rank == 3) {
    require_rational(ell, "l");
    require_rational(m0, "m0");
    const Rational& l = ell.value();
    if (!is_half_integer(l) || l.sign() < 0) {
      throw InvalidSpecError("finite rank 3 module needs l in (1/2)Z, l >= 0; got l=" + l.to_string());
    }
    if (!is_integer_diff(m0.value(), l)) {
      throw InvalidSpecError("finite rank 3 module needs m0 = l mod 1");
    }
    return;
  }
  require_rational(p, "p");
  require_rational(r, "r");
  require_rational(l0, "l0");
  require_rational(m0, "m0");
  const Rational& pv = p.value();
  const Rational& rv = r.value();
  if (!is_half_integer(pv) || pv < rv.abs()) {
    throw InvalidSpecError("finite rank 4 module needs p in (1/2)Z with p >= |r|");
  }
  if (!is_integer_diff(pv, rv)) throw InvalidSpecError("finite rank 4 module needs p - r in Z");
  if (!is_integer_diff(l0.value(), pv) || !is_integer_diff(m0.value(), pv)) {
    throw InvalidSpecError("finite rank 4 module needs l0 = m0 = p mod 1");
  }
}

ExponentForm ModuleSpec::ell_label(const Ket& k) const {
  if (rank == 3) return ell.form(symbols::ell());
  return l0.form(symbols::l0()) + ExponentForm(k.k_l);
}

ExponentForm ModuleSpec::m_label(const Ket& k) const {
  return m0.form(symbols::m0()) + ExponentForm(k.k_m);
}

ExponentForm ModuleSpec::p_form() const { return p.form(symbols::p()); }
ExponentForm ModuleSpec::r_form() const { return r.form(symbols::r()); }

std::vector<std::pair<std::string, ParamValue>> ModuleSpec::named_params() const {
  if (rank == 3) return {{"l", ell}, {"m0", m0}};
  return {{"p", p}, {"r", r}, {"l0", l0}, {"m0", m0}};
}

std::string ModuleSpec::describe() const {
  std::string out = rank == 3 ? "so3" : "so4";
  out += kind == ModuleKind::Generic ? " generic" : " finite";
  for (const auto& [name, value] : named_params()) out += " " + name + "=" + value.to_string();
  return out;
}

}  // namespace iqgt
