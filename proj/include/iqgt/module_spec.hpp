#pragma once

// Representation instances: which algebra (rank 3 or 4), which kind of
// module, and the value of every parameter.

#include <compare>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iqgt/qfield.hpp"

namespace iqgt {

class InvalidSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter is either a free symbol (algebraically independent of q and
/// of every other parameter) or an exact rational.
class ParamValue {
 public:
  static ParamValue symbolic() { return ParamValue(); }
  static ParamValue rational(Rational v) {
    ParamValue p;
    p.symbolic_ = false;
    p.value_ = v;
    return p;
  }
  /// "generic" or an exact fraction such as "-3/4".
  static ParamValue parse(std::string_view text);

  bool is_symbolic() const { return symbolic_; }
  const Rational& value() const;

  /// The parameter as an exponent: the bare symbol, or the rational constant.
  ExponentForm form(ParamSymbol symbol) const {
    return symbolic_ ? ExponentForm::symbol(symbol) : ExponentForm(value_);
  }

  std::string to_string() const { return symbolic_ ? "generic" : value_.to_string(); }

  friend bool operator==(const ParamValue&, const ParamValue&) = default;

 private:
  ParamValue() = default;
  bool symbolic_ = true;
  Rational value_;
};

enum class ModuleKind { Generic, FiniteHighestWeight };

/// Deliberate corruption of the action, used by tests as a negative control.
enum class Perturbation { None, NegateA };

/// Basis ket label as integer offsets from the anchors: m = m0 + k_m and,
/// for rank 4, l = l0 + k_l. Rank 3 kets keep k_l = 0.
struct Ket {
  int k_l = 0;
  int k_m = 0;

  friend bool operator==(const Ket&, const Ket&) = default;
  friend auto operator<=>(const Ket&, const Ket&) = default;
};

struct ModuleSpec {
  int rank = 3;
  ModuleKind kind = ModuleKind::Generic;
  // Rank 3 uses ell and m0; rank 4 uses p, r, l0 and m0.
  ParamValue ell = ParamValue::symbolic();
  ParamValue p = ParamValue::symbolic();
  ParamValue r = ParamValue::symbolic();
  ParamValue l0 = ParamValue::symbolic();
  ParamValue m0 = ParamValue::symbolic();
  Perturbation perturbation = Perturbation::None;

  static ModuleSpec so3(ParamValue ell, ParamValue m0, ModuleKind kind = ModuleKind::Generic);
  static ModuleSpec so4(ParamValue p, ParamValue r, ParamValue l0, ParamValue m0,
                        ModuleKind kind = ModuleKind::Generic);

  /// Throws InvalidSpecError if the rank is unsupported or a finite module's
  /// highest weight is not admissible.
  void validate() const;

  ExponentForm ell_label(const Ket& k) const;
  ExponentForm m_label(const Ket& k) const;
  ExponentForm p_form() const;
  ExponentForm r_form() const;

  /// (name, value) pairs in a fixed order: l, m0 for rank 3; p, r, l0, m0
  /// for rank 4.
  std::vector<std::pair<std::string, ParamValue>> named_params() const;

  std::string describe() const;
};

/// Symbols used for the parameters of a ModuleSpec.
namespace symbols {
ParamSymbol ell();
ParamSymbol p();
ParamSymbol r();
ParamSymbol l0();
ParamSymbol m0();
}  // namespace symbols

}  // namespace iqgt
