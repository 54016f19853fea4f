#include "iqgt/repcore.hpp"

#include <algorithm>

namespace iqgt {

std::string to_string(Generator g) {
  switch (g) {
    case Generator::I21: return "I21";
    case Generator::I32: return "I32";
    case Generator::I43: return "I43";
  }
  return "?";
}

RatFunc ModVector::coeff(const Ket& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? RatFunc() : it->second;
}

void ModVector::add(const Ket& k, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

ModVector& ModVector::operator+=(const ModVector& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

ModVector& ModVector::operator-=(const ModVector& o) {
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

ModVector ModVector::scaled(const RatFunc& c) const {
  ModVector out;
  if (c.is_zero()) return out;
  for (const auto& [k, x] : terms_) out.terms_.emplace(k, x * c);
  return out;
}

std::string ModVector::to_string(int rank) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")*" + ket_string(rank, k);
  }
  return out;
}

nlohmann::ordered_json ket_json(int rank, const Ket& k) {
  if (rank == 3) return nlohmann::ordered_json::array({k.k_m});
  return nlohmann::ordered_json::array({k.k_l, k.k_m});
}

std::string ket_string(int rank, const Ket& k) {
  if (rank == 3) return "|" + std::to_string(k.k_m) + ">";
  return "|" + std::to_string(k.k_l) + "," + std::to_string(k.k_m) + ">";
}

namespace {

bool vanishes(const ExponentForm& e) { return e == ExponentForm(); }

[[noreturn]] void singular(const ModuleSpec& spec, const Ket& k, const char* coeff, const ExponentForm& e) {
  throw SingularParameterError(std::string(coeff) + " at " + ket_string(spec.rank, k) + " of " + spec.describe() +
                               ": bracket [" + e.to_string() + "] in the denominator vanishes");
}

/// prod [num_i] / prod [den_j]. A vanishing denominator is an error, except
/// that 0/0 in a finite module counts as 0.
RatFunc bracket_ratio(const ModuleSpec& spec, const Ket& k, const char* name,
                      std::initializer_list<ExponentForm> num, std::initializer_list<ExponentForm> den) {
  bool num_zero = std::any_of(num.begin(), num.end(), vanishes);
  for (const auto& e : den) {
    if (!vanishes(e)) continue;
    if (num_zero && spec.kind == ModuleKind::FiniteHighestWeight) return RatFunc();
    singular(spec, k, name, e);
  }
  if (num_zero) return RatFunc();
  RatFunc out(1);
  for (const auto& e : num) out *= qbracket(e);
  for (const auto& e : den) out /= qbracket(e);
  return out;
}

}  // namespace

RatFunc coeff_a(const ModuleSpec& spec, const Ket& k) {
  ExponentForm l = spec.ell_label(k);
  ExponentForm m = spec.m_label(k);
  ExponentForm one(1);
  RatFunc a = bracket_ratio(spec, k, "a", {l + m + one, l - m}, {});
  if (a.is_zero()) return a;
  a *= bracket_half_ratio(m) * bracket_half_ratio(m + one);
  if (spec.perturbation == Perturbation::NegateA) a = -a;
  return a;
}

RatFunc coeff_b(const ModuleSpec& spec, const Ket& k) {
  ExponentForm l = spec.ell_label(k);
  ExponentForm m = spec.m_label(k);
  ExponentForm p = spec.p_form();
  ExponentForm r = spec.r_form();
  ExponentForm one(1);
  ExponentForm two_l = l * Rational(2);
  return bracket_ratio(spec, k, "b", {p + l + ExponentForm(2), p - l, l + r + one, l - r + one, l + m + one},
                       {l + one, l + one, two_l + one, two_l + ExponentForm(3)});
}

RatFunc coeff_c(const ModuleSpec& spec, const Ket& k) {
  ExponentForm l = spec.ell_label(k);
  return bracket_ratio(spec, k, "c", {spec.p_form() + ExponentForm(1), spec.r_form(), spec.m_label(k)},
                       {l + ExponentForm(1), l});
}

bool admissible(const ModuleSpec& spec, const Ket& k) {
  if (spec.kind == ModuleKind::Generic) return true;
  Rational m = spec.m0.value() + Rational(k.k_m);
  if (spec.rank == 3) return m.abs() <= spec.ell.value();
  Rational l = spec.l0.value() + Rational(k.k_l);
  return spec.p.value() >= l && l >= spec.r.value().abs() && l >= m.abs();
}

ModVector act_ket(const ModuleSpec& spec, Generator g, const Ket& k) {
  if (g == Generator::I43 && spec.rank != 4) throw std::invalid_argument("I43 acts only on rank 4 modules");
  ModVector out;
  if (!admissible(spec, k)) return out;
  auto put = [&](const Ket& target, const RatFunc& c) {
    if (admissible(spec, target)) out.add(target, c);
  };
  switch (g) {
    case Generator::I21:
      put(k, RatFunc::imag_unit() * qbracket(spec.m_label(k)));
      break;
    case Generator::I32:
      put({k.k_l, k.k_m + 1}, coeff_a(spec, k));
      put({k.k_l, k.k_m - 1}, RatFunc(-1));
      break;
    case Generator::I43: {
      ExponentForm l_minus_m = spec.ell_label(k) - spec.m_label(k);
      put({k.k_l + 1, k.k_m}, coeff_b(spec, k));
      put({k.k_l - 1, k.k_m}, -qbracket(l_minus_m));
      put(k, RatFunc::imag_unit() * coeff_c(spec, k));
      break;
    }
  }
  return out;
}

ModVector act(const ModuleSpec& spec, Generator g, const ModVector& v) {
  ModVector out;
  for (const auto& [k, c] : v.terms()) out += act_ket(spec, g, k).scaled(c);
  return out;
}

ModVector act_word(const ModuleSpec& spec, std::span<const Generator> word, const ModVector& v) {
  ModVector cur = v;
  for (auto it = word.rbegin(); it != word.rend() && !cur.is_zero(); ++it) cur = act(spec, *it, cur);
  return cur;
}

std::vector<Ket> window_kets(const ModuleSpec& spec, int K) {
  if (K < 1) throw std::invalid_argument("window must be at least 1");
  std::vector<Ket> out;
  int l_range = spec.rank == 4 ? K : 0;
  for (int kl = -l_range; kl <= l_range; ++kl) {
    for (int km = -K; km <= K; ++km) {
      Ket k{kl, km};
      if (admissible(spec, k)) out.push_back(k);
    }
  }
  return out;
}

OpExpr OpExpr::word(std::vector<Generator> w, RatFunc c) {
  OpExpr e;
  if (!c.is_zero()) e.terms_.push_back({std::move(c), std::move(w)});
  return e;
}

OpExpr& OpExpr::operator+=(const OpExpr& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

OpExpr& OpExpr::operator-=(const OpExpr& o) {
  for (const auto& t : o.terms_) terms_.push_back({-t.coeff, t.word});
  return *this;
}

OpExpr operator*(const OpExpr& a, const OpExpr& b) {
  OpExpr out;
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      std::vector<Generator> w = x.word;
      w.insert(w.end(), y.word.begin(), y.word.end());
      out.terms_.push_back({x.coeff * y.coeff, std::move(w)});
    }
  }
  return out;
}

OpExpr operator*(const RatFunc& c, const OpExpr& a) {
  OpExpr out;
  if (c.is_zero()) return out;
  for (const auto& t : a.terms_) out.terms_.push_back({c * t.coeff, t.word});
  return out;
}

ModVector OpExpr::apply(const ModuleSpec& spec, const ModVector& v) const {
  // suffix (read right to left) -> image of v
  std::map<std::vector<Generator>, ModVector> memo;
  memo.emplace(std::vector<Generator>{}, v);
  ModVector out;
  for (const auto& t : terms_) {
    std::vector<Generator> suffix;
    const ModVector* cur = &memo.at(suffix);
    for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) {
      suffix.push_back(*it);
      auto found = memo.find(suffix);
      if (found == memo.end()) found = memo.emplace(suffix, act(spec, *it, *cur)).first;
      cur = &found->second;
    }
    out += cur->scaled(t.coeff);
  }
  return out;
}

namespace {

/// x^2 y - [2] x y x + y x^2 + y, which acts as zero for adjacent generators.
OpExpr serre_type(Generator x, Generator y) {
  RatFunc two = qbracket(ExponentForm(2));
  return OpExpr::word({x, x, y}) - OpExpr::word({x, y, x}, two) + OpExpr::word({y, x, x}) + OpExpr::word({y});
}

}  // namespace

std::vector<NamedRelation> defining_relations(int rank) {
  using G = Generator;
  std::vector<NamedRelation> out{
      {"rel2(I21,I32)", serre_type(G::I32, G::I21)},
      {"rel3(I21,I32)", serre_type(G::I21, G::I32)},
  };
  if (rank == 4) {
    out.push_back({"rel2(I32,I43)", serre_type(G::I43, G::I32)});
    out.push_back({"rel3(I32,I43)", serre_type(G::I32, G::I43)});
    out.push_back({"rel1(I21,I43)", OpExpr::word({G::I21, G::I43}) - OpExpr::word({G::I43, G::I21})});
  }
  return out;
}

bool RelationReport::all_zero() const { return failures() == 0; }

std::size_t RelationReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const RelationResidual& r) { return !r.residual_zero; }));
}

RelationReport verify_relations(const ModuleSpec& spec, int K) {
  spec.validate();
  RelationReport report;
  report.rank = spec.rank;
  report.window = K;
  auto relations = defining_relations(spec.rank);
  for (const Ket& k : window_kets(spec, K)) {
    for (const auto& rel : relations) {
      ModVector residual;
      try {
        residual = rel.expr.apply(spec, ModVector(k));
      } catch (const SingularParameterError& e) {
        throw SingularParameterError(rel.name + " on " + ket_string(spec.rank, k) + ": " + e.what());
      }
      bool zero = residual.is_zero();
      report.entries.push_back({rel.name, k, zero, std::move(residual)});
    }
  }
  return report;
}

nlohmann::ordered_json to_json(const RelationReport& report) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    nlohmann::ordered_json j;
    j["relation"] = e.relation;
    j["ket"] = ket_json(report.rank, e.ket);
    j["residual_zero"] = e.residual_zero;
    j["residual"] = e.residual_zero ? nlohmann::ordered_json() : nlohmann::ordered_json(e.residual.to_string(report.rank));
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace iqgt
