#include "iqgt/qcond.hpp"

#include <stdexcept>

namespace iqgt {

std::optional<std::int64_t> solve_qpow_one(const ExponentForm& base, const Rational& step) {
  if (step.is_zero()) throw std::invalid_argument("solve_qpow_one: step must be nonzero");
  if (!base.is_constant()) return std::nullopt;
  Rational k = -base.constant() / step;
  if (!k.is_integer()) return std::nullopt;
  return k.num();
}

bool qpow_minus_one_possible(const ExponentForm& /*base*/, const Rational& /*step*/) {
  return false;
}

bool HypothesisReport::passed() const {
  for (const auto& item : items) {
    if (!item.satisfied) return false;
  }
  return true;
}

namespace {

HypothesisItem qpow_one_item(std::string text, const ExponentForm& base, const Rational& step) {
  HypothesisItem item{std::move(text), true, std::nullopt};
  if (auto k = solve_qpow_one(base, step)) {
    item.satisfied = false;
    item.witness_k = *k;
  }
  return item;
}

}  // namespace

HypothesisReport check_hypotheses(const ModuleSpec& spec) {
  spec.validate();
  HypothesisReport report;
  ExponentForm m0 = spec.m0.form(symbols::m0());
  report.items.push_back({"q^(2*m0+k) != -1", !qpow_minus_one_possible(m0 * Rational(2), Rational(1)),
                          std::nullopt});
  report.notes.emplace_back(kMinusOneJustification);
  if (spec.rank == 4) {
    ExponentForm l0 = spec.l0.form(symbols::l0());
    report.items.push_back(qpow_one_item("q^(2*l0+2k) != 1", l0 * Rational(2), Rational(2)));
    report.items.push_back(qpow_one_item("q^(4*l0+2k) != 1", l0 * Rational(4), Rational(2)));
    if (spec.l0.is_symbolic()) report.notes.emplace_back("l0 is symbolic, so no power of q in l0 is 1");
  }
  return report;
}

nlohmann::ordered_json to_json(const HypothesisReport& report) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& item : report.items) {
    nlohmann::ordered_json j;
    j["hypothesis"] = item.hypothesis;
    j["satisfied"] = item.satisfied;
    j["witness_k"] = item.witness_k ? nlohmann::ordered_json(*item.witness_k) : nlohmann::ordered_json();
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace iqgt
