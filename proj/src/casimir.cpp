#include "iqgt/casimir.hpp"

namespace iqgt {

namespace {

using G = Generator;

RatFunc q_rf() { return qpow(ExponentForm(1)); }
RatFunc q_inv() { return qpow(ExponentForm(-1)); }
RatFunc q_minus_q_inv() { return q_rf() - q_inv(); }

OpExpr identity(RatFunc c) { return OpExpr::word({}, std::move(c)); }

}  // namespace

OpExpr q_commutator(const OpExpr& a, const OpExpr& b) { return a * b - q_rf() * (b * a); }

OpExpr i31_expr() { return q_commutator(OpExpr::word({G::I21}), OpExpr::word({G::I32})); }

OpExpr casimir_expr() {
  OpExpr i21 = OpExpr::word({G::I21});
  OpExpr i32 = OpExpr::word({G::I32});
  OpExpr i31 = i31_expr();
  return RatFunc(-1) * (i21 * i21) - q_inv() * (i31 * i31) - qpow(ExponentForm(2)) * (i32 * i32) -
         q_minus_q_inv() * (i21 * i32 * i31);
}

OpExpr s21_expr() { return qpow(ExponentForm(Rational(-1, 2))) * q_minus_q_inv() * OpExpr::word({G::I21}); }
OpExpr s32_expr() { return qpow(ExponentForm(Rational(-1, 2))) * q_minus_q_inv() * OpExpr::word({G::I32}); }
OpExpr s31_expr() { return -(q_inv() * q_minus_q_inv()) * i31_expr(); }

OpExpr molev_expr() {
  OpExpr s21 = s21_expr(), s32 = s32_expr(), s31 = s31_expr();
  RatFunc q2 = qpow(ExponentForm(2)), q3 = qpow(ExponentForm(3)), q4 = qpow(ExponentForm(4));
  return RatFunc(-1) * q2 * (s21 * s21) - q2 * (s31 * s31) - q4 * (s32 * s32) + q3 * (s21 * s32 * s31) +
         identity(q3 + RatFunc(2) * q_rf());
}

ModVector act_I31(const ModuleSpec& spec, const ModVector& v) { return i31_expr().apply(spec, v); }

ModVector act_casimir(const ModuleSpec& spec, const ModVector& v) { return casimir_expr().apply(spec, v); }

RatFunc casimir_eigenvalue(const ExponentForm& ell) {
  RatFunc b = qbracket(ell);
  return b * b + qpow(ell + ExponentForm(1)) * b;
}

RatFunc molev_eigenvalue(const ExponentForm& ell) {
  RatFunc d = q_minus_q_inv();
  return q_rf() * d * d * casimir_eigenvalue(ell) + qpow(ExponentForm(3)) + RatFunc(2) * q_rf();
}

namespace {

std::vector<LevelEigenvalue> level_values(const ModuleSpec& spec, const std::vector<Ket>& kets,
                                          RatFunc (*value)(const ExponentForm&)) {
  std::vector<LevelEigenvalue> out;
  for (const Ket& k : kets) {
    if (!out.empty() && out.back().k_l == k.k_l) continue;
    ExponentForm l = spec.ell_label(k);
    out.push_back({l, k.k_l, value(l)});
  }
  return out;
}

const RatFunc& level_value(const std::vector<LevelEigenvalue>& levels, int k_l) {
  for (const auto& e : levels) {
    if (e.k_l == k_l) return e.value;
  }
  throw std::logic_error("missing eigenvalue level");
}

nlohmann::ordered_json levels_json(int rank, const std::vector<LevelEigenvalue>& levels) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& e : levels) {
    nlohmann::ordered_json j;
    if (rank == 4) j["k_l"] = e.k_l;
    j["l"] = e.ell.to_string();
    j["eigenvalue"] = e.value.to_string();
    out.push_back(std::move(j));
  }
  return out;
}

nlohmann::ordered_json failures_json(int rank, const std::vector<KetFailure>& failures) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& f : failures) out.push_back({{"ket", ket_json(rank, f.ket)}, {"witness", f.witness}});
  return out;
}

}  // namespace

CasimirReport verify_casimir(const ModuleSpec& spec, int K) {
  spec.validate();
  CasimirReport report;
  report.rank = spec.rank;
  auto kets = window_kets(spec, K);
  report.eigenvalues = level_values(spec, kets, casimir_eigenvalue);
  OpExpr c = casimir_expr();
  OpExpr i21 = OpExpr::word({G::I21});
  OpExpr i32 = OpExpr::word({G::I32});
  OpExpr comm21 = c * i21 - i21 * c;
  OpExpr comm32 = c * i32 - i32 * c;
  for (const Ket& k : kets) {
    ModVector v(k);
    for (const auto& [name, expr] : {std::pair{"[C_q,I21]", &comm21}, std::pair{"[C_q,I32]", &comm32}}) {
      ModVector res = expr->apply(spec, v);
      if (!res.is_zero()) {
        report.central_ok = false;
        report.failures.push_back({k, std::string(name) + " = " + res.to_string(spec.rank)});
      }
    }
    ModVector image = c.apply(spec, v);
    ModVector expected(k, level_value(report.eigenvalues, k.k_l));
    if (!image.equals(expected)) {
      report.diagonal_ok = false;
      report.failures.push_back({k, "C_q - eigenvalue = " + (image - expected).to_string(spec.rank)});
    }
  }
  return report;
}

SPresentationReport verify_s_presentation(const ModuleSpec& spec, int K) {
  spec.validate();
  SPresentationReport report;
  report.rank = spec.rank;
  auto kets = window_kets(spec, K);
  report.molev_eigenvalues = level_values(spec, kets, molev_eigenvalue);
  OpExpr s21 = s21_expr(), s32 = s32_expr(), s31 = s31_expr();
  RatFunc minus_d = -q_minus_q_inv();
  const std::pair<const char*, OpExpr> relations[] = {
      {"[s21,s32]_q + (q-q^-1) s31", q_commutator(s21, s32) - minus_d * s31},
      {"[s32,s31]_q + (q-q^-1) s21", q_commutator(s32, s31) - minus_d * s21},
      {"[s31,s21]_q + (q-q^-1) s32", q_commutator(s31, s21) - minus_d * s32},
  };
  OpExpr molev = molev_expr();
  RatFunc d = q_minus_q_inv();
  OpExpr molev_vs_casimir =
      molev - (q_rf() * d * d) * casimir_expr() - identity(qpow(ExponentForm(3)) + RatFunc(2) * q_rf());
  for (const Ket& k : kets) {
    ModVector v(k);
    for (const auto& [name, expr] : relations) {
      ModVector res = expr.apply(spec, v);
      if (!res.is_zero()) {
        report.relations_ok = false;
        report.failures.push_back({k, std::string(name) + " = " + res.to_string(spec.rank)});
      }
    }
    ModVector res = molev_vs_casimir.apply(spec, v);
    if (!res.is_zero()) {
      report.molev_ok = false;
      report.failures.push_back({k, "Molev - q(q-q^-1)^2 C_q - q^3 - 2q = " + res.to_string(spec.rank)});
    }
    ModVector image = molev.apply(spec, v);
    ModVector expected(k, level_value(report.molev_eigenvalues, k.k_l));
    if (!image.equals(expected)) {
      report.molev_ok = false;
      report.failures.push_back({k, "Molev - eigenvalue = " + (image - expected).to_string(spec.rank)});
    }
  }
  return report;
}

nlohmann::ordered_json to_json(const CasimirReport& report) {
  nlohmann::ordered_json j;
  j["central_ok"] = report.central_ok;
  j["diagonal_ok"] = report.diagonal_ok;
  j["eigenvalues"] = levels_json(report.rank, report.eigenvalues);
  j["failures"] = failures_json(report.rank, report.failures);
  return j;
}

nlohmann::ordered_json to_json(const SPresentationReport& report) {
  nlohmann::ordered_json j;
  j["relations_ok"] = report.relations_ok;
  j["molev_ok"] = report.molev_ok;
  j["molev_eigenvalues"] = levels_json(report.rank, report.molev_eigenvalues);
  j["failures"] = failures_json(report.rank, report.failures);
  return j;
}

}  // namespace iqgt
