#pragma once

// I31 = [I21, I32]_q, the Casimir element
//   C_q = -I21^2 - q^-1 I31^2 - q^2 I32^2 - (q - q^-1) I21 I32 I31
// of the rank 3 subalgebra, and the s-generator presentation
//   s21 = q^(-1/2)(q - q^-1) I21,  s32 = q^(-1/2)(q - q^-1) I32,  s31 = -q^-1 (q - q^-1) I31.

#include <string>
#include <vector>

#include "json.hpp"

#include "iqgt/repcore.hpp"

namespace iqgt {

/// Operator expressions built from the generators.
OpExpr i31_expr();
OpExpr casimir_expr();
OpExpr s21_expr();
OpExpr s32_expr();
OpExpr s31_expr();
/// -q^2 s21^2 - q^2 s31^2 - q^4 s32^2 + q^3 s21 s32 s31 + q^3 + 2q.
OpExpr molev_expr();
/// [a, b]_q = ab - q ba.
OpExpr q_commutator(const OpExpr& a, const OpExpr& b);

ModVector act_I31(const ModuleSpec& spec, const ModVector& v);
ModVector act_casimir(const ModuleSpec& spec, const ModVector& v);

/// [l]^2 + q^(l+1) [l].
RatFunc casimir_eigenvalue(const ExponentForm& ell);
/// q (q - q^-1)^2 casimir_eigenvalue(l) + q^3 + 2q.
RatFunc molev_eigenvalue(const ExponentForm& ell);

struct KetFailure {
  Ket ket;
  std::string witness;
};

struct LevelEigenvalue {
  ExponentForm ell;
  int k_l = 0;
  RatFunc value;
};

struct CasimirReport {
  int rank = 3;
  bool central_ok = true;
  bool diagonal_ok = true;
  std::vector<LevelEigenvalue> eigenvalues;  // one per l-level in the window
  std::vector<KetFailure> failures;
};

/// Checks [C_q, I21] = [C_q, I32] = 0 and C_q |k> = casimir_eigenvalue(l) |k>
/// on every window ket.
CasimirReport verify_casimir(const ModuleSpec& spec, int K);

struct SPresentationReport {
  int rank = 3;
  bool relations_ok = true;
  bool molev_ok = true;
  std::vector<LevelEigenvalue> molev_eigenvalues;
  std::vector<KetFailure> failures;
};

/// Checks [s21,s32]_q = -(q-q^-1) s31 and its two cyclic images, and that
/// the Molev element acts by molev_eigenvalue(l), on every window ket.
SPresentationReport verify_s_presentation(const ModuleSpec& spec, int K);

nlohmann::ordered_json to_json(const CasimirReport& report);
nlohmann::ordered_json to_json(const SPresentationReport& report);

}  // namespace iqgt
