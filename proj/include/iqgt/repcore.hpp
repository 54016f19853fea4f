#pragma once

// Generic and finite Gelfand-Tsetlin modules in the rescaled basis where
// every matrix coefficient is a rational function: kets, vectors, the
// generator actions and an exact check of the defining relations.
//
// Rank 3 (generators I21, I32), with l fixed and m = m0 + k_m:
//   I21|m> = i[m] |m>
//   I32|m> = a_{l,m} |m+1> - |m-1>,   a_{l,m} = [l+m+1][l-m] / ((q^m+q^-m)(q^{m+1}+q^{-m-1}))
// Rank 4 adds I43, with l = l0 + k_l:
//   I43|l,m> = b_{l,m} |l+1,m> - [l-m] |l-1,m> + i c_{l,m} |l,m>
//   b_{l,m} = [p+l+2][p-l][l+r+1][l-r+1][l+m+1] / ([l+1]^2 [2l+1][2l+3])
//   c_{l,m} = [p+1][r][m] / ([l+1][l])

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "iqgt/module_spec.hpp"
#include "iqgt/qfield.hpp"

namespace iqgt {

enum class Generator { I21, I32, I43 };

std::string to_string(Generator g);

/// A coefficient denominator vanishes at these parameter values.
class SingularParameterError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Finitely supported vector; zero coefficients are never stored.
class ModVector {
 public:
  ModVector() = default;
  ModVector(const Ket& k, RatFunc c = RatFunc(1)) { add(k, std::move(c)); }  // NOLINT(implicit)

  const std::map<Ket, RatFunc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of k (zero when absent).
  RatFunc coeff(const Ket& k) const;

  void add(const Ket& k, const RatFunc& c);
  ModVector& operator+=(const ModVector& o);
  ModVector& operator-=(const ModVector& o);
  ModVector scaled(const RatFunc& c) const;
  friend ModVector operator+(ModVector a, const ModVector& b) { return a += b; }
  friend ModVector operator-(ModVector a, const ModVector& b) { return a -= b; }
  friend ModVector operator*(const RatFunc& c, const ModVector& v) { return v.scaled(c); }

  /// Exact comparison, coefficient by coefficient.
  bool equals(const ModVector& o) const { return (*this - o).is_zero(); }

  /// "(coeff)*|k_m> + ..." in canonical RatFunc text.
  std::string to_string(int rank) const;

 private:
  std::map<Ket, RatFunc> terms_;
};

/// Ket offsets as a JSON array: [k_m] for rank 3, [k_l, k_m] for rank 4.
nlohmann::ordered_json ket_json(int rank, const Ket& k);
std::string ket_string(int rank, const Ket& k);

// Matrix coefficients at a ket, before any truncation.
RatFunc coeff_a(const ModuleSpec& spec, const Ket& k);
RatFunc coeff_b(const ModuleSpec& spec, const Ket& k);
RatFunc coeff_c(const ModuleSpec& spec, const Ket& k);

bool admissible(const ModuleSpec& spec, const Ket& k);

ModVector act_ket(const ModuleSpec& spec, Generator g, const Ket& k);
ModVector act(const ModuleSpec& spec, Generator g, const ModVector& v);
/// Applies word.back() first.
ModVector act_word(const ModuleSpec& spec, std::span<const Generator> word, const ModVector& v);

/// Kets with every offset in [-K, K]; finite modules keep only admissible ones.
std::vector<Ket> window_kets(const ModuleSpec& spec, int K);

/// A noncommutative polynomial in the generators with RatFunc scalars.
class OpExpr {
 public:
  struct Term {
    RatFunc coeff;
    std::vector<Generator> word;
  };

  OpExpr() = default;
  static OpExpr word(std::vector<Generator> w, RatFunc c = RatFunc(1));

  const std::vector<Term>& terms() const { return terms_; }

  OpExpr& operator+=(const OpExpr& o);
  OpExpr& operator-=(const OpExpr& o);
  friend OpExpr operator+(OpExpr a, const OpExpr& b) { return a += b; }
  friend OpExpr operator-(OpExpr a, const OpExpr& b) { return a -= b; }
  friend OpExpr operator*(const OpExpr& a, const OpExpr& b);
  friend OpExpr operator*(const RatFunc& c, const OpExpr& a);

  /// Applies every word once, sharing common suffixes.
  ModVector apply(const ModuleSpec& spec, const ModVector& v) const;

 private:
  std::vector<Term> terms_;
};

/// The relations checked by verify_relations, each as an expression that
/// must act as zero.
struct NamedRelation {
  std::string name;
  OpExpr expr;
};
std::vector<NamedRelation> defining_relations(int rank);

struct RelationResidual {
  std::string relation;
  Ket ket;
  bool residual_zero = true;
  ModVector residual;
};

struct RelationReport {
  int rank = 3;
  int window = 0;
  std::vector<RelationResidual> entries;

  bool all_zero() const;
  std::size_t failures() const;
};

RelationReport verify_relations(const ModuleSpec& spec, int K);

/// Array of {relation, ket, residual_zero, residual}.
nlohmann::ordered_json to_json(const RelationReport& report);

}  // namespace iqgt
