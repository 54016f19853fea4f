#pragma once

// Irreducibility, length and explicit composition series of generic modules.
//
// Under the separation hypotheses every submodule is spanned by the kets it
// contains, so submodules are sets of lattice points. They are described
// here as regions: unions of conjunctions of half-planes a*k_l + b*k_m <= c.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "iqgt/qcond.hpp"
#include "iqgt/repcore.hpp"

namespace iqgt {

/// a*k_l + b*k_m <= c.
struct Constraint {
  int a = 0;
  int b = 0;
  int c = 0;

  bool holds(const Ket& k) const { return a * k.k_l + b * k.k_m <= c; }
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

class Region {
 public:
  using Clause = std::vector<Constraint>;

  static Region everything() { return Region({Clause{}}); }
  static Region nothing() { return Region({}); }
  static Region where(Clause c) { return Region({std::move(c)}); }

  const std::vector<Clause>& clauses() const { return clauses_; }
  bool contains(const Ket& k) const;

  friend Region operator|(const Region& x, const Region& y);
  friend Region operator&(const Region& x, const Region& y);

  /// {"constraints": [...]} for a single clause, {"any_of": [[...], ...]}
  /// for a union.
  nlohmann::ordered_json to_json() const;
  /// "k_m <= 1", "(-k_l + k_m <= 0) or (k_l <= -1)".
  std::string to_string(int rank) const;

 private:
  explicit Region(std::vector<Clause> clauses) : clauses_(std::move(clauses)) {}
  std::vector<Clause> clauses_;
};

struct SeriesLayer {
  std::string name;
  Region region;
  /// Kets that generate the layer.
  std::vector<Ket> generators;
};

/// One element of S (rank 3) or R (rank 4), or the line of kets on which a
/// q-number vanishes (rank 4, S).
struct SingularEntry {
  std::string condition;
  std::optional<ExponentForm> value;  // m for S, l for R
  std::optional<int> offset;          // k_m for S, k_l for R
  std::optional<Constraint> line;     // a*k_l + b*k_m = c
};

struct AnalysisReport {
  int rank = 3;
  std::vector<std::pair<std::string, ParamValue>> params;
  HypothesisReport hypotheses;
  bool analyzed = false;  // false when the hypotheses fail
  bool irreducible = false;
  std::optional<int> length;
  std::string case_tag;  // rank 4: Irreducible, Case1, Case2 or Case3
  std::vector<SingularEntry> S;
  std::vector<SingularEntry> R;
  std::vector<SeriesLayer> series;  // smallest first; excludes 0 and V
  /// Named building blocks of the series (M1, M2, U or W), for diagrams.
  std::vector<std::pair<std::string, Region>> components;
  bool paper_explicit = false;
  std::string note;
};

AnalysisReport analyze3(const ParamValue& ell, const ParamValue& m0);
AnalysisReport analyze4(const ParamValue& p, const ParamValue& r, const ParamValue& l0, const ParamValue& m0);
/// Dispatches on spec.rank; the spec must be generic.
AnalysisReport analyze(const ModuleSpec& spec);

/// The generic module an analysis report describes.
ModuleSpec report_spec(const AnalysisReport& report);

nlohmann::ordered_json to_json(const AnalysisReport& report);
std::string to_text(const AnalysisReport& report);

struct WeightComponent {
  RatFunc i21_eigenvalue;
  std::optional<RatFunc> casimir_eigenvalue;  // rank 4 only
  ModVector part;
};

/// Splits v into joint eigenvectors of I21 (and C_q for rank 4).
std::vector<WeightComponent> weight_decompose(const ModuleSpec& spec, const ModVector& v);

/// Kets with every offset in [-K, K] (k_l = 0 for rank 3), admissible or not.
std::vector<Ket> box_kets(int rank, int K);

/// Forward closure of seeds under the nonzero-coefficient edges of all
/// generators, computed on the box of radius K + margin and cut back to
/// radius K.
std::set<Ket> closure_oracle(const ModuleSpec& spec, const std::vector<Ket>& seeds, int K, int margin = 2);

struct SeriesCheck {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Smallest window radius that contains every series generator with one
/// ket to spare.
int feature_radius(const AnalysisReport& report);

/// For every layer: closed under the action inside the window, generated by
/// its seeds, and each successive quotient generated by any of its kets.
SeriesCheck check_series(const ModuleSpec& spec, const AnalysisReport& report, int K, int margin = 2);
inline bool verify_series(const ModuleSpec& spec, const AnalysisReport& report, int K) {
  return check_series(spec, report, K).ok;
}

}  // namespace iqgt
