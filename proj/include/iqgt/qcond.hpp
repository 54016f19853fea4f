#pragma once

// Decision predicates on powers of q for rational or symbolic exponents,
// with q never a root of unity.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "iqgt/module_spec.hpp"

namespace iqgt {

/// The family base + step*k, k ranging over the integers.
struct AffineLine {
  ExponentForm base;
  Rational step;
};

/// The integer k with base + step*k = 0, i.e. the member of the family with
/// q^(base + step*k) = 1. None when base involves a symbol or no integer
/// solution exists. Throws std::invalid_argument when step is zero.
std::optional<std::int64_t> solve_qpow_one(const ExponentForm& base, const Rational& step);
inline std::optional<std::int64_t> solve_qpow_one(const AffineLine& line) {
  return solve_qpow_one(line.base, line.step);
}

/// Whether q^(base + step*k) = -1 can hold for some integer k. Always false.
bool qpow_minus_one_possible(const ExponentForm& base, const Rational& step);

/// Why qpow_minus_one_possible never holds.
inline constexpr const char* kMinusOneJustification =
    "q^t = -1 would give q^(2t) = 1 with t rational, so q would be a root of unity";

struct HypothesisItem {
  std::string hypothesis;
  bool satisfied = true;
  std::optional<std::int64_t> witness_k;
};

struct HypothesisReport {
  std::vector<HypothesisItem> items;
  std::vector<std::string> notes;

  bool passed() const;
};

/// Itemized finite-length hypotheses for a generic module.
HypothesisReport check_hypotheses(const ModuleSpec& spec);

/// Array of {hypothesis, satisfied, witness_k}.
nlohmann::ordered_json to_json(const HypothesisReport& report);

}  // namespace iqgt
