#pragma once

// Gelfand-Tsetlin patterns for general n: validation, construction from a
// decreasing tuple, enumeration, the squared matrix coefficients of the
// orthonormal finite-dimensional irreps, and a floating-point backend that
// assembles those irreps and checks the defining relations.
//
// A pattern has rows n, n-1, ..., 2; row i holds floor(i/2) entries m_{i,j}.
// The coefficients use the shifted labels
//   l_{2p,j} = m_{2p,j} + p - j,   l_{2p+1,j} = m_{2p+1,j} + p - j + 1.

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "iqgt/qfield.hpp"

namespace iqgt {

struct GTPattern {
  int n = 2;
  /// rows[0] is row n, rows.back() is row 2.
  std::vector<std::vector<Rational>> rows;

  /// m_{i,j} with 1-based j.
  const Rational& m(int i, int j) const { return rows[n - i][j - 1]; }
  Rational& m(int i, int j) { return rows[n - i][j - 1]; }
  Rational l(int i, int j) const;
  const std::vector<Rational>& top() const { return rows.front(); }

  friend bool operator==(const GTPattern&, const GTPattern&) = default;
  friend auto operator<=>(const GTPattern&, const GTPattern&) = default;
};

/// Entries of row i.
inline int row_size(int i) { return i / 2; }

/// Throws std::invalid_argument unless rows has the shape of an n pattern.
void check_shape(int n, const std::vector<std::vector<Rational>>& rows);

struct PatternCheck {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Top-row conditions, interlacing between consecutive rows, and the common
/// integer or half-odd class of all entries. Shape mismatches throw.
PatternCheck validate_pattern(int n, const std::vector<std::vector<Rational>>& rows);
inline PatternCheck validate_pattern(const GTPattern& g) { return validate_pattern(g.n, g.rows); }

/// Number of entries a tuple must have: k^2 for n = 2k, k^2 + k for n = 2k + 1.
int tuple_length(int n);

/// Places a weakly decreasing nonnegative tuple into a valid pattern. Odd n
/// runs the even algorithm for n + 1, repeating every value placed in the
/// first k top-row slots, setting m_{n+1,k+1} = 0 and dropping the top row.
GTPattern pattern_from_tuple(int n, const std::vector<Rational>& a);

/// All valid patterns with the given top row, lexicographically decreasing.
std::vector<GTPattern> enumerate_patterns(int n, const std::vector<Rational>& top);

/// Rows separated by newlines or ';', entries by whitespace.
GTPattern parse_pattern(int n, std::string_view text);
std::string to_text(const GTPattern& g);
nlohmann::ordered_json to_json(const GTPattern& g);

/// Squares of A^j_{2p} (moves m_{2p,j}, present when 2p+1 <= n) and
/// B^j_{2p} (moves m_{2p+1,j}, present when 2p+2 <= n), for 1 <= j <= p.
/// Absolute values are taken literally on the labels. A vanishing
/// denominator throws SingularParameterError unless a numerator bracket
/// vanishes too, in which case the square is 0.
struct CoeffSquares {
  std::optional<RatFunc> a_sq;
  std::optional<RatFunc> b_sq;
};
CoeffSquares coeff_squares(const GTPattern& g, int p, int j);

/// Coefficient of |alpha> in I_{2p+2,2p+1}|alpha>, divided by i.
RatFunc diagonal_coeff(const GTPattern& g, int p);

/// A_{l,m}^2 and B_{l,m}^2 of the rank 3 and 4 irreps, with [m]/[2m]-type
/// quotients left as quotients of brackets.
RatFunc alm_square(const ExponentForm& l, const ExponentForm& m);
RatFunc blm_square(const ExponentForm& p, const ExponentForm& r, const ExponentForm& l, const ExponentForm& m);

struct RelationNorm {
  std::string relation;
  double max_abs = 0;
};

struct NumericIrrep {
  int n = 2;
  std::vector<Rational> weight;
  std::complex<double> q;
  std::vector<GTPattern> basis;
  /// generators[i - 2] is the matrix of I_{i,i-1}; columns are images.
  std::vector<Eigen::MatrixXcd> generators;
  std::vector<RelationNorm> residuals;
  std::vector<std::string> warnings;

  double max_residual() const;
};

/// "I21", "I32", ..., "I10,9".
std::string generator_name(int i);

/// Builds every I_{i,i-1} from principal square roots of the squared
/// coefficients at q = q_value and measures each defining relation in the
/// max norm. Warns when q is close to a root of unity of small order.
NumericIrrep numeric_irrep(int n, const std::vector<Rational>& weight, std::complex<double> q_value);

struct ExactComparison {
  /// Largest |exact - D^-1 N D| / max(1, |exact|) over all entries.
  double max_deviation = 0;
  /// Diagonal of D, one entry per basis pattern.
  std::vector<std::complex<double>> scaling;
};

/// For n = 3, 4: compares with the exact finite-module action evaluated at
/// the same q after the diagonal change of basis read off a spanning tree.
ExactComparison compare_with_exact(const NumericIrrep& irrep);

nlohmann::ordered_json to_json(const NumericIrrep& irrep, bool include_matrices);
std::string to_text(const NumericIrrep& irrep);

}  // namespace iqgt
