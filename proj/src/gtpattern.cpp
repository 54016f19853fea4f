#include "iqgt/gtpattern.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

#include "iqgt/module_spec.hpp"
#include "iqgt/repcore.hpp"

namespace iqgt {

Rational GTPattern::l(int i, int j) const {
  int p = i / 2;
  Rational shift(p - j + (i % 2));
  return m(i, j) + shift;
}

void check_shape(int n, const std::vector<std::vector<Rational>>& rows) {
  if (n < 2) throw std::invalid_argument("pattern size n must be at least 2, got " + std::to_string(n));
  if (rows.size() != static_cast<std::size_t>(n - 1)) {
    throw std::invalid_argument("an n=" + std::to_string(n) + " pattern has " + std::to_string(n - 1) +
                                " rows, got " + std::to_string(rows.size()));
  }
  for (int i = n; i >= 2; --i) {
    const auto& row = rows[static_cast<std::size_t>(n - i)];
    if (row.size() != static_cast<std::size_t>(row_size(i))) {
      throw std::invalid_argument("row " + std::to_string(i) + " needs " + std::to_string(row_size(i)) +
                                  " entries, got " + std::to_string(row.size()));
    }
  }
}

namespace {

std::string entry_name(int i, int j) { return "m_{" + std::to_string(i) + "," + std::to_string(j) + "}"; }

struct ChainTerm {
  std::string text;
  Rational value;
};

void check_chain(const std::vector<ChainTerm>& chain, std::vector<std::string>& out) {
  for (std::size_t t = 0; t + 1 < chain.size(); ++t) {
    const auto& x = chain[t];
    const auto& y = chain[t + 1];
    if (x.value < y.value) {
      out.push_back(x.text + " >= " + y.text + " fails (" + x.value.to_string() + " < " + y.value.to_string() + ")");
    }
  }
}

bool is_half_integer(const Rational& x) { return (x * Rational(2)).is_integer(); }

}  // namespace

PatternCheck validate_pattern(int n, const std::vector<std::vector<Rational>>& rows) {
  check_shape(n, rows);
  GTPattern g{n, rows};
  PatternCheck out;
  auto& v = out.violations;

  const Rational& anchor = g.m(n, 1);
  for (int i = n; i >= 2; --i) {
    for (int j = 1; j <= row_size(i); ++j) {
      const Rational& x = g.m(i, j);
      if (!is_half_integer(x)) {
        v.push_back(entry_name(i, j) + " = " + x.to_string() + " is not a half-integer");
      } else if (!(x - anchor).is_integer()) {
        v.push_back(entry_name(i, j) + " = " + x.to_string() + " is not in the class of " + entry_name(n, 1));
      }
    }
  }

  int k = row_size(n);
  std::vector<ChainTerm> top;
  for (int j = 1; j <= k; ++j) top.push_back({entry_name(n, j), g.m(n, j)});
  if (n % 2 == 1) {
    top.push_back({"0", Rational(0)});
  } else {
    top.back() = {"|" + entry_name(n, k) + "|", g.m(n, k).abs()};
  }
  check_chain(top, v);

  for (int i = n; i >= 3; --i) {
    int p = i / 2;
    std::vector<ChainTerm> chain;
    if (i % 2 == 1) {
      for (int j = 1; j <= p; ++j) {
        chain.push_back({entry_name(i, j), g.m(i, j)});
        chain.push_back({entry_name(i - 1, j), g.m(i - 1, j)});
      }
      chain.push_back({"-" + entry_name(i, p), -g.m(i, p)});
    } else {
      for (int j = 1; j <= p - 1; ++j) {
        chain.push_back({entry_name(i, j), g.m(i, j)});
        chain.push_back({entry_name(i - 1, j), g.m(i - 1, j)});
      }
      chain.push_back({"|" + entry_name(i, p) + "|", g.m(i, p).abs()});
    }
    check_chain(chain, v);
  }
  out.ok = v.empty();
  return out;
}

int tuple_length(int n) {
  int k = n / 2;
  return n % 2 == 0 ? k * k : k * k + k;
}

namespace {

/// Slots (row, column) in the order the even algorithm fills them.
std::vector<std::pair<int, int>> even_slots(int n) {
  int k = n / 2;
  std::vector<std::pair<int, int>> out{{n, 1}};
  for (int j = 1; j <= k - 1; ++j) {
    for (int i = 1; i <= j; ++i) out.emplace_back(n - 1 - 2 * (i - 1), j - (i - 1));
    for (int i = 1; i <= j + 1; ++i) out.emplace_back(n - 2 * j + 2 * (i - 1), i);
  }
  return out;
}

GTPattern empty_pattern(int n) {
  GTPattern g;
  g.n = n;
  for (int i = n; i >= 2; --i) g.rows.emplace_back(static_cast<std::size_t>(row_size(i)));
  return g;
}

}  // namespace

GTPattern pattern_from_tuple(int n, const std::vector<Rational>& a) {
  if (n < 2) throw std::invalid_argument("pattern size n must be at least 2");
  if (a.size() != static_cast<std::size_t>(tuple_length(n))) {
    throw std::invalid_argument("n=" + std::to_string(n) + " needs a tuple of length " +
                                std::to_string(tuple_length(n)) + ", got " + std::to_string(a.size()));
  }
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (!is_half_integer(a[t]) || !(a[t] - a[0]).is_integer()) {
      throw std::invalid_argument("tuple entries must all be integers or all be half-odd");
    }
    if (a[t].sign() < 0) throw std::invalid_argument("tuple entries must be nonnegative");
    if (t > 0 && a[t - 1] < a[t]) throw std::invalid_argument("tuple must be weakly decreasing");
  }

  if (n % 2 == 0) {
    GTPattern g = empty_pattern(n);
    auto slots = even_slots(n);
    for (std::size_t t = 0; t < slots.size(); ++t) g.m(slots[t].first, slots[t].second) = a[t];
    return g;
  }

  int big = n + 1;
  int top_size = row_size(big);
  GTPattern g = empty_pattern(big);
  std::size_t next = 0;
  bool repeat = false;
  Rational last;
  for (auto [row, col] : even_slots(big)) {
    Rational value;
    if (row == big && col == top_size) {
      value = Rational(0);
    } else if (repeat) {
      value = last;
      repeat = false;
    } else {
      value = a.at(next++);
      repeat = row == big;
    }
    g.m(row, col) = value;
    last = value;
  }
  if (next != a.size()) throw std::logic_error("pattern_from_tuple: tuple not consumed");
  GTPattern out{n, {g.rows.begin() + 1, g.rows.end()}};
  return out;
}

namespace {

void enumerate_rows(int n, int i, GTPattern& g, std::vector<GTPattern>& out) {
  if (i < 2) {
    out.push_back(g);
    return;
  }
  const auto& upper = g.rows[static_cast<std::size_t>(n - i - 1)];
  int size = row_size(i);
  auto& row = g.rows[static_cast<std::size_t>(n - i)];
  // Bounds for each entry of row i given row i+1.
  std::vector<std::pair<Rational, Rational>> bounds;
  for (int j = 1; j <= size; ++j) {
    Rational hi = upper[static_cast<std::size_t>(j - 1)];
    Rational lo;
    if (j < size) {
      lo = upper[static_cast<std::size_t>(j)];
    } else if (i % 2 == 0) {
      lo = -upper[static_cast<std::size_t>(j - 1)];
    } else {
      lo = upper[static_cast<std::size_t>(j)].abs();
    }
    bounds.emplace_back(lo, hi);
  }
  auto fill = [&](auto&& self, int j) -> void {
    if (j > size) {
      enumerate_rows(n, i - 1, g, out);
      return;
    }
    const auto& [lo, hi] = bounds[static_cast<std::size_t>(j - 1)];
    for (Rational x = hi; x >= lo; x -= Rational(1)) {
      row[static_cast<std::size_t>(j - 1)] = x;
      self(self, j + 1);
    }
  };
  fill(fill, 1);
}

}  // namespace

std::vector<GTPattern> enumerate_patterns(int n, const std::vector<Rational>& top) {
  GTPattern g = empty_pattern(n);
  if (top.size() != g.rows.front().size()) {
    throw std::invalid_argument("n=" + std::to_string(n) + " highest weight needs " +
                                std::to_string(g.rows.front().size()) + " entries");
  }
  g.rows.front() = top;
  // Check the top row alone by completing it with its own lower bounds.
  GTPattern probe = g;
  for (int i = n - 1; i >= 2; --i) {
    for (int j = 1; j <= row_size(i); ++j) probe.m(i, j) = probe.m(i + 1, j);
  }
  PatternCheck check = validate_pattern(probe);
  if (!check.ok) throw std::invalid_argument("invalid highest weight: " + check.violations.front());
  std::vector<GTPattern> out;
  enumerate_rows(n, n - 1, g, out);
  return out;
}

GTPattern parse_pattern(int n, std::string_view text) {
  std::vector<std::vector<Rational>> rows;
  std::string line;
  auto flush = [&] {
    std::istringstream in(line);
    std::vector<Rational> row;
    std::string token;
    while (in >> token) row.push_back(Rational::parse(token));
    if (!row.empty()) rows.push_back(std::move(row));
    line.clear();
  };
  for (char c : text) {
    if (c == '\n' || c == ';') {
      flush();
    } else {
      line += c;
    }
  }
  flush();
  check_shape(n, rows);
  return GTPattern{n, std::move(rows)};
}

std::string to_text(const GTPattern& g) {
  std::string out;
  for (const auto& row : g.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? " " : "") + row[j].to_string();
    out += "\n";
  }
  return out;
}

nlohmann::ordered_json to_json(const GTPattern& g) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& row : g.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& x : row) r.push_back(x.to_string());
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

/// prod [num] * prod half_ratio(half) / prod [den] over rational labels.
struct BracketProduct {
  std::vector<Rational> num;
  std::vector<Rational> den;
  std::vector<Rational> half;
  std::string what;
};

struct ExactOps {
  using value_type = RatFunc;
  RatFunc bracket(const Rational& x) const { return qbracket(ExponentForm(x)); }
  RatFunc half(const Rational& x) const { return bracket_half_ratio(ExponentForm(x)); }
};

struct NumericOps {
  using value_type = std::complex<double>;
  std::complex<double> q;
  std::complex<double> power(const Rational& x) const { return std::pow(q, x.to_double()); }
  std::complex<double> bracket(const Rational& x) const {
    std::complex<double> t = power(x);
    return (t - 1.0 / t) / (q - 1.0 / q);
  }
  std::complex<double> half(const Rational& x) const {
    std::complex<double> t = power(x);
    return 1.0 / (t + 1.0 / t);
  }
};

template <class Ops>
typename Ops::value_type evaluate(const BracketProduct& b, const Ops& ops) {
  using T = typename Ops::value_type;
  bool num_zero = std::any_of(b.num.begin(), b.num.end(), [](const Rational& x) { return x.is_zero(); });
  for (const auto& x : b.den) {
    if (!x.is_zero()) continue;
    if (num_zero) return T(0);
    throw SingularParameterError(b.what + ": bracket [0] in the denominator");
  }
  if (num_zero) return T(0);
  T out(1);
  for (const auto& x : b.num) out *= ops.bracket(x);
  for (const auto& x : b.half) out *= ops.half(x);
  for (const auto& x : b.den) out /= ops.bracket(x);
  return out;
}

void require_level(const GTPattern& g, int p, int j, int row) {
  if (p < 1 || j < 1 || j > p || row > g.n) {
    throw std::out_of_range("no coefficient for p=" + std::to_string(p) + ", j=" + std::to_string(j) +
                            " at n=" + std::to_string(g.n));
  }
}

BracketProduct a_square_terms(const GTPattern& g, int p, int j) {
  require_level(g, p, j, 2 * p + 1);
  BracketProduct b;
  b.what = "A^" + std::to_string(j) + "_" + std::to_string(2 * p) + " squared";
  Rational lj = g.l(2 * p, j);
  b.half = {lj, lj + Rational(1)};
  for (int r = 1; r <= p; ++r) {
    Rational x = g.l(2 * p + 1, r);
    b.num.push_back(x + lj);
    b.num.push_back((x - lj - Rational(1)).abs());
  }
  for (int r = 1; r <= p - 1; ++r) {
    Rational x = g.l(2 * p - 1, r);
    b.num.push_back(x + lj);
    b.num.push_back((x - lj - Rational(1)).abs());
  }
  for (int r = 1; r <= p; ++r) {
    if (r == j) continue;
    Rational x = g.l(2 * p, r);
    b.den.push_back(x + lj);
    b.den.push_back((x - lj).abs());
    b.den.push_back(x + lj + Rational(1));
    b.den.push_back((x - lj - Rational(1)).abs());
  }
  return b;
}

BracketProduct b_square_terms(const GTPattern& g, int p, int j) {
  require_level(g, p, j, 2 * p + 2);
  BracketProduct b;
  b.what = "B^" + std::to_string(j) + "_" + std::to_string(2 * p) + " squared";
  Rational lj = g.l(2 * p + 1, j);
  for (int r = 1; r <= p + 1; ++r) {
    Rational x = g.l(2 * p + 2, r);
    b.num.push_back(x + lj);
    b.num.push_back((x - lj).abs());
  }
  for (int r = 1; r <= p; ++r) {
    Rational x = g.l(2 * p, r);
    b.num.push_back(x + lj);
    b.num.push_back((x - lj).abs());
  }
  for (int r = 1; r <= p; ++r) {
    if (r == j) continue;
    Rational x = g.l(2 * p + 1, r);
    b.den.push_back(x + lj);
    b.den.push_back((x - lj).abs());
    b.den.push_back(x + lj - Rational(1));
    b.den.push_back((x - lj - Rational(1)).abs());
  }
  Rational two_lj = lj * Rational(2);
  b.den.insert(b.den.end(), {lj, lj, two_lj + Rational(1), two_lj - Rational(1)});
  return b;
}

BracketProduct diagonal_terms(const GTPattern& g, int p) {
  if (p < 0 || 2 * p + 2 > g.n) throw std::out_of_range("no diagonal term for p=" + std::to_string(p));
  BracketProduct b;
  b.what = "diagonal term of " + generator_name(2 * p + 2);
  for (int r = 1; r <= p + 1; ++r) b.num.push_back(g.l(2 * p + 2, r));
  for (int r = 1; r <= p; ++r) b.num.push_back(g.l(2 * p, r));
  for (int r = 1; r <= p; ++r) {
    Rational x = g.l(2 * p + 1, r);
    b.den.push_back(x);
    b.den.push_back(x - Rational(1));
  }
  return b;
}

}  // namespace

CoeffSquares coeff_squares(const GTPattern& g, int p, int j) {
  if (p < 1 || j < 1 || j > p || 2 * p + 1 > g.n) {
    throw std::out_of_range("no coefficient for p=" + std::to_string(p) + ", j=" + std::to_string(j) +
                            " at n=" + std::to_string(g.n));
  }
  CoeffSquares out;
  out.a_sq = evaluate(a_square_terms(g, p, j), ExactOps{});
  if (2 * p + 2 <= g.n) out.b_sq = evaluate(b_square_terms(g, p, j), ExactOps{});
  return out;
}

RatFunc diagonal_coeff(const GTPattern& g, int p) { return evaluate(diagonal_terms(g, p), ExactOps{}); }

RatFunc alm_square(const ExponentForm& l, const ExponentForm& m) {
  ExponentForm one(1);
  ExponentForm two_m = m * Rational(2);
  return qbracket(m) * qbracket(m + one) / (qbracket(two_m) * qbracket(two_m + ExponentForm(2))) *
         qbracket(l + m + one) * qbracket(l - m);
}

RatFunc blm_square(const ExponentForm& p, const ExponentForm& r, const ExponentForm& l, const ExponentForm& m) {
  ExponentForm one(1);
  ExponentForm two_l = l * Rational(2);
  RatFunc num = qbracket(p + l + ExponentForm(2)) * qbracket(p - l) * qbracket(l + r + one) * qbracket(l - r + one) *
                qbracket(l + m + one) * qbracket(l - m + one);
  RatFunc den = qbracket(l + one).pow(2) * qbracket(two_l + one) * qbracket(two_l + ExponentForm(3));
  return num / den;
}

std::string generator_name(int i) {
  if (i >= 10) return "I" + std::to_string(i) + "," + std::to_string(i - 1);
  return "I" + std::to_string(i) + std::to_string(i - 1);
}

double NumericIrrep::max_residual() const {
  double out = 0;
  for (const auto& r : residuals) out = std::max(out, r.max_abs);
  return out;
}

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::string weight_string(const std::vector<Rational>& w) {
  std::string out = "(";
  for (std::size_t t = 0; t < w.size(); ++t) out += (t ? "," : "") + w[t].to_string();
  return out + ")";
}

std::string complex_string(std::complex<double> z) {
  std::ostringstream out;
  out.precision(12);
  out << z.real();
  if (z.imag() != 0) out << (z.imag() > 0 ? "+" : "") << z.imag() << "i";
  return out.str();
}

void root_of_unity_warnings(std::complex<double> q, std::vector<std::string>& warnings) {
  constexpr int kMaxOrder = 24;
  constexpr double kTolerance = 1e-3;
  for (int order = 1; order <= kMaxOrder; ++order) {
    if (std::abs(std::pow(q, 2 * order) - 1.0) < kTolerance) {
      warnings.push_back("q = " + complex_string(q) + " is close to a root of unity (q^" + std::to_string(2 * order) +
                         " ~ 1); coefficients may be badly conditioned");
      return;
    }
  }
}

}  // namespace

NumericIrrep numeric_irrep(int n, const std::vector<Rational>& weight, std::complex<double> q_value) {
  if (std::abs(q_value * q_value - 1.0) == 0.0) throw std::invalid_argument("q^2 = 1 leaves [b] undefined");
  NumericIrrep out;
  out.n = n;
  out.weight = weight;
  out.q = q_value;
  out.basis = enumerate_patterns(n, weight);
  root_of_unity_warnings(q_value, out.warnings);

  std::map<GTPattern, Eigen::Index> index;
  for (std::size_t t = 0; t < out.basis.size(); ++t) index.emplace(out.basis[t], static_cast<Eigen::Index>(t));
  auto dim = static_cast<Eigen::Index>(out.basis.size());
  NumericOps ops{q_value};
  bool warned_branch = false;
  auto root = [&](const BracketProduct& terms) {
    std::complex<double> sq = evaluate(terms, ops);
    if (!warned_branch && (sq.real() < 0 || std::abs(sq.imag()) > 1e-12 * std::max(1.0, std::abs(sq)))) {
      out.warnings.push_back(terms.what + " = " + complex_string(sq) + " is not a positive real; principal root used");
      warned_branch = true;
    }
    return std::sqrt(sq);
  };

  for (int i = 2; i <= n; ++i) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    int p = i % 2 == 1 ? (i - 1) / 2 : (i - 2) / 2;
    int moved_row = i % 2 == 1 ? 2 * p : 2 * p + 1;
    auto square_terms = [&](const GTPattern& g, int j) {
      return i % 2 == 1 ? a_square_terms(g, p, j) : b_square_terms(g, p, j);
    };
    for (const auto& [alpha, col] : index) {
      for (int j = 1; j <= p; ++j) {
        GTPattern up = alpha;
        up.m(moved_row, j) += Rational(1);
        if (auto it = index.find(up); it != index.end()) m(it->second, col) += root(square_terms(alpha, j));
        GTPattern down = alpha;
        down.m(moved_row, j) -= Rational(1);
        if (auto it = index.find(down); it != index.end()) m(it->second, col) -= root(square_terms(down, j));
      }
      if (i % 2 == 0) m(col, col) += std::complex<double>(0, 1) * evaluate(diagonal_terms(alpha, p), ops);
    }
    out.generators.push_back(std::move(m));
  }

  std::complex<double> two = ops.bracket(Rational(2));
  auto serre = [&](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
    Eigen::MatrixXcd r = x * x * y - two * (x * y * x) + y * x * x + y;
    return r;
  };
  for (int i = 2; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const auto& x = out.generators[static_cast<std::size_t>(i - 2)];
      const auto& y = out.generators[static_cast<std::size_t>(j - 2)];
      std::string pair = "(" + generator_name(i) + "," + generator_name(j) + ")";
      if (j - i > 1) {
        Eigen::MatrixXcd c = x * y - y * x;
        out.residuals.push_back({"rel1" + pair, max_abs(c)});
      } else {
        out.residuals.push_back({"rel2" + pair, max_abs(serre(y, x))});
        out.residuals.push_back({"rel3" + pair, max_abs(serre(x, y))});
      }
    }
  }
  return out;
}

ExactComparison compare_with_exact(const NumericIrrep& irrep) {
  if (irrep.n != 3 && irrep.n != 4) throw std::invalid_argument("exact comparison needs n = 3 or 4");
  ModuleSpec spec;
  auto ket_of = [&](const GTPattern& g) -> Ket {
    if (irrep.n == 3) return {0, static_cast<int>((g.m(2, 1) - g.m(3, 1)).num())};
    return {static_cast<int>((g.m(3, 1) - g.m(4, 1)).num()), static_cast<int>((g.m(2, 1) - g.m(4, 1)).num())};
  };
  const auto& w = irrep.weight;
  if (irrep.n == 3) {
    spec = ModuleSpec::so3(ParamValue::rational(w[0]), ParamValue::rational(w[0]), ModuleKind::FiniteHighestWeight);
  } else {
    spec = ModuleSpec::so4(ParamValue::rational(w[0]), ParamValue::rational(w[1]), ParamValue::rational(w[0]),
                           ParamValue::rational(w[0]), ModuleKind::FiniteHighestWeight);
  }
  std::map<Ket, Eigen::Index> index;
  for (std::size_t t = 0; t < irrep.basis.size(); ++t) index.emplace(ket_of(irrep.basis[t]), static_cast<Eigen::Index>(t));
  auto dim = static_cast<Eigen::Index>(irrep.basis.size());

  const Generator gens[] = {Generator::I21, Generator::I32, Generator::I43};
  std::vector<Eigen::MatrixXcd> exact;
  for (int i = 2; i <= irrep.n; ++i) {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [ket, col] : index) {
      ModVector image = act_ket(spec, gens[i - 2], ket);
      for (const auto& [target, c] : image.terms()) e(index.at(target), col) = c.evaluate(irrep.q);
    }
    exact.push_back(std::move(e));
  }

  constexpr double kNonzero = 1e-12;
  ExactComparison out;
  std::vector<std::complex<double>> mu(static_cast<std::size_t>(dim));
  std::vector<bool> known(static_cast<std::size_t>(dim), false);
  if (dim > 0) {
    mu[0] = 1;
    known[0] = true;
  }
  std::deque<Eigen::Index> queue{0};
  while (!queue.empty() && dim > 0) {
    Eigen::Index a = queue.front();
    queue.pop_front();
    for (std::size_t g = 0; g < exact.size(); ++g) {
      const auto& num = irrep.generators[g];
      const auto& ex = exact[g];
      for (Eigen::Index b = 0; b < dim; ++b) {
        if (known[static_cast<std::size_t>(b)]) continue;
        // exact(b, a) = mu_a / mu_b * num(b, a), or the same with a and b swapped
        if (std::abs(num(b, a)) > kNonzero && std::abs(ex(b, a)) > kNonzero) {
          mu[static_cast<std::size_t>(b)] = mu[static_cast<std::size_t>(a)] * num(b, a) / ex(b, a);
        } else if (std::abs(num(a, b)) > kNonzero && std::abs(ex(a, b)) > kNonzero) {
          mu[static_cast<std::size_t>(b)] = mu[static_cast<std::size_t>(a)] * ex(a, b) / num(a, b);
        } else {
          continue;
        }
        known[static_cast<std::size_t>(b)] = true;
        queue.push_back(b);
      }
    }
  }
  for (Eigen::Index b = 0; b < dim; ++b) {
    if (!known[static_cast<std::size_t>(b)]) mu[static_cast<std::size_t>(b)] = 1;
  }
  for (std::size_t g = 0; g < exact.size(); ++g) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      for (Eigen::Index a = 0; a < dim; ++a) {
        std::complex<double> e = exact[g](b, a);
        std::complex<double> conj = mu[static_cast<std::size_t>(a)] / mu[static_cast<std::size_t>(b)] * irrep.generators[g](b, a);
        out.max_deviation = std::max(out.max_deviation, std::abs(e - conj) / std::max(1.0, std::abs(e)));
      }
    }
  }
  out.scaling = std::move(mu);
  return out;
}

nlohmann::ordered_json to_json(const NumericIrrep& irrep, bool include_matrices) {
  nlohmann::ordered_json j;
  j["n"] = irrep.n;
  auto w = nlohmann::ordered_json::array();
  for (const auto& x : irrep.weight) w.push_back(x.to_string());
  j["weight"] = std::move(w);
  j["q"] = {irrep.q.real(), irrep.q.imag()};
  j["dimension"] = irrep.basis.size();
  auto basis = nlohmann::ordered_json::array();
  for (const auto& g : irrep.basis) basis.push_back(to_json(g));
  j["basis"] = std::move(basis);
  auto res = nlohmann::ordered_json::array();
  for (const auto& r : irrep.residuals) res.push_back({{"relation", r.relation}, {"max_abs", r.max_abs}});
  j["residuals"] = std::move(res);
  j["max_residual"] = irrep.max_residual();
  j["warnings"] = irrep.warnings;
  if (include_matrices) {
    nlohmann::ordered_json mats;
    for (std::size_t t = 0; t < irrep.generators.size(); ++t) {
      const auto& m = irrep.generators[t];
      auto rows = nlohmann::ordered_json::array();
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        auto row = nlohmann::ordered_json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
      }
      mats[generator_name(static_cast<int>(t) + 2)] = std::move(rows);
    }
    j["matrices"] = std::move(mats);
  }
  return j;
}

std::string to_text(const NumericIrrep& irrep) {
  std::ostringstream out;
  out << "n=" << irrep.n << " weight=" << weight_string(irrep.weight) << " q=" << complex_string(irrep.q)
      << " dimension=" << irrep.basis.size() << "\n";
  out.precision(3);
  for (const auto& r : irrep.residuals) out << "  " << r.relation << "  max residual " << std::scientific << r.max_abs << "\n";
  for (const auto& w : irrep.warnings) out << "warning: " << w << "\n";
  return out.str();
}

}  // namespace iqgt
