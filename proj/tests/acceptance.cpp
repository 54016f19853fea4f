// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "iqgt/casimir.hpp"
#include "iqgt/gtpattern.hpp"
#include "iqgt/structure.hpp"

using namespace iqgt;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fixed(double x, int digits = 2) {
  std::ostringstream out;
  out.precision(digits);
  out << std::fixed << x;
  return out.str();
}

std::string sci(double x) {
  std::ostringstream out;
  out.precision(1);
  out << std::scientific << x;
  return out.str();
}

ParamValue rat(std::int64_t n, std::int64_t d = 1) { return ParamValue::rational(Rational(n, d)); }
const ParamValue gen = ParamValue::symbolic();
Rational half(std::int64_t twice) { return Rational(twice, 2); }

ModuleSpec symbolic3() { return ModuleSpec::so3(gen, gen); }
ModuleSpec symbolic4() { return ModuleSpec::so4(gen, gen, gen, gen); }

Outcome relation_certification() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  RelationReport r3 = verify_relations(symbolic3(), 3);
  RelationReport r4 = verify_relations(symbolic4(), 2);
  double elapsed = seconds_since(start);
  o.require(r3.all_zero() && !r3.entries.empty(), "rank 3 residual nonzero");
  o.require(r4.all_zero() && !r4.entries.empty(), "rank 4 residual nonzero");
  o.require(elapsed < 120, "took " + fixed(elapsed) + " s");
  if (o.pass) {
    o.detail = std::to_string(r3.entries.size()) + " + " + std::to_string(r4.entries.size()) +
               " residuals exactly zero in " + fixed(elapsed) + " s";
  }
  return o;
}

Outcome casimir() {
  Outcome o;
  CasimirReport c3 = verify_casimir(symbolic3(), 3);
  o.require(c3.central_ok, "C_q does not commute with I21, I32");
  o.require(c3.diagonal_ok, "rank 3 C_q not scalar");
  ExponentForm l = ExponentForm::symbol(symbols::ell());
  RatFunc expected = qbracket(l) * qbracket(l) + qpow(l + ExponentForm(1)) * qbracket(l);
  for (const Ket& k : window_kets(symbolic3(), 3)) {
    ModVector image = act_casimir(symbolic3(), ModVector(k));
    o.require(image.equals(ModVector(k, expected)), "eigenvalue differs at " + ket_string(3, k));
  }
  CasimirReport c4 = verify_casimir(symbolic4(), 2);
  o.require(c4.diagonal_ok, "rank 4 C_q not diagonal");
  o.require(c4.eigenvalues.size() == 5, "expected one eigenvalue per l-offset");
  for (std::size_t a = 0; a < c4.eigenvalues.size(); ++a) {
    for (std::size_t b = a + 1; b < c4.eigenvalues.size(); ++b) {
      o.require(!rf_equal(c4.eigenvalues[a].value, c4.eigenvalues[b].value), "levels share an eigenvalue");
    }
  }
  if (o.pass) o.detail = "[l]^2 + q^(l+1)[l] on rank 3 window 3; rank 4 window 2 diagonal per l-offset";
  return o;
}

Outcome s_presentation() {
  Outcome o;
  SPresentationReport s = verify_s_presentation(symbolic3(), 3);
  o.require(s.relations_ok, "s-relation residual nonzero");
  o.require(s.molev_ok, "Molev element mismatch");
  ExponentForm l = ExponentForm::symbol(symbols::ell());
  RatFunc q = qpow(ExponentForm(1));
  RatFunc d = q - qpow(ExponentForm(-1));
  RatFunc expected = q * d * d * (qbracket(l) * qbracket(l) + qpow(l + ExponentForm(1)) * qbracket(l)) +
                     qpow(ExponentForm(3)) + RatFunc(2) * q;
  OpExpr molev = molev_expr();
  for (const Ket& k : window_kets(symbolic3(), 3)) {
    o.require(molev.apply(symbolic3(), ModVector(k)).equals(ModVector(k, expected)),
              "Molev eigenvalue differs at " + ket_string(3, k));
  }
  if (o.pass) o.detail = "three s-relations and the Molev eigenvalue exact on window 3";
  return o;
}

Outcome paper_examples() {
  Outcome o;
  double slowest = 0;
  auto timed = [&](const std::function<AnalysisReport()>& f) {
    auto start = std::chrono::steady_clock::now();
    AnalysisReport r = f();
    slowest = std::max(slowest, seconds_since(start));
    return r;
  };
  auto a = timed([] { return analyze3(rat(1, 2), rat(0)); });
  o.require(a.analyzed && a.irreducible && a.length == 1, "(l=1/2, m0=0) not irreducible");

  auto b = timed([] { return analyze3(rat(1), rat(0)); });
  std::vector<Rational> s_values;
  for (const auto& e : b.S) s_values.push_back(e.value ? e.value->constant() : Rational(999));
  std::sort(s_values.begin(), s_values.end());
  o.require(b.length == 3, "(l=1, m0=0) length differs from 3");
  o.require(s_values == std::vector<Rational>{Rational(-2), Rational(1)}, "(l=1, m0=0) S differs from {-2, 1}");

  auto c = timed([] { return analyze4(rat(0), rat(0), rat(1, 4), rat(0)); });
  o.require(c.analyzed && c.irreducible && c.length == 1, "(p=r=m0=0, l0=1/4) not irreducible");

  auto d = timed([] { return analyze4(rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)); });
  std::vector<Rational> r_values;
  for (const auto& e : d.R) r_values.push_back(e.value ? e.value->constant() : Rational(999));
  o.require(d.length == 6, "(1/4,1/4,1/4,1/4) length differs from 6");
  o.require(d.case_tag == "Case2", "(1/4,1/4,1/4,1/4) not Case 2");
  o.require(r_values == std::vector<Rational>{Rational(1, 4), Rational(-3, 4)}, "l1, l2 differ from 1/4, -3/4");
  o.require(slowest < 1, "slowest analysis took " + fixed(slowest, 3) + " s");
  if (o.pass) o.detail = "four examples reproduced; slowest analysis " + fixed(slowest * 1000, 3) + " ms";
  return o;
}

Outcome oracle_consistency() {
  Outcome o;
  auto spec37 = ModuleSpec::so3(rat(1), rat(0));
  auto ex37 = analyze(spec37);
  SeriesCheck c37 = check_series(spec37, ex37, 6);
  o.require(c37.ok, "Example (l=1, m0=0) at window 6: " + (c37.failures.empty() ? "" : c37.failures.front()));
  auto spec45 = ModuleSpec::so4(rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4));
  auto ex45 = analyze(spec45);
  SeriesCheck c45 = check_series(spec45, ex45, 4);
  o.require(c45.ok, "Example (1/4,1/4,1/4,1/4) at window 4: " + (c45.failures.empty() ? "" : c45.failures.front()));

  auto corrupted = ex45;
  for (auto& layer : corrupted.series) {
    if (layer.name == "U") layer.region = Region::where({{-1, 1, 1}});
  }
  o.require(!check_series(spec45, corrupted, 4).ok, "corrupted U region not detected");
  auto corrupted37 = ex37;
  corrupted37.series.front().region = Region::where({{0, 1, -1}});
  o.require(!check_series(spec37, corrupted37, 6).ok, "corrupted rank 3 region not detected");
  if (o.pass) o.detail = "closure oracle matches both series; corrupted regions rejected";
  return o;
}

Outcome dimensions() {
  Outcome o;
  int modules = 0;
  for (int tl = 0; tl <= 8; ++tl) {
    Rational l = half(tl);
    std::size_t count = enumerate_patterns(3, {l}).size();
    o.require(count == static_cast<std::size_t>(tl + 1), "n=3 count wrong at l=" + l.to_string());
    auto spec = ModuleSpec::so3(ParamValue::rational(l), ParamValue::rational(l), ModuleKind::FiniteHighestWeight);
    int K = std::max(1, tl);
    o.require(window_kets(spec, K).size() == count, "n=3 window misses kets at l=" + l.to_string());
    o.require(verify_relations(spec, K).all_zero(), "n=3 finite relations fail at l=" + l.to_string());
    ++modules;
  }
  for (int tp = 0; tp <= 6; ++tp) {
    for (int tr = -tp; tr <= tp; tr += 2) {
      Rational p = half(tp), r = half(tr);
      std::size_t expected = 0;
      for (int tl = std::abs(tr); tl <= tp; tl += 2) expected += static_cast<std::size_t>(tl + 1);
      std::size_t count = enumerate_patterns(4, {p, r}).size();
      std::string at = " at (p,r)=(" + p.to_string() + "," + r.to_string() + ")";
      o.require(count == expected, "n=4 count wrong" + at);
      auto P = ParamValue::rational(p);
      auto spec = ModuleSpec::so4(P, ParamValue::rational(r), P, P, ModuleKind::FiniteHighestWeight);
      int K = std::max(1, tp);
      o.require(window_kets(spec, K).size() == count, "n=4 window misses kets" + at);
      o.require(verify_relations(spec, K).all_zero(), "n=4 finite relations fail" + at);
      ++modules;
    }
  }
  if (o.pass) o.detail = std::to_string(modules) + " finite modules: counts match, relations exact on every ket";
  return o;
}

Outcome coefficient_identities() {
  Outcome o;
  for (const auto& spec : {symbolic3(), symbolic4()}) {
    for (Ket k : {Ket{0, 0}, Ket{0, 2}, Ket{0, -3}}) {
      o.require(rf_equal(coeff_a(spec, k), alm_square(spec.ell_label(k), spec.m_label(k))),
                "a != A^2 at " + ket_string(spec.rank, k));
    }
  }
  auto s4 = symbolic4();
  for (Ket k : {Ket{0, 0}, Ket{1, -1}, Ket{-2, 1}}) {
    ExponentForm l = s4.ell_label(k), m = s4.m_label(k);
    o.require(rf_equal(coeff_b(s4, k), blm_square(s4.p_form(), s4.r_form(), l, m) / qbracket(l - m + ExponentForm(1))),
              "b != B^2/[l-m+1] at " + ket_string(4, k));
  }
  std::mt19937_64 rng(20240611);
  auto random_form = [&] {
    auto coeff = [&] { return Rational(static_cast<std::int64_t>(rng() % 13) - 6, static_cast<std::int64_t>(rng() % 4) + 1); };
    ExponentForm e(coeff());
    if (rng() % 2) e += ExponentForm::symbol(symbols::ell(), coeff());
    if (rng() % 2) e += ExponentForm::symbol(symbols::m0(), coeff());
    return e;
  };
  int checks = 0;
  for (int t = 0; t < 100; ++t) {
    ExponentForm a = random_form(), b = random_form();
    bool ok = rf_equal(qbracket(a + b), qpow(a) * qbracket(b) + qpow(-b) * qbracket(a));
    o.require(ok, "[a+b] identity fails at a=" + a.to_string() + ", b=" + b.to_string());
    checks += ok;
  }
  if (o.pass) o.detail = "A^2, B^2 identities exact; " + std::to_string(checks) + " randomized [a+b] checks";
  return o;
}

Outcome numeric_backend() {
  Outcome o;
  const std::complex<double> q(1.2, 0);
  double worst34 = 0, worst_dev = 0;
  std::vector<std::vector<Rational>> weights3, weights4;
  for (int tl = 0; tl <= 4; ++tl) weights3.push_back({half(tl)});
  for (int tp = 0; tp <= 4; ++tp) {
    for (int tr = -tp; tr <= tp; tr += 2) weights4.push_back({half(tp), half(tr)});
  }
  for (auto [n, list] : {std::pair{3, &weights3}, std::pair{4, &weights4}}) {
    for (const auto& w : *list) {
      NumericIrrep irrep = numeric_irrep(n, w, q);
      worst34 = std::max(worst34, irrep.max_residual());
      worst_dev = std::max(worst_dev, compare_with_exact(irrep).max_deviation);
    }
  }
  NumericIrrep five = numeric_irrep(5, {1, 0}, q);
  o.require(worst34 < 1e-10, "n=3,4 residual " + sci(worst34));
  o.require(five.max_residual() < 1e-8, "n=5 residual " + sci(five.max_residual()));
  o.require(worst_dev < 1e-9, "rescaled comparison deviates by " + sci(worst_dev));
  if (o.pass) {
    o.detail = "n=3,4 residual " + sci(worst34) + ", n=5 residual " + sci(five.max_residual()) +
               ", rescaled deviation " + sci(worst_dev);
  }
  return o;
}

Outcome pattern_algorithm() {
  Outcome o;
  std::vector<Rational> a;
  for (int t = 16; t >= 1; --t) a.push_back(Rational(t));
  auto at = [](int r) { return Rational(17 - r); };
  std::vector<std::vector<Rational>> layout{{at(1), at(4), at(9), at(16)}, {at(2), at(5), at(10)}, {at(3), at(8), at(15)},
                                            {at(6), at(11)},                {at(7), at(14)},         {at(12)},
                                            {at(13)}};
  o.require(pattern_from_tuple(8, a).rows == layout, "n=8 layout differs");
  std::mt19937_64 rng(424242);
  int valid = 0;
  for (int t = 0; t < 200; ++t) {
    int n = 2 + static_cast<int>(rng() % 8);
    bool half_odd = rng() % 2 == 1;
    std::vector<std::int64_t> twice;
    for (int s = 0; s < tuple_length(n); ++s) twice.push_back(2 * static_cast<std::int64_t>(rng() % 9) + half_odd);
    std::sort(twice.rbegin(), twice.rend());
    std::vector<Rational> tuple;
    for (auto x : twice) tuple.push_back(half(x));
    valid += validate_pattern(pattern_from_tuple(n, tuple)).ok;
  }
  o.require(valid == 200, std::to_string(200 - valid) + " invalid patterns");
  if (o.pass) o.detail = "n=8 layout reproduced; 200/200 random tuples valid";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"relation certification", relation_certification},
      {"Casimir", casimir},
      {"s-presentation", s_presentation},
      {"worked examples", paper_examples},
      {"oracle consistency", oracle_consistency},
      {"dimensions", dimensions},
      {"coefficient identities", coefficient_identities},
      {"general-n numeric backend", numeric_backend},
      {"pattern algorithm", pattern_algorithm},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
