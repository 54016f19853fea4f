#include <chrono>

#include "doctest.h"
#include "iqgt/repcore.hpp"
#include "numeric_oracle.hpp"

using namespace iqgt;
using G = Generator;

namespace {

ParamValue rat(std::int64_t n, std::int64_t d = 1) { return ParamValue::rational(Rational(n, d)); }
const ParamValue gen = ParamValue::symbolic();
constexpr auto Finite = ModuleKind::FiniteHighestWeight;

ExponentForm sym(ParamSymbol s) { return ExponentForm::symbol(s); }

}  // namespace

TEST_CASE("rank 3 action examples") {
  auto spec = ModuleSpec::so3(gen, gen);
  auto v = act_ket(spec, G::I21, Ket{0, 0});
  CHECK(v.terms().size() == 1);
  CHECK(rf_equal(v.coeff({0, 0}), RatFunc::imag_unit() * qbracket(sym(symbols::m0()))));

  auto w = act_ket(spec, G::I32, Ket{0, 2});
  CHECK(w.terms().size() == 2);
  CHECK(rf_equal(w.coeff({0, 1}), RatFunc(-1)));
  CHECK_THROWS_AS(act_ket(spec, G::I43, Ket{}), std::invalid_argument);
}

TEST_CASE("finite spin one half truncates") {
  auto spec = ModuleSpec::so3(rat(1, 2), rat(-1, 2), Finite);
  auto v = act_ket(spec, G::I32, Ket{0, 0});
  CHECK(v.terms().size() == 1);
  RatFunc expected = parse_ratfunc("1/((q^(1/2)+q^(-1/2))*(q^(1/2)+q^(-1/2)))");
  CHECK(rf_equal(v.coeff({0, 1}), expected));
  oracle::Sampler s;
  for (int t = 0; t < 5; ++t) {
    auto q = s.q();
    CHECK(oracle::close(v.coeff({0, 1}).evaluate(q), oracle::a_coeff(q, 0.5, -0.5)));
  }
  // top ket: a vanishes and the raised ket is out of range anyway
  auto top = act_ket(spec, G::I32, Ket{0, 1});
  CHECK(top.terms().size() == 1);
  CHECK(rf_equal(top.coeff({0, 0}), RatFunc(-1)));
}

TEST_CASE("coefficients match the numeric oracle") {
  oracle::Sampler s;
  auto spec = ModuleSpec::so4(gen, gen, gen, gen);
  for (int t = 0; t < 20; ++t) {
    auto q = s.q();
    double p = s.uniform(-2, 2), r = s.uniform(-2, 2), l0 = s.uniform(-2, 2), m0 = s.uniform(-2, 2);
    std::map<ParamSymbol, std::complex<double>> vals{
        {symbols::p(), p}, {symbols::r(), r}, {symbols::l0(), l0}, {symbols::m0(), m0}};
    Ket k{t % 5 - 2, t % 3 - 1};
    double l = l0 + k.k_l, m = m0 + k.k_m;
    CHECK(oracle::close(coeff_a(spec, k).evaluate(q, vals), oracle::a_coeff(q, l, m)));
    CHECK(oracle::close(coeff_b(spec, k).evaluate(q, vals), oracle::b_coeff(q, p, r, l, m)));
    CHECK(oracle::close(coeff_c(spec, k).evaluate(q, vals), oracle::c_coeff(q, p, r, l, m)));
  }
}

TEST_CASE("rank 4 lowering coefficient is -[l-m]") {
  auto spec = ModuleSpec::so4(gen, gen, gen, gen);
  for (int kl = -2; kl <= 2; ++kl) {
    for (int km = -2; km <= 2; ++km) {
      Ket k{kl, km};
      auto v = act_ket(spec, G::I43, k);
      CHECK(rf_equal(v.coeff({kl - 1, km}), -qbracket(spec.ell_label(k) - spec.m_label(k))));
    }
  }
}

TEST_CASE("rescaled coefficients are squares of the orthonormal ones") {
  auto spec = ModuleSpec::so4(gen, gen, gen, gen);
  ExponentForm p = spec.p_form(), r = spec.r_form();
  for (int kl = -1; kl <= 1; ++kl) {
    for (int km = -1; km <= 1; ++km) {
      Ket k{kl, km};
      ExponentForm l = spec.ell_label(k), m = spec.m_label(k);
      ExponentForm one(1);
      // [m][m+1]/([2m][2m+2]) * [l+m+1][l-m]
      RatFunc a_sq = qbracket(m) * qbracket(m + one) / (qbracket(m * Rational(2)) * qbracket(m * Rational(2) + 2)) *
                     qbracket(l + m + one) * qbracket(l - m);
      CHECK(rf_equal(coeff_a(spec, k), a_sq));
      RatFunc b_sq = qbracket(p + l + 2) * qbracket(p - l) * qbracket(l + r + one) * qbracket(l - r + one) *
                     qbracket(l + m + one) * qbracket(l - m + one) /
                     (qbracket(l + one).pow(2) * qbracket(l * Rational(2) + one) * qbracket(l * Rational(2) + 3));
      CHECK(rf_equal(coeff_b(spec, k), b_sq / qbracket(l - m + one)));
    }
  }
}

TEST_CASE("act and act_word are linear and compose right to left") {
  auto spec = ModuleSpec::so3(gen, gen);
  Ket k{0, 1};
  CHECK(act(spec, G::I32, ModVector()).is_zero());
  CHECK(act(spec, G::I32, ModVector(k, RatFunc(2))).equals(act_ket(spec, G::I32, k).scaled(RatFunc(2))));
  std::vector<Generator> word{G::I32, G::I21};
  CHECK(act_word(spec, word, ModVector(k)).equals(act(spec, G::I32, act(spec, G::I21, ModVector(k)))));
  ModVector u = ModVector(k) + ModVector(Ket{0, -3}, qpow(sym(symbols::ell())));
  CHECK(act(spec, G::I32, u).equals(act(spec, G::I32, ModVector(k)) +
                                     act(spec, G::I32, ModVector(Ket{0, -3}, qpow(sym(symbols::ell()))))));
}

TEST_CASE("admissibility") {
  auto s3 = ModuleSpec::so3(rat(1), rat(0), Finite);
  CHECK(admissible(s3, Ket{0, 1}));
  CHECK_FALSE(admissible(s3, Ket{0, 2}));
  CHECK(admissible(ModuleSpec::so4(rat(1), rat(0), rat(0), rat(0), Finite), Ket{0, 0}));
  CHECK_FALSE(admissible(ModuleSpec::so4(rat(1), rat(1), rat(0), rat(0), Finite), Ket{0, 0}));
  CHECK(admissible(ModuleSpec::so3(gen, gen), Ket{0, 100}));
}

TEST_CASE("finite modules have the expected number of kets") {
  for (int twice_l = 0; twice_l <= 6; ++twice_l) {
    Rational l(twice_l, 2);
    auto spec = ModuleSpec::so3(ParamValue::rational(l), ParamValue::rational(Rational(0) - l), Finite);
    CHECK(window_kets(spec, 10).size() == static_cast<std::size_t>(twice_l + 1));
  }
  struct Case { Rational p, r; };
  for (auto [p, r] : {Case{1, 0}, Case{2, 1}, Case{Rational(3, 2), Rational(1, 2)}, Case{Rational(5, 2), Rational(-3, 2)}}) {
    auto spec = ModuleSpec::so4(ParamValue::rational(p), ParamValue::rational(r), ParamValue::rational(p),
                                ParamValue::rational(p - p.floor()), Finite);
    std::size_t expected = 0;
    for (Rational l = r.abs(); l <= p; l += Rational(1)) expected += static_cast<std::size_t>((l * Rational(2) + Rational(1)).num());
    CHECK(window_kets(spec, 8).size() == expected);
  }
}

TEST_CASE("I21 eigenvalues separate kets") {
  auto spec = ModuleSpec::so3(gen, gen);
  std::vector<RatFunc> eig;
  for (int km = -4; km <= 4; ++km) eig.push_back(act_ket(spec, G::I21, Ket{0, km}).coeff({0, km}));
  for (std::size_t i = 0; i < eig.size(); ++i) {
    for (std::size_t j = i + 1; j < eig.size(); ++j) CHECK_FALSE(rf_equal(eig[i], eig[j]));
  }
  auto half = ModuleSpec::so3(gen, rat(-1, 2));
  CHECK_FALSE(rf_equal(act_ket(half, G::I21, Ket{0, 0}).coeff({0, 0}), act_ket(half, G::I21, Ket{0, 1}).coeff({0, 1})));
}

TEST_CASE("relations hold exactly on symbolic modules") {
  auto t0 = std::chrono::steady_clock::now();
  auto r3 = verify_relations(ModuleSpec::so3(gen, gen), 3);
  CHECK(r3.entries.size() == 14);
  CHECK(r3.all_zero());
  auto t1 = std::chrono::steady_clock::now();
  auto r4 = verify_relations(ModuleSpec::so4(gen, gen, gen, gen), 2);
  CHECK(r4.entries.size() == 125);
  CHECK(r4.all_zero());
  auto t2 = std::chrono::steady_clock::now();
  MESSAGE("rank 3 K=3: " << std::chrono::duration<double>(t1 - t0).count()
                         << " s, rank 4 K=2: " << std::chrono::duration<double>(t2 - t1).count() << " s");
  auto j = to_json(r4);
  CHECK(j[0]["residual"].is_null());
  CHECK(j[0]["ket"].size() == 2);
}

TEST_CASE("relations hold on rational and finite modules") {
  CHECK(verify_relations(ModuleSpec::so3(rat(1, 3), rat(1, 5)), 3).all_zero());
  CHECK(verify_relations(ModuleSpec::so3(rat(2), rat(0)), 4).all_zero());
  CHECK(verify_relations(ModuleSpec::so3(rat(1), rat(0), Finite), 2).all_zero());
  CHECK(verify_relations(ModuleSpec::so3(rat(3, 2), rat(-3, 2), Finite), 4).all_zero());
  CHECK(verify_relations(ModuleSpec::so4(rat(1, 2), rat(1, 4), rat(1, 4), rat(1, 4)), 1).all_zero());
  CHECK(verify_relations(ModuleSpec::so4(rat(1), rat(0), rat(0), rat(0), Finite), 2).all_zero());
  CHECK(verify_relations(ModuleSpec::so4(rat(3, 2), rat(1, 2), rat(1, 2), rat(1, 2), Finite), 2).all_zero());
  CHECK(verify_relations(ModuleSpec::so4(rat(2), rat(-1), rat(1), rat(0), Finite), 2).all_zero());
}

TEST_CASE("negating a breaks the relations on every ket") {
  auto spec = ModuleSpec::so3(gen, gen);
  spec.perturbation = Perturbation::NegateA;
  auto rep = verify_relations(spec, 3);
  CHECK_FALSE(rep.all_zero());
  for (const Ket& k : window_kets(spec, 3)) {
    bool broken = false;
    for (const auto& e : rep.entries) broken |= (e.ket == k && !e.residual_zero);
    CHECK(broken);
  }
  auto j = to_json(rep);
  bool has_text = false;
  for (const auto& e : j) has_text |= e["residual"].is_string();
  CHECK(has_text);
}

TEST_CASE("singular rational parameters are rejected") {
  auto spec = ModuleSpec::so4(gen, rat(1, 2), rat(0), gen);
  CHECK_THROWS_AS(act_ket(spec, G::I43, Ket{0, 0}), SingularParameterError);
  CHECK_THROWS_AS(verify_relations(spec, 1), SingularParameterError);
  // c vanishes identically at l = 0 in the trivial finite module
  auto triv = ModuleSpec::so4(rat(0), rat(0), rat(0), rat(0), Finite);
  CHECK(act_ket(triv, G::I43, Ket{0, 0}).is_zero());
}
