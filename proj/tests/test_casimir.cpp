#include "doctest.h"
#include "iqgt/casimir.hpp"
#include "numeric_oracle.hpp"

using namespace iqgt;

namespace {

ParamValue rat(std::int64_t n, std::int64_t d = 1) { return ParamValue::rational(Rational(n, d)); }
const ParamValue gen = ParamValue::symbolic();
constexpr auto Finite = ModuleKind::FiniteHighestWeight;

}  // namespace

TEST_CASE("I31 on a ket") {
  auto spec = ModuleSpec::so3(gen, gen);
  CHECK(act_I31(spec, ModVector()).is_zero());
  ModVector v = act_I31(spec, ModVector(Ket{0, 0}));
  ExponentForm m0 = ExponentForm::symbol(symbols::m0());
  RatFunc i = RatFunc::imag_unit();
  RatFunc q = qpow(ExponentForm(1));
  RatFunc a = coeff_a(spec, Ket{0, 0});
  RatFunc expected_up = (i * qbracket(m0 + ExponentForm(1)) - q * i * qbracket(m0)) * a;
  CHECK(rf_equal(v.coeff({0, 1}), expected_up));
  SUBCASE("numeric expansion of I21 I32 - q I32 I21") {
    oracle::Sampler s;
    for (int t = 0; t < 10; ++t) {
      auto qv = s.q();
      double l = s.uniform(-2, 2), m = s.uniform(-2, 2);
      std::map<ParamSymbol, std::complex<double>> vals{{symbols::ell(), l}, {symbols::m0(), m}};
      oracle::cplx I(0, 1);
      auto a_num = oracle::a_coeff(qv, l, m);
      auto up = I * oracle::bracket(qv, m + 1) * a_num - qv * I * oracle::bracket(qv, m) * a_num;
      auto down = -I * oracle::bracket(qv, m - 1) + qv * I * oracle::bracket(qv, m);
      CHECK(oracle::close(v.coeff({0, 1}).evaluate(qv, vals), up));
      CHECK(oracle::close(v.coeff({0, -1}).evaluate(qv, vals), down));
    }
  }
  SUBCASE("linear") {
    ModVector u(Ket{0, 1}, qpow(m0));
    ModVector w(Ket{0, -2}, RatFunc(3));
    CHECK(act_I31(spec, u + w).equals(act_I31(spec, u) + act_I31(spec, w)));
  }
}

TEST_CASE("casimir eigenvalue") {
  CHECK(casimir_eigenvalue(ExponentForm()).is_zero());
  CHECK(rf_equal(casimir_eigenvalue(ExponentForm(1)), parse_ratfunc("1+q^2")));
  CHECK(rf_equal(molev_eigenvalue(ExponentForm()), parse_ratfunc("q^3+2*q")));
  ExponentForm l0 = ExponentForm::symbol(symbols::l0());
  for (int j = -3; j <= 3; ++j) {
    for (int k = j + 1; k <= 3; ++k) {
      CHECK_FALSE(rf_equal(casimir_eigenvalue(l0 + ExponentForm(j)), casimir_eigenvalue(l0 + ExponentForm(k))));
    }
  }
  // l1 = -l2 - 1 gives the same value
  CHECK(rf_equal(casimir_eigenvalue(ExponentForm(Rational(1, 2))), casimir_eigenvalue(ExponentForm(Rational(-3, 2)))));
}

TEST_CASE("casimir on symbolic modules") {
  auto spec = ModuleSpec::so3(gen, gen);
  ModVector image = act_casimir(spec, ModVector(Ket{0, 2}));
  ExponentForm l = ExponentForm::symbol(symbols::ell());
  CHECK(image.equals(ModVector(Ket{0, 2}, qbracket(l) * qbracket(l) + qpow(l + ExponentForm(1)) * qbracket(l))));
  CHECK(act_casimir(spec, ModVector()).is_zero());

  auto r3 = verify_casimir(spec, 3);
  CHECK(r3.central_ok);
  CHECK(r3.diagonal_ok);
  CHECK(r3.eigenvalues.size() == 1);

  auto s4 = ModuleSpec::so4(gen, gen, gen, gen);
  auto r4 = verify_casimir(s4, 2);
  CHECK(r4.central_ok);
  CHECK(r4.diagonal_ok);
  CHECK(r4.eigenvalues.size() == 5);
  for (std::size_t i = 0; i < r4.eigenvalues.size(); ++i) {
    for (std::size_t j = i + 1; j < r4.eigenvalues.size(); ++j) {
      CHECK_FALSE(rf_equal(r4.eigenvalues[i].value, r4.eigenvalues[j].value));
    }
  }
  auto j = to_json(r4);
  CHECK(j["eigenvalues"][0]["k_l"] == -2);
  CHECK(j["failures"].empty());
}

TEST_CASE("casimir on rational and finite modules") {
  auto fin = verify_casimir(ModuleSpec::so3(rat(1), rat(-1), Finite), 3);
  CHECK(fin.central_ok);
  CHECK(fin.diagonal_ok);
  CHECK(rf_equal(fin.eigenvalues.at(0).value, parse_ratfunc("1+q^2")));
  auto fin4 = verify_casimir(ModuleSpec::so4(rat(2), rat(1), rat(1), rat(0), Finite), 2);
  CHECK(fin4.central_ok);
  CHECK(fin4.diagonal_ok);
  auto gen4 = verify_casimir(ModuleSpec::so4(rat(1, 2), rat(1, 4), rat(1, 4), rat(1, 4)), 2);
  CHECK(gen4.central_ok);
  CHECK(gen4.diagonal_ok);
}

TEST_CASE("casimir check fails on a corrupted action") {
  auto spec = ModuleSpec::so3(gen, gen);
  spec.perturbation = Perturbation::NegateA;
  auto rep = verify_casimir(spec, 2);
  CHECK_FALSE(rep.diagonal_ok);
  CHECK_FALSE(rep.failures.empty());
}

TEST_CASE("s-presentation") {
  auto r3 = verify_s_presentation(ModuleSpec::so3(gen, gen), 2);
  CHECK(r3.relations_ok);
  CHECK(r3.molev_ok);
  ExponentForm l = ExponentForm::symbol(symbols::ell());
  RatFunc d = parse_ratfunc("q-q^(-1)");
  CHECK(rf_equal(r3.molev_eigenvalues.at(0).value,
                 parse_ratfunc("q") * d * d * casimir_eigenvalue(l) + parse_ratfunc("q^3+2*q")));
  auto zero = verify_s_presentation(ModuleSpec::so3(rat(0), rat(0), Finite), 1);
  CHECK(zero.relations_ok);
  CHECK(zero.molev_ok);
  CHECK(rf_equal(zero.molev_eigenvalues.at(0).value, parse_ratfunc("q^3+2*q")));
  auto r4 = verify_s_presentation(ModuleSpec::so4(gen, gen, gen, gen), 1);
  CHECK(r4.relations_ok);
  CHECK(r4.molev_ok);
  auto bad_spec = ModuleSpec::so3(gen, gen);
  bad_spec.perturbation = Perturbation::NegateA;
  CHECK_FALSE(verify_s_presentation(bad_spec, 1).relations_ok);
}
