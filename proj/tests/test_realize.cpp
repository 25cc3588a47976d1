#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support/gen.hpp"
#include "qsde/realize.hpp"

using namespace qsde;

namespace {

NcPoly Q(int m = 1) { return NcPoly::generator(VarId::q(), m); }
NcPoly P(int m = 1) { return NcPoly::generator(VarId::p(), m); }
Scalar I() { return Scalar::i(); }
Scalar im(long long n, long long d = 1) { return Scalar(Rational(0), Rational(n, d)); }

// The worked linear instance: A = [[-2,1],[-1,0]], c1 = 1, c2 = i, gamma = 2.
LinearModel worked_linear() {
  LinearModel lm;
  lm.A[0][0] = Rational(-2);
  lm.A[0][1] = Rational(1);
  lm.A[1][0] = Rational(-1);
  lm.A[1][1] = Rational(0);
  lm.c1 = Scalar(1);
  lm.c2 = I();
  return lm;
}

QsdeModel q3_model() {
  QsdeModel model;
  model.modes = 1;
  model.channels = 1;
  model.f = {Q().pow(3), Scalar(-3) * (Q().pow(2) * P()) + im(3) * Q() - Scalar(2) * P()};
  model.g = {{NcPoly::constant(Scalar(-1), 1)}, {NcPoly::constant(-I(), 1)}};
  model.S = ScalarMatrix::identity(1);
  return model;
}

}  // namespace

TEST_CASE("symplectic form") {
  ScalarMatrix s1 = sigma(1);
  CHECK(s1.at(0, 0) == Scalar());
  CHECK(s1.at(0, 1) == Scalar(1));
  CHECK(s1.at(1, 0) == Scalar(-1));
  CHECK(s1.at(1, 1) == Scalar());

  for (int m : {1, 2, 3}) {
    ScalarMatrix s = sigma(m);
    ScalarMatrix sq = s * s;
    for (int i = 0; i < 2 * m; ++i)
      for (int j = 0; j < 2 * m; ++j)
        CHECK(sq.at(i, j) == (i == j ? Scalar(-1) : Scalar()));
  }
  ScalarMatrix s2 = sigma(2);
  CHECK(s2.at(0, 0) == Scalar());
  CHECK(s2.at(0, 1) == Scalar());
  CHECK(s2.at(0, 2) == Scalar(1));
  CHECK(s2.at(0, 3) == Scalar());
}

TEST_CASE("commutator-conservative test") {
  std::vector<NcPoly> fc = {-Q() + P(), -Q() + P()};
  CHECK(is_commutator_conservative(fc, 1));

  std::vector<NcPoly> bad = {Q(), NcPoly::zero(1)};
  CurlReport rep = commutator_conservative_report(bad, 1);
  CHECK_FALSE(rep.ok);

  std::vector<NcPoly> consts = {NcPoly::constant(Scalar(5), 1), NcPoly::constant(I(), 1)};
  CHECK(is_commutator_conservative(consts, 1));
}

TEST_CASE("potential operator") {
  std::vector<NcPoly> j = {NcPoly::constant(Scalar(-1), 1), NcPoly::constant(-I(), 1)};
  CHECK(potential_operator(j, 1) == -P() + I() * Q());

  std::vector<NcPoly> zero = {NcPoly::zero(1), NcPoly::zero(1)};
  CHECK(potential_operator(zero, 1).is_zero());

  NcPoly J = Q() * P();
  std::vector<NcPoly> grad;
  for (int i = 0; i < 2; ++i) {
    grad.push_back(-(I() * commutator(NcPoly::generator(VarId::from_index(i, 1), 1), J)));
  }
  CHECK(potential_operator(grad, 1) == J);

  std::vector<NcPoly> bad = {Q(), NcPoly::zero(1)};
  CHECK_THROWS_AS(potential_operator(bad, 1), NotConservative);
}

TEST_CASE("hermitianize potential") {
  CHECK(hermitianize_potential(Q() * P()) == Q() * P() - NcPoly::constant(im(1, 2), 1));
  NcPoly sa = Q().pow(2) + P().pow(2);
  CHECK(hermitianize_potential(sa) == sa);
  // The self-adjoint part of q^2 p is q^2 p - i q, but its antihermitian
  // part i q is not constant, so it is not a valid potential input.
  CHECK(herm(Q().pow(2) * P()) == Q().pow(2) * P() - I() * Q());
  CHECK_THROWS_AS(hermitianize_potential(Q().pow(2) * P()), NotHermitianizable);
  CHECK_THROWS_AS(hermitianize_potential(I() * Q().pow(2)), NotHermitianizable);
}

TEST_CASE("coupling operator from the diffusion") {
  PolyMatrix g = {{NcPoly::constant(Scalar(-1), 1)}, {NcPoly::constant(-I(), 1)}};
  ScalarMatrix S = ScalarMatrix::identity(1);

  CouplingResult zl = compute_Z_L(g, S, {});
  REQUIRE(zl.Z.size() == 1);
  CHECK(zl.Z[0] == -P() + I() * Q());
  CHECK(zl.L[0] == Q() + I() * P());

  PolyMatrix zero_g = {{NcPoly::zero(1)}, {NcPoly::zero(1)}};
  std::vector<Scalar> c = {Scalar(2)};
  CouplingResult zl0 = compute_Z_L(zero_g, S, c);
  CHECK(zl0.L[0] == NcPoly::constant(-I() * Scalar(2), 1));

  std::vector<Scalar> ci = {I()};
  CouplingResult zli = compute_Z_L(g, S, ci);
  CHECK(zli.L[0] == Q() + I() * P() + NcPoly::constant(Scalar(1), 1));

  PolyMatrix bad = {{Q()}, {NcPoly::zero(1)}};
  CHECK_THROWS_AS(compute_Z_L(bad, S, {}), NotConservative);
}

TEST_CASE("Lindblad drift part") {
  PolyMatrix g = {{NcPoly::constant(Scalar(-1), 1)}, {NcPoly::constant(-I(), 1)}};
  ScalarMatrix S = ScalarMatrix::identity(1);
  std::vector<NcPoly> L = {Q() + I() * P()};
  std::vector<NcPoly> fL = compute_fL(g, L, S);
  REQUIRE(fL.size() == 2);
  CHECK(fL[0] == -Q());
  CHECK(fL[1] == -P());
  for (const auto& e : fL) CHECK(is_self_adjoint(e));

  std::vector<NcPoly> zeroL = {NcPoly::zero(1)};
  for (const auto& e : compute_fL(g, zeroL, S)) CHECK(e.is_zero());

  // gamma = -2 Im(c2* c1) = 2 for c1 = 1, c2 = i
  LinearModel lm = worked_linear();
  CHECK(lm.gamma() == Rational(2));
}

TEST_CASE("checker accepts the worked linear instance") {
  QsdeModel model = worked_linear().to_model();
  RealizabilityReport rep = check_realizable(model);
  REQUIRE(rep.realizable);
  REQUIRE(rep.realization.has_value());
  CHECK(rep.realization->L[0] == Q() + I() * P());
  NcPoly H_expected = Scalar(Rational(1, 2)) * Q().pow(2) +
                      Scalar(Rational(1, 2)) * P().pow(2) - Q() * P() +
                      NcPoly::constant(im(1, 2), 1);
  CHECK(rep.realization->H == H_expected);
  CHECK(rep.realization->H.str() == "1/2*q^2 + 1/2*p^2 - q*p + 1/2*i");
}

TEST_CASE("checker rejects the rotated drift") {
  LinearModel lm = worked_linear();
  lm.A[0][0] = Rational(0);  // A = [[0,1],[-1,0]]
  RealizabilityReport rep = check_realizable(lm.to_model());
  CHECK_FALSE(rep.realizable);
  CHECK(rep.stage == FailStage::fC_not_conservative);
}

TEST_CASE("checker solves the cubic drift model") {
  RealizabilityReport rep = check_realizable(q3_model());
  REQUIRE(rep.realizable);
  REQUIRE(rep.realization.has_value());
  CHECK(rep.realization->L[0] == Q() + I() * P());

  // H follows from the generator equations: dH/dp = q^3 + q and
  // -dH/dq = -3q^2 p + 3i q - p, hermitized with real constant zero.
  NcPoly H_expected = Q().pow(3) * P() - im(3, 2) * Q().pow(2) + Q() * P() -
                      NcPoly::constant(im(1, 2), 1);
  CHECK(rep.realization->H == H_expected);

  auto [f_back, g_back] = reconstruct_fg(*rep.realization, 1);
  QsdeModel model = q3_model();
  CHECK(f_back[0] == model.f[0]);
  CHECK(f_back[1] == model.f[1]);
  CHECK(g_back[0][0] == model.g[0][0]);
  CHECK(g_back[1][0] == model.g[1][0]);
}

TEST_CASE("checker flags non-self-adjoint drift entries") {
  QsdeModel model = q3_model();
  model.f[0] = I() * Q();
  RealizabilityReport rep = check_realizable(model);
  CHECK_FALSE(rep.realizable);
  CHECK(rep.stage == FailStage::f_not_self_adjoint);
  CHECK(rep.bad_f_indices == std::vector<int>{0});
}

TEST_CASE("checker flags non-conservative diffusion") {
  QsdeModel model = q3_model();
  model.g[0][0] = Q();
  model.g[1][0] = NcPoly::zero(1);
  RealizabilityReport rep = check_realizable(model);
  CHECK_FALSE(rep.realizable);
  CHECK(rep.stage == FailStage::g_not_conservative);
}

TEST_CASE("checker validates S") {
  QsdeModel model = q3_model();
  model.S.at(0, 0) = Scalar(2);
  CHECK_THROWS_AS(check_realizable(model), InvalidS);
}

TEST_CASE("reconstruction examples") {
  Realization r;
  r.H = Scalar(Rational(1, 2)) * (Q().pow(2) + P().pow(2));
  r.L = {NcPoly::zero(1)};
  r.S = ScalarMatrix::identity(1);
  auto [f, g] = reconstruct_fg(r, 1);
  CHECK(f[0] == P());
  CHECK(f[1] == -Q());
  CHECK(g[0][0].is_zero());
  CHECK(g[1][0].is_zero());

  Realization trivial;
  trivial.H = NcPoly::zero(1);
  trivial.L = {NcPoly::zero(1)};
  trivial.S = ScalarMatrix::identity(1);
  auto [f0, g0] = reconstruct_fg(trivial, 1);
  CHECK(f0[0].is_zero());
  CHECK(f0[1].is_zero());
  CHECK(g0[0][0].is_zero());
}

TEST_CASE("two-channel coupling construction") {
  // L = [q, p] with S = I: g = [x, L^T] = [[0, i], [-i, 0]].
  PolyMatrix g = {{NcPoly::zero(1), NcPoly::constant(I(), 1)},
                  {NcPoly::constant(-I(), 1), NcPoly::zero(1)}};
  ScalarMatrix S = ScalarMatrix::identity(2);
  CouplingResult zl = compute_Z_L(g, S, {});
  CHECK(zl.L[0] == Q());
  CHECK(zl.L[1] == P());

  // Swapping the channels through S permutes the coupling operators back.
  ScalarMatrix swap(2, 2);
  swap.at(0, 1) = Scalar(1);
  swap.at(1, 0) = Scalar(1);
  PolyMatrix g_swapped = {{NcPoly::constant(I(), 1), NcPoly::zero(1)},
                          {NcPoly::zero(1), NcPoly::constant(-I(), 1)}};
  CouplingResult zl2 = compute_Z_L(g_swapped, swap, {});
  CHECK(zl2.L[0] == Q());
  CHECK(zl2.L[1] == P());

  QsdeModel model;
  model.modes = 1;
  model.channels = 2;
  model.f = {NcPoly::zero(1), NcPoly::zero(1)};
  model.g = g_swapped;
  model.S = swap;
  RealizabilityReport rep = check_realizable(model);
  REQUIRE(rep.realizable);
  CHECK(rep.realization->H.is_zero());
  CHECK(commutation_preservation(model).all_zero());
}

TEST_CASE("theorem round trip on random realizations") {
  testgen::Rng rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    int m = rng.range(1, 2);
    int n = rng.range(1, 2);
    auto mws = rng.realizable_model(m, n, 4, 3);
    RealizabilityReport rep = check_realizable(mws.model);
    REQUIRE(rep.realizable);
    auto [f2, g2] = reconstruct_fg(*rep.realization, m);
    for (int i = 0; i < 2 * m; ++i) {
      CHECK(f2[static_cast<std::size_t>(i)] == mws.model.f[static_cast<std::size_t>(i)]);
      for (int k = 0; k < n; ++k) {
        CHECK(g2[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] ==
              mws.model.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
      }
    }
  }
}

TEST_CASE("verdicts do not depend on C or S") {
  testgen::Rng rng(42);
  for (int trial = 0; trial < 8; ++trial) {
    auto mws = rng.realizable_model(1, 1, 4, 3);
    RealizabilityReport base = check_realizable(mws.model);
    REQUIRE(base.realizable);
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<Scalar> c = {rng.scalar()};
      CHECK(check_realizable(mws.model, c).realizable);
    }
    // Same (f, g), fresh unitary S.
    for (int rep = 0; rep < 3; ++rep) {
      QsdeModel other = mws.model;
      other.S = rng.unitary(1);
      RealizabilityReport r2 = check_realizable(other);
      CHECK(r2.realizable);
      std::vector<NcPoly> fl1 = compute_fL(mws.model.g, base.realization->L, mws.model.S);
      std::vector<NcPoly> fl2 = compute_fL(other.g, r2.realization->L, other.S);
      CHECK(fl1[0] == fl2[0]);
      CHECK(fl1[1] == fl2[1]);
    }
  }

  // Two channels: the dissipative drift must not see the scattering matrix.
  testgen::Rng rng2(47);
  for (int trial = 0; trial < 6; ++trial) {
    auto mws = rng2.realizable_model(rng2.range(1, 2), 2, 3, 2);
    RealizabilityReport base = check_realizable(mws.model);
    REQUIRE(base.realizable);
    std::vector<NcPoly> fl1 = compute_fL(mws.model.g, base.realization->L, mws.model.S);
    for (int rep = 0; rep < 3; ++rep) {
      QsdeModel other = mws.model;
      other.S = rng2.unitary(2);
      RealizabilityReport r2 = check_realizable(other);
      REQUIRE(r2.realizable);
      std::vector<NcPoly> fl2 = compute_fL(other.g, r2.realization->L, other.S);
      for (std::size_t i = 0; i < fl1.size(); ++i) CHECK(fl1[i] == fl2[i]);
    }
  }
}

TEST_CASE("commutation preservation") {
  SUBCASE("realizable models have vanishing term groups") {
    testgen::Rng rng(43);
    for (int trial = 0; trial < 6; ++trial) {
      auto mws = rng.realizable_model(rng.range(1, 2), rng.range(1, 2), 3, 2);
      PreservationReport pres = commutation_preservation(mws.model);
      CHECK(pres.fL_defined);
      CHECK(pres.all_zero());
    }
  }
  SUBCASE("broken diffusion shows an explicit residual") {
    QsdeModel model = q3_model();
    model.g[0][0] = Q();
    model.g[1][0] = NcPoly::zero(1);
    PreservationReport pres = commutation_preservation(model);
    CHECK_FALSE(pres.b1_zero());
    // B1 entry (1,2) = [q, p] + [q, 0] = i
    CHECK(pres.B1[0][0][1] == NcPoly::constant(I(), 1));
  }
  SUBCASE("trivial model") {
    QsdeModel model;
    model.modes = 1;
    model.channels = 1;
    model.f = {NcPoly::zero(1), NcPoly::zero(1)};
    model.g = {{NcPoly::zero(1)}, {NcPoly::zero(1)}};
    model.S = ScalarMatrix::identity(1);
    PreservationReport pres = commutation_preservation(model);
    CHECK(pres.all_zero());
  }
}

TEST_CASE("closed-system preservation for conservative mappings") {
  testgen::Rng rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    NcPoly J = rng.poly(1, 4, 3);
    std::vector<NcPoly> j;
    for (int i = 0; i < 2; ++i) {
      j.push_back(-(I() * commutator(NcPoly::generator(VarId::from_index(i, 1), 1), J)));
    }
    // [j, x^T] + [x, j^T] = 0
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        NcPoly xa = NcPoly::generator(VarId::from_index(a, 1), 1);
        NcPoly xb = NcPoly::generator(VarId::from_index(b, 1), 1);
        CHECK((commutator(j[static_cast<std::size_t>(a)], xb) +
               commutator(xa, j[static_cast<std::size_t>(b)]))
                  .is_zero());
      }
    }
  }
}

TEST_CASE("three equivalent characterizations agree") {
  testgen::Rng rng(45);
  auto zero_integral_equality = [](const std::vector<NcPoly>& j) {
    BasisSelector pp = BasisSelector::of({VarId::p()}, 1);
    BasisSelector pq = BasisSelector::of({VarId::q()}, 1);
    NcPoly int1 = zero_integral(j[0], VarId::p());
    NcPoly int2 = zero_integral(j[1], VarId::q());
    return project(int1, pp) - int2 == int1 - project(int2, pq);
  };
  auto potential_round_trip = [](const std::vector<NcPoly>& j) {
    BasisSelector pp = BasisSelector::of({VarId::p()}, 1);
    NcPoly J = project(zero_integral(j[0], VarId::p()), pp) -
               zero_integral(j[1], VarId::q());
    for (int i = 0; i < 2; ++i) {
      NcPoly back = -(Scalar::i() *
                      commutator(NcPoly::generator(VarId::from_index(i, 1), 1), J));
      if (back != j[static_cast<std::size_t>(i)]) return false;
    }
    return true;
  };

  for (int trial = 0; trial < 60; ++trial) {
    std::vector<NcPoly> j;
    bool genuine = trial % 2 == 0;
    if (genuine) {
      NcPoly J = rng.poly(1, 4, 3);
      for (int i = 0; i < 2; ++i) {
        j.push_back(-(I() * commutator(NcPoly::generator(VarId::from_index(i, 1), 1), J)));
      }
    } else {
      j = {rng.poly(1, 4, 3) + Q().pow(rng.range(1, 3)), rng.poly(1, 4, 3)};
    }
    bool curl_ok = is_commutator_conservative(j, 1);
    CHECK(curl_ok == zero_integral_equality(j));
    CHECK(curl_ok == potential_round_trip(j));
    if (genuine) CHECK(curl_ok);
  }
}

TEST_CASE("linear specialization") {
  SUBCASE("worked instance") {
    LinearCheckResult res = linear_check(worked_linear());
    CHECK(res.matrix_condition_ok);
    CHECK(res.general.realizable);
    NcPoly H_expected = Scalar(Rational(1, 2)) * Q().pow(2) +
                        Scalar(Rational(1, 2)) * P().pow(2) - Q() * P() +
                        NcPoly::constant(im(1, 2), 1);
    CHECK(res.H == H_expected);
  }
  SUBCASE("zero system") {
    LinearModel lm;
    lm.A[0][0] = lm.A[0][1] = lm.A[1][0] = lm.A[1][1] = Rational(0);
    lm.c1 = Scalar();
    lm.c2 = Scalar();
    LinearCheckResult res = linear_check(lm);
    CHECK(res.matrix_condition_ok);
    CHECK(res.general.realizable);
    CHECK(res.H.is_zero());
  }
  SUBCASE("identity drift fails both paths") {
    LinearModel lm;
    lm.A[0][0] = lm.A[1][1] = Rational(1);
    lm.A[0][1] = lm.A[1][0] = Rational(0);
    lm.c1 = Scalar();
    lm.c2 = Scalar();
    LinearCheckResult res = linear_check(lm);
    CHECK_FALSE(res.matrix_condition_ok);
    CHECK_FALSE(res.general.realizable);
  }
  SUBCASE("matrix condition equivalence on random instances") {
    testgen::Rng rng(46);
    for (int trial = 0; trial < 60; ++trial) {
      LinearModel lm;
      lm.c1 = rng.scalar();
      lm.c2 = rng.scalar();
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) lm.A[i][j] = rng.rational();
      if (trial % 2 == 0) lm.A[0][0] = -lm.A[1][1] - lm.gamma();  // force realizable
      CHECK_NOTHROW(linear_check(lm));  // throws if the two verdicts disagree
    }
  }
}
