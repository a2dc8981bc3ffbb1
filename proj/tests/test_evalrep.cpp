#include <doctest.h>

#include "uqr/evalrep.hpp"

using namespace uqr;

namespace {

Scalar q(int k) { return Scalar::q(k); }

bool all_pass(const std::vector<CheckRecord>& rs) {
  for (auto& r : rs)
    if (!r.pass) {
      MESSAGE("failed ", r.identity, " ", r.component);
      return false;
    }
  return !rs.empty();
}

MultiScalar c1(const Scalar& c) { return MultiScalar(1, c); }

}  // namespace

TEST_CASE("spin representations") {
  SpinRep f = spin_rep(1);
  CHECK(f.E(0, 1) == Scalar(1));
  CHECK(f.F(1, 0) == Scalar(1));
  CHECK(f.K(0, 0) == q(1));
  CHECK(f.K(1, 1) == q(-1));
  for (int j = 0; j <= 4; ++j) CHECK(spin_rep_invariants(spin_rep(j)));
  SpinRep s = spin_rep(2);
  Scalar c0 = Scalar(), c1s = Scalar();
  for (int k = 0; k < 3; ++k) c0 += s.E(0, k) * s.F(k, 0) - s.F(0, k) * s.E(k, 0);
  for (int k = 0; k < 3; ++k) c1s += s.E(1, k) * s.F(k, 1) - s.F(1, k) * s.E(k, 1);
  CHECK(c0 == q_number(2));
  CHECK(c1s.is_zero());
}

TEST_CASE("evaluated modes") {
  SpinRep f = spin_rep(1);
  RatMat e0 = ev_mode(f, ModeLetter::E, 0, {1});
  CHECK(equals(e0, to_ratmat(f.E, 1)));
  RatMat f2 = ev_mode(f, ModeLetter::F, 2, {1});
  CHECK(f2(1, 0).equals(MultiScalar::var(1, 0, 2).scaled(q(2))));
  CHECK(f2(0, 1).is_zero());
  RatMat p0 = ev_mode(f, ModeLetter::PsiPlus, 0, {1});
  CHECK(p0(0, 0).equals(c1(q(1))));
  CHECK(p0(1, 1).equals(c1(q(-1))));
  CHECK(is_zero(ev_mode(f, ModeLetter::PsiPlus, -1, {1})));
}

TEST_CASE("relations hold under evaluation") {
  for (int j = 1; j <= 2; ++j) {
    SpinRep r = spin_rep(j);
    CHECK(all_pass(relation_check_eval(r, 2)));
    CHECK(all_pass(half_current_check(r, 4)));
    CHECK(all_pass(half_current_relation_check(r)));
  }
}

TEST_CASE("contour integrals by residues") {
  // variables (z, a, b) with a inside and b outside
  ContourConvention cv{0, {1}, {2}, false};
  MultiScalar first = MultiScalar::var(3, 1) * MultiScalar::var(3, 0, -1) * MultiScalar::inv_binomial(3, Scalar(1), {-1, 1, 0});
  MultiScalar second = MultiScalar::var(3, 0) * MultiScalar::var(3, 2, -1) * MultiScalar::inv_binomial(3, Scalar(1), {1, 0, -1});
  MultiScalar expect = MultiScalar::var(3, 1) * MultiScalar::var(3, 2, -1) * MultiScalar::inv_binomial(3, Scalar(1), {0, 1, -1});
  CHECK(contour_integral(first * second, cv).equals(expect));
  CHECK(contour_integral(second, cv).is_zero());
  CHECK(contour_integral(MultiScalar(3, q(3)), cv).equals(MultiScalar(3, q(3))));
  // residues sum to zero including infinity
  MultiScalar f = first * second;
  MultiScalar total = residue_sum(f, cv, PoleSet::Inside) + residue_sum(f, cv, PoleSet::Outside) +
                      residue_sum(f, cv, PoleSet::Zero) + residue_sum(f, cv, PoleSet::Infinity);
  CHECK(total.is_zero());
}

TEST_CASE("first-order evaluated integrals") {
  SpinRep f = spin_rep(1);
  MultiScalar x = MultiScalar::var(1, 0);
  MultiScalar pole = MultiScalar::inv_binomial(1, Scalar(1), {1});
  RatMat pm = I_eval(1, Split::PlusMinus, f, f), mp = I_eval(1, Split::MinusPlus, f, f);
  CHECK(pm(2, 1).equals((x * pole).scaled(qm())));
  CHECK(mp(2, 1).equals((x * pole).scaled(-qm())));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != 2 || j != 1) CHECK(pm(i, j).is_zero());
  CHECK(equals(R_eval_recurrence(1, Split::PlusMinus, f, f)[1], pm));
  CHECK(equals(R_eval_recurrence(0, Split::PlusMinus, f, f)[0], rat_identity(4, 1)));
}

TEST_CASE("closed forms of the evaluated integrals and R factors") {
  SpinRep f = spin_rep(1), s = spin_rep(2);
  for (int n = 1; n <= 3; ++n) {
    CHECK(all_pass(eval_integral_check(n, f, f)));
    CHECK(all_pass(eval_integral_check(n, s, s)));
    CHECK(all_pass(eval_integral_check(n, s, f)));
  }
  CHECK(all_pass(eval_recurrence_check(4, s, s)));
  CHECK(all_pass(eval_recurrence_check(3, s, f)));
  CHECK(all_pass(eval_commutation_check(4, s, s)));
  CHECK(all_pass(eval_mode_series_check(2, 2, f, f)));
}

TEST_CASE("Cartan factor at degree zero") {
  SpinRep f = spin_rep(1);
  SeriesMat k = k_factor_eval(f, f, 0);
  CHECK(k(0, 0) == MPoly(1, Scalar::qhalf(-1)));
  CHECK(k(1, 1) == MPoly(1, Scalar::qhalf(1)));
  CHECK(k(2, 2) == MPoly(1, Scalar::qhalf(1)));
  CHECK(k(3, 3) == MPoly(1, Scalar::qhalf(-1)));
}

TEST_CASE("Yang-Baxter equation to degree 2") {
  SpinRep f = spin_rep(1);
  SeriesMat d = ybe_defect(f, 2);
  for (auto& e : d.v) CHECK(e.is_zero());
  CHECK(all_pass(six_vertex_check(2)));
  // a perturbed R-matrix is detected
  SeriesMat r = R_can_eval(f, f, 2);
  r(1, 2).add_term({1}, Scalar(1));
  SeriesMat bad = ybe_defect_of(r, 2, 2);
  CHECK(std::any_of(bad.v.begin(), bad.v.end(), [](const MPoly& e) { return !e.is_zero(); }));
}
