#include <doctest.h>

#include <random>

#include "uqr/qfield.hpp"

using namespace uqr;

namespace {

Scalar q(int k) { return Scalar::q(k); }

Scalar random_scalar(std::mt19937& rng, bool nonzero = false) {
  std::uniform_int_distribution<int> c(-3, 3), e(-3, 3), len(1, 3);
  for (;;) {
    LaurentPoly n, d;
    for (int i = len(rng); i > 0; --i) n += LaurentPoly::monomial(2 * e(rng), c(rng));
    for (int i = len(rng); i > 0; --i) d += LaurentPoly::monomial(2 * e(rng), c(rng));
    if (d.is_zero() || (nonzero && n.is_zero())) continue;
    return Scalar(n, d);
  }
}

// q^2 + (q^2 - q^{-2}) sum_{k>0} q^{2k} x^k
Scalar g_coeff_reference(int j) { return j == 0 ? q(2) : (q(2) - q(-2)) * q(2 * j); }

// g(x) = (q^2 - x) / (1 - q^2 x)
MultiScalar g_function(bool prime) {
  Scalar c = prime ? q(-2) : q(2);
  MPoly num(1, c);
  num.add_term({1}, Scalar(-1));
  return MultiScalar(num) * MultiScalar::inv_binomial(1, c, {1});
}

}  // namespace

TEST_CASE("q-numbers") {
  CHECK(q_number(1) == Scalar(1));
  CHECK(q_number(2) == q(1) + q(-1));
  CHECK(q_number(-2) == -(q(1) + q(-1)));
  CHECK(q_number(0).is_zero());
  for (int n = -10; n <= 10; ++n) {
    CHECK(q_number(n).at_one() == n);
    CHECK(q_number(n) * (q(1) - q(-1)) == q(n) - q(-n));
  }
}

TEST_CASE("q-factorials") {
  CHECK(q_factorial(0) == Scalar(1));
  CHECK(q_factorial(2) == q(1) + q(-1));
  CHECK(q_factorial(3) == (q(1) + q(-1)) * (q(2) + Scalar(1) + q(-2)));
  CHECK(qsq_factorial(0) == Scalar(1));
  CHECK(qsq_factorial(2) == Scalar(1) + q(2));
  CHECK(qsq_factorial(3) == (Scalar(1) + q(2)) * (Scalar(1) + q(2) + q(4)));
  CHECK(qsqinv_factorial(2) == Scalar(1) + q(-2));
  CHECK_THROWS_AS(q_factorial(-1), std::invalid_argument);
  CHECK_THROWS_AS(qsq_factorial(-1), std::invalid_argument);
  for (int n = 1; n <= 8; ++n) CHECK(qsq_number(n) * (q(2) - Scalar(1)) == q(2 * n) - Scalar(1));
}

TEST_CASE("canonical form is a normal form") {
  Scalar a = (q(2) - Scalar(1)) / (q(1) - Scalar(1));
  CHECK(a == q(1) + Scalar(1));
  CHECK((a - (q(1) + Scalar(1))).is_zero());
  Scalar b = Scalar(LaurentPoly::monomial(2, -3), LaurentPoly::monomial(6, -6));
  CHECK(b == q(-2) * Scalar(mpq_class(1, 2)));
  CHECK(b.den().low() == 0);
  CHECK(b.den().lead() > 0);
  CHECK_THROWS(Scalar(LaurentPoly(1), LaurentPoly()));
  CHECK_THROWS(Scalar().inverse());
}

TEST_CASE("field axioms on random scalars") {
  std::mt19937 rng(12345);
  for (int i = 0; i < 60; ++i) {
    Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng), d = random_scalar(rng, true);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
    CHECK((a / d) * d == a);
    CHECK(d * d.inverse() == Scalar(1));
    CHECK(d.pow(3) == d * d * d);
    CHECK(d.pow(-2) * d.pow(2) == Scalar(1));
    CHECK(a.bar().bar() == a);
    CHECK(Scalar::from_json(a.to_json()) == a);
    CHECK(Scalar::from_json(nlohmann::json::parse(a.to_json().dump())) == a);
  }
}

TEST_CASE("half powers and valuation") {
  CHECK(Scalar::qhalf(1) * Scalar::qhalf(1) == q(1));
  CHECK(Scalar::qhalf(3).valuation() == 3);
  CHECK((q(2) + q(5)).valuation() == 4);
  CHECK((q(-1) / (Scalar(1) - q(2))).valuation() == -2);
  CHECK(qm() == q(-1) - q(1));
}

TEST_CASE("series coefficients") {
  auto g = series_coefficients(g_function(false), Direction::AtZero, 0, 2);
  REQUIRE(g.size() == 3);
  CHECK(g[0] == q(2));
  CHECK(g[1] == q(4) - Scalar(1));
  CHECK(g[2] == q(6) - q(2));

  auto five = series_coefficients(MultiScalar(1, Scalar(5)), Direction::AtZero, 0, 1);
  CHECK(five == std::vector<Scalar>{Scalar(5), Scalar()});

  MultiScalar psi = MultiScalar::inv_binomial(1, q(2), {1}).scaled(Scalar(1) - q(2));
  auto p = series_coefficients(psi, Direction::AtZero, 0, 1);
  CHECK(p[0] == Scalar(1) - q(2));
  CHECK(p[1] == q(2) * (Scalar(1) - q(2)));

  // g and g' reproduce their displayed series
  auto gs = series_coefficients(g_function(false), Direction::AtZero, 0, 9);
  auto gps = series_coefficients(g_function(true), Direction::AtZero, 0, 9);
  for (int j = 0; j < 10; ++j) {
    CHECK(gs[j] == g_coeff_reference(j));
    CHECK(gps[j] == g_coeff_reference(j).bar());
  }

  // at infinity, coefficient k is that of x^{-k}
  auto inf = series_coefficients(g_function(false), Direction::AtInfinity, 0, 2);
  CHECK(inf[0] == q(-2));
  CHECK_THROWS_AS(series_coefficients(MultiScalar::var(1, 0, -1), Direction::AtZero, 0, 1), std::domain_error);
}

TEST_CASE("g(x) g(1/x) = 1") {
  MultiScalar g = g_function(false);
  CHECK((g * g.invert_var(0)).equals(MultiScalar(1, Scalar(1))));
  MultiScalar gp = g_function(true);
  CHECK((gp * gp.invert_var(0)).equals(MultiScalar(1, Scalar(1))));
}

TEST_CASE("multivariate rational functions") {
  MultiScalar x = MultiScalar::var(2, 0), y = MultiScalar::var(2, 1);
  MultiScalar inv = MultiScalar::inv_binomial(2, q(2), {1, -1});
  MPoly one_minus(2, Scalar(1));
  one_minus.add_term({1, -1}, -q(2));
  CHECK((inv * MultiScalar(one_minus)).equals(MultiScalar(2, Scalar(1))));
  CHECK(inv.invert_var(0).invert_var(0).equals(inv));
  CHECK(((x + y) * (x - y)).equals(x * x - y * y));
  MultiScalar r = (x * y) / (x * y);
  CHECK(r.equals(MultiScalar(2, Scalar(1))));
  // partial fractions: 1/((1-x)(1-q^2 x)) = (1/(1-x) - q^2/(1-q^2 x)) / (1-q^2)
  MultiScalar a = MultiScalar::inv_binomial(1, Scalar(1), {1}), b = MultiScalar::inv_binomial(1, q(2), {1});
  CHECK((a * b).equals((a - b.scaled(q(2))).scaled((Scalar(1) - q(2)).inverse())));
  // normalization flips a leading negative exponent: 1 - c x^{-1} = -c x^{-1} (1 - x / c)
  MultiScalar flip = MultiScalar::inv_binomial(1, q(2), {-1});
  MPoly den(1, Scalar(1));
  den.add_term({-1}, -q(2));
  CHECK((flip * MultiScalar(den)).equals(MultiScalar(1, Scalar(1))));
  BinomialSplit sp = split_two_term(den);
  CHECK(sp.b.m == Exps{1});
}
