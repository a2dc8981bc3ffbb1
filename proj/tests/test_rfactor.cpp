#include <doctest.h>

#include "uqr/rfactor.hpp"

using namespace uqr;

namespace {

Scalar q(int k) { return Scalar::q(k); }

bool all_pass(const std::vector<CheckRecord>& rs) {
  for (auto& r : rs)
    if (!r.pass) {
      MESSAGE("failed ", r.identity, " ", r.component);
      return false;
    }
  return true;
}

Tensor first_order(int N, bool positive) {
  Tensor t;
  for (int k = -N; k <= N; ++k)
    if ((k > 0) == positive) t.add({k}, {-k}, qm());
  return t;
}

}  // namespace

TEST_CASE("composition coefficients") {
  for (int n = 1; n <= 5; ++n) CHECK(calC_coeff(Split::PlusMinus, {n}) == Scalar(mpq_class(1, n)));
  CHECK(calC_coeff(Split::PlusMinus, {1, 1}) == Scalar(mpq_class(1, 2)));
  CHECK(calC_coeff(Split::MinusPlus, {2, 1}) == Scalar(mpq_class(1, 3)));
  CHECK(calC_coeff(Split::PlusMinus, {2, 1}) == Scalar(mpq_class(1, 6)));
  CHECK(compositions(3).size() == 4);
  CHECK(compositions(4).size() == 8);
  for (Split s : {Split::PlusMinus, Split::MinusPlus})
    for (auto& c : compositions(4)) {
      Scalar r = calC_coeff(s, c) * qm().pow(int(c.size()));
      for (int x : c) r = r / (q_factorial(x) * q_factorial(x - 1));
      int n = 0;
      for (int x : c) n += x;
      CHECK(C_coeff(s, c) == (n % 2 ? -r : r));
    }
}

TEST_CASE("composed currents") {
  for (int d = -2; d <= 2; ++d) CHECK(composed_current_component(Kind::E, 1, d, 3) == Element(Kind::E, {d}));
  for (Kind k : {Kind::E, Kind::F})
    for (int n = 2; n <= 3; ++n) {
      CHECK(all_pass(composed_residue_check(k, n, 3)));
      CHECK(all_pass(quadratic_relation_check(k, n, 3)));
      CHECK(all_pass(composed_projection_check(k, n, 3)));
    }
  for (int d = -3; d <= 3; ++d)
    CHECK(composed_current_recursive(Kind::F, 2, d, 3, 0) == composed_current_component(Kind::F, 2, d, 3));
}

TEST_CASE("first-order integrals") {
  CHECK(I_full_component(1, 2) == first_order(2, true) + first_order(2, false));
  CHECK(I_proj_component(1, Split::PlusMinus, 2) == first_order(2, true));
  CHECK(I_proj_component(1, Split::MinusPlus, 2) == first_order(2, false));
  for (Split s : {Split::PlusMinus, Split::MinusPlus})
    for (int n = 1; n <= 3; ++n) CHECK(I_proj_component(n, s, 3) == I_full_projected(n, s, 3));
}

TEST_CASE("R components") {
  for (RMethod m : {RMethod::Recurrence, RMethod::Closed, RMethod::Multiplicative}) {
    CHECK(R_component(0, Split::PlusMinus, 3, m).element == Tensor::unit());
    CHECK(R_component(1, Split::PlusMinus, 2, m).element == first_order(2, true));
    CHECK(R_component(1, Split::MinusPlus, 2, m).element == first_order(2, false));
  }
  for (Split s : {Split::PlusMinus, Split::MinusPlus})
    for (int n = 2; n <= 3; ++n) {
      Tensor a = R_component(n, s, 3, RMethod::Recurrence).element;
      CHECK(a == R_component(n, s, 3, RMethod::Closed).element);
      CHECK(a == R_component(n, s, 3, RMethod::Multiplicative).element);
      CHECK(a == R_full_ordered_exp(n, s, 3 * n).in_window(3));
      CHECK(a == R_full_power_form(n, s, 3 * n).in_window(3));
    }
}

TEST_CASE("equal-index coefficient at second order is the dual-basis value") {
  Tensor r = R_component(2, Split::PlusMinus, 3, RMethod::Recurrence).element;
  Scalar dual = pair_words({-1, -1}, {1, 1}).inverse();
  CHECK(dual == (q(1) - q(-1)).pow(2) / (Scalar(1) + q(2)));
  for (int k = 1; k <= 3; ++k) CHECK(r.terms.at({{k, k}, {-k, -k}}) == dual);
}

TEST_CASE("factorization of the canonical element") {
  for (int n = 0; n <= 3; ++n) CHECK(factorization_residual(n, 3).is_zero());
  for (int n = 1; n <= 3; ++n) CHECK(cross_terms_vanish(n, 3));
}

TEST_CASE("projected integrals from the product formula") {
  for (Split s : {Split::PlusMinus, Split::MinusPlus})
    for (int n = 1; n <= 2; ++n) {
      CertifiedTensor t = tildeI_component(n, s, 2, 16);
      CHECK(t.valuation_bound > 16);
      CHECK(tildeI_matches(t, I_proj_component(n, s, 2)));
    }
}

TEST_CASE("json of an R component") {
  auto a = to_json(R_component(1, Split::PlusMinus, 2, RMethod::Closed));
  auto b = to_json(R_component(1, Split::PlusMinus, 2, RMethod::Recurrence));
  CHECK(a["method"] == "closed");
  CHECK(a["n"] == 1);
  CHECK(a["element"] == b["element"]);
  CHECK(tensor_from_json(a["element"]) == first_order(2, true));
}
