#pragma once

#include <string>
#include <vector>

#include "uqr/modealg.hpp"

namespace uqr {

// which factor: R_{+,-} (f-slot indices > 0) or R_{-,+} (f-slot indices <= 0)
enum class Split { PlusMinus, MinusPlus };
enum class RMethod { Recurrence, Closed, Multiplicative };

std::string split_name(Split s);
std::string method_name(RMethod m);

using Composition = std::vector<int>;
std::vector<Composition> compositions(int n);

// ordered-exponential weights 1/(j1 (j1+j2) ...), reversed partial sums for MinusPlus
Scalar calC_coeff(Split s, const Composition& j);
// weight of the product of screened half-current integrals (sign included)
Scalar C_coeff(Split s, const Composition& j);
// weight of the product of half-current power integrals (sign included)
Scalar Ctilde_coeff(Split s, const Composition& j);

// ---- composed currents

// e-currents are expanded in nondecreasing words, f-currents in nondecreasing words as well
Order composed_order(Kind k);
// coefficient of an ordered word in the z^{-d} mode of the composed current of order n
Scalar composed_coefficient(Kind k, int n, const Word& w);
Element composed_current_component(Kind k, int n, int d, int N);
// the same component rebuilt from order n-1 by one contour integral; route 0 inserts
// the new letter on the left, route 1 on the right
Element composed_current_recursive(Kind k, int n, int d, int N, int route);
// series coefficients of the contour kernels
std::vector<Scalar> alpha_series(int n, bool inverse_q, int K);
std::vector<Scalar> beta_series(int n, bool inverse_q, int K);

struct CheckRecord {
  std::string identity;
  std::string component;
  bool pass = true;
  std::string lhs, rhs;  // canonical JSON dumps
};

// recursions, quadratic relations and the mode forms; one record per graded component
std::vector<CheckRecord> composed_residue_check(Kind k, int n, int N);
std::vector<CheckRecord> quadratic_relation_check(Kind k, int n, int N);
std::vector<CheckRecord> composed_projection_check(Kind k, int n, int N);

// ---- integrands

// prefactored zero mode of f^(n) (x) e^(n), f-slot in nondecreasing order, window N
Tensor I_full_component(int n, int N);
// one f-degree shell of the projected integrand; route 0 screenings, route 1 powers
Tensor I_proj_shell(int n, Split s, int D, int route);
// all shells with |D| <= Dmax, both routes computed and compared
Tensor I_proj_full(int n, Split s, int Dmax);
Tensor I_proj_component(int n, Split s, int N);
// (P_f (x) P_e) of the full integrand, converted to the standard f ordering
Tensor I_full_projected(int n, Split s, int N);

// ---- R factors

struct RFactorResult {
  Split sign;
  int n = 0;
  int window = 0;
  RMethod method;
  Tensor element;
};

// exact components with |f-degree| <= Dmax
Tensor R_full(int n, Split s, int Dmax, RMethod m);
// the ordered-exponential solution in the integrands, and the form in half-current powers
Tensor R_full_ordered_exp(int n, Split s, int Dmax);
Tensor R_full_power_form(int n, Split s, int Dmax);
RFactorResult R_component(int n, Split s, int N, RMethod m);
nlohmann::json to_json(const RFactorResult& r);

// product of tensors keeping only |f-degree| <= Dmax
Tensor multiply_bounded(const Tensor& a, const Tensor& b, int Dmax);

Tensor factorization_residual(int n, int N);
// f-slot-only projection of rbar against the two-slot projection
bool cross_terms_vanish(int n, int N);

// ---- the second integrand, from the factorization of rbar

struct CertifiedTensor {
  Tensor value;
  int valuation_bound = 0;  // the omitted tail has q-valuation >= this (in powers of q)
};
// targets are the window words; sources are summed until the tail bound exceeds qdeg
CertifiedTensor tildeI_component(int n, Split s, int N, int qdeg);
// true when the difference with I_proj has valuation >= the certified bound
bool tildeI_matches(const CertifiedTensor& t, const Tensor& iproj, int* worst = nullptr);

}  // namespace uqr
