#pragma once

#include <string>
#include <vector>

#include "uqr/rfactor.hpp"

namespace uqr {

template <class T>
struct Mat {
  int rows = 0, cols = 0;
  T zero{};
  std::vector<T> v;
  Mat() = default;
  Mat(int r, int c, const T& z) : rows(r), cols(c), zero(z), v(size_t(r) * c, z) {}
  T& operator()(int i, int j) { return v[size_t(i) * cols + j]; }
  const T& operator()(int i, int j) const { return v[size_t(i) * cols + j]; }
};

using ScalarMat = Mat<Scalar>;
using RatMat = Mat<MultiScalar>;
using SeriesMat = Mat<MPoly>;  // entries truncated polynomials in the ratio variables

// weight basis v_0..v_{two_j}, H v_k = (two_j - 2k) v_k
struct SpinRep {
  int two_j = 0;
  std::vector<int> weights;
  ScalarMat E, F, K;  // K = q^H
  int dim() const { return two_j + 1; }
};
SpinRep spin_rep(int two_j);
bool spin_rep_invariants(const SpinRep& r);

RatMat to_ratmat(const ScalarMat& m, int nv);
RatMat rat_identity(int n, int nv);
RatMat operator+(const RatMat& a, const RatMat& b);
RatMat operator-(const RatMat& a, const RatMat& b);
RatMat operator*(const RatMat& a, const RatMat& b);
RatMat scaled(const RatMat& a, const MultiScalar& c);
RatMat kron(const RatMat& a, const RatMat& b);
bool is_zero(const RatMat& a);
bool equals(const RatMat& a, const RatMat& b);
nlohmann::json to_json(const RatMat& a, const std::vector<std::string>& names);

enum class ModeLetter { E, F, PsiPlus, PsiMinus };
// ev_label(x_n); label is the exponent vector of the evaluation parameter
RatMat ev_mode(const SpinRep& r, ModeLetter l, int n, const Exps& label);
// half-current images; zy is the exponent vector of z / label
RatMat ev_half_current(const SpinRep& r, Kind k, Sign s, const Exps& zy);

// ---- residues

// a pole z = c * y^m lies outside when m involves an outside variable, inside when it involves an
// inside variable, and is decided by scalar_inside when m = 0
struct ContourConvention {
  int zvar = 0;  // must be the first variable
  std::vector<int> inside_vars, outside_vars;
  bool scalar_inside = false;
};
enum class PoleSet { Inside, Outside, Zero, Infinity };
// sum of residues of f(z)/z over the chosen poles
MultiScalar residue_sum(const MultiScalar& f, const ContourConvention& cv, PoleSet which);
// inside poles plus z = 0
MultiScalar contour_integral(const MultiScalar& f, const ContourConvention& cv);
RatMat residue_unit_circle(const RatMat& m, const ContourConvention& cv);
// all residues including infinity; expected zero
bool residue_total_vanishes(const RatMat& m, const ContourConvention& cv);

// x -> value * y^mono in variable i
MultiScalar substitute_var(const MultiScalar& f, int i, const Scalar& value, const Exps& mono);
// moves variables to new positions (-1 drops a variable that must not occur)
MultiScalar remap_vars(const MultiScalar& f, int nv_new, const std::vector<int>& where);

// ---- evaluated integrands and R factors on V1(a) (x) V2(b); entries are functions of x = a/b

RatMat I_eval_integrand(int n, Split s, const SpinRep& v1, const SpinRep& v2);  // variables (u = z/a, x)
RatMat I_eval(int n, Split s, const SpinRep& v1, const SpinRep& v2);
RatMat I_eval_closed(int n, Split s, const SpinRep& v1, const SpinRep& v2);
RatMat R_eval_closed(int n, Split s, const SpinRep& v1, const SpinRep& v2);
// R^(0..n) from the recurrences with the residue integrands
std::vector<RatMat> R_eval_recurrence(int n, Split s, const SpinRep& v1, const SpinRep& v2);
// image of an abstract two-tensor (f-slot on V1) under ev_a (x) ev_b, as x-series coefficients
SeriesMat ev_tensor_series(const Tensor& t, const SpinRep& v1, const SpinRep& v2);
// expansion of a rational matrix in x at 0 (PlusMinus) or at infinity (MinusPlus), |degree| <= D
SeriesMat expand_x(const RatMat& m, Split s, int D);

std::vector<CheckRecord> relation_check_eval(const SpinRep& r, int range);
std::vector<CheckRecord> half_current_check(const SpinRep& r, int terms);
std::vector<CheckRecord> half_current_relation_check(const SpinRep& r);
std::vector<CheckRecord> eval_integral_check(int n, const SpinRep& v1, const SpinRep& v2);
// [I^(n), I^(m)] = 0 for n + m <= nsum
std::vector<CheckRecord> eval_commutation_check(int nsum, const SpinRep& v1, const SpinRep& v2);
std::vector<CheckRecord> eval_recurrence_check(int n, const SpinRep& v1, const SpinRep& v2);
// evaluated abstract shells against the rational results, n <= nmax, |degree| <= D
std::vector<CheckRecord> eval_mode_series_check(int nmax, int D, const SpinRep& v1, const SpinRep& v2);

// ---- Cartan factor and the Yang-Baxter check (series in x, degree <= M)

SeriesMat mat_mul(const SeriesMat& a, const SeriesMat& b, int D);
// diagonal coefficients of a_n (n > 0) or a_{-n} on the weight basis, without the label power
std::vector<Scalar> imaginary_mode_diag(const SpinRep& r, int n, bool negative);
SeriesMat k_factor_eval(const SpinRep& v1, const SpinRep& v2, int M);
SeriesMat R_can_eval(const SpinRep& v1, const SpinRep& v2, int D);
// R12 R13 R23 - R23 R13 R12 on V^(x)3, in (a1/a2, a2/a3) up to total degree D
SeriesMat ybe_defect(const SpinRep& v, int D);
SeriesMat ybe_defect_of(const SeriesMat& R, int d, int D);
// entrywise comparison of R_can on fund (x) fund with the trigonometric six-vertex matrix
std::vector<CheckRecord> six_vertex_check(int D);

}  // namespace uqr
