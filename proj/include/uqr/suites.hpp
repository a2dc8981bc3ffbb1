#pragma once

#include <string>
#include <vector>

#include "uqr/combid.hpp"
#include "uqr/evalrep.hpp"
#include "uqr/rfactor.hpp"

namespace uqr {

// ---- algebra-level identity checks

// <F_p, e_s> = delta C_s^{-1} (q^{-1}-q)^{-n} on ordered words of length <= L, letters in [-N, N]
std::vector<CheckRecord> pairing_orthogonality_check(int L, int N);
// dual_expand against straighten, both kinds and both orderings, on all words of length <= L
std::vector<CheckRecord> straightening_oracle_check(int L, int N);
std::vector<CheckRecord> straightening_examples_check();
// <f, straighten(x)> = <f, x> for raw e-words x
std::vector<CheckRecord> pairing_consistency_check(int L, int N);
// contracting rbar against an ordered word in either slot returns that word
std::vector<CheckRecord> rbar_duality_check(int L, int N);

// e(z1)e(z2) = g(z2/z1) e(z2)e(z1) on (a, b) components, paired against ordered f-words;
// the infinite right-hand side is summed until its tail has q-valuation >= qdeg
std::vector<CheckRecord> exchange_series_check(int N, int Dmax, int qdeg);
// q-valuation lower bound for g_j <f_u f_v, e_{b+j} e_{a-j}> past the matching indices
int exchange_tail_bound(int b, int v, int j);

std::vector<CheckRecord> screening_powers_check(int nmax, int dmax);
std::vector<CheckRecord> screening_conjugation_check(int L, int N);
std::vector<CheckRecord> screening_projector_check(int L, int N);
std::vector<CheckRecord> screening_stability_check(int L, int N);

// f(z1)..f(zn) = sum_I g_{I,J} (f_I)_+ (f_J)_- and the e analogue, after clearing the g denominators;
// f uses g(z_j/z_i) for i > j with P_f^{+*}, P_f^{-*}; e uses g'(z_j/z_i) with P_e^-, P_e^+.
// printed_f_weight switches the f weight to g(z_i/z_j)
std::vector<CheckRecord> product_split_check(Kind k, int n, int N, bool printed_f_weight = false);

// projections of products of half-current powers, per (a, b) component with |a|, |b| <= R:
// (f_-^k(z1) f_+^{n-k+1}(z2))_+ = prod_{m=n-k+1}^{n} (1-q^{2m})/(1-q^{2m} z1/z2) f_+^{n+1}(z2) and its three
// mirrors, plus the single-current forms with prefactor q^{2(p_k+2p_{k-1}+...+kp_1)} prod_{m<=k} (1-q^{2m})
std::vector<CheckRecord> half_current_projection_check(int nmax, int kmax, int R);

// R^(2)_{+,-} against the closed second-order formula with (1-q^2)/(1+q^2)
CheckRecord second_order_check(int N);

// ---- suite driver

struct SuiteConfig {
  std::vector<std::string> suites;
  int window = 3;
  int max_n = 3;
  int q_degree = 40;
  int n = 6;  // lstat range
  std::vector<int> reps{1};  // two_j values
  int jobs = 0;  // 0 keeps the OpenMP default
};

struct SuiteRecord {
  std::string suite, identity, component;
  bool pass = true;
  std::string lhs_hash, rhs_hash;
  double seconds = 0;  // time of the batch the record came from
};

struct SuiteTiming {
  std::string suite;
  double seconds = 0;
};

struct Report {
  SuiteConfig config;
  std::vector<SuiteRecord> records;
  std::vector<SuiteTiming> timings;
  bool pass() const;
  int failures() const;
  nlohmann::json to_json(bool timing = true) const;
  std::string text() const;
};

inline constexpr const char* kReportSchema = "uqr-report/1";

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
std::string fnv1a_hex(const std::string& s);

// throws std::invalid_argument on an unknown suite or an invalid config
Report run_suite(const SuiteConfig& cfg);

}  // namespace uqr
