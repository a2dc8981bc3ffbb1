#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "uqr/suites.hpp"

using namespace uqr;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void absorb(Outcome& o, const std::vector<CheckRecord>& rs, int& count) {
  for (auto& r : rs) {
    ++count;
    if (!r.pass && o.pass) {
      o.pass = false;
      o.detail = "first failure " + r.identity + " " + r.component;
    }
  }
}

int criterion(int id, const char* name, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o = body();
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("criterion %2d %s: %s (%.1f s)%s%s\n", id, name, o.pass ? "PASS" : "FAIL", s,
              o.detail.empty() ? "" : " ", o.detail.c_str());
  std::fflush(stdout);
  return o.pass ? 0 : 1;
}

std::string counted(int n) { return std::to_string(n) + " checks"; }

}  // namespace

int main() {
  int failed = 0;
  const Split splits[] = {Split::PlusMinus, Split::MinusPlus};

  failed += criterion(1, "pairing orthogonality", [] {
    Outcome o;
    int n = 0;
    absorb(o, pairing_orthogonality_check(3, 3), n);
    if (o.pass) o.detail = counted(n);
    return o;
  });

  failed += criterion(2, "straightening oracle", [] {
    Outcome o;
    int n = 0;
    absorb(o, straightening_oracle_check(3, 3), n);
    absorb(o, straightening_examples_check(), n);
    if (o.pass) o.detail = counted(n);
    return o;
  });

  failed += criterion(3, "screening lemmas", [] {
    Outcome o;
    int n = 0;
    absorb(o, screening_powers_check(4, 8), n);
    absorb(o, screening_conjugation_check(3, 3), n);
    absorb(o, screening_projector_check(3, 3), n);
    absorb(o, screening_stability_check(3, 3), n);
    if (o.pass) o.detail = counted(n);
    return o;
  });

  failed += criterion(4, "composed currents", [] {
    Outcome o;
    int n = 0;
    for (Kind k : {Kind::E, Kind::F})
      for (int m = 1; m <= 3; ++m) {
        absorb(o, composed_residue_check(k, m, 4), n);
        absorb(o, quadratic_relation_check(k, m, 4), n);
        absorb(o, composed_projection_check(k, m, 4), n);
      }
    if (o.pass) o.detail = counted(n);
    return o;
  });

  failed += criterion(5, "R factors by three methods", [&] {
    Outcome o;
    int n = 0;
    for (Split s : splits)
      for (int m = 0; m <= 3; ++m) {
        Tensor a = R_component(m, s, 3, RMethod::Recurrence).element;
        for (RMethod meth : {RMethod::Closed, RMethod::Multiplicative}) {
          ++n;
          if (!(R_component(m, s, 3, meth).element == a) && o.pass) {
            o.pass = false;
            o.detail = "method " + method_name(meth) + " differs at n=" + std::to_string(m) + " " + split_name(s);
          }
        }
      }
    // the factor (1-q^2)/(1+q^2) divides the equal-index coefficients at n = 2
    Tensor r2 = R_component(2, Split::PlusMinus, 3, RMethod::Recurrence).element;
    Scalar factor = (Scalar(1) - Scalar::q(2)) / (Scalar(1) + Scalar::q(2));
    std::string coeff;
    for (int k = 1; k <= 3; ++k) {
      auto it = r2.terms.find({{k, k}, {-k, -k}});
      bool ok = it != r2.terms.end() && (it->second / factor).den().terms().size() == 1;
      if (it != r2.terms.end()) coeff = it->second.str();
      if (!ok && o.pass) {
        o.pass = false;
        o.detail = "equal-index coefficient at k=" + std::to_string(k) + " lacks the factor";
      }
    }
    if (o.pass) o.detail = counted(n) + ", equal-index coefficient " + coeff;
    return o;
  });

  failed += criterion(6, "factorization", [] {
    Outcome o;
    for (int m = 0; m <= 3; ++m) {
      if (!factorization_residual(m, 3).is_zero() && o.pass) {
        o.pass = false;
        o.detail = "nonzero residual at n=" + std::to_string(m);
      }
      if (m > 0 && !cross_terms_vanish(m, 3) && o.pass) {
        o.pass = false;
        o.detail = "cross terms at n=" + std::to_string(m);
      }
    }
    return o;
  });

  failed += criterion(7, "second integrand", [&] {
    Outcome o;
    const int N = 3, Q = 20;
    int bound = 1 << 30;
    for (int m = 1; m <= 3; ++m)
      for (Split s : splits) {
        CertifiedTensor t = tildeI_component(m, s, N, Q);
        bound = std::min(bound, t.valuation_bound);
        if (!tildeI_matches(t, I_proj_component(m, s, N)) && o.pass) {
          o.pass = false;
          o.detail = "mismatch at n=" + std::to_string(m) + " " + split_name(s);
        }
      }
    if (o.pass) o.detail = "window 3, difference certified to q-valuation >= " + std::to_string(bound);
    return o;
  });

  failed += criterion(8, "q-series identity", [] {
    Outcome o;
    for (int m = 1; m <= 6; ++m) {
      TruncatedSeries a = lstat_check(m, 40).residual, b = hl_cauchy_check(m, 20).residual;
      bool ok = a.is_zero() && b.is_zero() && (hl_residual_at_q(b, m, 40) - a).is_zero();
      if (!ok && o.pass) {
        o.pass = false;
        o.detail = "nonzero residual at n=" + std::to_string(m);
      }
    }
    return o;
  });

  failed += criterion(9, "evaluation map", [] {
    Outcome o;
    int n = 0;
    SpinRep f = spin_rep(1), s = spin_rep(2);
    for (int m = 1; m <= 5; ++m) absorb(o, eval_integral_check(m, f, f), n);
    absorb(o, eval_recurrence_check(5, f, f), n);
    for (int m = 1; m <= 3; ++m) absorb(o, eval_integral_check(m, s, f), n);
    absorb(o, eval_recurrence_check(3, s, f), n);
    if (o.pass) o.detail = counted(n);
    return o;
  });

  failed += criterion(10, "half-current relations", [] {
    Outcome o;
    int n = 0;
    for (int j = 1; j <= 2; ++j) absorb(o, half_current_relation_check(spin_rep(j)), n);
    if (o.pass) o.detail = counted(n);
    return o;
  });

  failed += criterion(11, "Yang-Baxter (experimental)", [] {
    Outcome o;
    int n = 0;
    SeriesMat d = ybe_defect(spin_rep(1), 2);
    for (auto& e : d.v)
      if (!e.is_zero()) {
        o.pass = false;
        o.detail = "nonzero defect";
        break;
      }
    absorb(o, six_vertex_check(2), n);
    if (o.pass) o.detail = "degree 2, " + counted(n) + " six-vertex entries";
    return o;
  });

  std::printf("%s\n", failed ? "acceptance: FAIL" : "acceptance: PASS");
  return failed ? 1 : 0;
}
