#include "uqr/suites.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <climits>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace uqr {

namespace {

CheckRecord make(const std::string& id, const std::string& comp, bool pass, std::string lhs, std::string rhs) {
  CheckRecord c;
  c.identity = id;
  c.component = comp;
  c.pass = pass;
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  return c;
}

CheckRecord rec(const std::string& id, const std::string& comp, const Scalar& a, const Scalar& b) {
  return make(id, comp, a == b, a.to_json().dump(), b.to_json().dump());
}

CheckRecord rec(const std::string& id, const std::string& comp, const Element& a, const Element& b) {
  return make(id, comp, a == b, to_json(a).dump(), to_json(b).dump());
}

CheckRecord rec(const std::string& id, const std::string& comp, const Tensor& a, const Tensor& b) {
  return make(id, comp, a == b, to_json(a).dump(), to_json(b).dump());
}

std::string wstr(const Word& w) {
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

Word negated(const Word& w) {
  Word r(w.size());
  for (size_t i = 0; i < w.size(); ++i) r[i] = -w[i];
  return r;
}

// every word of length L with letters in [lo, hi], in lexicographic order
std::vector<Word> all_words(int L, int lo, int hi) {
  std::vector<Word> out;
  Word cur;
  std::function<void()> go = [&] {
    if (int(cur.size()) == L) {
      out.push_back(cur);
      return;
    }
    for (int x = lo; x <= hi; ++x) {
      cur.push_back(x);
      go();
      cur.pop_back();
    }
  };
  go();
  return out;
}

std::vector<Word> all_words_upto(int L, int lo, int hi) {
  std::vector<Word> out;
  for (int l = 0; l <= L; ++l) {
    auto w = all_words(l, lo, hi);
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

std::vector<Word> ordered_all_degrees(Kind k, Order o, int L, int lo, int hi) {
  std::vector<Word> out;
  for (int D = L * lo; D <= L * hi; ++D) {
    auto w = ordered_words(k, o, L, D, lo, hi);
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

template <class F>
std::vector<CheckRecord> parallel_records(size_t n, F f) {
  std::vector<std::vector<CheckRecord>> part(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < long(n); ++i) part[i] = f(size_t(i));
  std::vector<CheckRecord> out;
  for (auto& p : part) out.insert(out.end(), p.begin(), p.end());
  return out;
}

const char* kind_str(Kind k) { return k == Kind::E ? "e" : "f"; }

bool all_letters(const Element& x, const std::function<bool(int)>& pred) {
  for (auto& [w, c] : x.terms)
    for (int i : w)
      if (!pred(i)) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------- pairing

std::vector<CheckRecord> pairing_orthogonality_check(int L, int N) {
  std::vector<std::pair<Word, Word>> pairs;
  for (int l = 0; l <= L; ++l)
    for (int D = -l * N; D <= l * N; ++D) {
      auto ws = ordered_words(Kind::E, Order::Standard, l, D, -N, N);
      for (auto& s : ws)
        for (auto& t : ws) pairs.emplace_back(s, t);
    }
  return parallel_records(pairs.size(), [&](size_t i) {
    auto& [s, t] = pairs[i];
    Scalar lhs = pair_words(negated(t), s);
    Scalar rhs = s == t ? c_word(s).inverse() * qm().pow(-int(s.size())) : Scalar();
    return std::vector<CheckRecord>{rec("pairing-orthogonality", "e" + wstr(s) + " f" + wstr(negated(t)), lhs, rhs)};
  });
}

std::vector<CheckRecord> straightening_oracle_check(int L, int N) {
  auto words = all_words_upto(L, -N, N);
  std::vector<std::pair<Kind, Order>> modes = {
      {Kind::E, Order::Standard}, {Kind::E, Order::Opposite}, {Kind::F, Order::Standard}, {Kind::F, Order::Opposite}};
  return parallel_records(words.size() * modes.size(), [&](size_t i) {
    auto [k, o] = modes[i % modes.size()];
    const Word& w = words[i / modes.size()];
    std::string comp = std::string(kind_str(k)) + wstr(w) + (o == Order::Standard ? " standard" : " opposite");
    return std::vector<CheckRecord>{rec("dual-expansion", comp, dual_expand(k, w, o), straighten(Element(k, w), o))};
  });
}

std::vector<CheckRecord> straightening_examples_check() {
  std::vector<CheckRecord> out;
  out.push_back(rec("straightening-example", "e(1,0)", straighten(Element(Kind::E, {1, 0})),
                    Element(Kind::E, {0, 1}, Scalar::q(2))));
  Element e2 = Element(Kind::E, {-1, 1}, Scalar::q(2)) + Element(Kind::E, {0, 0}, Scalar::q(2) - Scalar(1));
  out.push_back(rec("straightening-example", "e(1,-1)", straighten(Element(Kind::E, {1, -1})), e2));
  return out;
}

std::vector<CheckRecord> pairing_consistency_check(int L, int N) {
  auto words = all_words_upto(L, -N, N);
  return parallel_records(words.size() * 2, [&](size_t i) {
    const Word& w = words[i / 2];
    Kind k = i % 2 ? Kind::F : Kind::E;
    Kind other = k == Kind::E ? Kind::F : Kind::E;
    Element sx = straighten(Element(k, w));
    nlohmann::json lhs = nlohmann::json::array(), rhs = nlohmann::json::array();
    bool ok = true;
    for (const Word& d : ordered_words(other, Order::Standard, int(w.size()), -word_degree(w), -N, N)) {
      Scalar a, b;
      if (k == Kind::E) {
        a = pair_elements(Element(Kind::F, d), sx);
        b = pair_words(d, w);
      } else {
        a = pair_elements(sx, Element(Kind::E, d));
        b = pair_words(w, d);
      }
      ok = ok && a == b;
      lhs.push_back(a.to_json());
      rhs.push_back(b.to_json());
    }
    return std::vector<CheckRecord>{make("pairing-straightening", std::string(kind_str(k)) + wstr(w), ok, lhs.dump(), rhs.dump())};
  });
}

std::vector<CheckRecord> rbar_duality_check(int L, int N) {
  std::vector<CheckRecord> out;
  for (int l = 1; l <= L; ++l) {
    Tensor R = rbar_component(l, N);
    auto ew = ordered_all_degrees(Kind::E, Order::Standard, l, -N, N);
    auto part = parallel_records(ew.size() * 2, [&](size_t i) {
      const Word& y = ew[i / 2];
      if (i % 2 == 0) {
        Element acc(Kind::E);
        for (auto& [fe, c] : R.terms) {
          Scalar p = pair_words(fe.first, y);
          if (!p.is_zero()) acc.add(fe.second, c * p);
        }
        return std::vector<CheckRecord>{rec("rbar-duality", "f-slot against e" + wstr(y), acc, Element(Kind::E, y))};
      }
      Word x = negated(y);
      Element acc(Kind::F);
      for (auto& [fe, c] : R.terms) {
        Scalar p = pair_words(x, fe.second);
        if (!p.is_zero()) acc.add(fe.first, c * p);
      }
      return std::vector<CheckRecord>{rec("rbar-duality", "e-slot against f" + wstr(x), acc, Element(Kind::F, x))};
    });
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// ---------------------------------------------------------------- exchange relation as a series

int exchange_tail_bound(int b, int v, int j) { return 4 * j + 2 * (b + v) - 2; }

std::vector<CheckRecord> exchange_series_check(int N, int Dmax, int qdeg) {
  struct Case {
    int a, b, u, v;
  };
  std::vector<Case> cases;
  int M = 2 * N;
  for (int a = -N; a <= N; ++a)
    for (int b = -N; b <= N; ++b) {
      if (std::abs(a + b) > Dmax) continue;
      for (int u = -M; u <= M; ++u) {
        int v = -(a + b) - u;
        if (v > u || v < -M) continue;
        cases.push_back({a, b, u, v});
      }
    }
  return parallel_records(cases.size(), [&](size_t i) {
    auto [a, b, u, v] = cases[i];
    Word fw{u, v};
    Scalar lhs = pair_words(fw, {a, b});
    int js = std::max({0, -u - b, -v - b});
    int J = js;
    while (exchange_tail_bound(b, v, J + 1) < qdeg) ++J;
    Scalar partial;
    for (int j = 0; j <= J; ++j) partial += g_coeff(j) * pair_words(fw, {b + j, a - j});
    Scalar diff = lhs - partial;
    int val = diff.is_zero() ? INT_MAX : diff.valuation() / 2;
    bool ok = val >= qdeg;
    // the tail bound itself, on the next terms
    for (int j = J + 1; j <= J + 8 && ok; ++j) {
      Scalar t = g_coeff(j) * pair_words(fw, {b + j, a - j});
      ok = t.is_zero() || t.valuation() / 2 >= exchange_tail_bound(b, v, j);
    }
    nlohmann::json l{{"residual_valuation", val == INT_MAX ? nlohmann::json("inf") : nlohmann::json(val)}, {"terms", J + 1}};
    nlohmann::json r{{"at_least", qdeg}};
    std::string comp = "e(" + std::to_string(a) + "," + std::to_string(b) + ") f" + wstr(fw);
    return std::vector<CheckRecord>{make("exchange-series", comp, ok, l.dump(), r.dump())};
  });
}

// ---------------------------------------------------------------- screenings

std::vector<CheckRecord> screening_powers_check(int nmax, int dmax) {
  struct Case {
    Screen s;
    Kind k;
    Sign sg;
    int sign_exp;  // factor (1 - q^{sign_exp*2(k-1)}), negated for f
    const char* name;
  };
  std::vector<Case> cases = {{Screen::Se0t, Kind::E, Sign::Plus, -1, "screening-power-e+"},
                             {Screen::Se0, Kind::E, Sign::Minus, 1, "screening-power-e-"},
                             {Screen::Sf0, Kind::F, Sign::Plus, -1, "screening-power-f+"},
                             {Screen::Sf0t, Kind::F, Sign::Minus, 1, "screening-power-f-"}};
  struct Job {
    Case c;
    int n, d;
  };
  std::vector<Job> jobs;
  for (auto& c : cases)
    for (int n = 2; n <= nmax; ++n)
      for (int d = -dmax; d <= dmax; ++d) jobs.push_back({c, n, d});
  return parallel_records(jobs.size(), [&](size_t i) {
    auto [c, n, d] = jobs[i];
    int N = std::abs(d) + 1;
    Element x = half_current_component(c.k, c.sg, 1, d, N);
    for (int r = 1; r < n; ++r) x = screening(c.s, x);
    Scalar pre(1);
    for (int k = 2; k <= n; ++k) {
      Scalar f = Scalar(1) - Scalar::q(c.sign_exp * 2 * (k - 1));
      pre *= c.k == Kind::E ? f : -f;
    }
    Element rhs = half_current_component(c.k, c.sg, n, d, N).scaled(pre);
    return std::vector<CheckRecord>{rec(c.name, "n=" + std::to_string(n) + " d=" + std::to_string(d), x, rhs)};
  });
}

std::vector<CheckRecord> screening_conjugation_check(int L, int N) {
  auto words = all_words_upto(L, -N, N);
  return parallel_records(words.size() * 2, [&](size_t i) {
    const Word& w = words[i / 2];
    int l = int(w.size());
    if (i % 2 == 0) {
      Element x(Kind::E, w);
      return std::vector<CheckRecord>{rec("screening-conjugation-e", "e" + wstr(w), screening(Screen::Se0t, x),
                                          screening(Screen::Se0, x).scaled(-Scalar::q(-2 * l)))};
    }
    Element x(Kind::F, w);
    return std::vector<CheckRecord>{rec("screening-conjugation-f", "f" + wstr(w), screening(Screen::Sf0t, x),
                                        screening(Screen::Sf0, x).scaled(-Scalar::q(2 * l)))};
  });
}

std::vector<CheckRecord> screening_projector_check(int L, int N) {
  struct Case {
    Screen s;
    Projector p;
    const char* name;
  };
  std::vector<Case> cases = {{Screen::Se0, Projector::PePlus, "S_e0 P_e+"},    {Screen::Se0, Projector::PeMinus, "S_e0 P_e-"},
                             {Screen::Se0t, Projector::PePlus, "S~_e0 P_e+"},  {Screen::Se0t, Projector::PeMinus, "S~_e0 P_e-"},
                             {Screen::Sf0, Projector::PfPlus, "S_f0 P_f+"},    {Screen::Sf0, Projector::PfMinus, "S_f0 P_f-"},
                             {Screen::Sf0t, Projector::PfPlus, "S~_f0 P_f+"},  {Screen::Sf0t, Projector::PfMinus, "S~_f0 P_f-"}};
  auto words = all_words_upto(L, -N, N);
  return parallel_records(words.size() * cases.size(), [&](size_t i) {
    const Case& c = cases[i % cases.size()];
    const Word& w = words[i / cases.size()];
    Kind k = projector_kind(c.p);
    Element x(k, w);
    Element lhs = straighten(project(screening(c.s, x), c.p));
    Element rhs = straighten(screening(c.s, project(x, c.p)));
    std::string id = k == Kind::E ? "screening-projector-e" : "screening-projector-f";
    return std::vector<CheckRecord>{rec(id, std::string(c.name) + " " + kind_str(k) + wstr(w), lhs, rhs)};
  });
}

std::vector<CheckRecord> screening_stability_check(int L, int N) {
  struct Case {
    Kind k;
    bool plus;
    std::function<bool(int)> in;
    const char* name;
  };
  std::vector<Case> cases = {{Kind::E, true, [](int i) { return i >= 0; }, "e+"},
                             {Kind::E, false, [](int i) { return i < 0; }, "e-"},
                             {Kind::F, true, [](int i) { return i > 0; }, "f+"},
                             {Kind::F, false, [](int i) { return i <= 0; }, "f-"}};
  std::vector<std::pair<int, Word>> jobs;
  for (int c = 0; c < 4; ++c) {
    int lo = cases[c].plus ? (cases[c].k == Kind::E ? 0 : 1) : -N;
    int hi = cases[c].plus ? N : (cases[c].k == Kind::E ? -1 : 0);
    for (auto& w : all_words_upto(L, lo, hi))
      if (!w.empty()) jobs.emplace_back(c, w);
  }
  return parallel_records(jobs.size(), [&](size_t i) {
    auto& [ci, w] = jobs[i];
    const Case& c = cases[ci];
    Element x(c.k, w);
    std::vector<CheckRecord> out;
    Screen s1 = c.k == Kind::E ? Screen::Se0 : Screen::Sf0;
    Screen s2 = c.k == Kind::E ? Screen::Se0t : Screen::Sf0t;
    for (Screen s : {s1, s2}) {
      Element y = screening(s, x);
      Element kept = y.filtered(c.in);
      std::string comp = std::string(s == s1 ? "S " : "S~ ") + c.name + " " + kind_str(c.k) + wstr(w);
      out.push_back(make("screening-stability", comp, all_letters(y, c.in), to_json(y).dump(), to_json(kept).dump()));
    }
    return out;
  });
}

std::vector<CheckRecord> product_split_check(Kind k, int n, int N, bool printed_f_weight) {
  if (n < 1) return {};
  bool f = k == Kind::F;
  Scalar c = f ? Scalar::q(2) : Scalar::q(-2);
  // (x_s - c x_t) and (c x_s - x_t)
  auto lin = [n](int s, int t, const Scalar& a, const Scalar& b) {
    MPoly p(n);
    Exps e(n, 0), g(n, 0);
    e[s] = 1;
    g[t] = 1;
    p.add_term(e, a);
    p.add_term(g, b);
    return p;
  };
  // for i > j: the denominator factor, and the numerator when i and j are split across the factors
  auto den = [&](int i, int j) {
    if (f) return printed_f_weight ? lin(j, i, Scalar(1), -c) : lin(i, j, Scalar(1), -c);
    return lin(i, j, Scalar(1), -c);
  };
  auto num = [&](int i, int j) {
    if (f) return printed_f_weight ? lin(j, i, c, Scalar(-1)) : lin(i, j, c, Scalar(-1));
    return lin(i, j, c, Scalar(-1));
  };
  MPoly D(n, Scalar(1), Exps(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) D = D * den(i, j);
  std::vector<MPoly> PI(size_t(1) << n);
  for (int mask = 0; mask < (1 << n); ++mask) {
    MPoly p(n, Scalar(1), Exps(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) p = p * ((mask >> i & 1) && !(mask >> j & 1) ? num(i, j) : den(i, j));
    PI[mask] = p;
  }
  Projector P1 = f ? Projector::PfPlusStar : Projector::PeMinus;
  Projector P2 = f ? Projector::PfMinusStar : Projector::PePlus;
  auto comps = all_words(n, -N, N);
  std::string id = std::string("current-product-split-") + kind_str(k);
  return parallel_records(comps.size(), [&](size_t ci) {
    const Word& cw = comps[ci];
    // coefficient of z^{-c} in P(z) X(z) is sum_e p_e X_{c+e}
    Element lhs(k), rhs(k);
    for (auto& [e, p] : D.terms()) {
      Word w(n);
      for (int i = 0; i < n; ++i) w[i] = cw[i] + e[i];
      lhs.add(w, p);
    }
    for (int mask = 0; mask < (1 << n); ++mask)
      for (auto& [e, p] : PI[mask].terms()) {
        Word wi, wj;
        for (int i = 0; i < n; ++i) (mask >> i & 1 ? wi : wj).push_back(cw[i] + e[i]);
        rhs += multiply(project(Element(k, wi), P1), project(Element(k, wj), P2)).scaled(p);
      }
    return std::vector<CheckRecord>{rec(id, kind_str(k) + wstr(cw), straighten(lhs), straighten(rhs))};
  });
}

namespace {

// complete homogeneous symmetric polynomial of degree J
Scalar complete_h(int J, const std::vector<Scalar>& xs) {
  if (J < 0) return Scalar();
  std::vector<Scalar> dp(J + 1);
  dp[0] = 1;
  for (auto& x : xs)
    for (int j = 1; j <= J; ++j) dp[j] += x * dp[j - 1];
  return dp[J];
}

// half-current power component, zero when the degree is outside the support
Element hc(Kind k, Sign s, int n, int d) {
  int lo = k == Kind::E ? (s == Sign::Plus ? 0 : n) : (s == Sign::Plus ? n : 0);
  bool ok = s == Sign::Plus ? (k == Kind::E ? d >= 0 : d >= lo) : (k == Kind::E ? d <= -lo : d <= 0);
  return ok ? half_current_component(k, s, n, d, std::abs(d) + 1) : Element(k);
}

}  // namespace

std::vector<CheckRecord> half_current_projection_check(int nmax, int kmax, int R) {
  struct Job {
    int form, n, k, a, b;
  };
  std::vector<Job> jobs;
  for (int form = 0; form < 4; ++form)
    for (int n = 1; n <= nmax; ++n)
      for (int k = 1; k <= std::min(kmax, n); ++k)
        for (int a = -R; a <= R; ++a)
          for (int b = -R; b <= R; ++b) {
            bool fa = form == 0 || form == 1;
            if (fa ? (a > 0 || b < 1) : (a < 0 || b > -1)) continue;
            jobs.push_back({form, n, k, a, b});
          }
  static const char* names[] = {"half-current-projection-f+", "half-current-projection-f-",
                                "half-current-projection-e-", "half-current-projection-e+"};
  auto out = parallel_records(jobs.size(), [&](size_t i) {
    auto [form, n, k, a, b] = jobs[i];
    std::vector<Scalar> qs;
    Scalar pre(1);
    for (int m = n - k + 1; m <= n; ++m) {
      qs.push_back(Scalar::q(2 * m));
      pre *= Scalar(1) - Scalar::q(2 * m);
    }
    Element lhs, rhs;
    switch (form) {
      case 0:
        lhs = project(multiply(hc(Kind::F, Sign::Minus, k, a), hc(Kind::F, Sign::Plus, n - k + 1, b)), Projector::PfPlusStar);
        rhs = hc(Kind::F, Sign::Plus, n + 1, a + b).scaled(pre * complete_h(-a, qs));
        break;
      case 1:
        lhs = project(multiply(hc(Kind::F, Sign::Minus, n - k + 1, a), hc(Kind::F, Sign::Plus, k, b)), Projector::PfMinusStar);
        rhs = hc(Kind::F, Sign::Minus, n + 1, a + b).scaled(pre * complete_h(b - k, qs));
        break;
      case 2:
        lhs = project(multiply(hc(Kind::E, Sign::Plus, k, a), hc(Kind::E, Sign::Minus, n - k + 1, b)), Projector::PeMinus);
        rhs = hc(Kind::E, Sign::Minus, n + 1, a + b).scaled(pre * complete_h(a, qs));
        break;
      default:
        lhs = project(multiply(hc(Kind::E, Sign::Plus, n - k + 1, a), hc(Kind::E, Sign::Minus, k, b)), Projector::PePlus);
        rhs = hc(Kind::E, Sign::Plus, n + 1, a + b).scaled(pre * complete_h(-b - k, qs));
    }
    std::string comp = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " a=" + std::to_string(a) +
                       " b=" + std::to_string(b);
    return std::vector<CheckRecord>{rec(names[form], comp, straighten(lhs), straighten(rhs))};
  });
  // single-current forms over ordered index sets 0 <= p_1 <= ... <= p_k
  std::vector<std::pair<Word, int>> single;
  for (int k = 1; k <= kmax; ++k)
    for (const Word& p : ordered_all_degrees(Kind::E, Order::Standard, k, 0, R))
      for (int d = -R; d <= R; ++d)
        if (d != 0) single.emplace_back(p, d);
  auto more = parallel_records(single.size(), [&](size_t i) {
    auto& [p, d] = single[i];
    int k = int(p.size()), S = word_degree(p), wt = 0;
    for (int j = 0; j < k; ++j) wt += (k - j) * p[j];
    Scalar pre = Scalar::q(2 * wt);
    for (int m = 1; m <= k; ++m) pre *= Scalar(1) - Scalar::q(2 * m);
    std::string comp = "p=" + wstr(p) + " d=" + std::to_string(d);
    if (d > 0) {
      Word w = negated(p);
      w.push_back(d);
      // the f letters carry no half-current sign, hence (-1)^k against the e form
      Element lhs = straighten(project(Element(Kind::F, w), Projector::PfPlusStar));
      Element rhs = straighten(hc(Kind::F, Sign::Plus, k + 1, d - S).scaled(k % 2 ? -pre : pre));
      return std::vector<CheckRecord>{rec("single-current-projection-f", comp, lhs, rhs)};
    }
    Word w = p;
    w.push_back(d);
    Element lhs = straighten(project(Element(Kind::E, w, Scalar(-1)), Projector::PeMinus));
    Element rhs = straighten(hc(Kind::E, Sign::Minus, k + 1, d + S).scaled(pre));
    return std::vector<CheckRecord>{rec("single-current-projection-e", comp, lhs, rhs)};
  });
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

CheckRecord second_order_check(int N) {
  Tensor first;
  for (int k = 1; k <= 2 * N; ++k) first.add({k}, {-k}, Scalar(1));
  Tensor A = multiply(first, first).in_window(N);
  Tensor B;
  for (int d = 1; d <= 2 * N; ++d)
    B += tensor_of(half_current_component(Kind::F, Sign::Plus, 2, d, N),
                   half_current_component(Kind::E, Sign::Minus, 2, -d, N));
  Scalar ratio = (Scalar(1) - Scalar::q(2)) / (Scalar(1) + Scalar::q(2));
  Tensor expect = (A + B.scaled(ratio)).scaled(qm().pow(2) / Scalar(2)).in_window(N);
  Tensor got = R_component(2, Split::PlusMinus, N, RMethod::Recurrence).element;
  return rec("rfactor-second-order", "n=2 +- N=" + std::to_string(N), got, expect);
}

// ---------------------------------------------------------------- driver

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> v = {"pairing",     "lemtop",        "screenings", "composed",
                                             "projections", "recurrence",    "factorization", "tildeI",
                                             "eval",        "lstat",         "ybe"};
  return v;
}

bool is_suite(const std::string& name) {
  auto& v = suite_names();
  return std::find(v.begin(), v.end(), name) != v.end();
}

std::string fnv1a_hex(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

bool Report::pass() const { return failures() == 0; }

int Report::failures() const {
  return int(std::count_if(records.begin(), records.end(), [](const SuiteRecord& r) { return !r.pass; }));
}

nlohmann::json Report::to_json(bool timing) const {
  using nlohmann::json;
  json cfg{{"suites", config.suites}, {"window", config.window}, {"max_n", config.max_n},
           {"q_degree", config.q_degree}, {"n", config.n}, {"reps", config.reps}};
  json recs = json::array();
  for (auto& r : records) {
    json j{{"suite", r.suite}, {"identity", r.identity}, {"component", r.component},
           {"status", r.pass ? "pass" : "fail"}, {"lhs_hash", r.lhs_hash}, {"rhs_hash", r.rhs_hash}};
    if (timing) j["seconds"] = r.seconds;
    recs.push_back(std::move(j));
  }
  json suites = json::array();
  for (auto& name : config.suites) {
    int n = 0, bad = 0;
    for (auto& r : records)
      if (r.suite == name) ++n, bad += !r.pass;
    json s{{"suite", name}, {"records", n}, {"failures", bad}, {"status", bad ? "fail" : "pass"}};
    if (timing)
      for (auto& t : timings)
        if (t.suite == name) s["seconds"] = t.seconds;
    suites.push_back(std::move(s));
  }
  return json{{"schema", kReportSchema}, {"config", cfg}, {"status", pass() ? "pass" : "fail"},
              {"failures", failures()}, {"suites", suites}, {"records", recs}};
}

std::string Report::text() const {
  std::ostringstream os;
  for (auto& name : config.suites) {
    int n = 0, bad = 0;
    for (auto& r : records)
      if (r.suite == name) ++n, bad += !r.pass;
    double sec = 0;
    for (auto& t : timings)
      if (t.suite == name) sec = t.seconds;
    os << (bad ? "FAIL " : "pass ") << name << ": " << n - bad << "/" << n << " records";
    char buf[32];
    std::snprintf(buf, sizeof buf, " (%.2fs)", sec);
    os << buf << "\n";
    for (auto& r : records)
      if (r.suite == name && !r.pass) os << "  failed " << r.identity << " [" << r.component << "]\n";
  }
  os << (pass() ? "overall: pass" : "overall: FAIL") << "\n";
  return os.str();
}

namespace {

using Clock = std::chrono::steady_clock;

struct Collector {
  Report& rep;
  std::string suite;
  void add(const std::vector<CheckRecord>& rs, double sec) {
    for (auto& r : rs)
      rep.records.push_back({suite, r.identity, r.component, r.pass, fnv1a_hex(r.lhs), fnv1a_hex(r.rhs), sec});
  }
  template <class F>
  void run(F f) {
    auto t0 = Clock::now();
    std::vector<CheckRecord> rs = f();
    add(rs, std::chrono::duration<double>(Clock::now() - t0).count());
  }
};

CheckRecord flag(const std::string& id, const std::string& comp, bool ok) {
  return make(id, comp, ok, ok ? "true" : "false", "true");
}

std::string split_tag(Split s) { return s == Split::PlusMinus ? "+-" : "-+"; }

void run_one(const std::string& name, const SuiteConfig& cfg, Report& rep) {
  Collector c{rep, name};
  int N = cfg.window, nmax = cfg.max_n;
  const Split splits[] = {Split::PlusMinus, Split::MinusPlus};
  if (name == "pairing") {
    c.run([&] { return pairing_orthogonality_check(nmax, N); });
    c.run([&] { return straightening_oracle_check(nmax, N); });
    c.run([&] { return straightening_examples_check(); });
    c.run([&] { return pairing_consistency_check(nmax, N); });
    c.run([&] { return rbar_duality_check(nmax, N); });
  } else if (name == "lemtop") {
    c.run([&] { return exchange_series_check(N, 4, cfg.q_degree); });
  } else if (name == "screenings") {
    c.run([&] { return screening_powers_check(nmax + 1, 2 * N + 2); });
    c.run([&] { return screening_conjugation_check(nmax, N); });
    c.run([&] { return screening_projector_check(nmax, N); });
    c.run([&] { return screening_stability_check(nmax, N); });
  } else if (name == "composed") {
    for (Kind k : {Kind::E, Kind::F})
      for (int n = 2; n <= nmax; ++n) {
        c.run([&] { return composed_residue_check(k, n, N); });
        c.run([&] { return quadratic_relation_check(k, n, N); });
      }
  } else if (name == "projections") {
    for (Kind k : {Kind::E, Kind::F})
      for (int n = 1; n <= nmax; ++n) {
        c.run([&] { return composed_projection_check(k, n, N); });
        c.run([&] { return product_split_check(k, n, N); });
      }
    c.run([&] { return half_current_projection_check(nmax, 2, N + 2); });
    for (int n = 1; n <= nmax; ++n)
      for (Split s : splits)
        c.run([&] {
          return std::vector<CheckRecord>{rec("projected-integrand", "n=" + std::to_string(n) + " " + split_tag(s),
                                              I_full_projected(n, s, N), I_proj_component(n, s, N))};
        });
  } else if (name == "recurrence") {
    for (int n = 0; n <= nmax; ++n)
      for (Split s : splits)
        c.run([&] {
          Tensor r = R_component(n, s, N, RMethod::Recurrence).element;
          std::string comp = "n=" + std::to_string(n) + " " + split_tag(s);
          return std::vector<CheckRecord>{
              rec("rfactor-closed-form", comp, R_component(n, s, N, RMethod::Closed).element, r),
              rec("rfactor-multiplicative", comp, R_component(n, s, N, RMethod::Multiplicative).element, r)};
        });
    if (nmax >= 2) c.run([&] { return std::vector<CheckRecord>{second_order_check(N)}; });
  } else if (name == "factorization") {
    for (int n = 1; n <= nmax; ++n)
      c.run([&] {
        std::string comp = "n=" + std::to_string(n);
        return std::vector<CheckRecord>{rec("factorization", comp, factorization_residual(n, N), Tensor()),
                                        flag("cross-terms-vanish", comp, cross_terms_vanish(n, N))};
      });
  } else if (name == "tildeI") {
    for (int n = 1; n <= nmax; ++n)
      for (Split s : splits)
        c.run([&] {
          CertifiedTensor t = tildeI_component(n, s, N, cfg.q_degree);
          Tensor ip = I_proj_component(n, s, N);
          int worst = 0;
          bool ok = tildeI_matches(t, ip, &worst);
          nlohmann::json l{{"difference_valuation", worst}}, r{{"at_least", t.valuation_bound}};
          return std::vector<CheckRecord>{
              make("second-integrand", "n=" + std::to_string(n) + " " + split_tag(s), ok, l.dump(), r.dump())};
        });
  } else if (name == "eval") {
    for (int tj : cfg.reps) {
      SpinRep r = spin_rep(tj);
      c.run([&] { return std::vector<CheckRecord>{flag("rep-invariants", "two_j=" + std::to_string(tj), spin_rep_invariants(r))}; });
      c.run([&] { return relation_check_eval(r, 2); });
      c.run([&] { return half_current_check(r, 4); });
      c.run([&] { return half_current_relation_check(r); });
    }
    for (int a : cfg.reps)
      for (int b : cfg.reps) {
        SpinRep v1 = spin_rep(a), v2 = spin_rep(b);
        for (int n = 1; n <= nmax; ++n) c.run([&] { return eval_integral_check(n, v1, v2); });
        c.run([&] { return eval_recurrence_check(nmax, v1, v2); });
        c.run([&] { return eval_commutation_check(nmax, v1, v2); });
        c.run([&] { return eval_mode_series_check(std::min(nmax, 2), std::min(N, 3), v1, v2); });
      }
  } else if (name == "lstat") {
    for (int n = 1; n <= cfg.n; ++n)
      c.run([&] {
        SeriesCheck ls = lstat_check(n, cfg.q_degree);
        SeriesCheck hl = hl_cauchy_check(n, cfg.q_degree);
        TruncatedSeries mapped = hl_residual_at_q(hl.residual, n, cfg.q_degree);
        std::string comp = "n=" + std::to_string(n) + " D=" + std::to_string(cfg.q_degree);
        bool agree = true;
        for (int k = 0; k <= std::min(mapped.degree(), ls.residual.degree()); ++k) agree = agree && mapped[k] == ls.residual[k];
        return std::vector<CheckRecord>{
            make("lstat", comp, ls.residual.is_zero(), ls.residual.str(), "0"),
            make("hall-littlewood-cauchy", comp, hl.residual.is_zero(), hl.residual.str(), "0"),
            make("lstat-hl-agreement", comp, agree, mapped.str(), ls.residual.str())};
      });
  } else if (name == "ybe") {
    for (int tj : cfg.reps) {
      int D = std::min(nmax, tj == 1 ? 4 : 2);
      c.run([&] {
        SeriesMat d = ybe_defect(spin_rep(tj), D);
        bool zero = std::all_of(d.v.begin(), d.v.end(), [](const MPoly& p) { return p.is_zero(); });
        return std::vector<CheckRecord>{
            make("yang-baxter", "two_j=" + std::to_string(tj) + " D=" + std::to_string(D), zero, zero ? "0" : "nonzero", "0")};
      });
      if (tj == 1) c.run([&] { return six_vertex_check(D); });
    }
  }
}

}  // namespace

Report run_suite(const SuiteConfig& cfg) {
  if (cfg.window < 1 || cfg.max_n < 1 || cfg.q_degree < 1 || cfg.n < 1)
    throw std::invalid_argument("window, max-n, q-degree and n must be positive");
  if (cfg.reps.empty()) throw std::invalid_argument("no representations selected");
  for (int r : cfg.reps)
    if (r < 0) throw std::invalid_argument("two_j must be nonnegative");
  Report rep;
  rep.config = cfg;
  if (rep.config.suites.empty()) rep.config.suites = suite_names();
  for (auto& s : rep.config.suites)
    if (!is_suite(s)) throw std::invalid_argument("unknown suite: " + s);
  if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);
  for (auto& s : rep.config.suites) {
    auto t0 = Clock::now();
    run_one(s, rep.config, rep);
    rep.timings.push_back({s, std::chrono::duration<double>(Clock::now() - t0).count()});
  }
  return rep;
}

}  // namespace uqr
