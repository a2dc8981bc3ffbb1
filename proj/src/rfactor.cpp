#include "uqr/rfactor.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace uqr {

std::string split_name(Split s) { return s == Split::PlusMinus ? "+-" : "-+"; }

std::string method_name(RMethod m) {
  switch (m) {
    case RMethod::Recurrence: return "recurrence";
    case RMethod::Closed: return "closed";
    case RMethod::Multiplicative: return "multiplicative";
  }
  return "";
}

std::vector<Composition> compositions(int n) {
  std::vector<Composition> out;
  if (n <= 0) return out;
  // bit i set means a cut after position i
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    Composition c;
    int run = 1;
    for (int i = 0; i < n - 1; ++i) {
      if (mask & (1u << i)) {
        c.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    c.push_back(run);
    out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

static void check_composition(const Composition& j) {
  if (j.empty()) throw std::invalid_argument("empty composition");
  for (int x : j)
    if (x < 1) throw std::invalid_argument("composition parts must be positive");
}

Scalar calC_coeff(Split s, const Composition& j) {
  check_composition(j);
  long den = 1, partial = 0;
  if (s == Split::PlusMinus) {
    for (int x : j) den *= (partial += x);
  } else {
    for (auto it = j.rbegin(); it != j.rend(); ++it) den *= (partial += *it);
  }
  return Scalar(mpq_class(1, den));
}

static int total(const Composition& j) { return std::accumulate(j.begin(), j.end(), 0); }

Scalar C_coeff(Split s, const Composition& j) {
  int n = total(j), m = int(j.size());
  Scalar r = calC_coeff(s, j) * qm().pow(m);
  for (int x : j) r = r / (q_factorial(x) * q_factorial(x - 1));
  return n % 2 ? -r : r;
}

Scalar Ctilde_coeff(Split s, const Composition& j) {
  int n = total(j), m = int(j.size());
  Scalar r = calC_coeff(s, j) * qm().pow(2 * n - m);
  for (int x : j) r = r / q_number(x);
  return n % 2 ? -r : r;
}

// ---------------------------------------------------------------- composed currents

Order composed_order(Kind k) { return k == Kind::E ? Order::Standard : Order::Opposite; }

namespace {

// g(q^{2m}) and g'(q^{-2m}) as rational functions
Scalar g_at(int m) { return (Scalar::q(2) - Scalar::q(2 * m)) / (Scalar(1) - Scalar::q(2 * m + 2)); }
Scalar gp_at(int m) { return (Scalar::q(-2) - Scalar::q(-2 * m)) / (Scalar(1) - Scalar::q(-2 * m - 2)); }

Scalar c_word_inv_q(const Word& s) {
  Word w = s;
  std::sort(w.begin(), w.end());
  Scalar r(1);
  for (size_t i = 0; i < w.size();) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    r *= qsqinv_factorial(int(j - i)).inverse();
    i = j;
  }
  return r;
}

}  // namespace

Scalar composed_coefficient(Kind k, int n, const Word& w) {
  if (int(w.size()) != n || n < 1) throw std::invalid_argument("word length must equal the order");
  if (!std::is_sorted(w.begin(), w.end())) return Scalar();
  if (n == 1) return Scalar(1);
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  Scalar sum;
  if (k == Kind::E) {
    do {
      int ex = 0;
      for (int i = 0; i < n; ++i) ex -= 2 * sigma[i] * w[i];
      Scalar t = Scalar::q(ex);
      for (int a = 0; a < n && !t.is_zero(); ++a)
        for (int b = a + 1; b < n; ++b)
          if (sigma[a] > sigma[b]) t *= g_at(sigma[a] - sigma[b]);
      sum += t;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    Scalar K = (-qm()).pow(n - 1) * q_factorial(n) * q_factorial(n - 1);
    return c_word(w) * K * sum;
  }
  // f: pair against e_{-w} with the second pairing, normalized by the diagonal
  Word b(n);
  for (int i = 0; i < n; ++i) b[i] = -w[i];
  do {
    int ex = 0;
    for (int i = 0; i < n; ++i) ex += 2 * (n - 1 - i) * b[sigma[i]];
    Scalar t = Scalar::q(ex);
    for (int a = 0; a < n && !t.is_zero(); ++a)
      for (int c = a + 1; c < n; ++c)
        if (sigma[a] > sigma[c]) t *= gp_at(c - a);
    sum += t;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  Scalar K = qm().pow(n - 1) * q_factorial(n) * q_factorial(n - 1);
  return c_word_inv_q(b) * K * sum;
}

Element composed_current_component(Kind k, int n, int d, int N) {
  Element r(k);
  for (const Word& w : ordered_words(k, composed_order(k), n, d, -N, N)) r.add(w, composed_coefficient(k, n, w));
  return r;
}

static std::vector<Scalar> kernel_series(int n, bool inv, int K, bool alpha) {
  int s = inv ? -1 : 1;
  MultiScalar x = MultiScalar::var(1, 0);
  MultiScalar one(1, Scalar(1));
  MultiScalar f;
  if (alpha) {
    f = (one - x.scaled(Scalar::q(s * 2 * (n - 1)))) * (one - x.scaled(Scalar::q(s * 2 * n))) *
        MultiScalar::inv_binomial(1, Scalar(1), {1}) * MultiScalar::inv_binomial(1, Scalar::q(2 * s), {1});
  } else {
    f = (one - x.scaled(Scalar::q(2 * s))) * (one - x) * MultiScalar::inv_binomial(1, Scalar::q(-2 * s * (n - 2)), {1}) *
        MultiScalar::inv_binomial(1, Scalar::q(-2 * s * (n - 1)), {1});
  }
  return series_coefficients(f, Direction::AtZero, 0, K);
}

std::vector<Scalar> alpha_series(int n, bool inverse_q, int K) { return kernel_series(n, inverse_q, K, true); }
std::vector<Scalar> beta_series(int n, bool inverse_q, int K) { return kernel_series(n, inverse_q, K, false); }

namespace {

// sum over ordered words v of degree Dv of X[v] * (letter . v) or (v . letter), restricted to window N.
// Straightening only mixes letters lying between the inserted letter and the neighbours it crosses,
// which bounds the words v that can reach the window.
Element insert_letter(Kind k, int nprev, int letter, bool left, int Dv, int N) {
  Order o = composed_order(k);
  int L = nprev;
  int lo, hi;
  if (left) {
    if (letter < -N) return Element(k);
    hi = std::max(N, letter);
    lo = Dv - (L - 1) * hi;
  } else {
    if (letter > N) return Element(k);
    lo = std::min(-N, letter);
    hi = Dv - (L - 1) * lo;
  }
  Element raw(k);
  for (const Word& v : ordered_words(k, o, L, Dv, lo, hi)) {
    Scalar c = composed_coefficient(k, nprev, v);
    Word w;
    if (left) {
      w.push_back(letter);
      w.insert(w.end(), v.begin(), v.end());
    } else {
      w = v;
      w.push_back(letter);
    }
    raw.add(w, c);
  }
  return straighten(raw, o).in_window(N);
}

}  // namespace

Element composed_current_recursive(Kind k, int n, int d, int N, int route) {
  if (n < 1) throw std::invalid_argument("order must be positive");
  if (n == 1) return composed_current_component(k, 1, d, N);
  Element r(k);
  if (k == Kind::E) {
    if (route == 0) {
      // q^{-2d} X_d e_0 - q^{-2(n-1)} sum_k alpha_k q^{-2(d+k)} e_{-k} X_{d+k}
      auto al = alpha_series(n, false, N);
      r += insert_letter(k, n - 1, 0, false, d, N).scaled(Scalar::q(-2 * d));
      for (int kk = 0; kk <= N; ++kk)
        r += insert_letter(k, n - 1, -kk, true, d + kk, N).scaled(-Scalar::q(-2 * (n - 1) - 2 * (d + kk)) * al[kk]);
    } else {
      // e_0 X_d - q^{-2(n-1)} sum_k beta_k X_{d-k} e_k
      auto be = beta_series(n, false, N);
      r += insert_letter(k, n - 1, 0, true, d, N);
      for (int kk = 0; kk <= N; ++kk)
        r += insert_letter(k, n - 1, kk, false, d - kk, N).scaled(-Scalar::q(-2 * (n - 1)) * be[kk]);
    }
  } else {
    if (route == 0) {
      // Y_d f_0 - q^{2(n-1)} sum_k beta'_k f_{-k} Y_{d+k}
      auto be = beta_series(n, true, N);
      r += insert_letter(k, n - 1, 0, false, d, N);
      for (int kk = 0; kk <= N; ++kk)
        r += insert_letter(k, n - 1, -kk, true, d + kk, N).scaled(-Scalar::q(2 * (n - 1)) * be[kk]);
    } else {
      // q^{-2d} f_0 Y_d - q^{2(n-1)} sum_k alpha'_k q^{-2(d-k)} Y_{d-k} f_k
      auto al = alpha_series(n, true, N);
      r += insert_letter(k, n - 1, 0, true, d, N).scaled(Scalar::q(-2 * d));
      for (int kk = 0; kk <= N; ++kk)
        r += insert_letter(k, n - 1, kk, false, d - kk, N).scaled(-Scalar::q(2 * (n - 1) - 2 * (d - kk)) * al[kk]);
    }
  }
  return r;
}

static CheckRecord record(const std::string& id, const std::string& comp, const Element& a, const Element& b) {
  CheckRecord c;
  c.identity = id;
  c.component = comp;
  c.pass = a == b;
  c.lhs = to_json(a).dump();
  c.rhs = to_json(b).dump();
  return c;
}

static std::string comp_str(Kind k, int n, int d) {
  return std::string(k == Kind::E ? "e" : "f") + " n=" + std::to_string(n) + " d=" + std::to_string(d);
}

std::vector<CheckRecord> composed_residue_check(Kind k, int n, int N) {
  std::vector<CheckRecord> out;
  if (n < 2) return out;
  int Dmax = n * N;
  std::vector<std::vector<CheckRecord>> part(2 * Dmax + 1);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i <= 2 * Dmax; ++i) {
    int d = i - Dmax;
    Element direct = composed_current_component(k, n, d, N);
    for (int route = 0; route < 2; ++route) {
      std::string id = k == Kind::E ? (route == 0 ? "composed-recursion-e-left" : "composed-recursion-e-right") : (route == 0 ? "composed-recursion-f-left" : "composed-recursion-f-right");
      part[i].push_back(record(id, comp_str(k, n, d), composed_current_recursive(k, n, d, N, route), direct));
    }
  }
  for (auto& p : part) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::vector<CheckRecord> quadratic_relation_check(Kind k, int n, int N) {
  std::vector<CheckRecord> out;
  if (n < 2) return out;
  Scalar al = Scalar::q(2 * (n - 2)), be = Scalar::q(2 * (n - 1));
  Scalar qq = Scalar::q(2 * (n - 1)), qi = Scalar::q(-2);
  std::vector<std::pair<int, int>> ab;
  for (int a = -N - 2; a <= N; ++a)
    for (int b = -(n - 1) * N - 2; b <= (n - 1) * N; ++b) ab.emplace_back(a, b);
  std::vector<CheckRecord> part(ab.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < long(ab.size()); ++i) {
    auto [a, b] = ab[i];
    Element lhs(k), rhs(k);
    bool left_first = k == Kind::E;  // e: e(w) X(z) on the left side; f: X(z) f(w)
    auto term = [&](int letter, int Db, bool letter_left) { return insert_letter(k, n - 1, letter, letter_left, Db, N); };
    lhs += term(a + 2, b, left_first);
    lhs += term(a + 1, b + 1, left_first).scaled(-(al + be));
    lhs += term(a, b + 2, left_first).scaled(al * be);
    rhs += term(a + 2, b, !left_first);
    rhs += term(a + 1, b + 1, !left_first).scaled(-(qi + Scalar(1)));
    rhs += term(a, b + 2, !left_first).scaled(qi);
    rhs = rhs.scaled(qq);
    part[i] = record(k == Kind::E ? "quadratic-relation-e" : "quadratic-relation-f",
                     std::string(k == Kind::E ? "e" : "f") + " n=" + std::to_string(n) + " a=" + std::to_string(a) +
                         " b=" + std::to_string(b),
                     lhs, rhs);
  }
  return part;
}

std::vector<CheckRecord> composed_projection_check(Kind k, int n, int N) {
  std::vector<CheckRecord> out;
  int Dmax = n * N;
  Screen S = k == Kind::E ? Screen::Se0 : Screen::Sf0;
  Screen St = k == Kind::E ? Screen::Se0t : Screen::Sf0t;
  auto iterate = [](Screen s, Element x, int times) {
    for (int i = 0; i < times; ++i) x = screening(s, x);
    return x;
  };
  for (int d = -Dmax; d <= Dmax; ++d) {
    // the projected component: words of one sign only, hence finitely many
    bool plus = k == Kind::E ? d >= 0 : d > 0;
    Projector p = k == Kind::E ? (plus ? Projector::PePlus : Projector::PeMinus)
                               : (plus ? Projector::PfPlus : Projector::PfMinus);
    int lo = plus ? (k == Kind::E ? 0 : 1) : std::min(d, 0);
    int hi = plus ? std::max(d, 0) : (k == Kind::E ? -1 : 0);
    if (lo > hi) continue;
    Element proj(k);
    for (const Word& w : ordered_words(k, composed_order(k), n, d, lo, hi)) proj.add(w, composed_coefficient(k, n, w));
    proj = straighten(proj, Order::Standard);
    Element expect(k);
    Element single(k, Word{d});
    if (k == Kind::E) {
      if (plus)
        expect = iterate(St, single, n - 1).scaled(Scalar::q(-2 * (n - 1) * d));
      else
        expect = iterate(S, single, n - 1);
    } else {
      if (plus)
        expect = iterate(S, single, n - 1);
      else
        expect = iterate(St, single, n - 1).scaled(Scalar::q(-2 * (n - 1) * d));
    }
    (void)p;
    out.push_back(record(k == Kind::E ? "composed-projection-e" : "composed-projection-f", comp_str(k, n, d), proj, expect));
  }
  return out;
}

// ---------------------------------------------------------------- integrands

static int fdeg(const Word& w) { return word_degree(w); }

Tensor I_full_component(int n, int N) {
  Scalar pre = (-qm()) / (q_factorial(n - 1) * q_factorial(n));
  if (n % 2) pre = -pre;
  Tensor t;
  for (int d = -n * N; d <= n * N; ++d) {
    Element f = composed_current_component(Kind::F, n, d, N);
    Element e = composed_current_component(Kind::E, n, -d, N);
    t += tensor_of(f, e);
  }
  return t.scaled(pre);
}

static Scalar iproj_prefactor(int n) {
  Scalar pre = qm() / (q_factorial(n) * q_factorial(n - 1));
  return n % 2 ? -pre : pre;
}

Tensor I_proj_shell(int n, Split s, int D, int route) {
  if (n < 1) throw std::invalid_argument("order must be positive");
  bool pm = s == Split::PlusMinus;
  if (pm ? D <= 0 : D > 0) return Tensor();
  Scalar pre = iproj_prefactor(n);
  if (route == 0) {
    // half-current modes: (f_+)_D = f_D, (e_-)_{-D} = -e_{-D}; (f_-)_D = -f_D, (e_+)_{-D} = e_{-D}
    Element f(Kind::F, Word{D}), e(Kind::E, Word{-D});
    for (int i = 1; i < n; ++i) {
      f = screening(Screen::Sf0, f);
      e = screening(Screen::Se0, e);
    }
    return tensor_of(f, e).scaled(-pre);
  }
  Scalar factor(1);
  for (int k = 2; k <= n; ++k) {
    Scalar m = Scalar::q(k - 1) - Scalar::q(1 - k);
    factor *= m * m;
  }
  Element f = half_current_component(Kind::F, pm ? Sign::Plus : Sign::Minus, n, D, std::abs(D) + 1);
  Element e = half_current_component(Kind::E, pm ? Sign::Minus : Sign::Plus, n, -D, std::abs(D) + 1);
  return tensor_of(f, e).scaled(pre * factor);
}

Tensor I_proj_full(int n, Split s, int Dmax) {
  bool pm = s == Split::PlusMinus;
  std::vector<int> ds;
  for (int a = 0; a <= Dmax; ++a) ds.push_back(pm ? a : -a);
  std::vector<Tensor> part(ds.size());
  std::vector<int> bad(ds.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < long(ds.size()); ++i) {
    Tensor a = I_proj_shell(n, s, ds[i], 0);
    Tensor b = I_proj_shell(n, s, ds[i], 1);
    if (!(a == b)) bad[i] = 1;
    part[i] = std::move(a);
  }
  for (size_t i = 0; i < ds.size(); ++i)
    if (bad[i])
      throw std::logic_error("projected integrand: screening and power routes disagree at n=" + std::to_string(n) +
                             " D=" + std::to_string(ds[i]));
  Tensor t;
  for (auto& p : part) t += p;
  return t;
}

Tensor I_proj_component(int n, Split s, int N) { return I_proj_full(n, s, n * N).in_window(N); }

Tensor I_full_projected(int n, Split s, int N) {
  bool pm = s == Split::PlusMinus;
  Scalar pre = (-qm()) / (q_factorial(n - 1) * q_factorial(n));
  if (n % 2) pre = -pre;
  Tensor t;
  int Dmax = n * N;
  for (int a = 0; a <= Dmax; ++a) {
    int d = pm ? a : -a;
    // f-words all of one sign, e-words all of the other
    int flo = pm ? 1 : std::min(d, 0), fhi = pm ? std::max(d, 1) : 0;
    int elo = pm ? std::min(-d, -1) : 0, ehi = pm ? -1 : std::max(-d, 0);
    Element f(Kind::F), e(Kind::E);
    for (const Word& w : ordered_words(Kind::F, Order::Opposite, n, d, flo, fhi))
      f.add(w, composed_coefficient(Kind::F, n, w));
    for (const Word& w : ordered_words(Kind::E, Order::Standard, n, -d, elo, ehi))
      e.add(w, composed_coefficient(Kind::E, n, w));
    t += tensor_of(straighten(f, Order::Standard), e);
  }
  return t.scaled(pre).in_window(N);
}

// ---------------------------------------------------------------- R factors

Tensor multiply_bounded(const Tensor& a, const Tensor& b, int Dmax) {
  std::vector<std::pair<const std::pair<Word, Word>*, const Scalar*>> ta;
  for (auto& [k, c] : a.terms) ta.emplace_back(&k, &c);
  std::vector<Tensor> part(ta.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < long(ta.size()); ++i) {
    int da = fdeg(ta[i].first->first);
    Tensor one, rest;
    one.terms.emplace(*ta[i].first, *ta[i].second);
    for (auto& [k, c] : b.terms)
      if (std::abs(da + fdeg(k.first)) <= Dmax) rest.terms.emplace(k, c);
    part[i] = multiply_serial(one, rest);
  }
  Tensor r;
  for (auto& p : part) r += p;
  return r;
}

static Tensor rbar_split(int n, Split s, int Dmax) {
  bool pm = s == Split::PlusMinus;
  Tensor r;
  for (auto& [k, c] : rbar_component(n, Dmax).terms) {
    const Word& e = k.second;
    bool ok = std::all_of(e.begin(), e.end(), [pm](int i) { return pm ? i < 0 : i >= 0; });
    if (ok && std::abs(word_degree(e)) <= Dmax) r.terms.emplace(k, c);
  }
  return r;
}

Tensor R_full(int n, Split s, int Dmax, RMethod m) {
  if (n < 0) throw std::invalid_argument("order must be nonnegative");
  if (n == 0) return Tensor::unit();
  bool pm = s == Split::PlusMinus;
  if (m == RMethod::Multiplicative) return rbar_split(n, s, Dmax);
  std::vector<Tensor> I(n + 1);
  for (int k = 1; k <= n; ++k) I[k] = I_proj_full(k, s, Dmax);
  if (m == RMethod::Recurrence) {
    std::vector<Tensor> R(n + 1);
    R[0] = Tensor::unit();
    for (int j = 1; j <= n; ++j) {
      Tensor acc;
      for (int k = 1; k <= j; ++k)
        acc += pm ? multiply_bounded(R[j - k], I[k], Dmax) : multiply_bounded(I[k], R[j - k], Dmax);
      R[j] = acc.scaled(Scalar(mpq_class(1, j)));
    }
    return R[n];
  }
  // products of screened half-current integrals weighted by C_{+-}(j)
  std::vector<Tensor> T(n + 1);
  for (int k = 1; k <= n; ++k) T[k] = I[k].scaled(iproj_prefactor(k).inverse());
  Tensor acc;
  for (const Composition& j : compositions(n)) {
    Tensor p = Tensor::unit();
    for (int x : j) p = multiply_bounded(p, T[x], Dmax);
    acc += p.scaled(C_coeff(s, j));
  }
  return acc;
}

// the ordered-exponential solution and the half-current-power form of the closed formula
Tensor R_full_ordered_exp(int n, Split s, int Dmax) {
  if (n == 0) return Tensor::unit();
  std::vector<Tensor> I(n + 1);
  for (int k = 1; k <= n; ++k) I[k] = I_proj_full(k, s, Dmax);
  Tensor acc;
  for (const Composition& j : compositions(n)) {
    Tensor p = Tensor::unit();
    for (int x : j) p = multiply_bounded(p, I[x], Dmax);
    acc += p.scaled(calC_coeff(s, j));
  }
  return acc;
}

Tensor R_full_power_form(int n, Split s, int Dmax) {
  if (n == 0) return Tensor::unit();
  bool pm = s == Split::PlusMinus;
  std::vector<Tensor> P(n + 1);
  for (int k = 1; k <= n; ++k) {
    for (int a = 0; a <= Dmax; ++a) {
      int D = pm ? a : -a;
      if (pm && D == 0) continue;
      Element f = half_current_component(Kind::F, pm ? Sign::Plus : Sign::Minus, k, D, a + 1);
      Element e = half_current_component(Kind::E, pm ? Sign::Minus : Sign::Plus, k, -D, a + 1);
      P[k] += tensor_of(f, e);
    }
  }
  Tensor acc;
  for (const Composition& j : compositions(n)) {
    Tensor p = Tensor::unit();
    for (int x : j) p = multiply_bounded(p, P[x], Dmax);
    acc += p.scaled(Ctilde_coeff(s, j));
  }
  return acc;
}

RFactorResult R_component(int n, Split s, int N, RMethod m) {
  RFactorResult r;
  r.sign = s;
  r.n = n;
  r.window = N;
  r.method = m;
  r.element = R_full(n, s, n * N, m).in_window(N);
  return r;
}

nlohmann::json to_json(const RFactorResult& r) {
  return {{"sign", split_name(r.sign)}, {"n", r.n}, {"window", r.window}, {"method", method_name(r.method)},
          {"element", to_json(r.element)}};
}

Tensor factorization_residual(int n, int N) {
  Tensor lhs = rbar_component(n, N);
  Tensor rhs;
  for (int l = 0; l <= n; ++l) {
    Tensor a = R_component(l, Split::PlusMinus, N, RMethod::Recurrence).element;
    Tensor b = R_component(n - l, Split::MinusPlus, N, RMethod::Recurrence).element;
    for (auto& [ka, ca] : a.terms)
      for (auto& [kb, cb] : b.terms) {
        Word f = ka.first, e = ka.second;
        f.insert(f.end(), kb.first.begin(), kb.first.end());
        e.insert(e.end(), kb.second.begin(), kb.second.end());
        if (!is_ordered(Kind::F, Order::Standard, f) || !is_ordered(Kind::E, Order::Standard, e))
          throw std::logic_error("sign-sorted concatenation is not ordered");
        rhs.add(f, e, ca * cb);
      }
  }
  return lhs - rhs;
}

bool cross_terms_vanish(int n, int N) {
  Tensor rb = rbar_component(n, N);
  for (bool pm : {true, false}) {
    auto fok = [pm](const Word& w) { return std::all_of(w.begin(), w.end(), [pm](int i) { return pm ? i > 0 : i <= 0; }); };
    auto eok = [pm](const Word& w) { return std::all_of(w.begin(), w.end(), [pm](int i) { return pm ? i < 0 : i >= 0; }); };
    Tensor one = rb.filtered([&](const Word& f, const Word&) { return fok(f); });
    Tensor two = rb.filtered([&](const Word& f, const Word& e) { return fok(f) && eok(e); });
    if (!(one == two)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- second integrand

namespace {

int qval(const Scalar& s) {
  int v = s.valuation();
  if (v == INT_MAX) return INT_MAX;
  // valuation is in units of q^{1/2}
  return v >= 0 ? v / 2 : -((-v + 1) / 2);
}

int inversions(const std::vector<int>& s) {
  int c = 0;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      if (s[i] > s[j]) ++c;
  return c;
}

long ceil_div(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

// lower bound for the q-valuation of <a, b> over all f-words a with sum_k k a_k >= Amin (1-based k)
int pairing_bound(int n, long Amin, const Word& b) {
  if (n == 1) return -1;
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  int best = INT_MAX;
  do {
    long B = 0;
    for (int k = 0; k < n; ++k) B += long(k + 1) * b[sigma[k]];
    long phi = Amin + B;
    long js = std::max(0L, ceil_div(phi, n - 1));
    int v = int(2 * js) - 2 * inversions(sigma) - n;
    best = std::min(best, v);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best;
}

Word neg(const Word& w) {
  Word r(w.size());
  for (size_t i = 0; i < w.size(); ++i) r[i] = -w[i];
  return r;
}

}  // namespace

CertifiedTensor tildeI_component(int n, Split s, int N, int qdeg) {
  if (n < 1) throw std::invalid_argument("order must be positive");
  bool pm = s == Split::PlusMinus;
  Split other = pm ? Split::MinusPlus : Split::PlusMinus;
  CertifiedTensor out;
  out.valuation_bound = INT_MAX;

  // targets: ordered window words of the projected signs
  int flo = pm ? 1 : -N, fhi = pm ? N : 0;
  int elo = pm ? -N : 0, ehi = pm ? -1 : N;
  Scalar norm = qm().pow(n);
  int norm_val = 2 * qval(norm);
  // a priori: coefficients of the (n-1) factor are C_s (q^{-1}-q)^{n-1}
  int coeff_bound = -(n - 1);
  int ebound = -n * (n - 1) - n;

  std::vector<int> fdegs;
  for (int D = n * flo; D <= n * fhi; ++D) fdegs.push_back(D);

  // source shells of the (n-1) factor are computed lazily with growing degree bound
  int have = -1;
  Tensor Rprev;
  auto need_shells = [&](int Dabs) {
    if (Dabs <= have) return;
    int want = std::max(Dabs, 2 * have + 8);
    Rprev = R_full(n - 1, other, want, RMethod::Recurrence);
    have = want;
  };

  std::vector<Tensor> parts(fdegs.size());
  std::vector<int> bounds(fdegs.size(), INT_MAX);
  for (size_t ti = 0; ti < fdegs.size(); ++ti) {
    int DF = fdegs[ti];
    auto Fs = ordered_words(Kind::F, Order::Standard, n, DF, flo, fhi);
    auto Es = ordered_words(Kind::E, Order::Standard, n, -DF, elo, ehi);
    if (Fs.empty() || Es.empty()) continue;
    std::vector<Scalar> cF, cE;
    for (auto& F : Fs) cF.push_back(c_word(neg(F)) * norm);
    for (auto& E : Es) cE.push_back(c_word(E) * norm);

    auto shell_bound = [&](int Dp) {
      // Amin: lower bound of sum_k k a_k over source f-words of the shell
      long Amin = pm ? long(n) * DF + std::abs(Dp) : long(DF) + std::abs(Dp);
      int fb = INT_MAX;
      for (auto& F : Fs) fb = std::min(fb, pairing_bound(n, Amin, neg(F)));
      return coeff_bound - 1 + norm_val + fb + ebound;
    };

    Tensor acc;
    int Dp = 0;
    for (int step = 0;; ++step) {
      Dp = pm ? -step : step;
      if (n == 1 && step > 0) {
        bounds[ti] = INT_MAX;
        break;
      }
      if (n > 1 && step > 0 && shell_bound(Dp) > qdeg) {
        bounds[ti] = shell_bound(Dp);
        break;
      }
      need_shells(step);
      std::vector<std::pair<Word, Word>> srcw;
      std::vector<Scalar> srcc;
      const Tensor& src = n == 1 ? Tensor::unit() : Rprev;
      for (auto& [k, c] : src.terms) {
        if (word_degree(k.first) != Dp) continue;
        int d = DF - Dp;
        Word f = k.first, e = k.second;
        if (pm) {
          f.push_back(d);
          e.push_back(-d);
        } else {
          f.insert(f.begin(), d);
          e.insert(e.begin(), -d);
        }
        srcw.emplace_back(f, e);
        srcc.push_back(c * qm());
      }
      std::vector<Tensor> loc(srcw.size());
#pragma omp parallel for schedule(dynamic)
      for (long i = 0; i < long(srcw.size()); ++i) {
        std::vector<Scalar> yF(Fs.size()), xE(Es.size());
        for (size_t a = 0; a < Fs.size(); ++a) yF[a] = cF[a] * pair_words(srcw[i].first, neg(Fs[a]));
        for (size_t b = 0; b < Es.size(); ++b) xE[b] = cE[b] * pair_words(neg(Es[b]), srcw[i].second);
        for (size_t a = 0; a < Fs.size(); ++a) {
          if (yF[a].is_zero()) continue;
          for (size_t b = 0; b < Es.size(); ++b) loc[i].add(Fs[a], Es[b], srcc[i] * yF[a] * xE[b]);
        }
      }
      for (auto& l : loc) acc += l;
    }
    parts[ti] = std::move(acc);
  }
  for (size_t ti = 0; ti < fdegs.size(); ++ti) {
    out.value += parts[ti];
    out.valuation_bound = std::min(out.valuation_bound, bounds[ti]);
  }
  return out;
}

bool tildeI_matches(const CertifiedTensor& t, const Tensor& iproj, int* worst) {
  Tensor diff = t.value - iproj;
  int w = INT_MAX;
  for (auto& [k, c] : diff.terms) w = std::min(w, qval(c));
  if (worst) *worst = w;
  if (t.valuation_bound == INT_MAX) return diff.is_zero();
  return w >= t.valuation_bound;
}

}  // namespace uqr
