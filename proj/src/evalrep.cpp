#include "uqr/evalrep.hpp"

#include <stdexcept>

namespace uqr {

namespace {

template <class T>
Mat<T> mmul(const Mat<T>& a, const Mat<T>& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix dimensions");
  Mat<T> r(a.rows, b.cols, a.zero);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols; ++j)
        if (!b(k, j).is_zero()) r(i, j) = r(i, j) + a(i, k) * b(k, j);
    }
  return r;
}

template <class T>
Mat<T> mkron(const Mat<T>& a, const Mat<T>& b) {
  Mat<T> r(a.rows * b.rows, a.cols * b.cols, a.zero);
  for (int i1 = 0; i1 < a.rows; ++i1)
    for (int j1 = 0; j1 < a.cols; ++j1) {
      if (a(i1, j1).is_zero()) continue;
      for (int i2 = 0; i2 < b.rows; ++i2)
        for (int j2 = 0; j2 < b.cols; ++j2) r(i1 * b.rows + i2, j1 * b.cols + j2) = a(i1, j1) * b(i2, j2);
    }
  return r;
}

template <class T>
Mat<T> mpow(const Mat<T>& a, int n, const T& one) {
  Mat<T> r(a.rows, a.cols, a.zero);
  for (int i = 0; i < a.rows; ++i) r(i, i) = one;
  for (int k = 0; k < n; ++k) r = mmul(r, a);
  return r;
}

ScalarMat smat(int n) { return ScalarMat(n, n, Scalar()); }

ScalarMat smul(const ScalarMat& a, const ScalarMat& b) { return mmul(a, b); }

// diag(q^{k h})
ScalarMat kpow(const SpinRep& r, int k) {
  ScalarMat m = smat(r.dim());
  for (int i = 0; i < r.dim(); ++i) m(i, i) = Scalar::q(k * r.weights[i]);
  return m;
}

Exps zeros(int nv) { return Exps(nv, 0); }

Exps scaled_exps(const Exps& e, int k) {
  Exps r = e;
  for (auto& v : r) v *= k;
  return r;
}

MultiScalar mono(int nv, const Scalar& c, const Exps& e) { return MultiScalar(MPoly(nv, c, e.empty() ? zeros(nv) : e)); }

MultiScalar coeff_at_zero(const MultiScalar& f) {
  int nv = f.nvars();
  int T = 0;
  for (auto& [e, c] : f.num().terms()) T = std::max(T, -e[0]);
  std::vector<MultiScalar> S(T + 1, MultiScalar(nv));
  S[0] = MultiScalar(nv, Scalar(1));
  MultiScalar rest(nv, Scalar(1));
  for (auto& [b, k] : f.den()) {
    if (b.m[0] == 0) {
      MultiScalar ib = MultiScalar::inv_binomial(nv, b.c, b.m);
      for (int r = 0; r < k; ++r) rest = rest * ib;
      continue;
    }
    int kz = b.m[0];
    Exps y = b.m;
    y[0] = 0;
    MultiScalar step = mono(nv, b.c, y);
    for (int r = 0; r < k; ++r)
      for (int d = kz; d <= T; ++d) S[d] += step * S[d - kz];
  }
  MultiScalar acc(nv);
  for (auto& [e, c] : f.num().terms()) {
    if (e[0] > 0) continue;
    Exps y = e;
    y[0] = 0;
    acc += mono(nv, c, y) * S[-e[0]];
  }
  return acc * rest;
}

bool contains(const std::vector<int>& v, int i) { return std::find(v.begin(), v.end(), i) != v.end(); }

// true: inside, false: outside
bool classify(const Exps& loc, const ContourConvention& cv) {
  bool in = false, out = false, other = false;
  for (size_t i = 0; i < loc.size(); ++i) {
    if (int(i) == cv.zvar || loc[i] == 0) continue;
    if (contains(cv.outside_vars, int(i)))
      out = true;
    else if (contains(cv.inside_vars, int(i)))
      in = true;
    else
      other = true;
  }
  if (out) return false;
  if (other) throw std::domain_error("pole in an unclassified family");
  if (in) return true;
  return cv.scalar_inside;
}

Scalar qq() { return Scalar::q(1) - Scalar::q(-1); }

CheckRecord make_record(const std::string& id, const std::string& comp, const RatMat& a, const RatMat& b,
                        const std::vector<std::string>& names) {
  CheckRecord c;
  c.identity = id;
  c.component = comp;
  c.pass = equals(a, b);
  c.lhs = to_json(a, names).dump();
  c.rhs = to_json(b, names).dump();
  return c;
}

nlohmann::json series_json(const SeriesMat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(MultiScalar(m(i, j)).str({"x", "y"}));
    rows.push_back(row);
  }
  return rows;
}

bool series_equal(const SeriesMat& a, const SeriesMat& b) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  for (size_t i = 0; i < a.v.size(); ++i)
    if (!(a.v[i] - b.v[i]).is_zero()) return false;
  return true;
}

MPoly truncate(const MPoly& p, int D) {
  MPoly r(p.nvars());
  for (auto& [e, c] : p.terms()) {
    int s = 0;
    for (int v : e) s += v;
    if (s <= D) r.add_term(e, c);
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------- representations

SpinRep spin_rep(int two_j) {
  if (two_j < 0) throw std::invalid_argument("two_j must be nonnegative");
  SpinRep r;
  r.two_j = two_j;
  int d = two_j + 1;
  r.E = smat(d);
  r.F = smat(d);
  r.K = smat(d);
  for (int k = 0; k < d; ++k) {
    r.weights.push_back(two_j - 2 * k);
    r.K(k, k) = Scalar::q(two_j - 2 * k);
    if (k > 0) r.E(k - 1, k) = q_number(two_j - k + 1);
    if (k + 1 < d) r.F(k + 1, k) = q_number(k + 1);
  }
  return r;
}

bool spin_rep_invariants(const SpinRep& r) {
  int d = r.dim();
  ScalarMat Kinv = kpow(r, -1);
  ScalarMat a = smul(smul(r.K, r.E), Kinv), b = smul(smul(r.K, r.F), Kinv);
  ScalarMat ef = smul(r.E, r.F), fe = smul(r.F, r.E);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (a(i, j) != Scalar::q(2) * r.E(i, j)) return false;
      if (b(i, j) != Scalar::q(-2) * r.F(i, j)) return false;
      Scalar rhs = i == j ? (r.K(i, i) - Kinv(i, i)) / qq() : Scalar();
      if (ef(i, j) - fe(i, j) != rhs) return false;
    }
  return true;
}

// ---------------------------------------------------------------- rational matrices

RatMat to_ratmat(const ScalarMat& m, int nv) {
  RatMat r(m.rows, m.cols, MultiScalar(nv));
  for (size_t i = 0; i < m.v.size(); ++i)
    if (!m.v[i].is_zero()) r.v[i] = MultiScalar(nv, m.v[i]);
  return r;
}

RatMat rat_identity(int n, int nv) {
  RatMat r(n, n, MultiScalar(nv));
  for (int i = 0; i < n; ++i) r(i, i) = MultiScalar(nv, Scalar(1));
  return r;
}

RatMat operator+(const RatMat& a, const RatMat& b) {
  RatMat r = a;
  for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = a.v[i] + b.v[i];
  return r;
}

RatMat operator-(const RatMat& a, const RatMat& b) {
  RatMat r = a;
  for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = a.v[i] - b.v[i];
  return r;
}

RatMat operator*(const RatMat& a, const RatMat& b) { return mmul(a, b); }

RatMat scaled(const RatMat& a, const MultiScalar& c) {
  RatMat r = a;
  for (auto& e : r.v)
    if (!e.is_zero()) e = e * c;
  return r;
}

RatMat kron(const RatMat& a, const RatMat& b) { return mkron(a, b); }

bool is_zero(const RatMat& a) {
  for (auto& e : a.v)
    if (!e.is_zero()) return false;
  return true;
}

bool equals(const RatMat& a, const RatMat& b) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  for (size_t i = 0; i < a.v.size(); ++i)
    if (!a.v[i].equals(b.v[i])) return false;
  return true;
}

nlohmann::json to_json(const RatMat& a, const std::vector<std::string>& names) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < a.rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < a.cols; ++j) row.push_back(a(i, j).str(names));
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------- evaluation images

RatMat ev_mode(const SpinRep& r, ModeLetter l, int n, const Exps& label) {
  int nv = int(label.size()), d = r.dim();
  RatMat m(d, d, MultiScalar(nv));
  Exps pw = scaled_exps(label, n);
  ScalarMat s;
  switch (l) {
    case ModeLetter::E: s = smul(kpow(r, n), r.E); break;
    case ModeLetter::F: s = smul(r.F, kpow(r, n)); break;
    case ModeLetter::PsiPlus:
    case ModeLetter::PsiMinus: {
      bool plus = l == ModeLetter::PsiPlus;
      if (plus ? n < 0 : n > 0) return m;
      if (n == 0) {
        s = kpow(r, plus ? 1 : -1);
        break;
      }
      ScalarMat ef = smul(r.E, r.F), fe = smul(r.F, r.E);
      ScalarMat c = smat(d);
      for (int i = 0; i < d; ++i) c(i, i) = ef(i, i) - Scalar::q(2 * n) * fe(i, i);
      s = smul(kpow(r, n), c);
      Scalar f = plus ? qq() : -qq();
      for (auto& e : s.v) e = f * e;
      break;
    }
  }
  for (size_t i = 0; i < s.v.size(); ++i)
    if (!s.v[i].is_zero()) m.v[i] = mono(nv, s.v[i], pw);
  return m;
}

RatMat ev_half_current(const SpinRep& r, Kind k, Sign s, const Exps& zy) {
  int nv = int(zy.size()), d = r.dim();
  Exps inv = scaled_exps(zy, -1);
  RatMat m(d, d, MultiScalar(nv));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Scalar& x = k == Kind::E ? r.E(i, j) : r.F(i, j);
      if (x.is_zero()) continue;
      int h = k == Kind::E ? r.weights[i] : r.weights[j];
      MultiScalar f;
      if (k == Kind::E && s == Sign::Plus)
        f = MultiScalar::inv_binomial(nv, Scalar::q(h), inv);
      else if (k == Kind::E)
        f = -(mono(nv, Scalar::q(-h), zy) * MultiScalar::inv_binomial(nv, Scalar::q(-h), zy));
      else if (s == Sign::Plus)
        f = mono(nv, Scalar::q(h), inv) * MultiScalar::inv_binomial(nv, Scalar::q(h), inv);
      else
        f = -MultiScalar::inv_binomial(nv, Scalar::q(-h), zy);
      m(i, j) = f.scaled(x);
    }
  return m;
}

// ---------------------------------------------------------------- residues

MultiScalar substitute_var(const MultiScalar& f, int i, const Scalar& value, const Exps& mn) {
  int nv = f.nvars();
  MPoly n(nv);
  for (auto& [e, c] : f.num().terms()) {
    Exps g = e;
    int k = g[i];
    g[i] = 0;
    for (int j = 0; j < nv; ++j) g[j] += k * mn[j];
    n.add_term(g, c * value.pow(k));
  }
  MultiScalar r(n);
  for (auto& [b, k] : f.den()) {
    Exps g = b.m;
    int p = g[i];
    g[i] = 0;
    for (int j = 0; j < nv; ++j) g[j] += p * mn[j];
    Scalar cc = b.c * value.pow(p);
    bool allzero = std::all_of(g.begin(), g.end(), [](int v) { return v == 0; });
    if (allzero && cc == Scalar(1)) throw std::domain_error("substitution hits a pole");
    MultiScalar ib = MultiScalar::inv_binomial(nv, cc, g);
    for (int t = 0; t < k; ++t) r = r * ib;
  }
  return r;
}

MultiScalar remap_vars(const MultiScalar& f, int nv_new, const std::vector<int>& where) {
  auto map = [&](const Exps& e) {
    Exps g(nv_new, 0);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (where[i] < 0) throw std::domain_error("dropped variable occurs");
      g[where[i]] += e[i];
    }
    return g;
  };
  MPoly n(nv_new);
  for (auto& [e, c] : f.num().terms()) n.add_term(map(e), c);
  MultiScalar r(n);
  for (auto& [b, k] : f.den()) {
    MultiScalar ib = MultiScalar::inv_binomial(nv_new, b.c, map(b.m));
    for (int t = 0; t < k; ++t) r = r * ib;
  }
  return r;
}

MultiScalar residue_sum(const MultiScalar& f, const ContourConvention& cv, PoleSet which) {
  if (cv.zvar != 0) throw std::invalid_argument("the contour variable must come first");
  int nv = f.nvars();
  if (f.is_zero()) return MultiScalar(nv);
  if (which == PoleSet::Zero) return coeff_at_zero(f);
  if (which == PoleSet::Infinity) return -coeff_at_zero(f.invert_var(0));
  MultiScalar acc(nv);
  for (auto& [b, k] : f.den()) {
    if (b.m[0] == 0) continue;
    if (b.m[0] != 1) throw std::domain_error("pole family needs root extraction");
    if (k != 1) throw std::domain_error("higher-order pole");
    Exps loc = scaled_exps(b.m, -1);
    loc[0] = 0;
    bool inside = classify(loc, cv);
    if (inside != (which == PoleSet::Inside)) continue;
    MultiScalar h = f * MultiScalar(b.poly(nv));
    if (h.den().count(b)) throw std::logic_error("pole factor did not cancel");
    acc += -substitute_var(h, 0, b.c.inverse(), loc);
  }
  return acc;
}

MultiScalar contour_integral(const MultiScalar& f, const ContourConvention& cv) {
  return residue_sum(f, cv, PoleSet::Inside) + residue_sum(f, cv, PoleSet::Zero);
}

RatMat residue_unit_circle(const RatMat& m, const ContourConvention& cv) {
  RatMat r = m;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < long(m.v.size()); ++i) r.v[i] = contour_integral(m.v[i], cv);
  return r;
}

bool residue_total_vanishes(const RatMat& m, const ContourConvention& cv) {
  for (auto& e : m.v) {
    MultiScalar t = residue_sum(e, cv, PoleSet::Inside) + residue_sum(e, cv, PoleSet::Outside) +
                    residue_sum(e, cv, PoleSet::Zero) + residue_sum(e, cv, PoleSet::Infinity);
    if (!t.is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------- integrands and R factors

// the contour separates the poles of the current expanded in z^{-1} (inside) from the other family;
// in (u, x) the a-family sits at u = q^m and the b-family at u = q^m / x
static ContourConvention ux_contour(Split s) {
  if (s == Split::PlusMinus) return ContourConvention{0, {}, {1}, true};
  return ContourConvention{0, {1}, {}, false};
}

RatMat I_eval_integrand(int n, Split s, const SpinRep& v1, const SpinRep& v2) {
  if (n < 1) throw std::invalid_argument("order must be positive");
  bool pm = s == Split::PlusMinus;
  RatMat A = ev_half_current(v1, Kind::F, pm ? Sign::Plus : Sign::Minus, {1, 0});
  RatMat B = ev_half_current(v2, Kind::E, pm ? Sign::Minus : Sign::Plus, {1, 1});
  MultiScalar one(2, Scalar(1));
  Scalar pre = qm().pow(2 * n - 1) / q_number(n);
  if (n % 2) pre = -pre;
  return scaled(kron(mpow(A, n, one), mpow(B, n, one)), MultiScalar(2, pre));
}

RatMat I_eval(int n, Split s, const SpinRep& v1, const SpinRep& v2) {
  RatMat c = residue_unit_circle(I_eval_integrand(n, s, v1, v2), ux_contour(s));
  RatMat r(c.rows, c.cols, MultiScalar(1));
  for (size_t i = 0; i < c.v.size(); ++i) r.v[i] = remap_vars(c.v[i], 1, {-1, 0});
  return r;
}

static RatMat FnEn(int n, const SpinRep& v1, const SpinRep& v2) {
  ScalarMat id1 = smat(v1.dim()), id2 = smat(v2.dim());
  for (int i = 0; i < v1.dim(); ++i) id1(i, i) = Scalar(1);
  for (int i = 0; i < v2.dim(); ++i) id2(i, i) = Scalar(1);
  ScalarMat f = id1, e = id2;
  for (int k = 0; k < n; ++k) {
    f = smul(f, v1.F);
    e = smul(e, v2.E);
  }
  return to_ratmat(mkron(f, e), 1);
}

// coefficient depending on Z = x q^{h1-h2}; placed on output weights for PlusMinus, input for MinusPlus
template <class Fn>
static RatMat with_Z(const RatMat& m, Split s, const SpinRep& v1, const SpinRep& v2, Fn coef) {
  RatMat r = m;
  int d2 = v2.dim();
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      if (m(i, j).is_zero()) continue;
      int idx = s == Split::PlusMinus ? i : j;
      int h = v1.weights[idx / d2] - v2.weights[idx % d2];
      r(i, j) = m(i, j) * coef(h);
    }
  return r;
}

RatMat I_eval_closed(int n, Split s, const SpinRep& v1, const SpinRep& v2) {
  Scalar pre = qm().pow(2 * n - 1) / q_number(n);
  bool pm = s == Split::PlusMinus;
  return with_Z(FnEn(n, v1, v2), s, v1, v2, [&](int h) {
    MultiScalar acc(1);
    for (int j = 1; j <= n; ++j) {
      Scalar c(1);
      for (int i = 1; i <= n; ++i)
        if (i != j) c *= (pm ? Scalar::q(2 * (i - j)) : Scalar(1)) / (Scalar(1) - Scalar::q(2 * (i - j)));
      MultiScalar t(1, c);
      for (int l = 1; l <= n; ++l) {
        int k = 2 * (l + j - 1);
        if (pm)
          t = t * mono(1, Scalar::q(k + h), {1}) * MultiScalar::inv_binomial(1, Scalar::q(k + h), {1});
        else
          t = t * MultiScalar::inv_binomial(1, Scalar::q(k - h), {-1});
      }
      acc += t;
    }
    return acc.scaled(pre);
  });
}

RatMat R_eval_closed(int n, Split s, const SpinRep& v1, const SpinRep& v2) {
  bool pm = s == Split::PlusMinus;
  Scalar pre = qm().pow(n) / (pm ? qsqinv_factorial(n) : qsq_factorial(n));
  return with_Z(FnEn(n, v1, v2), s, v1, v2, [&](int h) {
    MultiScalar t(1, pre);
    for (int i = 1; i <= n; ++i) {
      if (pm)
        t = t * mono(1, Scalar::q(2 * i + h), {1}) * MultiScalar::inv_binomial(1, Scalar::q(2 * i + h), {1});
      else
        t = t * MultiScalar::inv_binomial(1, Scalar::q(2 * i - h), {-1});
    }
    return t;
  });
}

std::vector<RatMat> R_eval_recurrence(int n, Split s, const SpinRep& v1, const SpinRep& v2) {
  int d = v1.dim() * v2.dim();
  std::vector<RatMat> I(n + 1), R(n + 1);
  for (int k = 1; k <= n; ++k) I[k] = I_eval(k, s, v1, v2);
  R[0] = rat_identity(d, 1);
  for (int j = 1; j <= n; ++j) {
    RatMat acc(d, d, MultiScalar(1));
    for (int k = 1; k <= j; ++k) acc = acc + (s == Split::PlusMinus ? R[j - k] * I[k] : I[k] * R[j - k]);
    R[j] = scaled(acc, MultiScalar(1, Scalar(mpq_class(1, j))));
  }
  return R;
}

SeriesMat ev_tensor_series(const Tensor& t, const SpinRep& v1, const SpinRep& v2) {
  int d = v1.dim() * v2.dim();
  SeriesMat r(d, d, MPoly(1));
  for (auto& [words, c] : t.terms) {
    auto& [fw, ew] = words;
    ScalarMat a = kpow(v1, 0), b = kpow(v2, 0);
    int df = 0, de = 0;
    for (int w : fw) {
      a = smul(a, smul(v1.F, kpow(v1, w)));
      df += w;
    }
    for (int w : ew) {
      b = smul(b, smul(kpow(v2, w), v2.E));
      de += w;
    }
    if (df + de != 0) throw std::invalid_argument("tensor term is not of degree zero");
    ScalarMat k = mkron(a, b);
    for (size_t i = 0; i < k.v.size(); ++i)
      if (!k.v[i].is_zero()) r.v[i].add_term({df}, c * k.v[i]);
  }
  return r;
}

SeriesMat expand_x(const RatMat& m, Split s, int D) {
  SeriesMat r(m.rows, m.cols, MPoly(1));
  bool pm = s == Split::PlusMinus;
  for (size_t i = 0; i < m.v.size(); ++i) {
    if (m.v[i].is_zero()) continue;
    MultiScalar e = m.v[i].nvars() == 0 ? MultiScalar(1) + m.v[i] : m.v[i];
    auto co = series_coefficients(e, pm ? Direction::AtZero : Direction::AtInfinity, 0, D);
    for (int k = 0; k <= D; ++k) r.v[i].add_term({pm ? k : -k}, co[k]);
  }
  return r;
}

// ---------------------------------------------------------------- checks

std::vector<CheckRecord> relation_check_eval(const SpinRep& r, int range) {
  std::vector<CheckRecord> out;
  Exps a{1};
  int d = r.dim();
  auto mode = [&](ModeLetter l, int n) { return ev_mode(r, l, n, a); };
  RatMat zero(d, d, MultiScalar(1));
  auto add = [&](const std::string& id, const std::string& comp, const RatMat& lhs) {
    out.push_back(make_record(id, comp, lhs, zero, {"a"}));
  };
  struct Quad {
    std::string id;
    ModeLetter x, y;
    int c;
  };
  // (z - c w) X(z) Y(w) = (c z - w) Y(w) X(z), coefficient of z^{-k} w^{-m}
  std::vector<Quad> quads = {{"ee-exchange", ModeLetter::E, ModeLetter::E, 2},      {"ff-exchange", ModeLetter::F, ModeLetter::F, -2},
                             {"psi+e-exchange", ModeLetter::PsiPlus, ModeLetter::E, 2}, {"psi-e-exchange", ModeLetter::PsiMinus, ModeLetter::E, 2},
                             {"psi+f-exchange", ModeLetter::PsiPlus, ModeLetter::F, -2}, {"psi-f-exchange", ModeLetter::PsiMinus, ModeLetter::F, -2}};
  for (auto& qd : quads) {
    MultiScalar c(1, Scalar::q(qd.c));
    for (int k = -range; k <= range; ++k)
      for (int m = -range; m <= range; ++m) {
        RatMat lhs = mode(qd.x, k + 1) * mode(qd.y, m) - scaled(mode(qd.x, k) * mode(qd.y, m + 1), c) -
                     scaled(mode(qd.y, m) * mode(qd.x, k + 1), c) + mode(qd.y, m + 1) * mode(qd.x, k);
        add(qd.id, "k=" + std::to_string(k) + " m=" + std::to_string(m), lhs);
      }
  }
  for (int k = -range; k <= range; ++k)
    for (int m = -range; m <= range; ++m) {
      std::string comp = "k=" + std::to_string(k) + " m=" + std::to_string(m);
      RatMat pp = mode(ModeLetter::PsiPlus, k), pmn = mode(ModeLetter::PsiMinus, m);
      add("psi+psi-commute", comp, pp * pmn - pmn * pp);
      RatMat p2 = mode(ModeLetter::PsiPlus, m), m2 = mode(ModeLetter::PsiMinus, k);
      add("psi-exchange-deg2", comp, pp * p2 - p2 * pp + m2 * pmn - pmn * m2);
      RatMat comm = mode(ModeLetter::E, k) * mode(ModeLetter::F, m) - mode(ModeLetter::F, m) * mode(ModeLetter::E, k);
      RatMat rhs = mode(ModeLetter::PsiPlus, k + m) - mode(ModeLetter::PsiMinus, k + m);
      add("ef-commutator", comp, comm - scaled(rhs, MultiScalar(1, qq().inverse())));
    }
  return out;
}

std::vector<CheckRecord> half_current_check(const SpinRep& r, int terms) {
  std::vector<CheckRecord> out;
  int d = r.dim();
  // z = 1 and a = y^{-1}: the mode a^n z^{-n} becomes y^{-n}
  Exps a{-1};
  for (Kind k : {Kind::E, Kind::F})
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      RatMat hc = ev_half_current(r, k, s, {1});
      ModeLetter l = k == Kind::E ? ModeLetter::E : ModeLetter::F;
      bool plus = s == Sign::Plus;
      int first = plus ? (k == Kind::E ? 0 : 1) : (k == Kind::E ? -1 : 0);
      RatMat sum(d, d, MultiScalar(1));
      for (int t = 0; t < terms; ++t) {
        int n = plus ? first + t : first - t;
        sum = plus ? sum + ev_mode(r, l, n, a) : sum - ev_mode(r, l, n, a);
      }
      // expand at y = infinity for the + currents and at 0 for the - currents, up to |degree| < first + terms
      int top = std::abs(first) + terms - 1;
      RatMat series(d, d, MultiScalar(1));
      for (size_t i = 0; i < hc.v.size(); ++i) {
        if (hc.v[i].is_zero()) continue;
        auto co = series_coefficients(hc.v[i], plus ? Direction::AtInfinity : Direction::AtZero, 0, top);
        MPoly p(1);
        for (int j = 0; j <= top; ++j) p.add_term({plus ? -j : j}, co[j]);
        series.v[i] = MultiScalar(p);
      }
      std::string id = std::string(k == Kind::E ? "e" : "f") + (plus ? "_+" : "_-");
      out.push_back(make_record("half-current-series " + id, "two_j=" + std::to_string(r.two_j), series, sum, {"y"}));
    }
  return out;
}

std::vector<CheckRecord> half_current_relation_check(const SpinRep& r) {
  std::vector<CheckRecord> out;
  const int nv = 2;
  Exps z{1, -1}, zi{-1, 1};
  auto g = [&](const Exps& y) { return (mono(nv, Scalar::q(2), {}) - mono(nv, 1, y)) * MultiScalar::inv_binomial(nv, Scalar::q(2), y); };
  auto gp = [&](const Exps& y) { return (mono(nv, Scalar::q(-2), {}) - mono(nv, 1, y)) * MultiScalar::inv_binomial(nv, Scalar::q(-2), y); };
  auto ps = [&](const Exps& y) { return MultiScalar::inv_binomial(nv, Scalar::q(2), y).scaled(Scalar(1) - Scalar::q(2)); };
  auto psp = [&](const Exps& y) { return MultiScalar::inv_binomial(nv, Scalar::q(-2), y).scaled(Scalar(1) - Scalar::q(-2)); };
  auto hc = [&](Kind k, Sign s, int slot) { return ev_half_current(r, k, s, slot == 1 ? Exps{1, 0} : Exps{0, 1}); };
  MultiScalar Z = mono(nv, 1, z), Zi = mono(nv, 1, zi);
  std::string comp = "two_j=" + std::to_string(r.two_j);
  auto rec = [&](const std::string& id, const RatMat& lhs, const RatMat& rhs) {
    out.push_back(make_record(id, comp, lhs, rhs, {"z1", "z2"}));
  };
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    std::string sg = s == Sign::Plus ? "+" : "-";
    RatMat e1 = hc(Kind::E, s, 1), e2 = hc(Kind::E, s, 2), f1 = hc(Kind::F, s, 1), f2 = hc(Kind::F, s, 2);
    rec("half-current-exchange-ea" + sg, e1 * e2, scaled(e2 * e1, g(zi)) + scaled(scaled(e1 * e1, Zi) + e2 * e2, ps(zi)));
    rec("half-current-exchange-eb" + sg, e1 * e2, scaled(e2 * e1, gp(z)) + scaled(e1 * e1 + scaled(e2 * e2, Z), psp(z)));
    rec("half-current-exchange-fa" + sg, f1 * f2, scaled(f2 * f1, gp(zi)) + scaled(f1 * f1 + scaled(f2 * f2, Zi), psp(zi)));
    rec("half-current-exchange-fb" + sg, f1 * f2, scaled(f2 * f1, g(z)) + scaled(scaled(f1 * f1, Z) + f2 * f2, ps(z)));
  }
  RatMat ep1 = hc(Kind::E, Sign::Plus, 1), em2 = hc(Kind::E, Sign::Minus, 2);
  RatMat em1 = hc(Kind::E, Sign::Minus, 1), ep2 = hc(Kind::E, Sign::Plus, 2);
  rec("half-current-exchange-ec", ep1 * em2, scaled(em2 * ep1, g(zi)) + scaled(scaled(ep1 * ep1, Zi) + em2 * em2, ps(zi)));
  rec("half-current-exchange-ed", em1 * ep2, scaled(ep2 * em1, gp(z)) + scaled(em1 * em1 + scaled(ep2 * ep2, Z), psp(z)));
  RatMat fp1 = hc(Kind::F, Sign::Plus, 1), fm2 = hc(Kind::F, Sign::Minus, 2);
  RatMat fm1 = hc(Kind::F, Sign::Minus, 1), fp2 = hc(Kind::F, Sign::Plus, 2);
  rec("half-current-exchange-fc", fp1 * fm2, scaled(fm2 * fp1, gp(zi)) + scaled(fp1 * fp1 + scaled(fm2 * fm2, Zi), psp(zi)));
  rec("half-current-exchange-fd", fm1 * fp2, scaled(fp2 * fm1, g(z)) + scaled(scaled(fm1 * fm1, Z) + fp2 * fp2, ps(z)));
  return out;
}

static std::string pair_str(int n, Split s, const SpinRep& v1, const SpinRep& v2) {
  return "n=" + std::to_string(n) + " " + split_name(s) + " " + std::to_string(v1.two_j) + "x" + std::to_string(v2.two_j);
}

std::vector<CheckRecord> eval_integral_check(int n, const SpinRep& v1, const SpinRep& v2) {
  std::vector<CheckRecord> out;
  for (Split s : {Split::PlusMinus, Split::MinusPlus}) {
    RatMat integrand = I_eval_integrand(n, s, v1, v2);
    out.push_back(make_record(s == Split::PlusMinus ? "eval-integral-pm" : "eval-integral-mp", pair_str(n, s, v1, v2), I_eval(n, s, v1, v2),
                              I_eval_closed(n, s, v1, v2), {"x"}));
    CheckRecord c;
    c.identity = "residue-sum";
    c.component = pair_str(n, s, v1, v2);
    c.pass = residue_total_vanishes(integrand, ux_contour(s));
    out.push_back(c);
  }
  return out;
}

std::vector<CheckRecord> eval_commutation_check(int nsum, const SpinRep& v1, const SpinRep& v2) {
  std::vector<CheckRecord> out;
  for (Split s : {Split::PlusMinus, Split::MinusPlus}) {
    std::vector<RatMat> I(nsum);
    for (int n = 1; n < nsum; ++n) I[n] = I_eval(n, s, v1, v2);
    for (int n = 1; n < nsum; ++n)
      for (int m = n + 1; n + m <= nsum; ++m)
        out.push_back(make_record("integrand-commute", pair_str(n, s, v1, v2) + " m=" + std::to_string(m), I[n] * I[m], I[m] * I[n], {"x"}));
  }
  return out;
}

std::vector<CheckRecord> eval_recurrence_check(int n, const SpinRep& v1, const SpinRep& v2) {
  std::vector<CheckRecord> out;
  for (Split s : {Split::PlusMinus, Split::MinusPlus}) {
    auto R = R_eval_recurrence(n, s, v1, v2);
    for (int k = 0; k <= n; ++k) {
      RatMat closed = k == 0 ? rat_identity(v1.dim() * v2.dim(), 1) : R_eval_closed(k, s, v1, v2);
      out.push_back(make_record(s == Split::PlusMinus ? "eval-rfactor-pm" : "eval-rfactor-mp", pair_str(k, s, v1, v2), R[k], closed, {"x"}));
    }
  }
  return out;
}

std::vector<CheckRecord> eval_mode_series_check(int nmax, int D, const SpinRep& v1, const SpinRep& v2) {
  std::vector<CheckRecord> out;
  auto rec = [&](const std::string& id, const std::string& comp, const SeriesMat& a, const SeriesMat& b) {
    CheckRecord c;
    c.identity = id;
    c.component = comp;
    c.pass = series_equal(a, b);
    c.lhs = series_json(a).dump();
    c.rhs = series_json(b).dump();
    out.push_back(c);
  };
  for (Split s : {Split::PlusMinus, Split::MinusPlus})
    for (int n = 1; n <= nmax; ++n) {
      std::string comp = pair_str(n, s, v1, v2) + " D=" + std::to_string(D);
      rec("eval-shell-integrand", comp, ev_tensor_series(I_proj_full(n, s, D), v1, v2), expand_x(I_eval(n, s, v1, v2), s, D));
      rec("eval-shell-rfactor", comp, ev_tensor_series(R_full(n, s, D, RMethod::Recurrence), v1, v2),
          expand_x(R_eval_recurrence(n, s, v1, v2)[n], s, D));
    }
  return out;
}

// ---------------------------------------------------------------- Cartan factor and YBE

SeriesMat mat_mul(const SeriesMat& a, const SeriesMat& b, int D) {
  SeriesMat r = mmul(a, b);
  for (auto& e : r.v) e = truncate(e, D);
  return r;
}

std::vector<Scalar> imaginary_mode_diag(const SpinRep& r, int n, bool negative) {
  int d = r.dim();
  ScalarMat ef = smul(r.E, r.F), fe = smul(r.F, r.E);
  std::vector<Scalar> out(d);
  for (int i = 0; i < d; ++i) {
    int h = r.weights[i];
    // k^{-1} psi^+ = 1 + sum p_k y^k, k psi^- = 1 + sum p_k y^{-k}; the log gives +-(q - q^{-1}) a_{+-k}
    std::vector<Scalar> p(n + 1), L(n + 1);
    for (int k = 1; k <= n; ++k) {
      int sk = negative ? -k : k;
      Scalar v = qq() * Scalar::q(sk * h) * (ef(i, i) - Scalar::q(2 * sk) * fe(i, i));
      p[k] = negative ? -(Scalar::q(h) * v) : Scalar::q(-h) * v;
    }
    for (int k = 1; k <= n; ++k) {
      Scalar acc = Scalar(k) * p[k];
      for (int j = 1; j < k; ++j) acc -= Scalar(j) * L[j] * p[k - j];
      L[k] = acc / Scalar(k);
    }
    out[i] = negative ? -(L[n] / qq()) : L[n] / qq();
  }
  return out;
}

SeriesMat k_factor_eval(const SpinRep& v1, const SpinRep& v2, int M) {
  int d1 = v1.dim(), d2 = v2.dim();
  SeriesMat r(d1 * d2, d1 * d2, MPoly(1));
  std::vector<std::vector<Scalar>> A(M + 1), B(M + 1);
  for (int n = 1; n <= M; ++n) {
    A[n] = imaginary_mode_diag(v1, n, false);
    B[n] = imaginary_mode_diag(v2, n, true);
  }
  for (int i1 = 0; i1 < d1; ++i1)
    for (int i2 = 0; i2 < d2; ++i2) {
      std::vector<Scalar> e(M + 1), X(M + 1);
      for (int n = 1; n <= M; ++n) e[n] = qm() * Scalar(n) / q_number(2 * n) * A[n][i1] * B[n][i2];
      X[0] = Scalar(1);
      for (int n = 1; n <= M; ++n) {
        Scalar acc;
        for (int k = 1; k <= n; ++k) acc += Scalar(k) * e[k] * X[n - k];
        X[n] = acc / Scalar(n);
      }
      Scalar pre = Scalar::qhalf(-v1.weights[i1] * v2.weights[i2]);
      MPoly p(1);
      for (int n = 0; n <= M; ++n) p.add_term({n}, pre * X[n]);
      r(i1 * d2 + i2, i1 * d2 + i2) = p;
    }
  return r;
}

SeriesMat R_can_eval(const SpinRep& v1, const SpinRep& v2, int D) {
  int d1 = v1.dim(), d2 = v2.dim(), d = d1 * d2;
  int nmax = std::min(v1.two_j, v2.two_j);
  SeriesMat Rpm(d, d, MPoly(1)), R21(d, d, MPoly(1));
  auto Rp = R_eval_recurrence(nmax, Split::PlusMinus, v1, v2);
  auto Rm = R_eval_recurrence(nmax, Split::MinusPlus, v2, v1);
  for (int n = 0; n <= nmax; ++n) {
    SeriesMat a = expand_x(Rp[n], Split::PlusMinus, D);
    // functions of b/a on V2 (x) V1; with x = a/b they expand at x = 0 after the swap
    RatMat m = Rm[n];
    for (auto& e : m.v)
      if (!e.is_zero()) e = e.invert_var(0);
    SeriesMat b = expand_x(m, Split::PlusMinus, D);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Rpm(i, j) = Rpm(i, j) + a(i, j);
        int si = (i % d1) * d2 + i / d1, sj = (j % d1) * d2 + j / d1;
        R21(si, sj) = R21(si, sj) + b(i, j);
      }
  }
  return mat_mul(mat_mul(R21, k_factor_eval(v1, v2, D), D), Rpm, D);
}

SeriesMat ybe_defect(const SpinRep& v, int D) { return ybe_defect_of(R_can_eval(v, v, D), v.dim(), D); }

SeriesMat ybe_defect_of(const SeriesMat& R, int d, int D) {
  int d3 = d * d * d;
  // x^k -> s^k, t^k or (s t)^k
  auto lift = [&](const MPoly& p, int which) {
    MPoly r(2);
    for (auto& [e, c] : p.terms()) {
      Exps f{which != 1 ? e[0] : 0, which != 0 ? e[0] : 0};
      r.add_term(f, c);
    }
    return truncate(r, D);
  };
  SeriesMat R12(d3, d3, MPoly(2)), R13(d3, d3, MPoly(2)), R23(d3, d3, MPoly(2));
  auto idx = [&](int a, int b, int c) { return (a * d + b) * d + c; };
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int a2 = 0; a2 < d; ++a2)
          for (int b2 = 0; b2 < d; ++b2) {
            const MPoly& p = R(a * d + b, a2 * d + b2);
            if (p.is_zero()) continue;
            R12(idx(a, b, c), idx(a2, b2, c)) = lift(p, 0);
            R13(idx(a, c, b), idx(a2, c, b2)) = lift(p, 2);
            R23(idx(c, a, b), idx(c, a2, b2)) = lift(p, 1);
          }
  SeriesMat l = mat_mul(mat_mul(R12, R13, D), R23, D);
  SeriesMat r = mat_mul(mat_mul(R23, R13, D), R12, D);
  SeriesMat out = l;
  for (size_t i = 0; i < out.v.size(); ++i) out.v[i] = l.v[i] - r.v[i];
  return out;
}

std::vector<CheckRecord> six_vertex_check(int D) {
  SpinRep f = spin_rep(1);
  SeriesMat R = R_can_eval(f, f, D);
  const MPoly& rho = R(0, 0);
  MultiScalar one(1, Scalar(1)), x = mono(1, Scalar(1), {1});
  MultiScalar den = MultiScalar::inv_binomial(1, Scalar::q(2), {1});
  MultiScalar b = (one - x).scaled(Scalar::q(1)) * den, c = den.scaled(Scalar(1) - Scalar::q(2));
  RatMat S(4, 4, MultiScalar(1));
  S(0, 0) = one;
  S(3, 3) = one;
  S(1, 1) = b;
  S(2, 2) = b;
  S(1, 2) = c;
  S(2, 1) = c * x;
  SeriesMat Sx = expand_x(S, Split::PlusMinus, D);
  std::vector<CheckRecord> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      MPoly lhs = R(i, j), rhs = truncate(rho * Sx(i, j), D);
      CheckRecord r;
      r.identity = "six-vertex";
      r.component = "entry " + std::to_string(i) + "," + std::to_string(j) + " D=" + std::to_string(D);
      r.pass = (lhs - rhs).is_zero();
      r.lhs = MultiScalar(lhs).str({"x"});
      r.rhs = MultiScalar(rhs).str({"x"});
      out.push_back(r);
    }
  return out;
}

}  // namespace uqr
