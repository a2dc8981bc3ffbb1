#include "uqr/qfield.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <stdexcept>

namespace uqr {

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(const mpq_class& c, int e) {
  if (c != 0) t_.emplace_back(e, c);
}

mpq_class LaurentPoly::coeff(int e) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), e,
                             [](const Term& a, int x) { return a.first < x; });
  if (it != t_.end() && it->first == e) return it->second;
  return 0;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  if (o.t_.empty()) return *this;
  if (t_.empty()) return o;
  LaurentPoly r;
  r.t_.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    if (j == o.t_.size() || (i < t_.size() && t_[i].first < o.t_[j].first)) {
      r.t_.push_back(t_[i++]);
    } else if (i == t_.size() || o.t_[j].first < t_[i].first) {
      r.t_.push_back(o.t_[j++]);
    } else {
      mpq_class s = t_[i].second + o.t_[j].second;
      if (s != 0) r.t_.emplace_back(t_[i].first, s);
      ++i;
      ++j;
    }
  }
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [e, c] : r.t_) c = -c;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (t_.empty() || o.t_.empty()) return {};
  if (o.t_.size() == 1) return scaled(o.t_[0].second).shifted(o.t_[0].first);
  if (t_.size() == 1) return o.scaled(t_[0].second).shifted(t_[0].first);
  int lo = low() + o.low(), hi = high() + o.high();
  std::vector<mpq_class> acc(hi - lo + 1);
  for (auto& [ea, ca] : t_)
    for (auto& [eb, cb] : o.t_) acc[ea + eb - lo] += ca * cb;
  LaurentPoly r;
  for (int k = 0; k <= hi - lo; ++k)
    if (acc[k] != 0) r.t_.emplace_back(k + lo, std::move(acc[k]));
  return r;
}

LaurentPoly LaurentPoly::scaled(const mpq_class& c) const {
  if (c == 0) return {};
  LaurentPoly r = *this;
  for (auto& [e, v] : r.t_) v *= c;
  return r;
}

LaurentPoly LaurentPoly::shifted(int de) const {
  LaurentPoly r = *this;
  for (auto& [e, v] : r.t_) e += de;
  return r;
}

bool LaurentPoly::operator<(const LaurentPoly& o) const {
  size_t n = std::min(t_.size(), o.t_.size());
  for (size_t i = 0; i < n; ++i) {
    if (t_[i].first != o.t_[i].first) return t_[i].first < o.t_[i].first;
    int c = cmp(t_[i].second, o.t_[i].second);
    if (c != 0) return c < 0;
  }
  return t_.size() < o.t_.size();
}

mpq_class LaurentPoly::at_one() const {
  mpq_class s = 0;
  for (auto& [e, c] : t_) s += c;
  return s;
}

mpq_class LaurentPoly::eval(const mpq_class& t0) const {
  mpq_class s = 0;
  for (auto& [e, c] : t_) {
    mpq_class p = 1;
    mpq_class b = e >= 0 ? t0 : mpq_class(1) / t0;
    for (int k = 0; k < std::abs(e); ++k) p *= b;
    s += c * p;
  }
  return s;
}

std::pair<LaurentPoly, LaurentPoly> LaurentPoly::divmod(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  int db = b.high();
  const mpq_class& lb = b.lead();
  std::vector<mpq_class> r;
  if (a.is_zero()) return {LaurentPoly(), LaurentPoly()};
  int lo = std::min(a.low(), 0);
  r.assign(a.high() - lo + 1, 0);
  for (auto& [e, c] : a.t_) r[e - lo] = c;
  int dr = a.high();
  std::vector<mpq_class> qv(std::max(0, dr - db + 1));
  for (int d = dr; d >= db; --d) {
    const mpq_class& top = r[d - lo];
    if (top == 0) continue;
    mpq_class f = top / lb;
    qv[d - db] = f;
    for (auto& [e, c] : b.t_) r[e + d - db - lo] -= f * c;
  }
  LaurentPoly Q, R;
  for (size_t k = 0; k < qv.size(); ++k)
    if (qv[k] != 0) Q.t_.emplace_back(int(k), qv[k]);
  for (size_t k = 0; k < r.size(); ++k)
    if (r[k] != 0) R.t_.emplace_back(int(k) + lo, r[k]);
  return {Q, R};
}

LaurentPoly LaurentPoly::gcd(LaurentPoly a, LaurentPoly b) {
  if (a.is_zero()) return b.is_zero() ? LaurentPoly(1) : b.scaled(1 / b.lead());
  if (b.is_zero()) return a.scaled(1 / a.lead());
  a = a.shifted(-a.low());
  b = b.shifted(-b.low());
  if (a.high() < b.high()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.high() == 0) return LaurentPoly(1);
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = r.is_zero() ? r : r.scaled(1 / r.lead());
  }
  return a.scaled(1 / a.lead());
}

mpz_class LaurentPoly::content_lcm_den() const {
  mpz_class l = 1;
  for (auto& [e, c] : t_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

mpz_class LaurentPoly::content_gcd_num() const {
  mpz_class g = 0;
  for (auto& [e, c] : t_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
  return g;
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(const mpq_class& c) : num_(c), den_(mpq_class(1)) {}

Scalar::Scalar(LaurentPoly n) : num_(std::move(n)), den_(mpq_class(1)) {}

Scalar::Scalar(LaurentPoly n, LaurentPoly d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_.is_zero()) throw std::domain_error("Scalar with zero denominator");
  canonicalize();
}

void Scalar::canonicalize() {
  if (num_.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  int s = den_.low();
  if (s != 0) {
    num_ = num_.shifted(-s);
    den_ = den_.shifted(-s);
  }
  if (den_.t_.size() == 1) {
    num_ = num_.scaled(1 / den_.t_[0].second);
    den_ = LaurentPoly(1);
    return;
  }
  int nl = num_.low();
  LaurentPoly g = LaurentPoly::gcd(num_.shifted(-nl), den_);
  if (g.high() > 0) {
    num_ = LaurentPoly::divmod(num_.shifted(-nl), g).first.shifted(nl);
    den_ = LaurentPoly::divmod(den_, g).first;
    int s2 = den_.low();
    if (s2 != 0) {
      num_ = num_.shifted(-s2);
      den_ = den_.shifted(-s2);
    }
  }
  if (den_.t_.size() == 1) {
    num_ = num_.scaled(1 / den_.t_[0].second);
    den_ = LaurentPoly(1);
    return;
  }
  mpq_class f(den_.content_lcm_den());
  LaurentPoly d1 = den_.scaled(f);
  mpq_class h(d1.content_gcd_num());
  f /= h;
  if (den_.lead() < 0) f = -f;
  den_ = den_.scaled(f);
  num_ = num_.scaled(f);
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (den_.is_one() && o.den_.is_one()) return Scalar(num_ + o.num_);
  Scalar r;
  if (den_ == o.den_) {
    r.num_ = num_ + o.num_;
    r.den_ = den_;
  } else {
    r.num_ = num_ * o.den_ + o.num_ * den_;
    r.den_ = den_ * o.den_;
  }
  r.canonicalize();
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_zero() || o.is_zero()) return Scalar();
  if (den_.is_one() && o.den_.is_one()) return Scalar(num_ * o.num_);
  Scalar r;
  r.num_ = num_ * o.num_;
  r.den_ = den_ * o.den_;
  r.canonicalize();
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero Scalar");
  Scalar r;
  r.num_ = den_;
  r.den_ = num_;
  r.canonicalize();
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  Scalar r(1), b = *this;
  while (k) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

bool Scalar::operator<(const Scalar& o) const {
  if (num_ != o.num_) return num_ < o.num_;
  return den_ < o.den_;
}

int Scalar::valuation() const {
  if (is_zero()) return INT_MAX;
  return num_.low() - den_.low();
}

Scalar Scalar::bar() const {
  auto flip = [](const LaurentPoly& p) {
    LaurentPoly r;
    for (auto it = p.t_.rbegin(); it != p.t_.rend(); ++it) r.t_.emplace_back(-it->first, it->second);
    return r;
  };
  return Scalar(flip(num_), flip(den_));
}

mpq_class Scalar::at_one() const {
  mpq_class d = den_.at_one();
  if (d == 0) throw std::domain_error("Scalar has a pole at q=1");
  return num_.at_one() / d;
}

std::vector<mpq_class> Scalar::expand(int lo, int hi) const {
  std::vector<mpq_class> out(std::max(0, hi - lo + 1));
  if (is_zero() || hi < lo) return out;
  int nl = num_.low();
  int len = hi - nl + 1;
  if (len <= 0) return out;
  std::vector<mpq_class> inv(len);
  const mpq_class& d0 = den_.t_[0].second;
  for (int k = 0; k < len; ++k) {
    mpq_class s = (k == 0) ? mpq_class(1) : mpq_class(0);
    for (auto& [e, c] : den_.t_) {
      if (e == 0) continue;
      if (e > k) break;
      s -= c * inv[k - e];
    }
    inv[k] = s / d0;
  }
  for (int k = lo; k <= hi; ++k) {
    mpq_class s = 0;
    for (auto& [e, c] : num_.t_) {
      int j = k - e;
      if (j < 0) break;
      if (j < len) s += c * inv[j];
    }
    out[k - lo] = s;
  }
  return out;
}

static std::string exp_str(int e) {
  if (e % 2 == 0) return std::to_string(e / 2);
  return "(" + std::to_string(e) + "/2)";
}

std::string poly_str(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.t_.rbegin(); it != p.t_.rend(); ++it) {
    mpq_class c = it->second;
    int e = it->first;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (e == 0) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << "*";
      os << "q";
      if (e != 2) os << "^" << exp_str(e);
    }
  }
  return os.str();
}

std::string Scalar::str() const {
  if (den_.is_one()) return poly_str(num_);
  return "(" + poly_str(num_) + ")/(" + poly_str(den_) + ")";
}

static nlohmann::json poly_json(const LaurentPoly& p) {
  nlohmann::json a = nlohmann::json::array();
  for (auto& [e, c] : p.t_) a.push_back({e, c.get_str()});
  return a;
}

static LaurentPoly poly_from_json(const nlohmann::json& a) {
  LaurentPoly p;
  for (auto& t : a) {
    int e = t.at(0).get<int>();
    mpq_class c(t.at(1).get<std::string>());
    c.canonicalize();
    if (!p.t_.empty() && p.t_.back().first >= e) throw std::invalid_argument("unsorted exponents");
    if (c != 0) p.t_.emplace_back(e, c);
  }
  return p;
}

nlohmann::json Scalar::to_json() const { return {{"num", poly_json(num_)}, {"den", poly_json(den_)}}; }

Scalar Scalar::from_json(const nlohmann::json& j) {
  return Scalar(poly_from_json(j.at("num")), poly_from_json(j.at("den")));
}

// ---------------------------------------------------------------- q-numbers

Scalar q_number(int n) {
  LaurentPoly p;
  int a = std::abs(n);
  for (int k = -(a - 1); k <= a - 1; k += 2) p.t_.emplace_back(2 * k, mpq_class(n > 0 ? 1 : -1));
  return Scalar(p);
}

Scalar q_factorial(int n) {
  if (n < 0) throw std::invalid_argument("q_factorial of negative integer");
  Scalar r(1);
  for (int k = 1; k <= n; ++k) r *= q_number(k);
  return r;
}

Scalar qsq_number(int n) {
  if (n < 0) throw std::invalid_argument("qsq_number of negative integer");
  LaurentPoly p;
  for (int k = 0; k < n; ++k) p.t_.emplace_back(4 * k, mpq_class(1));
  return Scalar(p);
}

Scalar qsq_factorial(int n) {
  if (n < 0) throw std::invalid_argument("qsq_factorial of negative integer");
  Scalar r(1);
  for (int k = 1; k <= n; ++k) r *= qsq_number(k);
  return r;
}

Scalar qsqinv_factorial(int n) { return qsq_factorial(n).bar(); }

Scalar qm() { return Scalar(LaurentPoly::monomial(-2) - LaurentPoly::monomial(2)); }

// ---------------------------------------------------------------- MPoly

MPoly::MPoly(int nvars, const Scalar& c, Exps e) : nv_(nvars) {
  if (e.empty()) e.assign(nvars, 0);
  if (!c.is_zero()) t_.emplace(std::move(e), c);
}

MPoly MPoly::var(int nvars, int i, int power) {
  Exps e(nvars, 0);
  e[i] = power;
  return MPoly(nvars, Scalar(1), e);
}

void MPoly::add_term(const Exps& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, ins] = t_.emplace(e, c);
  if (!ins) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r = *this;
  if (r.nv_ == 0) r.nv_ = o.nv_;
  for (auto& [e, c] : o.t_) r.add_term(e, c);
  return r;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& [e, c] : r.t_) c = -c;
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly r(std::max(nv_, o.nv_));
  for (auto& [ea, ca] : t_)
    for (auto& [eb, cb] : o.t_) {
      Exps e = ea;
      for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

MPoly MPoly::scaled(const Scalar& c) const {
  if (c.is_zero()) return MPoly(nv_);
  MPoly r = *this;
  for (auto& [e, v] : r.t_) v *= c;
  return r;
}

MPoly MPoly::shifted(const Exps& de) const {
  MPoly r(nv_);
  for (auto& [e, c] : t_) {
    Exps f = e;
    for (size_t i = 0; i < f.size(); ++i) f[i] += de[i];
    r.t_.emplace(std::move(f), c);
  }
  return r;
}

MPoly Binomial::poly(int nv) const {
  MPoly p(nv, Scalar(1));
  p.add_term(m, -c);
  return p;
}

// ---------------------------------------------------------------- MultiScalar

MultiScalar from_parts(MPoly n, std::map<Binomial, int> d) {
  MultiScalar r;
  r.num_ = std::move(n);
  r.den_ = std::move(d);
  r.reduce();
  return r;
}

MultiScalar::MultiScalar(int nvars, const Scalar& c) : num_(nvars, c) {}

MultiScalar MultiScalar::var(int nvars, int i, int power) { return MultiScalar(MPoly::var(nvars, i, power)); }

static bool first_nonzero_positive(const Exps& m) {
  for (int v : m)
    if (v != 0) return v > 0;
  return false;
}

MultiScalar MultiScalar::inv_binomial(int nvars, const Scalar& c, const Exps& m) {
  if (!first_nonzero_positive(m)) {
    bool allzero = std::all_of(m.begin(), m.end(), [](int v) { return v == 0; });
    if (allzero) return MultiScalar(nvars, (Scalar(1) - c).inverse());
    // 1/(1 - c x^m) = -c^{-1} x^{-m} / (1 - c^{-1} x^{-m})
    Exps nm = m;
    for (auto& v : nm) v = -v;
    MultiScalar r = inv_binomial(nvars, c.inverse(), nm);
    r.num_ = r.num_.shifted(nm).scaled(-c.inverse());
    return r;
  }
  MultiScalar r(nvars, Scalar(1));
  r.den_[Binomial{c, m}] = 1;
  return r;
}

static MPoly expand_den(int nv, const std::map<Binomial, int>& d) {
  MPoly p(nv, Scalar(1));
  for (auto& [b, k] : d)
    for (int i = 0; i < k; ++i) p = p * b.poly(nv);
  return p;
}

MultiScalar MultiScalar::operator+(const MultiScalar& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  int nv = std::max(nvars(), o.nvars());
  std::map<Binomial, int> l = den_;
  for (auto& [b, k] : o.den_) l[b] = std::max(l[b], k);
  std::map<Binomial, int> ma, mb;
  for (auto& [b, k] : l) {
    auto ia = den_.find(b);
    int ka = ia == den_.end() ? 0 : ia->second;
    auto ib = o.den_.find(b);
    int kb = ib == o.den_.end() ? 0 : ib->second;
    if (k > ka) ma[b] = k - ka;
    if (k > kb) mb[b] = k - kb;
  }
  MPoly n = num_ * expand_den(nv, ma) + o.num_ * expand_den(nv, mb);
  return from_parts(std::move(n), std::move(l));
}

MultiScalar MultiScalar::operator-() const {
  MultiScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

MultiScalar MultiScalar::operator-(const MultiScalar& o) const { return *this + (-o); }

MultiScalar MultiScalar::operator*(const MultiScalar& o) const {
  if (is_zero() || o.is_zero()) return MultiScalar(std::max(nvars(), o.nvars()));
  std::map<Binomial, int> d = den_;
  for (auto& [b, k] : o.den_) d[b] += k;
  return from_parts(num_ * o.num_, std::move(d));
}

MultiScalar MultiScalar::scaled(const Scalar& c) const {
  MultiScalar r = *this;
  r.num_ = r.num_.scaled(c);
  if (c.is_zero()) r.den_.clear();
  return r;
}

BinomialSplit split_two_term(const MPoly& p) {
  if (p.terms().size() != 2) throw std::domain_error("not a two-term polynomial");
  auto it = p.terms().begin();
  const Exps& e1 = it->first;
  const Scalar& a = it->second;
  ++it;
  const Exps& e2 = it->first;
  const Scalar& b = it->second;
  Exps m = e2;
  for (size_t i = 0; i < m.size(); ++i) m[i] -= e1[i];
  return BinomialSplit{a, e1, Binomial{-(b / a), m}};
}

MultiScalar MultiScalar::operator/(const MultiScalar& o) const {
  if (o.is_zero()) throw std::domain_error("MultiScalar division by zero");
  int nv = std::max(nvars(), o.nvars());
  MPoly n = num_ * expand_den(nv, o.den_);
  std::map<Binomial, int> d = den_;
  const auto& ot = o.num_.terms();
  Exps mono;
  Scalar f;
  if (ot.size() == 1) {
    mono = ot.begin()->first;
    f = ot.begin()->second;
  } else if (ot.size() == 2) {
    auto s = split_two_term(o.num_);
    mono = s.mono;
    f = s.factor;
    d[s.b] += 1;
  } else {
    throw std::domain_error("MultiScalar division by a general polynomial");
  }
  for (auto& v : mono) v = -v;
  return from_parts(n.shifted(mono).scaled(f.inverse()), std::move(d));
}

MultiScalar MultiScalar::invert_var(int i) const {
  int nv = nvars();
  MPoly n(nv);
  for (auto& [e, c] : num_.terms()) {
    Exps f = e;
    f[i] = -f[i];
    n.add_term(f, c);
  }
  MultiScalar r(std::move(n));
  for (auto& [b, k] : den_) {
    Exps m = b.m;
    m[i] = -m[i];
    MultiScalar ib = inv_binomial(nv, b.c, m);
    for (int j = 0; j < k; ++j) r = r * ib;
  }
  return r;
}

static int floordiv(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// exact division of p by (1 - c x^m); returns false if not divisible
static bool divide_binomial(const MPoly& p, const Binomial& b, MPoly& out) {
  size_t i0 = 0;
  while (b.m[i0] == 0) ++i0;
  std::map<Exps, std::map<int, Scalar>> groups;
  for (auto& [e, c] : p.terms()) {
    int k = floordiv(e[i0], b.m[i0]);
    Exps rep = e;
    for (size_t i = 0; i < rep.size(); ++i) rep[i] -= k * b.m[i];
    groups[rep][k] = c;
  }
  MPoly q(p.nvars());
  for (auto& [rep, poly] : groups) {
    int kmin = poly.begin()->first, kmax = poly.rbegin()->first;
    if (kmin == kmax) return false;
    Scalar prev;
    for (int k = kmin; k < kmax; ++k) {
      auto it = poly.find(k);
      Scalar pk = it == poly.end() ? Scalar() : it->second;
      Scalar qk = pk + b.c * prev;
      if (!qk.is_zero()) {
        Exps e = rep;
        for (size_t i = 0; i < e.size(); ++i) e[i] += k * b.m[i];
        q.add_term(e, qk);
      }
      prev = qk;
    }
    if (!(poly.rbegin()->second + b.c * prev).is_zero()) return false;
  }
  out = std::move(q);
  return true;
}

void MultiScalar::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    while (it->second > 0) {
      MPoly q;
      if (!divide_binomial(num_, it->first, q)) break;
      num_ = std::move(q);
      --it->second;
    }
    if (it->second == 0)
      it = den_.erase(it);
    else
      ++it;
  }
}

std::string MultiScalar::str(const std::vector<std::string>& names) const {
  auto mono = [&](const Exps& e) {
    std::string s;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      s += "*" + (i < names.size() ? names[i] : "x" + std::to_string(i));
      if (e[i] != 1) s += "^" + std::to_string(e[i]);
    }
    return s;
  };
  std::string s;
  if (num_.is_zero()) return "0";
  bool first = true;
  for (auto& [e, c] : num_.terms()) {
    if (!first) s += " + ";
    first = false;
    s += "(" + c.str() + ")" + mono(e);
  }
  if (den_.empty()) return s;
  s = "(" + s + ")/(";
  first = true;
  for (auto& [b, k] : den_) {
    if (!first) s += "*";
    first = false;
    s += "(1 - (" + b.c.str() + ")" + mono(b.m) + ")";
    if (k != 1) s += "^" + std::to_string(k);
  }
  return s + ")";
}

std::vector<Scalar> series_coefficients(const MultiScalar& f0, Direction dir, int lo, int hi) {
  if (f0.nvars() > 1) throw std::invalid_argument("series_coefficients needs a one-variable function");
  MultiScalar f = f0.nvars() == 0 ? MultiScalar(1, Scalar()) + f0 : f0;
  if (dir == Direction::AtInfinity) f = f.invert_var(0);
  int top = std::max(hi, 0);
  // series of the denominator inverse up to degree top - lowest numerator exponent
  int nlow = 0;
  for (auto& [e, c] : f.num().terms()) nlow = std::min(nlow, e[0]);
  int len = top - nlow + 1;
  std::vector<Scalar> inv(len);
  inv[0] = Scalar(1);
  for (auto& [b, k] : f.den()) {
    int m = b.m[0];
    for (int r = 0; r < k; ++r) {
      // multiply by 1/(1 - c x^m) = sum c^j x^{jm}
      for (int d = m; d < len; ++d) inv[d] += b.c * inv[d - m];
    }
  }
  std::map<int, Scalar> full;
  for (auto& [e, c] : f.num().terms())
    for (int j = 0; j < len; ++j) {
      int d = e[0] + j;
      if (d > top) break;
      if (!inv[j].is_zero()) full[d] += c * inv[j];
    }
  for (auto& [d, c] : full)
    if (d < 0 && !c.is_zero()) throw std::domain_error("pole at expansion point");
  std::vector<Scalar> out;
  for (int d = lo; d <= hi; ++d) {
    auto it = full.find(d);
    out.push_back(it == full.end() ? Scalar() : it->second);
  }
  return out;
}

}  // namespace uqr
