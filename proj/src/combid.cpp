#include "uqr/combid.hpp"

#include <algorithm>
#include <stdexcept>

namespace uqr {

namespace {

void gen_bounded(int n, int M, std::vector<int>& cur, std::vector<Partition>& out) {
  out.emplace_back(cur);
  if (int(cur.size()) == n) return;
  int top = cur.empty() ? M : cur.back();
  for (int x = 1; x <= top; ++x) {
    cur.push_back(x);
    gen_bounded(n, M, cur, out);
    cur.pop_back();
  }
}

// next part at position i+1 (1-based) costs (i+1)*x; the remaining parts only add weight
void gen_weighted(int n, int W, int used, std::vector<int>& cur, std::vector<Partition>& out) {
  out.emplace_back(cur);
  int i = int(cur.size()) + 1;
  if (i > n) return;
  int top = cur.empty() ? W : cur.back();
  for (int x = 1; x <= top && used + i * x <= W; ++x) {
    cur.push_back(x);
    gen_weighted(n, W, used + i * x, cur, out);
    cur.pop_back();
  }
}

// lambda'_k - lambda'_{k+1} for k >= 0 with lambda'_0 = n
std::vector<int> conjugate_gaps(const Partition& p, int n) {
  if (p.length() > n) throw std::invalid_argument("partition longer than the number of entries");
  std::vector<int> c{n};
  for (int x : p.conjugate().parts) c.push_back(x);
  c.push_back(0);
  std::vector<int> g;
  for (size_t k = 0; k + 1 < c.size(); ++k) g.push_back(c[k] - c[k + 1]);
  return g;
}

}  // namespace

std::vector<Partition> partitions_bounded(int n, int M) {
  if (n < 0 || M < 0) throw std::invalid_argument("bounds must be nonnegative");
  std::vector<Partition> out;
  std::vector<int> cur;
  if (M == 0 || n == 0) return {Partition()};
  gen_bounded(n, M, cur, out);
  return out;
}

std::vector<Partition> partitions_weighted(int n, int W) {
  std::vector<Partition> out;
  std::vector<int> cur;
  if (W < 0) return out;
  gen_weighted(n, W, 0, cur, out);
  return out;
}

int index_weight(const Partition& p) {
  int w = 0;
  for (int i = 0; i < p.length(); ++i) w += (i + 1) * p.parts[i];
  return w;
}

// ---------------------------------------------------------------- TruncatedSeries

TruncatedSeries::TruncatedSeries(std::string var, int D) : var_(std::move(var)), D_(D), c_(D + 1) {
  if (D < 0) throw std::invalid_argument("negative truncation degree");
}

TruncatedSeries TruncatedSeries::monomial(std::string var, int D, int e, const mpq_class& c) {
  TruncatedSeries s(std::move(var), D);
  if (e >= 0 && e <= D) s.c_[e] = c;
  return s;
}

static void same_var(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.var() != b.var()) throw std::invalid_argument("series in different variables");
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  same_var(*this, o);
  TruncatedSeries r(var_, std::min(D_, o.D_));
  for (int k = 0; k <= r.D_; ++k) r.c_[k] = c_[k] + o.c_[k];
  return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  same_var(*this, o);
  TruncatedSeries r(var_, std::min(D_, o.D_));
  for (int k = 0; k <= r.D_; ++k) r.c_[k] = c_[k] - o.c_[k];
  return r;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  same_var(*this, o);
  TruncatedSeries r(var_, std::min(D_, o.D_));
  for (int i = 0; i <= r.D_; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; i + j <= r.D_; ++j) r.c_[i + j] += c_[i] * o.c_[j];
  }
  return r;
}

TruncatedSeries TruncatedSeries::inverse() const {
  if (c_[0] == 0) throw std::domain_error("series with zero constant term is not invertible");
  TruncatedSeries r(var_, D_);
  r.c_[0] = 1 / c_[0];
  for (int k = 1; k <= D_; ++k) {
    mpq_class acc = 0;
    for (int j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
    r.c_[k] = -acc / c_[0];
  }
  return r;
}

TruncatedSeries TruncatedSeries::stretched(int k, int D) const {
  TruncatedSeries r(var_, D);
  for (int i = 0; i <= D_ && i * k <= D; ++i) r.c_[i * k] = c_[i];
  return r;
}

bool TruncatedSeries::is_zero() const { return first_nonzero() < 0; }

int TruncatedSeries::first_nonzero() const {
  for (int k = 0; k <= D_; ++k)
    if (c_[k] != 0) return k;
  return -1;
}

std::string TruncatedSeries::str() const {
  std::string s;
  for (int k = 0; k <= D_; ++k) {
    if (c_[k] == 0) continue;
    if (!s.empty()) s += " + ";
    s += "(" + c_[k].get_str() + ")";
    if (k) s += "*" + var_ + "^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

TruncatedSeries step_factorial(const std::string& var, int D, int m, int s) {
  TruncatedSeries r = TruncatedSeries::monomial(var, D, 0);
  for (int k = 2; k <= m; ++k) {
    // (1 - x^{sk}) / (1 - x^s) = 1 + x^s + ... + x^{s(k-1)}
    TruncatedSeries f(var, D);
    for (int j = 0; j < k && s * j <= D; ++j) f[s * j] = 1;
    r = r * f;
  }
  return r;
}

// ---------------------------------------------------------------- identities

TruncatedSeries lstat_weight(const Partition& p, int n, int D) {
  TruncatedSeries w = TruncatedSeries::monomial("q", D, 0);
  for (int g : conjugate_gaps(p, n)) w = w * step_factorial("q", D, g, 2);
  return w.inverse();
}

SeriesCheck lstat_check(int n, int D) {
  if (n < 1 || D < 1) throw std::invalid_argument("n and D must be positive");
  TruncatedSeries lhs = (step_factorial("q", D, n, 2) * step_factorial("q", D, n + 1, 2)).inverse();
  // every partition with 4 sum i lambda_i > D starts beyond the truncation degree
  SeriesCheck r{TruncatedSeries("q", D)};
  TruncatedSeries sum("q", D);
  for (const Partition& p : partitions_weighted(n, D / 4)) {
    int e = 4 * index_weight(p);
    sum += lstat_weight(p, n, D) * TruncatedSeries::monomial("q", D, e);
    ++r.terms;
    if (p.length()) r.max_part = std::max(r.max_part, p.parts.front());
  }
  TruncatedSeries pre = TruncatedSeries::monomial("q", D, 0);
  TruncatedSeries one_minus = TruncatedSeries::monomial("q", D, 0) - TruncatedSeries::monomial("q", D, 2);
  for (int i = 0; i < n; ++i) pre = pre * one_minus;
  r.residual = lhs - pre * sum;
  return r;
}

SeriesCheck hl_cauchy_check(int n, int D) {
  if (n < 1 || D < 1) throw std::invalid_argument("n and D must be positive");
  TruncatedSeries one = TruncatedSeries::monomial("t", D, 0);
  TruncatedSeries one_minus = one - TruncatedSeries::monomial("t", D, 1);
  TruncatedSeries lev = step_factorial("t", D, n + 1, 1);
  for (int i = 0; i < n; ++i) lev = lev * one_minus;
  lev = lev.inverse();
  SeriesCheck r{TruncatedSeries("t", D)};
  TruncatedSeries sum("t", D);
  for (const Partition& p : partitions_weighted(n, D / 2)) {
    TruncatedSeries den = one;
    for (int g : conjugate_gaps(p, n)) den = den * step_factorial("t", D, g, 1);
    sum += den.inverse() * TruncatedSeries::monomial("t", D, 2 * index_weight(p));
    ++r.terms;
    if (p.length()) r.max_part = std::max(r.max_part, p.parts.front());
  }
  r.residual = lev - step_factorial("t", D, n, 1) * sum;
  return r;
}

TruncatedSeries hl_residual_at_q(const TruncatedSeries& hl, int n, int D) {
  int Dt = std::min(hl.degree(), D / 2);
  TruncatedSeries one_minus = TruncatedSeries::monomial("t", Dt, 0) - TruncatedSeries::monomial("t", Dt, 1);
  TruncatedSeries f = step_factorial("t", Dt, n, 1).inverse();
  for (int i = 0; i < n; ++i) f = f * one_minus;
  TruncatedSeries m = f * hl;
  TruncatedSeries r("q", 2 * Dt);
  for (int k = 0; k <= Dt; ++k) r[2 * k] = m[k];
  return r;
}

}  // namespace uqr
