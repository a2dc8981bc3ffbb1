#include "uqr/modealg.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "uqr/memo.hpp"

namespace uqr {

int word_degree(const Word& w) { return std::accumulate(w.begin(), w.end(), 0); }

bool ascending_target(Kind k, Order o) { return (k == Kind::E) == (o == Order::Standard); }

bool is_ordered(Kind k, Order o, const Word& w) {
  if (ascending_target(k, o)) return std::is_sorted(w.begin(), w.end());
  return std::is_sorted(w.begin(), w.end(), std::greater<int>());
}

std::string word_str(Kind k, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  const char* l = k == Kind::E ? "e" : "f";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += " ";
    s += std::string(l) + "_" + std::to_string(w[i]);
  }
  return s;
}

// ---------------------------------------------------------------- Element / Tensor

void Element::add(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, ins] = terms.emplace(w, c);
  if (!ins) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

Element& Element::operator+=(const Element& o) {
  for (auto& [w, c] : o.terms) add(w, c);
  return *this;
}

Element Element::operator+(const Element& o) const {
  Element r = *this;
  r += o;
  return r;
}

Element Element::operator-(const Element& o) const { return *this + o.scaled(Scalar(-1)); }

Element Element::operator*(const Element& o) const {
  Element r(kind);
  for (auto& [wa, ca] : terms)
    for (auto& [wb, cb] : o.terms) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add(w, ca * cb);
    }
  return r;
}

Element Element::scaled(const Scalar& c) const {
  Element r(kind);
  if (c.is_zero()) return r;
  for (auto& [w, v] : terms) r.terms.emplace(w, v * c);
  return r;
}

Element Element::filtered(const std::function<bool(int)>& pred) const {
  Element r(kind);
  for (auto& [w, c] : terms)
    if (std::all_of(w.begin(), w.end(), pred)) r.terms.emplace(w, c);
  return r;
}

Element Element::in_window(int N) const {
  return filtered([N](int i) { return i >= -N && i <= N; });
}

std::string Element::str() const {
  if (terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [w, c] : terms) {
    if (!first) s += " + ";
    first = false;
    if (!c.is_one()) s += "(" + c.str() + ") ";
    s += word_str(kind, w);
  }
  return s;
}

Tensor Tensor::unit() {
  Tensor t;
  t.terms.emplace(std::make_pair(Word{}, Word{}), Scalar(1));
  return t;
}

void Tensor::add(const Word& f, const Word& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, ins] = terms.emplace(std::make_pair(f, e), c);
  if (!ins) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

Tensor& Tensor::operator+=(const Tensor& o) {
  for (auto& [k, c] : o.terms) add(k.first, k.second, c);
  return *this;
}

Tensor Tensor::operator+(const Tensor& o) const {
  Tensor r = *this;
  r += o;
  return r;
}

Tensor Tensor::operator-(const Tensor& o) const { return *this + o.scaled(Scalar(-1)); }

Tensor Tensor::scaled(const Scalar& c) const {
  Tensor r;
  if (c.is_zero()) return r;
  for (auto& [k, v] : terms) r.terms.emplace(k, v * c);
  return r;
}

Tensor Tensor::filtered(const std::function<bool(const Word&, const Word&)>& pred) const {
  Tensor r;
  for (auto& [k, c] : terms)
    if (pred(k.first, k.second)) r.terms.emplace(k, c);
  return r;
}

Tensor Tensor::in_window(int N) const {
  auto ok = [N](const Word& w) {
    return std::all_of(w.begin(), w.end(), [N](int i) { return i >= -N && i <= N; });
  };
  return filtered([&](const Word& f, const Word& e) { return ok(f) && ok(e); });
}

std::string Tensor::str() const {
  if (terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [k, c] : terms) {
    if (!first) s += " + ";
    first = false;
    if (!c.is_one()) s += "(" + c.str() + ") ";
    s += word_str(Kind::F, k.first) + "⊗" + word_str(Kind::E, k.second);
  }
  return s;
}

Tensor tensor_of(const Element& f, const Element& e) {
  Tensor t;
  for (auto& [wf, cf] : f.terms)
    for (auto& [we, ce] : e.terms) t.add(wf, we, cf * ce);
  return t;
}

// ---------------------------------------------------------------- straightening

namespace {

struct PairKey {
  int c, d;
  bool operator==(const PairKey& o) const { return c == o.c && d == o.d; }
};
struct PairKeyHash {
  size_t operator()(const PairKey& k) const { return std::hash<long long>()((long long)k.c * 1000003LL + k.d); }
};
using PairNF = std::vector<std::pair<std::pair<int, int>, Scalar>>;

Scalar kappa(Kind k) { return k == Kind::E ? Scalar::q(2) : Scalar::q(-2); }

// x_c x_d for a disordered pair in terms of ordered pairs
PairNF compute_pair_nf(bool asc, const Scalar& kap, int c, int d);

Memo<PairKey, PairNF, PairKeyHash> pair_cache[4];

const PairNF& pair_nf(int slot, bool asc, const Scalar& kap, int c, int d) {
  PairKey key{c, d};
  if (auto* v = pair_cache[slot].find(key)) return *v;
  PairNF r = compute_pair_nf(asc, kap, c, d);
  return pair_cache[slot].insert(key, std::move(r));
}

int slot_of(Kind k, Order o) { return (k == Kind::E ? 0 : 2) + (o == Order::Standard ? 0 : 1); }

PairNF compute_pair_nf(bool asc, const Scalar& kap, int c, int d) {
  std::map<std::pair<int, int>, Scalar> acc;
  auto add = [&](int x, int y, const Scalar& s) {
    auto& v = acc[{x, y}];
    v += s;
  };
  if (asc) {
    // c > d: x_c x_d = k x_d x_c - x_{d+1} x_{c-1} + k x_{c-1} x_{d+1}
    if (c == d + 1) {
      add(d, c, kap);
    } else {
      add(d, c, kap);
      add(d + 1, c - 1, Scalar(-1));
      if (c - 1 == d + 1) {
        add(c - 1, d + 1, kap);
      } else {
        int slot = kap == Scalar::q(2) ? 0 : 3;
        for (auto& [p, s] : pair_nf(slot, true, kap, c - 1, d + 1)) add(p.first, p.second, kap * s);
      }
    }
  } else {
    // c < d: x_c x_d = k^{-1} (x_{c+1} x_{d-1} + x_d x_c) - x_{d-1} x_{c+1}
    Scalar ki = kap.inverse();
    if (d == c + 1) {
      add(d, c, ki);
    } else {
      add(d, c, ki);
      add(d - 1, c + 1, Scalar(-1));
      if (c + 1 == d - 1) {
        add(c + 1, d - 1, ki);
      } else {
        int slot = kap == Scalar::q(2) ? 1 : 2;
        for (auto& [p, s] : pair_nf(slot, false, kap, c + 1, d - 1)) add(p.first, p.second, ki * s);
      }
    }
  }
  PairNF out;
  for (auto& [p, s] : acc)
    if (!s.is_zero()) out.emplace_back(p, s);
  return out;
}

Memo<Word, Terms, WordHash> nf_cache[4];

}  // namespace

const Terms& normal_form(Kind k, Order o, const Word& w) {
  int slot = slot_of(k, o);
  if (auto* v = nf_cache[slot].find(w)) return *v;
  Terms r;
  bool asc = ascending_target(k, o);
  size_t i = 0;
  for (; i + 1 < w.size(); ++i) {
    bool bad = asc ? w[i] > w[i + 1] : w[i] < w[i + 1];
    if (bad) break;
  }
  if (i + 1 >= w.size()) {
    r.emplace(w, Scalar(1));
  } else {
    Scalar kap = kappa(k);
    // pair slots: e asc 0, e desc 1, f desc 2, f asc 3
    int ps = k == Kind::E ? (asc ? 0 : 1) : (asc ? 3 : 2);
    const PairNF& pn = pair_nf(ps, asc, kap, w[i], w[i + 1]);
    for (auto& [p, s] : pn) {
      Word nw = w;
      nw[i] = p.first;
      nw[i + 1] = p.second;
      const Terms& sub = normal_form(k, o, nw);
      for (auto& [sw, sc] : sub) {
        auto [it, ins] = r.emplace(sw, s * sc);
        if (!ins) {
          it->second += s * sc;
        }
      }
    }
    for (auto it = r.begin(); it != r.end();)
      if (it->second.is_zero())
        it = r.erase(it);
      else
        ++it;
  }
  return nf_cache[slot].insert(w, std::move(r));
}

Element straighten_serial(const Element& x, Order o) {
  Element r(x.kind);
  for (auto& [w, c] : x.terms)
    for (auto& [nw, nc] : normal_form(x.kind, o, w)) r.add(nw, c * nc);
  return r;
}

Element straighten(const Element& x, Order o) {
  std::vector<const Word*> ws;
  std::vector<const Scalar*> cs;
  for (auto& [w, c] : x.terms) {
    ws.push_back(&w);
    cs.push_back(&c);
  }
  std::vector<Element> part(ws.size(), Element(x.kind));
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < long(ws.size()); ++i)
    for (auto& [nw, nc] : normal_form(x.kind, o, *ws[i])) part[i].add(nw, *cs[i] * nc);
  Element r(x.kind);
  for (auto& p : part) r += p;
  return r;
}

Element multiply(const Element& a, const Element& b, Order o) { return straighten(a * b, o); }

Tensor multiply_serial(const Tensor& a, const Tensor& b) {
  Tensor r;
  for (auto& [ka, ca] : a.terms)
    for (auto& [kb, cb] : b.terms) {
      Word f = ka.first, e = ka.second;
      f.insert(f.end(), kb.first.begin(), kb.first.end());
      e.insert(e.end(), kb.second.begin(), kb.second.end());
      Scalar c = ca * cb;
      const Terms& nf = normal_form(Kind::F, Order::Standard, f);
      const Terms& ne = normal_form(Kind::E, Order::Standard, e);
      for (auto& [wf, cf] : nf)
        for (auto& [we, ce] : ne) r.add(wf, we, c * cf * ce);
    }
  return r;
}

Tensor multiply(const Tensor& a, const Tensor& b) {
  std::vector<std::pair<const std::pair<Word, Word>*, const Scalar*>> ta;
  for (auto& [k, c] : a.terms) ta.emplace_back(&k, &c);
  std::vector<Tensor> part(ta.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < long(ta.size()); ++i) {
    Tensor one;
    one.terms.emplace(*ta[i].first, *ta[i].second);
    part[i] = multiply_serial(one, b);
  }
  Tensor r;
  for (auto& p : part) r += p;
  return r;
}

// ---------------------------------------------------------------- pairing

static std::vector<Scalar> build_g(bool prime, int upto) {
  std::vector<Scalar> g;
  int s = prime ? -1 : 1;
  g.push_back(Scalar::q(2 * s));
  for (int j = 1; j <= upto; ++j) g.push_back((Scalar::q(2 * s) - Scalar::q(-2 * s)) * Scalar::q(2 * s * j));
  return g;
}

static const std::vector<Scalar>& g_table(bool prime) {
  static const std::vector<Scalar> g = build_g(false, 2048);
  static const std::vector<Scalar> gp = build_g(true, 2048);
  return prime ? gp : g;
}

static const Scalar& g_lookup(bool prime, int j) {
  const auto& tab = g_table(prime);
  if (j < 0 || j >= int(tab.size())) throw std::out_of_range("g coefficient index out of range");
  return tab[j];
}

const Scalar& g_coeff(int j) { return g_lookup(false, j); }
const Scalar& gp_coeff(int j) { return g_lookup(true, j); }

namespace {

struct Edge {
  int src, dst;
};

// coefficient of prod z_v^{t_v} in prod_{edges} sum_j c_j z_src^j z_dst^{-j};
// vertices are processed in `order`, each edge's dst after its src.
void extract(const std::vector<int>& t, const std::vector<Edge>& edges, const std::vector<int>& order,
             bool prime, Scalar& acc) {
  int n = int(t.size());
  std::vector<std::vector<int>> out(n), in(n);
  for (int i = 0; i < int(edges.size()); ++i) {
    out[edges[i].src].push_back(i);
    in[edges[i].dst].push_back(i);
  }
  std::vector<int> j(edges.size(), 0);
  std::function<void(int, Scalar)> rec;
  std::function<void(int, int, int, int, Scalar)> distribute;
  rec = [&](int pos, Scalar w) {
    if (pos == n) {
      acc += w;
      return;
    }
    int v = order[pos];
    int need = t[v];
    for (int e : in[v]) need += j[e];
    if (need < 0) return;
    if (out[v].empty()) {
      if (need == 0) rec(pos + 1, w);
      return;
    }
    distribute(pos, v, 0, need, w);
  };
  distribute = [&](int pos, int v, int k, int left, Scalar w) {
    const auto& os = out[v];
    if (k + 1 == int(os.size())) {
      j[os[k]] = left;
      rec(pos + 1, w * (prime ? gp_coeff(left) : g_coeff(left)));
      return;
    }
    for (int x = 0; x <= left; ++x) {
      j[os[k]] = x;
      distribute(pos, v, k + 1, left - x, w * (prime ? gp_coeff(x) : g_coeff(x)));
    }
  };
  rec(0, Scalar(1));
}

struct WordPairHash {
  size_t operator()(const std::pair<Word, Word>& p) const {
    WordHash h;
    return h(p.first) * 31 + h(p.second);
  }
};
Memo<std::pair<Word, Word>, Scalar, WordPairHash> pair_cache1, pair_cache2;

Scalar pairing_impl(const Word& a, const Word& b, bool second) {
  int n = int(a.size());
  if (int(b.size()) != n) return Scalar();
  if (word_degree(a) + word_degree(b) != 0) return Scalar();
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (second) std::reverse(order.begin(), order.end());
  Scalar acc;
  do {
    std::vector<int> t(n);
    for (int k = 0; k < n; ++k) t[k] = -a[k] - b[sigma[k]];
    std::vector<Edge> edges;
    for (int k = 0; k < n; ++k)
      for (int l = k + 1; l < n; ++l)
        if (sigma[k] > sigma[l]) edges.push_back(second ? Edge{l, k} : Edge{k, l});
    extract(t, edges, order, second, acc);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  Scalar pre = second ? (-qm()).pow(-n) : qm().pow(-n);
  return acc * pre;
}

}  // namespace

Scalar pair_words(const Word& fw, const Word& ew) {
  auto key = std::make_pair(fw, ew);
  if (auto* v = pair_cache1.find(key)) return *v;
  Scalar r = pairing_impl(fw, ew, false);
  return pair_cache1.insert(key, std::move(r));
}

Scalar pair_words_2(const Word& ew, const Word& fw) {
  auto key = std::make_pair(ew, fw);
  if (auto* v = pair_cache2.find(key)) return *v;
  Scalar r = pairing_impl(fw, ew, true);
  return pair_cache2.insert(key, std::move(r));
}

Scalar pair_elements(const Element& f, const Element& e) {
  Scalar s;
  for (auto& [wf, cf] : f.terms)
    for (auto& [we, ce] : e.terms) s += cf * ce * pair_words(wf, we);
  return s;
}

// ---------------------------------------------------------------- dual bases

Scalar c_word(const Word& s) {
  Word w = s;
  std::sort(w.begin(), w.end());
  Scalar r(1);
  for (size_t i = 0; i < w.size();) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    r *= qsq_factorial(int(j - i)).inverse();
    i = j;
  }
  return r;
}

Scalar c_lambda(const Partition& p) {
  Partition c = p.conjugate();
  Scalar a(1);
  for (int i = 0; i < c.length(); ++i) {
    int next = i + 1 < c.length() ? c.parts[i + 1] : 0;
    a *= qsq_factorial(c.parts[i] - next).inverse();
  }
  Scalar b(1);
  for (int m : p.multiplicities()) b *= qsq_factorial(m).inverse();
  if (a != b) throw std::logic_error("c_lambda formulas disagree");
  return a;
}

static void gen_nondecreasing(int L, int D, int lo, int hi, Word& cur, std::vector<Word>& out) {
  int k = int(cur.size());
  if (k == L) {
    if (D == 0) out.push_back(cur);
    return;
  }
  int rem = L - k;
  int start = cur.empty() ? lo : std::max(lo, cur.back());
  for (int x = start; x <= hi; ++x) {
    // remaining letters are >= x and <= hi
    if ((long)x * rem > D) break;
    if ((long)hi * (rem - 1) + x < D) continue;
    cur.push_back(x);
    gen_nondecreasing(L, D - x, lo, hi, cur, out);
    cur.pop_back();
  }
}

std::vector<Word> ordered_words(Kind k, Order o, int L, int D, int lo, int hi) {
  std::vector<Word> out;
  Word cur;
  gen_nondecreasing(L, D, lo, hi, cur, out);
  if (!ascending_target(k, o))
    for (auto& w : out) std::reverse(w.begin(), w.end());
  return out;
}

static Word negated(const Word& w) {
  Word r(w.size());
  for (size_t i = 0; i < w.size(); ++i) r[i] = -w[i];
  return r;
}

Element dual_expand(Kind k, const Word& w, Order o) {
  Element r(k);
  if (w.empty()) {
    r.add(w, Scalar(1));
    return r;
  }
  int lo = *std::min_element(w.begin(), w.end()), hi = *std::max_element(w.begin(), w.end());
  int L = int(w.size()), D = word_degree(w);
  Scalar norm = qm().pow(L);
  for (const Word& b : ordered_words(k, o, L, D, lo, hi)) {
    Scalar c;
    if (o == Order::Standard) {
      if (k == Kind::E)
        c = c_word(b) * norm * pair_words(negated(b), w);
      else
        c = c_word(b) * norm * pair_words(w, negated(b));
    } else {
      // the opposite orderings are dual under the second pairing; normalize by the diagonal value
      Word partner = negated(b);
      if (k == Kind::E)
        c = pair_words_2(w, partner) / pair_words_2(b, partner);
      else
        c = pair_words_2(partner, w) / pair_words_2(partner, b);
    }
    r.add(b, c);
  }
  return r;
}

// ---------------------------------------------------------------- screenings

Element screening(Screen s, const Element& x) {
  Kind need = (s == Screen::Se0 || s == Screen::Se0t) ? Kind::E : Kind::F;
  if (x.kind != need && !x.is_zero()) throw std::invalid_argument("screening kind mismatch");
  Element r(need);
  for (auto& [w, c] : x.terms) {
    int L = int(w.size());
    Word left = w, right = w;
    left.insert(left.begin(), 0);
    right.push_back(0);
    Scalar cl, cr;
    switch (s) {
      case Screen::Se0: cl = 1; cr = -Scalar::q(2 * L); break;
      case Screen::Se0t: cr = 1; cl = -Scalar::q(-2 * L); break;
      case Screen::Sf0: cr = 1; cl = -Scalar::q(-2 * L); break;
      case Screen::Sf0t: cl = 1; cr = -Scalar::q(2 * L); break;
    }
    r.add(left, c * cl);
    r.add(right, c * cr);
  }
  return straighten(r);
}

// ---------------------------------------------------------------- projections

Kind projector_kind(Projector p) {
  switch (p) {
    case Projector::PfPlusStar:
    case Projector::PfMinusStar:
    case Projector::PfPlus:
    case Projector::PfMinus: return Kind::F;
    default: return Kind::E;
  }
}

Order projector_order(Projector p) {
  switch (p) {
    case Projector::PfPlusStar:
    case Projector::PfMinusStar:
    case Projector::PePlus:
    case Projector::PeMinus: return Order::Standard;
    default: return Order::Opposite;
  }
}

bool projector_keeps(Projector p, int i) {
  switch (p) {
    case Projector::PfPlusStar:
    case Projector::PfPlus: return i > 0;
    case Projector::PfMinusStar:
    case Projector::PfMinus: return i <= 0;
    case Projector::PePlus:
    case Projector::PePlusStar: return i >= 0;
    case Projector::PeMinus:
    case Projector::PeMinusStar: return i < 0;
  }
  return false;
}

Element project(const Element& x, Projector p) {
  if (x.kind != projector_kind(p) && !x.is_zero()) throw std::invalid_argument("projector kind mismatch");
  return straighten(x, projector_order(p)).filtered([p](int i) { return projector_keeps(p, i); });
}

// ---------------------------------------------------------------- half-currents

Element half_current_component(Kind k, Sign s, int n, int d, int N) {
  if (n < 1) throw std::invalid_argument("half-current power must be positive");
  int lo, hi;
  if (k == Kind::E) {
    if (s == Sign::Plus) lo = 0, hi = std::max(d, 0);
    else lo = std::min(d, 0), hi = -1;
  } else {
    if (s == Sign::Plus) lo = 1, hi = std::max(d, 1);
    else lo = std::min(d, 0), hi = 0;
  }
  Element raw(k);
  Scalar sign = (s == Sign::Minus && n % 2 == 1) ? Scalar(-1) : Scalar(1);
  Word cur;
  std::function<void(int)> rec = [&](int rem) {
    int left = n - int(cur.size());
    if (left == 0) {
      if (rem == 0) raw.add(cur, sign);
      return;
    }
    for (int x = lo; x <= hi; ++x) {
      long r2 = rem - x;
      if (r2 < (long)lo * (left - 1) || r2 > (long)hi * (left - 1)) continue;
      cur.push_back(x);
      rec(int(r2));
      cur.pop_back();
    }
  };
  rec(d);
  return straighten(raw).in_window(N);
}

// ---------------------------------------------------------------- R-bar

Tensor rbar_component(int n, int N) {
  if (n == 0) return Tensor::unit();
  Tensor t;
  Scalar pre = qm().pow(n);
  // all nondecreasing s of length n in [-N, N]
  Word cur;
  std::function<void()> rec = [&]() {
    if (int(cur.size()) == n) {
      t.add(negated(cur), cur, c_word(cur) * pre);
      return;
    }
    int start = cur.empty() ? -N : cur.back();
    for (int x = start; x <= N; ++x) {
      cur.push_back(x);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return t;
}

// ---------------------------------------------------------------- JSON

nlohmann::json to_json(const Element& x) {
  nlohmann::json terms = nlohmann::json::array();
  for (auto& [w, c] : x.terms) terms.push_back({{"coeff", c.to_json()}, {"word", w}});
  return {{"kind", x.kind == Kind::E ? "e" : "f"}, {"terms", terms}};
}

nlohmann::json to_json(const Tensor& t) {
  nlohmann::json a = nlohmann::json::array();
  for (auto& [k, c] : t.terms) a.push_back({{"coeff", c.to_json()}, {"fword", k.first}, {"eword", k.second}});
  return a;
}

Element element_from_json(const nlohmann::json& j) {
  std::string k = j.at("kind").get<std::string>();
  if (k != "e" && k != "f") throw std::invalid_argument("bad element kind");
  Element x(k == "e" ? Kind::E : Kind::F);
  for (auto& t : j.at("terms")) x.add(t.at("word").get<Word>(), Scalar::from_json(t.at("coeff")));
  return x;
}

Tensor tensor_from_json(const nlohmann::json& j) {
  Tensor t;
  for (auto& x : j) t.add(x.at("fword").get<Word>(), x.at("eword").get<Word>(), Scalar::from_json(x.at("coeff")));
  return t;
}

void clear_caches() {
  for (auto& c : nf_cache) c.clear();
  for (auto& c : pair_cache) c.clear();
  pair_cache1.clear();
  pair_cache2.clear();
}

}  // namespace uqr
