#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "uqr/partition.hpp"
#include "uqr/qfield.hpp"

namespace uqr {

enum class Kind { E, F };
// Standard: e nondecreasing, f nonincreasing. Opposite: the reverse.
enum class Order { Standard, Opposite };

using Word = std::vector<int>;
using Terms = std::map<Word, Scalar>;

int word_degree(const Word& w);
bool ascending_target(Kind k, Order o);
bool is_ordered(Kind k, Order o, const Word& w);
std::string word_str(Kind k, const Word& w);

struct Element {
  Kind kind = Kind::E;
  Terms terms;

  Element() = default;
  explicit Element(Kind k) : kind(k) {}
  Element(Kind k, const Word& w, const Scalar& c = Scalar(1)) : kind(k) {
    if (!c.is_zero()) terms.emplace(w, c);
  }

  bool is_zero() const { return terms.empty(); }
  void add(const Word& w, const Scalar& c);
  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;  // concatenation, not straightened
  Element scaled(const Scalar& c) const;
  Element& operator+=(const Element& o);
  bool operator==(const Element& o) const { return kind == o.kind && terms == o.terms; }
  // keep words whose letters all satisfy pred
  Element filtered(const std::function<bool(int)>& pred) const;
  Element in_window(int N) const;
  std::string str() const;
};

struct Tensor {
  std::map<std::pair<Word, Word>, Scalar> terms;

  static Tensor unit();
  bool is_zero() const { return terms.empty(); }
  void add(const Word& f, const Word& e, const Scalar& c);
  Tensor operator+(const Tensor& o) const;
  Tensor operator-(const Tensor& o) const;
  Tensor scaled(const Scalar& c) const;
  Tensor& operator+=(const Tensor& o);
  bool operator==(const Tensor& o) const { return terms == o.terms; }
  Tensor in_window(int N) const;
  Tensor filtered(const std::function<bool(const Word&, const Word&)>& pred) const;
  std::string str() const;
};

// outer product f (x) e of two elements
Tensor tensor_of(const Element& f, const Element& e);

// normal form of a single word in the requested ordering (memoized)
const Terms& normal_form(Kind k, Order o, const Word& w);
Element straighten(const Element& x, Order o = Order::Standard);
Element straighten_serial(const Element& x, Order o = Order::Standard);
Element multiply(const Element& a, const Element& b, Order o = Order::Standard);
// slotwise product with straightening in the standard orderings
Tensor multiply(const Tensor& a, const Tensor& b);
Tensor multiply_serial(const Tensor& a, const Tensor& b);

// g(x) = q^2 + (q^2-q^{-2}) sum_{j>0} q^{2j} x^j and g'(x) (q -> q^{-1})
const Scalar& g_coeff(int j);
const Scalar& gp_coeff(int j);

Scalar pair_words(const Word& fw, const Word& ew);
Scalar pair_words_2(const Word& ew, const Word& fw);
Scalar pair_elements(const Element& f, const Element& e);

// C_s = prod 1/(m_i)_{q^2}! over multiplicities of the index sequence
Scalar c_word(const Word& s);
Scalar c_lambda(const Partition& p);

// ordered words of length L, total D, letters in [lo, hi], in the given ordering
std::vector<Word> ordered_words(Kind k, Order o, int L, int D, int lo, int hi);
Element dual_expand(Kind k, const Word& w, Order o = Order::Standard);

enum class Screen { Se0, Se0t, Sf0, Sf0t };
Element screening(Screen s, const Element& x);

enum class Projector { PfPlusStar, PfMinusStar, PePlus, PeMinus, PfPlus, PfMinus, PePlusStar, PeMinusStar };
Kind projector_kind(Projector p);
Order projector_order(Projector p);
bool projector_keeps(Projector p, int index);
Element project(const Element& x, Projector p);

enum class Sign { Plus, Minus };
Element half_current_component(Kind k, Sign s, int n, int d, int N);

Tensor rbar_component(int n, int N);

nlohmann::json to_json(const Element& x);
nlohmann::json to_json(const Tensor& t);
Element element_from_json(const nlohmann::json& j);
Tensor tensor_from_json(const nlohmann::json& j);

void clear_caches();

}  // namespace uqr
