#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace uqr {

// Laurent polynomial in t = q^{1/2}. Exponents are stored doubled relative to q.
class LaurentPoly {
public:
  using Term = std::pair<int, mpq_class>;

  LaurentPoly() = default;
  explicit LaurentPoly(const mpq_class& c, int e = 0);
  static LaurentPoly monomial(int e, const mpq_class& c = 1) { return LaurentPoly(c, e); }

  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_one() const { return t_.size() == 1 && t_[0].first == 0 && t_[0].second == 1; }
  int low() const { return t_.front().first; }
  int high() const { return t_.back().first; }
  const mpq_class& lead() const { return t_.back().second; }
  mpq_class coeff(int e) const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly scaled(const mpq_class& c) const;
  LaurentPoly shifted(int de) const;
  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }

  bool operator==(const LaurentPoly& o) const { return t_ == o.t_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }
  bool operator<(const LaurentPoly& o) const;

  mpq_class at_one() const;
  // value at t = t0 for rational t0
  mpq_class eval(const mpq_class& t0) const;

  // Euclidean division of ordinary polynomials (low() >= 0 assumed for both)
  static std::pair<LaurentPoly, LaurentPoly> divmod(const LaurentPoly& a, const LaurentPoly& b);
  static LaurentPoly gcd(LaurentPoly a, LaurentPoly b);

  mpz_class content_lcm_den() const;
  mpz_class content_gcd_num() const;

  std::vector<Term> t_;
};

class Scalar {
public:
  Scalar() : num_(), den_(mpq_class(1)) {}
  Scalar(long c) : Scalar(mpq_class(c)) {}
  Scalar(const mpq_class& c);
  Scalar(LaurentPoly n, LaurentPoly d);
  explicit Scalar(LaurentPoly n);

  static Scalar q(int k = 1) { return Scalar(LaurentPoly::monomial(2 * k)); }
  static Scalar qhalf(int k) { return Scalar(LaurentPoly::monomial(k)); }
  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_one() && num_.is_one(); }
  bool is_poly() const { return den_.is_one(); }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;
  Scalar pow(int k) const;

  bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  bool operator<(const Scalar& o) const;

  // t-adic valuation (in units of q^{1/2}); INT32_MAX for zero
  int valuation() const;
  // q^{1/2} -> q^{-1/2}
  Scalar bar() const;
  // value at q = 1 when finite
  mpq_class at_one() const;
  // Laurent expansion at q = 0, coefficients of t^lo .. t^hi (t = q^{1/2})
  std::vector<mpq_class> expand(int lo, int hi) const;

  std::string str() const;
  nlohmann::json to_json() const;
  static Scalar from_json(const nlohmann::json& j);

private:
  void canonicalize();
  LaurentPoly num_, den_;
};

inline Scalar operator*(long c, const Scalar& s) { return Scalar(c) * s; }

std::string poly_str(const LaurentPoly& p);

// q-numbers and factorials
Scalar q_number(int n);
Scalar q_factorial(int n);
Scalar qsq_number(int n);      // (n)_{q^2} = (q^{2n}-1)/(q^2-1)
Scalar qsq_factorial(int n);   // (n)_{q^2}!
Scalar qsqinv_factorial(int n);// (n)_{q^{-2}}!
Scalar qm(); // q^{-1} - q

// Multivariate Laurent polynomial over Scalar in a fixed number of commuting variables.
using Exps = std::vector<int>;
class MPoly {
public:
  MPoly() = default;
  explicit MPoly(int nvars) : nv_(nvars) {}
  MPoly(int nvars, const Scalar& c, Exps e = {});
  static MPoly var(int nvars, int i, int power = 1);

  int nvars() const { return nv_; }
  const std::map<Exps, Scalar>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  void add_term(const Exps& e, const Scalar& c);

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator-() const;
  MPoly scaled(const Scalar& c) const;
  MPoly shifted(const Exps& de) const;
  bool operator==(const MPoly& o) const { return t_ == o.t_; }

  std::map<Exps, Scalar> t_;
  int nv_ = 0;
};

// 1 - c * x^m, with the first nonzero entry of m positive
struct Binomial {
  Scalar c;
  Exps m;
  bool operator<(const Binomial& o) const {
    if (m != o.m) return m < o.m;
    return c < o.c;
  }
  bool operator==(const Binomial& o) const { return m == o.m && c == o.c; }
  MPoly poly(int nv) const;
};

// Rational function in commuting variables whose denominator is a product of binomials.
class MultiScalar {
public:
  MultiScalar() = default;
  explicit MultiScalar(int nvars) : num_(nvars) {}
  MultiScalar(int nvars, const Scalar& c);
  explicit MultiScalar(MPoly p) : num_(std::move(p)) {}
  static MultiScalar var(int nvars, int i, int power = 1);
  // 1 / (1 - c x^m)
  static MultiScalar inv_binomial(int nvars, const Scalar& c, const Exps& m);

  int nvars() const { return num_.nvars(); }
  const MPoly& num() const { return num_; }
  const std::map<Binomial, int>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  MultiScalar operator+(const MultiScalar& o) const;
  MultiScalar operator-(const MultiScalar& o) const;
  MultiScalar operator*(const MultiScalar& o) const;
  MultiScalar operator-() const;
  MultiScalar scaled(const Scalar& c) const;
  MultiScalar& operator+=(const MultiScalar& o) { return *this = *this + o; }
  // divides by a numerator that is a single term or a two-term binomial-like polynomial
  MultiScalar operator/(const MultiScalar& o) const;
  bool equals(const MultiScalar& o) const { return (*this - o).is_zero(); }
  // x_i -> x_i^{-1}
  MultiScalar invert_var(int i) const;
  // drop cancellable denominator factors
  void reduce();

  std::string str(const std::vector<std::string>& names) const;

private:
  MPoly num_;
  std::map<Binomial, int> den_;
  friend MultiScalar from_parts(MPoly, std::map<Binomial, int>);
};

// normalizes alpha*x^e1 + beta*x^e2 into scalar*x^e*(1 - c x^m)
struct BinomialSplit {
  Scalar factor;
  Exps mono;
  Binomial b;
};
BinomialSplit split_two_term(const MPoly& p);

enum class Direction { AtZero, AtInfinity };
// coefficients of x^lo..x^hi of a one-variable MultiScalar expanded at 0 or at infinity
std::vector<Scalar> series_coefficients(const MultiScalar& f, Direction dir, int lo, int hi);

}  // namespace uqr
