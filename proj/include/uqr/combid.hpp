#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "uqr/partition.hpp"

namespace uqr {

// partitions with at most n parts, each part <= M
std::vector<Partition> partitions_bounded(int n, int M);
// partitions with at most n parts and sum_i i*lambda_i <= W (parts indexed from 1, largest first)
std::vector<Partition> partitions_weighted(int n, int W);
int index_weight(const Partition& p);  // sum_i i*lambda_i

// power series in one variable, exact up to degree D
class TruncatedSeries {
public:
  TruncatedSeries(std::string var, int D);
  static TruncatedSeries monomial(std::string var, int D, int e, const mpq_class& c = 1);

  const std::string& var() const { return var_; }
  int degree() const { return D_; }
  const mpq_class& operator[](int k) const { return c_[k]; }
  mpq_class& operator[](int k) { return c_[k]; }

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries inverse() const;
  TruncatedSeries& operator+=(const TruncatedSeries& o) { return *this = *this + o; }
  // f(x) -> f(x^k), keeping degree <= D
  TruncatedSeries stretched(int k, int D) const;

  bool is_zero() const;
  // first nonzero degree, or -1
  int first_nonzero() const;
  std::string str() const;

private:
  std::string var_;
  int D_;
  std::vector<mpq_class> c_;
};

// (m)_{x^s}! = prod_{k<=m} (1 - x^{sk}) / (1 - x^s)
TruncatedSeries step_factorial(const std::string& var, int D, int m, int s);

struct SeriesCheck {
  TruncatedSeries residual;
  int terms = 0;      // partitions summed
  int max_part = 0;   // largest part encountered
};

// 1/((n)_{q^2}! (n+1)_{q^2}!) - (1-q^2)^n sum C_lambda q^{4 sum i lambda_i}, to q-degree D
SeriesCheck lstat_check(int n, int D);
// 1/((1-t)^n (n+1)_t!) - (n)_t! sum t^{2 sum i lambda_i} / prod_k (lambda'_k - lambda'_{k+1})_t!, to t-degree D
SeriesCheck hl_cauchy_check(int n, int D);
// the Hall-Littlewood residual carried to the l-stat normalization at t = q^2, to q-degree D
TruncatedSeries hl_residual_at_q(const TruncatedSeries& hl_residual, int n, int D);
// the l-stat weight of a partition among n entries, zero parts counted, as a series in q
TruncatedSeries lstat_weight(const Partition& p, int n, int D);

}  // namespace uqr
