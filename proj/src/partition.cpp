#include "uqr/partition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace uqr {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  if (!std::is_sorted(parts.begin(), parts.end(), std::greater<int>()) ||
      std::any_of(parts.begin(), parts.end(), [](int x) { return x < 0; }))
    throw std::invalid_argument("not a partition");
}

int Partition::weight() const { return std::accumulate(parts.begin(), parts.end(), 0); }

Partition Partition::conjugate() const {
  std::vector<int> c;
  if (parts.empty()) return Partition();
  for (int j = 1; j <= parts.front(); ++j)
    c.push_back(int(std::count_if(parts.begin(), parts.end(), [j](int x) { return x >= j; })));
  return Partition(c);
}

std::vector<int> Partition::multiplicities() const {
  std::vector<int> m(parts.empty() ? 0 : parts.front(), 0);
  for (int x : parts) ++m[x - 1];
  return m;
}

std::string Partition::str() const {
  std::string s = "(";
  for (size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + std::to_string(parts[i]);
  return s + ")";
}

}  // namespace uqr
