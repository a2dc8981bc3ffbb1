#pragma once

#include <string>
#include <vector>

namespace uqr {

struct Partition {
  std::vector<int> parts;  // weakly decreasing, positive

  Partition() = default;
  explicit Partition(std::vector<int> p);

  int weight() const;
  int length() const { return int(parts.size()); }
  Partition conjugate() const;
  // m_i = number of parts equal to i, for i = 1..max part
  std::vector<int> multiplicities() const;
  bool operator==(const Partition& o) const { return parts == o.parts; }
  bool operator<(const Partition& o) const { return parts < o.parts; }
  std::string str() const;
};

}  // namespace uqr
