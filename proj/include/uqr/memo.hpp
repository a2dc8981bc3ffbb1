#pragma once

#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace uqr {

struct WordHash {
  size_t operator()(const std::vector<int>& w) const {
    size_t h = w.size();
    for (int x : w) h = h * 1000003u ^ std::hash<int>()(x);
    return h;
  }
};

// Thread-safe pure-function cache. Entries are never moved once inserted.
template <class K, class V, class H>
class Memo {
public:
  const V* find(const K& k) const {
    std::shared_lock lk(m_);
    auto it = map_.find(k);
    return it == map_.end() ? nullptr : &it->second;
  }
  const V& insert(const K& k, V v) {
    std::unique_lock lk(m_);
    auto [it, ins] = map_.emplace(k, std::move(v));
    return it->second;
  }
  void clear() {
    std::unique_lock lk(m_);
    map_.clear();
  }
  size_t size() const {
    std::shared_lock lk(m_);
    return map_.size();
  }

private:
  mutable std::shared_mutex m_;
  std::unordered_map<K, V, H> map_;
};

}  // namespace uqr
