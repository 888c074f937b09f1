#pragma once

#include <map>
#include <memory>
#include <mutex>

namespace spinquasi::detail {

// Process-wide cache of immutable values. Entries are never evicted, so
// returned references remain valid.
template <typename Key, typename Value>
class Memo {
 public:
  template <typename Make>
  const Value& get(const Key& key, Make&& make) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end())
      it = entries_.emplace(key, std::make_unique<const Value>(make())).first;
    return *it->second;
  }

 private:
  std::mutex mutex_;
  std::map<Key, std::unique_ptr<const Value>> entries_;
};

}  // namespace spinquasi::detail
