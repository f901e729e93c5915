#pragma once

#include <list>
#include <mutex>
#include <optional>
#include <unordered_map>

namespace fracdom::service {

// Mutex-guarded least-recently-used map. Values are handed out by copy, so
// store shared_ptr<const T> for anything large.
template <class Key, class Value>
class LruCache {
public:
    explicit LruCache(std::size_t capacity) : capacity_(capacity) {}

    std::optional<Value> get(const Key& key)
    {
        std::lock_guard lock(mutex_);
        const auto it = index_.find(key);
        if (it == index_.end()) {
            return std::nullopt;
        }
        order_.splice(order_.begin(), order_, it->second);
        return it->second->second;
    }

    void put(const Key& key, Value value)
    {
        if (capacity_ == 0) {
            return;
        }
        std::lock_guard lock(mutex_);
        if (const auto it = index_.find(key); it != index_.end()) {
            it->second->second = std::move(value);
            order_.splice(order_.begin(), order_, it->second);
            return;
        }
        order_.emplace_front(key, std::move(value));
        index_.emplace(key, order_.begin());
        if (order_.size() > capacity_) {
            index_.erase(order_.back().first);
            order_.pop_back();
        }
    }

    std::size_t size() const
    {
        std::lock_guard lock(mutex_);
        return order_.size();
    }

private:
    using Entry = std::pair<Key, Value>;

    std::size_t capacity_;
    mutable std::mutex mutex_;
    std::list<Entry> order_;
    std::unordered_map<Key, typename std::list<Entry>::iterator> index_;
};

}  // namespace fracdom::service
