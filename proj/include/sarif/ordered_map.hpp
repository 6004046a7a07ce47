#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sarif {

/// String-keyed map that preserves insertion order on iteration.
/// SARIF object maps (files, logicalLocations, rules) are written back in
/// the order they were built or parsed, which keeps serialization stable.
template <typename T>
class OrderedMap
{
public:
    using value_type = std::pair<std::string, T>;
    using const_iterator = typename std::vector<value_type>::const_iterator;

    OrderedMap() = default;

    /// Inserts a new entry. Returns false (and leaves the map unchanged)
    /// when the key is already present.
    bool insert(std::string key, T value)
    {
        if (index_.contains(key)) {
            return false;
        }
        index_.emplace(key, items_.size());
        items_.emplace_back(std::move(key), std::move(value));
        return true;
    }

    [[nodiscard]] bool contains(const std::string& key) const { return index_.contains(key); }

    [[nodiscard]] const T* find(const std::string& key) const
    {
        auto it = index_.find(key);
        return it == index_.end() ? nullptr : &items_[it->second].second;
    }

    [[nodiscard]] T* find(const std::string& key)
    {
        auto it = index_.find(key);
        return it == index_.end() ? nullptr : &items_[it->second].second;
    }

    [[nodiscard]] const T& at(const std::string& key) const { return *find_checked(key); }

    [[nodiscard]] std::size_t size() const { return items_.size(); }
    [[nodiscard]] bool empty() const { return items_.empty(); }

    [[nodiscard]] const_iterator begin() const { return items_.begin(); }
    [[nodiscard]] const_iterator end() const { return items_.end(); }

    [[nodiscard]] const std::vector<value_type>& items() const { return items_; }

    friend bool operator==(const OrderedMap& a, const OrderedMap& b) { return a.items_ == b.items_; }

private:
    const T* find_checked(const std::string& key) const
    {
        const T* p = find(key);
        if (p == nullptr) {
            throw std::out_of_range("OrderedMap: no such key: " + key);
        }
        return p;
    }

    std::vector<value_type> items_;
    std::unordered_map<std::string, std::size_t> index_;
};

} // namespace sarif
