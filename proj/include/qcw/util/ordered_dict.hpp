// Copyright 2026 the qcw authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qcw::util {

/**
 * @brief Associative container whose iteration order is insertion order.
 *
 * Every container that feeds user-visible or serialized output goes through
 * this type (or a std::map) so that traversal order never depends on hash
 * seeds or pointer values.
 */
template <typename K, typename V>
class ordered_dict {
public:
    using value_type = std::pair<K, V>;
    using iterator = typename std::vector<value_type>::iterator;
    using const_iterator = typename std::vector<value_type>::const_iterator;

    bool contains(K const& key) const { return _index.count(key) > 0; }
    size_t size() const { return _items.size(); }
    bool empty() const { return _items.empty(); }

    V& operator[](K const& key) {
        auto it = _index.find(key);
        if (it != _index.end()) return _items[it->second].second;
        _index.emplace(key, _items.size());
        _items.emplace_back(key, V{});
        return _items.back().second;
    }

    V& at(K const& key) {
        auto it = _index.find(key);
        if (it == _index.end()) throw std::out_of_range("ordered_dict: missing key");
        return _items[it->second].second;
    }
    V const& at(K const& key) const {
        auto it = _index.find(key);
        if (it == _index.end()) throw std::out_of_range("ordered_dict: missing key");
        return _items[it->second].second;
    }

    std::optional<V> get(K const& key) const {
        auto it = _index.find(key);
        if (it == _index.end()) return std::nullopt;
        return _items[it->second].second;
    }

    /// Removes a key if present. Later entries keep their relative order.
    bool erase(K const& key) {
        auto it = _index.find(key);
        if (it == _index.end()) return false;
        size_t pos = it->second;
        _items.erase(_items.begin() + static_cast<long>(pos));
        _index.erase(it);
        for (auto& [k, idx] : _index)
            if (idx > pos) --idx;
        return true;
    }

    void clear() {
        _items.clear();
        _index.clear();
    }

    iterator begin() { return _items.begin(); }
    iterator end() { return _items.end(); }
    const_iterator begin() const { return _items.begin(); }
    const_iterator end() const { return _items.end(); }

private:
    std::vector<value_type> _items;
    std::map<K, size_t> _index;
};

}  // namespace qcw::util
