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

#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

namespace qcw::device {

/**
 * @brief Physical coupling graph with precomputed hop distances.
 *
 * Construction rejects disconnected graphs; two-qubit gates are applicable
 * only on edges.
 */
class Device {
public:
    Device(std::string name, size_t n_physical, std::vector<std::pair<size_t, size_t>> const& edges)
        : _name{std::move(name)}, _n{n_physical} {
        if (_n == 0) throw std::invalid_argument("Device: needs at least one qubit");
        for (auto [u, v] : edges) {
            if (u >= _n || v >= _n)
                throw std::out_of_range(fmt::format("Device: edge {}-{} out of range (n={})", u, v, _n));
            if (u == v) throw std::invalid_argument(fmt::format("Device: self-loop on {}", u));
            if (u > v) std::swap(u, v);
            if (!_edges.insert({u, v}).second)
                throw std::invalid_argument(fmt::format("Device: duplicate edge {}-{}", u, v));
        }
        compute_distances();
    }

    std::string const& name() const { return _name; }
    size_t n_physical() const { return _n; }
    std::set<std::pair<size_t, size_t>> const& edges() const { return _edges; }

    bool adjacent(size_t u, size_t v) const {
        if (u > v) std::swap(u, v);
        return _edges.count({u, v}) > 0;
    }

    size_t distance(size_t u, size_t v) const { return _dist.at(u).at(v); }

    /// Ascending neighbor list.
    std::vector<size_t> neighbors(size_t q) const {
        std::vector<size_t> out;
        for (auto const& [u, v] : _edges) {
            if (u == q) out.push_back(v);
            if (v == q) out.push_back(u);
        }
        return out;  // _edges is ordered, so out is ascending
    }

    std::string to_string() const {
        std::string out = fmt::format("device-v1 {} {}\n", _name, _n);
        for (auto const& [u, v] : _edges) out += fmt::format("{} {}\n", u, v);
        return out;
    }

private:
    void compute_distances() {
        size_t unreachable = _n;  // larger than any hop count
        _dist.assign(_n, std::vector<size_t>(_n, unreachable));
        for (size_t s = 0; s < _n; ++s) {
            _dist[s][s] = 0;
            std::deque<size_t> queue{s};
            while (!queue.empty()) {
                size_t u = queue.front();
                queue.pop_front();
                for (size_t v : neighbors(u)) {
                    if (_dist[s][v] != unreachable) continue;
                    _dist[s][v] = _dist[s][u] + 1;
                    queue.push_back(v);
                }
            }
            for (size_t v = 0; v < _n; ++v)
                if (_dist[s][v] == unreachable)
                    throw std::invalid_argument(
                        fmt::format("Device: coupling graph is disconnected ({} unreachable from {})",
                                    v, s));
        }
    }

    std::string _name;
    size_t _n;
    std::set<std::pair<size_t, size_t>> _edges;
    std::vector<std::vector<size_t>> _dist;
};

/**
 * @brief Parses the device text format.
 *
 * Line 1: `device-v1 <name> <n_physical>`; then one `u v` edge per line.
 * `#` starts a comment; blank lines are skipped.
 */
inline Device parse_device(std::string const& text) {
    std::istringstream in{text};
    std::string line;
    auto next_content_line = [&](std::string& out) {
        while (std::getline(in, line)) {
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            size_t begin = line.find_first_not_of(" \t\r");
            if (begin == std::string::npos) continue;
            out = line.substr(begin, line.find_last_not_of(" \t\r") - begin + 1);
            return true;
        }
        return false;
    };

    std::string header;
    if (!next_content_line(header)) throw std::invalid_argument("device: empty input");
    std::istringstream hs{header};
    std::string magic, name;
    long long n = -1;
    if (!(hs >> magic >> name >> n) || magic != "device-v1" || n < 1)
        throw std::invalid_argument(
            fmt::format("device: bad header '{}' (expected 'device-v1 <name> <n>')", header));
    std::string rest;
    if (hs >> rest) throw std::invalid_argument(fmt::format("device: trailing '{}' in header", rest));

    std::vector<std::pair<size_t, size_t>> edges;
    std::string content;
    while (next_content_line(content)) {
        std::istringstream es{content};
        long long u = -1, v = -1;
        if (!(es >> u >> v) || u < 0 || v < 0 || (es >> rest))
            throw std::invalid_argument(fmt::format("device: bad edge line '{}'", content));
        edges.push_back({static_cast<size_t>(u), static_cast<size_t>(v)});
    }
    return Device{name, static_cast<size_t>(n), edges};
}

/**
 * @brief Connected n-qubit fragment of a heavy-hexagon lattice.
 *
 * Builds a row lattice (horizontal paths plus alternating bridge qubits,
 * the IBM heavy-hex pattern), walks it breadth-first from the corner, and
 * induces the subgraph on the first n vertices relabeled in visit order.
 */
inline Device heavy_hex_fragment(size_t n) {
    if (n == 0) throw std::invalid_argument("heavy_hex_fragment: needs at least one qubit");
    size_t cols = 15;
    size_t rows = (n + cols - 1) / cols + 2;

    // lattice ids: row qubits row-major, then bridges row by row
    std::map<size_t, std::set<size_t>> adj;
    auto link = [&](size_t a, size_t b) {
        adj[a].insert(b);
        adj[b].insert(a);
    };
    size_t next_id = rows * cols;
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c + 1 < cols; ++c) link(r * cols + c, r * cols + c + 1);
    for (size_t r = 0; r + 1 < rows; ++r)
        for (size_t c = r % 2 == 0 ? 0 : 2; c < cols; c += 4) {
            size_t bridge = next_id++;
            link(r * cols + c, bridge);
            link(bridge, (r + 1) * cols + c);
        }

    std::vector<size_t> order;
    std::map<size_t, size_t> rank;
    std::deque<size_t> queue{0};
    rank[0] = 0;
    order.push_back(0);
    while (!queue.empty() && order.size() < n) {
        size_t u = queue.front();
        queue.pop_front();
        for (size_t v : adj[u]) {
            if (rank.count(v)) continue;
            rank[v] = order.size();
            order.push_back(v);
            queue.push_back(v);
            if (order.size() == n) break;
        }
    }
    if (order.size() < n)
        throw std::invalid_argument("heavy_hex_fragment: fragment size exceeds the lattice");

    std::vector<std::pair<size_t, size_t>> edges;
    for (size_t u : order)
        for (size_t v : adj[u])
            if (rank.count(v) && rank[u] < rank[v]) edges.push_back({rank[u], rank[v]});
    return Device{fmt::format("heavy-hex-{}", n), n, edges};
}

}  // namespace qcw::device
