/**
 * Copyright 2026 the qcw authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "qcw/tensor/unitary.hpp"
#include "qcw/zx/diagram.hpp"

namespace qcw::zx {

namespace detail {

/// Upper bound on open legs of any intermediate tensor during contraction.
inline constexpr size_t kMaxContractionLegs = 22;

struct TensorFrag {
    std::vector<long> legs;   ///< leg 0 is the most significant index bit
    Eigen::VectorXcd data;    ///< dim == 2^legs.size()
};

inline void apply_h_to_leg(TensorFrag& f, size_t leg_pos) {
    size_t k = f.legs.size();
    size_t stride = size_t{1} << (k - 1 - leg_pos);
    double const inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (size_t base = 0; base < (size_t{1} << k); ++base) {
        if (base & stride) continue;
        auto a = f.data(static_cast<Eigen::Index>(base));
        auto b = f.data(static_cast<Eigen::Index>(base + stride));
        f.data(static_cast<Eigen::Index>(base)) = inv_sqrt2 * (a + b);
        f.data(static_cast<Eigen::Index>(base + stride)) = inv_sqrt2 * (a - b);
    }
}

/// Contracts all shared legs between a and b (tensor product when disjoint).
inline TensorFrag contract_pair(TensorFrag const& a, TensorFrag const& b) {
    std::vector<long> shared;
    for (long l : a.legs)
        if (std::find(b.legs.begin(), b.legs.end(), l) != b.legs.end()) shared.push_back(l);

    TensorFrag out;
    for (long l : a.legs)
        if (std::find(shared.begin(), shared.end(), l) == shared.end()) out.legs.push_back(l);
    for (long l : b.legs)
        if (std::find(shared.begin(), shared.end(), l) == shared.end()) out.legs.push_back(l);
    if (out.legs.size() > kMaxContractionLegs)
        throw std::runtime_error("zx tensor contraction exceeded the dense cap");

    auto positions = [](std::vector<long> const& legs, std::vector<long> const& want) {
        std::vector<size_t> pos;
        for (long l : want)
            pos.push_back(static_cast<size_t>(std::find(legs.begin(), legs.end(), l) - legs.begin()));
        return pos;
    };
    std::vector<long> a_free, b_free;
    for (long l : a.legs)
        if (std::find(shared.begin(), shared.end(), l) == shared.end()) a_free.push_back(l);
    for (long l : b.legs)
        if (std::find(shared.begin(), shared.end(), l) == shared.end()) b_free.push_back(l);

    auto a_free_pos = positions(a.legs, a_free);
    auto a_shared_pos = positions(a.legs, shared);
    auto b_free_pos = positions(b.legs, b_free);
    auto b_shared_pos = positions(b.legs, shared);

    size_t ka = a.legs.size(), kb = b.legs.size(), ko = out.legs.size(), ks = shared.size();
    out.data = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(size_t{1} << ko));

    auto bit = [](size_t idx, size_t k, size_t pos) { return (idx >> (k - 1 - pos)) & 1; };
    for (size_t oi = 0; oi < (size_t{1} << ko); ++oi) {
        std::complex<double> acc = 0;
        for (size_t si = 0; si < (size_t{1} << ks); ++si) {
            size_t ai = 0, bi = 0;
            for (size_t j = 0; j < a_free.size(); ++j)
                if (bit(oi, ko, j)) ai |= size_t{1} << (ka - 1 - a_free_pos[j]);
            for (size_t j = 0; j < b_free.size(); ++j)
                if (bit(oi, ko, a_free.size() + j)) bi |= size_t{1} << (kb - 1 - b_free_pos[j]);
            for (size_t j = 0; j < ks; ++j) {
                if (!bit(si, ks, j)) continue;
                ai |= size_t{1} << (ka - 1 - a_shared_pos[j]);
                bi |= size_t{1} << (kb - 1 - b_shared_pos[j]);
            }
            acc += a.data(static_cast<Eigen::Index>(ai)) * b.data(static_cast<Eigen::Index>(bi));
        }
        out.data(static_cast<Eigen::Index>(oi)) = acc;
    }
    return out;
}

}  // namespace detail

/**
 * @brief Contracts a diagram to the dense matrix it represents, up to scalar.
 *
 * Row index bits are the outputs in wire order (output 0 most significant),
 * column bits likewise for inputs. Works on any diagram (x-spiders and simple
 * edges included), so it is an oracle that is independent of the rewrite
 * engine. Greedy pairwise contraction; throws if an intermediate tensor would
 * exceed the dense cap.
 */
inline Eigen::MatrixXcd to_tensor(ZXDiagram const& g) {
    using detail::TensorFrag;
    size_t n_in = g.inputs().size(), n_out = g.outputs().size();

    // open-leg labels: E + k where k indexes [outputs..., inputs...]
    std::map<std::pair<size_t, size_t>, long> edge_id;
    long next_edge = 0;
    for (auto const& [u, v, t] : g.edges()) edge_id[{u, v}] = next_edge++;

    std::map<size_t, long> open_leg;  // boundary vertex id -> open leg label
    for (size_t k = 0; k < n_out; ++k) open_leg[g.outputs()[k]] = next_edge + static_cast<long>(k);
    for (size_t k = 0; k < n_in; ++k) open_leg[g.inputs()[k]] = next_edge + static_cast<long>(n_out + k);

    auto label_of = [&](size_t u, size_t v) {
        return edge_id.at({std::min(u, v), std::max(u, v)});
    };

    std::vector<TensorFrag> frags;
    std::complex<double> scalar = 1.0;

    // spider tensors; hadamard edges absorb into the lower-id endpoint
    for (auto const& [id, v] : g.vertices()) {
        if (v.is_boundary()) continue;
        size_t k = v.neighbors.size();
        if (k == 0) {
            scalar *= 1.0 + std::exp(std::complex<double>{0.0, v.phase.to_radians()});
            continue;
        }
        TensorFrag f;
        f.data = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(size_t{1} << k));
        f.data(0) = 1.0;
        f.data(static_cast<Eigen::Index>((size_t{1} << k) - 1)) = std::exp(std::complex<double>{0.0, v.phase.to_radians()});
        std::vector<bool> wants_h(k, false);
        size_t pos = 0;
        for (auto const& [w, t] : v.neighbors) {
            f.legs.push_back(g.vertex(w).is_boundary() ? open_leg.at(w) : label_of(id, w));
            bool absorb_here = t == EdgeType::hadamard && (g.vertex(w).is_boundary() || id < w);
            wants_h[pos++] = absorb_here;
        }
        if (v.type == VertexType::x)
            for (size_t j = 0; j < k; ++j) detail::apply_h_to_leg(f, j);
        for (size_t j = 0; j < k; ++j)
            if (wants_h[j]) detail::apply_h_to_leg(f, j);
        frags.push_back(std::move(f));
    }

    // boundary-boundary edges become explicit wire tensors
    for (auto const& [u, v, t] : g.edges()) {
        if (!g.vertex(u).is_boundary() || !g.vertex(v).is_boundary()) continue;
        TensorFrag f;
        f.legs = {open_leg.at(u), open_leg.at(v)};
        f.data = Eigen::VectorXcd::Zero(4);
        if (t == EdgeType::simple) {
            f.data(0) = 1.0;
            f.data(3) = 1.0;
        } else {
            double const inv_sqrt2 = 1.0 / std::sqrt(2.0);
            f.data(0) = inv_sqrt2;
            f.data(1) = inv_sqrt2;
            f.data(2) = inv_sqrt2;
            f.data(3) = -inv_sqrt2;
        }
        frags.push_back(std::move(f));
    }

    // greedy pairwise contraction, smallest result first, index order tie-break
    while (frags.size() > 1) {
        size_t best_i = 0, best_j = 1;
        long best_cost = std::numeric_limits<long>::max();
        bool found_shared = false;
        for (size_t i = 0; i < frags.size(); ++i) {
            for (size_t j = i + 1; j < frags.size(); ++j) {
                size_t shared = 0;
                for (long l : frags[i].legs)
                    if (std::find(frags[j].legs.begin(), frags[j].legs.end(), l) != frags[j].legs.end())
                        ++shared;
                if (shared == 0) continue;
                long cost = static_cast<long>(frags[i].legs.size() + frags[j].legs.size() - 2 * shared);
                if (!found_shared || cost < best_cost) {
                    best_cost = cost;
                    best_i = i;
                    best_j = j;
                    found_shared = true;
                }
            }
        }
        // disconnected components: outer product of the two smallest
        if (!found_shared) {
            std::sort(frags.begin(), frags.end(), [](TensorFrag const& a, TensorFrag const& b) {
                return a.legs.size() < b.legs.size();
            });
            best_i = 0;
            best_j = 1;
        }
        TensorFrag merged = detail::contract_pair(frags[best_i], frags[best_j]);
        frags.erase(frags.begin() + static_cast<long>(best_j));
        frags.erase(frags.begin() + static_cast<long>(best_i));
        frags.push_back(std::move(merged));
    }

    Eigen::MatrixXcd m(size_t{1} << n_out, size_t{1} << n_in);
    if (frags.empty()) {
        if (n_in != 0 || n_out != 0) throw std::logic_error("zx tensor: open legs without tensors");
        m(0, 0) = scalar;
        return m;
    }
    TensorFrag const& f = frags.front();
    if (f.legs.size() != n_in + n_out) throw std::logic_error("zx tensor: contraction left internal legs");

    // leg label E+k -> bit position in (row, col)
    std::vector<size_t> leg_pos(n_in + n_out);
    for (size_t j = 0; j < f.legs.size(); ++j)
        leg_pos[static_cast<size_t>(f.legs[j] - next_edge)] = j;

    size_t kf = f.legs.size();
    for (size_t r = 0; r < (size_t{1} << n_out); ++r) {
        for (size_t c = 0; c < (size_t{1} << n_in); ++c) {
            size_t idx = 0;
            for (size_t q = 0; q < n_out; ++q)
                if ((r >> (n_out - 1 - q)) & 1) idx |= size_t{1} << (kf - 1 - leg_pos[q]);
            for (size_t q = 0; q < n_in; ++q)
                if ((c >> (n_in - 1 - q)) & 1) idx |= size_t{1} << (kf - 1 - leg_pos[n_out + q]);
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                scalar * f.data(static_cast<Eigen::Index>(idx));
        }
    }
    return m;
}

}  // namespace qcw::zx
