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

#include <variant>
#include <vector>

#include "qcw/tableau/clifford.hpp"
#include "qcw/tableau/pauli.hpp"
#include "qcw/tableau/phase_poly.hpp"
#include "qcw/tableau/tableau.hpp"

namespace qcw::tableau {

/**
 * @brief Removes the Clifford-angle rotation at (ei, idx), pushing it through
 * everything applied later until a Clifford tableau absorbs it.
 *
 * Moving V past an element X rewrites X o V as V o (V^dag X V), so passed
 * rotations get conjugated axes while V itself survives unchanged. Appends
 * an identity tableau when nothing downstream can take it.
 */
inline void absorb_clifford_rotation(Tableau& t, size_t ei, size_t idx) {
    auto& elems = t.elements();
    auto& grp = std::get<RotationGroup>(elems[ei]);
    PauliString axis = grp[idx].pauli();
    int k = grp[idx].quarter_turns() & 3;
    grp.erase(grp.begin() + idx);
    if (k == 0) return;
    int kd = (4 - k) & 3;  // conjugation by V^dag
    for (size_t j = idx; j < grp.size(); ++j)
        grp[j] = PauliRotation{conj_by_rotation(grp[j].pauli(), axis, kd), grp[j].angle()};
    for (size_t ej = ei + 1; ej < elems.size(); ++ej) {
        if (auto* later = std::get_if<RotationGroup>(&elems[ej])) {
            for (auto& r : *later)
                r = PauliRotation{conj_by_rotation(r.pauli(), axis, kd), r.angle()};
        } else {
            std::get<CliffordTableau>(elems[ej]).right_compose_rotation(axis, k);
            return;
        }
    }
    CliffordTableau sink{t.num_qubits()};
    sink.right_compose_rotation(axis, k);
    elems.push_back(std::move(sink));
}

/**
 * @brief Rotation merging: drops zero angles, fuses rotations that share an
 * axis and commute past everything between them, and absorbs rotations whose
 * angle has become Clifford. Never increases the rotation count.
 */
inline void tmerge(Tableau& t) {
    bool changed = true;
    while (changed) {
        changed = false;
        auto& elems = t.elements();
        for (size_t ei = 0; ei < elems.size() && !changed; ++ei) {
            auto* grp = std::get_if<RotationGroup>(&elems[ei]);
            if (!grp) continue;
            for (size_t i = 0; i < grp->size();) {
                if ((*grp)[i].is_zero_angle())
                    grp->erase(grp->begin() + i);
                else
                    ++i;
            }
            // scan forward: same axis merges; a non-commuting axis blocks
            for (size_t i = 0; i < grp->size() && !changed; ++i) {
                for (size_t j = i + 1; j < grp->size(); ++j) {
                    if ((*grp)[j].pauli().equal_bits((*grp)[i].pauli())) {
                        (*grp)[i] = PauliRotation{(*grp)[i].pauli(),
                                                  (*grp)[i].angle() + (*grp)[j].angle()};
                        grp->erase(grp->begin() + j);
                        changed = true;
                        break;
                    }
                    if (!(*grp)[j].pauli().commutes_with((*grp)[i].pauli())) break;
                }
            }
            if (changed) break;
            for (size_t i = 0; i < grp->size(); ++i) {
                if ((*grp)[i].is_clifford() && !(*grp)[i].is_zero_angle()) {
                    absorb_clifford_rotation(t, ei, i);
                    changed = true;
                    break;
                }
            }
        }
    }
}

/**
 * @brief Internal basis-change optimization: rewrites the tableau as
 * [diagonal group, basis tableau, diagonal group, ..., final tableau].
 *
 * Walks the list holding V = inverse of the Clifford context seen so far;
 * each rotation is conjugated into that context, and a fresh basis change W
 * is spent only when the conjugated axis is not already diagonal.
 */
inline void hopt(Tableau& t) {
    size_t n = t.num_qubits();
    CliffordTableau v{n};
    std::vector<TableauElement> out;
    RotationGroup cur;
    auto flush = [&]() {
        if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur = {};
        }
    };
    for (auto const& e : t.elements()) {
        if (auto const* c = std::get_if<CliffordTableau>(&e)) {
            v = CliffordTableau::compose(v, c->inverse());
            continue;
        }
        for (auto const& r : std::get<RotationGroup>(e)) {
            if (r.is_zero_angle()) continue;
            PauliRotation rr{v.evaluate(r.pauli()), r.angle()};
            if (rr.is_diagonal()) {
                cur.push_back(std::move(rr));
                continue;
            }
            flush();
            CliffordTableau w{n};
            auto const& p = rr.pauli();
            for (size_t q = 0; q < n; ++q) {
                if (!p.x_bit(q)) continue;
                if (p.z_bit(q)) w.apply_gate("sdg", {q});
                w.apply_gate("h", {q});
            }
            PauliRotation rd{w.evaluate(p), rr.angle()};
            out.push_back(w);
            v = CliffordTableau::compose(w, v);
            cur.push_back(std::move(rd));
        }
    }
    flush();
    out.push_back(v.inverse());
    t.elements() = std::move(out);
}

/**
 * @brief Merge / basis-change / third-order reduction to a fixpoint.
 *
 * Returns the number of rounds used; stops when the pi/4 count no longer
 * drops or after max_rounds. The count never increases.
 */
inline size_t optimize_full(Tableau& t, size_t max_rounds = 20) {
    size_t rounds = 0;
    size_t prev = t.t_count();
    while (rounds < max_rounds) {
        tmerge(t);
        hopt(t);
        todd_pass(t);
        tmerge(t);
        ++rounds;
        size_t now = t.t_count();
        if (now >= prev) break;
        prev = now;
    }
    return rounds;
}

}  // namespace qcw::tableau
