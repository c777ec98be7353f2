// Copyright 2026 The nonlocal-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

// Barrett's response functions for rank-1 weighted POVMs
// M_i = x_i P_i (Alice) and N_j = y_j Q_j (Bob), hidden variable a
// Haar-random lambda in C^d, target state barrett_state(d).
//
//   pA(i) = <l|M_i|l> chi(<l|P_i|l> >= 1/d)
//           + (1 - sum_k <l|M_k|l> chi(<l|P_k|l> >= 1/d)) x_i / d
//   pB(j) = y_j (1 - <l|Q_j|l>) / (d - 1)

#include "nonlocal/lhv/werner.hpp"
#include "nonlocal/mc.hpp"
#include "nonlocal/measure.hpp"
#include "nonlocal/states.hpp"

#include <vector>

namespace nonlocal {

/// Alice's probabilities over the refined outcomes of `m`.
inline std::vector<double> barrett_response_A(const Ket& lambda, const RefinedPovm& m) {
    const double d = static_cast<double>(lambda.size());
    std::vector<double> p(m.size());
    double captured = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double u = std::norm(m.vectors[i].dot(lambda));
        if (u >= 1.0 / d) {
            p[i] = m.weights[i] * u;
            captured += p[i];
        }
    }
    const double rest = 1.0 - captured;
    for (std::size_t i = 0; i < m.size(); ++i) p[i] += rest * m.weights[i] / d;
    return p;
}

/// Bob's probabilities over the refined outcomes of `n`.
inline std::vector<double> barrett_response_B(const Ket& lambda, const RefinedPovm& n) {
    const double d = static_cast<double>(lambda.size());
    if (d < 2) throw Error("barrett_response_B: d must be >= 2");
    std::vector<double> p(n.size());
    for (std::size_t j = 0; j < n.size(); ++j) {
        const double u = std::norm(n.vectors[j].dot(lambda));
        p[j] = n.weights[j] * (1.0 - u) / (d - 1.0);
    }
    return p;
}

/// Joint table over the coarse outcomes of the two POVMs.
inline JointTable simulate_barrett(int d, const Povm& povmA, const Povm& povmB, std::uint64_t n, std::uint64_t seed,
                                   McOptions opts = {}) {
    if (d < 2) throw Error("simulate_barrett: d must be >= 2");
    if (povmA.dim() != d || povmB.dim() != d) throw Error("simulate_barrett: POVM dimension != d");
    const RefinedPovm ra = povm_refine(povmA), rb = povm_refine(povmB);
    const std::size_t na = povmA.size(), nb = povmB.size();
    const auto est = run_mc(
        n, seed, na * nb,
        [&](SampleRng& rng, std::span<double> out) {
            const Ket lambda = sample_sphere_cd(rng, d);
            const std::vector<double> pa = barrett_response_A(lambda, ra);
            const std::vector<double> pb = barrett_response_B(lambda, rb);
            std::vector<double> ca(na, 0.0), cb(nb, 0.0);
            for (std::size_t i = 0; i < pa.size(); ++i) ca[ra.origin[i]] += pa[i];
            for (std::size_t j = 0; j < pb.size(); ++j) cb[rb.origin[j]] += pb[j];
            for (std::size_t a = 0; a < na; ++a)
                for (std::size_t b = 0; b < nb; ++b) out[a * nb + b] = ca[a] * cb[b];
        },
        opts);
    return make_table(povmA.labels(), povmB.labels(), est, n, seed);
}

}  // namespace nonlocal
