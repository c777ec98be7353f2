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

// Lifting a local model for dichotomic projective measurements on rho0 to a
// local model for arbitrary POVMs on
//   rho' = [rho0 + (d-1)(rhoA (x) sigmaB + sigmaA (x) rhoB) + (d-1)^2 sigmaA (x) sigmaB] / d^2.
//
// Each party, holding a refined POVM {alpha_a P_a}:
//   1. picks a with probability alpha_a / d,
//   2. runs the base model for {P_a, I - P_a},
//   3. on a P_a outcome ("hit") outputs a,
//   4. otherwise outputs a' with probability tr(M_a' sigma).

#include "nonlocal/mc.hpp"
#include "nonlocal/measure.hpp"
#include "nonlocal/states.hpp"

#include <concepts>
#include <vector>

namespace nonlocal {

template <class M>
concept DichotomicModel = requires(const M& m, SampleRng& rng, const CMatrix& p, const typename M::Setting& s,
                                   const typename M::Hidden& h) {
    { m.state() } -> std::convertible_to<DensityMatrix>;
    { m.prepare(p) } -> std::same_as<typename M::Setting>;
    { m.sample_hidden(rng) } -> std::same_as<typename M::Hidden>;
    { m.alice_hit(s, h, rng) } -> std::same_as<bool>;
    { m.bob_hit(s, h, rng) } -> std::same_as<bool>;
};

struct PovmLiftStats {
    JointTable table;           // coarse outcomes of the original POVMs
    JointTable both_hit;        // joint probability that both output in step 3 with (a, b)
    McEstimate step4_A, step4_B;  // rate of step-4 outputs, (d-1)/d
};

namespace detail {

inline std::vector<double> categorical_cdf(const std::vector<double>& p) {
    std::vector<double> c(p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        c[i] = acc;
    }
    for (double& v : c) v /= acc;
    return c;
}

inline std::size_t draw(const std::vector<double>& cdf, double u) {
    for (std::size_t i = 0; i + 1 < cdf.size(); ++i)
        if (u < cdf[i]) return i;
    return cdf.size() - 1;
}

template <DichotomicModel Model>
struct LiftParty {
    RefinedPovm refined;
    std::vector<typename Model::Setting> settings;
    std::vector<double> pick_cdf;      // alpha_a / d over refined outcomes
    std::vector<double> fallback_cdf;  // tr(M_a' sigma) over coarse outcomes

    LiftParty(const Model& model, const Povm& povm, const DensityMatrix& sigma)
        : refined(povm_refine(povm)) {
        const double d = povm.dim();
        std::vector<double> pick;
        for (std::size_t k = 0; k < refined.size(); ++k) {
            settings.push_back(model.prepare(projector(refined.vectors[k])));
            pick.push_back(refined.weights[k] / d);
        }
        pick_cdf = categorical_cdf(pick);
        std::vector<double> fb;
        for (const auto& m : povm.elements()) fb.push_back(born(sigma, m));
        fallback_cdf = categorical_cdf(fb);
    }
};

}  // namespace detail

template <DichotomicModel Model>
PovmLiftStats simulate_povm_lift(const Model& base, const DensityMatrix& sigmaA, const DensityMatrix& sigmaB,
                                 const Povm& povmA, const Povm& povmB, std::uint64_t n, std::uint64_t seed,
                                 McOptions opts = {}) {
    const DensityMatrix rho0 = base.state();
    const int d = rho0.dA();
    if (rho0.dB() != d) throw Error("simulate_povm_lift: base state must have equal local dimensions");
    if (povmA.dim() != d || povmB.dim() != d) throw Error("simulate_povm_lift: POVM dimension != d");
    if (sigmaA.dim() != d || sigmaB.dim() != d) throw Error("simulate_povm_lift: sigma dimension != d");

    const detail::LiftParty<Model> alice(base, povmA, sigmaA);
    const detail::LiftParty<Model> bob(base, povmB, sigmaB);
    const std::size_t na = povmA.size(), nb = povmB.size(), cells = na * nb;

    const auto est = run_mc(
        n, seed, 2 * cells + 2,
        [&](SampleRng& rng, std::span<double> out) {
            const auto h = base.sample_hidden(rng);
            const std::size_t ka = detail::draw(alice.pick_cdf, rng.uniform());
            const std::size_t kb = detail::draw(bob.pick_cdf, rng.uniform());
            const bool hit_a = base.alice_hit(alice.settings[ka], h, rng);
            const bool hit_b = base.bob_hit(bob.settings[kb], h, rng);
            const double ua = rng.uniform(), ub = rng.uniform();
            const std::size_t a = hit_a ? alice.refined.origin[ka] : detail::draw(alice.fallback_cdf, ua);
            const std::size_t b = hit_b ? bob.refined.origin[kb] : detail::draw(bob.fallback_cdf, ub);
            out[a * nb + b] = 1.0;
            if (hit_a && hit_b) out[cells + a * nb + b] = 1.0;
            out[2 * cells] = hit_a ? 0.0 : 1.0;
            out[2 * cells + 1] = hit_b ? 0.0 : 1.0;
        },
        opts);

    PovmLiftStats s;
    s.table = make_table(povmA.labels(), povmB.labels(), std::span<const McEstimate>(est.data(), cells), n, seed);
    s.both_hit =
        make_table(povmA.labels(), povmB.labels(), std::span<const McEstimate>(est.data() + cells, cells), n, seed);
    s.step4_A = est[2 * cells];
    s.step4_B = est[2 * cells + 1];
    return s;
}

}  // namespace nonlocal
