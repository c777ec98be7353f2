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

// Local model for dichotomic projective measurements on
// rho_G(q) = q |Psi-><Psi-| + (1 - q) |0><0| (x) I/2, 0 <= q <= 1/2.
//
// Shared: lambda uniform on S^2 and r uniform on [0, 1].
// Alice (input x): if r < p = 2q she tests lambda, accepting with probability
//   |x.lambda|; on acceptance A = -sign(x.lambda). Otherwise (rejected, or
//   r >= p) she answers +-1 with probability (1 +- <0|x.sigma|0>)/2 = (1 +- x_z)/2.
// Bob (input y): B = sign(y.lambda).

#include "nonlocal/bloch.hpp"
#include "nonlocal/lhv/gisin_degorre.hpp"
#include "nonlocal/mc.hpp"
#include "nonlocal/states.hpp"

namespace nonlocal {

struct HirschHidden {
    BlochVector lambda;
    double r = 0.0;
};

struct HirschAliceOutput {
    int outcome = 1;
    bool tested = false;    // r < p
    bool accepted = false;  // |x.lambda| test passed (drawn for every sample)
};

class HirschModel {
public:
    using Hidden = HirschHidden;
    using Setting = BlochVector;

    explicit HirschModel(double q) : q_(q) {
        if (!(q >= 0.0 && q <= 0.5)) throw Error("Hirsch model requires 0 <= q <= 1/2");
    }

    double q() const { return q_; }
    DensityMatrix state() const { return rho_G(q_); }

    Hidden sample_hidden(SampleRng& rng) const {
        Hidden h;
        h.lambda = sample_sphere_r3(rng);
        h.r = rng.uniform();
        return h;
    }

    /// Draws exactly two uniforms from `rng` regardless of the branch taken.
    HirschAliceOutput alice(const BlochVector& x, const Hidden& h, SampleRng& rng) const {
        const double u_accept = rng.uniform();
        const double u_local = rng.uniform();
        const double xl = x.dot(h.lambda);
        HirschAliceOutput o;
        o.tested = h.r < 2.0 * q_;
        o.accepted = u_accept < std::abs(xl);
        if (o.tested && o.accepted)
            o.outcome = -sign(xl);
        else
            o.outcome = u_local < 0.5 * (1.0 + x.z) ? 1 : -1;
        return o;
    }

    int bob(const BlochVector& y, const Hidden& h) const { return sign(y.dot(h.lambda)); }

    // Dichotomic-model interface: {P, I - P} with rank-1 qubit P = (I + v.sigma)/2.
    Setting prepare(const CMatrix& p) const { return bloch_of(p).normalized(); }
    bool alice_hit(const Setting& v, const Hidden& h, SampleRng& rng) const { return alice(v, h, rng).outcome == 1; }
    bool bob_hit(const Setting& v, const Hidden& h, SampleRng&) const { return bob(v, h) == 1; }

private:
    double q_;
};

struct HirschStats : DichotomicStats {
    McEstimate acceptance;  // P(|x.lambda| test passes), 1/2 for every x
};

inline HirschStats simulate_hirsch_projective(double q, const BlochVector& x, const BlochVector& y, std::uint64_t n,
                                              std::uint64_t seed, McOptions opts = {}) {
    const HirschModel model(q);
    const auto est = run_mc(
        n, seed, 8,
        [&](SampleRng& rng, std::span<double> out) {
            const HirschHidden h = model.sample_hidden(rng);
            const HirschAliceOutput a = model.alice(x, h, rng);
            detail::record_pm(out, a.outcome, model.bob(y, h));
            out[7] = a.accepted ? 1.0 : 0.0;
        },
        opts);
    HirschStats s;
    detail::unpack_pm(s, est, n, seed);
    s.acceptance = est[7];
    return s;
}

}  // namespace nonlocal
