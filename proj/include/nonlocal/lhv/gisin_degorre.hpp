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

// Choice-method sampling and the two protocols built on it: the singlet
// simulation with one bit of communication, and the communication-free model
// of alpha = 1/2 two-qubit Werner state.

#include "nonlocal/bloch.hpp"
#include "nonlocal/mc.hpp"
#include "nonlocal/random.hpp"

namespace nonlocal {

/// The candidate with the larger |x.lambda_i|; ties go to lambda1.
inline const BlochVector& gd_choice(const BlochVector& lambda0, const BlochVector& lambda1, const BlochVector& x) {
    return std::abs(x.dot(lambda0)) > std::abs(x.dot(lambda1)) ? lambda0 : lambda1;
}

/// Statistics of a pair of +-1 valued outputs.
struct DichotomicStats {
    McEstimate e_a, e_b, e_ab;
    JointTable table;  // cells keyed by (+1|-1, +1|-1)
};

struct GdStats : DichotomicStats {
    /// Fraction of samples where -sign(x.(l0 + l1)) != -sign(x.l_s); zero in exact arithmetic.
    McEstimate rewrite_mismatch;
};

namespace detail {
inline constexpr int kPm[2] = {1, -1};

/// Slots 0..3 joint cells (+,+),(+,-),(-,+),(-,-); 4 A; 5 B; 6 AB.
inline void record_pm(std::span<double> out, int A, int B) {
    out[(A == 1 ? 0 : 2) + (B == 1 ? 0 : 1)] = 1.0;
    out[4] = A;
    out[5] = B;
    out[6] = A * B;
}

inline void unpack_pm(DichotomicStats& s, const std::vector<McEstimate>& est, std::uint64_t n, std::uint64_t seed) {
    s.table = make_table({1, -1}, {1, -1}, std::span<const McEstimate>(est.data(), 4), n, seed);
    s.e_a = est[4];
    s.e_b = est[5];
    s.e_ab = est[6];
}
}  // namespace detail

/// Alice picks lambda_s by the choice method and sends which one to Bob.
/// A = -sign(x.lambda_s), B = sign(y.lambda_s). Target: singlet correlations.
inline DichotomicStats simulate_epr_one_bit(const BlochVector& x, const BlochVector& y, std::uint64_t n,
                                            std::uint64_t seed, McOptions opts = {}) {
    const auto est = run_mc(
        n, seed, 7,
        [&](SampleRng& rng, std::span<double> out) {
            const BlochVector l0 = sample_sphere_r3(rng);
            const BlochVector l1 = sample_sphere_r3(rng);
            const BlochVector& ls = gd_choice(l0, l1, x);
            const bool bit = &ls == &l0;  // the one communicated bit
            const BlochVector& bob_view = bit ? l0 : l1;
            detail::record_pm(out, -sign(x.dot(ls)), sign(y.dot(bob_view)));
        },
        opts);
    DichotomicStats s;
    detail::unpack_pm(s, est, n, seed);
    return s;
}

/// No communication: Bob always assumes lambda_s = lambda_0.
/// A = -sign(x.lambda_s), B = sign(y.lambda_0). Target: werner2x2(1/2).
inline GdStats simulate_gd_w2x2(const BlochVector& x, const BlochVector& y, std::uint64_t n, std::uint64_t seed,
                                McOptions opts = {}) {
    const auto est = run_mc(
        n, seed, 8,
        [&](SampleRng& rng, std::span<double> out) {
            const BlochVector l0 = sample_sphere_r3(rng);
            const BlochVector l1 = sample_sphere_r3(rng);
            const BlochVector& ls = gd_choice(l0, l1, x);
            const int A = -sign(x.dot(ls));
            detail::record_pm(out, A, sign(y.dot(l0)));
            out[7] = (-sign(x.dot(l0 + l1)) != A) ? 1.0 : 0.0;
        },
        opts);
    GdStats s;
    detail::unpack_pm(s, est, n, seed);
    s.rewrite_mismatch = est[7];
    return s;
}

}  // namespace nonlocal
