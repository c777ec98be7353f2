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

// Counter-based random streams and the random objects built on them.
//
// Stream layout (frozen; changing it changes every published number):
//   key(seed, index)  = mix64(seed ^ mix64(index + 0x632BE59BD9B4E019))
//   stream            = SplitMix64 started at key
//   uniform()         = (next() >> 11) * 2^-53          in [0, 1)
//   normal()          = Box-Muller on (1 - uniform(), uniform()), both
//                       outputs used, cosine branch first
// Every Monte Carlo sample i draws from SampleRng(seed, i) only, so results
// depend on (seed, n) and never on how samples are split across workers.

#include "nonlocal/bloch.hpp"
#include "nonlocal/qmat.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

namespace nonlocal {

inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class SampleRng {
public:
    using result_type = std::uint64_t;

    SampleRng(std::uint64_t seed, std::uint64_t index)
        : state_(mix64(seed ^ mix64(index + 0x632BE59BD9B4E019ULL))) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Uniform point on the unit sphere S^2 (normalized Gaussian triple).
inline BlochVector sample_sphere_r3(SampleRng& rng) {
    for (;;) {
        const double x = rng.normal();
        const double y = rng.normal();
        const double z = rng.normal();
        const double n = std::sqrt(x * x + y * y + z * z);
        if (n > 1e-300) return BlochVector{x / n, y / n, z / n};
    }
}

/// Haar-uniform unit vector in C^d (normalized complex Gaussian).
inline Ket sample_sphere_cd(SampleRng& rng, int d) {
    if (d < 1) throw Error("sample_sphere_cd: d must be positive");
    for (;;) {
        Ket v(d);
        for (int i = 0; i < d; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            v(i) = cplx(re, im);
        }
        const double n = v.norm();
        if (n > 1e-300) return v / n;
    }
}

/// Haar-random unitary (QR of a Ginibre matrix with phase fix).
inline CMatrix random_unitary(SampleRng& rng, int d) {
    CMatrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(i, j) = cplx(re, im);
        }
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        const cplx rjj = r(j, j);
        const double a = std::abs(rjj);
        if (a > 0) q.col(j) *= rjj / a;
    }
    return q;
}

/// Hilbert-Schmidt random density matrix on C^n.
inline CMatrix random_density_matrix(SampleRng& rng, int n) {
    CMatrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(i, j) = cplx(re, im);
        }
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

/// Convex mixture of up to `max_terms` Haar-random pure product states on C^dA (x) C^dB.
inline CMatrix random_separable_state(SampleRng& rng, int dA, int dB, int max_terms = 8) {
    const int terms = 1 + static_cast<int>(rng.uniform() * max_terms);
    CMatrix rho = CMatrix::Zero(dA * dB, dA * dB);
    double total = 0.0;
    for (int k = 0; k < terms; ++k) {
        const double w = rng.uniform() + 1e-3;
        const Ket a = sample_sphere_cd(rng, dA);
        const Ket b = sample_sphere_cd(rng, dB);
        rho += w * projector(tensor(a, b));
        total += w;
    }
    rho /= total;
    return 0.5 * (rho + rho.adjoint());
}

}  // namespace nonlocal
