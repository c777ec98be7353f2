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

// Werner's model for projective measurements on W_local: hidden variable a
// Haar-random unit vector lambda in C^d; Bob answers b with probability
// <lambda|Q_b|lambda>; Alice answers the outcome whose projector has the
// smallest overlap with lambda.

#include "nonlocal/mc.hpp"
#include "nonlocal/measure.hpp"
#include "nonlocal/states.hpp"

#include <limits>
#include <vector>

namespace nonlocal {

/// 1 iff <l|P_a|l> is the smallest overlap; ties go to the lowest index.
inline int werner_response_A(std::size_t a, const Ket& lambda, const ProjectiveMeasurement& proj) {
    if (a >= proj.size()) throw Error("werner_response_A: outcome out of range");
    std::size_t best = 0;
    double best_u = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < proj.size(); ++k) {
        const double u = lambda.dot(proj.projectors()[k] * lambda).real();
        if (u < best_u) {
            best_u = u;
            best = k;
        }
    }
    return best == a ? 1 : 0;
}

/// <l|Q_b|l>
inline double werner_response_B(std::size_t b, const Ket& lambda, const ProjectiveMeasurement& proj) {
    if (b >= proj.size()) throw Error("werner_response_B: outcome out of range");
    return std::clamp(lambda.dot(proj.projectors()[b] * lambda).real(), 0.0, 1.0);
}

namespace detail {

/// Rank-1 refinement of a projective measurement packed for fast overlaps.
struct PackedBasis {
    CMatrix rows;                     // row k = <v_k|
    std::vector<std::size_t> origin;  // coarse outcome of v_k
    std::size_t outcomes = 0;

    explicit PackedBasis(const ProjectiveMeasurement& pm) : outcomes(pm.size()) {
        const auto fine = pm.rank_one_refinement();
        rows.resize(static_cast<Eigen::Index>(fine.size()), pm.dim());
        for (std::size_t k = 0; k < fine.size(); ++k) {
            rows.row(static_cast<Eigen::Index>(k)) = fine[k].first.adjoint();
            origin.push_back(fine[k].second);
        }
    }

    /// Coarse outcome holding the smallest fine overlap (lowest fine index on ties).
    std::size_t argmin(const RVector& u) const {
        Eigen::Index k = 0;
        u.minCoeff(&k);
        return origin[static_cast<std::size_t>(k)];
    }

    RVector overlaps(const Ket& lambda) const { return (rows * lambda).cwiseAbs2(); }
};

}  // namespace detail

inline std::vector<int> outcome_labels(std::size_t n) {
    std::vector<int> l(n);
    for (std::size_t i = 0; i < n; ++i) l[i] = static_cast<int>(i);
    return l;
}

/// Monte Carlo estimate of p(a, b) = E[pA(a, lambda) pB(b, lambda)]; converges to tr(W_local P_a (x) Q_b).
/// Outcome labels are projector indices.
inline JointTable simulate_werner(int d, const ProjectiveMeasurement& projA, const ProjectiveMeasurement& projB,
                                  std::uint64_t n, std::uint64_t seed, McOptions opts = {}) {
    if (d < 2) throw Error("simulate_werner: d must be >= 2");
    if (projA.dim() != d || projB.dim() != d) throw Error("simulate_werner: measurement dimension != d");
    const detail::PackedBasis A(projA), B(projB);
    const std::size_t nb = B.outcomes;
    const auto est = run_mc(
        n, seed, A.outcomes * nb,
        [&](SampleRng& rng, std::span<double> out) {
            const Ket lambda = sample_sphere_cd(rng, d);
            const std::size_t a = A.argmin(A.overlaps(lambda));
            const RVector ub = B.overlaps(lambda);
            for (Eigen::Index k = 0; k < ub.size(); ++k) out[a * nb + B.origin[static_cast<std::size_t>(k)]] += ub(k);
        },
        opts);
    return make_table(outcome_labels(A.outcomes), outcome_labels(nb), est, n, seed);
}

/// Estimates the integral of <l|P_a|l> over the region where P_a has the smallest overlap (1/d^3).
inline McEstimate simplex_integral_mc(int d, std::size_t a, const ProjectiveMeasurement& proj, std::uint64_t n,
                                      std::uint64_t seed, McOptions opts = {}) {
    if (proj.dim() != d) throw Error("simplex_integral_mc: measurement dimension != d");
    if (a >= proj.size()) throw Error("simplex_integral_mc: outcome out of range");
    for (const auto& p : proj.projectors())
        if (std::abs(p.trace().real() - 1.0) > 1e-10) throw Error("simplex_integral_mc: needs a rank-1 basis");
    const detail::PackedBasis basis(proj);
    const auto est = run_mc(
        n, seed, 1,
        [&](SampleRng& rng, std::span<double> out) {
            const Ket lambda = sample_sphere_cd(rng, d);
            const RVector u = basis.overlaps(lambda);
            if (basis.argmin(u) == a) out[0] = u(static_cast<Eigen::Index>(a));
        },
        opts);
    return est[0];
}

/// Werner's model as a base for dichotomic measurements {P, I - P} on W_local(d).
class WernerDichotomicModel {
public:
    using Hidden = Ket;

    struct Setting {
        detail::PackedBasis basis;  // coarse outcome 0 is P
        CMatrix p;
    };

    explicit WernerDichotomicModel(int d) : d_(d) {
        if (d < 2) throw Error("WernerDichotomicModel: d must be >= 2");
    }

    DensityMatrix state() const { return werner_local(d_); }
    int dim() const { return d_; }

    Setting prepare(const CMatrix& p) const {
        return Setting{detail::PackedBasis(ProjectiveMeasurement({p, identity(d_) - p}, {1.0, 0.0})), p};
    }

    Hidden sample_hidden(SampleRng& rng) const { return sample_sphere_cd(rng, d_); }

    bool alice_hit(const Setting& s, const Hidden& lambda, SampleRng&) const {
        return s.basis.argmin(s.basis.overlaps(lambda)) == 0;
    }

    bool bob_hit(const Setting& s, const Hidden& lambda, SampleRng& rng) const {
        return rng.uniform() < lambda.dot(s.p * lambda).real();
    }

private:
    int d_;
};

}  // namespace nonlocal
