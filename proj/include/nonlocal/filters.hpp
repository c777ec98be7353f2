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

// Local filtering: the success branch of a pair of local two-outcome
// measurements {F, completion}. The failure branch is discarded and only
// shows up through the success probability.

#include "nonlocal/bell.hpp"
#include "nonlocal/measure.hpp"
#include "nonlocal/states.hpp"

#include <optional>
#include <vector>

namespace nonlocal {

struct LocalFilter {
    CMatrix kA;
    CMatrix kB;

    /// k^dag k <= I on both sides, so each filter completes to a measurement.
    bool valid() const {
        const auto ok = [](const CMatrix& k) {
            return k.rows() == k.cols() && hermitian_eig(k.adjoint() * k).max() <= 1.0 + 1e-10;
        };
        return ok(kA) && ok(kB);
    }

    LocalFilter scaled(double s) const { return {s * kA, s * kB}; }
};

struct FilterOutcome {
    std::optional<DensityMatrix> post_state;  // empty for a degenerate (probability < 1e-12) outcome
    double success_prob = 0.0;

    bool degenerate() const { return !post_state.has_value(); }
};

/// (kA (x) kB) rho (kA (x) kB)^dag, normalized, with its trace as success probability.
inline FilterOutcome apply_filters(const DensityMatrix& rho, const LocalFilter& f) {
    if (f.kA.rows() != rho.dA() || f.kB.rows() != rho.dB()) throw Error("apply_filters: filter dimension mismatch");
    if (!f.valid()) throw Error("apply_filters: filter is not a contraction (k^dag k > I)");
    const CMatrix k = tensor(f.kA, f.kB);
    const CMatrix un = k * rho.matrix() * k.adjoint();
    FilterOutcome out;
    const double p = un.trace().real();
    if (p < 1e-12) return out;
    out.success_prob = std::min(p, 1.0);
    out.post_state.emplace(un / p, rho.dA(), rho.dB());
    return out;
}

/// F_A = eps |0><0| + |1><1|, F_B = delta |0><0| + |1><1| with delta = eps / sqrt(q).
/// When delta > 1 both filters are divided by delta.
inline LocalFilter hirsch_filters(double epsilon, double q) {
    if (!(epsilon > 0.0)) throw Error("hirsch_filters: epsilon must be positive");
    if (!(q > 0.0 && q <= 1.0)) throw Error("hirsch_filters: q must lie in (0, 1]");
    const double delta = epsilon / std::sqrt(q);
    CMatrix fa = CMatrix::Zero(2, 2), fb = CMatrix::Zero(2, 2);
    fa(0, 0) = epsilon;
    fa(1, 1) = 1.0;
    fb(0, 0) = delta;
    fb(1, 1) = 1.0;
    LocalFilter f{fa, fb};
    if (delta > 1.0) f = f.scaled(1.0 / delta);
    return f;
}

/// Projector onto span{|0>, |1>} of C^d.
inline CMatrix two_level_projector(int d) {
    CMatrix p = CMatrix::Zero(d, d);
    p(0, 0) = 1.0;
    p(1, 1) = 1.0;
    return p;
}

/// Alice keeps the qubit block span{|0>, |1>} of her qutrit; Bob does nothing. Acts on rho_E.
inline LocalFilter rho_E_filters() { return {two_level_projector(3), identity(2)}; }

struct PopescuResult {
    DensityMatrix w_prime;  // 2x2 block after filtering W_local(d)
    double chsh = 0.0;      // textbook settings on the block
    double chsh_bound = 0.0;  // 2 sqrt(M(w'))
    double success_prob = 0.0;
    double closed_form_error = 0.0;  // max entry deviation from (d/(d+2))(I/(2d) + |Psi-><Psi-|)
};

/// Both parties filter W_local(d) with P = |0><0| + |1><1| (the first two levels).
inline PopescuResult popescu_protocol(int d) {
    if (d < 3) throw Error("popescu_protocol: d must be >= 3");
    const CMatrix p = two_level_projector(d);
    const FilterOutcome f = apply_filters(werner_local(d), LocalFilter{p, p});
    if (f.degenerate()) throw Error("popescu_protocol: filter never succeeds");
    const DensityMatrix block = restrict_to(*f.post_state, 2, 2);
    const double dd = d;
    const CMatrix closed = (dd / (dd + 2.0)) * (identity(4) / (2.0 * dd) + projector(singlet_ket()));
    PopescuResult r{block, chsh_value(block, textbook_settings()), horodecki_M(block).bound(), f.success_prob,
                    max_abs_diff(block.matrix(), closed)};
    return r;
}

enum class FilterFamily { rho_G, rho_G_prime };

inline DensityMatrix family_state(FilterFamily family, double q) {
    return family == FilterFamily::rho_G ? rho_G(q) : rho_G_prime(q);
}

/// M limit as epsilon -> 0: 1 + q (rho_G) or 1 + q/4 (rho_G').
inline double filtered_M_limit(FilterFamily family, double q) {
    return family == FilterFamily::rho_G ? 1.0 + q : 1.0 + q / 4.0;
}

struct ScanRow {
    double epsilon = 0.0;
    double success_prob = 0.0;
    double m = 0.0;
    double chsh_bound = 0.0;
    double chsh_at_optimal = 0.0;
};

inline const std::vector<double>& default_eps_grid() {
    static const std::vector<double> g{1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
    return g;
}

/// Filtered M(rho~) over an epsilon grid, rows in grid order.
/// For q = 0 there is nothing to filter toward; the unfiltered state is reported on every row.
inline std::vector<ScanRow> hidden_nonlocality_scan(FilterFamily family, double q, const std::vector<double>& epsilons) {
    const DensityMatrix rho = family_state(family, q);
    std::vector<ScanRow> rows;
    for (double eps : epsilons) {
        ScanRow row;
        row.epsilon = eps;
        std::optional<DensityMatrix> post;
        if (q > 0.0) {
            const FilterOutcome f = apply_filters(rho, hirsch_filters(eps, q));
            row.success_prob = f.success_prob;
            post = f.post_state;
        } else {
            row.success_prob = 1.0;
            post = rho;
        }
        if (post) {
            const ChshResult r = chsh_optimal(*post);
            row.m = r.m_rho;
            row.chsh_bound = r.bound();
            row.chsh_at_optimal = r.value;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace nonlocal
