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


#include "nonlocal/bell.hpp"

#include "gtest/gtest.h"

#include "nonlocal/filters.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace nonlocal;
using namespace nonlocal::testing;

namespace {
const double kSqrt2 = std::numbers::sqrt2;
}

TEST(bell, singlet_textbook_settings) {
    EXPECT_NEAR(chsh_value(singlet(), textbook_settings()), 2.0 * kSqrt2, 1e-10);
    EXPECT_NEAR(direct_chsh(singlet(), textbook_settings()), 2.0 * kSqrt2, 1e-10);
}

TEST(bell, maximally_mixed_gives_zero) {
    SampleRng rng(31, 0);
    for (int k = 0; k < 10; ++k) {
        const ChshSettings s{sample_sphere_r3(rng), sample_sphere_r3(rng), sample_sphere_r3(rng), sample_sphere_r3(rng)};
        EXPECT_NEAR(chsh_value(maximally_mixed(2, 2), s), 0.0, 1e-14);
    }
}

TEST(bell, separable_states_never_violate) {
    SampleRng rng(32, 0);
    for (int k = 0; k < 500; ++k) {
        const DensityMatrix rho(random_separable_state(rng, 2, 2), 2, 2);
        const ChshSettings s{sample_sphere_r3(rng), sample_sphere_r3(rng), sample_sphere_r3(rng), sample_sphere_r3(rng)};
        EXPECT_LE(std::abs(chsh_value(rho, s)), 2.0 + 1e-9);
        EXPECT_LE(horodecki_M(rho).m_rho, 1.0 + 1e-9);
    }
}

TEST(bell, chsh_matches_direct_trace) {
    SampleRng rng(33, 0);
    for (int k = 0; k < 50; ++k) {
        const DensityMatrix rho = random_two_qubit(rng);
        const ChshSettings s{sample_sphere_r3(rng), sample_sphere_r3(rng), sample_sphere_r3(rng), sample_sphere_r3(rng)};
        EXPECT_NEAR(chsh_value(rho, s), direct_chsh(rho, s), 1e-12);
    }
}

TEST(bell, correlation_matrices) {
    const CorrelationMatrix c = correlation_matrix(singlet());
    EXPECT_LT((c.t + Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT(correlation_matrix(maximally_mixed(2, 2)).t.cwiseAbs().maxCoeff(), 1e-15);

    SampleRng rng(34, 0);
    const DensityMatrix rho = random_two_qubit(rng);
    const CorrelationMatrix cr = correlation_matrix(rho);
    for (int k = 0; k < 10; ++k) {
        const BlochVector a = sample_sphere_r3(rng), b = sample_sphere_r3(rng);
        EXPECT_NEAR(cr.correlation(a, b), direct_E(rho, a, b), 1e-12);
    }
}

TEST(bell, horodecki_M_closed_forms) {
    EXPECT_NEAR(horodecki_M(singlet()).m_rho, 2.0, 1e-12);
    EXPECT_NEAR(horodecki_M(maximally_mixed(2, 2)).m_rho, 0.0, 1e-14);
    for (double a : {0.0, 0.3, 0.5, 1.0 / kSqrt2, 0.9}) {
        EXPECT_NEAR(horodecki_M(werner2x2(a)).m_rho, 2.0 * a * a, 1e-12);
        EXPECT_EQ(horodecki_M(werner2x2(a)).violates(), a > 1.0 / kSqrt2 + 1e-9);
    }
    // T(rho_G) = -q I; the |0><0| (x) I/2 part carries no correlations.
    for (double q : {0.1, 0.5, 0.9}) EXPECT_NEAR(horodecki_M(rho_G(q)).m_rho, 2.0 * q * q, 1e-12);
}

TEST(bell, werner_M_against_hill_climb) {
    SampleRng rng(35, 0);
    for (double a : {0.4, 0.6, 0.8}) {
        const double found = hill_climb_chsh(werner2x2(a), rng, 20000);
        EXPECT_NEAR(found, 2.0 * std::sqrt(2.0 * a * a), 1e-3);
    }
}

TEST(bell, random_search_never_exceeds_bound) {
    SampleRng rng(36, 0);
    for (int k = 0; k < 20; ++k) {
        const DensityMatrix rho = random_two_qubit(rng);
        const ChshResult r = chsh_optimal(rho);
        EXPECT_LE(random_search_chsh(rho, rng, 2000), r.bound() + 1e-9);
        EXPECT_NEAR(r.value, r.bound(), 1e-6);
        EXPECT_TRUE(r.settings.valid());
    }
}

TEST(bell, optimal_settings_reach_bound_on_special_states) {
    for (const DensityMatrix& rho : {singlet(), werner2x2(0.8), rho_G(0.7), rho_G(0.2)}) {
        const ChshResult r = chsh_optimal(rho);
        EXPECT_NEAR(r.value, r.bound(), 1e-9);
    }
    const ChshResult mixed = chsh_optimal(maximally_mixed(2, 2));
    EXPECT_TRUE(mixed.settings.valid());
    EXPECT_NEAR(mixed.value, 0.0, 1e-14);
}

TEST(bell, filtered_rho_G_M_is_one_plus_q) {
    for (double q : {0.25, 0.5}) {
        const FilterOutcome f = apply_filters(rho_G(q), hirsch_filters(1e-4, q));
        ASSERT_FALSE(f.degenerate());
        EXPECT_NEAR(horodecki_M(*f.post_state).m_rho, 1.0 + q, 1e-5);
    }
}

TEST(bell, swap_symmetry) {
    SampleRng rng(37, 0);
    for (int k = 0; k < 20; ++k) {
        const DensityMatrix rho = random_two_qubit(rng);
        const ChshSettings s{sample_sphere_r3(rng), sample_sphere_r3(rng), sample_sphere_r3(rng), sample_sphere_r3(rng)};
        const ChshSettings swapped{s.yp, s.y, s.xp, s.x};
        EXPECT_NEAR(chsh_value(rho.swapped(), swapped), chsh_value(rho, s), 1e-12);
        EXPECT_NEAR(horodecki_M(rho.swapped()).m_rho, horodecki_M(rho).m_rho, 1e-12);
    }
}

TEST(bell, local_unitary_invariance_of_M) {
    SampleRng rng(38, 0);
    for (int k = 0; k < 20; ++k) {
        const DensityMatrix rho = random_two_qubit(rng);
        const CMatrix u = tensor(random_unitary(rng, 2), random_unitary(rng, 2));
        const DensityMatrix rotated(u * rho.matrix() * u.adjoint(), 2, 2);
        EXPECT_NEAR(horodecki_M(rotated).m_rho, horodecki_M(rho).m_rho, 1e-10);
    }
}

TEST(bell, rejects_bad_input) {
    EXPECT_THROW(chsh_value(werner_local(3), textbook_settings()), Error);
    ChshSettings s = textbook_settings();
    s.x = {0, 0, 0.5};
    EXPECT_THROW(chsh_value(singlet(), s), Error);
    EXPECT_THROW(correlation_matrix(rho_E(0.5)), Error);
}
