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


#include "nonlocal/measure.hpp"

#include "gtest/gtest.h"

#include "nonlocal/random.hpp"
#include "nonlocal/states.hpp"

using namespace nonlocal;

TEST(measure, obs_from_bloch_z) {
    const Observable o = obs_from_bloch({0, 0, 1});
    EXPECT_LT(max_abs_diff(o.matrix(), pauli_z()), 1e-15);
    EXPECT_LT(max_abs_diff(o.measurement().projectors()[0], projector(basis_ket(2, 0))), 1e-15);
    EXPECT_LT(max_abs_diff(o.measurement().projectors()[1], projector(basis_ket(2, 1))), 1e-15);
    EXPECT_THROW(obs_from_bloch({0, 0, 2}), Error);
}

TEST(measure, bloch_projectors_complete_and_born_probabilities) {
    SampleRng rng(21, 0);
    for (int k = 0; k < 20; ++k) {
        const BlochVector v = sample_sphere_r3(rng);
        const Observable o = obs_from_bloch(v);
        const auto& p = o.measurement().projectors();
        EXPECT_LT(max_abs_diff(p[0] + p[1], identity(2)), 1e-14);
        const Ket psi = sample_sphere_cd(rng, 2);
        const double ev = psi.dot(v.sigma() * psi).real();
        const double pp = psi.dot(p[0] * psi).real(), pm = psi.dot(p[1] * psi).real();
        EXPECT_NEAR(pp, (1.0 + ev) / 2.0, 1e-12);
        EXPECT_NEAR(pm, (1.0 - ev) / 2.0, 1e-12);
        EXPECT_NEAR(pp + pm, 1.0, 1e-12);
    }
}

TEST(measure, generic_observable_groups_degenerate_eigenvalues) {
    const Observable o(tensor(pauli_z(), pauli_z()));
    EXPECT_EQ(o.measurement().size(), 2u);
    EXPECT_NEAR(o.measurement().labels()[0], 1.0, 1e-12);
}

TEST(measure, born_joint_examples) {
    SampleRng rng(22, 0);
    const BlochVector v = sample_sphere_r3(rng);
    const CMatrix pplus = obs_from_bloch(v).measurement().projectors()[0];
    EXPECT_NEAR(born_joint(singlet(), pplus, pplus), 0.0, 1e-14);
    EXPECT_NEAR(born_joint(rho_G(0.3), identity(2), identity(2)), 1.0, 1e-14);

    for (int d = 2; d <= 4; ++d) {
        const double phi = 2.0 * rng.uniform() - 1.0;
        const Ket a = sample_sphere_cd(rng, d), b = sample_sphere_cd(rng, d);
        const double overlap = std::norm(a.dot(b));
        const double expect = ((d - phi) + (d * phi - 1.0) * overlap) / (static_cast<double>(d) * d * d - d);
        EXPECT_NEAR(born_joint(werner_phi(d, phi), projector(a), projector(b)), expect, 1e-12);
    }
    EXPECT_THROW(born_joint(singlet(), identity(3), identity(2)), Error);
}

TEST(measure, born_joint_sums_to_one_over_complete_measurements) {
    SampleRng rng(23, 0);
    for (int k = 0; k < 20; ++k) {
        const DensityMatrix rho(random_density_matrix(rng, 6), 2, 3);
        const Povm a = random_povm(rng, 2, 3), b = random_povm(rng, 3, 4);
        double total = 0.0;
        for (const auto& ma : a.elements())
            for (const auto& nb : b.elements()) total += born_joint(rho, ma, nb);
        EXPECT_NEAR(total, 1.0, 1e-9);
    }
}

TEST(measure, expectation_joint) {
    SampleRng rng(24, 0);
    for (int k = 0; k < 20; ++k) {
        const BlochVector x = sample_sphere_r3(rng), y = sample_sphere_r3(rng);
        const Observable A = obs_from_bloch(x), B = obs_from_bloch(y);
        EXPECT_NEAR(expectation_joint(singlet(), A, B), -x.dot(y), 1e-12);
        EXPECT_NEAR(expectation_joint(werner2x2(0.5), A, B), -x.dot(y) / 2.0, 1e-12);

        const DensityMatrix ra = DensityMatrix::local(random_density_matrix(rng, 2));
        const DensityMatrix rb = DensityMatrix::local(random_density_matrix(rng, 2));
        const double ea = trace_product_real(x.sigma(), ra.matrix()), eb = trace_product_real(y.sigma(), rb.matrix());
        EXPECT_NEAR(expectation_joint(tensor(ra, rb), A, B), ea * eb, 1e-12);

        const DensityMatrix rho(random_density_matrix(rng, 4), 2, 2);
        EXPECT_NEAR(expectation_joint(rho, A, B), expectation_trace(rho, A.matrix(), B.matrix()), 1e-10);
    }
}

TEST(measure, post_measurement_state) {
    SampleRng rng(25, 0);
    const Ket psi = sample_sphere_cd(rng, 4);
    const DensityMatrix pure = DensityMatrix::pure(psi, 2, 2);
    const MeasurementUpdate same = post_measurement_state(pure, projector(psi));
    ASSERT_TRUE(same.state.has_value());
    EXPECT_NEAR(same.probability, 1.0, 1e-12);
    EXPECT_LT(max_abs_diff(same.state->matrix(), pure.matrix()), 1e-12);

    Ket orth = sample_sphere_cd(rng, 4);
    orth -= psi.dot(orth) * psi;
    orth.normalize();
    const MeasurementUpdate none = post_measurement_state(pure, projector(orth));
    EXPECT_FALSE(none.state.has_value());
    EXPECT_EQ(none.probability, 0.0);

    // P (x) P on W_local(d): the unnormalized weight is tr(P (x) P W).
    for (int d = 3; d <= 6; ++d) {
        CMatrix p = CMatrix::Zero(d, d);
        p(0, 0) = p(1, 1) = 1.0;
        const DensityMatrix w = werner_local(d);
        const MeasurementUpdate u = post_measurement_state(w, tensor(p, p));
        ASSERT_TRUE(u.state.has_value());
        const double dd = d;
        EXPECT_NEAR(u.probability, born_joint(w, p, p), 1e-14);
        EXPECT_NEAR(u.probability, 4.0 / (dd * dd * dd) + 2.0 / (dd * dd), 1e-14);
    }
}

TEST(measure, projective_validation) {
    EXPECT_THROW(ProjectiveMeasurement({identity(2)}, {1.0, 2.0}), Error);
    EXPECT_THROW(ProjectiveMeasurement({identity(2), identity(2)}, {1.0, 2.0}), Error);
    EXPECT_THROW(Povm({identity(2) * 0.5, identity(2) * 0.4}, {0, 1}), Error);
    EXPECT_THROW(Povm({pauli_z() + identity(2) * 0.5, identity(2) * 0.5 - pauli_z()}, {0, 1}), Error);
}

TEST(measure, povm_refine_projective_is_itself) {
    SampleRng rng(26, 0);
    const ProjectiveMeasurement pm = random_basis_measurement(rng, 3);
    const RefinedPovm r = povm_refine(Povm(pm));
    ASSERT_EQ(r.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_NEAR(r.weights[k], 1.0, 1e-12);
        EXPECT_LT(max_abs_diff(r.povm.elements()[k], pm.projectors()[r.origin[k]]), 1e-12);
    }
}

TEST(measure, povm_refine_half_identity) {
    const Povm half({identity(2) / 2.0, identity(2) / 2.0}, {0, 1});
    const RefinedPovm r = povm_refine(half);
    ASSERT_EQ(r.size(), 4u);
    std::vector<int> per_origin(2, 0);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(r.weights[k], 0.5, 1e-14);
        ++per_origin[r.origin[k]];
    }
    EXPECT_EQ(per_origin[0], 2);
    EXPECT_EQ(per_origin[1], 2);
}

TEST(measure, povm_refine_invariants) {
    SampleRng rng(27, 0);
    for (int k = 0; k < 30; ++k) {
        const int d = 2 + k % 3;
        const Povm p = random_povm(rng, d, 2 + k % 4);
        const RefinedPovm r = povm_refine(p);
        double total = 0.0;
        CMatrix sum = CMatrix::Zero(d, d);
        for (std::size_t i = 0; i < r.size(); ++i) {
            EXPECT_GT(r.weights[i], 0.0);
            EXPECT_LE(r.weights[i], 1.0);
            EXPECT_NEAR(projector(r.vectors[i]).trace().real(), 1.0, 1e-10);
            total += r.weights[i];
            sum += r.povm.elements()[i];
        }
        EXPECT_NEAR(total, d, 1e-10);
        EXPECT_LT(max_abs_diff(sum, identity(d)), 1e-10);

        const DensityMatrix rho = DensityMatrix::local(random_density_matrix(rng, d));
        std::vector<double> coarse(p.size(), 0.0);
        for (std::size_t i = 0; i < r.size(); ++i) coarse[r.origin[i]] += born(rho, r.povm.elements()[i]);
        for (std::size_t a = 0; a < p.size(); ++a) EXPECT_NEAR(coarse[a], born(rho, p.elements()[a]), 1e-10);
    }
}

TEST(measure, povm_refine_drops_zero_weights) {
    const Povm p({projector(basis_ket(2, 0)), projector(basis_ket(2, 1))}, {7, 9});
    const RefinedPovm r = povm_refine(p);
    EXPECT_EQ(r.size(), 2u);
}
