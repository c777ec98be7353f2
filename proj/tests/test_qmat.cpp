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


#include "nonlocal/qmat.hpp"

#include "gtest/gtest.h"
#include "oracles.hpp"

#include "nonlocal/random.hpp"
#include "nonlocal/states.hpp"

using namespace nonlocal;
using nonlocal::testing::random_complex;
using nonlocal::testing::random_hermitian;

TEST(qmat, tensor_identity) { EXPECT_LT(max_abs_diff(tensor(identity(2), identity(2)), identity(4)), 1e-15); }

TEST(qmat, tensor_entry_layout_matches_product_kets) {
    SampleRng rng(1, 0);
    const CMatrix a = random_complex(rng, 2), b = random_complex(rng, 3);
    const CMatrix t = tensor(a, b);
    for (int i = 0; i < 2; ++i)
        for (int bi = 0; bi < 3; ++bi)
            for (int j = 0; j < 2; ++j)
                for (int bj = 0; bj < 3; ++bj) {
                    const Ket l = tensor(basis_ket(2, i), basis_ket(3, bi));
                    const Ket r = tensor(basis_ket(2, j), basis_ket(3, bj));
                    EXPECT_LT(std::abs(l.dot(t * r) - a(i, j) * b(bi, bj)), 1e-12);
                }
}

TEST(qmat, trace_of_tensor_is_product_of_traces) {
    SampleRng rng(2, 0);
    for (int k = 0; k < 20; ++k) {
        const CMatrix a = random_complex(rng, 3), b = random_complex(rng, 3);
        EXPECT_LT(std::abs(tensor(a, b).trace() - a.trace() * b.trace()), 1e-11);
    }
}

TEST(qmat, zz_on_01) {
    const Ket v = tensor(basis_ket(2, 0), basis_ket(2, 1));
    EXPECT_LT((tensor(pauli_z(), pauli_z()) * v + v).norm(), 1e-15);
}

TEST(qmat, tensor_associative_and_bilinear) {
    SampleRng rng(3, 0);
    for (int k = 0; k < 10; ++k) {
        const CMatrix a = random_complex(rng, 2), b = random_complex(rng, 3), c = random_complex(rng, 2);
        const CMatrix a2 = random_complex(rng, 2);
        const cplx s(rng.normal(), rng.normal());
        EXPECT_LT(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))), 1e-12);
        EXPECT_LT(max_abs_diff(tensor(a + s * a2, b), tensor(a, b) + s * tensor(a2, b)), 1e-12);
        EXPECT_LT(max_abs_diff(tensor(a, s * b), s * tensor(a, b)), 1e-12);
    }
}

TEST(qmat, flip_properties) {
    for (int d = 2; d <= 5; ++d) {
        const CMatrix v = flip(d);
        EXPECT_EQ(max_abs_diff(v * v, identity(d * d)), 0.0);
        EXPECT_EQ(max_abs_diff(v, v.adjoint()), 0.0);
    }
    EXPECT_NEAR(flip(3).trace().real(), 3.0, 1e-15);
    const Ket k01 = tensor(basis_ket(2, 0), basis_ket(2, 1));
    const Ket k10 = tensor(basis_ket(2, 1), basis_ket(2, 0));
    EXPECT_LT((flip(2) * k01 - k10).norm(), 1e-15);
    EXPECT_THROW(flip(1), Error);
}

TEST(qmat, flip_trace_identity) {
    SampleRng rng(4, 0);
    for (int k = 0; k < 20; ++k) {
        const CMatrix a = random_complex(rng, 2), b = random_complex(rng, 2);
        EXPECT_LT(std::abs((flip(2) * tensor(a, b)).trace() - (a * b).trace()), 1e-12);
    }
}

TEST(qmat, partial_trace_singlet_and_products) {
    EXPECT_LT(max_abs_diff(partial_trace(singlet().matrix(), 2, 2, Side::B), identity(2) / 2.0), 1e-15);
    SampleRng rng(5, 0);
    for (int k = 0; k < 20; ++k) {
        const CMatrix a = random_complex(rng, 2), b = random_complex(rng, 3);
        EXPECT_LT(max_abs_diff(partial_trace(tensor(a, b), 2, 3, Side::B), b.trace() * a), 1e-12);
        EXPECT_LT(max_abs_diff(partial_trace(tensor(a, b), 2, 3, Side::A), a.trace() * b), 1e-12);
        const CMatrix m = random_complex(rng, 6);
        EXPECT_LT(max_abs_diff(partial_trace(m, 2, 3, Side::B), nonlocal::testing::brute_partial_trace_B(m, 2, 3)),
                  1e-12);
        EXPECT_LT(std::abs(partial_trace(m, 2, 3, Side::A).trace() - m.trace()), 1e-12);
    }
}

TEST(qmat, partial_trace_rho_G) {
    const double q = 0.3;
    CMatrix expect = q * identity(2) / 2.0;
    expect(0, 0) += 1.0 - q;
    EXPECT_LT(max_abs_diff(partial_trace(rho_G(q).matrix(), 2, 2, Side::B), expect), 1e-15);
}

TEST(qmat, partial_trace_dimension_mismatch) {
    EXPECT_THROW(partial_trace(identity(5), 2, 2, Side::B), Error);
    EXPECT_THROW(partial_transpose(identity(5), 2, 3, Side::A), Error);
}

TEST(qmat, partial_transpose) {
    EXPECT_NEAR(min_eigenvalue(partial_transpose(singlet().matrix(), 2, 2, Side::B)), -0.5, 1e-12);
    EXPECT_NEAR(min_eigenvalue(partial_transpose(singlet().matrix(), 2, 2, Side::A)), -0.5, 1e-12);
    EXPECT_LT(min_eigenvalue(partial_transpose(rho_G(0.2).matrix(), 2, 2, Side::B)), -1e-3);

    SampleRng rng(6, 0);
    const CMatrix r = random_density_matrix(rng, 2), s = random_density_matrix(rng, 3);
    const EigenDecomposition lhs = hermitian_eig(partial_transpose(tensor(r, s), 2, 3, Side::B));
    const EigenDecomposition rhs = hermitian_eig(tensor(r, CMatrix(s.transpose())));
    for (std::size_t k = 0; k < lhs.eigenvalues.size(); ++k) EXPECT_NEAR(lhs.eigenvalues[k], rhs.eigenvalues[k], 1e-12);

    const CMatrix h = random_hermitian(rng, 6);
    EXPECT_LT(hermiticity_defect(partial_transpose(h, 2, 3, Side::A)), 1e-15);
}

TEST(qmat, hermitian_eig_examples) {
    const EigenDecomposition e = hermitian_eig(pauli_x());
    EXPECT_NEAR(e.eigenvalues[0], 1.0, 1e-14);
    EXPECT_NEAR(e.eigenvalues[1], -1.0, 1e-14);
    const Ket plus = (basis_ket(2, 0) + basis_ket(2, 1)) / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(plus.dot(e.eigenvectors[0])), 1.0, 1e-12);

    for (double v : hermitian_eig(identity(4)).eigenvalues) EXPECT_NEAR(v, 1.0, 1e-15);

    SampleRng rng(7, 0);
    for (int k = 0; k < 20; ++k) {
        const BlochVector v = sample_sphere_r3(rng);
        const EigenDecomposition ev = hermitian_eig(v.sigma());
        EXPECT_NEAR(ev.eigenvalues[0], 1.0, 1e-12);
        EXPECT_NEAR(ev.eigenvalues[1], -1.0, 1e-12);
    }
    EXPECT_THROW(hermitian_eig(random_complex(rng, 3)), Error);
}

TEST(qmat, hermitian_eig_reconstruction_and_orthonormality) {
    SampleRng rng(8, 0);
    for (int n : {2, 4, 9, 16, 36}) {
        const CMatrix h = random_hermitian(rng, n);
        const EigenDecomposition e = hermitian_eig(h);
        CMatrix rec = CMatrix::Zero(n, n);
        for (int k = 0; k < n; ++k) {
            rec += e.eigenvalues[k] * projector(e.eigenvectors[k]);
            if (k > 0) EXPECT_GE(e.eigenvalues[k - 1], e.eigenvalues[k]);
            for (int l = 0; l < n; ++l)
                EXPECT_LT(std::abs(e.eigenvectors[k].dot(e.eigenvectors[l]) - (k == l ? 1.0 : 0.0)), 1e-10);
        }
        EXPECT_LT(max_abs_diff(rec, h), 1e-10);
    }
}

TEST(qmat, degenerate_basis_choice_does_not_matter) {
    // Rotating a degenerate eigenspace must leave the reconstructed spectral projector unchanged.
    SampleRng rng(9, 0);
    const CMatrix u = random_unitary(rng, 4);
    CMatrix diag = CMatrix::Zero(4, 4);
    diag(0, 0) = 2.0;
    diag(1, 1) = 2.0;
    diag(2, 2) = -1.0;
    diag(3, 3) = 0.5;
    const CMatrix h = u * diag * u.adjoint();
    const EigenDecomposition e = hermitian_eig(h);
    const CMatrix p2 = projector(e.eigenvectors[0]) + projector(e.eigenvectors[1]);
    const CMatrix p2_expected = u.col(0) * u.col(0).adjoint() + u.col(1) * u.col(1).adjoint();
    EXPECT_LT(max_abs_diff(p2, p2_expected), 1e-10);
}

TEST(qmat, is_density) {
    EXPECT_TRUE(is_density(identity(2) / 2.0));
    const DensityCheck z = is_density(pauli_z());
    EXPECT_FALSE(z);
    EXPECT_EQ(z.reason, "negative eigenvalue");
    EXPECT_TRUE(is_density(werner_phi(3, -5.0 / 9.0).matrix()));
    EXPECT_FALSE(is_density(identity(2)));
    EXPECT_FALSE(is_density(pauli_y() + identity(2)));
}
