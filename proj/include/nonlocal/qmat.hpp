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

// Dense complex linear algebra for small bipartite systems.
//
// Product-basis convention: |ab> has index a * dB + b (Alice is the slow
// index), so tensor(A, B) is the Kronecker product with A on the left.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace nonlocal {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Raised for inputs that violate a documented precondition.
class Error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Side { A, B };

namespace tol {
inline constexpr double hermitian = 1e-10;
inline constexpr double psd = 1e-9;
inline constexpr double trace = 1e-10;
inline constexpr double unit_norm = 1e-12;
}  // namespace tol

inline const cplx I_unit{0.0, 1.0};

inline CMatrix identity(int d) { return CMatrix::Identity(d, d); }

inline CMatrix pauli_x() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline CMatrix pauli_y() {
    CMatrix m(2, 2);
    m << 0, -I_unit, I_unit, 0;
    return m;
}

inline CMatrix pauli_z() {
    CMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

/// Pauli matrix by index 0 -> x, 1 -> y, 2 -> z.
inline CMatrix pauli(int n) {
    switch (n) {
        case 0: return pauli_x();
        case 1: return pauli_y();
        case 2: return pauli_z();
        default: throw Error("pauli index must be 0, 1 or 2");
    }
}

/// Computational basis vector |i> in C^d.
inline Ket basis_ket(int d, int i) {
    if (i < 0 || i >= d) throw Error("basis index out of range");
    Ket k = Ket::Zero(d);
    k(i) = 1.0;
    return k;
}

inline CMatrix projector(const Ket& v) { return v * v.adjoint(); }

inline CMatrix tensor(const CMatrix& a, const CMatrix& b) {
    const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    CMatrix out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i)
        for (Eigen::Index j = 0; j < ca; ++j)
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    return out;
}

inline Ket tensor(const Ket& a, const Ket& b) {
    Ket out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

/// Swap operator V|ij> = |ji> on C^d (x) C^d.
inline CMatrix flip(int d) {
    if (d < 2) throw Error("flip requires d >= 2");
    CMatrix v = CMatrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) v(j * d + i, i * d + j) = 1.0;
    return v;
}

namespace detail {
inline void check_bipartite(const CMatrix& m, int dA, int dB) {
    if (dA < 1 || dB < 1) throw Error("local dimensions must be positive");
    if (m.rows() != m.cols()) throw Error("matrix must be square");
    if (m.rows() != static_cast<Eigen::Index>(dA) * dB)
        throw Error("matrix dimension " + std::to_string(m.rows()) + " does not match dA*dB = " +
                    std::to_string(dA * dB));
}
}  // namespace detail

/// Reduced operator on the subsystem that is kept; `side` names the traced-out party.
inline CMatrix partial_trace(const CMatrix& m, int dA, int dB, Side side) {
    detail::check_bipartite(m, dA, dB);
    if (side == Side::B) {
        CMatrix out = CMatrix::Zero(dA, dA);
        for (int a = 0; a < dA; ++a)
            for (int ap = 0; ap < dA; ++ap)
                for (int b = 0; b < dB; ++b) out(a, ap) += m(a * dB + b, ap * dB + b);
        return out;
    }
    CMatrix out = CMatrix::Zero(dB, dB);
    for (int b = 0; b < dB; ++b)
        for (int bp = 0; bp < dB; ++bp)
            for (int a = 0; a < dA; ++a) out(b, bp) += m(a * dB + b, a * dB + bp);
    return out;
}

/// Transpose of the `side` tensor factor.
inline CMatrix partial_transpose(const CMatrix& m, int dA, int dB, Side side) {
    detail::check_bipartite(m, dA, dB);
    CMatrix out(m.rows(), m.cols());
    for (int a = 0; a < dA; ++a)
        for (int b = 0; b < dB; ++b)
            for (int ap = 0; ap < dA; ++ap)
                for (int bp = 0; bp < dB; ++bp) {
                    const cplx v = m(a * dB + b, ap * dB + bp);
                    if (side == Side::A)
                        out(ap * dB + b, a * dB + bp) = v;
                    else
                        out(a * dB + bp, ap * dB + b) = v;
                }
    return out;
}

inline double hermiticity_defect(const CMatrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // descending
    std::vector<Ket> eigenvectors;

    double min() const { return eigenvalues.back(); }
    double max() const { return eigenvalues.front(); }
};

/// Spectral decomposition of a Hermitian matrix. Degenerate eigenspaces come
/// back with an arbitrary orthonormal basis.
inline EigenDecomposition hermitian_eig(const CMatrix& m) {
    if (m.rows() == 0 || m.rows() != m.cols()) throw Error("hermitian_eig needs a square matrix");
    if (hermiticity_defect(m) > tol::hermitian) throw Error("hermitian_eig: matrix is not Hermitian");
    const CMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success) throw Error("hermitian_eig: eigensolver failed");
    EigenDecomposition out;
    const Eigen::Index n = h.rows();
    out.eigenvalues.reserve(n);
    out.eigenvectors.reserve(n);
    // Eigen sorts ascending.
    for (Eigen::Index k = n - 1; k >= 0; --k) {
        out.eigenvalues.push_back(solver.eigenvalues()(k));
        out.eigenvectors.push_back(solver.eigenvectors().col(k));
    }
    return out;
}

inline double min_eigenvalue(const CMatrix& m) { return hermitian_eig(m).min(); }

struct DensityCheck {
    bool ok = false;
    double hermiticity_defect = 0.0;
    double min_eigenvalue = 0.0;
    double trace_defect = 0.0;
    std::string reason;

    explicit operator bool() const { return ok; }
};

inline DensityCheck is_density(const CMatrix& m) {
    DensityCheck c;
    if (m.rows() == 0 || m.rows() != m.cols()) {
        c.reason = "not square";
        return c;
    }
    c.hermiticity_defect = hermiticity_defect(m);
    c.trace_defect = std::abs(m.trace() - cplx(1.0));
    if (c.hermiticity_defect > tol::hermitian) {
        c.reason = "not Hermitian";
        return c;
    }
    c.min_eigenvalue = min_eigenvalue(m);
    if (c.min_eigenvalue < -tol::psd) {
        c.reason = "negative eigenvalue";
        return c;
    }
    if (c.trace_defect > tol::trace) {
        c.reason = "trace differs from 1";
        return c;
    }
    c.ok = true;
    return c;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
    return (a - b).cwiseAbs().maxCoeff();
}

/// Real part of tr(a b) without forming the product.
inline double trace_product_real(const CMatrix& a, const CMatrix& b) {
    return (a.transpose().cwiseProduct(b)).sum().real();
}

}  // namespace nonlocal
