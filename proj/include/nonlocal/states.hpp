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

// Named bipartite states, the flip witness, analytic twirling and the
// state-lifting map used to extend projective models to POVMs.

#include "nonlocal/qmat.hpp"

#include <cmath>
#include <utility>

namespace nonlocal {

/// Positive unit-trace operator on C^dA (x) C^dB.
class DensityMatrix {
public:
    DensityMatrix(CMatrix m, int dA, int dB) : m_(std::move(m)), dA_(dA), dB_(dB) {
        detail::check_bipartite(m_, dA_, dB_);
        const DensityCheck c = is_density(m_);
        if (!c) throw Error("not a density matrix: " + c.reason);
        m_ = 0.5 * (m_ + m_.adjoint());
    }

    /// Single-party state (dB = 1).
    static DensityMatrix local(CMatrix m) {
        const int d = static_cast<int>(m.rows());
        return DensityMatrix(std::move(m), d, 1);
    }

    static DensityMatrix pure(const Ket& psi, int dA, int dB) { return DensityMatrix(projector(psi), dA, dB); }

    const CMatrix& matrix() const { return m_; }
    int dA() const { return dA_; }
    int dB() const { return dB_; }
    int dim() const { return dA_ * dB_; }

    DensityMatrix reduced(Side keep) const {
        const CMatrix r = keep == Side::A ? partial_trace(m_, dA_, dB_, Side::B) : partial_trace(m_, dA_, dB_, Side::A);
        return local(r);
    }

    /// Swap the two parties.
    DensityMatrix swapped() const {
        CMatrix s(dim(), dim());
        for (int a = 0; a < dA_; ++a)
            for (int b = 0; b < dB_; ++b)
                for (int ap = 0; ap < dA_; ++ap)
                    for (int bp = 0; bp < dB_; ++bp) s(b * dA_ + a, bp * dA_ + ap) = m_(a * dB_ + b, ap * dB_ + bp);
        return DensityMatrix(s, dB_, dA_);
    }

private:
    CMatrix m_;
    int dA_;
    int dB_;
};

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(tensor(a.matrix(), b.matrix()), a.dim(), b.dim());
}

inline Ket singlet_ket() {
    Ket psi = Ket::Zero(4);
    psi(1) = 1.0 / std::sqrt(2.0);
    psi(2) = -1.0 / std::sqrt(2.0);
    return psi;
}

/// |Psi-><Psi-| with |Psi-> = (|01> - |10>)/sqrt(2).
inline DensityMatrix singlet() { return DensityMatrix::pure(singlet_ket(), 2, 2); }

inline DensityMatrix maximally_mixed(int dA, int dB) {
    return DensityMatrix(identity(dA * dB) / static_cast<double>(dA * dB), dA, dB);
}

/// Werner state with tr(VW) = phi: ((d - phi) I + (d phi - 1) V) / (d^3 - d).
inline DensityMatrix werner_phi(int d, double phi) {
    if (d < 2) throw Error("werner_phi: d must be >= 2");
    if (!(std::abs(phi) <= 1.0)) throw Error("werner_phi: phi must lie in [-1, 1]");
    const double dd = d;
    const double norm = dd * dd * dd - dd;
    CMatrix w = ((dd - phi) / norm) * identity(d * d) + ((dd * phi - 1.0) / norm) * flip(d);
    return DensityMatrix(std::move(w), d, d);
}

/// phi = -1 + (1 + d) / d^2, the Werner state with a local model for projective measurements.
inline double werner_local_phi(int d) {
    const double dd = d;
    return -1.0 + (1.0 + dd) / (dd * dd);
}

inline DensityMatrix werner_local(int d) {
    if (d < 2) throw Error("werner_local: d must be >= 2");
    return werner_phi(d, werner_local_phi(d));
}

/// alpha |Psi-><Psi-| + (1 - alpha) I/4.
inline DensityMatrix werner2x2(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error("werner2x2: alpha must lie in [0, 1]");
    CMatrix m = alpha * projector(singlet_ket()) + (1.0 - alpha) * identity(4) / 4.0;
    return DensityMatrix(std::move(m), 2, 2);
}

/// Projector onto the antisymmetric subspace, sum_{i<j} |S_ij><S_ij| = (I - V)/2.
inline CMatrix antisymmetric_projector(int d) {
    CMatrix p = CMatrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            Ket s = Ket::Zero(d * d);
            s(i * d + j) = 1.0 / std::sqrt(2.0);
            s(j * d + i) = -1.0 / std::sqrt(2.0);
            p += projector(s);
        }
    return p;
}

/// alpha = (d-1)^(d-1) (3d-1) / ((d+1) d^d)
inline double barrett_alpha(int d) {
    const double dd = d;
    return std::pow(dd - 1.0, dd - 1.0) * (3.0 * dd - 1.0) / ((dd + 1.0) * std::pow(dd, dd));
}

inline DensityMatrix barrett_state(int d) {
    if (d < 2) throw Error("barrett_state: d must be >= 2");
    const double alpha = barrett_alpha(d);
    const double dd = d;
    CMatrix m = alpha * (2.0 / (dd * (dd - 1.0))) * antisymmetric_projector(d) +
                (1.0 - alpha) * identity(d * d) / (dd * dd);
    return DensityMatrix(std::move(m), d, d);
}

/// q |Psi-><Psi-| + (1 - q) |0><0| (x) I/2.
inline DensityMatrix rho_G(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw Error("rho_G: q must lie in [0, 1]");
    const CMatrix zero = projector(basis_ket(2, 0));
    CMatrix m = q * projector(singlet_ket()) + (1.0 - q) * tensor(zero, identity(2) / 2.0);
    return DensityMatrix(std::move(m), 2, 2);
}

/// q |Psi-><Psi-| + (1 - q) |2><2| (x) I/2 on C^3 (x) C^2; the singlet lives in span{|0>,|1>} of the qutrit.
inline DensityMatrix rho_E(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw Error("rho_E: q must lie in [0, 1]");
    Ket psi = Ket::Zero(6);
    psi(0 * 2 + 1) = 1.0 / std::sqrt(2.0);
    psi(1 * 2 + 0) = -1.0 / std::sqrt(2.0);
    const CMatrix two = projector(basis_ket(3, 2));
    CMatrix m = q * projector(psi) + (1.0 - q) * tensor(two, identity(2) / 2.0);
    return DensityMatrix(std::move(m), 3, 2);
}

/// Isometric embedding of each party into a larger local space (new basis
/// vectors are appended after the existing ones).
inline DensityMatrix embed(const DensityMatrix& rho, int newA, int newB) {
    if (newA < rho.dA() || newB < rho.dB()) throw Error("embed: target dimensions must not shrink");
    const CMatrix ea = CMatrix::Identity(newA, rho.dA());
    const CMatrix eb = CMatrix::Identity(newB, rho.dB());
    const CMatrix e = tensor(ea, eb);
    return DensityMatrix(e * rho.matrix() * e.adjoint(), newA, newB);
}

/// Compression to the span of the first kA (resp. kB) basis vectors of each
/// party, renormalized. The state must be supported there.
inline DensityMatrix restrict_to(const DensityMatrix& rho, int kA, int kB) {
    if (kA > rho.dA() || kB > rho.dB() || kA < 1 || kB < 1) throw Error("restrict_to: bad block size");
    const CMatrix e = tensor(CMatrix(CMatrix::Identity(kA, rho.dA())), CMatrix(CMatrix::Identity(kB, rho.dB())));
    CMatrix block = e * rho.matrix() * e.adjoint();
    const double tr = block.trace().real();
    if (std::abs(tr - 1.0) > 1e-10) throw Error("restrict_to: state has weight outside the block");
    return DensityMatrix(block / tr, kA, kB);
}

/// tr(V rho) for dA = dB.
inline double flip_witness(const DensityMatrix& rho) {
    if (rho.dA() != rho.dB()) throw Error("flip_witness requires dA == dB");
    return trace_product_real(flip(rho.dA()), rho.matrix());
}

/// Projection onto span{I, V} keeping trace and tr(V .): the image is the
/// Werner state with phi = tr(V a).
inline DensityMatrix twirl(const CMatrix& a, int d) {
    const DensityMatrix rho(a, d, d);
    double phi = flip_witness(rho);
    phi = std::clamp(phi, -1.0, 1.0);
    return werner_phi(d, phi);
}

/// [rho0 + (d-1)(rhoA (x) sigmaB + sigmaA (x) rhoB) + (d-1)^2 sigmaA (x) sigmaB] / d^2
inline DensityMatrix lift_state(const DensityMatrix& rho0, const DensityMatrix& sigmaA, const DensityMatrix& sigmaB) {
    const int d = rho0.dA();
    if (rho0.dB() != d) throw Error("lift_state: rho0 must have equal local dimensions");
    if (sigmaA.dim() != d || sigmaB.dim() != d) throw Error("lift_state: sigma dimensions must equal d");
    const CMatrix rA = partial_trace(rho0.matrix(), d, d, Side::B);
    const CMatrix rB = partial_trace(rho0.matrix(), d, d, Side::A);
    const double dm1 = d - 1.0;
    CMatrix m = rho0.matrix() + dm1 * (tensor(rA, sigmaB.matrix()) + tensor(sigmaA.matrix(), rB)) +
                dm1 * dm1 * tensor(sigmaA.matrix(), sigmaB.matrix());
    m /= static_cast<double>(d) * d;
    return DensityMatrix(std::move(m), d, d);
}

/// Local pure state |i><i| on C^d.
inline DensityMatrix basis_state(int d, int i) { return DensityMatrix::local(projector(basis_ket(d, i))); }

/// lift_state(rho_G(q), |0><0|, |0><0|).
inline DensityMatrix rho_G_prime(double q) { return lift_state(rho_G(q), basis_state(2, 0), basis_state(2, 0)); }

/// rho_E with Bob embedded in a qutrit, lifted with sigma_A = sigma_B = |2><2|.
inline DensityMatrix rho_E_lift(double q) {
    return lift_state(embed(rho_E(q), 3, 3), basis_state(3, 2), basis_state(3, 2));
}

}  // namespace nonlocal
