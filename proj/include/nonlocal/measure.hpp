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

// Observables, projective measurements, POVMs and the Born rule.

#include "nonlocal/bloch.hpp"
#include "nonlocal/qmat.hpp"
#include "nonlocal/random.hpp"
#include "nonlocal/states.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace nonlocal {

inline void require_same_length(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw Error(std::string(what) + ": element and label counts differ");
}

/// Orthogonal projectors summing to the identity, with real outcome labels.
class ProjectiveMeasurement {
public:
    ProjectiveMeasurement(std::vector<CMatrix> projectors, std::vector<double> labels)
        : projectors_(std::move(projectors)), labels_(std::move(labels)) {
        require_same_length(projectors_.size(), labels_.size(), "ProjectiveMeasurement");
        if (projectors_.empty()) throw Error("ProjectiveMeasurement: no projectors");
        const Eigen::Index d = projectors_.front().rows();
        CMatrix sum = CMatrix::Zero(d, d);
        for (std::size_t i = 0; i < projectors_.size(); ++i) {
            if (projectors_[i].rows() != d || projectors_[i].cols() != d)
                throw Error("ProjectiveMeasurement: inconsistent dimensions");
            for (std::size_t j = 0; j < projectors_.size(); ++j) {
                const CMatrix prod = projectors_[i] * projectors_[j];
                const CMatrix expect = i == j ? projectors_[i] : CMatrix::Zero(d, d);
                if (max_abs_diff(prod, expect) > 1e-10) throw Error("ProjectiveMeasurement: projectors not orthogonal");
            }
            sum += projectors_[i];
        }
        if (max_abs_diff(sum, identity(static_cast<int>(d))) > 1e-10)
            throw Error("ProjectiveMeasurement: projectors do not sum to the identity");
    }

    /// Rank-1 measurement in an orthonormal basis, labels 0..d-1.
    static ProjectiveMeasurement from_basis(const std::vector<Ket>& basis) {
        std::vector<CMatrix> p;
        std::vector<double> l;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            p.push_back(projector(basis[i]));
            l.push_back(static_cast<double>(i));
        }
        return {std::move(p), std::move(l)};
    }

    /// Columns of a unitary as the measurement basis.
    static ProjectiveMeasurement from_unitary(const CMatrix& u) {
        std::vector<Ket> basis;
        for (Eigen::Index j = 0; j < u.cols(); ++j) basis.push_back(u.col(j));
        return from_basis(basis);
    }

    /// Dichotomic {P, I - P} with labels 1 (P) and 0.
    static ProjectiveMeasurement dichotomic(const CMatrix& p) {
        return {{p, identity(static_cast<int>(p.rows())) - p}, {1.0, 0.0}};
    }

    const std::vector<CMatrix>& projectors() const { return projectors_; }
    const std::vector<double>& labels() const { return labels_; }
    std::size_t size() const { return projectors_.size(); }
    int dim() const { return static_cast<int>(projectors_.front().rows()); }

    /// Orthonormal vectors spanning each projector's range, tagged with the projector index.
    std::vector<std::pair<Ket, std::size_t>> rank_one_refinement() const {
        std::vector<std::pair<Ket, std::size_t>> out;
        for (std::size_t i = 0; i < projectors_.size(); ++i) {
            const EigenDecomposition e = hermitian_eig(projectors_[i]);
            for (std::size_t k = 0; k < e.eigenvalues.size(); ++k)
                if (e.eigenvalues[k] > 0.5) out.emplace_back(e.eigenvectors[k], i);
        }
        return out;
    }

private:
    std::vector<CMatrix> projectors_;
    std::vector<double> labels_;
};

/// Positive operators summing to the identity; labels are opaque identifiers.
class Povm {
public:
    Povm(std::vector<CMatrix> elements, std::vector<int> labels)
        : elements_(std::move(elements)), labels_(std::move(labels)) {
        require_same_length(elements_.size(), labels_.size(), "Povm");
        if (elements_.empty()) throw Error("Povm: no elements");
        const Eigen::Index d = elements_.front().rows();
        CMatrix sum = CMatrix::Zero(d, d);
        for (const CMatrix& e : elements_) {
            if (e.rows() != d || e.cols() != d) throw Error("Povm: inconsistent dimensions");
            if (hermiticity_defect(e) > tol::hermitian) throw Error("Povm: element not Hermitian");
            if (min_eigenvalue(e) < -tol::psd) throw Error("Povm: element not positive");
            sum += e;
        }
        if (max_abs_diff(sum, identity(static_cast<int>(d))) > 1e-10) throw Error("Povm: elements do not sum to I");
    }

    explicit Povm(const ProjectiveMeasurement& pm) : Povm(pm.projectors(), index_labels(pm.size())) {}

    const std::vector<CMatrix>& elements() const { return elements_; }
    const std::vector<int>& labels() const { return labels_; }
    std::size_t size() const { return elements_.size(); }
    int dim() const { return static_cast<int>(elements_.front().rows()); }

private:
    static std::vector<int> index_labels(std::size_t n) {
        std::vector<int> l(n);
        for (std::size_t i = 0; i < n; ++i) l[i] = static_cast<int>(i);
        return l;
    }

    std::vector<CMatrix> elements_;
    std::vector<int> labels_;
};

class Observable {
public:
    explicit Observable(CMatrix m) : m_(std::move(m)), pm_(spectral_measurement(m_)) {}
    Observable(CMatrix m, ProjectiveMeasurement pm) : m_(std::move(m)), pm_(std::move(pm)) {}

    const CMatrix& matrix() const { return m_; }
    const ProjectiveMeasurement& measurement() const { return pm_; }

private:
    static ProjectiveMeasurement spectral_measurement(const CMatrix& m) {
        const EigenDecomposition e = hermitian_eig(m);
        std::vector<CMatrix> proj;
        std::vector<double> labels;
        for (std::size_t k = 0; k < e.eigenvalues.size(); ++k) {
            if (!labels.empty() && std::abs(labels.back() - e.eigenvalues[k]) < 1e-9) {
                proj.back() += projector(e.eigenvectors[k]);
            } else {
                labels.push_back(e.eigenvalues[k]);
                proj.push_back(projector(e.eigenvectors[k]));
            }
        }
        return {std::move(proj), std::move(labels)};
    }

    CMatrix m_;
    ProjectiveMeasurement pm_;
};

/// v.sigma with outcomes +1, -1 and projectors (I +- v.sigma)/2.
inline Observable obs_from_bloch(const BlochVector& v) {
    if (!v.is_unit()) throw Error("obs_from_bloch: vector is not unit");
    const CMatrix s = v.sigma();
    const CMatrix i2 = identity(2);
    return Observable(s, ProjectiveMeasurement({(i2 + s) / 2.0, (i2 - s) / 2.0}, {1.0, -1.0}));
}

/// tr(rho ma (x) nb), clamped to [0, 1] after a 1e-10 range check.
inline double born_joint(const DensityMatrix& rho, const CMatrix& ma, const CMatrix& nb) {
    if (ma.rows() != rho.dA() || nb.rows() != rho.dB()) throw Error("born_joint: operator dimensions mismatch");
    const double p = trace_product_real(tensor(ma, nb), rho.matrix());
    if (p < -1e-10 || p > 1.0 + 1e-10) throw Error("born_joint: probability out of range (non-positive operator?)");
    return std::clamp(p, 0.0, 1.0);
}

/// tr(rho m) for a single-party state.
inline double born(const DensityMatrix& rho, const CMatrix& m) {
    const double p = trace_product_real(m, rho.matrix());
    return std::clamp(p, 0.0, 1.0);
}

/// sum_{a,b} a b p(a,b).
inline double expectation_joint(const DensityMatrix& rho, const Observable& A, const Observable& B) {
    const auto& pa = A.measurement();
    const auto& pb = B.measurement();
    double e = 0.0;
    for (std::size_t i = 0; i < pa.size(); ++i)
        for (std::size_t j = 0; j < pb.size(); ++j)
            e += pa.labels()[i] * pb.labels()[j] * born_joint(rho, pa.projectors()[i], pb.projectors()[j]);
    return e;
}

/// tr(rho A (x) B), the trace route for the same quantity.
inline double expectation_trace(const DensityMatrix& rho, const CMatrix& A, const CMatrix& B) {
    return trace_product_real(tensor(A, B), rho.matrix());
}

struct MeasurementUpdate {
    std::optional<DensityMatrix> state;  // empty when the outcome has probability 0
    double probability = 0.0;
};

/// M rho M^dag / tr(M rho M^dag) for an operator on the full space.
inline MeasurementUpdate post_measurement_state(const DensityMatrix& rho, const CMatrix& m) {
    if (m.rows() != rho.dim() || m.cols() != rho.dim()) throw Error("post_measurement_state: dimension mismatch");
    const CMatrix un = m * rho.matrix() * m.adjoint();
    const double p = un.trace().real();
    MeasurementUpdate out;
    out.probability = std::clamp(p, 0.0, 1.0);
    if (p <= 1e-12) {
        out.probability = 0.0;
        return out;
    }
    out.state.emplace(un / p, rho.dA(), rho.dB());
    return out;
}

/// POVM whose elements are weight * |v><v| with weight in (0, 1].
struct RefinedPovm {
    Povm povm;
    std::vector<double> weights;
    std::vector<Ket> vectors;
    std::vector<std::size_t> origin;  // index of the coarse element each refined one came from

    std::size_t size() const { return weights.size(); }
};

/// Splits every element into its spectral rank-1 pieces, dropping eigenvalues below 1e-12.
inline RefinedPovm povm_refine(const Povm& povm) {
    std::vector<CMatrix> elems;
    std::vector<int> labels;
    std::vector<double> weights;
    std::vector<Ket> vectors;
    std::vector<std::size_t> origin;
    for (std::size_t i = 0; i < povm.size(); ++i) {
        const EigenDecomposition e = hermitian_eig(povm.elements()[i]);
        for (std::size_t k = 0; k < e.eigenvalues.size(); ++k) {
            const double w = e.eigenvalues[k];
            if (w < 1e-12) continue;
            const double wc = std::min(w, 1.0);
            weights.push_back(wc);
            vectors.push_back(e.eigenvectors[k]);
            origin.push_back(i);
            elems.push_back(wc * projector(e.eigenvectors[k]));
            labels.push_back(static_cast<int>(labels.size()));
        }
    }
    return RefinedPovm{Povm(std::move(elems), std::move(labels)), std::move(weights), std::move(vectors),
                       std::move(origin)};
}

/// Random k-outcome POVM on C^d: S^{-1/2} G_i S^{-1/2} with Hilbert-Schmidt random G_i.
inline Povm random_povm(SampleRng& rng, int d, int k) {
    std::vector<CMatrix> g;
    CMatrix s = CMatrix::Zero(d, d);
    for (int i = 0; i < k; ++i) {
        g.push_back(random_density_matrix(rng, d));
        s += g.back();
    }
    const EigenDecomposition e = hermitian_eig(s);
    CMatrix s_inv_half = CMatrix::Zero(d, d);
    for (std::size_t j = 0; j < e.eigenvalues.size(); ++j)
        s_inv_half += projector(e.eigenvectors[j]) / std::sqrt(e.eigenvalues[j]);
    std::vector<CMatrix> elems;
    std::vector<int> labels;
    for (int i = 0; i < k; ++i) {
        CMatrix m = s_inv_half * g[i] * s_inv_half;
        elems.push_back(0.5 * (m + m.adjoint()));
        labels.push_back(i);
    }
    return Povm(std::move(elems), std::move(labels));
}

/// Random rank-1 projective measurement on C^d.
inline ProjectiveMeasurement random_basis_measurement(SampleRng& rng, int d) {
    return ProjectiveMeasurement::from_unitary(random_unitary(rng, d));
}

}  // namespace nonlocal
