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

// CHSH values, the correlation matrix T, the Horodecki quantity M(rho) and
// settings that attain 2 sqrt(M(rho)).

#include "nonlocal/bloch.hpp"
#include "nonlocal/measure.hpp"
#include "nonlocal/states.hpp"

#include <array>
#include <cmath>

namespace nonlocal {

/// Alice measures x or x', Bob y or y'.
struct ChshSettings {
    BlochVector x, xp, y, yp;

    bool valid() const { return x.is_unit(1e-9) && xp.is_unit(1e-9) && y.is_unit(1e-9) && yp.is_unit(1e-9); }
};

/// Settings giving 2 sqrt(2) on the singlet: x = z, x' = X, y = -(X + Z)/sqrt2, y' = (-X + Z)/sqrt2.
inline ChshSettings textbook_settings() {
    const double h = 1.0 / std::sqrt(2.0);
    return {{0, 0, 1}, {1, 0, 0}, {-h, 0, -h}, {-h, 0, h}};
}

/// E(x,y) + E(x',y) + E(x',y') - E(x,y') on a two-qubit state.
inline double chsh_value(const DensityMatrix& rho, const ChshSettings& s) {
    if (rho.dA() != 2 || rho.dB() != 2) throw Error("chsh_value requires a two-qubit state");
    if (!s.valid()) throw Error("chsh_value: settings must be unit vectors");
    const auto e = [&](const BlochVector& a, const BlochVector& b) {
        return expectation_joint(rho, obs_from_bloch(a), obs_from_bloch(b));
    };
    return e(s.x, s.y) + e(s.xp, s.y) + e(s.xp, s.yp) - e(s.x, s.yp);
}

/// t[n][m] = tr(rho sigma_n (x) sigma_m).
struct CorrelationMatrix {
    Eigen::Matrix3d t;

    /// a^T T b = E(a.sigma (x) b.sigma)
    double correlation(const BlochVector& a, const BlochVector& b) const {
        const Eigen::Vector3d va(a.x, a.y, a.z), vb(b.x, b.y, b.z);
        return va.dot(t * vb);
    }
};

inline CorrelationMatrix correlation_matrix(const DensityMatrix& rho) {
    if (rho.dA() != 2 || rho.dB() != 2) throw Error("correlation_matrix requires a two-qubit state");
    CorrelationMatrix c;
    for (int n = 0; n < 3; ++n)
        for (int m = 0; m < 3; ++m) c.t(n, m) = trace_product_real(tensor(pauli(n), pauli(m)), rho.matrix());
    return c;
}

struct ChshResult {
    double value = 0.0;  // CHSH value at `settings`
    double m_rho = 0.0;
    ChshSettings settings;
    std::array<double, 2> eigen_pair{0.0, 0.0};  // two largest eigenvalues of T^T T

    double bound() const { return 2.0 * std::sqrt(std::max(m_rho, 0.0)); }
    bool violates() const { return m_rho > 1.0 + 1e-12; }
};

namespace detail {
struct TopTwo {
    double u, u_tilde;
    Eigen::Vector3d z, zp;
};

inline TopTwo top_two(const CorrelationMatrix& c) {
    const Eigen::Matrix3d u = c.t.transpose() * c.t;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(u);
    // ascending
    return {std::max(es.eigenvalues()(2), 0.0), std::max(es.eigenvalues()(1), 0.0), es.eigenvectors().col(2),
            es.eigenvectors().col(1)};
}

inline BlochVector to_bloch(const Eigen::Vector3d& v) { return {v(0), v(1), v(2)}; }

/// Unit vector along v, or any unit vector orthogonal to `fallback_ref` when v vanishes.
inline Eigen::Vector3d direction_or(const Eigen::Vector3d& v, const Eigen::Vector3d& fallback) {
    const double n = v.norm();
    if (n > 1e-14) return v / n;
    return fallback;
}
}  // namespace detail

/// M(rho) = u + u~, the two largest eigenvalues of T^T T. The settings field is left default.
inline ChshResult horodecki_M(const DensityMatrix& rho) {
    const detail::TopTwo tt = detail::top_two(correlation_matrix(rho));
    ChshResult r;
    r.m_rho = tt.u + tt.u_tilde;
    r.eigen_pair = {tt.u, tt.u_tilde};
    return r;
}

/// Settings attaining 2 sqrt(M(rho)).
///
/// With z, z' the top eigenvectors of T^T T, Bob uses y = cos(t) z + sin(t) z'
/// and y' = cos(t) z - sin(t) z', so y + y' = 2 cos(t) z and y - y' = 2 sin(t) z'.
/// Alice takes x' along T z and x along T z', and tan(t) = |T z'| / |T z|.
/// Sign and role choices are resolved by evaluating the candidates and keeping the best.
inline ChshSettings optimal_settings(const DensityMatrix& rho) {
    const CorrelationMatrix c = correlation_matrix(rho);
    const detail::TopTwo tt = detail::top_two(c);
    const Eigen::Vector3d tz = c.t * tt.z, tzp = c.t * tt.zp;
    const double nz = tz.norm(), nzp = tzp.norm();
    if (nz < 1e-14 && nzp < 1e-14) return {{0, 0, 1}, {1, 0, 0}, {0, 0, 1}, {1, 0, 0}};

    const auto chsh_T = [&](const ChshSettings& s) {
        return c.correlation(s.x, s.y) + c.correlation(s.xp, s.y) + c.correlation(s.xp, s.yp) -
               c.correlation(s.x, s.yp);
    };

    const double theta = std::atan2(nzp, nz);
    ChshSettings best;
    double best_value = -1e300;
    for (int sz = -1; sz <= 1; sz += 2)
        for (int szp = -1; szp <= 1; szp += 2) {
            const Eigen::Vector3d z = sz * tt.z, zp = szp * tt.zp;
            const Eigen::Vector3d y = std::cos(theta) * z + std::sin(theta) * zp;
            const Eigen::Vector3d yp = std::cos(theta) * z - std::sin(theta) * zp;
            const Eigen::Vector3d xp = detail::direction_or(c.t * z, zp.cross(z).normalized());
            const Eigen::Vector3d x = detail::direction_or(c.t * zp, xp.unitOrthogonal());
            ChshSettings s{detail::to_bloch(x).normalized(), detail::to_bloch(xp).normalized(),
                           detail::to_bloch(y).normalized(), detail::to_bloch(yp).normalized()};
            const double v = chsh_T(s);
            if (v > best_value) {
                best_value = v;
                best = s;
            }
        }
    return best;
}

/// Full Horodecki analysis: M, eigenvalues, optimal settings and the CHSH value they reach.
inline ChshResult chsh_optimal(const DensityMatrix& rho) {
    ChshResult r = horodecki_M(rho);
    r.settings = optimal_settings(rho);
    r.value = chsh_value(rho, r.settings);
    return r;
}

}  // namespace nonlocal
