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

#include "nonlocal/qmat.hpp"

#include <cmath>
#include <string>

namespace nonlocal {

/// Unit direction in R^3. Doubles as a real hidden variable and as the
/// direction of a spin observable v.sigma.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
    bool is_unit(double eps = tol::unit_norm) const { return std::abs(norm() - 1.0) <= eps; }

    BlochVector operator+(const BlochVector& o) const { return {x + o.x, y + o.y, z + o.z}; }
    BlochVector operator-(const BlochVector& o) const { return {x - o.x, y - o.y, z - o.z}; }
    BlochVector operator-() const { return {-x, -y, -z}; }
    BlochVector operator*(double s) const { return {s * x, s * y, s * z}; }

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    BlochVector normalized() const {
        const double n = norm();
        if (n == 0.0) throw Error("cannot normalize the zero vector");
        return {x / n, y / n, z / n};
    }

    /// v.sigma
    CMatrix sigma() const { return x * pauli_x() + y * pauli_y() + z * pauli_z(); }

    static BlochVector unit(double x, double y, double z) {
        BlochVector v{x, y, z};
        return v.normalized();
    }
};

inline BlochVector operator*(double s, const BlochVector& v) { return v * s; }

/// sign(0) = +1.
inline int sign(double z) { return z >= 0.0 ? 1 : -1; }

/// Bloch vector of a qubit operator: (tr(m sx), tr(m sy), tr(m sz)).
inline BlochVector bloch_of(const CMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw Error("bloch_of expects a 2x2 operator");
    return {trace_product_real(m, pauli_x()), trace_product_real(m, pauli_y()),
            trace_product_real(m, pauli_z())};
}

/// Parse "x,y,z" and normalize.
inline BlochVector parse_bloch(const std::string& s) {
    double v[3];
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        const auto next = s.find(',', pos);
        if ((i < 2) != (next != std::string::npos)) throw Error("expected three comma-separated numbers: " + s);
        const std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        try {
            std::size_t used = 0;
            v[i] = std::stod(tok, &used);
            if (used != tok.size()) throw Error("bad number in Bloch vector: " + tok);
        } catch (const std::logic_error&) {
            throw Error("bad number in Bloch vector: " + tok);
        }
        pos = next == std::string::npos ? next : next + 1;
    }
    return BlochVector::unit(v[0], v[1], v[2]);
}

}  // namespace nonlocal
