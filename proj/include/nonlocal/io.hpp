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

// JSON and CSV forms of states, CHSH results and joint tables.
// Numbers are rounded to 12 significant digits on output.

#include "nonlocal/bell.hpp"
#include "nonlocal/mc.hpp"
#include "nonlocal/states.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>
#include <string>

namespace nonlocal::io {

using json = nlohmann::json;

inline double sig12(double v) {
    if (!std::isfinite(v)) return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

inline std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// {dA, dB, entries: [[re, im], ...]} row-major.
inline json to_json(const DensityMatrix& rho) {
    json entries = json::array();
    for (int i = 0; i < rho.dim(); ++i)
        for (int j = 0; j < rho.dim(); ++j) entries.push_back({sig12(rho.matrix()(i, j).real()), sig12(rho.matrix()(i, j).imag())});
    return {{"dA", rho.dA()}, {"dB", rho.dB()}, {"entries", entries}};
}

/// Inverse of to_json. Accepts bare numbers as real entries.
inline DensityMatrix state_from_json(const json& j) {
    try {
        const int dA = j.at("dA").get<int>();
        const int dB = j.at("dB").get<int>();
        if (dA < 1 || dB < 1) throw Error("state JSON: dimensions must be positive");
        const auto& e = j.at("entries");
        const int n = dA * dB;
        if (!e.is_array() || static_cast<int>(e.size()) != n * n)
            throw Error("state JSON: expected " + std::to_string(n * n) + " entries");
        CMatrix m(n, n);
        for (int k = 0; k < n * n; ++k) {
            const auto& v = e[static_cast<std::size_t>(k)];
            m(k / n, k % n) = v.is_array() ? cplx(v.at(0).get<double>(), v.at(1).get<double>()) : cplx(v.get<double>(), 0.0);
        }
        // Entries are stored with 12 significant digits; renormalize the trace.
        const cplx tr = m.trace();
        if (std::abs(tr - cplx(1.0)) < 1e-9) m /= tr.real();
        return DensityMatrix(m, dA, dB);
    } catch (const json::exception& ex) {
        throw Error(std::string("state JSON: ") + ex.what());
    }
}

inline json to_json(const BlochVector& v) { return json::array({sig12(v.x), sig12(v.y), sig12(v.z)}); }

inline BlochVector bloch_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw Error("Bloch vector JSON must be [x, y, z]");
    return BlochVector::unit(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

inline json to_json(const ChshSettings& s) {
    return {{"x", to_json(s.x)}, {"x'", to_json(s.xp)}, {"y", to_json(s.y)}, {"y'", to_json(s.yp)}};
}

/// {value, M, settings: {x, x', y, y'}, eigenvalues: [u, u_tilde]}
inline json to_json(const ChshResult& r) {
    return {{"value", sig12(r.value)},
            {"M", sig12(r.m_rho)},
            {"settings", to_json(r.settings)},
            {"eigenvalues", {sig12(r.eigen_pair[0]), sig12(r.eigen_pair[1])}}};
}

inline json to_json(const McEstimate& e) {
    return {{"mean", sig12(e.mean)}, {"stderr", sig12(e.std_error)}, {"n", e.n}, {"seed", e.seed}};
}

/// {cells: [{a, b, mean, stderr}], n, seed}
inline json to_json(const JointTable& t) {
    json cells = json::array();
    for (const auto& [k, v] : t.cells)
        cells.push_back({{"a", k.first}, {"b", k.second}, {"mean", sig12(v.mean)}, {"stderr", sig12(v.std_error)}});
    return {{"cells", cells}, {"n", t.n}, {"seed", t.seed}};
}

inline JointTable table_from_json(const json& j) {
    JointTable t;
    t.n = j.at("n").get<std::uint64_t>();
    t.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& c : j.at("cells"))
        t.cells[{c.at("a").get<int>(), c.at("b").get<int>()}] =
            McEstimate{c.at("mean").get<double>(), c.at("stderr").get<double>(), t.n, t.seed};
    return t;
}

inline json to_json(const TableComparison& c) {
    json cells = json::array();
    for (const auto& x : c.cells)
        cells.push_back({{"a", x.a},
                         {"b", x.b},
                         {"mean", sig12(x.mean)},
                         {"stderr", sig12(x.std_error)},
                         {"oracle", sig12(x.oracle)},
                         {"abs_diff", sig12(x.abs_diff)},
                         {"sigma_ratio", sig12(x.sigma_ratio)}});
    return cells;
}

/// a,b,mean,stderr,oracle,abs_diff,sigma_ratio
inline std::string to_csv(const TableComparison& c) {
    std::ostringstream os;
    os << "a,b,mean,stderr,oracle,abs_diff,sigma_ratio\n";
    for (const auto& x : c.cells)
        os << x.a << ',' << x.b << ',' << fmt12(x.mean) << ',' << fmt12(x.std_error) << ',' << fmt12(x.oracle) << ','
           << fmt12(x.abs_diff) << ',' << fmt12(x.sigma_ratio) << '\n';
    return os.str();
}

}  // namespace nonlocal::io
