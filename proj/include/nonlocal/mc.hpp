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

// Deterministic Monte Carlo driver and estimate containers.
//
// Samples are grouped in fixed-size chunks; each chunk is accumulated on its
// own and chunks are combined in index order. Together with the per-sample
// streams of SampleRng this makes every result a function of (seed, n) only.

#include "nonlocal/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace nonlocal {

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(n)
    std::uint64_t n = 0;
    std::uint64_t seed = 0;

    /// |mean - target| <= k * stderr (with a 1e-12 floor for zero-variance cells).
    bool within(double target, double k = 5.0) const { return std::abs(mean - target) <= k * std_error + 1e-12; }
    double sigma_ratio(double target) const {
        const double d = std::abs(mean - target);
        if (std_error > 0.0) return d / std_error;
        return d <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
    }
};

struct McOptions {
    /// 0 selects NONLOCAL_LAB_THREADS, falling back to the hardware concurrency.
    unsigned threads = 0;
};

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("NONLOCAL_LAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) hw = std::min(hw, static_cast<unsigned>(v));
    }
    return hw;
}

inline constexpr std::uint64_t kChunkSize = 1u << 14;

/// Runs `sample(rng, out)` for sample indices 0..n-1. `out` has `width`
/// slots, zeroed before each call; the driver returns the per-slot mean and
/// standard error over all samples.
template <class Sampler>
std::vector<McEstimate> run_mc(std::uint64_t n, std::uint64_t seed, std::size_t width, Sampler&& sample,
                               McOptions opts = {}) {
    if (n == 0) throw Error("run_mc: n must be >= 1");
    const std::uint64_t chunks = (n + kChunkSize - 1) / kChunkSize;
    std::vector<double> sums(chunks * width, 0.0), sumsq(chunks * width, 0.0);

    const auto do_chunk = [&](std::uint64_t c) {
        std::vector<double> out(width);
        double* s = &sums[c * width];
        double* q = &sumsq[c * width];
        const std::uint64_t begin = c * kChunkSize, end = std::min(n, begin + kChunkSize);
        for (std::uint64_t i = begin; i < end; ++i) {
            std::fill(out.begin(), out.end(), 0.0);
            SampleRng rng(seed, i);
            sample(rng, std::span<double>(out));
            for (std::size_t k = 0; k < width; ++k) {
                s[k] += out[k];
                q[k] += out[k] * out[k];
            }
        }
    };

    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(opts.threads), chunks));
    if (workers <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) do_chunk(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::uint64_t c = next++; c < chunks; c = next++) do_chunk(c);
            });
        for (auto& t : pool) t.join();
    }

    std::vector<McEstimate> est(width);
    const double nd = static_cast<double>(n);
    for (std::size_t k = 0; k < width; ++k) {
        double s = 0.0, q = 0.0;
        for (std::uint64_t c = 0; c < chunks; ++c) {
            s += sums[c * width + k];
            q += sumsq[c * width + k];
        }
        const double mean = s / nd;
        double var = n > 1 ? (q - s * mean) / (nd - 1.0) : 0.0;
        var = std::max(var, 0.0);
        est[k] = McEstimate{mean, std::sqrt(var / nd), n, seed};
    }
    return est;
}

/// Estimated p(a, b) per outcome pair.
struct JointTable {
    std::map<std::pair<int, int>, McEstimate> cells;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;

    const McEstimate& at(int a, int b) const { return cells.at({a, b}); }

    double total() const {
        double t = 0.0;
        for (const auto& [k, v] : cells) t += v.mean;
        return t;
    }

    /// sqrt of the summed cell variances; loose bound used for the sum-to-one check.
    double aggregate_stderr() const {
        double t = 0.0;
        for (const auto& [k, v] : cells) t += v.std_error * v.std_error;
        return std::sqrt(t);
    }

    double marginal_A(int a) const {
        double t = 0.0;
        for (const auto& [k, v] : cells)
            if (k.first == a) t += v.mean;
        return t;
    }

    double marginal_B(int b) const {
        double t = 0.0;
        for (const auto& [k, v] : cells)
            if (k.second == b) t += v.mean;
        return t;
    }

    bool operator==(const JointTable& o) const {
        if (n != o.n || seed != o.seed || cells.size() != o.cells.size()) return false;
        for (const auto& [k, v] : cells) {
            const auto it = o.cells.find(k);
            if (it == o.cells.end()) return false;
            if (v.mean != it->second.mean || v.std_error != it->second.std_error) return false;
        }
        return true;
    }
};

/// Builds a table from estimates laid out row-major over labelsA x labelsB.
inline JointTable make_table(const std::vector<int>& labelsA, const std::vector<int>& labelsB,
                             std::span<const McEstimate> est, std::uint64_t n, std::uint64_t seed) {
    JointTable t;
    t.n = n;
    t.seed = seed;
    for (std::size_t i = 0; i < labelsA.size(); ++i)
        for (std::size_t j = 0; j < labelsB.size(); ++j) t.cells[{labelsA[i], labelsB[j]}] = est[i * labelsB.size() + j];
    return t;
}

struct CellComparison {
    int a = 0;
    int b = 0;
    double mean = 0.0;
    double std_error = 0.0;
    double oracle = 0.0;
    double abs_diff = 0.0;
    double sigma_ratio = 0.0;
};

struct TableComparison {
    std::vector<CellComparison> cells;
    double max_sigma_ratio = 0.0;

    bool within(double k = 5.0) const {
        for (const auto& c : cells)
            if (c.abs_diff > k * c.std_error + 1e-12) return false;
        return true;
    }
};

inline TableComparison compare(const JointTable& table, const std::function<double(int, int)>& oracle) {
    TableComparison out;
    for (const auto& [k, v] : table.cells) {
        CellComparison c;
        c.a = k.first;
        c.b = k.second;
        c.mean = v.mean;
        c.std_error = v.std_error;
        c.oracle = oracle(c.a, c.b);
        c.abs_diff = std::abs(c.mean - c.oracle);
        c.sigma_ratio = v.sigma_ratio(c.oracle);
        out.max_sigma_ratio = std::max(out.max_sigma_ratio, c.sigma_ratio);
        out.cells.push_back(c);
    }
    return out;
}

}  // namespace nonlocal
