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

// The reproduction suite: thirteen numbered checks, each reduced to a
// pass/fail verdict plus the numbers behind it. Monte Carlo checks compare
// against Born-rule probabilities with a 5-sigma band on every cell.

#include "nonlocal/bell.hpp"
#include "nonlocal/filters.hpp"
#include "nonlocal/io.hpp"
#include "nonlocal/lhv.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace nonlocal::acceptance {

using io::json;

struct AcceptanceOptions {
    std::uint64_t n = 1'000'000;
    std::uint64_t seed = 0;
    McOptions mc;
};

/// Below this many samples the 5-sigma comparisons lose most of their power.
inline constexpr std::uint64_t kUnderpoweredN = 100'000;

struct NamedComparison {
    std::string label;
    TableComparison cmp;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    bool gating = true;
    std::string summary;
    json data = json::object();
    std::vector<NamedComparison> tables;
};

struct Report {
    std::vector<CriterionResult> results;
    AcceptanceOptions options;

    bool all_gating_passed() const {
        for (const auto& r : results)
            if (r.gating && !r.passed) return false;
        return true;
    }

    json to_json() const {
        json out = {{"n", options.n}, {"seed", options.seed}, {"passed", all_gating_passed()}};
        json list = json::array();
        for (const auto& r : results) {
            json tables = json::array();
            for (const auto& t : r.tables) tables.push_back({{"label", t.label}, {"cells", io::to_json(t.cmp)}});
            list.push_back({{"id", r.id},
                            {"title", r.title},
                            {"passed", r.passed},
                            {"gating", r.gating},
                            {"summary", r.summary},
                            {"data", r.data},
                            {"tables", tables}});
        }
        out["criteria"] = list;
        return out;
    }

    /// One CSV with every compared cell, prefixed by criterion id and table label.
    std::string comparisons_csv() const {
        std::string out = "criterion,table,a,b,mean,stderr,oracle,abs_diff,sigma_ratio\n";
        for (const auto& r : results)
            for (const auto& t : r.tables) {
                const std::string body = io::to_csv(t.cmp);
                std::size_t pos = body.find('\n') + 1;
                while (pos < body.size()) {
                    const std::size_t end = body.find('\n', pos);
                    out += std::to_string(r.id) + ',' + t.label + ',' + body.substr(pos, end - pos) + '\n';
                    pos = end + 1;
                }
            }
        return out;
    }
};

inline std::string verdict_line(const CriterionResult& r) {
    std::string tag = r.passed ? "PASS" : (r.gating ? "FAIL" : "FAIL (non-gating)");
    return "[" + tag + "] " + std::to_string(r.id) + ". " + r.title + ": " + r.summary;
}

namespace detail {

inline std::uint64_t sub_seed(std::uint64_t seed, int criterion, int k) {
    return mix64(seed ^ (static_cast<std::uint64_t>(criterion) << 32) ^ static_cast<std::uint64_t>(k));
}

inline SampleRng setup_rng(const AcceptanceOptions& o, int criterion) {
    return SampleRng(o.seed ^ 0xACCE97A11CEULL, static_cast<std::uint64_t>(criterion));
}

inline CMatrix pm_projector(const BlochVector& v, int label) {
    return obs_from_bloch(v).measurement().projectors()[label == 1 ? 0 : 1];
}

inline double born_pm(const DensityMatrix& rho, const BlochVector& x, const BlochVector& y, int a, int b) {
    return born_joint(rho, pm_projector(x, a), pm_projector(y, b));
}

/// Tracks the worst sigma ratio across several tables.
struct TableTally {
    bool ok = true;
    double worst = 0.0;
    int tables = 0;

    void add(CriterionResult& r, const std::string& label, const TableComparison& c) {
        ok = ok && c.within(5.0);
        worst = std::max(worst, c.max_sigma_ratio);
        ++tables;
        r.tables.push_back({label, c});
    }
};

inline std::string fmt(double v) { return io::fmt12(v); }

inline double pauli_expectation(const DensityMatrix& rho, const BlochVector& a, const BlochVector& b) {
    return trace_product_real(tensor(a.sigma(), b.sigma()), rho.matrix());
}

}  // namespace detail

inline CriterionResult singlet_chsh(const AcceptanceOptions&) {
    CriterionResult r{1, "singlet CHSH with textbook settings"};
    const double v = chsh_value(singlet(), textbook_settings());
    const double target = 2.0 * std::numbers::sqrt2;
    r.passed = std::abs(v - target) <= 1e-10;
    r.summary = "value " + detail::fmt(v) + ", |value - 2 sqrt 2| = " + detail::fmt(std::abs(v - target));
    r.data = {{"value", io::sig12(v)}, {"target", io::sig12(target)}};
    return r;
}

inline CriterionResult horodecki_consistency(const AcceptanceOptions& o) {
    CriterionResult r{2, "Horodecki bound and optimal settings on random states"};
    SampleRng rng = detail::setup_rng(o, 2);
    double worst_excess = -1e300, worst_gap = 0.0;
    for (int s = 0; s < 50; ++s) {
        const DensityMatrix rho(random_density_matrix(rng, 4), 2, 2);
        const ChshResult opt = chsh_optimal(rho);
        const double bound = opt.bound();
        double best = -1e300;
        for (int k = 0; k < 10000; ++k) {
            const BlochVector x = sample_sphere_r3(rng), xp = sample_sphere_r3(rng);
            const BlochVector y = sample_sphere_r3(rng), yp = sample_sphere_r3(rng);
            const double v = detail::pauli_expectation(rho, x, y) + detail::pauli_expectation(rho, xp, y) +
                             detail::pauli_expectation(rho, xp, yp) - detail::pauli_expectation(rho, x, yp);
            best = std::max(best, v);
        }
        worst_excess = std::max(worst_excess, best - bound);
        worst_gap = std::max(worst_gap, std::abs(opt.value - bound));
    }
    r.passed = worst_excess <= 1e-9 && worst_gap <= 1e-6;
    r.summary = "max(search - 2 sqrt M) = " + detail::fmt(worst_excess) +
                ", max |optimal - 2 sqrt M| = " + detail::fmt(worst_gap);
    r.data = {{"states", 50}, {"settings_per_state", 10000}, {"max_excess", io::sig12(worst_excess)},
              {"max_optimal_gap", io::sig12(worst_gap)}};
    return r;
}

inline CriterionResult werner_model(const AcceptanceOptions& o) {
    CriterionResult r{3, "Werner LHV joint tables (d = 2, 3)"};
    SampleRng rng = detail::setup_rng(o, 3);
    detail::TableTally tally;
    int k = 0;
    for (int d : {2, 3}) {
        const DensityMatrix w = werner_local(d);
        for (int p = 0; p < 5; ++p, ++k) {
            const ProjectiveMeasurement pa = random_basis_measurement(rng, d);
            const ProjectiveMeasurement pb = random_basis_measurement(rng, d);
            const JointTable t = simulate_werner(d, pa, pb, o.n, detail::sub_seed(o.seed, 3, k), o.mc);
            tally.add(r, "d" + std::to_string(d) + "_pair" + std::to_string(p),
                      compare(t, [&](int a, int b) { return born_joint(w, pa.projectors()[a], pb.projectors()[b]); }));
        }
    }
    r.passed = tally.ok;
    r.summary = std::to_string(tally.tables) + " tables, worst cell " + detail::fmt(tally.worst) + " sigma";
    r.data = {{"worst_sigma_ratio", io::sig12(tally.worst)}};
    return r;
}

inline CriterionResult simplex_integral(const AcceptanceOptions& o) {
    CriterionResult r{4, "simplex integral at d = 3"};
    SampleRng rng = detail::setup_rng(o, 4);
    const McEstimate e = simplex_integral_mc(3, 0, random_basis_measurement(rng, 3), o.n, detail::sub_seed(o.seed, 4, 0), o.mc);
    const double target = 1.0 / 27.0;
    r.passed = e.within(target);
    r.summary = "estimate " + detail::fmt(e.mean) + " +- " + detail::fmt(e.std_error) + " vs 1/27, " +
                detail::fmt(e.sigma_ratio(target)) + " sigma";
    r.data = {{"estimate", io::to_json(e)}, {"target", io::sig12(target)}};
    return r;
}

inline CriterionResult gisin_degorre(const AcceptanceOptions& o) {
    CriterionResult r{5, "Gisin-Degorre model for the alpha = 1/2 Werner state"};
    SampleRng rng = detail::setup_rng(o, 5);
    bool ok = true;
    double worst = 0.0, mismatches = 0.0;
    json pairs = json::array();
    for (int k = 0; k < 10; ++k) {
        const BlochVector x = sample_sphere_r3(rng), y = sample_sphere_r3(rng);
        const GdStats s = simulate_gd_w2x2(x, y, o.n, detail::sub_seed(o.seed, 5, k), o.mc);
        const double target = -x.dot(y) / 2.0;
        ok = ok && s.e_ab.within(target) && s.e_a.within(0.0) && s.e_b.within(0.0) && s.rewrite_mismatch.mean == 0.0;
        worst = std::max({worst, s.e_ab.sigma_ratio(target), s.e_a.sigma_ratio(0.0), s.e_b.sigma_ratio(0.0)});
        mismatches += s.rewrite_mismatch.mean * static_cast<double>(o.n);
        pairs.push_back({{"x", io::to_json(x)}, {"y", io::to_json(y)}, {"E_AB", io::to_json(s.e_ab)},
                         {"target", io::sig12(target)}, {"E_A", io::to_json(s.e_a)}, {"E_B", io::to_json(s.e_b)}});
    }
    r.passed = ok;
    r.summary = "10 direction pairs, worst " + detail::fmt(worst) + " sigma, rewrite mismatches " +
                detail::fmt(std::round(mismatches));
    r.data = {{"pairs", pairs}, {"rewrite_mismatches", std::llround(mismatches)}};
    return r;
}

inline CriterionResult epr_one_bit(const AcceptanceOptions& o) {
    CriterionResult r{6, "one-bit singlet simulation"};
    SampleRng rng = detail::setup_rng(o, 6);
    bool ok = true;
    double worst = 0.0;
    json pairs = json::array();
    for (int k = 0; k < 5; ++k) {
        const BlochVector x = sample_sphere_r3(rng), y = sample_sphere_r3(rng);
        const DichotomicStats s = simulate_epr_one_bit(x, y, o.n, detail::sub_seed(o.seed, 6, k), o.mc);
        const double target = -x.dot(y);
        ok = ok && s.e_ab.within(target);
        worst = std::max(worst, s.e_ab.sigma_ratio(target));
        pairs.push_back({{"x", io::to_json(x)}, {"y", io::to_json(y)}, {"E_AB", io::to_json(s.e_ab)},
                         {"target", io::sig12(target)}});
    }
    r.passed = ok;
    r.summary = "5 direction pairs, worst " + detail::fmt(worst) + " sigma";
    r.data = {{"pairs", pairs}};
    return r;
}

inline CriterionResult hirsch_projective(const AcceptanceOptions& o) {
    CriterionResult r{7, "Hirsch model for rho_G(q), projective measurements"};
    SampleRng rng = detail::setup_rng(o, 7);
    detail::TableTally tally;
    bool ok = true;
    json rows = json::array();
    int k = 0;
    for (double q : {0.1, 0.3, 0.5}) {
        const DensityMatrix rho = rho_G(q);
        const BlochVector x1 = sample_sphere_r3(rng), x2 = sample_sphere_r3(rng), y = sample_sphere_r3(rng);
        const HirschStats s1 = simulate_hirsch_projective(q, x1, y, o.n, detail::sub_seed(o.seed, 7, k++), o.mc);
        const HirschStats s2 = simulate_hirsch_projective(q, x2, y, o.n, detail::sub_seed(o.seed, 7, k++), o.mc);
        tally.add(r, "q" + detail::fmt(q) + "_x1",
                  compare(s1.table, [&](int a, int b) { return detail::born_pm(rho, x1, y, a, b); }));
        tally.add(r, "q" + detail::fmt(q) + "_x2",
                  compare(s2.table, [&](int a, int b) { return detail::born_pm(rho, x2, y, a, b); }));
        const bool marg = s1.e_a.within((1.0 - q) * x1.z) && s2.e_a.within((1.0 - q) * x2.z);
        const double diff = std::abs(s1.acceptance.mean - s2.acceptance.mean);
        const double comb = std::hypot(s1.acceptance.std_error, s2.acceptance.std_error);
        const bool acc = diff <= 5.0 * comb + 1e-12 && s1.acceptance.within(0.5) && s2.acceptance.within(0.5);
        ok = ok && marg && acc;
        rows.push_back({{"q", q},
                        {"E_A_x1", io::to_json(s1.e_a)},
                        {"E_A_x1_target", io::sig12((1.0 - q) * x1.z)},
                        {"E_A_x2", io::to_json(s2.e_a)},
                        {"E_A_x2_target", io::sig12((1.0 - q) * x2.z)},
                        {"acceptance_x1", io::to_json(s1.acceptance)},
                        {"acceptance_x2", io::to_json(s2.acceptance)}});
    }
    r.passed = ok && tally.ok;
    r.summary = "tables worst " + detail::fmt(tally.worst) + " sigma, marginals and acceptance " +
                (ok ? std::string("consistent") : std::string("inconsistent"));
    r.data = {{"rows", rows}, {"worst_sigma_ratio", io::sig12(tally.worst)}};
    return r;
}

inline CriterionResult povm_lift(const AcceptanceOptions& o) {
    CriterionResult r{8, "POVM lift of the Hirsch model to rho'_G(0.4)"};
    SampleRng rng = detail::setup_rng(o, 8);
    const double q = 0.4;
    const HirschModel base(q);
    const DensityMatrix sigma = basis_state(2, 0);
    const DensityMatrix lifted = rho_G_prime(q);
    detail::TableTally tally;
    bool rates = true;
    double worst_rate = 0.0;
    for (int k = 0; k < 5; ++k) {
        const Povm pa = random_povm(rng, 2, 3), pb = random_povm(rng, 2, 3);
        const PovmLiftStats s = simulate_povm_lift(base, sigma, sigma, pa, pb, o.n, detail::sub_seed(o.seed, 8, k), o.mc);
        tally.add(r, "pair" + std::to_string(k),
                  compare(s.table, [&](int a, int b) { return born_joint(lifted, pa.elements()[a], pb.elements()[b]); }));
        rates = rates && s.step4_A.within(0.5) && s.step4_B.within(0.5);
        worst_rate = std::max({worst_rate, s.step4_A.sigma_ratio(0.5), s.step4_B.sigma_ratio(0.5)});
    }
    r.passed = tally.ok && rates;
    r.summary = "5 POVM pairs, worst cell " + detail::fmt(tally.worst) + " sigma, step-4 rate worst " +
                detail::fmt(worst_rate) + " sigma from 1/2";
    r.data = {{"worst_sigma_ratio", io::sig12(tally.worst)}, {"worst_step4_sigma", io::sig12(worst_rate)}};
    return r;
}

inline CriterionResult filtering_limits(const AcceptanceOptions&) {
    CriterionResult r{9, "filtered M limits and rho_E"};
    bool ok = true;
    json rows = json::array();
    double worst = 0.0;
    for (FilterFamily fam : {FilterFamily::rho_G, FilterFamily::rho_G_prime})
        for (double q : {0.25, 0.5}) {
            const auto row = hidden_nonlocality_scan(fam, q, {1e-3}).front();
            const double limit = filtered_M_limit(fam, q);
            const double dev = std::abs(row.m - limit);
            worst = std::max(worst, dev);
            ok = ok && dev <= 1e-4;
            rows.push_back({{"family", fam == FilterFamily::rho_G ? "rho_G" : "rho_G_prime"},
                            {"q", q},
                            {"M", io::sig12(row.m)},
                            {"limit", io::sig12(limit)}});
        }
    const FilterOutcome fe = apply_filters(rho_E(0.5), rho_E_filters());
    double singlet_err = 1.0, chsh_err = 1.0;
    if (!fe.degenerate()) {
        const DensityMatrix block = restrict_to(*fe.post_state, 2, 2);
        singlet_err = max_abs_diff(block.matrix(), singlet().matrix());
        chsh_err = std::abs(chsh_value(block, textbook_settings()) - 2.0 * std::numbers::sqrt2);
    }
    ok = ok && singlet_err <= 1e-10 && chsh_err <= 1e-10;
    r.passed = ok;
    r.summary = "max |M - limit| = " + detail::fmt(worst) + ", rho_E singlet error " + detail::fmt(singlet_err) +
                ", CHSH error " + detail::fmt(chsh_err);
    r.data = {{"rows", rows}, {"rho_E_singlet_error", io::sig12(singlet_err)}, {"rho_E_chsh_error", io::sig12(chsh_err)}};
    return r;
}

inline CriterionResult popescu(const AcceptanceOptions&) {
    CriterionResult r{10, "Popescu filtering of W_local(d), d = 3..8"};
    bool ok = true;
    json rows = json::array();
    std::string violating;
    for (int d = 3; d <= 8; ++d) {
        const PopescuResult p = popescu_protocol(d);
        const double closed = 2.0 * std::numbers::sqrt2 * d / (d + 2.0);
        const bool sign_ok = d >= 5 ? p.chsh > 2.0 : p.chsh <= 2.0;
        ok = ok && std::abs(p.chsh - closed) <= 1e-10 && sign_ok && p.closed_form_error <= 1e-12;
        if (p.chsh > 2.0) violating += (violating.empty() ? "" : ",") + std::to_string(d);
        rows.push_back({{"d", d}, {"chsh", io::sig12(p.chsh)}, {"closed_form", io::sig12(closed)},
                        {"success_prob", io::sig12(p.success_prob)}});
    }
    r.passed = ok;
    r.summary = "matches 2 sqrt2 d/(d+2); violation for d in {" + violating + "}";
    r.data = {{"rows", rows}};
    return r;
}

inline CriterionResult witness_suite(const AcceptanceOptions& o) {
    CriterionResult r{11, "flip witness on rho_G and on separable states"};
    double worst = 0.0;
    for (int k = 0; k <= 20; ++k) {
        const double q = k / 20.0;
        worst = std::max(worst, std::abs(flip_witness(rho_G(q)) - (1.0 - 3.0 * q) / 2.0));
    }
    const bool flips = flip_witness(rho_G(1.0 / 3.0 - 1e-6)) > 0.0 && flip_witness(rho_G(1.0 / 3.0 + 1e-6)) < 0.0;
    SampleRng rng = detail::setup_rng(o, 11);
    double min_sep = 1e300;
    for (int k = 0; k < 100; ++k) {
        const int d = 2 + k % 3;
        min_sep = std::min(min_sep, flip_witness(DensityMatrix(random_separable_state(rng, d, d), d, d)));
    }
    r.passed = worst <= 1e-12 && flips && min_sep >= -1e-9;
    r.summary = "max |tr(V rho_G) - (1-3q)/2| = " + detail::fmt(worst) + ", sign flip at 1/3 " +
                (flips ? std::string("yes") : std::string("no")) + ", min separable witness " + detail::fmt(min_sep);
    r.data = {{"closed_form_error", io::sig12(worst)}, {"sign_flip", flips}, {"min_separable", io::sig12(min_sep)}};
    return r;
}

inline CriterionResult property_suite(const AcceptanceOptions& o) {
    CriterionResult r{12, "response normalization and thread-count determinism"};
    SampleRng rng = detail::setup_rng(o, 12);
    const ProjectiveMeasurement pm3 = random_basis_measurement(rng, 3);
    const RefinedPovm povm2 = povm_refine(random_povm(rng, 2, 3));
    const RefinedPovm povm3 = povm_refine(random_povm(rng, 3, 4));
    const HirschModel hirsch(0.3);
    const BlochVector x = sample_sphere_r3(rng), y = sample_sphere_r3(rng);
    double worst_norm = 0.0, most_negative = 0.0;
    bool outputs_ok = true;
    for (std::uint64_t i = 0; i < 100000; ++i) {
        SampleRng s(detail::sub_seed(o.seed, 12, 0), i);
        const Ket l3 = sample_sphere_cd(s, 3);
        const Ket l2 = sample_sphere_cd(s, 2);
        int hits = 0;
        double pb = 0.0;
        for (std::size_t k = 0; k < pm3.size(); ++k) {
            hits += werner_response_A(k, l3, pm3);
            const double v = werner_response_B(k, l3, pm3);
            most_negative = std::min(most_negative, v);
            pb += v;
        }
        outputs_ok = outputs_ok && hits == 1;
        worst_norm = std::max(worst_norm, std::abs(pb - 1.0));
        for (const auto& [lam, m] : {std::pair<const Ket*, const RefinedPovm*>{&l2, &povm2}, {&l3, &povm3}}) {
            double sa = 0.0, sb = 0.0;
            for (double v : barrett_response_A(*lam, *m)) {
                most_negative = std::min(most_negative, v);
                sa += v;
            }
            for (double v : barrett_response_B(*lam, *m)) {
                most_negative = std::min(most_negative, v);
                sb += v;
            }
            worst_norm = std::max({worst_norm, std::abs(sa - 1.0), std::abs(sb - 1.0)});
        }
        const HirschHidden h = hirsch.sample_hidden(s);
        const int a = hirsch.alice(x, h, s).outcome, b = hirsch.bob(y, h);
        const BlochVector l0 = sample_sphere_r3(s), l1 = sample_sphere_r3(s);
        const int ga = -sign(x.dot(gd_choice(l0, l1, x)));
        outputs_ok = outputs_ok && (a == 1 || a == -1) && (b == 1 || b == -1) && (ga == 1 || ga == -1);
    }
    const bool norm_ok = outputs_ok && worst_norm <= 1e-10 && most_negative >= -1e-15;

    const ProjectiveMeasurement pa = random_basis_measurement(rng, 3), pb = random_basis_measurement(rng, 3);
    const std::uint64_t nd = std::min<std::uint64_t>(o.n, 200000);
    const std::uint64_t sd = detail::sub_seed(o.seed, 12, 1);
    const JointTable t1 = simulate_werner(3, pa, pb, nd, sd, McOptions{1});
    const JointTable t4 = simulate_werner(3, pa, pb, nd, sd, McOptions{4});
    const GdStats g1 = simulate_gd_w2x2(x, y, nd, sd, McOptions{1});
    const GdStats g3 = simulate_gd_w2x2(x, y, nd, sd, McOptions{3});
    const bool det_ok = t1 == t4 && g1.table == g3.table && g1.e_ab.mean == g3.e_ab.mean;

    r.passed = norm_ok && det_ok;
    r.summary = "max normalization defect " + detail::fmt(worst_norm) + ", min response " + detail::fmt(most_negative) +
                ", 1 vs 4 and 1 vs 3 workers " + (det_ok ? std::string("bit-identical") : std::string("differ"));
    r.data = {{"hidden_variables", 100000}, {"max_normalization_defect", io::sig12(worst_norm)},
              {"min_response", io::sig12(most_negative)}, {"deterministic", det_ok}};
    return r;
}

inline CriterionResult barrett_exploratory(const AcceptanceOptions& o) {
    CriterionResult r{13, "Barrett model, d = 2 (exploratory)"};
    r.gating = false;
    SampleRng rng = detail::setup_rng(o, 13);
    const RefinedPovm fa = povm_refine(random_povm(rng, 2, 3)), fb = povm_refine(random_povm(rng, 2, 3));
    double worst_norm = 0.0, most_negative = 0.0;
    for (std::uint64_t i = 0; i < 100000; ++i) {
        SampleRng s(detail::sub_seed(o.seed, 13, 0), i);
        const Ket l = sample_sphere_cd(s, 2);
        double sa = 0.0, sb = 0.0;
        for (double v : barrett_response_A(l, fa)) {
            most_negative = std::min(most_negative, v);
            sa += v;
        }
        for (double v : barrett_response_B(l, fb)) {
            most_negative = std::min(most_negative, v);
            sb += v;
        }
        worst_norm = std::max({worst_norm, std::abs(sa - 1.0), std::abs(sb - 1.0)});
    }
    const bool valid = worst_norm <= 1e-10 && most_negative >= -1e-15;

    const DensityMatrix target = barrett_state(2);
    const Povm pa = random_povm(rng, 2, 3), pb = random_povm(rng, 2, 3);
    const JointTable t = simulate_barrett(2, pa, pb, 10 * o.n, detail::sub_seed(o.seed, 13, 1), o.mc);
    const TableComparison cmp =
        compare(t, [&](int a, int b) { return born_joint(target, pa.elements()[a], pb.elements()[b]); });
    r.tables.push_back({"d2", cmp});
    r.passed = valid && cmp.within(5.0);
    r.summary = "responses " + std::string(valid ? "valid" : "invalid") + ", n = " + std::to_string(10 * o.n) +
                ", worst cell " + detail::fmt(cmp.max_sigma_ratio) + " sigma";
    r.data = {{"n", 10 * o.n}, {"worst_sigma_ratio", io::sig12(cmp.max_sigma_ratio)},
              {"max_normalization_defect", io::sig12(worst_norm)}};
    return r;
}

/// Runs every criterion in order, calling `on_result` as each one finishes.
inline Report run_all(const AcceptanceOptions& o, const std::function<void(const CriterionResult&)>& on_result = {}) {
    using Check = CriterionResult (*)(const AcceptanceOptions&);
    static constexpr Check checks[] = {singlet_chsh,    horodecki_consistency, werner_model,     simplex_integral,
                                       gisin_degorre,   epr_one_bit,           hirsch_projective, povm_lift,
                                       filtering_limits, popescu,              witness_suite,    property_suite,
                                       barrett_exploratory};
    Report rep;
    rep.options = o;
    for (Check c : checks) {
        rep.results.push_back(c(o));
        if (on_result) on_result(rep.results.back());
    }
    return rep;
}

}  // namespace nonlocal::acceptance
