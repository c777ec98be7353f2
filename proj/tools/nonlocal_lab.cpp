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


// nonlocal-lab: command-line front end.
//
//   nonlocal-lab witness <state> [--d --q --alpha --phi | --file f.json]
//   nonlocal-lab chsh <state> [--x --x2 --y --y2 | --optimal]
//   nonlocal-lab simulate <werner|gd|epr1bit|hirsch|povm-lift|barrett> [--n --seed ...]
//   nonlocal-lab filter-scan <rho-g|rho-g-prime|popescu> [--q --eps-grid --d]
//   nonlocal-lab reproduce [--n --seed --out dir]
//
// Exit codes: 0 success, 1 a check failed, 2 invalid input.

#include "nonlocal/acceptance.hpp"
#include "nonlocal/io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace nonlocal;
using io::json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInvalidInput = 2;

const std::vector<std::string> kStateNames{"singlet", "werner",  "werner-local", "werner2x2", "barrett",
                                           "rho-g",   "rho-g-prime", "rho-e",   "rho-e-lift", "product",
                                           "maximally-mixed"};

struct StateArgs {
    std::string name;
    std::string file;
    int d = 2;
    double q = 0.25;
    double alpha = 0.5;
    std::optional<double> phi;
};

struct OutputArgs {
    std::string format = "json";
    std::string out;
};

struct McArgs {
    double n = 1e6;
    std::uint64_t seed = 0;

    std::uint64_t count() const {
        if (!(n >= 1.0) || n != std::floor(n) || n > 1e15) throw Error("--n must be a positive integer");
        return static_cast<std::uint64_t>(n);
    }
};

DensityMatrix build_state(const StateArgs& a) {
    if (!a.file.empty()) {
        std::ifstream in(a.file);
        if (!in) throw Error("cannot open state file " + a.file);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw Error(std::string("state file is not valid JSON: ") + e.what());
        }
        return io::state_from_json(j);
    }
    const std::string& n = a.name;
    if (n == "singlet") return singlet();
    if (n == "werner") {
        if (!a.phi) throw Error("state 'werner' needs --phi");
        return werner_phi(a.d, *a.phi);
    }
    if (n == "werner-local") return werner_local(a.d);
    if (n == "werner2x2") return werner2x2(a.alpha);
    if (n == "barrett") return barrett_state(a.d);
    if (n == "rho-g") return rho_G(a.q);
    if (n == "rho-g-prime") return rho_G_prime(a.q);
    if (n == "rho-e") return rho_E(a.q);
    if (n == "rho-e-lift") return rho_E_lift(a.q);
    if (n == "product") return tensor(basis_state(a.d, 0), basis_state(a.d, 0));
    if (n == "maximally-mixed") return maximally_mixed(a.d, a.d);
    if (n.empty()) throw Error("no state given (name or --file)");
    throw Error("unknown state '" + n + "'");
}

void add_state_options(CLI::App* cmd, StateArgs& s) {
    cmd->add_option("state", s.name, "Named state")->check(CLI::IsMember(kStateNames));
    cmd->add_option("--file", s.file, "State JSON file {dA, dB, entries}");
    cmd->add_option("--d", s.d, "Local dimension");
    cmd->add_option("--q", s.q, "Mixing parameter q");
    cmd->add_option("--alpha", s.alpha, "Singlet weight of the two-qubit Werner state");
    cmd->add_option("--phi", s.phi, "tr(V W) of a Werner state");
}

void add_output_options(CLI::App* cmd, OutputArgs& o) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", o.out, "Write output to this file instead of stdout");
}

void emit(const OutputArgs& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw Error("cannot write " + o.out);
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string csv_line(std::initializer_list<std::string> cells) {
    std::string s;
    for (const auto& c : cells) s += (s.empty() ? "" : ",") + c;
    return s + '\n';
}

// ---------------------------------------------------------------- witness

int cmd_witness(const StateArgs& sa, const OutputArgs& o) {
    const DensityMatrix rho = build_state(sa);
    const double ppt_min = min_eigenvalue(partial_transpose(rho.matrix(), rho.dA(), rho.dB(), Side::B));
    json j = {{"state", sa.file.empty() ? sa.name : sa.file},
              {"dA", rho.dA()},
              {"dB", rho.dB()},
              {"ppt_min_eigenvalue", io::sig12(ppt_min)}};
    std::string verdict = "inconclusive";
    bool werner_family = false;
    if (rho.dA() == rho.dB() && rho.dA() >= 2) {
        const double w = flip_witness(rho);
        j["witness"] = io::sig12(w);
        werner_family = max_abs_diff(twirl(rho.matrix(), rho.dA()).matrix(), rho.matrix()) < 1e-10;
        if (werner_family)
            verdict = w >= 0.0 ? "separable" : "entangled";
        else if (w < 0.0)
            verdict = "entangled";
    } else {
        j["witness"] = nullptr;
    }
    const bool ppt_decides = rho.dA() * rho.dB() <= 6;
    std::string ppt_verdict = ppt_min < -1e-12 ? "entangled" : (ppt_decides ? "separable" : "ppt");
    j["werner_family"] = werner_family;
    j["witness_verdict"] = verdict;
    j["ppt_verdict"] = ppt_verdict;
    if (o.format == "csv") {
        const std::string w = j["witness"].is_null() ? "" : io::fmt12(j["witness"].get<double>());
        emit(o, csv_line({"witness", "ppt_min_eigenvalue", "werner_family", "witness_verdict", "ppt_verdict"}) +
                    csv_line({w, io::fmt12(ppt_min), werner_family ? "true" : "false", verdict, ppt_verdict}));
    } else {
        emit(o, j.dump(2));
    }
    return kOk;
}

// ---------------------------------------------------------------- chsh

struct SettingArgs {
    std::string x = "0,0,1", x2 = "1,0,0";
    std::string y = "-1,0,-1", y2 = "-1,0,1";
    bool optimal = false;
};

int cmd_chsh(const StateArgs& sa, const SettingArgs& st, const OutputArgs& o) {
    const DensityMatrix rho = build_state(sa);
    if (rho.dA() != 2 || rho.dB() != 2) throw Error("chsh needs a two-qubit state");
    ChshResult r;
    if (st.optimal) {
        r = chsh_optimal(rho);
    } else {
        r = horodecki_M(rho);
        r.settings = {parse_bloch(st.x), parse_bloch(st.x2), parse_bloch(st.y), parse_bloch(st.y2)};
        r.value = chsh_value(rho, r.settings);
    }
    json j = io::to_json(r);
    j["bound"] = io::sig12(r.bound());
    j["violates"] = r.violates();
    if (o.format == "csv") {
        emit(o, csv_line({"value", "M", "bound", "violates"}) +
                    csv_line({io::fmt12(r.value), io::fmt12(r.m_rho), io::fmt12(r.bound()), r.violates() ? "true" : "false"}));
    } else {
        emit(o, j.dump(2));
    }
    return kOk;
}

// ---------------------------------------------------------------- simulate

struct SimArgs {
    std::string model;
    int d = 2;
    double q = 0.25;
    std::string x = "0,0,1", y = "0,0,1";
    McArgs mc;
};

json pm_stats_json(const DichotomicStats& s) {
    return {{"E_A", io::to_json(s.e_a)}, {"E_B", io::to_json(s.e_b)}, {"E_AB", io::to_json(s.e_ab)}};
}

json povm_json(const Povm& p) {
    json out = json::array();
    for (const auto& m : p.elements()) {
        json e = json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index k = 0; k < m.cols(); ++k) e.push_back({io::sig12(m(i, k).real()), io::sig12(m(i, k).imag())});
        out.push_back(e);
    }
    return out;
}

int cmd_simulate(const SimArgs& a, const OutputArgs& o) {
    const std::uint64_t n = a.mc.count();
    const std::uint64_t seed = a.mc.seed;
    SampleRng setup(mix64(seed ^ 0x5E7C0DE5ULL), 0);
    json j = {{"model", a.model}, {"n", n}, {"seed", seed}};
    JointTable table;
    std::function<double(int, int)> oracle;

    const auto pm = [](const BlochVector& v, int label) {
        return obs_from_bloch(v).measurement().projectors()[label == 1 ? 0 : 1];
    };

    if (a.model == "werner") {
        if (a.d < 2) throw Error("--d must be >= 2");
        const ProjectiveMeasurement pa = random_basis_measurement(setup, a.d);
        const ProjectiveMeasurement pb = random_basis_measurement(setup, a.d);
        const DensityMatrix w = werner_local(a.d);
        table = simulate_werner(a.d, pa, pb, n, seed);
        oracle = [pa, pb, w](int x, int y) { return born_joint(w, pa.projectors()[x], pb.projectors()[y]); };
        j["d"] = a.d;
    } else if (a.model == "gd" || a.model == "epr1bit" || a.model == "hirsch") {
        const BlochVector x = parse_bloch(a.x), y = parse_bloch(a.y);
        j["x"] = io::to_json(x);
        j["y"] = io::to_json(y);
        DensityMatrix target = singlet();
        if (a.model == "gd") {
            const GdStats s = simulate_gd_w2x2(x, y, n, seed);
            table = s.table;
            j["stats"] = pm_stats_json(s);
            j["stats"]["rewrite_mismatch"] = io::to_json(s.rewrite_mismatch);
            j["stats"]["E_AB_target"] = io::sig12(-x.dot(y) / 2.0);
            target = werner2x2(0.5);
        } else if (a.model == "epr1bit") {
            const DichotomicStats s = simulate_epr_one_bit(x, y, n, seed);
            table = s.table;
            j["stats"] = pm_stats_json(s);
            j["stats"]["E_AB_target"] = io::sig12(-x.dot(y));
        } else {
            const HirschStats s = simulate_hirsch_projective(a.q, x, y, n, seed);
            table = s.table;
            j["q"] = a.q;
            j["stats"] = pm_stats_json(s);
            j["stats"]["acceptance"] = io::to_json(s.acceptance);
            j["stats"]["E_A_target"] = io::sig12((1.0 - a.q) * x.z);
            target = rho_G(a.q);
        }
        oracle = [target, x, y, pm](int u, int v) { return born_joint(target, pm(x, u), pm(y, v)); };
    } else if (a.model == "povm-lift") {
        const HirschModel base(a.q);
        const Povm pa = random_povm(setup, 2, 3), pb = random_povm(setup, 2, 3);
        const DensityMatrix sigma = basis_state(2, 0);
        const PovmLiftStats s = simulate_povm_lift(base, sigma, sigma, pa, pb, n, seed);
        table = s.table;
        const DensityMatrix lifted = rho_G_prime(a.q);
        oracle = [lifted, pa, pb](int x, int y) { return born_joint(lifted, pa.elements()[x], pb.elements()[y]); };
        j["q"] = a.q;
        j["povm_A"] = povm_json(pa);
        j["povm_B"] = povm_json(pb);
        j["stats"] = {{"step4_A", io::to_json(s.step4_A)}, {"step4_B", io::to_json(s.step4_B)}, {"step4_target", 0.5}};
    } else if (a.model == "barrett") {
        if (a.d < 2) throw Error("--d must be >= 2");
        const Povm pa = random_povm(setup, a.d, 3), pb = random_povm(setup, a.d, 3);
        table = simulate_barrett(a.d, pa, pb, n, seed);
        const DensityMatrix b = barrett_state(a.d);
        oracle = [b, pa, pb](int x, int y) { return born_joint(b, pa.elements()[x], pb.elements()[y]); };
        j["d"] = a.d;
        j["povm_A"] = povm_json(pa);
        j["povm_B"] = povm_json(pb);
    } else {
        throw Error("unknown model '" + a.model + "'");
    }

    const TableComparison cmp = compare(table, oracle);
    const bool passed = cmp.within(5.0);
    j["table"] = io::to_json(table);
    j["comparison"] = io::to_json(cmp);
    j["max_sigma_ratio"] = io::sig12(cmp.max_sigma_ratio);
    j["passed"] = passed;
    emit(o, o.format == "csv" ? io::to_csv(cmp) : j.dump(2));
    return passed ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- filter-scan

struct ScanArgs {
    std::string family;
    double q = 0.25;
    std::string eps_grid;
    std::optional<int> d;
};

std::vector<double> parse_grid(const std::string& s) {
    if (s.empty()) return default_eps_grid();
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size() || !(v > 0.0)) throw Error("");
            out.push_back(v);
        } catch (const std::exception&) {
            throw Error("--eps-grid entries must be positive numbers: " + tok);
        }
    }
    if (out.empty()) throw Error("--eps-grid is empty");
    return out;
}

int cmd_filter_scan(const ScanArgs& a, OutputArgs o) {
    if (a.family == "popescu") {
        std::vector<int> ds;
        if (a.d)
            ds.push_back(*a.d);
        else
            for (int d = 3; d <= 8; ++d) ds.push_back(d);
        json rows = json::array();
        std::string csv = csv_line({"d", "chsh", "chsh_bound", "success_prob", "closed_form", "violates"});
        for (int d : ds) {
            const PopescuResult p = popescu_protocol(d);
            const double closed = 2.0 * std::numbers::sqrt2 * d / (d + 2.0);
            rows.push_back({{"d", d},
                            {"chsh", io::sig12(p.chsh)},
                            {"chsh_bound", io::sig12(p.chsh_bound)},
                            {"success_prob", io::sig12(p.success_prob)},
                            {"closed_form", io::sig12(closed)},
                            {"violates", p.chsh > 2.0}});
            csv += csv_line({std::to_string(d), io::fmt12(p.chsh), io::fmt12(p.chsh_bound), io::fmt12(p.success_prob),
                             io::fmt12(closed), p.chsh > 2.0 ? "true" : "false"});
        }
        emit(o, o.format == "json" ? json{{"family", "popescu"}, {"rows", rows}}.dump(2) : csv);
        return kOk;
    }
    const FilterFamily fam = a.family == "rho-g" ? FilterFamily::rho_G : FilterFamily::rho_G_prime;
    if (!(a.q >= 0.0 && a.q <= 1.0)) throw Error("--q must lie in [0, 1]");
    const auto rows = hidden_nonlocality_scan(fam, a.q, parse_grid(a.eps_grid));
    const double limit = filtered_M_limit(fam, a.q);
    const double limit_chsh = 2.0 * std::sqrt(limit);
    json jrows = json::array();
    std::string csv = csv_line({"epsilon", "success_prob", "M", "chsh_bound", "chsh_at_optimal", "M_limit", "chsh_limit"});
    for (const ScanRow& r : rows) {
        jrows.push_back({{"epsilon", io::sig12(r.epsilon)},
                         {"success_prob", io::sig12(r.success_prob)},
                         {"M", io::sig12(r.m)},
                         {"chsh_bound", io::sig12(r.chsh_bound)},
                         {"chsh_at_optimal", io::sig12(r.chsh_at_optimal)}});
        csv += csv_line({io::fmt12(r.epsilon), io::fmt12(r.success_prob), io::fmt12(r.m), io::fmt12(r.chsh_bound),
                         io::fmt12(r.chsh_at_optimal), io::fmt12(limit), io::fmt12(limit_chsh)});
    }
    emit(o, o.format == "json" ? json{{"family", a.family},
                                      {"q", a.q},
                                      {"M_limit", io::sig12(limit)},
                                      {"chsh_limit", io::sig12(limit_chsh)},
                                      {"rows", jrows}}
                                     .dump(2)
                               : csv);
    return kOk;
}

// ---------------------------------------------------------------- reproduce

int cmd_reproduce(const McArgs& mc, const std::string& out_dir) {
    acceptance::AcceptanceOptions opts;
    opts.n = mc.count();
    opts.seed = mc.seed;
    if (opts.n < acceptance::kUnderpoweredN)
        std::cerr << "warning: n = " << opts.n << " is below " << acceptance::kUnderpoweredN
                  << "; the 5-sigma tests are underpowered\n";
    const acceptance::Report rep =
        acceptance::run_all(opts, [](const auto& r) { std::cout << acceptance::verdict_line(r) << std::endl; });
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream(std::filesystem::path(out_dir) / "report.json") << rep.to_json().dump(2) << '\n';
        std::ofstream(std::filesystem::path(out_dir) / "comparisons.csv") << rep.comparisons_csv();
    }
    std::cout << (rep.all_gating_passed() ? "all gating criteria passed" : "some criteria failed") << '\n';
    return rep.all_gating_passed() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement, Bell nonlocality and local hidden-variable models"};
    app.require_subcommand(1);

    StateArgs wstate;
    OutputArgs wout;
    auto* witness = app.add_subcommand("witness", "Flip witness, PPT test and separability verdict");
    add_state_options(witness, wstate);
    add_output_options(witness, wout);

    StateArgs cstate;
    SettingArgs csettings;
    OutputArgs cout_;
    auto* chsh = app.add_subcommand("chsh", "CHSH value and the Horodecki quantity M");
    add_state_options(chsh, cstate);
    add_output_options(chsh, cout_);
    chsh->add_option("--x", csettings.x, "Alice setting x as 'x,y,z'");
    chsh->add_option("--x2", csettings.x2, "Alice setting x'");
    chsh->add_option("--y", csettings.y, "Bob setting y");
    chsh->add_option("--y2", csettings.y2, "Bob setting y'");
    chsh->add_flag("--optimal", csettings.optimal, "Use settings reaching 2 sqrt(M)");

    SimArgs sim;
    OutputArgs sout;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo LHV simulation against the Born rule");
    simulate->add_option("model", sim.model, "Model")
        ->required()
        ->check(CLI::IsMember({"werner", "gd", "epr1bit", "hirsch", "povm-lift", "barrett"}));
    simulate->add_option("--d", sim.d, "Local dimension (werner, barrett)");
    simulate->add_option("--q", sim.q, "q for hirsch and povm-lift (0 <= q <= 1/2)");
    simulate->add_option("--x", sim.x, "Alice direction");
    simulate->add_option("--y", sim.y, "Bob direction");
    simulate->add_option("--n", sim.mc.n, "Samples");
    simulate->add_option("--seed", sim.mc.seed, "Seed");
    add_output_options(simulate, sout);

    ScanArgs scan;
    OutputArgs fout;
    fout.format = "csv";
    auto* filter = app.add_subcommand("filter-scan", "Filtered M over an epsilon grid, or the Popescu protocol");
    filter->add_option("family", scan.family, "Family")
        ->required()
        ->check(CLI::IsMember({"rho-g", "rho-g-prime", "popescu"}));
    filter->add_option("--q", scan.q, "q");
    filter->add_option("--eps-grid", scan.eps_grid, "Comma-separated epsilon values");
    filter->add_option("--d", scan.d, "Dimension for popescu (default 3..8)");
    add_output_options(filter, fout);

    McArgs rmc;
    std::string rout;
    auto* reproduce = app.add_subcommand("reproduce", "Run the acceptance suite");
    reproduce->add_option("--n", rmc.n, "Samples per Monte Carlo check");
    reproduce->add_option("--seed", rmc.seed, "Seed");
    reproduce->add_option("--out", rout, "Directory for report.json and comparisons.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalidInput;
    }

    try {
        if (*witness) return cmd_witness(wstate, wout);
        if (*chsh) return cmd_chsh(cstate, csettings, cout_);
        if (*simulate) return cmd_simulate(sim, sout);
        if (*filter) return cmd_filter_scan(scan, fout);
        if (*reproduce) return cmd_reproduce(rmc, rout);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalidInput;
    }
    return kInvalidInput;
}
