// Copyright 2026 The klmtel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: coefficient tables, lambda_n tables, outcome
// tables, and oracle-verification reports in text, CSV, or JSON.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "klmtel/klmtel.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kDefaultOracleCap = 6;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// %.17g is round-trip exact for doubles; text tables use 8 digits.
std::string fmt(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

std::string fmt17(double v) {
    return fmt(v, 17);
}

std::string fmt8(double v) {
    return fmt(v, 8);
}

struct RunConfig {
    int n = 0;
    int n_max = 0;
    std::string profile = "optimal";
    double alpha_re = 0.0, alpha_im = 0.0, beta_re = 0.0, beta_im = 0.0;
    bool input_given = false;
    std::uint64_t seed = 0;
    double eig_tol = 1e-12;
    double verify_tol = 1e-9;
    int trials = 20;
    std::string format = "text";
    std::string output;
};

void emit(const RunConfig& cfg, const std::string& body) {
    if (cfg.output.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) {
        throw UsageError("cannot open output file: " + cfg.output);
    }
    f << body;
    if (!f) {
        throw UsageError("failed while writing: " + cfg.output);
    }
}

int oracle_cap_from_env() {
    const char* raw = std::getenv("KLMTEL_ORACLE_CAP");
    if (raw == nullptr || *raw == '\0') {
        return kDefaultOracleCap;
    }
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 1 || v > 64) {
        throw UsageError("KLMTEL_ORACLE_CAP must be an integer in 1..64");
    }
    return static_cast<int>(v);
}

klmtel::CoefficientProfile load_profile_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        throw UsageError("cannot open profile file: " + path);
    }
    std::vector<double> values;
    std::string line;
    while (std::getline(f, line)) {
        std::istringstream ss(line);
        double v;
        if (ss >> v) {
            values.push_back(v);
            std::string trailing;
            if (ss >> trailing) {
                throw UsageError("profile file has more than one value per line: " + path);
            }
        } else {
            std::string word;
            if (ss >> word) {
                throw UsageError("profile file contains a non-numeric line: " + path);
            }
            // blank line, skip
        }
    }
    if (values.size() < 2) {
        throw UsageError("profile file must hold at least two coefficients: " + path);
    }
    double nrm2 = 0.0;
    for (double v : values) {
        nrm2 += v * v;
    }
    if (std::abs(std::sqrt(nrm2) - 1.0) > 1e-9) {
        std::cerr << "warning: profile file is not normalized (|f| = " << fmt(std::sqrt(nrm2), 8)
                  << "), renormalizing\n";
    }
    return klmtel::CoefficientProfile::normalized(std::move(values));
}

// --profile optimal|uniform|file:PATH, combined with --n
klmtel::CoefficientProfile resolve_profile(const RunConfig& cfg) {
    if (cfg.profile == "optimal" || cfg.profile == "uniform") {
        if (cfg.n < 1) {
            throw UsageError("--n must be >= 1 for --profile " + cfg.profile);
        }
        return cfg.profile == "optimal" ? klmtel::optimal_profile(cfg.n, cfg.eig_tol)
                                        : klmtel::uniform_profile(cfg.n);
    }
    if (cfg.profile.rfind("file:", 0) == 0) {
        klmtel::CoefficientProfile p = load_profile_file(cfg.profile.substr(5));
        if (cfg.n != 0 && cfg.n != p.n()) {
            throw UsageError("--n disagrees with the profile file length");
        }
        return p;
    }
    throw UsageError("--profile must be optimal, uniform, or file:PATH");
}

klmtel::QubitState resolve_input(const RunConfig& cfg) {
    if (!cfg.input_given) {
        return klmtel::plus_state();
    }
    try {
        return klmtel::QubitState::normalized({cfg.alpha_re, cfg.alpha_im}, {cfg.beta_re, cfg.beta_im});
    } catch (const std::invalid_argument&) {
        throw UsageError("input state amplitudes must not all be zero");
    }
}

std::string profile_label(const RunConfig& cfg) {
    return cfg.profile;
}

// ---------------------------------------------------------------- commands

int cmd_coefficients(const RunConfig& cfg) {
    if (cfg.n < 1) {
        throw UsageError("--n must be >= 1");
    }
    const klmtel::EigenPair pair = klmtel::largest_eigenpair(klmtel::build_matrix_a(cfg.n), cfg.eig_tol);
    const double closed = klmtel::closed_form_lambda(cfg.n);

    std::ostringstream out;
    if (cfg.format == "text") {
        out << "n              " << cfg.n << "\n";
        out << "lambda_solved  " << fmt8(pair.value) << "\n";
        out << "lambda_closed  " << fmt8(closed) << "\n";
        for (std::size_t i = 0; i < pair.vector.size(); ++i) {
            std::string label = "f[" + std::to_string(i) + "]";
            if (label.size() < 15) {
                label.resize(15, ' ');
            } else {
                label += ' ';
            }
            out << label << fmt8(pair.vector[i]) << "\n";
        }
    } else if (cfg.format == "csv") {
        out << "n,lambda_solved,lambda_closed,i,f\n";
        for (std::size_t i = 0; i < pair.vector.size(); ++i) {
            out << cfg.n << ',' << fmt17(pair.value) << ',' << fmt17(closed) << ',' << i << ','
                << fmt17(pair.vector[i]) << "\n";
        }
    } else {
        json j;
        j["command"] = "coefficients";
        j["n"] = cfg.n;
        j["tol"] = cfg.eig_tol;
        j["lambda_solved"] = pair.value;
        j["lambda_closed"] = closed;
        j["coefficients"] = pair.vector;
        out << j.dump(2) << "\n";
    }
    emit(cfg, out.str());
    return 0;
}

int cmd_lambda_table(const RunConfig& cfg) {
    if (cfg.n_max < 1) {
        throw UsageError("--n-max must be >= 1");
    }
    struct Row {
        int n;
        double solved, closed, from_mu, baseline, gap, one_minus;
    };
    std::vector<Row> rows;
    rows.reserve(static_cast<std::size_t>(cfg.n_max));
    for (int n = 1; n <= cfg.n_max; ++n) {
        const double solved = klmtel::largest_eigenpair(klmtel::build_matrix_a(n), cfg.eig_tol).value;
        const double mu = klmtel::largest_eigenpair(klmtel::build_matrix_b(n), cfg.eig_tol).value;
        const double closed = klmtel::closed_form_lambda(n);
        rows.push_back(Row{n, solved, closed, 0.5 + mu / 4.0, static_cast<double>(n) / (n + 1),
                           std::abs(solved - closed), 1.0 - solved});
    }

    std::ostringstream out;
    if (cfg.format == "text") {
        out << "   n  lambda_solved  lambda_closed  lambda_from_mu  uniform_baseline  solved_vs_closed  one_minus_lambda\n";
        for (const Row& r : rows) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%4d  %13s  %13s  %14s  %16s  %16s  %16s\n", r.n,
                          fmt8(r.solved).c_str(), fmt8(r.closed).c_str(), fmt8(r.from_mu).c_str(),
                          fmt8(r.baseline).c_str(), fmt8(r.gap).c_str(), fmt8(r.one_minus).c_str());
            out << buf;
        }
    } else if (cfg.format == "csv") {
        out << "n,lambda_solved,lambda_closed,lambda_from_mu,uniform_baseline,solved_vs_closed,one_minus_lambda\n";
        for (const Row& r : rows) {
            out << r.n << ',' << fmt17(r.solved) << ',' << fmt17(r.closed) << ',' << fmt17(r.from_mu)
                << ',' << fmt17(r.baseline) << ',' << fmt17(r.gap) << ',' << fmt17(r.one_minus) << "\n";
        }
    } else {
        json j;
        j["command"] = "lambda-table";
        j["n_max"] = cfg.n_max;
        j["tol"] = cfg.eig_tol;
        j["rows"] = json::array();
        for (const Row& r : rows) {
            json row;
            row["n"] = r.n;
            row["lambda_solved"] = r.solved;
            row["lambda_closed"] = r.closed;
            row["lambda_from_mu"] = r.from_mu;
            row["uniform_baseline"] = r.baseline;
            row["solved_vs_closed"] = r.gap;
            row["one_minus_lambda"] = r.one_minus;
            j["rows"].push_back(std::move(row));
        }
        out << j.dump(2) << "\n";
    }
    emit(cfg, out.str());
    return 0;
}

int cmd_outcomes(const RunConfig& cfg) {
    const klmtel::CoefficientProfile profile = resolve_profile(cfg);
    const klmtel::QubitState psi = resolve_input(cfg);
    const auto table = klmtel::full_outcome_table(psi, profile);
    const double success = klmtel::success_probability(psi, profile);
    const bool is_plus = !cfg.input_given;
    const bool compare_lambda = (cfg.profile == "optimal") && is_plus;
    const double lambda = compare_lambda ? klmtel::closed_form_lambda(profile.n()) : 0.0;

    std::vector<double> cumulative(table.size(), 0.0);
    double running = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i].fidelity_sq) {
            running += table[i].probability * *table[i].fidelity_sq;
        }
        cumulative[i] = running;
    }

    std::ostringstream out;
    if (cfg.format == "text") {
        out << "   k  probability  fidelity_sq  cumulative_success\n";
        for (std::size_t i = 0; i < table.size(); ++i) {
            const auto& row = table[i];
            char buf[128];
            std::snprintf(buf, sizeof(buf), "%4d  %11s  %11s  %18s\n", row.k,
                          fmt8(row.probability).c_str(),
                          row.fidelity_sq ? fmt8(*row.fidelity_sq).c_str() : "-",
                          fmt8(cumulative[i]).c_str());
            out << buf;
        }
        out << "success_probability  " << fmt8(success) << "\n";
        if (compare_lambda) {
            out << "lambda_n             " << fmt8(lambda) << "\n";
            out << "success_vs_lambda    " << fmt8(std::abs(success - lambda)) << "\n";
        }
    } else if (cfg.format == "csv") {
        out << "k,probability,fidelity_sq,cumulative_success\n";
        for (std::size_t i = 0; i < table.size(); ++i) {
            const auto& row = table[i];
            out << row.k << ',' << fmt17(row.probability) << ','
                << (row.fidelity_sq ? fmt17(*row.fidelity_sq) : std::string()) << ','
                << fmt17(cumulative[i]) << "\n";
        }
    } else {
        json j;
        j["command"] = "outcomes";
        j["n"] = profile.n();
        j["profile"] = profile_label(cfg);
        j["input"] = {{"alpha", {psi.alpha.real(), psi.alpha.imag()}},
                      {"beta", {psi.beta.real(), psi.beta.imag()}}};
        j["rows"] = json::array();
        for (std::size_t i = 0; i < table.size(); ++i) {
            const auto& row = table[i];
            json r;
            r["k"] = row.k;
            r["probability"] = row.probability;
            if (row.fidelity_sq) {
                r["fidelity_sq"] = *row.fidelity_sq;
            } else {
                r["fidelity_sq"] = nullptr;
            }
            r["cumulative_success"] = cumulative[i];
            j["rows"].push_back(std::move(r));
        }
        j["success_probability"] = success;
        if (compare_lambda) {
            j["lambda_n"] = lambda;
            j["success_vs_lambda"] = std::abs(success - lambda);
        }
        out << j.dump(2) << "\n";
    }
    emit(cfg, out.str());
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    const int cap = oracle_cap_from_env();
    const klmtel::CoefficientProfile profile = resolve_profile(cfg);
    if (profile.n() > cap) {
        throw UsageError("n = " + std::to_string(profile.n()) + " exceeds the oracle cap " +
                         std::to_string(cap) + " (override with KLMTEL_ORACLE_CAP)");
    }
    if (cfg.trials < 1) {
        throw UsageError("--trials must be >= 1");
    }
    if (!(cfg.verify_tol > 0.0)) {
        throw UsageError("--tol must be > 0");
    }

    klmtel::OracleOptions options;
    options.n_cap = cap;
    klmtel::Rng rng(cfg.seed);
    klmtel::EquivalenceReport worst;
    for (int t = 0; t < cfg.trials; ++t) {
        const klmtel::QubitState psi = klmtel::sample_qubit(rng);
        const klmtel::EquivalenceReport rep = klmtel::compare_with_analytic(psi, profile, options);
        worst.probability_dev = std::max(worst.probability_dev, rep.probability_dev);
        worst.conditional_dev = std::max(worst.conditional_dev, rep.conditional_dev);
        worst.expected_fidelity_dev = std::max(worst.expected_fidelity_dev, rep.expected_fidelity_dev);
        worst.completeness_dev = std::max(worst.completeness_dev, rep.completeness_dev);
    }

    struct Check {
        const char* name;
        double dev;
    };
    const Check checks[] = {
        {"probability", worst.probability_dev},
        {"conditional_fidelity", worst.conditional_dev},
        {"expected_fidelity_sq", worst.expected_fidelity_dev},
        {"completeness", worst.completeness_dev},
    };
    const bool pass = worst.worst() <= cfg.verify_tol;

    std::ostringstream out;
    if (cfg.format == "text") {
        out << "verify  n=" << profile.n() << " profile=" << profile_label(cfg) << " trials=" << cfg.trials
            << " seed=" << cfg.seed << " tol=" << fmt8(cfg.verify_tol) << "\n";
        out << "check                 max_deviation  status\n";
        for (const Check& c : checks) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "%-20s  %13s  %s\n", c.name, fmt8(c.dev).c_str(),
                          c.dev <= cfg.verify_tol ? "PASS" : "FAIL");
            out << buf;
        }
        out << "overall: " << (pass ? "PASS" : "FAIL") << "\n";
    } else if (cfg.format == "csv") {
        out << "check,max_deviation,tolerance,status\n";
        for (const Check& c : checks) {
            out << c.name << ',' << fmt17(c.dev) << ',' << fmt17(cfg.verify_tol) << ','
                << (c.dev <= cfg.verify_tol ? "PASS" : "FAIL") << "\n";
        }
    } else {
        json j;
        j["command"] = "verify";
        j["n"] = profile.n();
        j["profile"] = profile_label(cfg);
        j["trials"] = cfg.trials;
        j["seed"] = cfg.seed;
        j["tol"] = cfg.verify_tol;
        j["oracle_cap"] = cap;
        j["checks"] = json::array();
        for (const Check& c : checks) {
            json r;
            r["name"] = c.name;
            r["max_deviation"] = c.dev;
            r["tolerance"] = cfg.verify_tol;
            r["pass"] = c.dev <= cfg.verify_tol;
            j["checks"].push_back(std::move(r));
        }
        j["pass"] = pass;
        out << j.dump(2) << "\n";
    }
    emit(cfg, out.str());
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Optimal ancilla profiles and exact success-probability bounds for "
                 "linear-optical teleportation, with a brute-force Fock-space oracle"};
    app.require_subcommand(1);

    const auto add_format = [&cfg](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format")
            ->check(CLI::IsMember({"text", "csv", "json"}))
            ->capture_default_str();
        sub->add_option("--output", cfg.output, "Write the report to a file instead of stdout");
    };
    const auto add_profile = [&cfg](CLI::App* sub) {
        sub->add_option("--profile", cfg.profile, "optimal | uniform | file:PATH")->capture_default_str();
        sub->add_option("--n", cfg.n, "Number of coefficient steps (2n ancilla modes)");
    };

    CLI::App* coeff = app.add_subcommand("coefficients", "Optimal coefficients f(0..n) and lambda_n");
    coeff->add_option("--n", cfg.n, "Number of coefficient steps")->required();
    coeff->add_option("--tol", cfg.eig_tol, "Eigensolver bisection tolerance")->capture_default_str();
    add_format(coeff);

    CLI::App* table = app.add_subcommand("lambda-table", "lambda_n for n = 1..n_max with cross-checks");
    table->add_option("--n-max", cfg.n_max, "Largest n in the table")->required();
    table->add_option("--tol", cfg.eig_tol, "Eigensolver bisection tolerance")->capture_default_str();
    add_format(table);

    CLI::App* outcomes = app.add_subcommand("outcomes", "Per-outcome probabilities and fidelities");
    add_profile(outcomes);
    auto* are = outcomes->add_option("--alpha-re", cfg.alpha_re, "Re alpha of the input state");
    auto* aim = outcomes->add_option("--alpha-im", cfg.alpha_im, "Im alpha of the input state");
    auto* bre = outcomes->add_option("--beta-re", cfg.beta_re, "Re beta of the input state");
    auto* bim = outcomes->add_option("--beta-im", cfg.beta_im, "Im beta of the input state");
    add_format(outcomes);

    CLI::App* verify = app.add_subcommand("verify", "Run the Fock-space oracle against the closed forms");
    add_profile(verify);
    verify->add_option("--trials", cfg.trials, "Number of seeded random input states")->capture_default_str();
    verify->add_option("--seed", cfg.seed, "PRNG seed (mt19937_64)")->capture_default_str();
    verify->add_option("--tol", cfg.verify_tol, "Maximum allowed deviation")->capture_default_str();
    add_format(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cfg.input_given = are->count() > 0 || aim->count() > 0 || bre->count() > 0 || bim->count() > 0;

    try {
        if (coeff->parsed()) {
            return cmd_coefficients(cfg);
        }
        if (table->parsed()) {
            return cmd_lambda_table(cfg);
        }
        if (outcomes->parsed()) {
            return cmd_outcomes(cfg);
        }
        return cmd_verify(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
