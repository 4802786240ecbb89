// Copyright 2026 The bsec Authors
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

#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bsec/circuit.hpp"
#include "bsec/config.hpp"
#include "bsec/experiments.hpp"
#include "bsec/noise.hpp"

namespace bsec {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

unsigned workers_from_env() {
    const char *v = std::getenv("BSEC_WORKERS");
    if (!v || !*v) {
        return 1;
    }
    char *end = nullptr;
    const unsigned long n = std::strtoul(v, &end, 10);
    if (*end != '\0' || n == 0 || n > 1024) {
        throw UsageError(std::string("BSEC_WORKERS must be a positive integer, got '") + v + "'");
    }
    return static_cast<unsigned>(n);
}

NoiseParams params_from(const std::string &config_path, std::ostream &err) {
    if (config_path.empty()) {
        return NoiseParams::defaults();
    }
    LoadedConfig loaded = load_config(config_path);
    if (!loaded.defaulted.empty()) {
        err << "config: defaults used for";
        for (const auto &k : loaded.defaulted) {
            err << ' ' << k;
        }
        err << '\n';
    }
    return loaded.params;
}

TableFormat parse_format(const std::string &f) {
    if (f == "csv") {
        return TableFormat::kCsv;
    }
    if (f == "json") {
        return TableFormat::kJson;
    }
    throw UsageError("--format must be csv or json");
}

void write_table(const ResultTable &table, const std::string &format, const std::string &path, std::ostream &out) {
    const TableFormat fmt = parse_format(format);
    if (path.empty() || path == "-") {
        fmt == TableFormat::kCsv ? write_csv(table, out) : write_json(table, out);
    } else {
        emit(table, fmt, path);
    }
}

void print_report(const OracleReport &report, std::ostream &out) {
    out << report.protocol << ": " << report.faults_checked << " faults checked, " << report.violations.size()
        << " violation(s)\n";
    for (const auto &v : report.violations) {
        out << "  " << v.circuit << " after gate " << v.fault.boundary << " [" << v.gate_tag << "] ";
        for (const auto &p : v.fault.paulis) {
            out << to_char(p.pauli) << p.ion << ' ';
        }
        out << "p_err=" << v.error_probability << '\n';
    }
}

/// Rows "x,y[,sigma]" with an optional header line.
void calibrate_fit(const std::string &path, std::ostream &out) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::vector<double> x, y, sigma;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::vector<double> cells;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                cells.push_back(std::stod(cell, &used));
            } catch (const std::exception &) {
                numeric = false;
            }
        }
        if (!numeric) {
            if (x.empty() && line_no == 1) {
                continue;  // header
            }
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected numbers");
        }
        if (cells.size() < 2 || cells.size() > 3 || (!sigma.empty() && cells.size() == 2) ||
            (!x.empty() && sigma.empty() && cells.size() == 3)) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected 2 or 3 columns consistently");
        }
        x.push_back(cells[0]);
        y.push_back(cells[1]);
        if (cells.size() == 3) {
            sigma.push_back(cells[2]);
        }
    }
    const LinearFit fit = fit_through_origin(y, x, sigma);
    out << "slope=" << fit.slope << " std_error=" << fit.std_error << " points=" << x.size() << '\n';
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Monte-Carlo Bacon-Shor syndrome-extraction simulator", "bsec"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(library_version()));

    std::string experiment, config_path, out_path, format = "csv", dump_path, protocol, csv_path;
    std::uint64_t shots = 10000, seed = 1;
    bool improved = false, all = false;

    auto *run = app.add_subcommand("run", "Simulate one experiment and print its table");
    run->add_option("experiment", experiment, "Registry id")->required();
    run->add_option("--shots", shots, "Shots per circuit")->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "Master seed");
    run->add_option("--config", config_path, "Noise config JSON");
    run->add_flag("--improved", improved, "Apply the improved-hardware projection");
    run->add_option("--out", out_path, "Output file (default stdout)");
    run->add_option("--format", format, "csv or json");
    run->add_option("--dump-shots", dump_path, "Write every shot as JSON lines");

    auto *oracle = app.add_subcommand("oracle", "Exhaustive single-fault certification");
    oracle->add_option("protocol", protocol, "prep, shor_single_shot, shor_a1, shor_a2, steane or bell")->required();

    auto *table = app.add_subcommand("table", "SIM and IMP rows for every headline experiment");
    table->add_flag("--all", all, "Run the whole registry")->required();
    table->add_option("--shots", shots, "Shots per circuit")->check(CLI::PositiveNumber);
    table->add_option("--seed", seed, "Master seed");
    table->add_option("--config", config_path, "Noise config JSON");
    table->add_option("--out", out_path, "Output file (default stdout)");
    table->add_option("--format", format, "csv or json");

    auto *dump = app.add_subcommand("dump-circuit", "Print the scheduled native circuit as JSON lines");
    dump->add_option("experiment", experiment, "Circuit kind")->required();
    dump->add_option("--config", config_path, "Noise config JSON (for durations)");

    auto *fit = app.add_subcommand("calibrate-fit", "Fit y = slope * x through the origin");
    fit->add_option("csv", csv_path, "Columns x,y[,sigma]")->required();

    auto *re = app.add_subcommand("redecode", "Rebuild a table from a shot dump");
    re->add_option("dump", dump_path, "Shot dump file")->required();
    re->add_option("--out", out_path, "Output file (default stdout)");
    re->add_option("--format", format, "csv or json");

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) {
        args.emplace_back(argv[i]);
    }
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion &) {
        out << library_version() << '\n';
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*run) {
            const NoiseParams params = params_from(config_path, err);
            RunSettings settings{shots, seed, workers_from_env(), improved, nullptr};
            std::ofstream dump_out;
            if (!dump_path.empty()) {
                dump_out.open(dump_path, std::ios::binary);
                if (!dump_out) {
                    throw std::runtime_error("cannot open " + dump_path);
                }
                settings.dump = &dump_out;
            }
            parse_format(format);
            write_table(run_experiment(experiment, params, settings), format, out_path, out);
        } else if (*oracle) {
            const OracleReport report = run_ft_oracle(protocol);
            print_report(report, out);
            return report.clean() || !oracle_expected_clean(protocol) ? kExitOk : kExitOracleViolation;
        } else if (*table) {
            const NoiseParams params = params_from(config_path, err);
            parse_format(format);
            write_table(run_all(params, RunSettings{shots, seed, workers_from_env(), false, nullptr}), format,
                        out_path, out);
        } else if (*dump) {
            const NoiseParams params = params_from(config_path, err);
            dump_circuit_jsonl(build_experiment(parse_experiment_kind(experiment), params.durations), out);
        } else if (*fit) {
            calibrate_fit(csv_path, out);
        } else if (*re) {
            std::ifstream in(dump_path, std::ios::binary);
            if (!in) {
                throw std::runtime_error("cannot open " + dump_path);
            }
            parse_format(format);
            write_table(redecode(in), format, out_path, out);
        }
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

}  // namespace bsec
