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

/**
 * @file
 * Experiment registry, result tables and the fault-tolerance certifier.
 *
 * Result table columns, in this order:
 *   protocol, metric, stratum, k, n, point, lo, hi, source
 * protocol is "<experiment>.<mode>"; metric is one of LER, DSTB, RR, mu,
 * lambda, delta; stratum is a first-round syndrome ("00", "10", "11", "01")
 * or empty; k and n are empty for derived rows; source is SIM or IMP.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bsec/circuit.hpp"
#include "bsec/engine.hpp"
#include "bsec/noise.hpp"
#include "bsec/stats.hpp"

namespace bsec {

std::string_view library_version();

struct ResultRow {
    std::string protocol;
    std::string metric;
    std::string stratum;
    EstimateCI value;
    std::string source;

    bool operator==(const ResultRow &) const = default;
};

struct ResultMetadata {
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    std::string config_hash;
    std::string version;

    bool operator==(const ResultMetadata &) const = default;
};

struct ResultTable {
    std::optional<ResultMetadata> metadata;
    std::vector<ResultRow> rows;

    /// First row matching all three keys, or nullptr.
    const ResultRow *find(std::string_view protocol, std::string_view metric, std::string_view source,
                          std::string_view stratum = "") const;
    const ResultRow &at(std::string_view protocol, std::string_view metric, std::string_view source,
                        std::string_view stratum = "") const;

    bool operator==(const ResultTable &) const = default;
};

enum class TableFormat { kCsv, kJson };

/// Metadata (when present) goes first as "# key=value" lines.
void write_csv(const ResultTable &table, std::ostream &out);
void write_json(const ResultTable &table, std::ostream &out);
ResultTable read_json(std::istream &in);
/// Throws std::runtime_error on I/O failure.
void emit(const ResultTable &table, TableFormat format, const std::filesystem::path &path);

struct ExperimentSpec {
    std::string id;
    std::vector<ExperimentKind> circuits;
    std::vector<std::string> modes;
    bool headline = true;  // part of `table --all`
};

const std::vector<ExperimentSpec> &experiment_registry();
/// Throws std::invalid_argument for unknown ids.
const ExperimentSpec &find_experiment(std::string_view id);

/// Turns decoded shots into result rows; fed in circuit order, shot order.
class Analyzer {
  public:
    virtual ~Analyzer() = default;
    virtual void add(ExperimentKind circuit, const ShotRecord &record) = 0;
    virtual std::vector<ResultRow> rows(std::string_view source) const = 0;
};

std::unique_ptr<Analyzer> make_analyzer(const ExperimentSpec &spec);

struct RunSettings {
    std::uint64_t shots = 10000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    bool improved = false;
    /// When set, every shot is also written here as JSON lines.
    std::ostream *dump = nullptr;
};

std::string_view source_label(bool improved);

/// Runs every circuit of the experiment and decodes all modes. `improved`
/// routes the parameters through apply_improved. Metadata hashes `base`.
ResultTable run_experiment(std::string_view id, const NoiseParams &base, const RunSettings &settings);

/// SIM and IMP for every headline experiment, concatenated in registry order.
ResultTable run_all(const NoiseParams &base, const RunSettings &settings);

/// Re-decodes a shot dump written by run_experiment.
ResultTable redecode(std::istream &dump);

inline constexpr int kShotDumpVersion = 1;

struct FaultReport {
    InjectedFault fault;
    std::string circuit;  // circuit the fault was placed in
    std::string gate_tag;  // tag of the gate the fault follows ("init" at boundary 0)
    double error_probability = 0.0;
};

struct OracleReport {
    std::string protocol;
    std::size_t faults_checked = 0;
    std::vector<FaultReport> violations;

    bool clean() const { return violations.empty(); }
};

/// Protocols: prep (|0_L> and |+_L>), shor_single_shot, shor_a1, shor_a2,
/// steane (both ancillas, feedback decoding), bell (ZZ and XX).
const std::vector<std::string> &oracle_protocols();

/// Every protocol except single-shot Shor should certify clean.
bool oracle_expected_clean(std::string_view protocol);

/// Exhaustive single-fault certification with exact outcome probabilities.
OracleReport run_ft_oracle(std::string_view protocol);

}  // namespace bsec
