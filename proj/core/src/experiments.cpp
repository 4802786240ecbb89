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

#include "bsec/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "bsec/config.hpp"
#include "bsec/decoders.hpp"

#ifndef BSEC_VERSION
#define BSEC_VERSION "0.0.0"
#endif

namespace bsec {

using nlohmann::ordered_json;

std::string_view library_version() { return BSEC_VERSION; }

const ResultRow *ResultTable::find(std::string_view protocol, std::string_view metric, std::string_view source,
                                   std::string_view stratum) const {
    for (const auto &r : rows) {
        if (r.protocol == protocol && r.metric == metric && r.source == source && r.stratum == stratum) {
            return &r;
        }
    }
    return nullptr;
}

const ResultRow &ResultTable::at(std::string_view protocol, std::string_view metric, std::string_view source,
                                 std::string_view stratum) const {
    if (const ResultRow *r = find(protocol, metric, source, stratum)) {
        return *r;
    }
    throw std::out_of_range("no row " + std::string(protocol) + "/" + std::string(metric) + "/" +
                            std::string(source) + "/" + std::string(stratum));
}

namespace {

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

void write_csv(const ResultTable &table, std::ostream &out) {
    if (table.metadata) {
        out << "# seed=" << table.metadata->seed << '\n'
            << "# shots=" << table.metadata->shots << '\n'
            << "# config_hash=" << table.metadata->config_hash << '\n'
            << "# version=" << table.metadata->version << '\n';
    }
    out << "protocol,metric,stratum,k,n,point,lo,hi,source\n";
    for (const auto &r : table.rows) {
        out << csv_field(r.protocol) << ',' << csv_field(r.metric) << ',' << csv_field(r.stratum) << ',';
        if (r.value.n > 0) {
            out << r.value.k << ',' << r.value.n << ',';
        } else {
            out << ",,";
        }
        out << format_double(r.value.point) << ',' << format_double(r.value.lo) << ',' << format_double(r.value.hi)
            << ',' << csv_field(r.source) << '\n';
    }
}

void write_json(const ResultTable &table, std::ostream &out) {
    ordered_json doc = ordered_json::object();
    if (table.metadata) {
        doc["metadata"] = {{"seed", table.metadata->seed},
                           {"shots", table.metadata->shots},
                           {"config_hash", table.metadata->config_hash},
                           {"version", table.metadata->version}};
    }
    doc["columns"] = {"protocol", "metric", "stratum", "k", "n", "point", "lo", "hi", "source"};
    ordered_json rows = ordered_json::array();
    for (const auto &r : table.rows) {
        ordered_json j;
        j["protocol"] = r.protocol;
        j["metric"] = r.metric;
        j["stratum"] = r.stratum;
        j["k"] = r.value.n > 0 ? ordered_json(r.value.k) : ordered_json(nullptr);
        j["n"] = r.value.n > 0 ? ordered_json(r.value.n) : ordered_json(nullptr);
        j["point"] = std::isnan(r.value.point) ? ordered_json(nullptr) : ordered_json(r.value.point);
        j["lo"] = r.value.lo;
        j["hi"] = r.value.hi;
        j["source"] = r.source;
        rows.push_back(std::move(j));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

ResultTable read_json(std::istream &in) {
    const ordered_json doc = ordered_json::parse(in);
    ResultTable table;
    if (doc.contains("metadata")) {
        const auto &m = doc["metadata"];
        table.metadata = ResultMetadata{m.at("seed").get<std::uint64_t>(), m.at("shots").get<std::uint64_t>(),
                                        m.at("config_hash").get<std::string>(), m.at("version").get<std::string>()};
    }
    for (const auto &j : doc.at("rows")) {
        ResultRow r;
        r.protocol = j.at("protocol").get<std::string>();
        r.metric = j.at("metric").get<std::string>();
        r.stratum = j.at("stratum").get<std::string>();
        r.source = j.at("source").get<std::string>();
        r.value.point = j.at("point").is_null() ? std::numeric_limits<double>::quiet_NaN() : j["point"].get<double>();
        r.value.lo = j.at("lo").get<double>();
        r.value.hi = j.at("hi").get<double>();
        if (!j.at("n").is_null()) {
            r.value.k = j.at("k").get<std::int64_t>();
            r.value.n = j.at("n").get<std::int64_t>();
        } else {
            r.value.derived = !std::isnan(r.value.point);
        }
        table.rows.push_back(std::move(r));
    }
    return table;
}

void emit(const ResultTable &table, TableFormat format, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    if (format == TableFormat::kCsv) {
        write_csv(table, out);
    } else {
        write_json(table, out);
    }
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

const std::vector<ExperimentSpec> &experiment_registry() {
    static const std::vector<ExperimentSpec> registry = {
        {"direct_prep", {ExperimentKind::kDirectPrep}, {"ec", "ps_data"}, true},
        {"shor",
         {ExperimentKind::kShorE1, ExperimentKind::kShorE2},
         {"single_shot", "adaptive1", "adaptive2", "disturbance", "detection"},
         true},
        {"shor_s1only", {ExperimentKind::kShorE1, ExperimentKind::kShorE2S1Only}, {"adaptive2_s1only"}, false},
        {"steane_plus",
         {ExperimentKind::kSteanePlus},
         {"feedback", "disturbance", "ps_ancilla", "ps_data", "ps_joint"},
         true},
        {"steane_zero",
         {ExperimentKind::kSteaneZero},
         {"feedback", "disturbance", "ps_ancilla", "ps_data", "ps_joint"},
         true},
        {"steane_no_cnot_plus",
         {ExperimentKind::kSteaneNoCnotPlus},
         {"disturbance", "ps_ancilla", "ps_data", "ps_joint"},
         true},
        {"steane_no_cnot_zero",
         {ExperimentKind::kSteaneNoCnotZero},
         {"disturbance", "ps_ancilla", "ps_data", "ps_joint"},
         true},
        {"bell_zz", {ExperimentKind::kBellZZ}, {"ec", "ps"}, true},
        {"bell_xx", {ExperimentKind::kBellXX}, {"ec", "ps"}, true},
    };
    return registry;
}

const ExperimentSpec &find_experiment(std::string_view id) {
    for (const auto &spec : experiment_registry()) {
        if (spec.id == id) {
            return spec;
        }
    }
    throw std::invalid_argument("unknown experiment '" + std::string(id) + "'");
}

namespace {

ResultRow row(const std::string &protocol, const char *metric, EstimateCI v, std::string_view source,
              std::string stratum = {}) {
    return ResultRow{protocol, metric, std::move(stratum), v, std::string(source)};
}

/// LER among accepted shots plus the rejected fraction.
struct PsTally {
    Tally errors;    // over accepted shots
    Tally rejected;  // over all shots

    void add(const DecodeOutcome &o) {
        rejected.add(!o.accepted);
        if (o.accepted) {
            errors.add(o.logical_error);
        }
    }
};

class DirectPrepAnalyzer final : public Analyzer {
  public:
    explicit DirectPrepAnalyzer(std::string id) : id_(std::move(id)) {}
    void add(ExperimentKind, const ShotRecord &rec) override {
        ec_.add(decode_direct_prep(rec).logical_error);
        ps_.add(decode_direct_prep(rec, false, true));
    }
    std::vector<ResultRow> rows(std::string_view source) const override {
        return {row(id_ + ".ec", "LER", ec_.estimate(), source),
                row(id_ + ".ps_data", "LER", ps_.errors.estimate(), source),
                row(id_ + ".ps_data", "RR", ps_.rejected.estimate(), source)};
    }

  private:
    std::string id_;
    Tally ec_;
    PsTally ps_;
};

void conditional_rows(std::vector<ResultRow> &out, const std::string &id, const ConditionalTable &t,
                      std::string_view source) {
    for (int r = 0; r < 2; ++r) {
        const std::string protocol = id + ".E" + std::to_string(r + 1);
        for (const char *metric : {"mu", "lambda", "delta"}) {
            const auto &entries = std::string_view(metric) == "mu"       ? t.mu[r]
                                  : std::string_view(metric) == "lambda" ? t.lambda[r]
                                                                         : t.delta[r];
            for (int s : kStrataOrder) {
                out.push_back(row(protocol, metric, entries[s], source, Syndrome::from_index(s).label()));
            }
        }
    }
}

class ShorAnalyzer final : public Analyzer {
  public:
    explicit ShorAnalyzer(std::string id) : id_(std::move(id)) {}
    void add(ExperimentKind kind, const ShotRecord &rec) override {
        if (kind == ExperimentKind::kShorE1) {
            tally_.add(1, rec);
            single_shot_.add(decode_shor_single_shot(rec).logical_error);
            disturbance_.add(decode_shor_disturbance(rec).logical_error);
        } else {
            tally_.add(2, rec);
        }
    }
    std::vector<ResultRow> rows(std::string_view source) const override {
        const ConditionalTable t = build_conditional_table(tally_);
        const int trivial = 0;
        Tally rejected{tally_.shots[0] - tally_.lambda[0][trivial].n, tally_.shots[0]};
        std::vector<ResultRow> out = {
            row(id_ + ".single_shot", "LER", single_shot_.estimate(), source),
            row(id_ + ".adaptive1", "LER", combine_adaptive_ler(t, CombineVariant::kAdaptive1), source),
            row(id_ + ".adaptive2", "LER", combine_adaptive_ler(t, CombineVariant::kAdaptive2), source),
            row(id_ + ".disturbance", "DSTB", disturbance_.estimate(), source),
            row(id_ + ".detection", "LER", t.lambda[0][trivial], source),
            row(id_ + ".detection", "RR", rejected.estimate(), source),
        };
        conditional_rows(out, id_, t, source);
        return out;
    }

  private:
    std::string id_;
    ShorTally tally_;
    Tally single_shot_;
    Tally disturbance_;
};

class ShorS1OnlyAnalyzer final : public Analyzer {
  public:
    explicit ShorS1OnlyAnalyzer(std::string id) : id_(std::move(id)) {}
    void add(ExperimentKind kind, const ShotRecord &rec) override {
        if (kind == ExperimentKind::kShorE1) {
            tally_.add(1, rec);
        } else if (shor_syndrome(rec, 1).index() == Syndrome{false, true}.index()) {
            round2_.add(decode_shor_s1only_round2(rec).logical_error);
        }
    }
    std::vector<ResultRow> rows(std::string_view source) const override {
        ConditionalTable t = build_conditional_table(tally_);
        t.lambda[1][Syndrome{false, true}.index()] = round2_.estimate();
        return {row(id_ + ".adaptive2_s1only", "LER", combine_adaptive_ler(t, CombineVariant::kAdaptive2), source)};
    }

  private:
    std::string id_;
    ShorTally tally_;
    Tally round2_;
};

class SteaneAnalyzer final : public Analyzer {
  public:
    SteaneAnalyzer(std::string id, AncillaKind ancilla, bool with_feedback)
        : id_(std::move(id)), ancilla_(ancilla), feedback_enabled_(with_feedback) {}
    void add(ExperimentKind, const ShotRecord &rec) override {
        if (feedback_enabled_) {
            feedback_.add(decode_steane(rec, ancilla_, SteaneMode::kFeedback).logical_error);
        }
        disturbance_.add(decode_steane(rec, ancilla_, SteaneMode::kDisturbance).logical_error);
        ps_[0].add(decode_steane(rec, ancilla_, SteaneMode::kPsAncilla));
        ps_[1].add(decode_steane(rec, ancilla_, SteaneMode::kPsData));
        ps_[2].add(decode_steane(rec, ancilla_, SteaneMode::kPsJoint));
    }
    std::vector<ResultRow> rows(std::string_view source) const override {
        std::vector<ResultRow> out;
        if (feedback_enabled_) {
            out.push_back(row(id_ + ".feedback", "LER", feedback_.estimate(), source));
        }
        out.push_back(row(id_ + ".disturbance", "DSTB", disturbance_.estimate(), source));
        const char *names[3] = {".ps_ancilla", ".ps_data", ".ps_joint"};
        for (int m = 0; m < 3; ++m) {
            out.push_back(row(id_ + names[m], "LER", ps_[m].errors.estimate(), source));
            out.push_back(row(id_ + names[m], "RR", ps_[m].rejected.estimate(), source));
        }
        return out;
    }

  private:
    std::string id_;
    AncillaKind ancilla_;
    bool feedback_enabled_;
    Tally feedback_;
    Tally disturbance_;
    PsTally ps_[3];
};

class BellAnalyzer final : public Analyzer {
  public:
    BellAnalyzer(std::string id, BellBasis basis) : id_(std::move(id)), basis_(basis) {}
    void add(ExperimentKind, const ShotRecord &rec) override {
        ec_.add(decode_bell(rec, basis_, false).logical_error);
        ps_.add(decode_bell(rec, basis_, true));
    }
    std::vector<ResultRow> rows(std::string_view source) const override {
        return {row(id_ + ".ec", "LER", ec_.estimate(), source),
                row(id_ + ".ps", "LER", ps_.errors.estimate(), source),
                row(id_ + ".ps", "RR", ps_.rejected.estimate(), source)};
    }

  private:
    std::string id_;
    BellBasis basis_;
    Tally ec_;
    PsTally ps_;
};

}  // namespace

std::unique_ptr<Analyzer> make_analyzer(const ExperimentSpec &spec) {
    switch (spec.circuits.back()) {
        case ExperimentKind::kDirectPrep:
            return std::make_unique<DirectPrepAnalyzer>(spec.id);
        case ExperimentKind::kShorE2:
            return std::make_unique<ShorAnalyzer>(spec.id);
        case ExperimentKind::kShorE2S1Only:
            return std::make_unique<ShorS1OnlyAnalyzer>(spec.id);
        case ExperimentKind::kSteanePlus:
            return std::make_unique<SteaneAnalyzer>(spec.id, AncillaKind::kPlus, true);
        case ExperimentKind::kSteaneZero:
            return std::make_unique<SteaneAnalyzer>(spec.id, AncillaKind::kZero, true);
        case ExperimentKind::kSteaneNoCnotPlus:
            return std::make_unique<SteaneAnalyzer>(spec.id, AncillaKind::kPlus, false);
        case ExperimentKind::kSteaneNoCnotZero:
            return std::make_unique<SteaneAnalyzer>(spec.id, AncillaKind::kZero, false);
        case ExperimentKind::kBellZZ:
            return std::make_unique<BellAnalyzer>(spec.id, BellBasis::kZZ);
        case ExperimentKind::kBellXX:
            return std::make_unique<BellAnalyzer>(spec.id, BellBasis::kXX);
        default:
            break;
    }
    throw std::invalid_argument("no analyzer for experiment '" + spec.id + "'");
}

std::string_view source_label(bool improved) { return improved ? "IMP" : "SIM"; }

namespace {

std::string bit_string(const std::vector<std::uint8_t> &bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits) {
        s += b ? '1' : '0';
    }
    return s;
}

ordered_json dump_header(std::string_view id, std::string_view source, const RunSettings &settings,
                         const std::string &hash) {
    return {{"format", "bsec-shots"},
            {"version", kShotDumpVersion},
            {"experiment", id},
            {"source", source},
            {"seed", settings.seed},
            {"shots", settings.shots},
            {"config_hash", hash},
            {"library_version", library_version()}};
}

}  // namespace

ResultTable run_experiment(std::string_view id, const NoiseParams &base, const RunSettings &settings) {
    const ExperimentSpec &spec = find_experiment(id);
    if (settings.shots == 0) {
        throw std::invalid_argument("run_experiment needs at least one shot");
    }
    const NoiseParams params = settings.improved ? apply_improved(base) : base;
    const std::string_view source = source_label(settings.improved);
    const std::string hash = config_hash(base);
    auto analyzer = make_analyzer(spec);
    if (settings.dump) {
        *settings.dump << dump_header(id, source, settings, hash).dump() << '\n';
    }
    for (ExperimentKind kind : spec.circuits) {
        const Simulator sim(build_experiment(kind, params.durations), params);
        const std::string circuit_name(to_string(kind));
        const SeedPolicy seeds{settings.seed,
                               SeedPolicy::salt_for(spec.id + "/" + circuit_name + "/" + std::string(source))};
        run_monte_carlo(sim, settings.shots, seeds, settings.workers,
                        [&](std::uint64_t shot, const ShotRecord &rec) {
                            analyzer->add(kind, rec);
                            if (settings.dump) {
                                ordered_json line;
                                line["circuit"] = circuit_name;
                                line["shot"] = shot;
                                ordered_json bits = ordered_json::object();
                                for (const auto &[name, b] : rec.bits) {
                                    bits[name] = bit_string(b);
                                }
                                line["bits"] = std::move(bits);
                                *settings.dump << line.dump() << '\n';
                            }
                        });
    }
    ResultTable table;
    table.metadata = ResultMetadata{settings.seed, settings.shots, hash, std::string(library_version())};
    table.rows = analyzer->rows(source);
    return table;
}

ResultTable run_all(const NoiseParams &base, const RunSettings &settings) {
    ResultTable all;
    for (const auto &spec : experiment_registry()) {
        if (!spec.headline) {
            continue;
        }
        for (bool improved : {false, true}) {
            RunSettings s = settings;
            s.improved = improved;
            ResultTable t = run_experiment(spec.id, base, s);
            all.metadata = t.metadata;
            all.rows.insert(all.rows.end(), t.rows.begin(), t.rows.end());
        }
    }
    return all;
}

ResultTable redecode(std::istream &dump) {
    ResultTable table;
    std::unique_ptr<Analyzer> analyzer;
    std::string source;
    auto flush = [&] {
        if (analyzer) {
            auto rows = analyzer->rows(source);
            table.rows.insert(table.rows.end(), rows.begin(), rows.end());
        }
    };
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(dump, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const std::exception &e) {
            throw std::runtime_error("shot dump line " + std::to_string(line_no) + ": " + e.what());
        }
        if (j.contains("format")) {
            if (j["format"] != "bsec-shots" || j.at("version").get<int>() != kShotDumpVersion) {
                throw std::runtime_error("shot dump line " + std::to_string(line_no) + ": unsupported format");
            }
            flush();
            analyzer = make_analyzer(find_experiment(j.at("experiment").get<std::string>()));
            source = j.at("source").get<std::string>();
            if (!table.metadata) {
                table.metadata = ResultMetadata{j.at("seed").get<std::uint64_t>(), j.at("shots").get<std::uint64_t>(),
                                                j.at("config_hash").get<std::string>(),
                                                j.at("library_version").get<std::string>()};
            }
            continue;
        }
        if (!analyzer) {
            throw std::runtime_error("shot dump line " + std::to_string(line_no) + ": record before header");
        }
        ShotRecord rec;
        for (const auto &[name, bits] : j.at("bits").items()) {
            auto &v = rec.bits[name];
            for (char c : bits.get<std::string>()) {
                if (c != '0' && c != '1') {
                    throw std::runtime_error("shot dump line " + std::to_string(line_no) + ": bad bit");
                }
                v.push_back(static_cast<std::uint8_t>(c - '0'));
            }
        }
        analyzer->add(parse_experiment_kind(j.at("circuit").get<std::string>()), rec);
    }
    flush();
    return table;
}

const std::vector<std::string> &oracle_protocols() {
    static const std::vector<std::string> names = {"prep",    "shor_single_shot", "shor_a1",
                                                   "shor_a2", "steane",           "bell"};
    return names;
}

bool oracle_expected_clean(std::string_view protocol) { return protocol != "shor_single_shot"; }

namespace {

constexpr double kViolationThreshold = 1e-9;

std::string tag_of(const NativeCircuit &c, const InjectedFault &f) {
    return f.boundary == 0 ? "init" : c.gates[f.boundary - 1].tag;
}

void certify(OracleReport &report, const NativeCircuit &circuit, const ErrorPredicate &is_error) {
    for (const auto &fault : enumerate_fault_sites(circuit)) {
        ++report.faults_checked;
        const double p = inject_fault_run(circuit, fault, is_error);
        if (p > kViolationThreshold) {
            report.violations.push_back({fault, circuit.name, tag_of(circuit, fault), p});
        }
    }
}

bool fits_prefix(const NativeCircuit &prefix, std::size_t prefix_gates, const InjectedFault &f) {
    if (f.boundary > prefix_gates) {
        return false;
    }
    for (const auto &p : f.paulis) {
        if (!std::binary_search(prefix.ions.begin(), prefix.ions.end(), p.ion)) {
            return false;
        }
    }
    return true;
}

// Mid-circuit adaptive protocol: round two only runs when round one does
// not stop. Its error probability is assembled from the exact outcome
// distributions of the one-round prefix and the two-round circuit.
void certify_adaptive(OracleReport &report, AdaptiveVariant variant) {
    const NativeCircuit e1 = build_experiment(ExperimentKind::kShorE1);
    const NativeCircuit e2 = build_experiment(ExperimentKind::kShorE2);
    const std::size_t e1_gates = e1.gates.size() - 1;
    const Simulator sim1(e1, NoiseParams::noiseless(), RunOptions{false, false, false});
    const Simulator sim2(e2, NoiseParams::noiseless(), RunOptions{false, false, false});
    const auto &tables = correction_tables();
    const CorrectionTable &stop_table =
        variant == AdaptiveVariant::kII ? tables.adaptive2_round1 : tables.single_shot_round1;

    auto stop_part = [&](const std::vector<std::pair<ShotRecord, double>> &outcomes) {
        double p = 0.0;
        for (const auto &[rec, prob] : outcomes) {
            if (adaptive_stops(shor_syndrome(rec, 1), variant) &&
                decode_shor_round(rec, 1, stop_table).logical_error) {
                p += prob;
            }
        }
        return p;
    };
    const double clean_stop = stop_part(sim1.exact_outcomes(InjectedFault{}));

    for (const auto &fault : enumerate_fault_sites(e2)) {
        ++report.faults_checked;
        double p = fits_prefix(e1, e1_gates, fault) ? stop_part(sim1.exact_outcomes(fault)) : clean_stop;
        for (const auto &[rec, prob] : sim2.exact_outcomes(fault)) {
            if (!adaptive_stops(shor_syndrome(rec, 1), variant) &&
                decode_shor_round(rec, 2, tables.adaptive_round2).logical_error) {
                p += prob;
            }
        }
        if (p > kViolationThreshold) {
            report.violations.push_back({fault, e2.name, tag_of(e2, fault), p});
        }
    }
}

}  // namespace

OracleReport run_ft_oracle(std::string_view protocol) {
    OracleReport report;
    report.protocol = std::string(protocol);
    if (protocol == "prep") {
        certify(report, build_experiment(ExperimentKind::kDirectPrep),
                [](const ShotRecord &r) { return std::optional<bool>(decode_direct_prep(r).logical_error); });
        certify(report, build_experiment(ExperimentKind::kDirectPrepPlus),
                [](const ShotRecord &r) { return std::optional<bool>(decode_direct_prep(r, true).logical_error); });
    } else if (protocol == "shor_single_shot") {
        certify(report, build_experiment(ExperimentKind::kShorE1),
                [](const ShotRecord &r) { return std::optional<bool>(decode_shor_single_shot(r).logical_error); });
    } else if (protocol == "shor_a1") {
        certify_adaptive(report, AdaptiveVariant::kI);
    } else if (protocol == "shor_a2") {
        certify_adaptive(report, AdaptiveVariant::kII);
    } else if (protocol == "steane") {
        certify(report, build_experiment(ExperimentKind::kSteanePlus), [](const ShotRecord &r) {
            return std::optional<bool>(decode_steane(r, AncillaKind::kPlus, SteaneMode::kFeedback).logical_error);
        });
        certify(report, build_experiment(ExperimentKind::kSteaneZero), [](const ShotRecord &r) {
            return std::optional<bool>(decode_steane(r, AncillaKind::kZero, SteaneMode::kFeedback).logical_error);
        });
    } else if (protocol == "bell") {
        certify(report, build_experiment(ExperimentKind::kBellZZ), [](const ShotRecord &r) {
            return std::optional<bool>(decode_bell(r, BellBasis::kZZ, false).logical_error);
        });
        certify(report, build_experiment(ExperimentKind::kBellXX), [](const ShotRecord &r) {
            return std::optional<bool>(decode_bell(r, BellBasis::kXX, false).logical_error);
        });
    } else {
        throw std::invalid_argument("unknown oracle protocol '" + std::string(protocol) + "'");
    }
    return report;
}

}  // namespace bsec
