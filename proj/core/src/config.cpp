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

#include "bsec/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>

namespace bsec {

using nlohmann::json;

namespace {

const std::set<std::string> kKnownKeys = {
    "u",       "b_squared", "n_bar0",    "n_dot_per_ms", "p_z",       "p_x",          "gamma_deph_per_us",
    "p_1to0",  "p_0to1",    "durations", "crosstalk",    "cooling_reset",
};

double number(const json &v, const std::string &field) {
    if (!v.is_number()) {
        throw ConfigError("config field '" + field + "' must be a number");
    }
    return v.get<double>();
}

double probability(const json &v, const std::string &field) {
    const double p = number(v, field);
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError("config field '" + field + "' must be a probability in [0,1], got " + v.dump());
    }
    return p;
}

double non_negative(const json &v, const std::string &field) {
    const double x = number(v, field);
    if (!(x >= 0.0)) {
        throw ConfigError("config field '" + field + "' must be non-negative, got " + v.dump());
    }
    return x;
}

std::vector<double> vector_of(const json &v, const std::string &field) {
    if (!v.is_array()) {
        throw ConfigError("config field '" + field + "' must be an array");
    }
    std::vector<double> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        out.push_back(non_negative(v[k], field + "[" + std::to_string(k) + "]"));
    }
    return out;
}

std::vector<std::vector<double>> matrix_of(const json &v, const std::string &field) {
    if (!v.is_array()) {
        throw ConfigError("config field '" + field + "' must be a matrix");
    }
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_array()) {
            throw ConfigError("config field '" + field + "[" + std::to_string(i) + "]' must be an array");
        }
        std::vector<double> row;
        for (std::size_t j = 0; j < v[i].size(); ++j) {
            row.push_back(number(v[i][j], field + "[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
        }
        out.push_back(std::move(row));
    }
    return out;
}

PairTable pair_table(const json &v, const std::string &field) {
    if (v.is_number()) {
        return PairTable(probability(v, field));
    }
    const auto rows = matrix_of(v, field);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            probability(rows[i][j], field + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
        }
    }
    try {
        return PairTable::from_matrix(rows);
    } catch (const std::invalid_argument &e) {
        throw ConfigError("config field '" + field + "': " + e.what());
    }
}

json pair_json(const PairTable &t) {
    if (t.is_uniform()) {
        return t.uniform_value();
    }
    return t.to_matrix();
}

}  // namespace

LoadedConfig parse_config(const json &doc) {
    if (!doc.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    for (const auto &[key, _] : doc.items()) {
        if (!kKnownKeys.count(key)) {
            throw ConfigError("unknown config field '" + key + "'");
        }
    }
    LoadedConfig out;
    out.params = NoiseParams::defaults();
    NoiseParams &p = out.params;
    auto has = [&](const char *key) {
        if (doc.contains(key)) {
            return true;
        }
        out.defaulted.emplace_back(key);
        return false;
    };

    if (doc.contains("u") && doc.contains("b_squared")) {
        throw ConfigError("config fields 'u' and 'b_squared' are mutually exclusive");
    }
    if (doc.contains("u")) {
        p.u = vector_of(doc["u"], "u");
    } else if (doc.contains("b_squared")) {
        p.u.clear();
        for (double b2 : vector_of(doc["b_squared"], "b_squared")) {
            p.u.push_back(motional_coupling(b2));
        }
    } else {
        out.defaulted.emplace_back("u");
    }
    if (p.u.size() < 13) {
        throw ConfigError("config field 'u' needs at least 13 entries, got " + std::to_string(p.u.size()));
    }
    if (has("n_bar0")) {
        p.n_bar0 = non_negative(doc["n_bar0"], "n_bar0");
    }
    if (has("n_dot_per_ms")) {
        p.n_dot_per_us = non_negative(doc["n_dot_per_ms"], "n_dot_per_ms") / 1000.0;
    }
    if (has("p_z")) {
        p.p_z = pair_table(doc["p_z"], "p_z");
    }
    if (has("p_x")) {
        p.p_x = pair_table(doc["p_x"], "p_x");
    }
    if (has("gamma_deph_per_us")) {
        p.gamma_deph_per_us = non_negative(doc["gamma_deph_per_us"], "gamma_deph_per_us");
    }
    if (has("p_1to0")) {
        p.p_1to0 = probability(doc["p_1to0"], "p_1to0");
    }
    if (has("p_0to1")) {
        p.p_0to1 = probability(doc["p_0to1"], "p_0to1");
    }
    if (has("durations")) {
        const json &d = doc["durations"];
        if (!d.is_object()) {
            throw ConfigError("config field 'durations' must be an object");
        }
        for (const auto &[key, v] : d.items()) {
            const std::string field = "durations." + key;
            if (key == "sq_segment_us") {
                p.durations.sq_segment_us = number(v, field);
            } else if (key == "sq_segments") {
                if (!v.is_number_integer()) {
                    throw ConfigError("config field '" + field + "' must be an integer");
                }
                p.durations.sq_segments = v.get<int>();
            } else if (key == "xx_us") {
                p.durations.xx_us = number(v, field);
            } else if (key == "measure_us") {
                p.durations.measure_us = number(v, field);
            } else {
                throw ConfigError("unknown config field '" + field + "'");
            }
        }
    }
    if (has("crosstalk") && !doc["crosstalk"].is_null()) {
        const json &c = doc["crosstalk"];
        if (!c.is_object()) {
            throw ConfigError("config field 'crosstalk' must be an object or null");
        }
        for (const auto &[key, _] : c.items()) {
            if (key != "enabled" && key != "chi" && key != "A") {
                throw ConfigError("unknown config field 'crosstalk." + key + "'");
            }
        }
        if (c.contains("enabled")) {
            if (!c["enabled"].is_boolean()) {
                throw ConfigError("config field 'crosstalk.enabled' must be a boolean");
            }
            p.crosstalk.enabled = c["enabled"].get<bool>();
        }
        if (c.contains("chi")) {
            p.crosstalk.chi = matrix_of(c["chi"], "crosstalk.chi");
        }
        if (c.contains("A")) {
            const json &a = c["A"];
            if (!a.is_array()) {
                throw ConfigError("config field 'crosstalk.A' must be a rank-3 array");
            }
            for (std::size_t i = 0; i < a.size(); ++i) {
                p.crosstalk.A.push_back(matrix_of(a[i], "crosstalk.A[" + std::to_string(i) + "]"));
            }
        }
        if (p.crosstalk.enabled && (p.crosstalk.chi.empty() || p.crosstalk.A.empty())) {
            throw ConfigError("config field 'crosstalk': enabled without chi and A");
        }
    }
    if (has("cooling_reset")) {
        if (!doc["cooling_reset"].is_boolean()) {
            throw ConfigError("config field 'cooling_reset' must be a boolean");
        }
        p.cooling_reset = doc["cooling_reset"].get<bool>();
    }
    try {
        p.validate();
    } catch (const std::exception &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return out;
}

LoadedConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

json to_json(const NoiseParams &p) {
    json j = json::object();
    j["u"] = p.u;
    j["n_bar0"] = p.n_bar0;
    j["n_dot_per_ms"] = p.n_dot_per_us * 1000.0;
    j["p_z"] = pair_json(p.p_z);
    j["p_x"] = pair_json(p.p_x);
    j["gamma_deph_per_us"] = p.gamma_deph_per_us;
    j["p_1to0"] = p.p_1to0;
    j["p_0to1"] = p.p_0to1;
    j["durations"] = {{"sq_segment_us", p.durations.sq_segment_us},
                      {"sq_segments", p.durations.sq_segments},
                      {"xx_us", p.durations.xx_us},
                      {"measure_us", p.durations.measure_us}};
    if (p.crosstalk.enabled || !p.crosstalk.chi.empty()) {
        j["crosstalk"] = {{"enabled", p.crosstalk.enabled}, {"chi", p.crosstalk.chi}, {"A", p.crosstalk.A}};
    } else {
        j["crosstalk"] = nullptr;
    }
    j["cooling_reset"] = p.cooling_reset;
    return j;
}

std::string config_hash(const NoiseParams &params) {
    const std::string canonical = to_json(params).dump();  // keys sorted by nlohmann::json
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : canonical) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace bsec
