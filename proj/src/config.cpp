#include "radarknn/harness.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace rknn {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': bad number '" + value +
                          "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': bad integer '" + value +
                          "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size() || (!value.empty() && value[0] == '-')) {
            throw std::invalid_argument(value);
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': bad seed '" + value +
                          "'");
    }
}

std::vector<double> parse_double_list(const std::string& key,
                                      const std::string& value) {
    std::vector<double> out;
    if (trim(value).empty()) return out;
    for (const auto& item : split(value, ',')) {
        out.push_back(parse_double(key, item));
    }
    return out;
}

std::vector<StackedStat> parse_stats(const std::string& key,
                                     const std::string& value) {
    std::vector<StackedStat> out;
    for (const auto& item : split(value, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() != 2) {
            throw ConfigError("config key '" + key + "': entry '" + item +
                              "' is not name:weight");
        }
        StackedStat st;
        st.transform = transform_from_name(parts[0]);
        st.weight = parse_double(key, parts[1]);
        out.push_back(st);
    }
    return out;
}

// Stacked-spec presets used by the oracle grid.
FeatureSpec oracle_spec_preset(const std::string& name) {
    if (name == "kelly-amf") {
        return FeatureSpec::stacked({{1.0, StatTransform::kelly},
                                     {0.7, StatTransform::amf}});
    }
    if (name == "kelly-ace") {
        return FeatureSpec::stacked({{1.0, StatTransform::kelly},
                                     {0.8, StatTransform::ace}});
    }
    throw ConfigError("unknown oracle spec preset '" + name + "'");
}

std::vector<OracleCase> parse_oracle_grid(const std::string& key,
                                          const std::string& value) {
    std::vector<OracleCase> out;
    if (trim(value).empty()) return out;
    for (const auto& item : split(value, ';')) {
        if (item.empty()) continue;
        const auto f = split(item, ':');
        if (f.size() != 5) {
            throw ConfigError("config key '" + key + "': entry '" + item +
                              "' is not n_t:k:m:law:spec");
        }
        OracleCase oc;
        const long long n_t = parse_int(key, f[0]);
        if (n_t < 1) {
            throw ConfigError("config key '" + key + "': n_t must be >= 1");
        }
        oc.n_t = static_cast<std::size_t>(n_t);
        oc.k = static_cast<int>(parse_int(key, f[1]));
        oc.m = static_cast<int>(parse_int(key, f[2]));
        oc.law = f[3];
        if (oc.law != "h0" && oc.law != "matched" && oc.law != "mismatched") {
            throw ConfigError("config key '" + key + "': law '" + oc.law +
                              "' not one of h0|matched|mismatched");
        }
        oc.spec = f[4];
        oracle_spec_preset(oc.spec); // name check
        out.push_back(oc);
    }
    return out;
}

// The full key set, shared by the parser and the env-override scan.
const char* const kKnownKeys[] = {
    "scenario.n",          "scenario.k_s",        "scenario.doppler",
    "scenario.rho",        "scenario.snr_db",     "scenario.doppler_offset",
    "scenario.target_cos2", "seed",               "knn.n_t",
    "knn.k",               "knn.t",               "feature.kind",
    "feature.stats",       "detectors",           "trials.pfa",
    "trials.pd",           "snr_grid_db",         "calibrate.target_pfa",
    "cfar.rho_list",       "oracle.grid",         "oracle.mismatch_cos2",
    "oracle.n_outer",      "oracle.n_trials",     "output.path",
    "threads",
};

std::string env_name_for(const std::string& key) {
    std::string name = "RADARKNN_";
    for (char c : key) {
        if (c == '.') {
            name += "__";
        } else {
            name += static_cast<char>(
                std::toupper(static_cast<unsigned char>(c)));
        }
    }
    return name;
}

} // namespace

const char* detector_name(DetectorId id) {
    switch (id) {
        case DetectorId::kelly: return "kelly";
        case DetectorId::amf: return "amf";
        case DetectorId::ace: return "ace";
        case DetectorId::knn_raw: return "knn_raw";
        case DetectorId::knn_stats: return "knn_stats";
    }
    throw ConfigError("detector id out of range");
}

DetectorId detector_from_name(const std::string& name) {
    if (name == "kelly") return DetectorId::kelly;
    if (name == "amf") return DetectorId::amf;
    if (name == "ace") return DetectorId::ace;
    if (name == "knn_raw") return DetectorId::knn_raw;
    if (name == "knn_stats") return DetectorId::knn_stats;
    throw ConfigError("unknown detector '" + name + "'");
}

FeatureSpec oracle_case_spec(const OracleCase& oc) {
    return oracle_spec_preset(oc.spec);
}

ScenarioConfig ExperimentConfig::resolved_scenario() const {
    ScenarioConfig out = scenario;
    if (target_cos2) {
        out.doppler_offset =
            *target_cos2 >= 1.0
                ? 0.0
                : find_doppler_offset(out.n, out.doppler, out.rho,
                                      *target_cos2);
    }
    return out;
}

bool ExperimentConfig::has_knn() const {
    for (DetectorId d : detectors) {
        if (d == DetectorId::knn_raw || d == DetectorId::knn_stats) {
            return true;
        }
    }
    return false;
}

void ExperimentConfig::validate() const {
    scenario.validate();
    feature.validate();
    if (n_t < 1) throw ConfigError("knn.n_t must be >= 1");
    rule.validate(2 * n_t);
    if (pfa_trials < 1000) throw ConfigError("trials.pfa must be >= 1000");
    if (pd_trials < 100) throw ConfigError("trials.pd must be >= 100");
    if (detectors.empty()) throw ConfigError("detectors must be nonempty");
    for (DetectorId d : detectors) {
        if (d == DetectorId::knn_stats &&
            feature.kind != FeatureSpec::Kind::stacked_stats) {
            throw ConfigError(
                "knn_stats detector needs feature.kind = stacked");
        }
    }
    if (target_cos2 && !(*target_cos2 > 0.0 && *target_cos2 <= 1.0)) {
        throw ConfigError("scenario.target_cos2 must lie in (0, 1]");
    }
    if (calibrate_target &&
        !(*calibrate_target > 0.0 && *calibrate_target < 0.5)) {
        throw ConfigError("calibrate.target_pfa must lie in (0, 0.5)");
    }
    for (double r : cfar_rho_list) {
        if (!(r > 0.0 && r < 1.0)) {
            throw ConfigError("cfar.rho_list entries must lie in (0, 1)");
        }
    }
    if (!(oracle_mismatch_cos2 > 0.0 && oracle_mismatch_cos2 <= 1.0)) {
        throw ConfigError("oracle.mismatch_cos2 must lie in (0, 1]");
    }
    for (const auto& oc : oracle_grid) {
        KnnDesign design{oc.n_t, oc.k, oc.m};
        design.validate();
        oracle_case_spec(oc); // preset name check
        if (oc.law != "h0" && oc.law != "matched" && oc.law != "mismatched") {
            throw ConfigError("oracle law '" + oc.law + "' unknown");
        }
    }
    if (threads < 1) throw ConfigError("threads must be >= 1");
    for (double s : snr_grid_db) {
        if (!std::isfinite(s)) throw ConfigError("snr_grid_db must be finite");
    }
}

void apply_config_line(ExperimentConfig& cfg, const std::string& key,
                       const std::string& value) {
    if (key == "scenario.n") {
        cfg.scenario.n = static_cast<int>(parse_int(key, value));
    } else if (key == "scenario.k_s") {
        cfg.scenario.k_s = static_cast<int>(parse_int(key, value));
    } else if (key == "scenario.doppler") {
        cfg.scenario.doppler = parse_double(key, value);
    } else if (key == "scenario.rho") {
        cfg.scenario.rho = parse_double(key, value);
    } else if (key == "scenario.snr_db") {
        cfg.scenario.snr_db = parse_double(key, value);
    } else if (key == "scenario.doppler_offset") {
        cfg.scenario.doppler_offset = parse_double(key, value);
    } else if (key == "scenario.target_cos2") {
        if (trim(value).empty()) {
            cfg.target_cos2.reset();
        } else {
            cfg.target_cos2 = parse_double(key, value);
        }
    } else if (key == "seed") {
        cfg.scenario.seed = parse_u64(key, value);
    } else if (key == "knn.n_t") {
        const long long v = parse_int(key, value);
        if (v < 1) throw ConfigError("knn.n_t must be >= 1");
        cfg.n_t = static_cast<std::size_t>(v);
    } else if (key == "knn.k") {
        cfg.rule.k = static_cast<int>(parse_int(key, value));
    } else if (key == "knn.t") {
        cfg.rule.t = parse_double(key, value);
    } else if (key == "feature.kind") {
        if (value == "raw") {
            cfg.feature.kind = FeatureSpec::Kind::raw_whitened;
        } else if (value == "stacked") {
            cfg.feature.kind = FeatureSpec::Kind::stacked_stats;
        } else {
            throw ConfigError("feature.kind must be raw or stacked");
        }
    } else if (key == "feature.stats") {
        // Supplying a stat list selects the stacked spec; an explicit
        // feature.kind afterwards still wins.
        cfg.feature.stats = parse_stats(key, value);
        cfg.feature.kind = FeatureSpec::Kind::stacked_stats;
    } else if (key == "detectors") {
        cfg.detectors.clear();
        for (const auto& name : split(value, ',')) {
            cfg.detectors.push_back(detector_from_name(name));
        }
    } else if (key == "trials.pfa") {
        const long long v = parse_int(key, value);
        if (v < 0) throw ConfigError("trials.pfa must be >= 0");
        cfg.pfa_trials = static_cast<std::size_t>(v);
    } else if (key == "trials.pd") {
        const long long v = parse_int(key, value);
        if (v < 0) throw ConfigError("trials.pd must be >= 0");
        cfg.pd_trials = static_cast<std::size_t>(v);
    } else if (key == "snr_grid_db") {
        cfg.snr_grid_db = parse_double_list(key, value);
    } else if (key == "calibrate.target_pfa") {
        if (trim(value).empty()) {
            cfg.calibrate_target.reset();
        } else {
            cfg.calibrate_target = parse_double(key, value);
        }
    } else if (key == "cfar.rho_list") {
        cfg.cfar_rho_list = parse_double_list(key, value);
    } else if (key == "oracle.grid") {
        cfg.oracle_grid = parse_oracle_grid(key, value);
    } else if (key == "oracle.mismatch_cos2") {
        cfg.oracle_mismatch_cos2 = parse_double(key, value);
    } else if (key == "oracle.n_outer") {
        const long long v = parse_int(key, value);
        if (v < 0) throw ConfigError("oracle.n_outer must be >= 0");
        cfg.oracle_n_outer = static_cast<std::size_t>(v);
    } else if (key == "oracle.n_trials") {
        const long long v = parse_int(key, value);
        if (v < 0) throw ConfigError("oracle.n_trials must be >= 0");
        cfg.oracle_n_trials = static_cast<std::size_t>(v);
    } else if (key == "output.path") {
        cfg.output_path = value;
    } else if (key == "threads") {
        cfg.threads = static_cast<int>(parse_int(key, value));
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        }
        apply_config_line(cfg, trim(line.substr(0, eq)),
                          trim(line.substr(eq + 1)));
    }
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void apply_env_overrides(ExperimentConfig& cfg) {
    for (const char* key : kKnownKeys) {
        const std::string env = env_name_for(key);
        if (const char* value = std::getenv(env.c_str())) {
            apply_config_line(cfg, key, value);
        }
    }
}

} // namespace rknn
