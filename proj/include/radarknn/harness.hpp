#ifndef RADARKNN_HARNESS_HPP
#define RADARKNN_HARNESS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "radarknn/analysis.hpp"

namespace rknn {

enum class DetectorId { kelly, amf, ace, knn_raw, knn_stats };

const char* detector_name(DetectorId id);
DetectorId detector_from_name(const std::string& name);

struct OracleCase;
FeatureSpec oracle_case_spec(const OracleCase& oc);

// One oracle-check configuration: a small KNN design plus the law of the
// test point and the stacked spec under test.
struct OracleCase {
    std::size_t n_t = 5;
    int k = 3;
    int m = 1;
    std::string law = "h0";         // h0 | matched | mismatched
    std::string spec = "kelly-amf"; // kelly-amf | kelly-ace preset
};

// Flat dotted-key configuration. Unknown keys are rejected; every value is
// parsed and validated in one pass. See README for the key list.
struct ExperimentConfig {
    ScenarioConfig scenario;
    FeatureSpec feature = FeatureSpec::raw();
    std::size_t n_t = 1000;
    KnnRule rule{50, 0.5};
    std::vector<DetectorId> detectors{DetectorId::knn_raw};
    std::size_t pfa_trials = 100000;
    std::size_t pd_trials = 1000;
    std::vector<double> snr_grid_db;
    std::optional<double> target_cos2;      // tunes the doppler offset
    std::optional<double> calibrate_target; // classical-only calibration
    std::vector<double> cfar_rho_list{0.5, 0.95};
    std::vector<OracleCase> oracle_grid{{5, 3, 1, "h0", "kelly-amf"},
                                        {5, 3, 1, "matched", "kelly-amf"},
                                        {4, 3, 0, "mismatched", "kelly-ace"}};
    double oracle_mismatch_cos2 = 0.5;
    std::size_t oracle_n_outer = 2000;
    std::size_t oracle_n_trials = 20000;
    std::string output_path;
    int threads = 1;

    // Scenario with the doppler offset resolved from target_cos2 if set.
    ScenarioConfig resolved_scenario() const;
    bool has_knn() const;
    void validate() const;
};

// Parsing: file of "key = value" lines (# comments), then environment
// overrides RADARKNN_<key with '.' -> '__'>, then explicit overrides.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);
void apply_config_line(ExperimentConfig& cfg, const std::string& key,
                       const std::string& value);
void apply_env_overrides(ExperimentConfig& cfg);

struct ResultRow {
    std::string detector;
    double snr_db = 0.0;
    double cos2_theta = 1.0;
    std::string metric; // "pfa" | "pd"
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double threshold = 0.0;
};

// Fixed columns, 17 significant digits; byte-stable across thread counts.
std::string to_csv(const std::vector<ResultRow>& rows);

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials,
                               double z);

// Empirical (1 - target_pfa)-quantile of the detector statistic over fresh
// H0 trials: order statistic at index ceil(trials (1 - target_pfa)).
// Requires trials >= 20 / target_pfa (InsufficientTrials otherwise).
double calibrate_threshold(DetectorId detector, double target_pfa,
                           const ExperimentConfig& cfg, std::uint64_t seed);

// Closed-form Kelly threshold: Pfa = (1 - t0)^(k_s - n + 1).
double kelly_threshold_closed_form(int n, int k_s, double pfa);

// Fresh H0 trials, decision statistic > threshold (KNN detectors compare the
// vote fraction). Estimate with binomial standard error.
McEstimate estimate_pfa_at_threshold(DetectorId detector, double threshold,
                                     const ExperimentConfig& cfg,
                                     std::uint64_t seed);

std::vector<ResultRow> run_pfa(const ExperimentConfig& cfg);
std::vector<ResultRow> run_pd_curve(const ExperimentConfig& cfg);
std::vector<ResultRow> run_calibrate(const ExperimentConfig& cfg);

// One Pfa row per correlation value, same training seed throughout. rhos[i]
// annotates rows[i]; the pinned CSV schema has no correlation column, so the
// sweep writer emits it as comment lines.
struct CfarSweepResult {
    std::vector<ResultRow> rows;
    std::vector<double> rhos;
    bool cfar_feature = true; // false marks a raw (non-CFAR) feature sweep
};

CfarSweepResult run_cfar_sweep(const ExperimentConfig& cfg);
std::string cfar_csv(const CfarSweepResult& result);

struct OracleCheckReport {
    std::string text;     // plain-text table
    bool all_pass = true;
};

OracleCheckReport run_oracle_check(const ExperimentConfig& cfg);

} // namespace rknn

#endif
