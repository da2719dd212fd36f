#include "radarknn/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <sstream>

#include "radarknn/knn.hpp"
#include "radarknn/parallel.hpp"

namespace rknn {

namespace {

bool is_knn(DetectorId d) {
    return d == DetectorId::knn_raw || d == DetectorId::knn_stats;
}

FeatureSpec feature_for(DetectorId d, const ExperimentConfig& cfg) {
    return d == DetectorId::knn_raw ? FeatureSpec::raw() : cfg.feature;
}

// Per-run state of one benchmarked detector; KNN detectors own the training
// set built once per run from the configured seed.
struct DetectorRuntime {
    DetectorId id = DetectorId::kelly;
    FeatureSpec spec;
    std::shared_ptr<const TrainingSet> train;
};

DetectorRuntime make_runtime(DetectorId d, const ExperimentConfig& cfg,
                             const ScenarioConfig& sc) {
    DetectorRuntime rt;
    rt.id = d;
    if (is_knn(d)) {
        rt.spec = feature_for(d, cfg);
        rt.train = std::make_shared<TrainingSet>(build_training_set(
            sc, rt.spec, cfg.n_t, sc.seed, cfg.threads));
    }
    return rt;
}

double classical_stat(DetectorId d, const QuadForms& q) {
    switch (d) {
        case DetectorId::kelly: return kelly_stat(q);
        case DetectorId::amf: return amf_stat(q);
        case DetectorId::ace: return ace_stat(q);
        default: break;
    }
    throw ConfigError("classical_stat: not a classical detector");
}

// Detector statistic on one observation; KNN detectors report the vote
// fraction so thresholding is uniform across detector kinds.
double detector_statistic(const DetectorRuntime& rt, const Observation& obs,
                          const CVec& v, const KnnRule& rule) {
    if (is_knn(rt.id)) {
        const FeatureVector x = extract_feature(obs, v, rt.spec);
        const int count = neighbor_label_count(
            std::span<const double>(x.data(), x.size()), *rt.train, rule.k);
        return static_cast<double>(count) / static_cast<double>(rule.k);
    }
    const HermitianPD s = scaled_sample_covariance(obs.secondary);
    const CholFactor f(s);
    return classical_stat(rt.id, quad_forms(f, obs.z, v));
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

McEstimate binomial_estimate(const std::vector<unsigned char>& hits) {
    const double n = static_cast<double>(hits.size());
    double sum = 0.0;
    for (unsigned char h : hits) sum += h;
    const double p = sum / n;
    return {p, std::sqrt(p * (1.0 - p) / n)};
}

// 1-based order-statistic index for the (1 - target) quantile.
std::size_t quantile_index(std::size_t trials, double target) {
    const double raw =
        std::ceil(static_cast<double>(trials) * (1.0 - target));
    std::size_t ord = static_cast<std::size_t>(raw);
    if (ord < 1) ord = 1;
    if (ord > trials) ord = trials;
    return ord;
}

double order_statistic(std::vector<double>& values, std::size_t ord) {
    std::nth_element(values.begin(),
                     values.begin() + static_cast<std::ptrdiff_t>(ord - 1),
                     values.end());
    return values[ord - 1];
}

void require_calibration_trials(std::size_t trials, double target) {
    if (static_cast<double>(trials) * target < 20.0) {
        throw InsufficientTrials(
            "calibration needs trials >= 20 / target_pfa");
    }
}

FeatureVector interleave(const CVec& x) {
    FeatureVector out(2 * static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        out[2 * static_cast<std::size_t>(i)] = x[i].real();
        out[2 * static_cast<std::size_t>(i) + 1] = x[i].imag();
    }
    return out;
}

bool vote_h1(const DetectorRuntime& rt, const FeatureVector& x,
             const KnnRule& rule) {
    return knn_decide(std::span<const double>(x.data(), x.size()), *rt.train,
                      rule)
        .h1;
}

} // namespace

std::string to_csv(const std::vector<ResultRow>& rows) {
    std::string out =
        "detector,snr_db,cos2_theta,metric,estimate,std_error,trials,seed,"
        "threshold\n";
    for (const auto& r : rows) {
        out += r.detector;
        out += ',';
        out += fmt_double(r.snr_db);
        out += ',';
        out += fmt_double(r.cos2_theta);
        out += ',';
        out += r.metric;
        out += ',';
        out += fmt_double(r.estimate);
        out += ',';
        out += fmt_double(r.std_error);
        out += ',';
        out += std::to_string(static_cast<unsigned long long>(r.trials));
        out += ',';
        out += std::to_string(static_cast<unsigned long long>(r.seed));
        out += ',';
        out += fmt_double(r.threshold);
        out += '\n';
    }
    return out;
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials,
                               double z) {
    if (trials == 0) throw ConfigError("wilson interval needs trials > 0");
    if (successes > trials) {
        throw ConfigError("wilson interval: successes exceed trials");
    }
    if (!(z > 0.0)) throw ConfigError("wilson interval: z must be > 0");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    WilsonInterval w;
    w.lo = std::max(0.0, center - half);
    w.hi = std::min(1.0, center + half);
    return w;
}

double kelly_threshold_closed_form(int n, int k_s, double pfa) {
    if (!(pfa > 0.0 && pfa < 1.0)) {
        throw ConfigError("kelly closed form: pfa must lie in (0, 1)");
    }
    const int dof = k_s - n + 1;
    if (dof < 1) {
        throw ConfigError("kelly closed form: needs k_s >= n");
    }
    return -std::expm1(std::log(pfa) / dof);
}

double calibrate_threshold(DetectorId detector, double target_pfa,
                           const ExperimentConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    if (!(target_pfa > 0.0 && target_pfa < 0.5)) {
        throw ConfigError("calibration target must lie in (0, 0.5)");
    }
    const std::size_t trials = cfg.pfa_trials;
    require_calibration_trials(trials, target_pfa);

    const ScenarioConfig sc = cfg.resolved_scenario();
    const ObservationSampler sampler(sc);
    const DetectorRuntime rt = make_runtime(detector, cfg, sc);

    std::vector<double> stats(trials, 0.0);
    parallel_for(trials, cfg.threads, [&](std::size_t i) {
        RngStream rng(seed, stream_domain::calibrate_trial, i);
        const Observation obs = sampler.draw(rng, Hypothesis::h0);
        stats[i] =
            detector_statistic(rt, obs, sampler.nominal_steering(), cfg.rule);
    });

    const double thr = order_statistic(stats, quantile_index(trials, target_pfa));
    if (detector == DetectorId::kelly) {
        // Cross-check against the exact tail (1 - t0)^(k_s - n + 1) = pfa;
        // tolerance is ten asymptotic quantile standard errors plus slack.
        const double t0 = kelly_threshold_closed_form(sc.n, sc.k_s, target_pfa);
        const double dof = static_cast<double>(sc.k_s - sc.n + 1);
        const double density = dof * std::pow(1.0 - t0, dof - 1.0);
        const double se = std::sqrt(target_pfa * (1.0 - target_pfa) /
                                    static_cast<double>(trials)) /
                          density;
        if (std::fabs(thr - t0) > 10.0 * se + 1e-3) {
            throw NumericalError(
                "kelly calibration disagrees with the closed-form threshold");
        }
    }
    return thr;
}

McEstimate estimate_pfa_at_threshold(DetectorId detector, double threshold,
                                     const ExperimentConfig& cfg,
                                     std::uint64_t seed) {
    cfg.validate();
    const ScenarioConfig sc = cfg.resolved_scenario();
    const ObservationSampler sampler(sc);
    const DetectorRuntime rt = make_runtime(detector, cfg, sc);

    std::vector<unsigned char> hits(cfg.pfa_trials, 0);
    parallel_for(cfg.pfa_trials, cfg.threads, [&](std::size_t i) {
        RngStream rng(seed, stream_domain::pfa_trial, i);
        const Observation obs = sampler.draw(rng, Hypothesis::h0);
        const double stat =
            detector_statistic(rt, obs, sampler.nominal_steering(), cfg.rule);
        hits[i] = stat > threshold;
    });
    return binomial_estimate(hits);
}

std::vector<ResultRow> run_pfa(const ExperimentConfig& cfg) {
    cfg.validate();
    const ScenarioConfig sc = cfg.resolved_scenario();
    const ObservationSampler sampler(sc);

    std::vector<ResultRow> rows;
    for (DetectorId d : cfg.detectors) {
        const DetectorRuntime rt = make_runtime(d, cfg, sc);
        double threshold = cfg.rule.t;
        if (!is_knn(d)) {
            if (!cfg.calibrate_target) {
                throw ConfigError(
                    "pfa run with classical detectors needs "
                    "calibrate.target_pfa");
            }
            threshold = calibrate_threshold(d, *cfg.calibrate_target, cfg,
                                            sc.seed);
        }
        std::vector<unsigned char> hits(cfg.pfa_trials, 0);
        parallel_for(cfg.pfa_trials, cfg.threads, [&](std::size_t i) {
            RngStream rng(sc.seed, stream_domain::pfa_trial, i);
            const Observation obs = sampler.draw(rng, Hypothesis::h0);
            if (is_knn(d)) {
                const FeatureVector x =
                    extract_feature(obs, sampler.nominal_steering(), rt.spec);
                hits[i] = vote_h1(rt, x, cfg.rule);
            } else {
                const HermitianPD s = scaled_sample_covariance(obs.secondary);
                const CholFactor f(s);
                const QuadForms q =
                    quad_forms(f, obs.z, sampler.nominal_steering());
                hits[i] = classical_stat(d, q) > threshold;
            }
        });
        const McEstimate est = binomial_estimate(hits);
        ResultRow row;
        row.detector = detector_name(d);
        row.snr_db = sc.snr_db;
        row.cos2_theta = sampler.cos2();
        row.metric = "pfa";
        row.estimate = est.value;
        row.std_error = est.std_error;
        row.trials = cfg.pfa_trials;
        row.seed = sc.seed;
        row.threshold = threshold;
        rows.push_back(row);
    }
    return rows;
}

std::vector<ResultRow> run_pd_curve(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.snr_grid_db.empty()) {
        throw ConfigError("pd-curve needs a nonempty snr_grid_db");
    }
    const ScenarioConfig sc = cfg.resolved_scenario();
    const ObservationSampler sampler(sc);
    const CVec& v = sampler.nominal_steering();
    const CVec& p = sampler.actual_steering();
    const std::size_t n_det = cfg.detectors.size();

    std::vector<DetectorRuntime> rts;
    rts.reserve(n_det);
    bool need_raw = false;
    for (DetectorId d : cfg.detectors) {
        rts.push_back(make_runtime(d, cfg, sc));
        need_raw = need_raw || d == DetectorId::knn_raw;
    }

    // Calibration pass: one shared set of H0 draws gives every classical
    // detector its statistic sample and every KNN detector its empirical
    // Pfa; the common target is either configured or the first KNN Pfa,
    // putting all detectors at (approximately) equal false-alarm rate.
    const std::size_t ctrials = cfg.pfa_trials;
    std::vector<std::vector<double>> cal_stats(n_det);
    std::vector<std::vector<unsigned char>> cal_hits(n_det);
    for (std::size_t di = 0; di < n_det; ++di) {
        if (is_knn(cfg.detectors[di])) {
            cal_hits[di].assign(ctrials, 0);
        } else {
            cal_stats[di].assign(ctrials, 0.0);
        }
    }
    parallel_for(ctrials, cfg.threads, [&](std::size_t i) {
        RngStream rng(sc.seed, stream_domain::calibrate_trial, i);
        const Observation obs = sampler.draw(rng, Hypothesis::h0);
        const HermitianPD s = scaled_sample_covariance(obs.secondary);
        const CholFactor f(s);
        const QuadForms q = quad_forms(f, obs.z, v);
        std::optional<FeatureVector> raw_x;
        for (std::size_t di = 0; di < n_det; ++di) {
            const DetectorId d = cfg.detectors[di];
            if (d == DetectorId::knn_raw) {
                if (!raw_x) {
                    raw_x = interleave(inv_sqrt_hermitian(s) * obs.z);
                }
                cal_hits[di][i] = vote_h1(rts[di], *raw_x, cfg.rule);
            } else if (d == DetectorId::knn_stats) {
                const FeatureVector x =
                    features_from_pair(stat_pair(q), rts[di].spec);
                cal_hits[di][i] = vote_h1(rts[di], x, cfg.rule);
            } else {
                cal_stats[di][i] = classical_stat(d, q);
            }
        }
    });

    double target = 0.0;
    if (cfg.calibrate_target) {
        target = *cfg.calibrate_target;
    } else {
        bool found = false;
        for (std::size_t di = 0; di < n_det && !found; ++di) {
            if (is_knn(cfg.detectors[di])) {
                target = binomial_estimate(cal_hits[di]).value;
                found = true;
            }
        }
        if (!found) {
            throw ConfigError(
                "pd-curve needs calibrate.target_pfa or a KNN detector to "
                "set the common false-alarm rate");
        }
        if (!(target > 0.0 && target < 0.5)) {
            throw NumericalError(
                "empirical KNN false-alarm rate unusable as a calibration "
                "target");
        }
    }
    require_calibration_trials(ctrials, target);

    std::vector<double> thresholds(n_det, cfg.rule.t);
    for (std::size_t di = 0; di < n_det; ++di) {
        if (is_knn(cfg.detectors[di])) continue;
        thresholds[di] =
            order_statistic(cal_stats[di], quantile_index(ctrials, target));
    }

    // Pd pass: each trial draws one noise-plus-secondary realization and
    // reuses it across the whole SNR grid (common random numbers), adding
    // alpha(snr) p on top; every detector decides on the same observation.
    const std::size_t n_grid = cfg.snr_grid_db.size();
    std::vector<std::complex<double>> alphas(n_grid);
    for (std::size_t g = 0; g < n_grid; ++g) {
        const double lin = std::pow(10.0, cfg.snr_grid_db[g] / 10.0);
        alphas[g] = alpha_from_snr(lin, v, sampler.covariance());
    }
    std::vector<std::vector<unsigned char>> hits(
        n_det * n_grid, std::vector<unsigned char>(cfg.pd_trials, 0));
    parallel_for(cfg.pd_trials, cfg.threads, [&](std::size_t i) {
        RngStream rng(sc.seed, stream_domain::pd_trial, i);
        const Observation noise = sampler.draw(rng, Hypothesis::h0);
        const HermitianPD s = scaled_sample_covariance(noise.secondary);
        const CholFactor f(s);
        std::optional<CMat> w;
        if (need_raw) w = inv_sqrt_hermitian(s);
        for (std::size_t g = 0; g < n_grid; ++g) {
            const CVec z = noise.z + alphas[g] * p;
            const QuadForms q = quad_forms(f, z, v);
            for (std::size_t di = 0; di < n_det; ++di) {
                const DetectorId d = cfg.detectors[di];
                bool h1 = false;
                if (d == DetectorId::knn_raw) {
                    h1 = vote_h1(rts[di], interleave((*w) * z), cfg.rule);
                } else if (d == DetectorId::knn_stats) {
                    h1 = vote_h1(rts[di],
                                 features_from_pair(stat_pair(q), rts[di].spec),
                                 cfg.rule);
                } else {
                    h1 = classical_stat(d, q) > thresholds[di];
                }
                hits[di * n_grid + g][i] = h1;
            }
        }
    });

    std::vector<ResultRow> rows;
    for (std::size_t di = 0; di < n_det; ++di) {
        for (std::size_t g = 0; g < n_grid; ++g) {
            const McEstimate est = binomial_estimate(hits[di * n_grid + g]);
            ResultRow row;
            row.detector = detector_name(cfg.detectors[di]);
            row.snr_db = cfg.snr_grid_db[g];
            row.cos2_theta = sampler.cos2();
            row.metric = "pd";
            row.estimate = est.value;
            row.std_error = est.std_error;
            row.trials = cfg.pd_trials;
            row.seed = sc.seed;
            row.threshold = thresholds[di];
            rows.push_back(row);
        }
    }
    std::sort(rows.begin(), rows.end(),
              [](const ResultRow& a, const ResultRow& b) {
                  if (a.detector != b.detector) return a.detector < b.detector;
                  return a.snr_db < b.snr_db;
              });
    return rows;
}

std::vector<ResultRow> run_calibrate(const ExperimentConfig& cfg) {
    cfg.validate();
    if (!cfg.calibrate_target) {
        throw ConfigError("calibrate needs calibrate.target_pfa");
    }
    const ScenarioConfig sc = cfg.resolved_scenario();
    const ObservationSampler sampler(sc);
    std::vector<ResultRow> rows;
    for (DetectorId d : cfg.detectors) {
        const double thr =
            calibrate_threshold(d, *cfg.calibrate_target, cfg, sc.seed);
        const McEstimate est = estimate_pfa_at_threshold(d, thr, cfg, sc.seed);
        ResultRow row;
        row.detector = detector_name(d);
        row.snr_db = sc.snr_db;
        row.cos2_theta = sampler.cos2();
        row.metric = "pfa";
        row.estimate = est.value;
        row.std_error = est.std_error;
        row.trials = cfg.pfa_trials;
        row.seed = sc.seed;
        row.threshold = thr;
        rows.push_back(row);
    }
    return rows;
}

CfarSweepResult run_cfar_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.cfar_rho_list.empty()) {
        throw ConfigError("cfar-sweep needs a nonempty cfar.rho_list");
    }
    CfarSweepResult result;
    result.cfar_feature =
        cfg.feature.kind == FeatureSpec::Kind::stacked_stats;
    const DetectorId det =
        result.cfar_feature ? DetectorId::knn_stats : DetectorId::knn_raw;

    // One training realization, generated under the configured scenario;
    // the sweep then varies only the test-time noise correlation, so each
    // row measures the same trained detector's false-alarm rate under a
    // different true covariance.
    const ScenarioConfig base = cfg.resolved_scenario();
    const TrainingSet ts = build_training_set(base, cfg.feature, cfg.n_t,
                                              base.seed, cfg.threads);
    for (double rho : cfg.cfar_rho_list) {
        ScenarioConfig sc = base;
        sc.rho = rho;
        const ObservationSampler sampler(sc);
        std::vector<unsigned char> hits(cfg.pfa_trials, 0);
        parallel_for(cfg.pfa_trials, cfg.threads, [&](std::size_t i) {
            RngStream rng(sc.seed, stream_domain::pfa_trial, i);
            const Observation obs = sampler.draw(rng, Hypothesis::h0);
            const FeatureVector x =
                extract_feature(obs, sampler.nominal_steering(), cfg.feature);
            hits[i] = knn_decide(std::span<const double>(x.data(), x.size()),
                                 ts, cfg.rule)
                          .h1;
        });
        const McEstimate est = binomial_estimate(hits);
        ResultRow row;
        row.detector = detector_name(det);
        row.snr_db = sc.snr_db;
        row.cos2_theta = sampler.cos2();
        row.metric = "pfa";
        row.estimate = est.value;
        row.std_error = est.std_error;
        row.trials = cfg.pfa_trials;
        row.seed = sc.seed;
        row.threshold = cfg.rule.t;
        result.rows.push_back(row);
        result.rhos.push_back(rho);
    }
    return result;
}

std::string cfar_csv(const CfarSweepResult& result) {
    std::string out = "# cfar sweep, rho per row:";
    for (std::size_t i = 0; i < result.rhos.size(); ++i) {
        out += i == 0 ? ' ' : ',';
        out += fmt_double(result.rhos[i]);
    }
    out += '\n';
    if (!result.cfar_feature) out += "# non-cfar\n";
    out += to_csv(result.rows);
    return out;
}

namespace {

struct OracleLine {
    std::string label;
    McEstimate lhs;
    McEstimate rhs;
    bool pass = true;
    double dist_sigma = 0.0;
};

OracleLine compare_estimates(std::string label, const McEstimate& a,
                             const McEstimate& b) {
    OracleLine line;
    line.label = std::move(label);
    line.lhs = a;
    line.rhs = b;
    const double delta = std::fabs(a.value - b.value);
    const double sigma = std::sqrt(a.std_error * a.std_error +
                                   b.std_error * b.std_error);
    if (sigma > 0.0) {
        line.dist_sigma = delta / sigma;
        line.pass = delta <= 3.0 * sigma;
    } else {
        line.dist_sigma = delta > 0.0 ? std::numeric_limits<double>::infinity()
                                      : 0.0;
        line.pass = delta == 0.0;
    }
    return line;
}

void append_line(std::ostringstream& out, const OracleLine& line) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "  %-44s  %9.6f +/- %-8.6f  %9.6f +/- %-8.6f  %6.2f sigma  %s\n",
                  line.label.c_str(), line.lhs.value, line.lhs.std_error,
                  line.rhs.value, line.rhs.std_error, line.dist_sigma,
                  line.pass ? "PASS" : "FAIL");
    out << buf;
}

} // namespace

OracleCheckReport run_oracle_check(const ExperimentConfig& cfg) {
    cfg.validate();
    OracleCheckReport report;
    if (cfg.oracle_grid.empty()) return report;

    const ScenarioConfig sc = cfg.resolved_scenario();
    const StatDims dims{sc.n, sc.k_s};
    const double snr = sc.snr_linear();
    std::ostringstream out;

    out << "semi-analytic probability vs brute-force simulation\n";
    for (const auto& oc : cfg.oracle_grid) {
        const KnnDesign design{oc.n_t, oc.k, oc.m};
        const FeatureSpec spec = oracle_case_spec(oc);
        StatPairLaw law = StatPairLaw::h0();
        if (oc.law == "matched") {
            law = StatPairLaw::h1(snr, 1.0);
        } else if (oc.law == "mismatched") {
            law = StatPairLaw::h1(snr, cfg.oracle_mismatch_cos2);
        }
        const McEstimate closed = prop1_probability(
            design, spec, dims, law, snr, cfg.oracle_n_outer, sc.seed, {},
            cfg.threads);
        const McEstimate brute = brute_force_probability(
            design, spec, dims, law, snr, cfg.oracle_n_trials, sc.seed,
            cfg.threads);
        char label[128];
        std::snprintf(label, sizeof label, "n_t=%zu k=%d m=%d law=%s spec=%s",
                      oc.n_t, oc.k, oc.m, oc.law.c_str(), oc.spec.c_str());
        const OracleLine line = compare_estimates(label, closed, brute);
        report.all_pass = report.all_pass && line.pass;
        append_line(out, line);
    }

    out << "gaussian toy closed form vs direct simulation\n";
    struct ToyCase {
        double m1_re0, m1_re1, sigma2;
        KnnDesign design;
        Hypothesis hyp;
        const char* label;
    };
    const ToyCase toys[] = {
        {1.0, 1.0, 0.5, {5, 3, 1}, Hypothesis::h1, "toy m=2 s2=0.5 k=3 M=1 h1"},
        {1.0, 1.0, 1.0, {5, 3, 0}, Hypothesis::h0, "toy m=2 s2=1.0 k=3 M=0 h0"},
        {1.5, 0.5, 0.8, {4, 3, 2}, Hypothesis::h1, "toy m=2 s2=0.8 k=3 M=2 h1"},
    };
    for (const auto& toy : toys) {
        const CVec mean0 = CVec::Zero(2);
        CVec mean1(2);
        mean1 << std::complex<double>(toy.m1_re0, 0.0),
            std::complex<double>(toy.m1_re1, 0.0);
        const McEstimate closed = gaussian_toy_probability(
            mean0, mean1, toy.sigma2, toy.design, toy.hyp, cfg.oracle_n_outer,
            sc.seed, {}, cfg.threads);
        const McEstimate sim = gaussian_toy_simulation(
            mean0, mean1, toy.sigma2, toy.design, toy.hyp, cfg.oracle_n_trials,
            sc.seed, cfg.threads);
        const OracleLine line = compare_estimates(toy.label, closed, sim);
        report.all_pass = report.all_pass && line.pass;
        append_line(out, line);
    }

    out << (report.all_pass ? "overall: PASS\n" : "overall: FAIL\n");
    report.text = out.str();
    return report;
}

} // namespace rknn
