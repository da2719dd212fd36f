// Command-line front end for the radarknn experiments. Links only the C API.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "radarknn/radarknn.h"

namespace {

struct ConfigDeleter {
    void operator()(rk_config* c) const { rk_config_free(c); }
};
using ConfigPtr = std::unique_ptr<rk_config, ConfigDeleter>;

struct StringDeleter {
    void operator()(char* s) const { rk_string_free(s); }
};
using StringPtr = std::unique_ptr<char, StringDeleter>;

int fail(int rc) {
    std::cerr << "error: " << rk_last_error() << '\n';
    return rc;
}

// Writes to the configured output path when set, stdout otherwise.
int emit(const rk_config* cfg, const char* text) {
    char* raw_path = nullptr;
    if (int rc = rk_config_output_path(cfg, &raw_path)) return fail(rc);
    const StringPtr path(raw_path);
    if (path.get()[0] == '\0') {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path.get(), std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file '" << path.get()
                  << "'\n";
        return RK_ERR_OTHER;
    }
    out << text;
    out.close();
    if (!out) {
        std::cerr << "error: short write to '" << path.get() << "'\n";
        return RK_ERR_OTHER;
    }
    return 0;
}

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<long long> trials;
    std::string out_path;
    std::optional<int> threads;
};

void add_common_flags(CLI::App* sub, CommonFlags& flags) {
    sub->add_option("--config", flags.config_path,
                    "flat key-value config file");
    sub->add_option("--seed", flags.seed, "master seed override");
    sub->add_option(
        "--trials", flags.trials,
        "trial-count override for the subcommand's primary metric");
    sub->add_option("--out", flags.out_path,
                    "output file (default: stdout)");
    sub->add_option("--threads", flags.threads, "worker thread count");
}

// Defaults, file, environment, then flags; later layers win.
ConfigPtr build_config(const CommonFlags& flags, const char* trials_key,
                       int& rc_out) {
    rc_out = 0;
    ConfigPtr cfg(flags.config_path.empty()
                       ? rk_config_new()
                       : rk_config_load(flags.config_path.c_str()));
    if (!cfg) {
        rc_out = fail(RK_ERR_CONFIG);
        return nullptr;
    }
    if (int rc = rk_config_apply_env(cfg.get())) {
        rc_out = fail(rc);
        return nullptr;
    }
    const auto set = [&](const char* key, const std::string& value) {
        if (int rc = rk_config_set(cfg.get(), key, value.c_str())) {
            rc_out = fail(rc);
            return false;
        }
        return true;
    };
    if (flags.seed && !set("seed", std::to_string(*flags.seed))) return nullptr;
    if (flags.trials && !set(trials_key, std::to_string(*flags.trials))) {
        return nullptr;
    }
    if (flags.threads && !set("threads", std::to_string(*flags.threads))) {
        return nullptr;
    }
    if (!flags.out_path.empty() && !set("output.path", flags.out_path)) {
        return nullptr;
    }
    return cfg;
}

int run_csv_command(const CommonFlags& flags, const char* trials_key,
                    int (*fn)(const rk_config*, char**)) {
    int rc = 0;
    const ConfigPtr cfg = build_config(flags, trials_key, rc);
    if (!cfg) return rc;
    char* raw = nullptr;
    if ((rc = fn(cfg.get(), &raw))) return fail(rc);
    const StringPtr csv(raw);
    return emit(cfg.get(), csv.get());
}

int run_oracle_command(const CommonFlags& flags) {
    int rc = 0;
    const ConfigPtr cfg = build_config(flags, "oracle.n_trials", rc);
    if (!cfg) return rc;
    char* raw = nullptr;
    int all_pass = 0;
    if ((rc = rk_run_oracle_check(cfg.get(), &raw, &all_pass))) {
        return fail(rc);
    }
    const StringPtr report(raw);
    if ((rc = emit(cfg.get(), report.get()))) return rc;
    return all_pass ? 0 : 4;
}

int run_cos2theta_command(const CommonFlags& flags) {
    int rc = 0;
    const ConfigPtr cfg = build_config(flags, "trials.pfa", rc);
    if (!cfg) return rc;
    double cos2 = 0.0;
    double offset = 0.0;
    if ((rc = rk_scenario_geometry(cfg.get(), &cos2, &offset))) {
        return fail(rc);
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "cos2_theta = %.17g\ndoppler_offset = %.17g\n",
                  cos2, offset);
    return emit(cfg.get(), buf);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"KNN-based adaptive radar detection experiments"};
    app.require_subcommand(1);

    CommonFlags flags;
    CLI::App* cal = app.add_subcommand(
        "calibrate", "calibrate detector thresholds and re-test the Pfa");
    CLI::App* pfa = app.add_subcommand(
        "pfa", "estimate the false-alarm probability per detector");
    CLI::App* pd = app.add_subcommand(
        "pd-curve", "probability of detection across the SNR grid");
    CLI::App* cfar = app.add_subcommand(
        "cfar-sweep", "Pfa across clutter correlations, fixed training seed");
    CLI::App* oracle = app.add_subcommand(
        "oracle-check", "semi-analytic vs simulated probability checks");
    CLI::App* cos2 = app.add_subcommand(
        "cos2theta", "print the mismatch geometry of the configured scenario");
    for (CLI::App* sub : {cal, pfa, pd, cfar, oracle, cos2}) {
        add_common_flags(sub, flags);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : RK_ERR_CONFIG;
    }

    if (cal->parsed()) return run_csv_command(flags, "trials.pfa", rk_run_calibrate);
    if (pfa->parsed()) return run_csv_command(flags, "trials.pfa", rk_run_pfa);
    if (pd->parsed()) return run_csv_command(flags, "trials.pd", rk_run_pd_curve);
    if (cfar->parsed()) {
        return run_csv_command(flags, "trials.pfa", rk_run_cfar_sweep);
    }
    if (oracle->parsed()) return run_oracle_command(flags);
    if (cos2->parsed()) return run_cos2theta_command(flags);
    return RK_ERR_CONFIG;
}
