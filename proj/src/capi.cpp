#include "radarknn/radarknn.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <utility>

#include "radarknn/harness.hpp"

struct rk_config {
    rknn::ExperimentConfig cfg;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
int wrap(F&& body) {
    try {
        body();
        return RK_OK;
    } catch (const rknn::ConfigError& e) {
        g_last_error = e.what();
        return RK_ERR_CONFIG;
    } catch (const rknn::NumericalError& e) {
        g_last_error = e.what();
        return RK_ERR_NUMERICAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return RK_ERR_OTHER;
    } catch (...) {
        g_last_error = "unknown failure";
        return RK_ERR_OTHER;
    }
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int require(bool ok, const char* message) {
    if (ok) return RK_OK;
    g_last_error = message;
    return RK_ERR_CONFIG;
}

} // namespace

extern "C" {

const char* rk_last_error(void) { return g_last_error.c_str(); }

const char* rk_version(void) { return "radarknn 1.0.0"; }

rk_config* rk_config_new(void) {
    try {
        return new rk_config{};
    } catch (...) {
        g_last_error = "allocation failure";
        return nullptr;
    }
}

rk_config* rk_config_load(const char* path) {
    if (!path) {
        g_last_error = "null path";
        return nullptr;
    }
    rk_config* out = nullptr;
    const int rc = wrap([&] {
        out = new rk_config{rknn::load_config_file(path)};
    });
    return rc == RK_OK ? out : nullptr;
}

int rk_config_set(rk_config* cfg, const char* key, const char* value) {
    if (int rc = require(cfg && key && value, "null argument")) return rc;
    return wrap([&] { rknn::apply_config_line(cfg->cfg, key, value); });
}

int rk_config_apply_env(rk_config* cfg) {
    if (int rc = require(cfg != nullptr, "null config")) return rc;
    return wrap([&] { rknn::apply_env_overrides(cfg->cfg); });
}

int rk_config_validate(const rk_config* cfg) {
    if (int rc = require(cfg != nullptr, "null config")) return rc;
    return wrap([&] { cfg->cfg.validate(); });
}

int rk_config_output_path(const rk_config* cfg, char** path_out) {
    if (int rc = require(cfg && path_out, "null argument")) return rc;
    return wrap([&] { *path_out = copy_string(cfg->cfg.output_path); });
}

void rk_config_free(rk_config* cfg) { delete cfg; }

int rk_run_calibrate(const rk_config* cfg, char** csv_out) {
    if (int rc = require(cfg && csv_out, "null argument")) return rc;
    return wrap([&] {
        *csv_out = copy_string(rknn::to_csv(rknn::run_calibrate(cfg->cfg)));
    });
}

int rk_run_pfa(const rk_config* cfg, char** csv_out) {
    if (int rc = require(cfg && csv_out, "null argument")) return rc;
    return wrap([&] {
        *csv_out = copy_string(rknn::to_csv(rknn::run_pfa(cfg->cfg)));
    });
}

int rk_run_pd_curve(const rk_config* cfg, char** csv_out) {
    if (int rc = require(cfg && csv_out, "null argument")) return rc;
    return wrap([&] {
        *csv_out = copy_string(rknn::to_csv(rknn::run_pd_curve(cfg->cfg)));
    });
}

int rk_run_cfar_sweep(const rk_config* cfg, char** csv_out) {
    if (int rc = require(cfg && csv_out, "null argument")) return rc;
    return wrap([&] {
        *csv_out = copy_string(rknn::cfar_csv(rknn::run_cfar_sweep(cfg->cfg)));
    });
}

int rk_run_oracle_check(const rk_config* cfg, char** report_out,
                        int* all_pass_out) {
    if (int rc = require(cfg && report_out && all_pass_out, "null argument")) {
        return rc;
    }
    return wrap([&] {
        const rknn::OracleCheckReport report =
            rknn::run_oracle_check(cfg->cfg);
        *report_out = copy_string(report.text);
        *all_pass_out = report.all_pass ? 1 : 0;
    });
}

int rk_scenario_geometry(const rk_config* cfg, double* cos2_out,
                         double* offset_out) {
    if (int rc = require(cfg && cos2_out && offset_out, "null argument")) {
        return rc;
    }
    return wrap([&] {
        const rknn::ScenarioConfig sc = cfg->cfg.resolved_scenario();
        sc.validate();
        const rknn::ObservationSampler sampler(sc);
        *cos2_out = sampler.cos2();
        *offset_out = sc.doppler_offset;
    });
}

int rk_kelly_threshold(int n, int k_s, double pfa, double* out) {
    if (int rc = require(out != nullptr, "null argument")) return rc;
    return wrap([&] { *out = rknn::kelly_threshold_closed_form(n, k_s, pfa); });
}

void rk_string_free(char* s) { std::free(s); }

} // extern "C"
