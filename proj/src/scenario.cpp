#include "radarknn/scenario.hpp"

#include <cmath>

namespace rknn {

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;
}

double ScenarioConfig::snr_linear() const {
    return std::pow(10.0, snr_db / 10.0);
}

void ScenarioConfig::validate() const {
    if (n < 2) throw ConfigError("scenario: n must be >= 2");
    if (k_s < n) throw ConfigError("scenario: k_s must be >= n");
    if (!(rho > 0.0 && rho < 1.0)) {
        throw ConfigError("scenario: rho must lie in (0,1)");
    }
    if (!std::isfinite(doppler) || !std::isfinite(doppler_offset) ||
        !std::isfinite(snr_db)) {
        throw ConfigError("scenario: non-finite parameter");
    }
}

CVec steering_vector(double doppler, int n) {
    if (n < 1) throw ConfigError("steering_vector: n must be >= 1");
    CVec v(n);
    for (int i = 0; i < n; ++i) {
        const double phase = two_pi * doppler * i;
        v[i] = {std::cos(phase), std::sin(phase)};
    }
    return v;
}

HermitianPD gaussian_covariance(double rho, int n) {
    if (!(rho > 0.0 && rho < 1.0)) {
        throw ConfigError("gaussian_covariance: rho must lie in (0,1)");
    }
    CMat c(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double lag = static_cast<double>(i - j);
            c(i, j) = std::pow(rho, lag * lag);
        }
    }
    return HermitianPD(c);
}

double cos2_theta(const CVec& p, const CVec& v, const HermitianPD& c) {
    if (p.size() != v.size() || p.size() != c.dim()) {
        throw DimensionMismatch("cos2_theta: size mismatch");
    }
    CholFactor f(c);
    const CVec wp = f.half_solve(p);
    const CVec wv = f.half_solve(v);
    const double pp = wp.squaredNorm();
    const double vv = wv.squaredNorm();
    if (!(pp > 0.0) || !(vv > 0.0)) {
        throw DegenerateVector("cos2_theta: degenerate vector");
    }
    const double cross = std::norm(wp.dot(wv));
    return cross / (pp * vv);
}

std::complex<double> alpha_from_snr(double snr_linear, const CVec& v,
                                    const HermitianPD& c) {
    if (snr_linear < 0.0) {
        throw ConfigError("alpha_from_snr: snr must be >= 0");
    }
    const double vv = solve_quadratic_form(c, v);
    if (!(vv > 0.0)) throw DegenerateVector("alpha_from_snr: v^H C^{-1} v = 0");
    return {std::sqrt(snr_linear / vv), 0.0};
}

ObservationSampler::ObservationSampler(const ScenarioConfig& cfg)
    : cfg_(cfg), c_(gaussian_covariance(cfg.rho, cfg.n)) {
    cfg.validate();
    chol_lower_ = cholesky(c_);
    v_ = steering_vector(cfg.doppler, cfg.n);
    p_ = steering_vector(cfg.doppler + cfg.doppler_offset, cfg.n);
    snr_ = cfg.snr_linear();
    alpha_ = alpha_from_snr(snr_, v_, c_);
    snr_p_ = std::norm(alpha_) * solve_quadratic_form(c_, p_);
    cos2_ = cos2_theta(p_, v_, c_);
}

CVec ObservationSampler::draw_noise(RngStream& rng) const {
    CVec g(cfg_.n);
    for (int i = 0; i < cfg_.n; ++i) g[i] = rng.next_cnormal();
    return chol_lower_.triangularView<Eigen::Lower>() * g;
}

Observation ObservationSampler::draw(RngStream& rng, Hypothesis hyp,
                                     SignalSteering which) const {
    Observation obs;
    obs.z = draw_noise(rng);
    if (hyp == Hypothesis::h1) {
        obs.z += alpha_ * (which == SignalSteering::nominal ? v_ : p_);
    }
    obs.secondary.resize(cfg_.n, cfg_.k_s);
    for (int i = 0; i < cfg_.k_s; ++i) obs.secondary.col(i) = draw_noise(rng);
    return obs;
}

Observation ObservationSampler::draw_with_snr_p(RngStream& rng,
                                                double snr_p) const {
    const std::complex<double> a = alpha_from_snr(snr_p, p_, c_);
    Observation obs;
    obs.z = draw_noise(rng) + a * p_;
    obs.secondary.resize(cfg_.n, cfg_.k_s);
    for (int i = 0; i < cfg_.k_s; ++i) obs.secondary.col(i) = draw_noise(rng);
    return obs;
}

double find_doppler_offset(int n, double doppler, double rho,
                           double target_cos2, double max_offset) {
    if (!(target_cos2 > 0.0 && target_cos2 < 1.0)) {
        throw ConfigError("find_doppler_offset: target must lie in (0,1)");
    }
    const HermitianPD c = gaussian_covariance(rho, n);
    const CVec v = steering_vector(doppler, n);
    const auto value = [&](double offset) {
        return cos2_theta(steering_vector(doppler + offset, n), v, c);
    };
    // cos^2 theta falls from 1 as the offset grows; march to the first
    // bracket below the target, then bisect inside it.
    const int scan = 4096;
    double lo = 0.0;
    double hi = 0.0;
    for (int i = 1; i <= scan; ++i) {
        const double offset = max_offset * i / scan;
        if (value(offset) < target_cos2) {
            hi = offset;
            break;
        }
        lo = offset;
    }
    if (hi == 0.0) {
        throw ConfigError("find_doppler_offset: target not reached within range");
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (value(mid) < target_cos2) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace rknn
