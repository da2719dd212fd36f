#include "radarknn/distributions.hpp"

#include <cmath>
#include <limits>

#include "radarknn/errors.hpp"

namespace rknn {

namespace {

constexpr double kTiny = 1e-300;

double lbeta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-12) return h;
    }
    throw SeriesNonConvergence("reg_inc_beta: continued fraction stalled");
}

// Incomplete gamma by series, for x < a + 1.
double gamma_series(double a, double x) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int i = 0; i < 10000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw SeriesNonConvergence("reg_lower_gamma: series stalled");
}

// Incomplete gamma by continued fraction, for x >= a + 1 (upper tail).
double gamma_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) {
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw SeriesNonConvergence("reg_upper_gamma: continued fraction stalled");
}

// Poisson(delta2) weights visited in increasing j from the lower edge of
// the mass window. Weights are built in linear space from the modal term;
// the walk stops once cumulative mass reaches 1 - mass_tail.
class PoissonWindow {
public:
    PoissonWindow(double delta2, const SeriesOptions& opt)
        : delta2_(delta2), opt_(opt) {
        const double mode = std::floor(delta2);
        const double log_wm =
            mode * std::log(delta2) - delta2 - std::lgamma(mode + 1.0);
        const double w_mode = std::exp(log_wm);
        // Walk down from the mode until the weight is negligible relative
        // to the modal weight.
        std::size_t j = static_cast<std::size_t>(mode);
        double w = w_mode;
        while (j > 0) {
            const double w_prev = w * static_cast<double>(j) / delta2;
            if (w_prev < w_mode * 1e-18) break;
            w = w_prev;
            --j;
        }
        j_ = j;
        w_ = w;
    }

    std::size_t j() const { return j_; }
    double weight() const { return w_; }
    bool done() const { return mass_ >= 1.0 - opt_.mass_tail; }

    void advance() {
        mass_ += w_;
        w_ *= delta2_ / static_cast<double>(j_ + 1);
        ++j_;
        if (j_ > opt_.max_terms) {
            throw SeriesNonConvergence("poisson mixture: too many terms");
        }
    }

private:
    double delta2_;
    SeriesOptions opt_;
    std::size_t j_ = 0;
    double w_ = 1.0;
    double mass_ = 0.0;
};

double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

} // namespace

double reg_inc_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw ConfigError("reg_inc_beta: parameters must be positive");
    }
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double front =
        std::exp(a * std::log(x) + b * std::log1p(-x) - lbeta(a, b));
    // Continued fraction converges fast on the side where x is small
    // relative to a/(a+b); switch by symmetry otherwise.
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return clamp01(front * betacf(a, b, x) / a);
    }
    return clamp01(1.0 - front * betacf(b, a, 1.0 - x) / b);
}

double reg_lower_gamma(double a, double x) {
    if (!(a > 0.0)) throw ConfigError("reg_lower_gamma: a must be positive");
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) return clamp01(gamma_series(a, x));
    return clamp01(1.0 - gamma_cf(a, x));
}

double reg_upper_gamma(double a, double x) {
    if (!(a > 0.0)) throw ConfigError("reg_upper_gamma: a must be positive");
    if (x <= 0.0) return 1.0;
    if (x < a + 1.0) return clamp01(1.0 - gamma_series(a, x));
    return clamp01(gamma_cf(a, x));
}

double cdf_complex_chi2(double x, int m, double delta2,
                        const SeriesOptions& opt) {
    if (m < 1) throw ConfigError("cdf_complex_chi2: m must be >= 1");
    if (delta2 < 0.0) throw ConfigError("cdf_complex_chi2: delta2 < 0");
    if (!(x > 0.0)) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (delta2 == 0.0) return reg_lower_gamma(m, x);
    // Sum_j Pois_j(delta2) P(m + j, x). The complement Q(m+j, x) obeys the
    // stable additive recurrence Q(a+1, x) = Q(a, x) + x^a e^{-x}/Gamma(a+1).
    PoissonWindow win(delta2, opt);
    double a = m + static_cast<double>(win.j());
    double q = reg_upper_gamma(a, x);
    double step = std::exp(a * std::log(x) - x - std::lgamma(a + 1.0));
    double cdf = 0.0;
    while (!win.done()) {
        cdf += win.weight() * (1.0 - q);
        q += step;
        a += 1.0;
        step *= x / a;
        win.advance();
    }
    return clamp01(cdf);
}

double cdf_complex_F(double x, const ComplexFParams& params,
                     const SeriesOptions& opt) {
    if (params.num_dof < 1 || params.den_dof < 1) {
        throw ConfigError("cdf_complex_F: dof must be >= 1");
    }
    if (params.delta2 < 0.0) throw ConfigError("cdf_complex_F: delta2 < 0");
    if (!(x > 0.0)) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double a = params.num_dof;
    const double n = params.den_dof;
    const double p = x / (1.0 + x);
    const double q = 1.0 / (1.0 + x);
    if (params.delta2 == 0.0) {
        if (params.num_dof == 1) return clamp01(-std::expm1(-n * std::log1p(x)));
        return reg_inc_beta(a, n, p);
    }
    // Sum_j Pois_j(delta2) I_p(a + j, n); the complement C_j = I_q(n, a+j)
    // obeys C_{j+1} = C_j + d_j with d_j = p^{a+j} q^n / ((a+j) B(a+j, n)),
    // an all-positive recurrence (no cancellation).
    PoissonWindow win(params.delta2, opt);
    const double aj0 = a + static_cast<double>(win.j());
    double c = reg_inc_beta(n, aj0, q);
    double d = std::exp(aj0 * std::log(p) + n * std::log(q) +
                        std::lgamma(aj0 + n) - std::lgamma(aj0 + 1.0) -
                        std::lgamma(n));
    double cdf = 0.0;
    double aj = aj0;
    while (!win.done()) {
        cdf += win.weight() * (1.0 - c);
        c += d;
        d *= p * (aj + n) / (aj + 1.0);
        aj += 1.0;
        win.advance();
    }
    return clamp01(cdf);
}

double pdf_complex_beta(double x, const ComplexBetaParams& params,
                        const SeriesOptions& opt) {
    if (params.p_dof < 1 || params.q_dof < 1) {
        throw ConfigError("pdf_complex_beta: dof must be >= 1");
    }
    if (params.delta2 < 0.0) throw ConfigError("pdf_complex_beta: delta2 < 0");
    if (!(x > 0.0) || !(x < 1.0)) return 0.0;
    const double p = params.p_dof;
    const double q = params.q_dof;
    if (params.delta2 == 0.0) {
        return std::exp((p - 1.0) * std::log(x) + (q - 1.0) * std::log1p(-x) -
                        lbeta(p, q));
    }
    // Conditionally on the Poisson index j, the ratio is Beta(p, q + j).
    PoissonWindow win(params.delta2, opt);
    const double qj0 = q + static_cast<double>(win.j());
    double g = std::exp((p - 1.0) * std::log(x) +
                        (qj0 - 1.0) * std::log1p(-x) - lbeta(p, qj0));
    double pdf = 0.0;
    double qj = qj0;
    while (!win.done()) {
        pdf += win.weight() * g;
        g *= (1.0 - x) * (p + qj) / qj;
        qj += 1.0;
        win.advance();
    }
    return pdf;
}

double cdf_complex_beta(double x, const ComplexBetaParams& params,
                        const SeriesOptions& opt) {
    if (params.p_dof < 1 || params.q_dof < 1) {
        throw ConfigError("cdf_complex_beta: dof must be >= 1");
    }
    if (params.delta2 < 0.0) throw ConfigError("cdf_complex_beta: delta2 < 0");
    if (!(x > 0.0)) return 0.0;
    if (x >= 1.0) return 1.0;
    const double p = params.p_dof;
    const double q = params.q_dof;
    if (params.delta2 == 0.0) return reg_inc_beta(p, q, x);
    // I_x(p, q + j) grows with j via the additive identity
    // I_x(p, b+1) = I_x(p, b) + x^p (1-x)^b / (b B(p, b)).
    PoissonWindow win(params.delta2, opt);
    const double qj0 = q + static_cast<double>(win.j());
    double t = reg_inc_beta(p, qj0, x);
    double e = std::exp(p * std::log(x) + qj0 * std::log1p(-x) -
                        std::log(qj0) - lbeta(p, qj0));
    double cdf = 0.0;
    double qj = qj0;
    while (!win.done()) {
        cdf += win.weight() * t;
        t += e;
        e *= (1.0 - x) * (p + qj) / (qj + 1.0);
        qj += 1.0;
        win.advance();
    }
    return clamp01(cdf);
}

double sample_gamma(RngStream& rng, double shape) {
    if (shape < 0.0) throw ConfigError("sample_gamma: shape must be >= 0");
    if (shape == 0.0) return 0.0;
    if (shape == 1.0) return -std::log(rng.next_double_pos());
    if (shape < 1.0) {
        // Boost: G(a) = G(a+1) U^{1/a}.
        const double g = sample_gamma(rng, shape + 1.0);
        return g * std::pow(rng.next_double_pos(), 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = rng.next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.next_double_pos();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
            return d * v;
        }
    }
}

double sample_beta(RngStream& rng, double a, double b) {
    const double x = sample_gamma(rng, a);
    const double y = sample_gamma(rng, b);
    return x / (x + y);
}

double sample_complex_chi2(RngStream& rng, int m, double delta2) {
    if (m < 1) throw ConfigError("sample_complex_chi2: m must be >= 1");
    if (delta2 < 0.0) throw ConfigError("sample_complex_chi2: delta2 < 0");
    if (delta2 == 0.0) return sample_gamma(rng, m);
    // |g_1 + delta|^2 with g = (a + jb)/sqrt(2): ((a + sqrt(2) delta)^2 +
    // b^2)/2, plus the m-1 central coordinates.
    const double delta = std::sqrt(delta2);
    const double a = rng.next_normal() + std::sqrt(2.0) * delta;
    const double b = rng.next_normal();
    return 0.5 * (a * a + b * b) + sample_gamma(rng, m - 1.0);
}

void StatPairLaw::validate() const {
    if (snr_p < 0.0) throw ConfigError("stat pair law: snr_p must be >= 0");
    if (!(cos2theta >= 0.0 && cos2theta <= 1.0)) {
        throw ConfigError("stat pair law: cos2theta must lie in [0,1]");
    }
}

void StatDims::validate() const {
    if (n_dim < 2) throw ConfigError("stat dims: n must be >= 2");
    if (k_s < n_dim) throw ConfigError("stat dims: k_s must be >= n");
}

StatPair sample_stat_pair(RngStream& rng, const StatDims& dims,
                          const StatPairLaw& law) {
    dims.validate();
    law.validate();
    const int p = dims.p_dof();
    const int q = dims.q_dof();
    const int n = dims.f_den_dof();

    const double beta_delta2 = law.snr_p * (1.0 - law.cos2theta);
    double beta;
    if (beta_delta2 == 0.0) {
        beta = sample_beta(rng, p, q);
    } else {
        const double a = sample_gamma(rng, p);
        const double b = sample_complex_chi2(rng, q, beta_delta2);
        beta = a / (a + b);
    }

    const double t_delta2 = law.snr_p * law.cos2theta * beta;
    const double num = t_delta2 == 0.0
                           ? sample_gamma(rng, 1.0)
                           : sample_complex_chi2(rng, 1, t_delta2);
    const double den = sample_gamma(rng, n);
    return {num / den, beta};
}

} // namespace rknn
