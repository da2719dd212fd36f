#ifndef RADARKNN_DISTRIBUTIONS_HPP
#define RADARKNN_DISTRIBUTIONS_HPP

#include <cstddef>

#include "radarknn/detectors.hpp"
#include "radarknn/rng.hpp"

namespace rknn {

// Complex degrees of freedom throughout: one complex dof is |g|^2 of one
// standard complex normal (E|g|^2 = 1), i.e. an Exp(1) variate; a complex
// chi-square with m dof is Gamma(m, 1).

// ---------------------------------------------------------------- special
// Regularized incomplete beta I_x(a, b), continued-fraction evaluation
// (modified Lentz), relative tolerance 1e-12.
double reg_inc_beta(double a, double b, double x);

// Regularized incomplete gamma P(a, x) and Q(a, x) = 1 - P(a, x).
double reg_lower_gamma(double a, double x);
double reg_upper_gamma(double a, double x);

// --------------------------------------------------------------- families
struct SeriesOptions {
    double mass_tail = 1e-12;        // stop when Poisson mass >= 1 - tail
    std::size_t max_terms = 1000000; // SeriesNonConvergence beyond this
};

struct ComplexFParams {
    int num_dof = 1;      // numerator complex dof (1 throughout)
    int den_dof = 1;      // n = k_s - n_dim + 1
    double delta2 = 0.0;  // noncentrality
};

struct ComplexBetaParams {
    int p_dof = 1;        // k_s - n_dim + 2
    int q_dof = 1;        // n_dim - 1
    double delta2 = 0.0;  // noncentrality, carried by the q block
};

// CDF of the complex noncentral chi-square with m complex dof.
double cdf_complex_chi2(double x, int m, double delta2,
                        const SeriesOptions& opt = {});

// CDF of the complex F law: ratio of independent complex chi-squares with
// num_dof (noncentral) and den_dof (central) complex dof.
// Central case: 1 - (1+x)^{-den_dof} for num_dof = 1.
double cdf_complex_F(double x, const ComplexFParams& params,
                     const SeriesOptions& opt = {});

// Complex noncentral beta A/(A+B): A central chi-square with p dof, B
// noncentral with q dof and noncentrality delta2. Mismatch energy enters
// the denominator block, so the loss factor decreases with mismatch.
double pdf_complex_beta(double x, const ComplexBetaParams& params,
                        const SeriesOptions& opt = {});
double cdf_complex_beta(double x, const ComplexBetaParams& params,
                        const SeriesOptions& opt = {});

// ---------------------------------------------------------------- sampling
// Gamma(shape, 1); Marsaglia-Tsang for shape >= 1, boosted below 1;
// shape 0 returns 0 (empty sum convention).
double sample_gamma(RngStream& rng, double shape);

double sample_beta(RngStream& rng, double a, double b);

// Sum_{i=1}^{m} |g_i + mu_i|^2 with all noncentrality on coordinate 1.
double sample_complex_chi2(RngStream& rng, int m, double delta2);

// ---------------------------------------------------------- stat-pair law
// Distribution-level law of (t, beta) for dimension n_dim with k_s
// secondaries (derived dof: p = k_s-n_dim+2, q = n_dim-1, n = k_s-n_dim+1):
//   h0:            beta ~ CBeta(p, q) central; t | beta ~ CF(1, n) central.
//   h1 training:   beta central;        t | beta ~ CF(1, n, snr * beta).
//   h1 test:       beta ~ CBeta(p, q, snr_p sin^2 theta);
//                  t | beta ~ CF(1, n, snr_p beta cos^2 theta).
// The matched test law (cos2 = 1) coincides with the training law, and
// snr_p = 0 reduces exactly to h0.
struct StatPairLaw {
    double snr_p = 0.0;     // SNR through the actual signal direction
    double cos2theta = 1.0; // squared cosine of the mismatch angle

    static StatPairLaw h0() { return {0.0, 1.0}; }
    static StatPairLaw h1(double snr_p, double cos2 = 1.0) {
        return {snr_p, cos2};
    }
    void validate() const;
};

struct StatDims {
    int n_dim = 8; // primary-vector dimension N
    int k_s = 16;  // secondary count

    int p_dof() const { return k_s - n_dim + 2; }
    int q_dof() const { return n_dim - 1; }
    int f_den_dof() const { return k_s - n_dim + 1; }
    void validate() const;
};

StatPair sample_stat_pair(RngStream& rng, const StatDims& dims,
                          const StatPairLaw& law);

} // namespace rknn

#endif
