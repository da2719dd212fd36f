#ifndef RADARKNN_ANALYSIS_HPP
#define RADARKNN_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "radarknn/distributions.hpp"
#include "radarknn/knn.hpp"

namespace rknn {

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

// KNN design for the semi-analytic machinery: majority count M explicit.
struct KnnDesign {
    std::size_t n_t = 1;
    int k = 1;
    int m = 0;

    // Throws InvalidCombinatorics unless 1 <= k <= 2 n_t, 0 <= m <= k-1,
    // k - m <= n_t and m <= n_t (block sizes must be realizable).
    void validate() const;
};

// Quadrature controls for the conditional probabilities. The unit interval
// is partitioned at the sign changes of the discriminant and of the lower
// root (located by a scan plus bisection); each piece is integrated with
// Gauss-Legendre nodes and re-integrated on half-pieces, and the refinement
// difference must stay within tol.
struct QuadratureOptions {
    int scan_points = 512; // classification scan resolution (>= 64)
    int nodes = 16;        // Gauss-Legendre nodes per piece
    double tol = 1e-6;     // refinement tolerance (QuadratureNonConvergence)
    int max_depth = 24;    // adaptive bisection depth cap per segment
    SeriesOptions series{};
};

// Conditioning data y: the test pair, the k-M conditioned class-0 pairs and
// the n_t-M conditioned class-1 pairs, with the feature map they live under.
struct ConditioningBlock {
    StatPair test;
    std::vector<StatPair> block0;
    std::vector<StatPair> block1;
    FeatureSpec spec;

    // Squared feature distances from the test point.
    double c2() const; // max over block0
    double a2() const; // min over block1 (+inf when block1 is empty)
};

struct QuadCoeffs {
    double g1 = 0.0; // sum d_j^2 b_other[j]^2
    double g2 = 0.0; // sum d_j^2 b_other[j] b_test[j]
    double g3 = 0.0; // sum d_j^2 b_test[j]^2
};

// Coefficients such that g1 s^2 - 2 t g2 s + g3 t^2 equals
// sum_j d_j^2 (s b_other[j] - t b_test[j])^2 identically in (s, t).
QuadCoeffs quad_coeffs(const std::vector<double>& b_test,
                       const std::vector<double>& b_other,
                       const std::vector<double>& d);

// One classified quadratic g1 s^2 - 2 t g2 s + (g3 t^2 - rhs) at fixed beta.
struct QuadCase {
    QuadCoeffs coeffs;
    double rhs = 0.0;
    double discriminant = 0.0; // 4 [t^2 (g2^2 - g1 g3) + g1 rhs]
    double r_lo = 0.0;         // roots, valid when discriminant > 0
    double r_hi = 0.0;
};

QuadCase make_quad_case(const QuadCoeffs& g, double t_test, double rhs);

// True iff every block0 feature distance <= every block1 feature distance.
bool indicator_Y(const ConditioningBlock& cond);

// P(distance(x0, x) >= c | test) for one fresh class-0 draw under H0:
// integral over beta0 of the central-beta density times the tail mass that
// the central complex-F law of t0 | beta0 assigns to the quadratic region.
double p0_closed(const ConditioningBlock& cond, const StatDims& dims,
                 const QuadratureOptions& opt = {});

// P(distance(x1, x) <= a | test) for one fresh class-1 draw under the
// matched H1 law at the design SNR; the F law is noncentral with
// delta^2 = snr * beta1.
double p1_closed(const ConditioningBlock& cond, const StatDims& dims,
                 double snr, const QuadratureOptions& opt = {});

// Same conditional probabilities at an explicit right-hand side (the
// squared radius), the form the outer loop and the property tests consume.
double p0_conditional(const StatPair& test, double c2, const FeatureSpec& spec,
                      const StatDims& dims, const QuadratureOptions& opt = {});
double p1_conditional(const StatPair& test, double a2, const FeatureSpec& spec,
                      const StatDims& dims, double snr,
                      const QuadratureOptions& opt = {});

// Semi-analytic decision probability P(H1 decision): outer Monte Carlo over
// the conditioning block (test pair from test_law, block0 from H0, block1
// from matched H1 at train_snr), inner closed forms. Returns
// 1 - C(n_t, k-m) C(n_t, n_t-m) E[I_Y p0^{n_t-k+m} p1^m] with the standard
// error of the mean propagated through the affine map.
McEstimate prop1_probability(const KnnDesign& rule, const FeatureSpec& spec,
                             const StatDims& dims, const StatPairLaw& test_law,
                             double train_snr, std::size_t n_outer,
                             std::uint64_t seed,
                             const QuadratureOptions& opt = {},
                             int threads = 1);

// Distribution-level ground truth: fresh 2 n_t training pairs per trial,
// exact KNN vote on the stacked features, empirical H1-decision rate.
McEstimate brute_force_probability(const KnnDesign& rule,
                                   const FeatureSpec& spec,
                                   const StatDims& dims,
                                   const StatPairLaw& test_law,
                                   double train_snr, std::size_t n_trials,
                                   std::uint64_t seed, int threads = 1);

// Gaussian toy scenario: class c features are CN_m(mean_c, sigma2 I). The
// conditional probabilities are complex noncentral chi-square tails, which
// validates the outer machinery independently of the radar laws.
McEstimate gaussian_toy_probability(const CVec& mean0, const CVec& mean1,
                                    double sigma2, const KnnDesign& rule,
                                    Hypothesis test_hyp, std::size_t n_outer,
                                    std::uint64_t seed,
                                    const SeriesOptions& series = {},
                                    int threads = 1);

// Direct simulation companion to gaussian_toy_probability (oracle).
McEstimate gaussian_toy_simulation(const CVec& mean0, const CVec& mean1,
                                   double sigma2, const KnnDesign& rule,
                                   Hypothesis test_hyp, std::size_t n_trials,
                                   std::uint64_t seed, int threads = 1);

// P(count > m) when the k neighbor labels are a uniform size-k draw from
// n_t zeros and n_t ones (exchangeable classes); hypergeometric tail.
double exchangeable_baseline(const KnnDesign& rule);

} // namespace rknn

#endif
