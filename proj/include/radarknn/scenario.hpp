#ifndef RADARKNN_SCENARIO_HPP
#define RADARKNN_SCENARIO_HPP

#include <complex>
#include <cstdint>

#include "radarknn/linalg.hpp"
#include "radarknn/rng.hpp"

namespace rknn {

// Signal model parameters: a coherent pulse train of dimension n observed in
// Gaussian disturbance with Gaussian-shaped correlation, plus k_s secondary
// (signal-free) vectors sharing the disturbance statistics.
struct ScenarioConfig {
    int n = 8;                   // pulses per cell under test
    int k_s = 16;                // secondary-data count
    double doppler = 0.08;       // nominal normalized Doppler (cycles/pulse)
    double rho = 0.95;           // one-lag correlation coefficient, in (0,1)
    double snr_db = 12.0;        // design SNR for class-1 training data
    double doppler_offset = 0.0; // perturbation of the actual signal Doppler
    std::uint64_t seed = 1;

    double snr_linear() const;
    void validate() const; // throws ConfigError on violation
};

struct Observation {
    CVec z;          // cell under test, length n
    CMat secondary;  // n x k_s, one secondary vector per column
};

enum class Hypothesis { h0, h1 };

// Which steering direction carries the H1 mean: the nominal one (training
// data are always generated matched) or the actual, possibly offset, one.
enum class SignalSteering { nominal, actual };

// v with entries exp(j 2 pi doppler i), i = 0..n-1.
CVec steering_vector(double doppler, int n);

// Gaussian-shaped covariance C[i][j] = rho^((i-j)^2); unit diagonal.
HermitianPD gaussian_covariance(double rho, int n);

// Squared cosine of the angle between p and v in the C^{-1} metric:
// |p^H C^{-1} v|^2 / (p^H C^{-1} p * v^H C^{-1} v).
double cos2_theta(const CVec& p, const CVec& v, const HermitianPD& c);

// alpha with |alpha|^2 v^H C^{-1} v = snr_linear and phase 0.
std::complex<double> alpha_from_snr(double snr_linear, const CVec& v,
                                    const HermitianPD& c);

// Caches the covariance factor and steering geometry for repeated draws.
class ObservationSampler {
public:
    explicit ObservationSampler(const ScenarioConfig& cfg);

    // z = mean + L g, secondary columns L g_i; mean is alpha times the
    // selected steering vector under h1, zero under h0.
    Observation draw(RngStream& rng, Hypothesis hyp,
                     SignalSteering which = SignalSteering::actual) const;

    // Draw an h1 observation whose actual-steering amplitude is chosen to
    // hit the given SNR through p instead of the design SNR through v.
    Observation draw_with_snr_p(RngStream& rng, double snr_p) const;

    const ScenarioConfig& config() const { return cfg_; }
    const CVec& nominal_steering() const { return v_; }
    const CVec& actual_steering() const { return p_; }
    const HermitianPD& covariance() const { return c_; }
    double snr() const { return snr_; }          // design SNR, linear
    double snr_p() const { return snr_p_; }      // |alpha|^2 p^H C^{-1} p
    double cos2() const { return cos2_; }        // cos^2 theta between p, v
    std::complex<double> alpha() const { return alpha_; }

private:
    CVec draw_noise(RngStream& rng) const;

    ScenarioConfig cfg_;
    HermitianPD c_;
    CMat chol_lower_;
    CVec v_;
    CVec p_;
    std::complex<double> alpha_;
    double snr_;
    double snr_p_;
    double cos2_;
};

// Smallest doppler offset in (0, max_offset] whose cos^2 theta against the
// nominal steering hits the target; bisection on the first crossing.
double find_doppler_offset(int n, double doppler, double rho,
                           double target_cos2, double max_offset = 0.5);

} // namespace rknn

#endif
