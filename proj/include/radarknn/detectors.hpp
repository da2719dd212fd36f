#ifndef RADARKNN_DETECTORS_HPP
#define RADARKNN_DETECTORS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "radarknn/linalg.hpp"
#include "radarknn/scenario.hpp"

namespace rknn {

// Sufficient pair for the adaptive statistics: t is the monotone Kelly ratio
// t_K/(1 - t_K) and beta the loss factor 1/(1 + z^H S^{-1} z - G) with
// G = |z^H S^{-1} v|^2 / v^H S^{-1} v. Kelly, AMF, and ACE are algebraic in
// (t, beta): kelly = t/(1+t), amf = t/beta, ace = t/(t + 1 - beta).
struct StatPair {
    double t = 0.0;     // t tilde, >= 0
    double beta = 1.0;  // in (0,1) with probability 1
};

// The three primitive quadratic forms every statistic is built from.
struct QuadForms {
    double zz = 0.0;                 // z^H S^{-1} z
    std::complex<double> zv{0, 0};   // z^H S^{-1} v
    double vv = 0.0;                 // v^H S^{-1} v
};

enum class StatTransform { kelly, amf, ace };

// b(beta) for a stacked-statistic coordinate: 1, 1/beta, or 1/(1-beta).
// Throws TransformSingularity at the respective pole.
double transform_value(StatTransform f, double beta);

const char* transform_name(StatTransform f);
StatTransform transform_from_name(const std::string& name);

struct StackedStat {
    double weight = 1.0;  // d_j >= 0
    StatTransform transform = StatTransform::kelly;
};

// Feature map fed to the KNN engine: either the whitened cell under test
// embedded into R^{2n}, or a vector of weighted transformed statistics.
struct FeatureSpec {
    enum class Kind { raw_whitened, stacked_stats };

    Kind kind = Kind::raw_whitened;
    std::vector<StackedStat> stats; // used when kind == stacked_stats

    static FeatureSpec raw();
    static FeatureSpec stacked(std::vector<StackedStat> stats);

    std::size_t feature_dim(int n) const; // 2n raw, stats.size() stacked
    void validate() const;                // throws ConfigError
};

using FeatureVector = std::vector<double>;

// S = sum_i r_i r_i^H over the secondary columns (not normalized).
HermitianPD scaled_sample_covariance(const CMat& secondary);

// All three forms from one factorization: two triangular solves total.
QuadForms quad_forms(const CholFactor& s, const CVec& z, const CVec& v);

double kelly_stat(const QuadForms& q); // in [0,1)
double amf_stat(const QuadForms& q);   // >= 0
double ace_stat(const QuadForms& q);   // in [0,1)
StatPair stat_pair(const QuadForms& q);

// Convenience overloads factorizing S per call.
double kelly_stat(const CVec& z, const HermitianPD& s, const CVec& v);
double amf_stat(const CVec& z, const HermitianPD& s, const CVec& v);
double ace_stat(const CVec& z, const HermitianPD& s, const CVec& v);
StatPair stat_pair(const CVec& z, const HermitianPD& s, const CVec& v);

// Stacked feature from an already-computed pair: entry j = d_j t b_j(beta).
FeatureVector features_from_pair(const StatPair& pair, const FeatureSpec& spec);

// Data-level feature extraction, building S from the observation:
// raw_whitened -> [Re x_1, Im x_1, Re x_2, Im x_2, ...] with x = S^{-1/2} z
// (isometric embedding); stacked_stats -> features_from_pair of stat_pair.
FeatureVector extract_feature(const Observation& obs, const CVec& v,
                              const FeatureSpec& spec);

} // namespace rknn

#endif
