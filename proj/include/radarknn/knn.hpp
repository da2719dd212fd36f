#ifndef RADARKNN_KNN_HPP
#define RADARKNN_KNN_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "radarknn/detectors.hpp"
#include "radarknn/scenario.hpp"

namespace rknn {

// Labeled training features, n_t per class, stored as one contiguous
// row-major block: rows [0, n_t) carry label 0, rows [n_t, 2 n_t) label 1.
class TrainingSet {
public:
    TrainingSet(std::size_t n_t, std::size_t dim);

    std::size_t n_per_class() const { return n_t_; }
    std::size_t size() const { return 2 * n_t_; }
    std::size_t dim() const { return dim_; }

    int label(std::size_t row) const { return row < n_t_ ? 0 : 1; }
    double* row(std::size_t i) { return data_.data() + i * dim_; }
    const double* row(std::size_t i) const { return data_.data() + i * dim_; }
    const std::vector<double>& data() const { return data_; }

    // Generation parameters, kept so a training set can be reproduced.
    ScenarioConfig scenario;
    FeatureSpec spec;
    std::uint64_t seed = 0;

private:
    std::size_t n_t_;
    std::size_t dim_;
    std::vector<double> data_;
};

// Majority-vote rule: M = floor(k * t) clamped to [0, k-1]; decide H1 when
// more than M of the k nearest neighbors carry label 1. t >= 1 would make
// H1 unreachable and is rejected.
struct KnnRule {
    int k = 1;
    double t = 0.5;

    int majority() const; // M
    void validate(std::size_t train_size) const;
};

// n_t label-0 features (H0 draws) and n_t label-1 features (H1 draws at the
// design SNR, nominal steering). Bit-identical for identical (cfg, spec,
// n_t, seed) regardless of thread count: sample i has its own RNG stream.
TrainingSet build_training_set(const ScenarioConfig& cfg,
                               const FeatureSpec& spec, std::size_t n_t,
                               std::uint64_t seed, int threads = 1);

// Number of label-1 points among the k nearest neighbors of x. Neighbors are
// ordered by (squared distance, row index); since label-0 rows precede
// label-1 rows, index order realizes the "class 0 before class 1, then
// ascending index" tie-break.
int neighbor_label_count(std::span<const double> x, const TrainingSet& ts,
                         int k);

struct KnnDecision {
    bool h1 = false;
    double vote_fraction = 0.0; // label-1 share among the k neighbors
};

KnnDecision knn_decide(std::span<const double> x, const TrainingSet& ts,
                       const KnnRule& rule);

} // namespace rknn

#endif
