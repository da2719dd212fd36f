#include "radarknn/knn.hpp"

#include <algorithm>
#include <cmath>

#include "radarknn/parallel.hpp"

namespace rknn {

TrainingSet::TrainingSet(std::size_t n_t, std::size_t dim)
    : n_t_(n_t), dim_(dim), data_(2 * n_t * dim) {
    if (n_t < 1) throw ConfigError("TrainingSet: n_t must be >= 1");
    if (dim < 1) throw ConfigError("TrainingSet: empty features");
}

int KnnRule::majority() const {
    int m = static_cast<int>(std::floor(k * t));
    if (m < 0) m = 0;
    if (m > k - 1) m = k - 1;
    return m;
}

void KnnRule::validate(std::size_t train_size) const {
    if (k < 1) throw ConfigError("knn rule: k must be >= 1");
    if (static_cast<std::size_t>(k) > train_size) {
        throw ConfigError("knn rule: k exceeds training-set size");
    }
    if (!(t >= 0.0) || t >= 1.0) {
        throw ConfigError("knn rule: threshold must lie in [0,1)");
    }
}

TrainingSet build_training_set(const ScenarioConfig& cfg,
                               const FeatureSpec& spec, std::size_t n_t,
                               std::uint64_t seed, int threads) {
    cfg.validate();
    spec.validate();
    const ObservationSampler sampler(cfg);
    TrainingSet ts(n_t, spec.feature_dim(cfg.n));
    ts.scenario = cfg;
    ts.spec = spec;
    ts.seed = seed;
    // Rows [0, n_t) are H0 draws, rows [n_t, 2 n_t) are H1 draws at the
    // design SNR with nominal steering. Sample i owns stream i.
    parallel_for(2 * n_t, threads, [&](std::size_t i) {
        RngStream rng(seed, stream_domain::training, i);
        const Hypothesis hyp = i < n_t ? Hypothesis::h0 : Hypothesis::h1;
        const Observation obs =
            sampler.draw(rng, hyp, SignalSteering::nominal);
        const FeatureVector x =
            extract_feature(obs, sampler.nominal_steering(), spec);
        std::copy(x.begin(), x.end(), ts.row(i));
    });
    return ts;
}

int neighbor_label_count(std::span<const double> x, const TrainingSet& ts,
                         int k) {
    if (x.size() != ts.dim()) {
        throw DimensionMismatch("neighbor_label_count: feature size mismatch");
    }
    if (k < 1 || static_cast<std::size_t>(k) > ts.size()) {
        throw ConfigError("neighbor_label_count: invalid k");
    }
    const std::size_t total = ts.size();
    const std::size_t dim = ts.dim();
    // (squared distance, row). Row order encodes the tie-break: label-0
    // rows precede label-1 rows, and within a class index ascends.
    thread_local std::vector<std::pair<double, std::size_t>> scratch;
    scratch.resize(total);
    const double* base = ts.data().data();
    for (std::size_t i = 0; i < total; ++i) {
        const double* row = base + i * dim;
        double d2 = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            const double diff = x[j] - row[j];
            d2 += diff * diff;
        }
        scratch[i] = {d2, i};
    }
    std::nth_element(scratch.begin(), scratch.begin() + (k - 1),
                     scratch.end());
    int count = 0;
    for (int i = 0; i < k; ++i) {
        count += ts.label(scratch[static_cast<std::size_t>(i)].second);
    }
    return count;
}

KnnDecision knn_decide(std::span<const double> x, const TrainingSet& ts,
                       const KnnRule& rule) {
    rule.validate(ts.size());
    const int count = neighbor_label_count(x, ts, rule.k);
    KnnDecision d;
    d.vote_fraction = static_cast<double>(count) / rule.k;
    d.h1 = count > rule.majority();
    return d;
}

} // namespace rknn
