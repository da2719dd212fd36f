#include "radarknn/detectors.hpp"

namespace rknn {

double transform_value(StatTransform f, double beta) {
    switch (f) {
        case StatTransform::kelly:
            return 1.0;
        case StatTransform::amf:
            if (beta == 0.0) {
                throw TransformSingularity("amf transform at beta = 0");
            }
            return 1.0 / beta;
        case StatTransform::ace:
            if (beta == 1.0) {
                throw TransformSingularity("ace transform at beta = 1");
            }
            return 1.0 / (1.0 - beta);
    }
    throw ConfigError("transform_value: unknown transform");
}

const char* transform_name(StatTransform f) {
    switch (f) {
        case StatTransform::kelly: return "kelly";
        case StatTransform::amf: return "amf";
        case StatTransform::ace: return "ace";
    }
    return "?";
}

StatTransform transform_from_name(const std::string& name) {
    if (name == "kelly") return StatTransform::kelly;
    if (name == "amf") return StatTransform::amf;
    if (name == "ace") return StatTransform::ace;
    throw ConfigError("unknown stat transform: " + name);
}

FeatureSpec FeatureSpec::raw() {
    FeatureSpec spec;
    spec.kind = Kind::raw_whitened;
    return spec;
}

FeatureSpec FeatureSpec::stacked(std::vector<StackedStat> stats) {
    FeatureSpec spec;
    spec.kind = Kind::stacked_stats;
    spec.stats = std::move(stats);
    spec.validate();
    return spec;
}

std::size_t FeatureSpec::feature_dim(int n) const {
    return kind == Kind::raw_whitened ? 2 * static_cast<std::size_t>(n)
                                      : stats.size();
}

void FeatureSpec::validate() const {
    if (kind == Kind::raw_whitened) {
        if (!stats.empty()) {
            throw ConfigError("raw feature spec carries no stat list");
        }
        return;
    }
    if (stats.empty()) {
        throw ConfigError("stacked feature spec needs at least one stat");
    }
    bool any_positive = false;
    for (const auto& s : stats) {
        if (s.weight < 0.0) throw ConfigError("stat weight must be >= 0");
        if (s.weight > 0.0) any_positive = true;
    }
    if (!any_positive) {
        throw ConfigError("stacked feature spec needs a positive weight");
    }
}

HermitianPD scaled_sample_covariance(const CMat& secondary) {
    if (secondary.rows() < 1 || secondary.cols() < 1) {
        throw DimensionMismatch("scaled_sample_covariance: empty input");
    }
    CMat s = CMat::Zero(secondary.rows(), secondary.rows());
    s.selfadjointView<Eigen::Lower>().rankUpdate(secondary, 1.0);
    return HermitianPD(CMat(s.selfadjointView<Eigen::Lower>()));
}

QuadForms quad_forms(const CholFactor& s, const CVec& z, const CVec& v) {
    const CVec wz = s.half_solve(z);
    const CVec wv = s.half_solve(v);
    QuadForms q;
    q.zz = wz.squaredNorm();
    q.zv = wz.dot(wv); // conjugates the first argument: z^H S^{-1} v
    q.vv = wv.squaredNorm();
    return q;
}

namespace {

double coherence(const QuadForms& q) {
    if (!(q.vv > 0.0)) {
        throw DegenerateVector("detector statistic: v^H S^{-1} v = 0");
    }
    return std::norm(q.zv) / q.vv; // |z^H S^{-1} v|^2 / v^H S^{-1} v
}

} // namespace

double kelly_stat(const QuadForms& q) { return coherence(q) / (1.0 + q.zz); }

double amf_stat(const QuadForms& q) { return coherence(q); }

double ace_stat(const QuadForms& q) {
    if (!(q.zz > 0.0)) throw DegenerateVector("ace_stat: z = 0");
    return coherence(q) / q.zz;
}

StatPair stat_pair(const QuadForms& q) {
    const double g = coherence(q);
    StatPair pair;
    pair.beta = 1.0 / (1.0 + q.zz - g); // Cauchy-Schwarz gives zz >= g
    pair.t = g * pair.beta;             // t_kelly / (1 - t_kelly)
    return pair;
}

namespace {
QuadForms forms_of(const CVec& z, const HermitianPD& s, const CVec& v) {
    CholFactor f(s);
    return quad_forms(f, z, v);
}
} // namespace

double kelly_stat(const CVec& z, const HermitianPD& s, const CVec& v) {
    return kelly_stat(forms_of(z, s, v));
}
double amf_stat(const CVec& z, const HermitianPD& s, const CVec& v) {
    return amf_stat(forms_of(z, s, v));
}
double ace_stat(const CVec& z, const HermitianPD& s, const CVec& v) {
    return ace_stat(forms_of(z, s, v));
}
StatPair stat_pair(const CVec& z, const HermitianPD& s, const CVec& v) {
    return stat_pair(forms_of(z, s, v));
}

FeatureVector features_from_pair(const StatPair& pair,
                                 const FeatureSpec& spec) {
    if (spec.kind != FeatureSpec::Kind::stacked_stats) {
        throw ConfigError("features_from_pair: stacked spec required");
    }
    FeatureVector x(spec.stats.size());
    for (std::size_t j = 0; j < spec.stats.size(); ++j) {
        x[j] = spec.stats[j].weight * pair.t *
               transform_value(spec.stats[j].transform, pair.beta);
    }
    return x;
}

FeatureVector extract_feature(const Observation& obs, const CVec& v,
                              const FeatureSpec& spec) {
    if (obs.z.size() != v.size() || obs.secondary.rows() != v.size()) {
        throw DimensionMismatch("extract_feature: size mismatch");
    }
    const HermitianPD s = scaled_sample_covariance(obs.secondary);
    if (spec.kind == FeatureSpec::Kind::raw_whitened) {
        const CMat b = inv_sqrt_hermitian(s);
        const CVec x = b * obs.z;
        FeatureVector out(2 * static_cast<std::size_t>(x.size()));
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            out[2 * static_cast<std::size_t>(i)] = x[i].real();
            out[2 * static_cast<std::size_t>(i) + 1] = x[i].imag();
        }
        return out;
    }
    return features_from_pair(stat_pair(obs.z, s, v), spec);
}

} // namespace rknn
