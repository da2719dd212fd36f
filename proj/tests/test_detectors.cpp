#include <cmath>
#include <complex>

#include "doctest.h"
#include "radarknn/detectors.hpp"
#include "radarknn/scenario.hpp"

using namespace rknn;
using cd = std::complex<double>;

namespace {

// Same frozen triple as the linalg tests; reference statistics computed
// with an explicit inverse.
HermitianPD frozen_s() {
    CMat s(3, 3);
    s << cd(2.0, 0.0), cd(0.5, 0.3), cd(-0.2, 0.1),
         cd(0.5, -0.3), cd(1.5, 0.0), cd(0.1, -0.4),
         cd(-0.2, -0.1), cd(0.1, 0.4), cd(1.8, 0.0);
    return HermitianPD(s);
}

CVec frozen_z() {
    CVec z(3);
    z << cd(1.0, 0.5), cd(-0.3, 1.2), cd(0.8, -0.7);
    return z;
}

CVec frozen_v() {
    CVec v(3);
    v << cd(1.0, 0.0), cd(0.6, -0.8), cd(-0.28, 0.96);
    return v;
}

} // namespace

TEST_CASE("quad forms match the explicit-inverse values") {
    const QuadForms q = quad_forms(CholFactor(frozen_s()), frozen_z(),
                                   frozen_v());
    CHECK(q.zz == doctest::Approx(3.357059236712713).epsilon(1e-13));
    CHECK(q.zv.real() == doctest::Approx(-0.93742917349566801).epsilon(1e-12));
    CHECK(q.zv.imag() == doctest::Approx(0.40232264106766569).epsilon(1e-12));
    CHECK(q.vv == doctest::Approx(1.5986888316553498).epsilon(1e-13));
}

TEST_CASE("detector statistics on the frozen example") {
    const HermitianPD s = frozen_s();
    const CVec z = frozen_z();
    const CVec v = frozen_v();
    CHECK(kelly_stat(z, s, v) ==
          doctest::Approx(0.14939698817867633).epsilon(1e-12));
    CHECK(amf_stat(z, s, v) ==
          doctest::Approx(0.65093152728096171).epsilon(1e-12));
    CHECK(ace_stat(z, s, v) ==
          doctest::Approx(0.19389932717373329).epsilon(1e-12));
    const StatPair pr = stat_pair(z, s, v);
    CHECK(pr.t == doctest::Approx(0.17563656147746914).epsilon(1e-12));
    CHECK(pr.beta == doctest::Approx(0.26982340556022738).epsilon(1e-12));
}

TEST_CASE("statistics are algebraic functions of the pair") {
    RngStream rng(17, stream_domain::generic, 3);
    const HermitianPD s = frozen_s();
    const CVec v = frozen_v();
    for (int trial = 0; trial < 200; ++trial) {
        CVec z(3);
        for (int i = 0; i < 3; ++i) z(i) = rng.next_cnormal() * 2.0;
        const QuadForms q = quad_forms(CholFactor(s), z, v);
        const StatPair pr = stat_pair(q);
        REQUIRE(pr.t >= 0.0);
        REQUIRE(pr.beta > 0.0);
        REQUIRE(pr.beta < 1.0);
        CHECK(kelly_stat(q) ==
              doctest::Approx(pr.t / (1.0 + pr.t)).epsilon(1e-12));
        CHECK(amf_stat(q) == doctest::Approx(pr.t / pr.beta).epsilon(1e-12));
        CHECK(ace_stat(q) ==
              doctest::Approx(pr.t / (pr.t + 1.0 - pr.beta)).epsilon(1e-12));
    }
}

TEST_CASE("joint scaling of data and covariance leaves statistics fixed") {
    const HermitianPD s = frozen_s();
    const CVec z = frozen_z();
    const CVec v = frozen_v();
    const cd c(1.7, -2.3);
    const HermitianPD s2(s.mat() * std::norm(c));
    const CVec z2 = z * c;
    CHECK(kelly_stat(z2, s2, v) ==
          doctest::Approx(kelly_stat(z, s, v)).epsilon(1e-12));
    CHECK(amf_stat(z2, s2, v) ==
          doctest::Approx(amf_stat(z, s, v)).epsilon(1e-12));
    CHECK(ace_stat(z2, s2, v) ==
          doctest::Approx(ace_stat(z, s, v)).epsilon(1e-12));
    const StatPair a = stat_pair(z, s, v);
    const StatPair b = stat_pair(z2, s2, v);
    CHECK(a.t == doctest::Approx(b.t).epsilon(1e-12));
    CHECK(a.beta == doctest::Approx(b.beta).epsilon(1e-12));
}

TEST_CASE("transform values") {
    CHECK(transform_value(StatTransform::kelly, 0.3) == 1.0);
    CHECK(transform_value(StatTransform::amf, 0.25) == doctest::Approx(4.0));
    CHECK(transform_value(StatTransform::ace, 0.75) == doctest::Approx(4.0));
    CHECK_THROWS_AS(transform_value(StatTransform::amf, 0.0),
                    TransformSingularity);
    CHECK_THROWS_AS(transform_value(StatTransform::ace, 1.0),
                    TransformSingularity);
}

TEST_CASE("stacked features scale the transformed statistic") {
    const FeatureSpec spec = FeatureSpec::stacked(
        {{1.0, StatTransform::kelly}, {0.7, StatTransform::amf}});
    const StatPair pr{0.5, 0.25};
    const FeatureVector x = features_from_pair(pr, spec);
    REQUIRE(x.size() == 2);
    CHECK(x[0] == doctest::Approx(0.5));
    CHECK(x[1] == doctest::Approx(0.7 * 0.5 / 0.25));

    const FeatureSpec ace_spec = FeatureSpec::stacked(
        {{1.0, StatTransform::kelly}, {0.8, StatTransform::ace}});
    const FeatureVector y = features_from_pair(pr, ace_spec);
    CHECK(y[1] == doctest::Approx(0.8 * 0.5 / 0.75));
}

TEST_CASE("feature spec validation") {
    CHECK_THROWS_AS(features_from_pair(StatPair{0.5, 0.5}, FeatureSpec::raw()),
                    ConfigError);
    CHECK_THROWS_AS(FeatureSpec::stacked({}).validate(), ConfigError);
    CHECK_THROWS_AS(
        FeatureSpec::stacked({{-1.0, StatTransform::kelly}}).validate(),
        ConfigError);
    CHECK_THROWS_AS(
        FeatureSpec::stacked({{0.0, StatTransform::kelly}}).validate(),
        ConfigError);
    CHECK(FeatureSpec::raw().feature_dim(8) == 16);
    CHECK(FeatureSpec::stacked({{1.0, StatTransform::kelly},
                                {0.7, StatTransform::amf}})
              .feature_dim(8) == 2);
}

TEST_CASE("raw feature is the interleaved whitened vector") {
    ScenarioConfig cfg;
    cfg.n = 4;
    cfg.k_s = 8;
    const ObservationSampler s(cfg);
    RngStream rng(6, stream_domain::generic, 9);
    const Observation obs = s.draw(rng, Hypothesis::h0);
    const FeatureVector x =
        extract_feature(obs, s.nominal_steering(), FeatureSpec::raw());
    REQUIRE(x.size() == 8);
    double nrm = 0.0;
    for (double c : x) nrm += c * c;
    // whitening: |S^{-1/2} z|^2 = z^H S^{-1} z with S the scaled sample
    // covariance of the secondary data
    const HermitianPD sc = scaled_sample_covariance(obs.secondary);
    CHECK(nrm == doctest::Approx(solve_quadratic_form(sc, obs.z))
                     .epsilon(1e-10));
}

TEST_CASE("stacked feature extraction matches the pair route") {
    ScenarioConfig cfg;
    cfg.n = 4;
    cfg.k_s = 8;
    const ObservationSampler s(cfg);
    RngStream rng(8, stream_domain::generic, 4);
    const Observation obs = s.draw(rng, Hypothesis::h1);
    const FeatureSpec spec = FeatureSpec::stacked(
        {{1.0, StatTransform::kelly}, {0.7, StatTransform::amf}});
    const FeatureVector a = extract_feature(obs, s.nominal_steering(), spec);
    const HermitianPD sc = scaled_sample_covariance(obs.secondary);
    const FeatureVector b = features_from_pair(
        stat_pair(obs.z, sc, s.nominal_steering()), spec);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
    }
}
