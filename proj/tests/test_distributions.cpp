#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "radarknn/distributions.hpp"

using namespace rknn;

namespace {

// One-sample Kolmogorov-Smirnov distance against a CDF.
template <typename Cdf>
double ks_distance(std::vector<double> xs, const Cdf& cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max(d, std::fabs((i + 1) / n - f));
        d = std::max(d, std::fabs(f - i / n));
    }
    return d;
}

// critical sqrt(n) D at significance 0.01
constexpr double kKs99 = 1.6276236307187293;

} // namespace

TEST_CASE("regularized incomplete beta reference values") {
    CHECK(reg_inc_beta(10, 7, 0.3) ==
          doctest::Approx(0.0071295224368364933).epsilon(1e-11));
    CHECK(reg_inc_beta(10, 7, 0.9) ==
          doctest::Approx(0.99949546550765245).epsilon(1e-11));
    CHECK(reg_inc_beta(2.5, 1.5, 0.5) ==
          doctest::Approx(0.28779340921080615).epsilon(1e-11));
    CHECK(reg_inc_beta(1, 1, 0.25) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(reg_inc_beta(9, 1, 0.99) ==
          doctest::Approx(0.91351724748364083).epsilon(1e-11));
    CHECK(reg_inc_beta(10, 7, 0.0) == 0.0);
    CHECK(reg_inc_beta(10, 7, 1.0) == 1.0);
}

TEST_CASE("regularized incomplete gamma reference values") {
    CHECK(reg_lower_gamma(3, 2.5) ==
          doctest::Approx(0.45618688411667035).epsilon(1e-11));
    CHECK(reg_lower_gamma(1, 1.0) ==
          doctest::Approx(0.63212055882855767).epsilon(1e-11));
    CHECK(reg_lower_gamma(9, 8.0) ==
          doctest::Approx(0.40745265856240853).epsilon(1e-11));
    CHECK(reg_upper_gamma(3, 2.5) ==
          doctest::Approx(1.0 - 0.45618688411667035).epsilon(1e-11));
}

TEST_CASE("complex chi-square cdf") {
    // central: Gamma(m, 1)
    CHECK(cdf_complex_chi2(2.5, 3, 0.0) ==
          doctest::Approx(0.45618688411667035).epsilon(1e-11));
    // noncentral reference values from the real-representation chi-square
    CHECK(cdf_complex_chi2(4.0, 2, 3.0) ==
          doctest::Approx(0.41948425108770671).epsilon(1e-10));
    CHECK(cdf_complex_chi2(3.0, 5, 0.5) ==
          doctest::Approx(0.14019501367392403).epsilon(1e-10));
    CHECK(cdf_complex_chi2(12.0, 1, 10.0) ==
          doctest::Approx(0.62522597471666297).epsilon(1e-10));
    // large noncentrality stresses the series window
    CHECK(cdf_complex_chi2(90.0, 1, 100.0) ==
          doctest::Approx(0.22301367347041029).epsilon(1e-9));
    CHECK(cdf_complex_chi2(0.0, 2, 3.0) == 0.0);
    CHECK(cdf_complex_chi2(-1.0, 2, 3.0) == 0.0);
}

TEST_CASE("complex F cdf") {
    // central, num_dof 1: 1 - (1+x)^{-n}
    CHECK(cdf_complex_F(1.0, {1, 9, 0.0}) ==
          doctest::Approx(0.998046875).epsilon(1e-13));
    CHECK(cdf_complex_F(0.5, {1, 4, 0.0}) ==
          doctest::Approx(1.0 - std::pow(1.5, -4.0)).epsilon(1e-13));
    // noncentral reference values
    CHECK(cdf_complex_F(0.8, {1, 9, 5.0}) ==
          doctest::Approx(0.64034132299031055).epsilon(1e-10));
    CHECK(cdf_complex_F(0.3, {1, 15, 12.0}) ==
          doctest::Approx(0.028053053263054219).epsilon(1e-10));
    CHECK(cdf_complex_F(2.0, {1, 9, 40.0}) ==
          doctest::Approx(0.015556136889495271).epsilon(1e-9));
    CHECK(cdf_complex_F(0.0, {1, 9, 5.0}) == 0.0);
}

TEST_CASE("complex noncentral beta cdf") {
    CHECK(cdf_complex_beta(0.55, {10, 7, 4.0}) ==
          doctest::Approx(0.72415115271091957).epsilon(1e-10));
    CHECK(cdf_complex_beta(0.3, {2, 1, 2.0}) ==
          doctest::Approx(0.33923079014279217).epsilon(1e-10));
    // central case collapses to the incomplete beta
    CHECK(cdf_complex_beta(0.55, {10, 7, 0.0}) ==
          doctest::Approx(0.36603011715589234).epsilon(1e-11));
    CHECK(cdf_complex_beta(0.0, {10, 7, 4.0}) == 0.0);
    CHECK(cdf_complex_beta(1.0, {10, 7, 4.0}) == 1.0);
}

TEST_CASE("cdfs are monotone") {
    double prev_f = -1.0;
    double prev_b = -1.0;
    for (int i = 0; i <= 60; ++i) {
        const double xf = i * 0.1;
        const double f = cdf_complex_F(xf, {1, 9, 6.0});
        CHECK(f >= prev_f);
        prev_f = f;
        const double xb = i / 60.0;
        const double b = cdf_complex_beta(xb, {10, 7, 3.0});
        CHECK(b >= prev_b);
        prev_b = b;
    }
    CHECK(prev_f > 0.99);
    CHECK(prev_b == 1.0);
}

TEST_CASE("noncentral beta density integrates to one") {
    // Simpson on [0,1]; the reference normalization is 1 within 1e-8
    const ComplexBetaParams params{10, 7, 2.0};
    const int n = 1 << 12;
    const double h = 1.0 / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = i * h;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * pdf_complex_beta(x, params);
    }
    acc *= h / 3.0;
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("beta density zero outside the open interval") {
    const ComplexBetaParams params{10, 7, 2.0};
    CHECK(pdf_complex_beta(-0.1, params) == 0.0);
    CHECK(pdf_complex_beta(1.1, params) == 0.0);
}

TEST_CASE("gamma sampler moments") {
    RngStream rng(21, stream_domain::generic, 0);
    const double shape = 3.7;
    const int n = 50000;
    double s1 = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = sample_gamma(rng, shape);
        REQUIRE(x >= 0.0);
        s1 += x;
        s2 += x * x;
    }
    const double mean = s1 / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::fabs(mean - shape) < 5.0 * std::sqrt(shape / n));
    CHECK(std::fabs(var - shape) < 0.15);
    CHECK(sample_gamma(rng, 0.0) == 0.0);
}

TEST_CASE("gamma sampler distribution, fractional shape") {
    RngStream rng(22, stream_domain::generic, 1);
    const double shape = 0.6;
    std::vector<double> xs(20000);
    for (auto& x : xs) x = sample_gamma(rng, shape);
    const double d = ks_distance(
        xs, [&](double x) { return reg_lower_gamma(shape, x); });
    CHECK(d * std::sqrt(double(xs.size())) < kKs99);
}

TEST_CASE("beta sampler distribution") {
    RngStream rng(23, stream_domain::generic, 2);
    std::vector<double> xs(20000);
    for (auto& x : xs) x = sample_beta(rng, 10.0, 7.0);
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= xs.size();
    CHECK(mean == doctest::Approx(10.0 / 17.0).epsilon(0.01));
    const double d =
        ks_distance(xs, [&](double x) { return reg_inc_beta(10, 7, x); });
    CHECK(d * std::sqrt(double(xs.size())) < kKs99);
}

TEST_CASE("complex chi-square sampler distribution") {
    RngStream rng(24, stream_domain::generic, 3);
    std::vector<double> xs(20000);
    for (auto& x : xs) x = sample_complex_chi2(rng, 3, 2.0);
    const double d = ks_distance(
        xs, [&](double x) { return cdf_complex_chi2(x, 3, 2.0); });
    CHECK(d * std::sqrt(double(xs.size())) < kKs99);
}

TEST_CASE("stat pair law h0") {
    const StatDims dims{8, 16};
    RngStream rng(25, stream_domain::generic, 4);
    const int n = 20000;
    std::vector<double> ts(n);
    std::vector<double> bs(n);
    for (int i = 0; i < n; ++i) {
        const StatPair pr = sample_stat_pair(rng, dims, StatPairLaw::h0());
        REQUIRE(pr.t >= 0.0);
        REQUIRE(pr.beta > 0.0);
        REQUIRE(pr.beta < 1.0);
        ts[i] = pr.t;
        bs[i] = pr.beta;
    }
    // under h0, t and beta are independent: t ~ CF(1, n), beta central
    const int den = dims.f_den_dof();
    const double dt = ks_distance(ts, [&](double x) {
        return cdf_complex_F(x, {1, den, 0.0});
    });
    CHECK(dt * std::sqrt(double(n)) < kKs99);
    const double db = ks_distance(bs, [&](double x) {
        return reg_inc_beta(dims.p_dof(), dims.q_dof(), x);
    });
    CHECK(db * std::sqrt(double(n)) < kKs99);
}

TEST_CASE("stat pair law mismatched beta marginal") {
    const StatDims dims{8, 16};
    const double snr_p = 10.0;
    const double cos2 = 0.5;
    RngStream rng(26, stream_domain::generic, 5);
    const int n = 20000;
    std::vector<double> bs(n);
    for (int i = 0; i < n; ++i) {
        bs[i] = sample_stat_pair(rng, dims, StatPairLaw::h1(snr_p, cos2)).beta;
    }
    const ComplexBetaParams params{dims.p_dof(), dims.q_dof(),
                                   snr_p * (1.0 - cos2)};
    const double d = ks_distance(
        bs, [&](double x) { return cdf_complex_beta(x, params); });
    CHECK(d * std::sqrt(double(n)) < kKs99);
}

TEST_CASE("stat pair law matched mean") {
    const StatDims dims{8, 16};
    const double snr = 10.0;
    RngStream rng(27, stream_domain::generic, 6);
    const int n = 40000;
    double tsum = 0.0;
    double bsum = 0.0;
    for (int i = 0; i < n; ++i) {
        const StatPair pr =
            sample_stat_pair(rng, dims, StatPairLaw::h1(snr));
        tsum += pr.t;
        bsum += pr.beta;
    }
    // beta stays central under matched h1: E beta = p/(p+q)
    const double eb = double(dims.p_dof()) / (dims.p_dof() + dims.q_dof());
    CHECK(bsum / n == doctest::Approx(eb).epsilon(0.01));
    // E t = E[(1 + snr beta)] / (n_den - 1)
    const double et = (1.0 + snr * eb) / (dims.f_den_dof() - 1);
    CHECK(tsum / n == doctest::Approx(et).epsilon(0.05));
}

TEST_CASE("law reductions and validation") {
    const StatDims dims{8, 16};
    CHECK(dims.p_dof() == 10);
    CHECK(dims.q_dof() == 7);
    CHECK(dims.f_den_dof() == 9);
    CHECK_NOTHROW(StatPairLaw::h1(10.0, 0.5).validate());
    CHECK_THROWS_AS(StatPairLaw::h1(-1.0).validate(), ConfigError);
    CHECK_THROWS_AS(StatPairLaw::h1(1.0, 1.5).validate(), ConfigError);
    StatDims bad{8, 7};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("series truncation failure is reported") {
    SeriesOptions opt;
    opt.max_terms = 2;
    CHECK_THROWS_AS(cdf_complex_chi2(50.0, 1, 80.0, opt),
                    SeriesNonConvergence);
}
