#include "radarknn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "radarknn/parallel.hpp"

namespace rknn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 16-point Gauss-Legendre abscissas/weights on [-1, 1], symmetric halves.
constexpr int kGlHalf = 8;
constexpr double kGlX[kGlHalf] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542,
};
constexpr double kGlW[kGlHalf] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806,
};

double lchoose(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
           std::lgamma(n - k + 1.0);
}

double lbeta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double squared_distance(const FeatureVector& a, const FeatureVector& b) {
    double d2 = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        d2 += diff * diff;
    }
    return d2;
}

// Region of the fresh draw's t-axis selected by the quadratic at one beta:
// whole line (discriminant <= 0), or the outside/inside of the root
// interval with the lower root's sign fixed by gamma3 t^2 - rhs.
enum class NodeClass { whole, root_lo_neg, root_lo_pos };

// One-beta evaluation context shared by p0 and p1.
struct CaseEval {
    const FeatureSpec* spec = nullptr;
    std::vector<double> d;      // weights
    std::vector<double> b_test; // transformed test entries
    double t_test = 0.0;
    double rhs = 0.0;
    double g3 = 0.0; // constant across beta

    CaseEval(const StatPair& test, double rhs_in, const FeatureSpec& s)
        : spec(&s), t_test(test.t), rhs(rhs_in) {
        d.reserve(s.stats.size());
        b_test.reserve(s.stats.size());
        for (const auto& st : s.stats) {
            d.push_back(st.weight);
            b_test.push_back(transform_value(st.transform, test.beta));
        }
        for (std::size_t j = 0; j < d.size(); ++j) {
            g3 += d[j] * d[j] * b_test[j] * b_test[j];
        }
    }

    QuadCase at(double beta) const {
        QuadCoeffs g;
        g.g3 = g3;
        for (std::size_t j = 0; j < d.size(); ++j) {
            const double b = transform_value((*spec).stats[j].transform, beta);
            const double dj2 = d[j] * d[j];
            g.g1 += dj2 * b * b;
            g.g2 += dj2 * b * b_test[j];
        }
        return make_quad_case(g, t_test, rhs);
    }

    NodeClass classify(double beta) const {
        const QuadCase qc = at(beta);
        if (qc.discriminant <= 0.0) return NodeClass::whole;
        return qc.r_lo < 0.0 ? NodeClass::root_lo_neg : NodeClass::root_lo_pos;
    }
};

struct Segment {
    double lo = 0.0;
    double hi = 1.0;
    NodeClass cls = NodeClass::whole;
};

// Partition (0,1) into classification runs: scan midpoints, then bisect
// each cell whose endpoints classify differently.
std::vector<Segment> classify_segments(const CaseEval& eval,
                                       const QuadratureOptions& opt) {
    const int n = opt.scan_points;
    std::vector<NodeClass> cls(n);
    for (int i = 0; i < n; ++i) {
        cls[i] = eval.classify((i + 0.5) / n);
    }
    std::vector<Segment> segments;
    double seg_lo = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        if (cls[i] == cls[i + 1]) continue;
        double lo = (i + 0.5) / n;
        double hi = (i + 1.5) / n;
        const NodeClass left = cls[i];
        for (int iter = 0; iter < 100 && hi - lo > 1e-15; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (eval.classify(mid) == left) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        const double boundary = 0.5 * (lo + hi);
        segments.push_back({seg_lo, boundary, left});
        seg_lo = boundary;
    }
    segments.push_back({seg_lo, 1.0, cls[static_cast<std::size_t>(n) - 1]});
    return segments;
}

// Integrand value: central-beta density times the conditional probability
// that the fresh draw's t statistic falls in the selected region.
class ConditionalIntegrand {
public:
    ConditionalIntegrand(const CaseEval& eval, const StatDims& dims,
                         bool upper_tail, double noncent_scale,
                         const SeriesOptions& series)
        : eval_(eval),
          upper_(upper_tail),
          scale_(noncent_scale),
          series_(series),
          p_(dims.p_dof()),
          q_(dims.q_dof()),
          lnorm_(lbeta(dims.p_dof(), dims.q_dof())),
          f_{1, dims.f_den_dof(), 0.0} {}

    double density(double beta) const {
        return std::exp((p_ - 1.0) * std::log(beta) +
                        (q_ - 1.0) * std::log1p(-beta) - lnorm_);
    }

    double conditional(double beta) const {
        const QuadCase qc = eval_.at(beta);
        ComplexFParams f = f_;
        f.delta2 = scale_ * beta;
        if (upper_) {
            // P(outside the root interval); whole line when no real roots.
            if (qc.discriminant <= 0.0) return 1.0;
            if (qc.r_lo < 0.0) return 1.0 - cdf_complex_F(qc.r_hi, f, series_);
            return cdf_complex_F(qc.r_lo, f, series_) + 1.0 -
                   cdf_complex_F(qc.r_hi, f, series_);
        }
        // P(inside the root interval); empty when no real roots.
        if (qc.discriminant <= 0.0) return 0.0;
        if (qc.r_lo < 0.0) return cdf_complex_F(qc.r_hi, f, series_);
        return cdf_complex_F(qc.r_hi, f, series_) -
               cdf_complex_F(qc.r_lo, f, series_);
    }

    double operator()(double beta) const {
        return density(beta) * conditional(beta);
    }

    double beta_mass(double lo, double hi) const {
        return reg_inc_beta(p_, q_, hi) - reg_inc_beta(p_, q_, lo);
    }

private:
    const CaseEval& eval_;
    bool upper_;
    double scale_;
    SeriesOptions series_;
    double p_;
    double q_;
    double lnorm_;
    ComplexFParams f_;
};

template <typename F>
double gl16(const F& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    double acc = 0.0;
    for (int i = 0; i < kGlHalf; ++i) {
        acc += kGlW[i] * (f(c - h * kGlX[i]) + f(c + h * kGlX[i]));
    }
    return acc * h;
}

// Segment mapped to theta through beta = mid + rad*sin(theta). The root
// interval collapses like sqrt(beta - edge) where the discriminant vanishes
// at a segment edge; the cos(theta) Jacobian absorbs that half-power, so
// plain Gauss-Legendre in theta sees a smooth integrand.
class MappedSegment {
public:
    MappedSegment(const ConditionalIntegrand& f, double lo, double hi)
        : f_(f), mid_(0.5 * (lo + hi)), rad_(0.5 * (hi - lo)) {}

    double operator()(double theta) const {
        const double beta = mid_ + rad_ * std::sin(theta);
        if (beta <= 0.0 || beta >= 1.0) return 0.0;
        return f_(beta) * rad_ * std::cos(theta);
    }

private:
    const ConditionalIntegrand& f_;
    double mid_;
    double rad_;
};

// Bisect until halving a piece moves its estimate by no more than its share
// of the budget. Children split the budget, so accepted errors sum to at
// most the segment budget.
template <typename F>
double adaptive_gl(const F& f, double lo, double hi, double whole,
                   double budget, int depth, int max_depth) {
    const double mid = 0.5 * (lo + hi);
    const double left = gl16(f, lo, mid);
    const double right = gl16(f, mid, hi);
    const double split = left + right;
    if (std::fabs(split - whole) <= budget || hi - lo <= 1e-12) return split;
    if (depth >= max_depth) {
        throw QuadratureNonConvergence(
            "p0/p1 quadrature did not settle under grid doubling");
    }
    return adaptive_gl(f, lo, mid, left, 0.5 * budget, depth + 1, max_depth) +
           adaptive_gl(f, mid, hi, right, 0.5 * budget, depth + 1, max_depth);
}

// Shared p0/p1 integrator. upper_tail selects the p0 form (complement of
// the root interval; whole-line pieces carry full density mass) versus the
// p1 form (root interval; whole-line pieces carry zero).
double integrate_conditional(const StatPair& test, double rhs,
                             const FeatureSpec& spec, const StatDims& dims,
                             bool upper_tail, double noncent_scale,
                             const QuadratureOptions& opt) {
    spec.validate();
    dims.validate();
    if (spec.kind != FeatureSpec::Kind::stacked_stats) {
        throw ConfigError("closed-form probabilities need a stacked spec");
    }
    if (opt.scan_points < 64) {
        throw ConfigError("quadrature scan must use at least 64 points");
    }
    if (!(rhs >= 0.0)) throw ConfigError("conditional rhs must be >= 0");
    if (std::isinf(rhs)) return upper_tail ? 0.0 : 1.0;
    if (!(test.t >= 0.0) || !(test.beta > 0.0) || !(test.beta < 1.0)) {
        throw ConfigError("conditional test pair out of range");
    }

    const CaseEval eval(test, rhs, spec);
    const ConditionalIntegrand f(eval, dims, upper_tail, noncent_scale,
                                 opt.series);
    const auto segments = classify_segments(eval, opt);

    double nonwhole = 0.0;
    for (const auto& seg : segments) {
        if (seg.cls != NodeClass::whole) nonwhole += seg.hi - seg.lo;
    }

    constexpr double kHalfPi = 1.5707963267948966;
    double exact_mass = 0.0; // whole-line pieces, via the beta CDF
    double value = 0.0;
    for (const auto& seg : segments) {
        if (seg.cls == NodeClass::whole) {
            if (upper_tail) exact_mass += f.beta_mass(seg.lo, seg.hi);
            continue;
        }
        const MappedSegment g(f, seg.lo, seg.hi);
        const double whole = gl16(g, -kHalfPi, kHalfPi);
        const double budget = opt.tol * ((seg.hi - seg.lo) / nonwhole);
        value += adaptive_gl(g, -kHalfPi, kHalfPi, whole, budget, 0,
                             opt.max_depth);
    }
    double total = exact_mass + value;
    return total < 0.0 ? 0.0 : (total > 1.0 ? 1.0 : total);
}

struct MeanStd {
    double mean = 0.0;
    double se = 0.0;
};

// Deterministic (index-ordered) mean and standard error.
MeanStd reduce(const std::vector<double>& values) {
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values) {
        const double d = v - mean;
        ss += d * d;
    }
    const double var = values.size() > 1 ? ss / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n)};
}

} // namespace

void KnnDesign::validate() const {
    if (n_t < 1) throw InvalidCombinatorics("knn design: n_t must be >= 1");
    if (k < 1 || static_cast<std::size_t>(k) > 2 * n_t) {
        throw InvalidCombinatorics("knn design: k out of range");
    }
    if (m < 0 || m > k - 1) {
        throw InvalidCombinatorics("knn design: majority count out of range");
    }
    if (static_cast<std::size_t>(k - m) > n_t ||
        static_cast<std::size_t>(m) > n_t) {
        throw InvalidCombinatorics("knn design: block sizes not realizable");
    }
}

double ConditioningBlock::c2() const {
    if (block0.empty()) {
        throw InvalidCombinatorics("conditioning block: empty class-0 block");
    }
    const FeatureVector x = features_from_pair(test, spec);
    double worst = 0.0;
    for (const auto& pair : block0) {
        worst = std::max(worst,
                         squared_distance(features_from_pair(pair, spec), x));
    }
    return worst;
}

double ConditioningBlock::a2() const {
    if (block1.empty()) return kInf;
    const FeatureVector x = features_from_pair(test, spec);
    double best = kInf;
    for (const auto& pair : block1) {
        best = std::min(best,
                        squared_distance(features_from_pair(pair, spec), x));
    }
    return best;
}

QuadCoeffs quad_coeffs(const std::vector<double>& b_test,
                       const std::vector<double>& b_other,
                       const std::vector<double>& d) {
    if (b_test.size() != b_other.size() || b_test.size() != d.size() ||
        d.empty()) {
        throw DimensionMismatch("quad_coeffs: length mismatch");
    }
    QuadCoeffs g;
    for (std::size_t j = 0; j < d.size(); ++j) {
        const double dj2 = d[j] * d[j];
        g.g1 += dj2 * b_other[j] * b_other[j];
        g.g2 += dj2 * b_other[j] * b_test[j];
        g.g3 += dj2 * b_test[j] * b_test[j];
    }
    return g;
}

QuadCase make_quad_case(const QuadCoeffs& g, double t_test, double rhs) {
    QuadCase qc;
    qc.coeffs = g;
    qc.rhs = rhs;
    const double t2 = t_test * t_test;
    qc.discriminant =
        4.0 * (t2 * (g.g2 * g.g2 - g.g1 * g.g3) + g.g1 * rhs);
    if (qc.discriminant > 0.0) {
        // g2 >= 0 for nonnegative transforms, so the larger root comes from
        // the additive branch and the smaller from the product identity
        // r_lo r_hi = (g3 t^2 - rhs)/g1 (cancellation-free).
        const double s = t_test * g.g2 + 0.5 * std::sqrt(qc.discriminant);
        qc.r_hi = s / g.g1;
        qc.r_lo = (g.g3 * t2 - rhs) / s;
    }
    return qc;
}

bool indicator_Y(const ConditioningBlock& cond) { return cond.c2() <= cond.a2(); }

double p0_conditional(const StatPair& test, double c2, const FeatureSpec& spec,
                      const StatDims& dims, const QuadratureOptions& opt) {
    return integrate_conditional(test, c2, spec, dims, true, 0.0, opt);
}

double p1_conditional(const StatPair& test, double a2, const FeatureSpec& spec,
                      const StatDims& dims, double snr,
                      const QuadratureOptions& opt) {
    if (snr < 0.0) throw ConfigError("p1_conditional: snr must be >= 0");
    return integrate_conditional(test, a2, spec, dims, false, snr, opt);
}

double p0_closed(const ConditioningBlock& cond, const StatDims& dims,
                 const QuadratureOptions& opt) {
    return p0_conditional(cond.test, cond.c2(), cond.spec, dims, opt);
}

double p1_closed(const ConditioningBlock& cond, const StatDims& dims,
                 double snr, const QuadratureOptions& opt) {
    return p1_conditional(cond.test, cond.a2(), cond.spec, dims, snr, opt);
}

McEstimate prop1_probability(const KnnDesign& rule, const FeatureSpec& spec,
                             const StatDims& dims, const StatPairLaw& test_law,
                             double train_snr, std::size_t n_outer,
                             std::uint64_t seed, const QuadratureOptions& opt,
                             int threads) {
    rule.validate();
    dims.validate();
    test_law.validate();
    if (spec.kind != FeatureSpec::Kind::stacked_stats) {
        throw ConfigError("prop1_probability: stacked spec required");
    }
    if (n_outer < 1000) {
        throw InsufficientTrials("prop1_probability: n_outer below 10^3");
    }
    const std::size_t n_t = rule.n_t;
    const std::size_t size0 = static_cast<std::size_t>(rule.k - rule.m);
    const std::size_t size1 = n_t - static_cast<std::size_t>(rule.m);
    const double comb = std::exp(lchoose(n_t, size0) + lchoose(n_t, size1));
    const double exp0 =
        static_cast<double>(n_t) - static_cast<double>(rule.k - rule.m);
    const StatPairLaw h1_train = StatPairLaw::h1(train_snr, 1.0);

    std::vector<double> terms(n_outer, 0.0);
    parallel_for(n_outer, threads, [&](std::size_t i) {
        RngStream rng(seed, stream_domain::outer_trial, i);
        ConditioningBlock cond;
        cond.spec = spec;
        cond.test = sample_stat_pair(rng, dims, test_law);
        cond.block0.reserve(size0);
        for (std::size_t j = 0; j < size0; ++j) {
            cond.block0.push_back(sample_stat_pair(rng, dims, StatPairLaw::h0()));
        }
        cond.block1.reserve(size1);
        for (std::size_t j = 0; j < size1; ++j) {
            cond.block1.push_back(sample_stat_pair(rng, dims, h1_train));
        }
        const double c2 = cond.c2();
        const double a2 = cond.a2();
        if (c2 > a2) return; // indicator zero, term stays 0
        double term =
            std::pow(p0_conditional(cond.test, c2, spec, dims, opt), exp0);
        if (rule.m > 0) {
            term *= std::pow(
                p1_conditional(cond.test, a2, spec, dims, train_snr, opt),
                rule.m);
        }
        terms[i] = term;
    });

    const MeanStd stats = reduce(terms);
    return {1.0 - comb * stats.mean, comb * stats.se};
}

namespace {

// Exact KNN vote on tiny feature sets; ordering matches the knn module
// (squared distance, then class 0 first, then index).
int small_knn_label_count(const std::vector<FeatureVector>& class0,
                          const std::vector<FeatureVector>& class1,
                          const FeatureVector& x, int k) {
    thread_local std::vector<std::pair<double, std::size_t>> scratch;
    scratch.clear();
    std::size_t idx = 0;
    for (const auto& f : class0) scratch.emplace_back(squared_distance(f, x), idx++);
    for (const auto& f : class1) scratch.emplace_back(squared_distance(f, x), idx++);
    std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end());
    int count = 0;
    for (int i = 0; i < k; ++i) {
        if (scratch[static_cast<std::size_t>(i)].second >= class0.size()) {
            ++count;
        }
    }
    return count;
}

McEstimate binomial_estimate(const std::vector<unsigned char>& hits) {
    const double n = static_cast<double>(hits.size());
    double sum = 0.0;
    for (unsigned char h : hits) sum += h;
    const double p = sum / n;
    return {p, std::sqrt(p * (1.0 - p) / n)};
}

} // namespace

McEstimate brute_force_probability(const KnnDesign& rule,
                                   const FeatureSpec& spec,
                                   const StatDims& dims,
                                   const StatPairLaw& test_law,
                                   double train_snr, std::size_t n_trials,
                                   std::uint64_t seed, int threads) {
    rule.validate();
    dims.validate();
    test_law.validate();
    if (spec.kind != FeatureSpec::Kind::stacked_stats) {
        throw ConfigError("brute_force_probability: stacked spec required");
    }
    if (n_trials < 1000) {
        throw InsufficientTrials("brute_force_probability: n_trials below 10^3");
    }
    const StatPairLaw h1_train = StatPairLaw::h1(train_snr, 1.0);
    std::vector<unsigned char> hits(n_trials, 0);
    parallel_for(n_trials, threads, [&](std::size_t i) {
        RngStream rng(seed, stream_domain::brute_trial, i);
        const FeatureVector x =
            features_from_pair(sample_stat_pair(rng, dims, test_law), spec);
        std::vector<FeatureVector> class0;
        std::vector<FeatureVector> class1;
        class0.reserve(rule.n_t);
        class1.reserve(rule.n_t);
        for (std::size_t j = 0; j < rule.n_t; ++j) {
            class0.push_back(features_from_pair(
                sample_stat_pair(rng, dims, StatPairLaw::h0()), spec));
        }
        for (std::size_t j = 0; j < rule.n_t; ++j) {
            class1.push_back(features_from_pair(
                sample_stat_pair(rng, dims, h1_train), spec));
        }
        hits[i] = small_knn_label_count(class0, class1, x, rule.k) > rule.m;
    });
    return binomial_estimate(hits);
}

McEstimate gaussian_toy_probability(const CVec& mean0, const CVec& mean1,
                                    double sigma2, const KnnDesign& rule,
                                    Hypothesis test_hyp, std::size_t n_outer,
                                    std::uint64_t seed,
                                    const SeriesOptions& series, int threads) {
    rule.validate();
    if (mean0.size() != mean1.size() || mean0.size() < 1) {
        throw DimensionMismatch("gaussian toy: mean size mismatch");
    }
    if (!(sigma2 > 0.0)) throw ConfigError("gaussian toy: sigma2 must be > 0");
    if (n_outer < 1000) {
        throw InsufficientTrials("gaussian_toy_probability: n_outer below 10^3");
    }
    const int m_dim = static_cast<int>(mean0.size());
    const std::size_t size0 = static_cast<std::size_t>(rule.k - rule.m);
    const std::size_t size1 = rule.n_t - static_cast<std::size_t>(rule.m);
    const double comb =
        std::exp(lchoose(rule.n_t, size0) + lchoose(rule.n_t, size1));
    const double exp0 =
        static_cast<double>(rule.n_t) - static_cast<double>(rule.k - rule.m);
    const double sigma = std::sqrt(sigma2);

    std::vector<double> terms(n_outer, 0.0);
    parallel_for(n_outer, threads, [&](std::size_t i) {
        RngStream rng(seed, stream_domain::toy_trial, i);
        const auto draw = [&](const CVec& mean) {
            CVec v(m_dim);
            for (int j = 0; j < m_dim; ++j) {
                v[j] = mean[j] + sigma * rng.next_cnormal();
            }
            return v;
        };
        const CVec x = draw(test_hyp == Hypothesis::h1 ? mean1 : mean0);
        double c2 = 0.0;
        for (std::size_t j = 0; j < size0; ++j) {
            c2 = std::max(c2, (draw(mean0) - x).squaredNorm());
        }
        double a2 = kInf;
        for (std::size_t j = 0; j < size1; ++j) {
            a2 = std::min(a2, (draw(mean1) - x).squaredNorm());
        }
        if (c2 > a2) return;
        const double nc0 = (mean0 - x).squaredNorm() / sigma2;
        double term = std::pow(
            1.0 - cdf_complex_chi2(c2 / sigma2, m_dim, nc0, series), exp0);
        if (rule.m > 0) {
            const double nc1 = (mean1 - x).squaredNorm() / sigma2;
            term *= std::pow(
                cdf_complex_chi2(a2 / sigma2, m_dim, nc1, series), rule.m);
        }
        terms[i] = term;
    });

    const MeanStd stats = reduce(terms);
    return {1.0 - comb * stats.mean, comb * stats.se};
}

McEstimate gaussian_toy_simulation(const CVec& mean0, const CVec& mean1,
                                   double sigma2, const KnnDesign& rule,
                                   Hypothesis test_hyp, std::size_t n_trials,
                                   std::uint64_t seed, int threads) {
    rule.validate();
    if (mean0.size() != mean1.size() || mean0.size() < 1) {
        throw DimensionMismatch("gaussian toy: mean size mismatch");
    }
    if (!(sigma2 > 0.0)) throw ConfigError("gaussian toy: sigma2 must be > 0");
    if (n_trials < 1000) {
        throw InsufficientTrials("gaussian_toy_simulation: n_trials below 10^3");
    }
    const int m_dim = static_cast<int>(mean0.size());
    const double sigma = std::sqrt(sigma2);
    std::vector<unsigned char> hits(n_trials, 0);
    parallel_for(n_trials, threads, [&](std::size_t i) {
        RngStream rng(seed, stream_domain::toy_trial + 8, i);
        const auto draw = [&](const CVec& mean) {
            CVec v(m_dim);
            for (int j = 0; j < m_dim; ++j) {
                v[j] = mean[j] + sigma * rng.next_cnormal();
            }
            return v;
        };
        const CVec x = draw(test_hyp == Hypothesis::h1 ? mean1 : mean0);
        // Distances from complex vectors directly; the real embedding used
        // by the KNN engine is isometric so the vote is identical.
        thread_local std::vector<std::pair<double, std::size_t>> scratch;
        scratch.clear();
        for (std::size_t j = 0; j < rule.n_t; ++j) {
            scratch.emplace_back((draw(mean0) - x).squaredNorm(), j);
        }
        for (std::size_t j = 0; j < rule.n_t; ++j) {
            scratch.emplace_back((draw(mean1) - x).squaredNorm(), rule.n_t + j);
        }
        std::nth_element(scratch.begin(), scratch.begin() + (rule.k - 1),
                         scratch.end());
        int count = 0;
        for (int j = 0; j < rule.k; ++j) {
            if (scratch[static_cast<std::size_t>(j)].second >= rule.n_t) {
                ++count;
            }
        }
        hits[i] = count > rule.m;
    });
    return binomial_estimate(hits);
}

double exchangeable_baseline(const KnnDesign& rule) {
    rule.validate();
    // Hypergeometric tail P(count > m) for k draws from n_t + n_t labels.
    const double n_t = static_cast<double>(rule.n_t);
    const double denom = lchoose(2.0 * n_t, rule.k);
    double p = 0.0;
    for (int c = rule.m + 1; c <= rule.k; ++c) {
        if (c > static_cast<int>(rule.n_t)) break;
        if (rule.k - c > static_cast<int>(rule.n_t)) continue;
        p += std::exp(lchoose(n_t, c) + lchoose(n_t, rule.k - c) - denom);
    }
    return p;
}

} // namespace rknn
