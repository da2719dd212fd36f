#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "radarknn/rng.hpp"

using namespace rknn;

TEST_CASE("identical seeds give identical streams") {
    RngStream a(7, stream_domain::generic, 42);
    RngStream b(7, stream_domain::generic, 42);
    for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("domain and index changes decorrelate streams") {
    RngStream base(7, stream_domain::generic, 42);
    RngStream other_domain(7, stream_domain::pd_trial, 42);
    RngStream other_index(7, stream_domain::generic, 43);
    int same_d = 0;
    int same_i = 0;
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t r = base.next_u64();
        same_d += r == other_domain.next_u64();
        same_i += r == other_index.next_u64();
    }
    CHECK(same_d == 0);
    CHECK(same_i == 0);
}

TEST_CASE("uniform doubles live in [0,1) and fill the interval") {
    RngStream rng(3, stream_domain::generic, 0);
    const int n = 20000;
    double sum = 0.0;
    double mn = 1.0;
    double mx = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
        mn = std::min(mn, u);
        mx = std::max(mx, u);
    }
    // mean 1/2 with sd 1/sqrt(12 n); 5 sigma band
    CHECK(std::fabs(sum / n - 0.5) < 5.0 / std::sqrt(12.0 * n));
    CHECK(mn < 1e-3);
    CHECK(mx > 1.0 - 1e-3);
}

TEST_CASE("next_double_pos never returns zero") {
    RngStream rng(11, stream_domain::generic, 5);
    for (int i = 0; i < 100000; ++i) CHECK(rng.next_double_pos() > 0.0);
}

TEST_CASE("real normal moments") {
    RngStream rng(5, stream_domain::generic, 1);
    const int n = 100000;
    double s1 = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.next_normal();
        s1 += x;
        s2 += x * x;
    }
    CHECK(std::fabs(s1 / n) < 5.0 / std::sqrt(double(n)));
    // var of sample second moment is ~2/n for a unit normal
    CHECK(std::fabs(s2 / n - 1.0) < 5.0 * std::sqrt(2.0 / n));
}

TEST_CASE("complex normal has unit power split evenly") {
    RngStream rng(9, stream_domain::generic, 2);
    const int n = 100000;
    double pw = 0.0;
    double re2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto g = rng.next_cnormal();
        pw += std::norm(g);
        re2 += g.real() * g.real();
    }
    CHECK(std::fabs(pw / n - 1.0) < 5.0 * std::sqrt(1.0 / n));
    CHECK(std::fabs(re2 / n - 0.5) < 5.0 * std::sqrt(0.5 / n));
}
