#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "gibbsmap/rng.hpp"

using namespace gibbsmap;

TEST_CASE("identical seed and stream reproduce the draw sequence") {
    RngStream a(12345, 7);
    RngStream b(12345, 7);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    RngStream c(12345, 7);
    RngStream d(12345, 7);
    for (int i = 0; i < 1000; ++i) {
        CHECK(c.uniform01() == d.uniform01());
    }
}

TEST_CASE("distinct stream ids give distinct sequences") {
    RngStream a(12345, 0);
    RngStream b(12345, 1);
    int differing = 0;
    for (int i = 0; i < 64; ++i) {
        if (a.next_u64() != b.next_u64()) ++differing;
    }
    CHECK(differing > 60);

    RngStream c(1, 0);
    RngStream d(2, 0);
    differing = 0;
    for (int i = 0; i < 64; ++i) {
        if (c.next_u64() != d.next_u64()) ++differing;
    }
    CHECK(differing > 60);
}

TEST_CASE("uniform01 lies in the half-open unit interval with uniform moments") {
    RngStream rng(2026);
    const int n = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
        sum2 += u * u;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    // 3 standard errors around the uniform moments
    CHECK(std::abs(mean - 0.5) < 3.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(std::abs(var - 1.0 / 12.0) < 0.002);
}

TEST_CASE("open01 avoids both endpoints") {
    RngStream rng(5);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.open01();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        CHECK(std::isfinite(std::log(u)));
    }
}

TEST_CASE("uniform covers the requested interval") {
    RngStream rng(9);
    double lo = 1e9, hi = -1e9;
    for (int i = 0; i < 20000; ++i) {
        const double u = rng.uniform(-2.0, 3.0);
        CHECK(u >= -2.0);
        CHECK(u < 3.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo < -1.99);
    CHECK(hi > 2.99);
}

TEST_CASE("uniform_index is in range and unbiased across cells") {
    RngStream rng(77);
    CHECK(rng.uniform_index(1) == 0);
    const std::size_t cells = 8;
    const int n = 80000;
    std::vector<int> counts(cells, 0);
    for (int i = 0; i < n; ++i) {
        const std::size_t k = rng.uniform_index(cells);
        REQUIRE(k < cells);
        ++counts[k];
    }
    const double p = 1.0 / static_cast<double>(cells);
    const double sd = std::sqrt(p * (1.0 - p) * n);
    for (std::size_t k = 0; k < cells; ++k) {
        CHECK(std::abs(counts[k] - n * p) < 4.0 * sd);
    }
}
