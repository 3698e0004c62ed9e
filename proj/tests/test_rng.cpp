#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "randlink/rng.hpp"

using namespace randlink;

TEST_CASE("mix_seed is deterministic and separates salts") {
    CHECK(mix_seed(42, 0) == mix_seed(42, 0));
    CHECK(mix_seed(42, 0) != mix_seed(42, 1));
    CHECK(mix_seed(42, 0) != mix_seed(43, 0));
    CHECK(mix_seed(0, 0) != 0);
}

TEST_CASE("uniform_in stays in range and hits the midpoint on average") {
    Rng rng(7);
    const int n = 100000;
    double lo = -2.0, hi = 5.0;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = uniform_in(rng, lo, hi);
        REQUIRE(x >= lo);
        REQUIRE(x < hi);
        sum += x;
    }
    double mean = sum / n;
    double se = (hi - lo) / std::sqrt(12.0) / std::sqrt(double(n));
    CHECK(std::abs(mean - (lo + hi) / 2.0) < 3.0 * se);
}

TEST_CASE("bounded_rand respects the bound and is roughly uniform") {
    Rng rng(3);
    std::vector<int> counts(5, 0);
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
        std::uint64_t r = bounded_rand(rng, 5);
        REQUIRE(r < 5);
        ++counts[static_cast<size_t>(r)];
    }
    for (int c : counts) {
        CHECK(c > n / 5 - 1000);
        CHECK(c < n / 5 + 1000);
    }
}

TEST_CASE("shuffle_in_place permutes deterministically") {
    std::vector<int> v(20);
    std::iota(v.begin(), v.end(), 0);
    std::vector<int> a = v, b = v, c = v;

    Rng r1(9), r2(9), r3(10);
    shuffle_in_place(a, r1);
    shuffle_in_place(b, r2);
    shuffle_in_place(c, r3);

    CHECK(a == b);
    CHECK(a != c);
    std::sort(a.begin(), a.end());
    CHECK(a == v);
}
