#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "prineig/rng.hpp"

using prineig::Rng;

TEST_CASE("identical seeds reproduce identical streams") {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.normal() == b.normal());
        CHECK(a.uniform01() == b.uniform01());
        CHECK(a.student_t8_standardized() == b.student_t8_standardized());
    }
}

TEST_CASE("derive_seed separates substreams") {
    const std::uint64_t master = 7;
    CHECK(prineig::derive_seed(master, 1) != prineig::derive_seed(master, 2));
    CHECK(prineig::derive_seed(master, 1, 0) != prineig::derive_seed(master, 1, 1));
    CHECK(prineig::derive_seed(master, 1) == prineig::derive_seed(master, 1));
}

TEST_CASE("uniform01 stays in [0,1)") {
    Rng rng(3);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("innovation moments: unit variance for both laws") {
    // Standardization contract: mean 0, variance 1 within Monte-Carlo error.
    const int draws = 1000000;
    for (const bool gaussian : {true, false}) {
        Rng rng(11);
        double sum = 0.0;
        double sum2 = 0.0;
        for (int i = 0; i < draws; ++i) {
            const double z = gaussian ? rng.normal() : rng.student_t8_standardized();
            sum += z;
            sum2 += z * z;
        }
        const double mean = sum / draws;
        const double var = sum2 / draws - mean * mean;
        CHECK(std::abs(mean) < 0.01);
        CHECK(var == doctest::Approx(1.0).epsilon(0.01));
    }
}

TEST_CASE("fourth moments: 3 for gaussian, 4.5 for standardized t(8)") {
    // E t(8)^4 / Var^2 = (3 * 64 / (6 * 4)) / (4/3)^2 = 8 / (16/9) = 4.5.
    const int draws = 1000000;
    Rng rng(13);
    double gauss4 = 0.0;
    double t4 = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double g = rng.normal();
        const double t = rng.student_t8_standardized();
        gauss4 += g * g * g * g;
        t4 += t * t * t * t;
    }
    CHECK(gauss4 / draws == doctest::Approx(3.0).epsilon(0.02));
    CHECK(t4 / draws == doctest::Approx(4.5).epsilon(0.04));
}
