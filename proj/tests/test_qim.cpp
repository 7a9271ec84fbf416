#include <doctest.h>

#include <random>

#include "amuse/qim.hpp"

TEST_CASE("qim embedding snaps to the nearest lattice point of correct parity") {
    // step 36: even multiples ... 0, 72, 144 ...; odd multiples ... 36, 108 ...
    CHECK(amuse::qim_embed(100.0, 1, 36.0) == doctest::Approx(108.0));
    CHECK(amuse::qim_embed(100.0, 0, 36.0) == doctest::Approx(72.0));
    CHECK(amuse::qim_embed(10.0, 0, 36.0) == doctest::Approx(0.0));
    CHECK(amuse::qim_embed(10.0, 1, 36.0) == doctest::Approx(36.0));
    CHECK(amuse::qim_embed(-50.0, 1, 36.0) == doctest::Approx(-36.0));
}

TEST_CASE("qim extraction reads the parity back") {
    CHECK(amuse::qim_extract(108.0, 36.0) == 1);
    CHECK(amuse::qim_extract(72.0, 36.0) == 0);
    CHECK(amuse::qim_extract(0.0, 36.0) == 0);
    CHECK(amuse::qim_extract(-36.0, 36.0) == 1);
}

TEST_CASE("embedded value moves by less than the step") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> c(-500.0, 500.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const double x = c(rng);
        const double step = 1.0 + (trial % 50);
        for (unsigned bit : {0u, 1u}) {
            const double y = amuse::qim_embed(x, bit, step);
            CHECK(std::abs(y - x) <= step + 1e-9);
            CHECK(amuse::qim_extract(y, step) == bit);
        }
    }
}

TEST_CASE("extraction survives perturbation below half the step") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> c(-500.0, 500.0);
    std::uniform_real_distribution<double> noise(-0.49, 0.49);
    const double step = 20.0;
    for (int trial = 0; trial < 2000; ++trial) {
        const unsigned bit = rng() & 1u;
        const double y = amuse::qim_embed(c(rng), bit, step);
        CHECK(amuse::qim_extract(y + noise(rng) * step, step) == bit);
    }
}

TEST_CASE("nonpositive step is rejected") {
    CHECK_THROWS_AS(amuse::qim_embed(1.0, 0, 0.0), amuse::InvalidInput);
    CHECK_THROWS_AS(amuse::qim_extract(1.0, -2.0), amuse::InvalidInput);
}
