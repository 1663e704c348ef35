#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nnd/stats.hpp"

using namespace nnd;

TEST_SUITE_BEGIN("stats");

TEST_CASE("sample_mean basics") {
    CHECK(sample_mean(std::vector<double>{1, 2, 3}) == 2.0);
    CHECK(sample_mean(std::vector<double>{0, 0, 0, 0}) == 0.0);
    CHECK_THROWS_AS(sample_mean(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("sample_mean of many Gaussian draws concentrates") {
    // 1e5 iid N(0.3, 1) draws; the mean lands within 3 standard errors.
    Rng rng{SeedSpec{42, 0}};
    const int n = 100000;
    std::vector<double> v(n);
    for (double& x : v) x = 0.3 + rng.normal();
    CHECK(std::abs(sample_mean(v) - 0.3) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("sample_variance uses the population divisor") {
    CHECK(sample_variance(std::vector<double>{1, 1, 1}) == 0.0);
    CHECK(sample_variance(std::vector<double>{-1, 1}) == 1.0);
    CHECK(sample_variance(std::vector<double>{1, 2, 3}) == 2.0 / 3.0);
    CHECK_THROWS_AS(sample_variance(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("sample_variance is translation invariant") {
    Rng rng{SeedSpec{11, 0}};
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> w(50);
        for (double& x : w) x = rng.uniform(-2.0, 2.0);
        const double c = rng.uniform(-10.0, 10.0);
        std::vector<double> shifted = w;
        for (double& x : shifted) x += c;
        const double a = sample_variance(w);
        const double b = sample_variance(shifted);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(a, b));
    }
}

TEST_CASE("wnr conversion") {
    CHECK(wnr_to_noise_var(0.0, 1.0) == 1.0);
    CHECK(wnr_to_noise_var(-7.0, 1.0) == doctest::Approx(std::pow(10.0, 0.7)).epsilon(1e-14));
    CHECK(wnr_to_noise_var(10.0, 2.0) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK_THROWS_AS(wnr_to_noise_var(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(wnr_to_noise_var(0.0, -1.0), std::invalid_argument);
}

TEST_CASE("wnr round trip") {
    for (double eta : {-20.0, -7.0, -1.5, 0.0, 3.0, 12.5, 40.0}) {
        for (double var_w : {0.25, 1.0, 2.25, 17.0}) {
            const double var_z = wnr_to_noise_var(eta, var_w);
            CHECK(std::abs(wnr_from_vars(var_w, var_z) - eta) < 1e-9);
        }
    }
}

TEST_CASE("add_awgn with zero variance is the identity") {
    WeightVector w;
    w.values = {0.5, -0.25, 1.0, 0.0};
    const WeightVector r = add_awgn(w, 0.0, SeedSpec{1, 2});
    CHECK(r.values == w.values);
}

TEST_CASE("add_awgn never touches masked coordinates") {
    WeightVector w;
    w.values = {0.5, -0.25, 1.0, 0.125};
    w.mask = {0, 1, 0, 1};
    const WeightVector r = add_awgn(w, 100.0, SeedSpec{9, 0});
    CHECK(r.values[1] == w.values[1]);
    CHECK(r.values[3] == w.values[3]);
    CHECK(r.values[0] != w.values[0]);
    CHECK(r.values[2] != w.values[2]);
    CHECK(r.mask == w.mask);
}

TEST_CASE("add_awgn is reproducible and calibrated") {
    WeightVector w;
    w.values.assign(100000, 0.0);
    const WeightVector a = add_awgn(w, 1.0, SeedSpec{4, 0});
    const WeightVector b = add_awgn(w, 1.0, SeedSpec{4, 0});
    CHECK(a.values == b.values);
    const double var = sample_variance(a.values);
    CHECK(var > 0.97);
    CHECK(var < 1.03);
    CHECK_THROWS_AS(add_awgn(w, -0.5, SeedSpec{4, 0}), std::invalid_argument);
}

TEST_CASE("variance of noisy vectors is additive on average") {
    // Fresh w, z each repetition; mean measured variance within 1% of the sum.
    const double var_w = 2.0, var_z = 0.5;
    const int d = 10000, reps = 100;
    double total = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
        Rng rng{SeedSpec{1000, static_cast<std::uint64_t>(rep)}};
        WeightVector w;
        w.values.resize(d);
        for (double& x : w.values) x = 0.1 + std::sqrt(var_w) * rng.normal();
        const WeightVector r =
            add_awgn(w, var_z, SeedSpec{2000, static_cast<std::uint64_t>(rep)});
        total += sample_variance(r.values);
    }
    const double mean_var = total / reps;
    CHECK(std::abs(mean_var - (var_w + var_z)) < 0.01 * (var_w + var_z));
}

TEST_CASE("estimate_prior_stats subtracts the noise variance") {
    WeightVector r;
    r.values = {-std::sqrt(3.25), std::sqrt(3.25)}; // population variance 3.25
    const PriorStats p = estimate_prior_stats(r, 1.0);
    CHECK(p.mu_w == 0.0);
    CHECK(p.var_w == doctest::Approx(2.25).epsilon(1e-12));
    CHECK(p.var_z == 1.0);
}

TEST_CASE("estimate_prior_stats with zero noise returns the raw variance") {
    WeightVector r;
    r.values = {0.0, 1.0, 2.0, 5.0};
    const PriorStats p = estimate_prior_stats(r, 0.0);
    CHECK(p.var_w == sample_variance(r.values));
}

TEST_CASE("estimate_prior_stats floors instead of going negative") {
    WeightVector r;
    r.values = {-std::sqrt(0.5), std::sqrt(0.5)}; // population variance 0.5
    const PriorStats p = estimate_prior_stats(r, 1.0, 1e-6);
    CHECK(p.var_w == doctest::Approx(5e-7).epsilon(1e-9));
    CHECK(p.var_w > 0.0);
    CHECK_THROWS_AS(estimate_prior_stats(WeightVector{}, 1.0), std::invalid_argument);
}

TEST_CASE("WeightVector::validate rejects bad input") {
    WeightVector w;
    w.values = {1.0, 2.0};
    CHECK_NOTHROW(w.validate());
    w.mask = {1};
    CHECK_THROWS_AS(w.validate(), std::invalid_argument);
    w.mask = {1, 0};
    CHECK_NOTHROW(w.validate());
    w.values[0] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(w.validate(), std::invalid_argument);
}

TEST_SUITE_END();
