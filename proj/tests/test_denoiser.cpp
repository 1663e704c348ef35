#include <doctest.h>

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "nnd/denoiser.hpp"

using namespace nnd;

namespace {

WeightVector make_random_weights(std::size_t n, SeedSpec seed) {
    Rng rng{seed};
    WeightVector w;
    w.values.resize(n);
    for (double& x : w.values) x = rng.uniform(-3.0, 3.0);
    return w;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::memcmp(&a[i], &b[i], sizeof(double)) != 0) return false;
    return true;
}

} // namespace

TEST_SUITE_BEGIN("denoiser");

TEST_CASE("ml_estimate is the identity") {
    WeightVector r;
    r.values = {0.5, -0.2};
    CHECK(bitwise_equal(ml_estimate(r).values, r.values));
    WeightVector zero;
    zero.values = {0.0, 0.0, 0.0};
    CHECK(bitwise_equal(ml_estimate(zero).values, zero.values));
    const WeightVector rnd = make_random_weights(64, SeedSpec{5, 0});
    CHECK(bitwise_equal(ml_estimate(rnd).values, rnd.values));
}

TEST_CASE("mmse_estimate limits") {
    WeightVector r;
    r.values = {2.0, -4.0};
    SUBCASE("noiseless prior returns the observation") {
        const WeightVector out = mmse_estimate(r, PriorStats{0.3, 1.7, 0.0});
        CHECK(out.values[0] == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(out.values[1] == doctest::Approx(-4.0).epsilon(1e-15));
    }
    SUBCASE("degenerate prior collapses to the mean") {
        const WeightVector out = mmse_estimate(r, PriorStats{0.7, 0.0, 1.0});
        CHECK(out.values[0] == 0.7);
        CHECK(out.values[1] == 0.7);
    }
    SUBCASE("equal variances halve the observation") {
        const WeightVector out = mmse_estimate(r, PriorStats{0.0, 1.0, 1.0});
        CHECK(out.values[0] == 1.0);
        CHECK(out.values[1] == -2.0);
    }
    SUBCASE("both variances zero is an error") {
        CHECK_THROWS_AS(mmse_estimate(r, PriorStats{0.0, 0.0, 0.0}), std::invalid_argument);
    }
}

TEST_CASE("denoise_factors special points") {
    SUBCASE("exact compensation gives the identity map") {
        // var_w = 1 makes lambda = 1/(2 var_w) exact in floating point.
        const LinearDenoiser f =
            denoise_factors(TemperatureParams{0.5, 0.0}, PriorStats{0.0, 1.0, 0.4});
        CHECK(f.theta == 1.0);
        CHECK(f.rho == 0.0);
    }
    SUBCASE("normalized form is exact at lambda' = 1 for any variance") {
        const LinearDenoiser f =
            denoise_factors(NormalizedTemperature{1.0, 0.0}, PriorStats{0.0, 2.25, 1.0});
        CHECK(f.theta == 1.0);
        CHECK(f.rho == 0.0);
    }
    SUBCASE("zero compensation reproduces plain shrinkage") {
        const PriorStats p{0.4, 3.0, 1.0};
        const LinearDenoiser f = denoise_factors(TemperatureParams{0.0, 0.0}, p);
        CHECK(f.theta == doctest::Approx(3.0 / 4.0).epsilon(1e-15));
        CHECK(f.rho == doctest::Approx(0.4 / 4.0).epsilon(1e-15));
    }
    SUBCASE("optimal tanh-study temperature maps to theta* = sqrt(1/2)") {
        const LinearDenoiser f =
            denoise_factors(TemperatureParams{0.08579, 0.0}, PriorStats{0.0, 1.0, 0.5});
        CHECK(f.theta == doctest::Approx(std::sqrt(0.5)).epsilon(1e-4));
    }
}

TEST_CASE("denoise_factors feasibility") {
    const PriorStats p{0.0, 2.0, 0.5};
    const double bound = lambda_prime_bound(p); // 1 + var_w/var_z = 5
    CHECK(bound == 5.0);
    CHECK_THROWS_AS(denoise_factors(NormalizedTemperature{5.0, 0.0}, p),
                    std::invalid_argument);
    CHECK_THROWS_AS(denoise_factors(NormalizedTemperature{-0.01, 0.0}, p),
                    std::invalid_argument);
    CHECK_NOTHROW(denoise_factors(NormalizedTemperature{4.999, 0.0}, p));

    // Random-statistics property: accepted lambda' always yields theta > 0
    // (equivalently a positive compensated posterior variance).
    Rng rng{SeedSpec{31, 0}};
    for (int rep = 0; rep < 200; ++rep) {
        const PriorStats q{0.0, rng.uniform(0.05, 4.0), rng.uniform(0.05, 4.0)};
        const double b = lambda_prime_bound(q);
        const double inside = rng.uniform(0.0, 1.0) * 0.999 * b;
        CHECK(denoise_factors(NormalizedTemperature{inside, 0.0}, q).theta > 0.0);
        const double outside = b * rng.uniform(1.0, 2.0);
        CHECK_THROWS_AS(denoise_factors(NormalizedTemperature{outside, 0.0}, q),
                        std::invalid_argument);
    }
}

TEST_CASE("theta is strictly increasing in lambda") {
    const PriorStats p{0.0, 1.3, 0.7};
    const double bound = lambda_prime_bound(p);
    double prev = -1.0;
    for (int i = 0; i < 100; ++i) {
        const double lp = (static_cast<double>(i) / 100.0) * 0.999 * bound;
        const double theta = denoise_factors(NormalizedTemperature{lp, 0.0}, p).theta;
        CHECK(theta > prev);
        prev = theta;
    }
}

TEST_CASE("beta never changes theta") {
    const PriorStats p{0.2, 1.5, 0.9};
    for (double lp : {0.0, 0.3, 1.0, 1.7}) {
        const double t1 = denoise_factors(NormalizedTemperature{lp, -3.0}, p).theta;
        const double t2 = denoise_factors(NormalizedTemperature{lp, 12.0}, p).theta;
        CHECK(t1 == t2);
    }
}

TEST_CASE("mmse_pb_denoise reduction identities") {
    const WeightVector r = make_random_weights(128, SeedSpec{6, 0});
    SUBCASE("lambda' = 1, beta = 0, mu = 0 reproduces the observation bitwise") {
        const WeightVector out =
            mmse_pb_denoise(r, NormalizedTemperature{1.0, 0.0}, PriorStats{0.0, 2.25, 1.0});
        CHECK(bitwise_equal(out.values, ml_estimate(r).values));
    }
    SUBCASE("lambda' = 0, beta = 0 reproduces plain shrinkage") {
        const PriorStats p{0.15, 1.1, 0.6};
        const WeightVector a = mmse_pb_denoise(r, NormalizedTemperature{0.0, 0.0}, p);
        const WeightVector b = mmse_estimate(r, p);
        CHECK(bitwise_equal(a.values, b.values));
    }
}

TEST_CASE("apply_linear is the expected affine map") {
    WeightVector r;
    r.values = {1.0, 2.0};
    const WeightVector out = apply_linear(r, LinearDenoiser{0.5, 0.1});
    CHECK(out.values[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(out.values[1] == doctest::Approx(1.1).epsilon(1e-15));
}

TEST_CASE("masked coordinates pass through every denoiser bitwise") {
    WeightVector r = make_random_weights(32, SeedSpec{7, 0});
    r.mask.assign(32, 0);
    for (std::size_t i = 0; i < r.mask.size(); i += 3) r.mask[i] = 1;
    const PriorStats p{0.5, 2.0, 1.0};
    const WeightVector a = mmse_pb_denoise(r, NormalizedTemperature{0.8, -0.4}, p);
    const WeightVector b = mmse_estimate(r, p);
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        if (r.mask[i]) {
            CHECK(a.values[i] == r.values[i]);
            CHECK(b.values[i] == r.values[i]);
        } else {
            CHECK(a.values[i] != r.values[i]);
        }
    }
}

TEST_CASE("lambda normalization round trip") {
    CHECK(normalize_lambda(0.5, 1.0) == 1.0);
    CHECK(normalize_lambda(0.0, 3.0) == 0.0);
    CHECK(denormalize_lambda(1.01, 2.0) == doctest::Approx(0.2525).epsilon(1e-15));
    for (double lambda : {0.0, 0.1, 0.37, 2.0}) {
        const double var_w = 1.7;
        CHECK(denormalize_lambda(normalize_lambda(lambda, var_w), var_w) ==
              doctest::Approx(lambda).epsilon(1e-15));
    }
    CHECK_THROWS_AS(normalize_lambda(0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(denormalize_lambda(0.1, -1.0), std::invalid_argument);
}

TEST_SUITE_END();
