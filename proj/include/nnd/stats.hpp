// Sample statistics, WNR conversion, and seeded AWGN injection.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nnd/rng.hpp"

namespace nnd {

// Flat parameter vector with an optional noise-free mask. A mask entry of 1
// marks a coordinate that is never perturbed by the channel and never
// rewritten by a denoiser.
struct WeightVector {
    std::vector<double> values;
    std::vector<std::uint8_t> mask; // empty, or exactly one byte per value

    std::size_t size() const noexcept { return values.size(); }
    bool masked(std::size_t i) const noexcept { return !mask.empty() && mask[i] != 0; }

    // Throws std::invalid_argument on non-finite values or a mask length
    // mismatch.
    void validate() const;
};

// Gaussian prior of the weights plus the channel noise variance.
struct PriorStats {
    double mu_w = 0.0;
    double var_w = 0.0;
    double var_z = 0.0;
};

double sample_mean(std::span<const double> v);

// Population variance, divisor n (not n-1). Summation runs in index order so
// repeated calls are bitwise identical.
double sample_variance(std::span<const double> v);

// Noise variance from a weight-variance-to-noise ratio in dB:
// var_z = var_w * 10^(-eta/10). Requires var_w > 0.
double wnr_to_noise_var(double eta_db, double var_w);

// eta = 10 log10(var_w / var_z).
double wnr_from_vars(double var_w, double var_z);

// r = w + z with z iid N(0, var_z); masked coordinates pass through bit for
// bit. Deterministic given the seed. var_z = 0 returns the input unchanged.
WeightVector add_awgn(const WeightVector& w, double var_z, SeedSpec seed);

// Receiver-side prior estimate from an observed vector: mu_w = mean(r),
// var_w = var(r) - var_z floored at floor_frac * var(r), so downstream
// denoisers stay usable when the measurement happens to be noisier than the
// signal.
inline constexpr double kVarianceFloorFraction = 1e-6;

PriorStats estimate_prior_stats(const WeightVector& r, double var_z,
                                double floor_frac = kVarianceFloorFraction);

} // namespace nnd
