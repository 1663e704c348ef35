#include "nnd/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nnd {

void WeightVector::validate() const {
    if (values.empty()) throw std::invalid_argument("WeightVector: empty");
    if (!mask.empty() && mask.size() != values.size())
        throw std::invalid_argument("WeightVector: mask length " + std::to_string(mask.size()) +
                                    " does not match " + std::to_string(values.size()) + " values");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("WeightVector: non-finite value");
}

double sample_mean(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("sample_mean: empty vector");
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("sample_variance: empty vector");
    const double mu = sample_mean(v);
    double sum_sq = 0.0;
    for (double x : v) {
        const double d = x - mu;
        sum_sq += d * d;
    }
    return sum_sq / static_cast<double>(v.size());
}

double wnr_to_noise_var(double eta_db, double var_w) {
    if (!(var_w > 0.0)) throw std::invalid_argument("wnr_to_noise_var: var_w must be > 0");
    return var_w * std::pow(10.0, -eta_db / 10.0);
}

double wnr_from_vars(double var_w, double var_z) {
    if (!(var_w > 0.0) || !(var_z > 0.0))
        throw std::invalid_argument("wnr_from_vars: variances must be > 0");
    return 10.0 * std::log10(var_w / var_z);
}

WeightVector add_awgn(const WeightVector& w, double var_z, SeedSpec seed) {
    if (var_z < 0.0) throw std::invalid_argument("add_awgn: var_z must be >= 0");
    if (!w.mask.empty() && w.mask.size() != w.values.size())
        throw std::invalid_argument("add_awgn: mask length mismatch");
    WeightVector r = w;
    if (var_z == 0.0) return r;
    const double sigma = std::sqrt(var_z);
    Rng rng(seed);
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        if (r.masked(i)) continue; // masked entries consume no draws
        r.values[i] += sigma * rng.normal();
    }
    return r;
}

PriorStats estimate_prior_stats(const WeightVector& r, double var_z, double floor_frac) {
    if (r.values.empty()) throw std::invalid_argument("estimate_prior_stats: empty vector");
    if (var_z < 0.0) throw std::invalid_argument("estimate_prior_stats: var_z must be >= 0");
    if (!(floor_frac > 0.0)) throw std::invalid_argument("estimate_prior_stats: floor must be > 0");
    PriorStats p;
    p.mu_w = sample_mean(r.values);
    const double var_r = sample_variance(r.values);
    p.var_w = std::max(var_r - var_z, floor_frac * var_r);
    p.var_z = var_z;
    return p;
}

} // namespace nnd
