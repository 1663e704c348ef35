#include "nnd/denoiser.hpp"

#include <stdexcept>
#include <string>

namespace nnd {

double normalize_lambda(double lambda, double var_w) {
    if (!(var_w > 0.0)) throw std::invalid_argument("normalize_lambda: var_w must be > 0");
    return 2.0 * var_w * lambda;
}

double denormalize_lambda(double lambda_prime, double var_w) {
    if (!(var_w > 0.0)) throw std::invalid_argument("denormalize_lambda: var_w must be > 0");
    return lambda_prime / (2.0 * var_w);
}

double lambda_prime_bound(const PriorStats& p) {
    return 1.0 + p.var_w / p.var_z; // +inf when var_z == 0
}

bool lambda_prime_feasible(double lambda_prime, const PriorStats& p) {
    return lambda_prime >= 0.0 && lambda_prime < lambda_prime_bound(p);
}

LinearDenoiser denoise_factors(const NormalizedTemperature& t, const PriorStats& p) {
    if (p.var_w < 0.0 || p.var_z < 0.0)
        throw std::invalid_argument("denoise_factors: negative variance");
    if (p.var_w + p.var_z <= 0.0)
        throw std::invalid_argument("denoise_factors: var_w + var_z must be > 0");
    if (t.lambda_prime < 0.0)
        throw std::invalid_argument("denoise_factors: lambda' must be >= 0");
    if (!(t.lambda_prime < lambda_prime_bound(p)))
        throw std::invalid_argument("denoise_factors: lambda' = " + std::to_string(t.lambda_prime) +
                                    " outside feasible bound " + std::to_string(lambda_prime_bound(p)));
    const double denom = p.var_w + (1.0 - t.lambda_prime) * p.var_z;
    return LinearDenoiser{p.var_w / denom, (p.var_z * p.mu_w + p.var_w * p.var_z * t.beta) / denom};
}

LinearDenoiser denoise_factors(const TemperatureParams& t, const PriorStats& p) {
    return denoise_factors(NormalizedTemperature{2.0 * p.var_w * t.lambda, t.beta}, p);
}

WeightVector ml_estimate(const WeightVector& r) {
    return r;
}

WeightVector mmse_estimate(const WeightVector& r, const PriorStats& p) {
    return mmse_pb_denoise(r, NormalizedTemperature{0.0, 0.0}, p);
}

WeightVector apply_linear(const WeightVector& r, const LinearDenoiser& f) {
    WeightVector out = r;
    if (f.theta == 1.0 && f.rho == 0.0) return out; // exact identity, keep bits
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        if (out.masked(i)) continue;
        out.values[i] = f.theta * r.values[i] + f.rho;
    }
    return out;
}

WeightVector mmse_pb_denoise(const WeightVector& r, const NormalizedTemperature& t,
                             const PriorStats& p) {
    return apply_linear(r, denoise_factors(t, p));
}

WeightVector mmse_pb_denoise(const WeightVector& r, const TemperatureParams& t,
                             const PriorStats& p) {
    return apply_linear(r, denoise_factors(t, p));
}

} // namespace nnd
