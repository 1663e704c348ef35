// Weight estimators/denoisers: ML (identity), MMSE/MAP shrinkage, and the
// compensated MMSE_pb family, all reducible to an affine map theta*r + rho.

#pragma once

#include "nnd/stats.hpp"

namespace nnd {

// Compensation temperatures. lambda carries units 1/weight^2, beta 1/weight.
struct TemperatureParams {
    double lambda = 0.0;
    double beta = 0.0;
};

// Dimensionless form lambda' = 2 var_w lambda. lambda' = 1 is the exact
// compensation point (reduces to ML), lambda' = 0 the zero compensation point
// (reduces to MMSE).
struct NormalizedTemperature {
    double lambda_prime = 0.0;
    double beta = 0.0;
};

// Multiplicative/additive factors of the induced affine map.
struct LinearDenoiser {
    double theta = 0.0;
    double rho = 0.0;
};

double normalize_lambda(double lambda, double var_w);    // lambda' = 2 var_w lambda
double denormalize_lambda(double lambda_prime, double var_w);

// Exclusive upper bound on feasible lambda': 1 + var_w/var_z (infinite when
// var_z == 0). The compensated posterior variance is positive strictly below
// the bound.
double lambda_prime_bound(const PriorStats& p);
bool lambda_prime_feasible(double lambda_prime, const PriorStats& p);

// theta = var_w / (var_w + (1 - lambda') var_z)
// rho   = (var_z mu_w + var_w var_z beta) / (var_w + (1 - lambda') var_z)
//
// beta never enters theta. Throws std::invalid_argument outside
// 0 <= lambda' < 1 + var_w/var_z (the feasible boundary is a hard error, not
// a clamp, so searches see it).
LinearDenoiser denoise_factors(const NormalizedTemperature& t, const PriorStats& p);
LinearDenoiser denoise_factors(const TemperatureParams& t, const PriorStats& p);

// ML estimate: the observation itself.
WeightVector ml_estimate(const WeightVector& r);

// MMSE shrinkage toward the prior mean (also the MAP estimate under the
// Gaussian prior). Equals the lambda' = 0, beta = 0 denoiser.
WeightVector mmse_estimate(const WeightVector& r, const PriorStats& p);

// theta*r + rho elementwise; masked coordinates copied through bit for bit.
// The exact identity (theta == 1, rho == 0) returns the input unchanged.
WeightVector apply_linear(const WeightVector& r, const LinearDenoiser& f);

WeightVector mmse_pb_denoise(const WeightVector& r, const NormalizedTemperature& t,
                             const PriorStats& p);
WeightVector mmse_pb_denoise(const WeightVector& r, const TemperatureParams& t,
                             const PriorStats& p);

} // namespace nnd
