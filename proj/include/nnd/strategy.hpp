// Server-side denoising strategies shared by the federated simulation and
// the noisy-inference harness.

#pragma once

#include <optional>
#include <string>

#include "nnd/denoiser.hpp"
#include "nnd/grid_search.hpp"

namespace nnd {

enum class StrategyKind {
    ml,            // identity, lambda' = 1, beta = 0
    mmse,          // lambda' = 0, beta = 0
    mmse_pb_grid,  // per-application grid search on a validation scorer
    mmse_pb_fixed, // caller-supplied (lambda', beta)
};

struct DenoiseStrategy {
    StrategyKind kind = StrategyKind::ml;
    std::optional<GridSpec> grid; // nullopt: default_grid(var_w) at use time
    double lambda_prime = 1.0;    // fixed variant only
    double beta = 0.0;

    static DenoiseStrategy make_ml() { return {}; }
    static DenoiseStrategy make_mmse() { return {StrategyKind::mmse, {}, 0.0, 0.0}; }
    static DenoiseStrategy make_grid(std::optional<GridSpec> g = {}) {
        return {StrategyKind::mmse_pb_grid, g, 0.0, 0.0};
    }
    static DenoiseStrategy make_fixed(double lambda_prime, double beta) {
        return {StrategyKind::mmse_pb_fixed, {}, lambda_prime, beta};
    }
};

std::string strategy_name(const DenoiseStrategy& s);

struct TemperatureChoice {
    double lambda_prime = 1.0;
    double beta = 0.0;
    // Pass the observation through untouched. Set for the ML strategy and for
    // infeasibility fallbacks; the factor map at (1, 0) is only the identity
    // when mu_w = 0, so ML cannot be expressed through it in general.
    bool identity = true;
    bool fell_back_to_ml = false;
};

// Resolves a strategy to concrete temperatures against measured statistics.
// Grid strategies call `validation_score` (required for them, ignored
// otherwise). When the requested parameters are infeasible for p, either
// falls back to the identity or throws, per `fallback_to_ml`.
TemperatureChoice choose_temperature(const DenoiseStrategy& strategy, const PriorStats& p,
                                     const ScoreFn& validation_score, bool fallback_to_ml);

// Applies the resolved choice: the observation itself for identity choices,
// otherwise the affine factor map for (lambda', beta) under p.
WeightVector strategy_denoise(const WeightVector& r, const TemperatureChoice& choice,
                              const PriorStats& p);

} // namespace nnd
