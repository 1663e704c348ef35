#include "nnd/strategy.hpp"

#include <stdexcept>

namespace nnd {

std::string strategy_name(const DenoiseStrategy& s) {
    switch (s.kind) {
        case StrategyKind::ml: return "ml";
        case StrategyKind::mmse: return "mmse";
        case StrategyKind::mmse_pb_grid: return "grid";
        case StrategyKind::mmse_pb_fixed:
            return "fixed(" + std::to_string(s.lambda_prime) + "," + std::to_string(s.beta) +
                   ")";
    }
    return "?";
}

TemperatureChoice choose_temperature(const DenoiseStrategy& strategy, const PriorStats& p,
                                     const ScoreFn& validation_score, bool fallback_to_ml) {
    switch (strategy.kind) {
        case StrategyKind::ml:
            return {1.0, 0.0, true, false};
        case StrategyKind::mmse:
            return {0.0, 0.0, false, false};
        case StrategyKind::mmse_pb_fixed:
            if (lambda_prime_feasible(strategy.lambda_prime, p))
                return {strategy.lambda_prime, strategy.beta, false, false};
            if (fallback_to_ml) return {1.0, 0.0, true, true};
            throw std::invalid_argument("choose_temperature: fixed lambda' infeasible");
        case StrategyKind::mmse_pb_grid: {
            if (!validation_score)
                throw std::invalid_argument("choose_temperature: grid strategy needs a scorer");
            const GridSpec grid = strategy.grid ? *strategy.grid : default_grid(p.var_w);
            try {
                const SearchResult res = grid_search(validation_score, grid, p);
                return {res.best_lambda_prime, res.best_beta, false, false};
            } catch (const std::runtime_error&) {
                if (fallback_to_ml) return {1.0, 0.0, true, true};
                throw;
            }
        }
    }
    throw std::logic_error("choose_temperature: unknown strategy");
}

WeightVector strategy_denoise(const WeightVector& r, const TemperatureChoice& choice,
                              const PriorStats& p) {
    if (choice.identity) return r;
    return mmse_pb_denoise(r, NormalizedTemperature{choice.lambda_prime, choice.beta}, p);
}

} // namespace nnd
