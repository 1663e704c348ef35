// Exhaustive search over normalized temperature parameters (lambda', beta)
// against an arbitrary scoring function (higher is better).

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nnd/stats.hpp"

namespace nnd {

struct GridSpec {
    double lambda_prime_min = 0.70;
    double lambda_prime_max = 1.30;
    double lambda_prime_step = 0.01;
    double beta_min = -0.5;
    double beta_max = 0.5;
    double beta_step = 0.05;
};

// Default ranges; beta scales as 1/weight, so its axis is expressed in units
// of the weight scale sqrt(var_w).
GridSpec default_grid(double var_w);

struct GridCell {
    double lambda_prime = 0.0;
    double beta = 0.0;
    double score = 0.0; // unset for infeasible cells
    bool feasible = false;
};

struct SearchResult {
    double best_lambda_prime = 0.0;
    double best_beta = 0.0;
    double best_score = 0.0;
    // Row-major in lambda' then beta, one entry per grid cell.
    std::vector<GridCell> surface;
};

using ScoreFn = std::function<double(double lambda_prime, double beta)>;

// Evaluates every feasible cell (lambda' < 1 + var_w/var_z) and returns the
// argmax. Infeasible cells are recorded with feasible = false and never
// selected. Score ties break toward the ML point: smallest |lambda' - 1|,
// then smallest |beta|, then lexicographic (lambda', beta). Throws when the
// grid is empty of feasible cells.
SearchResult grid_search(const ScoreFn& score, const GridSpec& grid, const PriorStats& p);

// CSV rendering of the surface: header lambda_prime,beta,score,feasible, one
// row per cell in stored (row-major) order.
std::string surface_to_csv(const SearchResult& result);

} // namespace nnd
