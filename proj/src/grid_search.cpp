#include "nnd/grid_search.hpp"

#include <cmath>
#include <stdexcept>

#include "nnd/csv.hpp"
#include "nnd/denoiser.hpp"

namespace nnd {

namespace {

// Inclusive axis point count; tolerant of one part in 1e9 step jitter so
// ranges like [0.70, 1.30] / 0.01 keep their endpoint.
std::size_t axis_count(double lo, double hi, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("grid_search: step must be > 0");
    if (hi < lo) throw std::invalid_argument("grid_search: min > max");
    return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

struct TieKey {
    double dist_to_ml; // |lambda' - 1|
    double abs_beta;
    double lambda_prime;
    double beta;

    bool operator<(const TieKey& o) const {
        if (dist_to_ml != o.dist_to_ml) return dist_to_ml < o.dist_to_ml;
        if (abs_beta != o.abs_beta) return abs_beta < o.abs_beta;
        if (lambda_prime != o.lambda_prime) return lambda_prime < o.lambda_prime;
        return beta < o.beta;
    }
};

} // namespace

GridSpec default_grid(double var_w) {
    if (!(var_w > 0.0)) throw std::invalid_argument("default_grid: var_w must be > 0");
    const double inv_sigma_w = 1.0 / std::sqrt(var_w);
    GridSpec g;
    g.lambda_prime_min = 0.70;
    g.lambda_prime_max = 1.30;
    g.lambda_prime_step = 0.01;
    g.beta_min = -0.5 * inv_sigma_w;
    g.beta_max = 0.5 * inv_sigma_w;
    g.beta_step = 0.05 * inv_sigma_w;
    return g;
}

SearchResult grid_search(const ScoreFn& score, const GridSpec& grid, const PriorStats& p) {
    if (!score) throw std::invalid_argument("grid_search: null score function");
    if (grid.lambda_prime_min < 0.0)
        throw std::invalid_argument("grid_search: lambda' grid must be >= 0");
    const std::size_t n_lambda =
        axis_count(grid.lambda_prime_min, grid.lambda_prime_max, grid.lambda_prime_step);
    const std::size_t n_beta = axis_count(grid.beta_min, grid.beta_max, grid.beta_step);

    SearchResult result;
    result.surface.reserve(n_lambda * n_beta);
    bool found = false;
    TieKey best_key{};
    for (std::size_t i = 0; i < n_lambda; ++i) {
        const double lp = grid.lambda_prime_min + static_cast<double>(i) * grid.lambda_prime_step;
        const bool feasible = lambda_prime_feasible(lp, p);
        for (std::size_t j = 0; j < n_beta; ++j) {
            const double beta = grid.beta_min + static_cast<double>(j) * grid.beta_step;
            GridCell cell;
            cell.lambda_prime = lp;
            cell.beta = beta;
            cell.feasible = feasible;
            if (feasible) {
                cell.score = score(lp, beta);
                const TieKey key{std::abs(lp - 1.0), std::abs(beta), lp, beta};
                if (!found || cell.score > result.best_score ||
                    (cell.score == result.best_score && key < best_key)) {
                    found = true;
                    result.best_lambda_prime = lp;
                    result.best_beta = beta;
                    result.best_score = cell.score;
                    best_key = key;
                }
            }
            result.surface.push_back(cell);
        }
    }
    if (!found) throw std::runtime_error("grid_search: no feasible grid cell");
    return result;
}

std::string surface_to_csv(const SearchResult& result) {
    CsvBuilder csv;
    csv.raw_line("lambda_prime,beta,score,feasible");
    for (const auto& cell : result.surface)
        csv.row({fmt_double(cell.lambda_prime), fmt_double(cell.beta),
                 cell.feasible ? fmt_double(cell.score) : "",
                 cell.feasible ? "true" : "false"});
    return csv.str();
}

} // namespace nnd
