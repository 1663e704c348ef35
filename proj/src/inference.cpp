#include "nnd/inference.hpp"

#include <cmath>
#include <stdexcept>

#include "nnd/csv.hpp"
#include "nnd/weight_io.hpp"

namespace nnd {

ScoreFn make_validation_score(const MlpModel& reference, const SyntheticDataset& data,
                              std::vector<int> example_indices, const WeightVector& r,
                              const PriorStats& p) {
    if (example_indices.empty())
        throw std::invalid_argument("make_validation_score: empty validation set");
    if (r.values.size() != param_count(reference.spec))
        throw std::invalid_argument("make_validation_score: weight count mismatch");
    return [&reference, &data, indices = std::move(example_indices), r, p](
               double lambda_prime, double beta) {
        MlpModel candidate = reference;
        candidate.params = mmse_pb_denoise(r, NormalizedTemperature{lambda_prime, beta}, p);
        return evaluate_on(candidate, data, indices);
    };
}

SweepResult run_inference_sweep(const MlpModel& clean, const SyntheticDataset& data,
                                const InferenceExperiment& exp) {
    if (exp.wnr_values_db.empty())
        throw std::invalid_argument("run_inference_sweep: empty WNR list");
    if (exp.repeats < 1) throw std::invalid_argument("run_inference_sweep: repeats < 1");
    if (exp.strategies.empty())
        throw std::invalid_argument("run_inference_sweep: no strategies");

    const double true_mu_w = sample_mean(clean.params.values);
    const double true_var_w = sample_variance(clean.params.values);
    if (!(true_var_w > 0.0))
        throw std::invalid_argument("run_inference_sweep: clean model has zero variance");

    // Validation subset for grid strategies, drawn once.
    std::vector<int> validation = data.indices_of(Split::validation);
    if (validation.size() > static_cast<std::size_t>(exp.kappa)) {
        Rng rng{substream(exp.seed, 0xa11)};
        for (std::size_t i = validation.size(); i-- > 1;)
            std::swap(validation[i], validation[rng.bounded(i + 1)]);
        validation.resize(static_cast<std::size_t>(exp.kappa));
    }

    const std::vector<int> test = data.indices_of(Split::test);

    SweepResult result;
    result.clean_accuracy = evaluate_on(clean, data, test);
    result.cells.reserve(exp.wnr_values_db.size() * exp.strategies.size());

    // Cached temperatures per (strategy, repeat): with reuse enabled, each
    // repeat searches at the first WNR and reuses its result afterwards.
    std::vector<std::optional<TemperatureChoice>> cached(
        exp.strategies.size() * static_cast<std::size_t>(exp.repeats));

    for (std::size_t wi = 0; wi < exp.wnr_values_db.size(); ++wi) {
        const double wnr = exp.wnr_values_db[wi];
        const double var_z = wnr_to_noise_var(wnr, true_var_w);
        std::vector<SweepCell> cells(exp.strategies.size());
        for (std::size_t si = 0; si < exp.strategies.size(); ++si) {
            cells[si].wnr_db = wnr;
            cells[si].strategy = strategy_name(exp.strategies[si]);
            cells[si].accuracies.reserve(static_cast<std::size_t>(exp.repeats));
        }
        for (int rep = 0; rep < exp.repeats; ++rep) {
            const SeedSpec noise_seed = substream(substream(exp.seed, 0x100 + wi), rep);
            const WeightVector noisy = add_awgn(clean.params, var_z, noise_seed);
            PriorStats stats;
            if (exp.use_true_stats) {
                stats = PriorStats{true_mu_w, true_var_w, var_z};
            } else {
                stats = estimate_prior_stats(noisy, var_z);
            }
            for (std::size_t si = 0; si < exp.strategies.size(); ++si) {
                const DenoiseStrategy& strategy = exp.strategies[si];
                const std::size_t slot =
                    si * static_cast<std::size_t>(exp.repeats) + static_cast<std::size_t>(rep);
                TemperatureChoice choice;
                if (exp.reuse_params_across_wnrs && cached[slot]) {
                    choice = *cached[slot];
                    if (!choice.identity && !lambda_prime_feasible(choice.lambda_prime, stats))
                        choice = TemperatureChoice{1.0, 0.0, true, true};
                } else {
                    ScoreFn scorer;
                    if (strategy.kind == StrategyKind::mmse_pb_grid)
                        scorer = make_validation_score(clean, data, validation, noisy, stats);
                    choice = choose_temperature(strategy, stats, scorer,
                                                /*fallback_to_ml=*/false);
                    if (exp.reuse_params_across_wnrs) cached[slot] = choice;
                }
                MlpModel denoised = clean;
                denoised.params = strategy_denoise(noisy, choice, stats);
                cells[si].accuracies.push_back(evaluate_on(denoised, data, test));
            }
        }
        for (auto& cell : cells) {
            cell.mean_accuracy = sample_mean(cell.accuracies);
            cell.std_accuracy = std::sqrt(sample_variance(cell.accuracies));
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

DenoiseFileReport apply_denoiser_file(const std::filesystem::path& input,
                                      const std::filesystem::path& output,
                                      const DenoiseStrategy& strategy,
                                      std::optional<double> var_z,
                                      std::optional<double> wnr_db,
                                      const std::optional<std::filesystem::path>& mask_path) {
    if (strategy.kind == StrategyKind::mmse_pb_grid)
        throw std::invalid_argument("apply_denoiser_file: grid strategy needs validation data");
    if (var_z.has_value() == wnr_db.has_value())
        throw std::invalid_argument("apply_denoiser_file: give exactly one of var_z / wnr_db");

    WeightVector r;
    r.values = read_weight_file(input);
    if (mask_path) {
        r.mask = read_mask_file(*mask_path);
        if (r.mask.size() != r.values.size())
            throw std::invalid_argument("apply_denoiser_file: mask length " +
                                        std::to_string(r.mask.size()) + " != weight count " +
                                        std::to_string(r.values.size()));
    }

    double noise_var = 0.0;
    if (var_z) {
        if (*var_z < 0.0) throw std::invalid_argument("apply_denoiser_file: var_z < 0");
        noise_var = *var_z;
    } else {
        const double var_r = sample_variance(r.values);
        const double g = std::pow(10.0, -*wnr_db / 10.0);
        noise_var = var_r * g / (1.0 + g);
    }
    const PriorStats stats = estimate_prior_stats(r, noise_var);
    const TemperatureChoice choice =
        choose_temperature(strategy, stats, nullptr, /*fallback_to_ml=*/false);
    const LinearDenoiser factors =
        choice.identity ? LinearDenoiser{1.0, 0.0}
                        : denoise_factors(
                              NormalizedTemperature{choice.lambda_prime, choice.beta}, stats);
    const WeightVector denoised = strategy_denoise(r, choice, stats);
    write_weight_file(output, denoised.values);

    DenoiseFileReport report;
    report.strategy = strategy_name(strategy);
    report.theta = factors.theta;
    report.rho = factors.rho;
    report.lambda_prime = choice.lambda_prime;
    report.beta = choice.beta;
    report.mu_w_est = stats.mu_w;
    report.var_w_est = stats.var_w;
    report.var_z = stats.var_z;

    std::string meta;
    meta += "strategy = " + report.strategy + "\n";
    meta += "theta = " + fmt_double(report.theta) + "\n";
    meta += "rho = " + fmt_double(report.rho) + "\n";
    meta += "lambda_prime = " + fmt_double(report.lambda_prime) + "\n";
    meta += "beta = " + fmt_double(report.beta) + "\n";
    meta += "mu_w_est = " + fmt_double(report.mu_w_est) + "\n";
    meta += "var_w_est = " + fmt_double(report.var_w_est) + "\n";
    meta += "var_z = " + fmt_double(report.var_z) + "\n";
    write_text_atomic(output.string() + ".meta", meta);
    return report;
}

} // namespace nnd
