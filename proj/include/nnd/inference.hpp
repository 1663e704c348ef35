// Noisy-inference harness: perturb a trained model at given WNRs, denoise
// with each strategy, and report test-accuracy statistics over repeats.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nnd/feel.hpp"
#include "nnd/mlp.hpp"
#include "nnd/strategy.hpp"

namespace nnd {

struct InferenceExperiment {
    std::vector<double> wnr_values_db;
    int repeats = 10;
    std::vector<DenoiseStrategy> strategies;
    int kappa = 40; // validation subset size for grid strategies
    SeedSpec seed;
    bool use_true_stats = false;
    // Reuse the (lambda', beta) found at the first WNR for all later WNRs
    // instead of searching per WNR.
    bool reuse_params_across_wnrs = false;
};

struct SweepCell {
    double wnr_db = 0.0;
    std::string strategy;
    std::vector<double> accuracies; // one per repeat
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0; // population std over the repeats
};

struct SweepResult {
    double clean_accuracy = 0.0;
    std::vector<SweepCell> cells; // wnr-major, then strategy order
};

// Denoise-then-score closure over (lambda', beta): loads theta*r + rho into a
// model shaped like `reference` and returns accuracy on the given examples.
// Throws if r does not match the model's parameter count or the example list
// is empty.
ScoreFn make_validation_score(const MlpModel& reference, const SyntheticDataset& data,
                              std::vector<int> example_indices, const WeightVector& r,
                              const PriorStats& p);

// For every (wnr, repeat): calibrate var_z against the clean model's sample
// variance, draw one noisy observation (mask honored), then denoise and
// evaluate each strategy on the same observation. Deterministic given the
// seed.
SweepResult run_inference_sweep(const MlpModel& clean, const SyntheticDataset& data,
                                const InferenceExperiment& exp);

struct DenoiseFileReport {
    std::string strategy;
    double theta = 1.0;
    double rho = 0.0;
    double lambda_prime = 1.0;
    double beta = 0.0;
    double mu_w_est = 0.0;
    double var_w_est = 0.0;
    double var_z = 0.0;
};

// Batch denoiser over weight files. Exactly one of var_z / wnr_db must be
// given; with wnr_db, var_z is inferred from the observed sample variance
// (var_r = var_w (1 + 10^(-eta/10))). Writes the denoised weight file plus a
// key=value sidecar at <output>.meta. Grid strategies are not valid here.
DenoiseFileReport apply_denoiser_file(const std::filesystem::path& input,
                                      const std::filesystem::path& output,
                                      const DenoiseStrategy& strategy,
                                      std::optional<double> var_z,
                                      std::optional<double> wnr_db,
                                      const std::optional<std::filesystem::path>& mask_path);

} // namespace nnd
