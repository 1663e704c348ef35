// Federated edge learning with over-the-air aggregation. Each round: the
// server broadcasts the global model, sampled devices train locally, the
// channel delivers the sum of their updates plus one AWGN vector, and the
// server denoises the sum before applying the averaged update.

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "nnd/mlp.hpp"
#include "nnd/strategy.hpp"

namespace nnd {

// Non-iid assignment: a random_fraction share of the training split is dealt
// out uniformly; the rest is sorted by label and cut into
// n_devices * shards_per_device equal shards.
struct PartitionSpec {
    double random_fraction = 0.8;
    int shards_per_device = 1;
};

struct FeelConfig {
    int n_devices = 8;
    int m_active = 4;
    int local_epochs = 5;
    int rounds = 25;
    double wnr_db = 0.0;
    DenoiseStrategy strategy;
    PartitionSpec partition;
    MlpSpec model;
    double learning_rate = 0.05;
    int batch_size = 32;
    int kappa = 40; // validation subset size for grid strategies
    SeedSpec seed;
    // Per-round noise calibration: var_z = var(sum of updates) * 10^(-wnr/10).
    // When false, the variance computed in round 0 is reused for every round.
    bool noise_tracking = true;
    // Denoiser statistics: estimated from the received vector (default) or
    // taken from the transmitted sum.
    bool use_true_stats = false;
};

struct RoundRecord {
    int round = 0;
    double lambda_prime = 1.0;
    double beta = 0.0;
    double sigma2_r = 0.0;     // measured variance of the received vector
    double sigma2_w_est = 0.0; // prior variance handed to the denoiser
    double sigma2_z = 0.0;     // channel noise variance used this round
    double test_accuracy = 0.0;
    bool fell_back_to_ml = false;
};

// Device index lists over the training split. Throws when the sorted portion
// does not divide into n_devices * shards_per_device shards.
std::vector<std::vector<int>> partition_dataset(const SyntheticDataset& data,
                                                const PartitionSpec& spec, int n_devices,
                                                SeedSpec seed);

// Test hook: called once per round with the exact update sum, the single
// noise vector, and the received vector (received = sum + noise).
using RoundObserver = std::function<void(int round, std::span<const double> true_sum,
                                         std::span<const double> noise,
                                         std::span<const double> received)>;

struct FeelRoundResult {
    MlpModel model;
    RoundRecord record;
};

// One aggregation round. `fixed_var_z < 0` means calibrate from this round's
// update sum; otherwise the given variance is used (non-tracking mode).
FeelRoundResult feel_round(const MlpModel& global, const FeelConfig& cfg,
                           const SyntheticDataset& data,
                           const std::vector<std::vector<int>>& device_indices,
                           std::span<const int> validation_indices, int round,
                           double fixed_var_z = -1.0,
                           const RoundObserver& observer = nullptr);

struct FeelResult {
    MlpModel model;
    std::vector<RoundRecord> history;
};

FeelResult run_feel(const FeelConfig& cfg, const SyntheticDataset& data,
                    const RoundObserver& observer = nullptr);

} // namespace nnd
