#include "nnd/feel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nnd {

namespace {

// Stream salts under cfg.seed.
constexpr std::uint64_t kSaltInit = 1;
constexpr std::uint64_t kSaltPartition = 2;
constexpr std::uint64_t kSaltValidation = 3;
constexpr std::uint64_t kSaltRoundBase = 16;

SeedSpec round_stream(SeedSpec seed, int round, std::uint64_t purpose) {
    return substream(substream(seed, kSaltRoundBase + static_cast<std::uint64_t>(round)),
                     purpose);
}

void check_config(const FeelConfig& cfg) {
    if (cfg.n_devices < 1) throw std::invalid_argument("FeelConfig: n_devices < 1");
    if (cfg.m_active < 1 || cfg.m_active > cfg.n_devices)
        throw std::invalid_argument("FeelConfig: need 1 <= m_active <= n_devices");
    if (cfg.local_epochs < 1) throw std::invalid_argument("FeelConfig: local_epochs < 1");
    if (cfg.rounds < 0) throw std::invalid_argument("FeelConfig: rounds < 0");
    if (cfg.kappa < 1) throw std::invalid_argument("FeelConfig: kappa < 1");
    cfg.model.validate();
}

} // namespace

std::vector<std::vector<int>> partition_dataset(const SyntheticDataset& data,
                                                const PartitionSpec& spec, int n_devices,
                                                SeedSpec seed) {
    if (n_devices < 1) throw std::invalid_argument("partition_dataset: n_devices < 1");
    if (spec.shards_per_device < 1)
        throw std::invalid_argument("partition_dataset: shards_per_device < 1");
    if (spec.random_fraction < 0.0 || spec.random_fraction > 1.0)
        throw std::invalid_argument("partition_dataset: random_fraction outside [0,1]");

    std::vector<int> train = data.indices_of(Split::train);
    const std::size_t n = train.size();
    const auto n_random = static_cast<std::size_t>(
        std::llround(spec.random_fraction * static_cast<double>(n)));
    const std::size_t n_sorted = n - n_random;
    const std::size_t n_shards =
        static_cast<std::size_t>(n_devices) * static_cast<std::size_t>(spec.shards_per_device);
    if (n_sorted % n_shards != 0)
        throw std::invalid_argument("partition_dataset: sorted portion of " +
                                    std::to_string(n_sorted) + " examples does not divide into " +
                                    std::to_string(n_shards) + " shards");

    Rng rng{substream(seed, 0)};
    for (std::size_t i = n; i-- > 1;) std::swap(train[i], train[rng.bounded(i + 1)]);

    std::vector<std::vector<int>> devices(static_cast<std::size_t>(n_devices));

    // Random portion: near-equal contiguous chunks of the shuffled prefix.
    const std::size_t base = n_random / static_cast<std::size_t>(n_devices);
    const std::size_t rem = n_random % static_cast<std::size_t>(n_devices);
    std::size_t pos = 0;
    for (std::size_t m = 0; m < devices.size(); ++m) {
        const std::size_t take = base + (m < rem ? 1 : 0);
        devices[m].assign(train.begin() + pos, train.begin() + pos + take);
        pos += take;
    }

    // Sorted portion: order by (label, index), cut into equal shards,
    // shards_per_device consecutive shards per device.
    std::vector<int> sorted(train.begin() + static_cast<std::ptrdiff_t>(n_random), train.end());
    std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
        const int la = data.labels[static_cast<std::size_t>(a)];
        const int lb = data.labels[static_cast<std::size_t>(b)];
        return la != lb ? la < lb : a < b;
    });
    const std::size_t shard_size = n_sorted / n_shards;
    for (std::size_t s = 0; s < n_shards; ++s) {
        auto& dev = devices[s / static_cast<std::size_t>(spec.shards_per_device)];
        dev.insert(dev.end(), sorted.begin() + static_cast<std::ptrdiff_t>(s * shard_size),
                   sorted.begin() + static_cast<std::ptrdiff_t>((s + 1) * shard_size));
    }
    return devices;
}

FeelRoundResult feel_round(const MlpModel& global, const FeelConfig& cfg,
                           const SyntheticDataset& data,
                           const std::vector<std::vector<int>>& device_indices,
                           std::span<const int> validation_indices, int round,
                           double fixed_var_z, const RoundObserver& observer) {
    check_config(cfg);
    if (device_indices.size() != static_cast<std::size_t>(cfg.n_devices))
        throw std::invalid_argument("feel_round: device list size mismatch");

    // Sample m_active devices without replacement; aggregate in ascending
    // device order so the sum is independent of the sampling order.
    std::vector<int> ids(static_cast<std::size_t>(cfg.n_devices));
    for (int i = 0; i < cfg.n_devices; ++i) ids[static_cast<std::size_t>(i)] = i;
    {
        Rng rng{round_stream(cfg.seed, round, 0)};
        for (int i = 0; i < cfg.m_active; ++i) {
            const std::size_t j =
                static_cast<std::size_t>(i) +
                rng.bounded(static_cast<std::uint64_t>(cfg.n_devices - i));
            std::swap(ids[static_cast<std::size_t>(i)], ids[j]);
        }
    }
    ids.resize(static_cast<std::size_t>(cfg.m_active));
    std::sort(ids.begin(), ids.end());

    const std::size_t dim = global.params.values.size();
    std::vector<double> sum(dim, 0.0);
    for (int dev : ids) {
        const MlpModel local =
            sgd_train_on(global, data, device_indices[static_cast<std::size_t>(dev)],
                         cfg.local_epochs, cfg.batch_size, cfg.learning_rate,
                         round_stream(cfg.seed, round, 100 + static_cast<std::uint64_t>(dev)));
        for (std::size_t k = 0; k < dim; ++k)
            sum[k] += local.params.values[k] - global.params.values[k];
    }

    // One noise vector on the aggregate (superposition channel).
    const double var_z = fixed_var_z >= 0.0
                             ? fixed_var_z
                             : sample_variance(sum) * std::pow(10.0, -cfg.wnr_db / 10.0);
    std::vector<double> noise(dim, 0.0);
    if (var_z > 0.0) {
        const double sigma_z = std::sqrt(var_z);
        Rng rng{round_stream(cfg.seed, round, 1)};
        for (double& z : noise) z = sigma_z * rng.normal();
    }
    WeightVector received;
    received.values.resize(dim);
    for (std::size_t k = 0; k < dim; ++k) received.values[k] = sum[k] + noise[k];
    if (observer) observer(round, sum, noise, received.values);

    PriorStats stats;
    if (cfg.use_true_stats) {
        stats.mu_w = sample_mean(sum);
        stats.var_w = sample_variance(sum);
        stats.var_z = var_z;
    } else {
        stats = estimate_prior_stats(received, var_z);
    }

    ScoreFn scorer; // built on demand for grid strategies
    if (cfg.strategy.kind == StrategyKind::mmse_pb_grid) {
        scorer = [&](double lambda_prime, double beta) {
            const WeightVector denoised = mmse_pb_denoise(
                received, NormalizedTemperature{lambda_prime, beta}, stats);
            MlpModel candidate = global;
            for (std::size_t k = 0; k < dim; ++k)
                candidate.params.values[k] +=
                    denoised.values[k] / static_cast<double>(cfg.m_active);
            return evaluate_on(candidate, data, validation_indices);
        };
    }
    const TemperatureChoice choice =
        choose_temperature(cfg.strategy, stats, scorer, /*fallback_to_ml=*/true);
    const WeightVector denoised = strategy_denoise(received, choice, stats);

    FeelRoundResult out;
    out.model = global;
    for (std::size_t k = 0; k < dim; ++k)
        out.model.params.values[k] += denoised.values[k] / static_cast<double>(cfg.m_active);

    out.record.round = round;
    out.record.lambda_prime = choice.lambda_prime;
    out.record.beta = choice.beta;
    out.record.sigma2_r = sample_variance(received.values);
    out.record.sigma2_w_est = stats.var_w;
    out.record.sigma2_z = var_z;
    out.record.test_accuracy = evaluate(out.model, data, Split::test);
    out.record.fell_back_to_ml = choice.fell_back_to_ml;
    return out;
}

FeelResult run_feel(const FeelConfig& cfg, const SyntheticDataset& data,
                    const RoundObserver& observer) {
    check_config(cfg);
    const std::vector<std::vector<int>> devices =
        partition_dataset(data, cfg.partition, cfg.n_devices, substream(cfg.seed, kSaltPartition));

    // Validation subset for grid strategies: kappa training examples, drawn
    // once and reused every round.
    const std::vector<int> train = data.indices_of(Split::train);
    if (train.size() < static_cast<std::size_t>(cfg.kappa))
        throw std::invalid_argument("run_feel: kappa exceeds training split");
    std::vector<int> pool = train;
    Rng val_rng{substream(cfg.seed, kSaltValidation)};
    for (std::size_t i = pool.size(); i-- > 1;) std::swap(pool[i], pool[val_rng.bounded(i + 1)]);
    pool.resize(static_cast<std::size_t>(cfg.kappa));

    FeelResult result;
    result.model = init_mlp(cfg.model, substream(cfg.seed, kSaltInit));
    result.history.reserve(static_cast<std::size_t>(cfg.rounds));
    double fixed_var_z = -1.0;
    for (int t = 0; t < cfg.rounds; ++t) {
        FeelRoundResult step =
            feel_round(result.model, cfg, data, devices, pool, t, fixed_var_z, observer);
        if (!cfg.noise_tracking && t == 0) fixed_var_z = step.record.sigma2_z;
        result.model = std::move(step.model);
        result.history.push_back(step.record);
    }
    return result;
}

} // namespace nnd
