// Minimal multilayer perceptron: tanh hidden layers, softmax output,
// cross-entropy loss, plain SGD. Parameters live in one flat WeightVector so
// the whole model can be pushed through the channel/denoiser machinery.
//
// Canonical parameter order: for each layer l (connecting layer_sizes[l] ->
// layer_sizes[l+1]): weight matrix row-major [out][in], then the bias vector.

#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "nnd/dataset.hpp"
#include "nnd/stats.hpp"

namespace nnd {

struct MlpSpec {
    std::vector<int> layer_sizes; // input dim, hidden dims..., class count

    void validate() const; // >= 2 layers, all sizes >= 1
};

std::size_t param_count(const MlpSpec& spec);

struct MlpModel {
    MlpSpec spec;
    WeightVector params; // flat, canonical order; mask empty by default
};

// Glorot-uniform weights (+-sqrt(6/(fan_in+fan_out))), zero biases.
MlpModel init_mlp(const MlpSpec& spec, SeedSpec seed);

// Numerically stable in place softmax (log-sum-exp shift).
void softmax_inplace(std::span<double> logits);

// Class probabilities for one input row.
std::vector<double> mlp_forward(const MlpModel& model, std::span<const double> x);

// Gradient of the mean cross-entropy over the batch, canonical order.
WeightVector mlp_gradient(const MlpModel& model, const SyntheticDataset& data,
                          std::span<const int> batch);

// SGD over the given example indices; per-epoch shuffles draw from
// substream(seed, epoch). learning_rate >= 0 (0 leaves the model untouched).
MlpModel sgd_train_on(MlpModel model, const SyntheticDataset& data,
                      std::span<const int> indices, int epochs, int batch_size,
                      double learning_rate, SeedSpec seed);

// Same, over the training split.
MlpModel sgd_train(MlpModel model, const SyntheticDataset& data, int epochs,
                   int batch_size, double learning_rate, SeedSpec seed);

// Fraction of argmax-correct predictions (ties resolve to the lowest class).
double evaluate_on(const MlpModel& model, const SyntheticDataset& data,
                   std::span<const int> indices);
double evaluate(const MlpModel& model, const SyntheticDataset& data, Split split);

// Model persistence: parameters in the binary weight format, layer sizes in a
// one-line companion file at <path>.spec ("layers = 2,16,4").
void save_mlp(const std::filesystem::path& path, const MlpModel& model);
MlpModel load_mlp(const std::filesystem::path& path);

} // namespace nnd
