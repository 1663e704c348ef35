#include "nnd/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "nnd/run_config.hpp"
#include "nnd/weight_io.hpp"

namespace nnd {

void MlpSpec::validate() const {
    if (layer_sizes.size() < 2)
        throw std::invalid_argument("MlpSpec: need at least input and output layers");
    for (int s : layer_sizes)
        if (s < 1) throw std::invalid_argument("MlpSpec: layer sizes must be >= 1");
}

std::size_t param_count(const MlpSpec& spec) {
    spec.validate();
    std::size_t n = 0;
    for (std::size_t l = 0; l + 1 < spec.layer_sizes.size(); ++l)
        n += static_cast<std::size_t>(spec.layer_sizes[l] + 1) * spec.layer_sizes[l + 1];
    return n;
}

namespace {

// Offset of layer l's weight block in the flat parameter vector.
std::size_t layer_offset(const MlpSpec& spec, std::size_t l) {
    std::size_t off = 0;
    for (std::size_t m = 0; m < l; ++m)
        off += static_cast<std::size_t>(spec.layer_sizes[m] + 1) * spec.layer_sizes[m + 1];
    return off;
}

} // namespace

MlpModel init_mlp(const MlpSpec& spec, SeedSpec seed) {
    spec.validate();
    MlpModel model;
    model.spec = spec;
    model.params.values.assign(param_count(spec), 0.0);
    Rng rng{seed};
    std::size_t off = 0;
    for (std::size_t l = 0; l + 1 < spec.layer_sizes.size(); ++l) {
        const int fan_in = spec.layer_sizes[l];
        const int fan_out = spec.layer_sizes[l + 1];
        const double bound = std::sqrt(6.0 / (fan_in + fan_out));
        for (int i = 0; i < fan_in * fan_out; ++i)
            model.params.values[off + i] = rng.uniform(-bound, bound);
        off += static_cast<std::size_t>(fan_in + 1) * fan_out; // biases stay zero
    }
    return model;
}

void softmax_inplace(std::span<double> logits) {
    double max_logit = logits[0];
    for (double v : logits) max_logit = std::max(max_logit, v);
    double sum = 0.0;
    for (double& v : logits) {
        v = std::exp(v - max_logit);
        sum += v;
    }
    for (double& v : logits) v /= sum;
}

std::vector<double> mlp_forward(const MlpModel& model, std::span<const double> x) {
    const auto& sizes = model.spec.layer_sizes;
    if (x.size() != static_cast<std::size_t>(sizes.front()))
        throw std::invalid_argument("mlp_forward: input dimension mismatch");
    std::vector<double> act(x.begin(), x.end());
    std::vector<double> next;
    const double* p = model.params.values.data();
    std::size_t off = 0;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        const int in = sizes[l];
        const int out = sizes[l + 1];
        next.assign(out, 0.0);
        for (int j = 0; j < out; ++j) {
            double a = p[off + static_cast<std::size_t>(in) * out + j]; // bias
            const double* row = p + off + static_cast<std::size_t>(j) * in;
            for (int i = 0; i < in; ++i) a += row[i] * act[i];
            next[j] = a;
        }
        if (l + 2 < sizes.size())
            for (double& v : next) v = std::tanh(v);
        act.swap(next);
        off += static_cast<std::size_t>(in + 1) * out;
    }
    softmax_inplace(act);
    return act;
}

WeightVector mlp_gradient(const MlpModel& model, const SyntheticDataset& data,
                          std::span<const int> batch) {
    if (batch.empty()) throw std::invalid_argument("mlp_gradient: empty batch");
    const auto& sizes = model.spec.layer_sizes;
    if (data.feature_dim != sizes.front())
        throw std::invalid_argument("mlp_gradient: feature dimension mismatch");
    const std::size_t n_layers = sizes.size() - 1;
    const double* p = model.params.values.data();

    WeightVector grad;
    grad.values.assign(model.params.values.size(), 0.0);

    std::vector<std::vector<double>> act(sizes.size());
    std::vector<double> delta, delta_prev;
    for (int idx : batch) {
        const auto x = data.row(static_cast<std::size_t>(idx));
        act[0].assign(x.begin(), x.end());
        std::size_t off = 0;
        for (std::size_t l = 0; l < n_layers; ++l) {
            const int in = sizes[l];
            const int out = sizes[l + 1];
            act[l + 1].assign(out, 0.0);
            for (int j = 0; j < out; ++j) {
                double a = p[off + static_cast<std::size_t>(in) * out + j];
                const double* row = p + off + static_cast<std::size_t>(j) * in;
                for (int i = 0; i < in; ++i) a += row[i] * act[l][i];
                act[l + 1][j] = a;
            }
            if (l + 1 < n_layers)
                for (double& v : act[l + 1]) v = std::tanh(v);
            off += static_cast<std::size_t>(in + 1) * out;
        }
        softmax_inplace(act[n_layers]);

        // d(cross-entropy)/d(logits) = p - onehot
        delta = act[n_layers];
        delta[static_cast<std::size_t>(data.labels[static_cast<std::size_t>(idx)])] -= 1.0;

        for (std::size_t l = n_layers; l-- > 0;) {
            const int in = sizes[l];
            const int out = sizes[l + 1];
            const std::size_t woff = layer_offset(model.spec, l);
            for (int j = 0; j < out; ++j) {
                const std::size_t row = woff + static_cast<std::size_t>(j) * in;
                for (int i = 0; i < in; ++i) grad.values[row + i] += delta[j] * act[l][i];
                grad.values[woff + static_cast<std::size_t>(in) * out + j] += delta[j];
            }
            if (l > 0) {
                delta_prev.assign(in, 0.0);
                for (int i = 0; i < in; ++i) {
                    double s = 0.0;
                    for (int j = 0; j < out; ++j)
                        s += p[woff + static_cast<std::size_t>(j) * in + i] * delta[j];
                    // act[l] holds tanh outputs here
                    delta_prev[i] = s * (1.0 - act[l][i] * act[l][i]);
                }
                delta.swap(delta_prev);
            }
        }
    }
    const double inv = 1.0 / static_cast<double>(batch.size());
    for (double& g : grad.values) g *= inv;
    return grad;
}

MlpModel sgd_train_on(MlpModel model, const SyntheticDataset& data,
                      std::span<const int> indices, int epochs, int batch_size,
                      double learning_rate, SeedSpec seed) {
    if (learning_rate < 0.0) throw std::invalid_argument("sgd_train: learning_rate < 0");
    if (epochs < 0) throw std::invalid_argument("sgd_train: epochs < 0");
    if (batch_size < 1) throw std::invalid_argument("sgd_train: batch_size < 1");
    if (epochs == 0 || learning_rate == 0.0 || indices.empty()) return model;

    std::vector<int> order(indices.begin(), indices.end());
    for (int e = 0; e < epochs; ++e) {
        Rng rng{substream(seed, static_cast<std::uint64_t>(e))};
        for (std::size_t i = order.size(); i-- > 1;)
            std::swap(order[i], order[rng.bounded(i + 1)]);
        for (std::size_t start = 0; start < order.size(); start += batch_size) {
            const std::size_t len = std::min<std::size_t>(batch_size, order.size() - start);
            const WeightVector g =
                mlp_gradient(model, data, std::span<const int>(order).subspan(start, len));
            for (std::size_t k = 0; k < g.values.size(); ++k)
                model.params.values[k] -= learning_rate * g.values[k];
        }
    }
    return model;
}

MlpModel sgd_train(MlpModel model, const SyntheticDataset& data, int epochs,
                   int batch_size, double learning_rate, SeedSpec seed) {
    const std::vector<int> train = data.indices_of(Split::train);
    return sgd_train_on(std::move(model), data, train, epochs, batch_size, learning_rate,
                        seed);
}

double evaluate_on(const MlpModel& model, const SyntheticDataset& data,
                   std::span<const int> indices) {
    if (indices.empty()) throw std::invalid_argument("evaluate: empty split");
    std::size_t correct = 0;
    for (int idx : indices) {
        const auto probs = mlp_forward(model, data.row(static_cast<std::size_t>(idx)));
        const std::size_t pred =
            std::max_element(probs.begin(), probs.end()) - probs.begin();
        if (static_cast<int>(pred) == data.labels[static_cast<std::size_t>(idx)]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(indices.size());
}

double evaluate(const MlpModel& model, const SyntheticDataset& data, Split split) {
    const std::vector<int> idx = data.indices_of(split);
    return evaluate_on(model, data, idx);
}

void save_mlp(const std::filesystem::path& path, const MlpModel& model) {
    model.spec.validate();
    if (model.params.values.size() != param_count(model.spec))
        throw std::invalid_argument("save_mlp: parameter count does not match the spec");
    write_weight_file(path, model.params.values);
    std::string header = "layers = ";
    for (std::size_t i = 0; i < model.spec.layer_sizes.size(); ++i) {
        if (i) header += ',';
        header += std::to_string(model.spec.layer_sizes[i]);
    }
    header += '\n';
    write_text_atomic(path.string() + ".spec", header);
}

MlpModel load_mlp(const std::filesystem::path& path) {
    const RunConfig header = RunConfig::parse_file(path.string() + ".spec");
    header.require_known_keys({"layers"});
    MlpModel model;
    const std::string layers = header.get_string("layers", "");
    std::size_t pos = 0;
    while (pos < layers.size()) {
        const std::size_t comma = layers.find(',', pos);
        const std::string item =
            layers.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        model.spec.layer_sizes.push_back(std::stoi(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    model.spec.validate();
    model.params.values = read_weight_file(path);
    if (model.params.values.size() != param_count(model.spec))
        throw std::invalid_argument("load_mlp: " + path.string() + " holds " +
                                    std::to_string(model.params.values.size()) +
                                    " weights but the spec needs " +
                                    std::to_string(param_count(model.spec)));
    return model;
}

} // namespace nnd
