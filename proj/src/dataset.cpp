#include "nnd/dataset.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nnd {

std::vector<int> SyntheticDataset::indices_of(Split s) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < splits.size(); ++i)
        if (splits[i] == s) out.push_back(static_cast<int>(i));
    return out;
}

SyntheticDataset make_blobs(int k_classes, int dim, int n_per_class, double spread,
                            SeedSpec seed) {
    if (k_classes < 1 || dim < 1 || n_per_class < 2 || !(spread >= 0.0))
        throw std::invalid_argument("make_blobs: bad arguments");

    // Class means, pairwise-adjacent distance 1.
    std::vector<std::vector<double>> means(k_classes, std::vector<double>(dim, 0.0));
    if (dim == 1 || k_classes == 1) {
        for (int k = 0; k < k_classes; ++k) means[k][0] = static_cast<double>(k);
    } else {
        const double radius =
            k_classes == 2 ? 0.5
                           : 1.0 / (2.0 * std::sin(std::numbers::pi / k_classes));
        for (int k = 0; k < k_classes; ++k) {
            const double angle = 2.0 * std::numbers::pi * k / k_classes;
            means[k][0] = radius * std::cos(angle);
            means[k][1] = radius * std::sin(angle);
        }
    }

    const int n_train = 7 * n_per_class / 10;
    const int n_val = n_per_class / 10;

    SyntheticDataset data;
    data.feature_dim = dim;
    data.n_classes = k_classes;
    data.features.reserve(static_cast<std::size_t>(k_classes) * n_per_class * dim);
    data.labels.reserve(static_cast<std::size_t>(k_classes) * n_per_class);
    data.splits.reserve(static_cast<std::size_t>(k_classes) * n_per_class);
    Rng rng{seed};
    for (int k = 0; k < k_classes; ++k) {
        for (int j = 0; j < n_per_class; ++j) {
            for (int a = 0; a < dim; ++a)
                data.features.push_back(means[k][a] + spread * rng.normal());
            data.labels.push_back(k);
            data.splits.push_back(j < n_train            ? Split::train
                                  : j < n_train + n_val  ? Split::validation
                                                         : Split::test);
        }
    }
    return data;
}

} // namespace nnd
