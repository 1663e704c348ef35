// Synthetic classification data for the training and federated experiments.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nnd/rng.hpp"

namespace nnd {

enum class Split : std::uint8_t { train = 0, validation = 1, test = 2 };

struct SyntheticDataset {
    int feature_dim = 0;
    int n_classes = 0;
    std::vector<double> features; // row-major, size() * feature_dim
    std::vector<int> labels;      // in [0, n_classes)
    std::vector<Split> splits;    // one tag per example

    std::size_t size() const noexcept { return labels.size(); }
    std::span<const double> row(std::size_t i) const {
        return {features.data() + i * static_cast<std::size_t>(feature_dim),
                static_cast<std::size_t>(feature_dim)};
    }
    std::vector<int> indices_of(Split s) const;
};

// Gaussian blobs: class means sit on a regular polygon in the first two
// coordinates with unit separation between adjacent means (evenly spaced on a
// line when dim == 1). Per class, examples split 70/10/20 into
// train/validation/test, so classes stay balanced within every split.
// Deterministic given the seed. Requires n_per_class >= 2 so every class
// reaches the training split.
SyntheticDataset make_blobs(int k_classes, int dim, int n_per_class, double spread,
                            SeedSpec seed);

} // namespace nnd
