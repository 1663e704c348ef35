#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "nnd/mlp.hpp"
#include "nnd/weight_io.hpp"

using namespace nnd;

namespace {

SyntheticDataset reference_blobs() { return make_blobs(4, 2, 100, 0.25, SeedSpec{13, 0}); }

} // namespace

TEST_SUITE_BEGIN("mlp");

TEST_CASE("parameter layout") {
    const MlpSpec spec{{2, 16, 4}};
    CHECK(param_count(spec) == (2 + 1) * 16 + (16 + 1) * 4);
    CHECK_THROWS_AS(param_count(MlpSpec{{3}}), std::invalid_argument);
    CHECK_THROWS_AS(param_count(MlpSpec{{3, 0, 2}}), std::invalid_argument);

    const MlpModel model = init_mlp(spec, SeedSpec{1, 0});
    CHECK(model.params.values.size() == param_count(spec));
    const MlpModel again = init_mlp(spec, SeedSpec{1, 0});
    CHECK(model.params.values == again.params.values);
    // Biases start at zero: the first layer's bias block.
    for (std::size_t i = 2 * 16; i < 3 * 16; ++i) CHECK(model.params.values[i] == 0.0);
}

TEST_CASE("softmax") {
    SUBCASE("zeros map to the uniform distribution") {
        std::vector<double> logits(4, 0.0);
        softmax_inplace(logits);
        for (double p : logits) CHECK(p == 0.25);
    }
    SUBCASE("equal pair splits evenly") {
        std::vector<double> logits{3.7, 3.7};
        softmax_inplace(logits);
        CHECK(logits[0] == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(logits[1] == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("stable at extreme magnitudes") {
        std::vector<double> logits{1000.0, -1000.0, 0.0};
        softmax_inplace(logits);
        for (double p : logits) CHECK(std::isfinite(p));
        CHECK(logits[0] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("shift invariance of the argmax") {
        std::vector<double> a{0.3, 1.9, -0.7};
        std::vector<double> b{0.3 + 55.0, 1.9 + 55.0, -0.7 + 55.0};
        softmax_inplace(a);
        softmax_inplace(b);
        const auto arg_a = std::max_element(a.begin(), a.end()) - a.begin();
        const auto arg_b = std::max_element(b.begin(), b.end()) - b.begin();
        CHECK(arg_a == arg_b);
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-9));
    }
}

TEST_CASE("forward pass probabilities") {
    const MlpSpec spec{{2, 16, 4}};
    SUBCASE("zero weights give the uniform prediction") {
        MlpModel model = init_mlp(spec, SeedSpec{2, 0});
        std::fill(model.params.values.begin(), model.params.values.end(), 0.0);
        const auto probs = mlp_forward(model, std::vector<double>{0.4, -1.0});
        for (double p : probs) CHECK(p == 0.25);
    }
    SUBCASE("probabilities are a distribution") {
        const MlpModel model = init_mlp(spec, SeedSpec{3, 0});
        Rng rng{SeedSpec{4, 0}};
        for (int rep = 0; rep < 20; ++rep) {
            const std::vector<double> x{rng.uniform(-2, 2), rng.uniform(-2, 2)};
            const auto probs = mlp_forward(model, x);
            double sum = 0.0;
            for (double p : probs) {
                CHECK(p > 0.0);
                CHECK(p < 1.0);
                sum += p;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("input dimension is checked") {
        const MlpModel model = init_mlp(spec, SeedSpec{3, 0});
        CHECK_THROWS_AS(mlp_forward(model, std::vector<double>{1.0}), std::invalid_argument);
    }
}

TEST_CASE("gradient") {
    const SyntheticDataset data = reference_blobs();
    SUBCASE("near-certain predictions give a near-zero gradient") {
        // Linear softmax model rigged to predict each label with huge margin.
        MlpModel model = init_mlp(MlpSpec{{2, 4}}, SeedSpec{5, 0});
        std::fill(model.params.values.begin(), model.params.values.end(), 0.0);
        // weight[j][i]: large positive weight from the coordinates toward the
        // true class direction of blob means; use the bias block instead to
        // pin one class per example batch.
        std::vector<int> batch;
        for (int idx : data.indices_of(Split::train))
            if (data.labels[static_cast<std::size_t>(idx)] == 2) batch.push_back(idx);
        batch.resize(8);
        model.params.values[2 * 4 + 2] = 40.0; // bias of class 2
        const WeightVector g = mlp_gradient(model, data, batch);
        double norm = 0.0;
        for (double v : g.values) norm += v * v;
        CHECK(std::sqrt(norm) < 1e-6);
    }
    SUBCASE("duplicating the batch leaves the mean gradient unchanged") {
        const MlpModel model = init_mlp(MlpSpec{{2, 8, 4}}, SeedSpec{6, 0});
        std::vector<int> batch{0, 101, 202, 303};
        std::vector<int> doubled = batch;
        doubled.insert(doubled.end(), batch.begin(), batch.end());
        const WeightVector a = mlp_gradient(model, data, batch);
        const WeightVector b = mlp_gradient(model, data, doubled);
        for (std::size_t i = 0; i < a.values.size(); ++i)
            CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-13));
    }
    SUBCASE("matches central finite differences") {
        for (std::uint64_t inst = 0; inst < 5; ++inst) {
            MlpModel model = init_mlp(MlpSpec{{2, 6, 5, 4}}, SeedSpec{7, inst});
            Rng rng{SeedSpec{8, inst}};
            std::vector<int> batch;
            for (int k = 0; k < 6; ++k)
                batch.push_back(static_cast<int>(rng.bounded(data.size())));
            const WeightVector g = mlp_gradient(model, data, batch);

            auto loss = [&](const MlpModel& m) {
                double total = 0.0;
                for (int idx : batch) {
                    const auto probs = mlp_forward(m, data.row(static_cast<std::size_t>(idx)));
                    total -= std::log(
                        probs[static_cast<std::size_t>(data.labels[static_cast<std::size_t>(idx)])]);
                }
                return total / static_cast<double>(batch.size());
            };
            const double h = 1e-5;
            double max_abs_diff = 0.0, scale = 0.0;
            for (std::size_t k = 0; k < g.values.size(); ++k) {
                MlpModel plus = model, minus = model;
                plus.params.values[k] += h;
                minus.params.values[k] -= h;
                const double fd = (loss(plus) - loss(minus)) / (2.0 * h);
                max_abs_diff = std::max(max_abs_diff, std::abs(fd - g.values[k]));
                scale = std::max({scale, std::abs(fd), std::abs(g.values[k])});
            }
            CHECK(max_abs_diff / std::max(scale, 1e-12) < 1e-5);
        }
    }
    SUBCASE("empty batch is an error") {
        const MlpModel model = init_mlp(MlpSpec{{2, 4}}, SeedSpec{9, 0});
        CHECK_THROWS_AS(mlp_gradient(model, data, std::vector<int>{}), std::invalid_argument);
    }
}

TEST_CASE("sgd training") {
    const SyntheticDataset data = reference_blobs();
    const MlpSpec spec{{2, 16, 4}};
    const MlpModel initial = init_mlp(spec, SeedSpec{10, 0});
    SUBCASE("zero learning rate or zero epochs are no-ops") {
        const MlpModel a = sgd_train(initial, data, 3, 32, 0.0, SeedSpec{11, 0});
        CHECK(a.params.values == initial.params.values);
        const MlpModel b = sgd_train(initial, data, 0, 32, 0.1, SeedSpec{11, 0});
        CHECK(b.params.values == initial.params.values);
        CHECK_THROWS_AS(sgd_train(initial, data, 1, 32, -0.1, SeedSpec{11, 0}),
                        std::invalid_argument);
    }
    SUBCASE("training is deterministic") {
        const MlpModel a = sgd_train(initial, data, 5, 32, 0.1, SeedSpec{12, 0});
        const MlpModel b = sgd_train(initial, data, 5, 32, 0.1, SeedSpec{12, 0});
        CHECK(a.params.values == b.params.values);
    }
    SUBCASE("reaches high training accuracy on the blobs task") {
        const MlpModel trained = sgd_train(initial, data, 30, 32, 0.1, SeedSpec{12, 0});
        const double acc = evaluate(trained, data, Split::train);
        CHECK(acc >= 0.95);
    }
    SUBCASE("separable clusters are learned perfectly") {
        const SyntheticDataset tight = make_blobs(4, 2, 100, 1e-4, SeedSpec{14, 0});
        const MlpModel trained = sgd_train(init_mlp(spec, SeedSpec{15, 0}), tight, 20, 32,
                                           0.2, SeedSpec{16, 0});
        CHECK(evaluate(trained, tight, Split::test) == 1.0);
    }
}

TEST_CASE("evaluate") {
    const SyntheticDataset data = reference_blobs();
    SUBCASE("constant-prediction model scores chance on a balanced split") {
        MlpModel model = init_mlp(MlpSpec{{2, 4}}, SeedSpec{17, 0});
        std::fill(model.params.values.begin(), model.params.values.end(), 0.0);
        // Uniform probabilities everywhere; the argmax tie resolves to class 0.
        CHECK(evaluate(model, data, Split::test) == 0.25);
    }
    SUBCASE("random models hover near chance on average") {
        double total = 0.0;
        for (std::uint64_t s = 0; s < 10; ++s)
            total += evaluate(init_mlp(MlpSpec{{2, 16, 16, 4}}, SeedSpec{18, s}), data,
                              Split::test);
        const double mean = total / 10.0;
        CHECK(mean > 0.15);
        CHECK(mean < 0.35);
    }
    SUBCASE("empty split is an error") {
        const MlpModel model = init_mlp(MlpSpec{{2, 4}}, SeedSpec{19, 0});
        CHECK_THROWS_AS(evaluate_on(model, data, std::vector<int>{}), std::invalid_argument);
    }
}

TEST_CASE("model save and load round-trip") {
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "nnd_mlp_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto path = dir / "model.nnwv";

    const MlpModel model = init_mlp(MlpSpec{{2, 7, 4}}, SeedSpec{30, 0});
    save_mlp(path, model);
    const MlpModel back = load_mlp(path);
    CHECK(back.spec.layer_sizes == model.spec.layer_sizes);
    CHECK(back.params.values == model.params.values);
    const std::vector<double> x{0.4, -0.9};
    CHECK(mlp_forward(back, x) == mlp_forward(model, x));

    // A truncated payload no longer matches the declared layer sizes.
    write_weight_file(path, std::vector<double>(10, 0.0));
    CHECK_THROWS_AS(load_mlp(path), std::invalid_argument);
    std::filesystem::remove_all(dir);
}

TEST_CASE("make_blobs") {
    const SyntheticDataset data = reference_blobs();
    SUBCASE("sizes and stratified splits") {
        CHECK(data.size() == 400);
        CHECK(data.indices_of(Split::train).size() == 280);
        CHECK(data.indices_of(Split::validation).size() == 40);
        CHECK(data.indices_of(Split::test).size() == 80);
        // Every class present in every split at equal share.
        for (Split s : {Split::train, Split::validation, Split::test}) {
            std::vector<int> counts(4, 0);
            for (int idx : data.indices_of(s))
                ++counts[static_cast<std::size_t>(data.labels[static_cast<std::size_t>(idx)])];
            for (int k = 1; k < 4; ++k) CHECK(counts[static_cast<std::size_t>(k)] == counts[0]);
        }
    }
    SUBCASE("deterministic given the seed") {
        const SyntheticDataset again = make_blobs(4, 2, 100, 0.25, SeedSpec{13, 0});
        CHECK(data.features == again.features);
        CHECK(data.labels == again.labels);
    }
    SUBCASE("arguments are validated") {
        CHECK_THROWS_AS(make_blobs(0, 2, 100, 0.25, SeedSpec{13, 0}), std::invalid_argument);
        CHECK_THROWS_AS(make_blobs(4, 2, 1, 0.25, SeedSpec{13, 0}), std::invalid_argument);
    }
}

TEST_SUITE_END();
