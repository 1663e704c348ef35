#include "nnd/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nnd/csv.hpp"
#include "nnd/denoiser.hpp"
#include "nnd/feel.hpp"
#include "nnd/inference.hpp"
#include "nnd/quad_study.hpp"
#include "nnd/run_config.hpp"
#include "nnd/tanh_study.hpp"
#include "nnd/weight_io.hpp"

namespace nnd::cli {

namespace {

struct Axis {
    double min, max, step;

    std::size_t count() const {
        if (!(step > 0.0) || max < min) throw std::invalid_argument("bad axis range");
        return static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
    }
    double at(std::size_t i) const { return min + static_cast<double>(i) * step; }
};

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::invalid_argument("empty list: '" + text + "'");
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_double_list(text)) out.push_back(static_cast<int>(v));
    return out;
}

// "ml" | "mmse" | "grid" | "fixed:<lambda_prime>:<beta>"
DenoiseStrategy parse_strategy(const std::string& text) {
    if (text == "ml") return DenoiseStrategy::make_ml();
    if (text == "mmse") return DenoiseStrategy::make_mmse();
    if (text == "grid") return DenoiseStrategy::make_grid();
    if (text.rfind("fixed:", 0) == 0) {
        const std::string rest = text.substr(6);
        const auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("fixed strategy needs fixed:<lambda_prime>:<beta>");
        return DenoiseStrategy::make_fixed(std::stod(rest.substr(0, colon)),
                                           std::stod(rest.substr(colon + 1)));
    }
    throw std::invalid_argument("unknown strategy '" + text + "'");
}

std::vector<DenoiseStrategy> parse_strategy_list(const std::string& text) {
    std::vector<DenoiseStrategy> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (!item.empty()) out.push_back(parse_strategy(item));
    if (out.empty()) throw std::invalid_argument("empty strategy list");
    return out;
}

const char* kind_name(CriticalKind k) {
    switch (k) {
        case CriticalKind::local_max: return "local-max";
        case CriticalKind::local_min: return "local-min";
        case CriticalKind::saddle: return "saddle";
        case CriticalKind::global_min: return "global-min";
    }
    return "?";
}

void apply_overrides(RunConfig& cfg, const std::vector<std::string>& sets) {
    for (const auto& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
}

const std::set<std::string> kDataKeys = {"data.classes", "data.dim", "data.per-class",
                                         "data.spread", "data.seed"};
const std::set<std::string> kGridKeys = {"grid.lambda-min", "grid.lambda-max",
                                         "grid.lambda-step", "grid.beta-min",
                                         "grid.beta-max",    "grid.beta-step"};

SyntheticDataset dataset_from_config(const RunConfig& cfg) {
    return make_blobs(cfg.get_int("data.classes", 4), cfg.get_int("data.dim", 2),
                      cfg.get_int("data.per-class", 100), cfg.get_double("data.spread", 0.25),
                      SeedSpec{cfg.get_u64("data.seed", 1), 0});
}

MlpSpec model_from_config(const RunConfig& cfg, const std::string& fallback_layers) {
    MlpSpec spec;
    spec.layer_sizes = parse_int_list(cfg.get_string("model.layers", fallback_layers));
    return spec;
}

std::optional<GridSpec> grid_from_config(const RunConfig& cfg) {
    if (!cfg.has("grid.lambda-min") && !cfg.has("grid.beta-min")) return std::nullopt;
    GridSpec g;
    g.lambda_prime_min = cfg.get_double("grid.lambda-min", g.lambda_prime_min);
    g.lambda_prime_max = cfg.get_double("grid.lambda-max", g.lambda_prime_max);
    g.lambda_prime_step = cfg.get_double("grid.lambda-step", g.lambda_prime_step);
    g.beta_min = cfg.get_double("grid.beta-min", g.beta_min);
    g.beta_max = cfg.get_double("grid.beta-max", g.beta_max);
    g.beta_step = cfg.get_double("grid.beta-step", g.beta_step);
    return g;
}

// ---- quad-study ----------------------------------------------------------

struct QuadStudyArgs {
    QuadConfig cfg{5, 0.1, 2.25, 1.0};
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    std::string out;
    Axis theta{-1.5, 1.5, 0.1};
    Axis rho{-2.0, 2.0, 0.1};
};

void run_quad_study(const QuadStudyArgs& a) {
    const SeedSpec seed{a.seed, 0};
    const auto points = quad_critical_points(a.cfg);
    const auto opt = quad_optimal_params(a.cfg);
    const double d_ml = quad_ml_error(a.cfg);
    double theta3 = 0.0, d_min = 0.0;
    for (const auto& p : points)
        if (p.name == "P3") {
            theta3 = p.theta;
            d_min = quad_error_closed(p.theta, p.rho, a.cfg);
        }

    CsvBuilder csv;
    csv.comment("quad-study d=" + std::to_string(a.cfg.dim) + " c=" + fmt_double(a.cfg.c) +
                " var_w=" + fmt_double(a.cfg.var_w) + " var_z=" + fmt_double(a.cfg.var_z) +
                " trials=" + std::to_string(a.trials) + " seed=" + std::to_string(a.seed));
    csv.comment("lambda_star=" + fmt_double(opt.lambda_star) +
                " beta_star=" + fmt_double(opt.beta_star) + " theta_star=" + fmt_double(theta3));
    csv.comment("gain=" + fmt_double(quad_gain(a.cfg)) + " d_ml_closed=" + fmt_double(d_ml) +
                " d_min_closed=" + fmt_double(d_min));
    for (const auto& p : points)
        csv.comment("critical_point name=" + p.name + " theta=" + fmt_double(p.theta) +
                    " rho=" + fmt_double(p.rho) + " kind=" + kind_name(p.kind) +
                    " feasible=" + (p.feasible ? "true" : "false"));
    csv.raw_line("theta,rho,d_closed,d_mc,mc_std_err");
    const std::size_t nt = a.theta.count(), nr = a.rho.count();
    for (std::size_t i = 0; i < nt; ++i) {
        for (std::size_t j = 0; j < nr; ++j) {
            const double theta = a.theta.at(i);
            const double rho = a.rho.at(j);
            const McEstimate mc =
                quad_mc_error(theta, rho, a.cfg, a.trials, substream(seed, i * nr + j));
            csv.row({fmt_double(theta), fmt_double(rho),
                     fmt_double(quad_error_closed(theta, rho, a.cfg)), fmt_double(mc.mean),
                     fmt_double(mc.std_err)});
        }
    }
    write_text_atomic(a.out, csv.str());
}

// ---- tanh-study / tanh-sweep ---------------------------------------------

struct TanhStudyArgs {
    TanhConfig cfg{10, 0.4, 1.0, 0.5};
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    std::string out;
    Axis theta{-1.5, 1.5, 0.1};
    Axis rho{-1.0, 1.0, 0.1};
};

void run_tanh_study(const TanhStudyArgs& a) {
    const SeedSpec seed{a.seed, 0};
    const TanhOptimal opt = tanh_optimal_params(a.cfg);
    const double d_ml = tanh_error_closed(1.0, 0.0, a.cfg);
    const double d_pb = tanh_error_closed(opt.theta_star, 0.0, a.cfg);
    const McEstimate mc_ml = tanh_mc_error(1.0, 0.0, a.cfg, a.trials, substream(seed, 1));
    const McEstimate mc_pb =
        tanh_mc_error(opt.theta_star, 0.0, a.cfg, a.trials, substream(seed, 2));

    CsvBuilder csv;
    csv.comment("tanh-study n=" + std::to_string(a.cfg.n_hidden) + " c=" + fmt_double(a.cfg.c) +
                " var_w=" + fmt_double(a.cfg.var_w) + " var_z=" + fmt_double(a.cfg.var_z) +
                " trials=" + std::to_string(a.trials) + " seed=" + std::to_string(a.seed));
    csv.comment("lambda_star=" + fmt_double(opt.lambda_star) +
                " beta_star=" + fmt_double(opt.beta_star) +
                " theta_star=" + fmt_double(opt.theta_star));
    csv.comment("gain=" + fmt_double(tanh_gain(a.cfg)) + " d_ml_closed=" + fmt_double(d_ml) +
                " d_pb_closed=" + fmt_double(d_pb) + " d_ml_mc=" + fmt_double(mc_ml.mean) +
                " d_pb_mc=" + fmt_double(mc_pb.mean));
    csv.raw_line("theta,rho,d_closed,d_mc,mc_std_err");
    const std::size_t nt = a.theta.count(), nr = a.rho.count();
    for (std::size_t i = 0; i < nt; ++i) {
        for (std::size_t j = 0; j < nr; ++j) {
            const double theta = a.theta.at(i);
            const double rho = a.rho.at(j);
            const McEstimate mc =
                tanh_mc_error(theta, rho, a.cfg, a.trials, substream(seed, 16 + i * nr + j));
            csv.row({fmt_double(theta), fmt_double(rho),
                     fmt_double(tanh_error_closed(theta, rho, a.cfg)), fmt_double(mc.mean),
                     fmt_double(mc.std_err)});
        }
    }
    write_text_atomic(a.out, csv.str());
}

struct TanhSweepArgs {
    TanhConfig cfg{10, 0.4, 1.0, 0.5};
    std::string c_list = "0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5";
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    std::string out;
};

void run_tanh_sweep(const TanhSweepArgs& a) {
    const std::vector<double> cs = parse_double_list(a.c_list);
    const auto rows = tanh_c_sweep(a.cfg, cs, a.trials, SeedSpec{a.seed, 0});
    CsvBuilder csv;
    csv.comment("tanh-sweep n=" + std::to_string(a.cfg.n_hidden) +
                " var_w=" + fmt_double(a.cfg.var_w) + " var_z=" + fmt_double(a.cfg.var_z) +
                " trials=" + std::to_string(a.trials) + " seed=" + std::to_string(a.seed));
    csv.raw_line("c,d_closed_ml,d_mc_ml,mc_ml_std_err,d_closed_pb,d_mc_pb,mc_pb_std_err");
    for (const auto& r : rows)
        csv.row({fmt_double(r.c), fmt_double(r.closed_ml), fmt_double(r.mc_ml),
                 fmt_double(r.mc_ml_std_err), fmt_double(r.closed_pb), fmt_double(r.mc_pb),
                 fmt_double(r.mc_pb_std_err)});
    write_text_atomic(a.out, csv.str());
}

// ---- denoise ---------------------------------------------------------------

struct DenoiseArgs {
    std::string in, out, mask;
    std::string strategy = "ml";
    double var_z = -1.0;
    double wnr_db = 0.0;
    bool has_var_z = false, has_wnr = false;
    double lambda_prime = 1.0, beta = 0.0;
    bool has_lambda = false;
};

void run_denoise(const DenoiseArgs& a) {
    DenoiseStrategy strategy;
    if (a.strategy == "fixed" || a.has_lambda) {
        strategy = DenoiseStrategy::make_fixed(a.lambda_prime, a.beta);
    } else {
        strategy = parse_strategy(a.strategy);
    }
    std::optional<double> var_z, wnr;
    if (a.has_var_z) var_z = a.var_z;
    if (a.has_wnr) wnr = a.wnr_db;
    // ML needs no statistics at all; accept missing noise figures for it.
    if (!a.has_var_z && !a.has_wnr && strategy.kind == StrategyKind::ml) var_z = 0.0;
    std::optional<std::filesystem::path> mask;
    if (!a.mask.empty()) mask = a.mask;
    apply_denoiser_file(a.in, a.out, strategy, var_z, wnr, mask);
}

// ---- infer-sweep -----------------------------------------------------------

void run_infer_sweep(const std::string& config_path, const std::vector<std::string>& sets,
                     const std::string& out, std::string agg_out) {
    RunConfig cfg = config_path.empty() ? RunConfig{} : RunConfig::parse_file(config_path);
    apply_overrides(cfg, sets);
    std::set<std::string> known = kDataKeys;
    known.insert(kGridKeys.begin(), kGridKeys.end());
    known.insert({"model.layers", "train.epochs", "train.batch", "train.lr", "train.seed",
                  "infer.wnr-list", "infer.repeats", "infer.kappa", "infer.seed",
                  "infer.strategies", "infer.use-true-stats", "infer.reuse-params"});
    cfg.require_known_keys(known);

    const SyntheticDataset data = dataset_from_config(cfg);
    const MlpSpec spec = model_from_config(cfg, "2,16,16,4");
    MlpModel model = init_mlp(spec, SeedSpec{cfg.get_u64("train.seed", 7), 0});
    model = sgd_train(std::move(model), data, cfg.get_int("train.epochs", 40),
                      cfg.get_int("train.batch", 32), cfg.get_double("train.lr", 0.1),
                      SeedSpec{cfg.get_u64("train.seed", 7), 1});

    InferenceExperiment exp;
    exp.wnr_values_db = parse_double_list(cfg.get_string("infer.wnr-list", "-10,-5,0,5,60"));
    exp.repeats = cfg.get_int("infer.repeats", 10);
    exp.kappa = cfg.get_int("infer.kappa", 40);
    exp.seed = SeedSpec{cfg.get_u64("infer.seed", 11), 0};
    exp.use_true_stats = cfg.get_bool("infer.use-true-stats", false);
    exp.reuse_params_across_wnrs = cfg.get_bool("infer.reuse-params", false);
    exp.strategies = parse_strategy_list(cfg.get_string("infer.strategies", "ml;grid"));
    const std::optional<GridSpec> grid = grid_from_config(cfg);
    if (grid)
        for (auto& s : exp.strategies)
            if (s.kind == StrategyKind::mmse_pb_grid) s.grid = grid;

    const SweepResult result = run_inference_sweep(model, data, exp);

    CsvBuilder per_repeat;
    per_repeat.comment("clean_accuracy=" + fmt_double(result.clean_accuracy));
    per_repeat.raw_line("wnr_db,strategy,repeat,accuracy");
    for (const auto& cell : result.cells)
        for (std::size_t rep = 0; rep < cell.accuracies.size(); ++rep)
            per_repeat.row({fmt_double(cell.wnr_db), cell.strategy, std::to_string(rep),
                            fmt_double(cell.accuracies[rep])});
    write_text_atomic(out, per_repeat.str());

    if (agg_out.empty()) {
        agg_out = out;
        const auto dot = agg_out.rfind('.');
        agg_out.insert(dot == std::string::npos ? agg_out.size() : dot, "_agg");
    }
    CsvBuilder agg;
    agg.comment("clean_accuracy=" + fmt_double(result.clean_accuracy));
    agg.raw_line("wnr_db,strategy,mean_accuracy,std_accuracy");
    for (const auto& cell : result.cells)
        agg.row({fmt_double(cell.wnr_db), cell.strategy, fmt_double(cell.mean_accuracy),
                 fmt_double(cell.std_accuracy)});
    write_text_atomic(agg_out, agg.str());
}

// ---- feel ------------------------------------------------------------------

void run_feel_cmd(const std::string& config_path, const std::vector<std::string>& sets,
                  const std::string& out) {
    RunConfig cfg = config_path.empty() ? RunConfig{} : RunConfig::parse_file(config_path);
    apply_overrides(cfg, sets);
    std::set<std::string> known = kDataKeys;
    known.insert(kGridKeys.begin(), kGridKeys.end());
    known.insert({"model.layers", "feel.devices", "feel.active", "feel.local-epochs",
                  "feel.rounds", "feel.wnr-db", "feel.strategy", "feel.kappa", "feel.seed",
                  "feel.lr", "feel.batch", "feel.random-fraction", "feel.shards-per-device",
                  "feel.noise-tracking", "feel.use-true-stats"});
    cfg.require_known_keys(known);

    const SyntheticDataset data = dataset_from_config(cfg);
    FeelConfig feel;
    feel.model = model_from_config(cfg, "2,16,16,4");
    feel.n_devices = cfg.get_int("feel.devices", 8);
    feel.m_active = cfg.get_int("feel.active", 4);
    feel.local_epochs = cfg.get_int("feel.local-epochs", 5);
    feel.rounds = cfg.get_int("feel.rounds", 25);
    feel.wnr_db = cfg.get_double("feel.wnr-db", 0.0);
    feel.strategy = parse_strategy(cfg.get_string("feel.strategy", "grid"));
    feel.strategy.grid = grid_from_config(cfg);
    feel.kappa = cfg.get_int("feel.kappa", 40);
    feel.seed = SeedSpec{cfg.get_u64("feel.seed", 3), 0};
    feel.learning_rate = cfg.get_double("feel.lr", 0.05);
    feel.batch_size = cfg.get_int("feel.batch", 32);
    feel.partition.random_fraction = cfg.get_double("feel.random-fraction", 0.8);
    feel.partition.shards_per_device = cfg.get_int("feel.shards-per-device", 1);
    feel.noise_tracking = cfg.get_bool("feel.noise-tracking", true);
    feel.use_true_stats = cfg.get_bool("feel.use-true-stats", false);

    const FeelResult result = run_feel(feel, data);

    CsvBuilder csv;
    csv.raw_line("round,lambda_prime,beta,sigma2_r,sigma2_w_est,test_accuracy");
    for (const auto& rec : result.history)
        csv.row({std::to_string(rec.round), fmt_double(rec.lambda_prime), fmt_double(rec.beta),
                 fmt_double(rec.sigma2_r), fmt_double(rec.sigma2_w_est),
                 fmt_double(rec.test_accuracy)});
    write_text_atomic(out, csv.str());
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Weight-denoising studies, sweeps, and federated simulation"};
    app.require_subcommand(1);

    QuadStudyArgs quad;
    auto* quad_cmd = app.add_subcommand("quad-study",
                                        "Closed-form vs Monte Carlo error surface of the "
                                        "quadratic network");
    quad_cmd->add_option("--d", quad.cfg.dim, "Weight dimension")->check(CLI::PositiveNumber);
    quad_cmd->add_option("--c", quad.cfg.c, "Input offset constant");
    quad_cmd->add_option("--var-w", quad.cfg.var_w, "Weight variance")
        ->check(CLI::PositiveNumber);
    quad_cmd->add_option("--var-z", quad.cfg.var_z, "Noise variance")
        ->check(CLI::PositiveNumber);
    quad_cmd->add_option("--trials", quad.trials, "Monte Carlo trials per surface cell")
        ->check(CLI::PositiveNumber);
    quad_cmd->add_option("--seed", quad.seed, "Master seed");
    quad_cmd->add_option("--out", quad.out, "Output CSV path")->required();
    quad_cmd->add_option("--theta-min", quad.theta.min, "Surface theta minimum");
    quad_cmd->add_option("--theta-max", quad.theta.max, "Surface theta maximum");
    quad_cmd->add_option("--theta-step", quad.theta.step, "Surface theta step");
    quad_cmd->add_option("--rho-min", quad.rho.min, "Surface rho minimum");
    quad_cmd->add_option("--rho-max", quad.rho.max, "Surface rho maximum");
    quad_cmd->add_option("--rho-step", quad.rho.step, "Surface rho step");
    quad_cmd->callback([&] { run_quad_study(quad); });

    TanhStudyArgs tanh_args;
    auto* tanh_cmd = app.add_subcommand("tanh-study",
                                        "Closed-form vs Monte Carlo error surface of the "
                                        "tanh network");
    tanh_cmd->add_option("--n", tanh_args.cfg.n_hidden, "Hidden neurons")
        ->check(CLI::PositiveNumber);
    tanh_cmd->add_option("--c", tanh_args.cfg.c, "Input half-width")->check(CLI::PositiveNumber);
    tanh_cmd->add_option("--var-w", tanh_args.cfg.var_w, "Weight variance")
        ->check(CLI::PositiveNumber);
    tanh_cmd->add_option("--var-z", tanh_args.cfg.var_z, "Noise variance")
        ->check(CLI::PositiveNumber);
    tanh_cmd->add_option("--trials", tanh_args.trials, "Monte Carlo trials per point")
        ->check(CLI::PositiveNumber);
    tanh_cmd->add_option("--seed", tanh_args.seed, "Master seed");
    tanh_cmd->add_option("--out", tanh_args.out, "Output CSV path")->required();
    tanh_cmd->add_option("--theta-min", tanh_args.theta.min, "Surface theta minimum");
    tanh_cmd->add_option("--theta-max", tanh_args.theta.max, "Surface theta maximum");
    tanh_cmd->add_option("--theta-step", tanh_args.theta.step, "Surface theta step");
    tanh_cmd->add_option("--rho-min", tanh_args.rho.min, "Surface rho minimum");
    tanh_cmd->add_option("--rho-max", tanh_args.rho.max, "Surface rho maximum");
    tanh_cmd->add_option("--rho-step", tanh_args.rho.step, "Surface rho step");
    tanh_cmd->callback([&] { run_tanh_study(tanh_args); });

    TanhSweepArgs sweep;
    auto* sweep_cmd =
        app.add_subcommand("tanh-sweep", "Closed-form vs Monte Carlo error across input widths");
    sweep_cmd->add_option("--n", sweep.cfg.n_hidden, "Hidden neurons")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--var-w", sweep.cfg.var_w, "Weight variance")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--var-z", sweep.cfg.var_z, "Noise variance")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--c-list", sweep.c_list, "Comma-separated input half-widths");
    sweep_cmd->add_option("--trials", sweep.trials, "Monte Carlo trials per point")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--seed", sweep.seed, "Master seed");
    sweep_cmd->add_option("--out", sweep.out, "Output CSV path")->required();
    sweep_cmd->callback([&] { run_tanh_sweep(sweep); });

    DenoiseArgs dn;
    auto* dn_cmd = app.add_subcommand("denoise", "Denoise a binary weight file");
    dn_cmd->add_option("--in", dn.in, "Input weight file")->required();
    dn_cmd->add_option("--out", dn.out, "Output weight file")->required();
    dn_cmd->add_option("--strategy", dn.strategy, "ml | mmse | fixed");
    auto* vz = dn_cmd->add_option("--var-z", dn.var_z, "Known noise variance");
    auto* wnr = dn_cmd->add_option("--wnr-db", dn.wnr_db, "WNR in dB (var_z inferred)");
    auto* lp = dn_cmd->add_option("--lambda-prime", dn.lambda_prime,
                                  "Normalized population temperature (fixed strategy)");
    dn_cmd->add_option("--beta", dn.beta, "Bias temperature (fixed strategy)");
    dn_cmd->add_option("--mask", dn.mask, "Noise-free mask file");
    dn_cmd->callback([&] {
        dn.has_var_z = vz->count() > 0;
        dn.has_wnr = wnr->count() > 0;
        dn.has_lambda = lp->count() > 0;
        run_denoise(dn);
    });

    std::string infer_config, infer_out, infer_agg_out;
    std::vector<std::string> infer_sets;
    auto* infer_cmd =
        app.add_subcommand("infer-sweep", "Noisy-inference accuracy sweep over WNRs");
    infer_cmd->add_option("--config", infer_config, "Run configuration file");
    infer_cmd->add_option("--out", infer_out, "Per-repeat CSV path")->required();
    infer_cmd->add_option("--agg-out", infer_agg_out, "Aggregated CSV path");
    infer_cmd->add_option("--set", infer_sets, "Override config entries (key=value)");
    infer_cmd->callback([&] { run_infer_sweep(infer_config, infer_sets, infer_out, infer_agg_out); });

    std::string feel_config, feel_out;
    std::vector<std::string> feel_sets;
    auto* feel_cmd = app.add_subcommand("feel", "Federated learning simulation with OAC noise");
    feel_cmd->add_option("--config", feel_config, "Run configuration file");
    feel_cmd->add_option("--out", feel_out, "History CSV path")->required();
    feel_cmd->add_option("--set", feel_sets, "Override config entries (key=value)");
    feel_cmd->callback([&] { run_feel_cmd(feel_config, feel_sets, feel_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace nnd::cli
