#include "nnd/tanh_study.hpp"

#include <cmath>
#include <stdexcept>

namespace nnd {

namespace {

void check_config(const TanhConfig& cfg, bool allow_zero_noise) {
    if (cfg.n_hidden < 1) throw std::invalid_argument("TanhConfig: n_hidden must be >= 1");
    if (!(cfg.c > 0.0)) throw std::invalid_argument("TanhConfig: c must be > 0");
    if (!(cfg.var_w > 0.0)) throw std::invalid_argument("TanhConfig: var_w must be > 0");
    if (allow_zero_noise ? cfg.var_z < 0.0 : !(cfg.var_z > 0.0))
        throw std::invalid_argument("TanhConfig: bad var_z");
}

struct RunningMoments {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    double std_err() const {
        if (n < 2) return 0.0;
        return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
    }
};

} // namespace

double tanh_forward(double x, const TanhWeights& w) {
    if (w.u.size() != w.v.size())
        throw std::invalid_argument("tanh_forward: |u| != |v|");
    double y = 0.0;
    for (std::size_t i = 0; i < w.u.size(); ++i) y += w.v[i] * std::tanh(w.u[i] * x);
    return y;
}

double tanh_denoised_forward(double x, const TanhWeights& w, std::span<const double> z,
                             double theta, double rho) {
    const std::size_t n = w.u.size();
    if (w.v.size() != n) throw std::invalid_argument("tanh_denoised_forward: |u| != |v|");
    if (z.size() != 2 * n)
        throw std::invalid_argument("tanh_denoised_forward: |z| != 2N");
    double y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u_hat = theta * (w.u[i] + z[i]) + rho;
        const double v_hat = theta * (w.v[i] + z[n + i]) + rho;
        y += v_hat * std::tanh(u_hat * x);
    }
    return y;
}

double tanh_taylor_mean_output(double x, const TanhWeights& w, double theta, double rho,
                               double var_z) {
    const std::size_t n = w.u.size();
    if (w.v.size() != n) throw std::invalid_argument("tanh_taylor_mean_output: |u| != |v|");
    double y0 = 0.0;
    double correction = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double g = std::tanh((theta * w.u[i] + rho) * x);
        y0 += (theta * w.v[i] + rho) * g;
        correction += (theta * w.v[i] + rho) * theta * theta * x * x * (g * g * g - g);
    }
    return y0 + var_z * correction;
}

double tanh_error_closed(double theta, double rho, const TanhConfig& cfg) {
    check_config(cfg, true);
    const double n = static_cast<double>(cfg.n_hidden);
    const double c2 = cfg.c * cfg.c;
    const double sw2 = cfg.var_w, sz2 = cfg.var_z;
    const double sw4 = sw2 * sw2;
    const double t2 = theta * theta;
    const double t4 = t2 * t2;
    const double r2 = rho * rho;
    const double r4 = r2 * r2;
    return (n / 3.0) * c2 * sw4 * t4
         - (2.0 * n / 3.0) * c2 * sw4 * t2
         + (2.0 * n / 3.0) * c2 * (sw2 + sz2) * t2 * r2
         + (2.0 * n * (n - 1.0) / 3.0) * sw2 * t2 * r4 * r2
         + (2.0 * n / 3.0) * c2 * sw2 * sz2 * t4
         + n * (n - 1.0) * sw4 * t4 * r4
         + (n * n / 3.0) * c2 * r4
         + (n * (n - 1.0) / 9.0) * r4 * r4
         + (n / 3.0) * c2 * sw4;
}

TanhOptimal tanh_optimal_params(const TanhConfig& cfg) {
    check_config(cfg, false);
    const double sw2 = cfg.var_w, sz2 = cfg.var_z;
    TanhOptimal opt;
    opt.lambda_star = 1.0 / (2.0 * sw2) + 1.0 / (2.0 * sz2) -
                      std::sqrt(1.0 / (4.0 * sz2 * sz2) + 1.0 / (2.0 * sw2 * sz2));
    opt.beta_star = 0.0;
    opt.theta_star = std::sqrt(sw2 / (sw2 + 2.0 * sz2));
    return opt;
}

double tanh_gain(const TanhConfig& cfg) {
    check_config(cfg, true);
    return 2.0 * cfg.var_z / (cfg.var_w + 2.0 * cfg.var_z);
}

McEstimate tanh_mc_error(double theta, double rho, const TanhConfig& cfg,
                         std::uint64_t trials, SeedSpec seed) {
    check_config(cfg, true);
    if (trials == 0) throw std::invalid_argument("tanh_mc_error: trials must be >= 1");
    const std::size_t n = static_cast<std::size_t>(cfg.n_hidden);
    const double sigma_w = std::sqrt(cfg.var_w);
    const double sigma_z = std::sqrt(cfg.var_z);

    TanhWeights w;
    w.u.resize(n);
    w.v.resize(n);
    std::vector<double> z(2 * n);
    RunningMoments acc;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(substream(seed, t));
        const double x = rng.uniform(-cfg.c, cfg.c);
        for (std::size_t i = 0; i < n; ++i) w.u[i] = sigma_w * rng.normal();
        for (std::size_t i = 0; i < n; ++i) w.v[i] = sigma_w * rng.normal();
        for (std::size_t i = 0; i < 2 * n; ++i) z[i] = sigma_z * rng.normal();
        const double diff = tanh_denoised_forward(x, w, z, theta, rho) - tanh_forward(x, w);
        acc.push(diff * diff);
    }
    return McEstimate{acc.mean, acc.std_err()};
}

std::vector<CSweepRow> tanh_c_sweep(const TanhConfig& cfg_template,
                                    std::span<const double> c_values,
                                    std::uint64_t trials, SeedSpec seed) {
    const double theta_star = tanh_optimal_params(cfg_template).theta_star;
    std::vector<CSweepRow> rows;
    rows.reserve(c_values.size());
    for (std::size_t i = 0; i < c_values.size(); ++i) {
        TanhConfig cfg = cfg_template;
        cfg.c = c_values[i];
        if (!(cfg.c > 0.0)) throw std::invalid_argument("tanh_c_sweep: c values must be > 0");
        CSweepRow row;
        row.c = cfg.c;
        row.closed_ml = tanh_error_closed(1.0, 0.0, cfg);
        row.closed_pb = tanh_error_closed(theta_star, 0.0, cfg);
        const McEstimate ml = tanh_mc_error(1.0, 0.0, cfg, trials, substream(seed, 2 * i));
        const McEstimate pb =
            tanh_mc_error(theta_star, 0.0, cfg, trials, substream(seed, 2 * i + 1));
        row.mc_ml = ml.mean;
        row.mc_ml_std_err = ml.std_err;
        row.mc_pb = pb.mean;
        row.mc_pb_std_err = pb.std_err;
        rows.push_back(row);
    }
    return rows;
}

} // namespace nnd
