#include "nnd/quad_study.hpp"

#include <cmath>
#include <stdexcept>

namespace nnd {

namespace {

void check_config(const QuadConfig& cfg) {
    if (cfg.dim < 1) throw std::invalid_argument("QuadConfig: dim must be >= 1");
    if (!(cfg.var_w > 0.0) || !(cfg.var_z > 0.0))
        throw std::invalid_argument("QuadConfig: variances must be > 0");
}

// Welford accumulator; mean plus standard error of the mean.
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

QuadConstants quad_constants(const QuadConfig& cfg) {
    check_config(cfg);
    const double c2 = cfg.c * cfg.c;
    const double d = static_cast<double>(cfg.dim);
    QuadConstants k;
    // c1 = E[(x-c)^4], c2 = E[(x-c)^2]^2 for x ~ U(-1,1).
    k.c1 = c2 * c2 + 2.0 * c2 + 0.2;
    const double t = c2 + 1.0 / 3.0;
    k.c2 = t * t;
    k.c1p = 3.0 * k.c1 * d + k.c2 * d * (d - 1.0);
    k.c2p = k.c1 * d + k.c2 * d * (d - 1.0);
    return k;
}

double quad_forward(std::span<const double> x, std::span<const double> w, double c) {
    if (x.size() != w.size())
        throw std::invalid_argument("quad_forward: length mismatch");
    double y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i] - c;
        y += w[i] * w[i] * xi * xi;
    }
    return y;
}

double quad_error_closed(double theta, double rho, const QuadConfig& cfg) {
    const QuadConstants k = quad_constants(cfg);
    const double sw2 = cfg.var_w, sz2 = cfg.var_z;
    const double s = sw2 + sz2;
    const double t2 = theta * theta;
    const double r2 = rho * rho;
    return k.c1p * (t2 * t2 * s * s - 2.0 * t2 * sw2 * sw2 + 2.0 * t2 * r2 * s + sw2 * sw2) +
           k.c2p * (r2 * r2 - 2.0 * t2 * sw2 * sz2 - 2.0 * sw2 * r2);
}

double quad_ml_error(const QuadConfig& cfg) {
    const QuadConstants k = quad_constants(cfg);
    return k.c1p * cfg.var_z * cfg.var_z +
           4.0 * k.c1 * static_cast<double>(cfg.dim) * cfg.var_w * cfg.var_z;
}

std::pair<double, double> Hessian2::eigenvalues() const {
    const double half_sum = 0.5 * (dtheta2 + drho2);
    const double half_diff = 0.5 * (dtheta2 - drho2);
    const double disc = std::sqrt(half_diff * half_diff + dcross * dcross);
    return {half_sum - disc, half_sum + disc};
}

Hessian2 quad_hessian(double theta, double rho, const QuadConfig& cfg) {
    const QuadConstants k = quad_constants(cfg);
    const double sw2 = cfg.var_w, sz2 = cfg.var_z;
    const double s = sw2 + sz2;
    const double t2 = theta * theta;
    const double r2 = rho * rho;
    Hessian2 h;
    h.dtheta2 = 4.0 * (3.0 * k.c1p * s * s * t2 + k.c1p * s * r2 - k.c1p * sw2 * sw2 -
                       k.c2p * sw2 * sz2);
    h.drho2 = 4.0 * (k.c1p * s * t2 - k.c2p * sw2 + 3.0 * k.c2p * r2);
    h.dcross = 8.0 * k.c1p * s * theta * rho;
    return h;
}

namespace {

CriticalKind classify(const Hessian2& h) {
    const auto [lo, hi] = h.eigenvalues();
    const double tol = 1e-9 * (1.0 + std::abs(h.dtheta2 + h.drho2));
    if (lo > tol) return CriticalKind::local_min;
    if (hi < -tol) return CriticalKind::local_max;
    return CriticalKind::saddle;
}

} // namespace

std::vector<CriticalPoint> quad_critical_points(const QuadConfig& cfg) {
    const QuadConstants k = quad_constants(cfg);
    const double sw2 = cfg.var_w, sz2 = cfg.var_z;
    const double s = sw2 + sz2;
    const double sigma_w = std::sqrt(sw2);
    const double theta3 = sw2 / s * std::sqrt(1.0 + k.c2p * sz2 / (k.c1p * sw2));
    const double theta4 = std::sqrt(k.c2p / k.c1p) * sigma_w * std::sqrt(sz2) / s;
    const double rho4 = sw2 / std::sqrt(s);
    const double feas_min = sw2 / s;

    std::vector<CriticalPoint> pts;
    auto add = [&](std::string name, double theta, double rho) {
        CriticalPoint p;
        p.name = std::move(name);
        p.theta = theta;
        p.rho = rho;
        p.kind = classify(quad_hessian(theta, rho, cfg));
        p.feasible = theta >= feas_min;
        pts.push_back(std::move(p));
    };
    add("P1", 0.0, 0.0);
    add("P2", 0.0, sigma_w);
    add("P3", theta3, 0.0);
    add("P4", theta4, rho4);
    add("P3m", -theta3, 0.0);
    // The two +/-theta3 stationary points attain the surface minimum.
    pts[2].kind = CriticalKind::global_min;
    pts[4].kind = CriticalKind::global_min;
    return pts;
}

OptimalTemperature quad_optimal_params(const QuadConfig& cfg) {
    const QuadConstants k = quad_constants(cfg);
    const double sw2 = cfg.var_w, sz2 = cfg.var_z;
    OptimalTemperature opt;
    opt.lambda_star = 1.0 / (2.0 * sw2) + 1.0 / (2.0 * sz2) -
                      std::sqrt(k.c1p * sw2 / (k.c1p * sw2 + k.c2p * sz2)) *
                          (sw2 + sz2) / (2.0 * sw2 * sz2);
    opt.beta_star = 0.0;
    return opt;
}

double quad_gain(const QuadConfig& cfg) {
    const QuadConstants k = quad_constants(cfg);
    const double sw2 = cfg.var_w, sz2 = cfg.var_z;
    const double s = sw2 + sz2;
    const double a = 2.0 * k.c1p * sw2 - k.c2p * sw2 + k.c1p * sz2;
    const double b = 2.0 * k.c1p * sw2 - 2.0 * k.c2p * sw2 + k.c1p * sz2;
    return a * a * sz2 / (k.c1p * s * s * b);
}

McEstimate quad_mc_error(double theta, double rho, const QuadConfig& cfg,
                         std::uint64_t trials, SeedSpec seed) {
    // The sampler also serves noiseless sanity checks, so var_z = 0 is legal
    // here even though the closed-form analysis assumes var_z > 0.
    if (cfg.dim < 1) throw std::invalid_argument("quad_mc_error: dim must be >= 1");
    if (!(cfg.var_w > 0.0) || cfg.var_z < 0.0)
        throw std::invalid_argument("quad_mc_error: need var_w > 0 and var_z >= 0");
    if (trials == 0) throw std::invalid_argument("quad_mc_error: trials must be >= 1");
    const double sigma_w = std::sqrt(cfg.var_w);
    const double sigma_z = std::sqrt(cfg.var_z);
    const std::size_t d = static_cast<std::size_t>(cfg.dim);

    std::vector<double> x(d), w(d), z(d);
    RunningMoments acc;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(substream(seed, t));
        for (std::size_t i = 0; i < d; ++i) x[i] = rng.uniform(-1.0, 1.0);
        for (std::size_t i = 0; i < d; ++i) w[i] = sigma_w * rng.normal();
        for (std::size_t i = 0; i < d; ++i) z[i] = sigma_z * rng.normal();
        double diff = 0.0; // y_denoised - y_clean, accumulated per coordinate
        for (std::size_t i = 0; i < d; ++i) {
            const double xi = x[i] - cfg.c;
            const double denoised = theta * (w[i] + z[i]) + rho;
            diff += (denoised * denoised - w[i] * w[i]) * xi * xi;
        }
        acc.push(diff * diff);
    }
    return McEstimate{acc.mean, acc.std_err()};
}

} // namespace nnd
