// Quadratic network case study: y(x,w) = sum_i w_i^2 (x_i - c)^2 with
// x_i ~ U(-1,1), w_i ~ N(0, var_w) and AWGN of variance var_z on the weights.
// The expected squared output error of an affine-denoised network has an
// exact closed form here, so the optimal (lambda, beta) and the gain over ML
// can be computed and cross-checked against Monte Carlo.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nnd/rng.hpp"

namespace nnd {

struct QuadConfig {
    int dim = 1;      // weight dimension d
    double c = 0.0;   // input offset constant
    double var_w = 1.0;
    double var_z = 1.0;
};

// Input moments of the offset coordinate x - c for x ~ U(-1,1):
// c1  = E[(x-c)^4] = c^4 + 2c^2 + 1/5   (> 0)
// c2  = E[(x-c)^2]^2 = (c^2 + 1/3)^2    (> 0)
// c1p = 3 c1 d + c2 d(d-1)
// c2p = c1 d + c2 d(d-1)                so c1p - c2p = 2 c1 d
struct QuadConstants {
    double c1 = 0.0;
    double c2 = 0.0;
    double c1p = 0.0;
    double c2p = 0.0;
};

QuadConstants quad_constants(const QuadConfig& cfg);

// Exact network output for concrete vectors.
double quad_forward(std::span<const double> x, std::span<const double> w, double c);

// Closed-form expected squared output error at affine factors (theta, rho).
double quad_error_closed(double theta, double rho, const QuadConfig& cfg);

// Closed form evaluated at the ML point (theta, rho) = (1, 0):
// c1p var_z^2 + 4 c1 d var_w var_z.
double quad_ml_error(const QuadConfig& cfg);

struct Hessian2 {
    double dtheta2 = 0.0;
    double drho2 = 0.0;
    double dcross = 0.0;

    std::pair<double, double> eigenvalues() const; // ascending
};

// Second derivatives of quad_error_closed in (theta, rho).
Hessian2 quad_hessian(double theta, double rho, const QuadConfig& cfg);

enum class CriticalKind { local_max, local_min, saddle, global_min };

struct CriticalPoint {
    std::string name; // "P1".."P4", "P3m" (the mirrored global minimum)
    double theta = 0.0;
    double rho = 0.0;
    CriticalKind kind = CriticalKind::local_min;
    bool feasible = false; // theta >= var_w/(var_w+var_z)
};

// The five stationary points of the error surface, kinds assigned by the
// Hessian eigenvalues (threshold 1e-9 * (1 + |trace|)). The global minima are
// +/-theta3 on the rho = 0 axis; only the positive one is feasible. P4 has
// det H = 64 c2p (c2p - c1p) var_w^6 var_z^2 / (var_w^2 + var_z^2) < 0 for
// every valid configuration, so it always classifies as a saddle.
std::vector<CriticalPoint> quad_critical_points(const QuadConfig& cfg);

struct OptimalTemperature {
    double lambda_star = 0.0;
    double beta_star = 0.0;
};

// Minimizer of the closed-form error over the feasible set; maps through
// denoise_factors to exactly the feasible global minimum's theta.
OptimalTemperature quad_optimal_params(const QuadConfig& cfg);

// Relative error reduction of the optimal denoiser over ML, in [0, 1).
double quad_gain(const QuadConfig& cfg);

struct McEstimate {
    double mean = 0.0;
    double std_err = 0.0;
};

// Monte Carlo estimate of the expected squared output error. Trial t draws
// from substream(seed, t): x (dim uniforms), then w, then z (dim normals
// each); the reduction runs in trial order, so results are bitwise
// reproducible and independent of any future parallel split.
McEstimate quad_mc_error(double theta, double rho, const QuadConfig& cfg,
                         std::uint64_t trials, SeedSpec seed);

} // namespace nnd
