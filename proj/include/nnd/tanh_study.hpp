// Three-layer tanh network case study: y(x,w) = sum_i v_i tanh(u_i x) with
// one input, n_hidden hidden neurons (no biases) and a linear output. Inputs
// are U(-c,c), weights N(0, var_w), weight noise N(0, var_z). The expected
// squared output error of an affine-denoised network admits a small-c
// polynomial approximation, verified here against exact Monte Carlo.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nnd/quad_study.hpp" // McEstimate
#include "nnd/rng.hpp"

namespace nnd {

struct TanhConfig {
    int n_hidden = 1;  // N; total weight count d = 2N
    double c = 0.4;    // input range half-width; approximation degrades past ~0.5
    double var_w = 1.0;
    double var_z = 1.0;
};

// Input->hidden weights u and hidden->output weights v, each length N. The
// flat weight vector is [u, v].
struct TanhWeights {
    std::vector<double> u;
    std::vector<double> v;
};

double tanh_forward(double x, const TanhWeights& w);

// Exact denoised output: sum_i (theta v_i + theta dv_i + rho) *
// tanh((theta (u_i + du_i) + rho) x), with z = [du, dv] of length 2N.
double tanh_denoised_forward(double x, const TanhWeights& w, std::span<const double> z,
                             double theta, double rho);

// Second-order expansion of E_z[denoised output] around z = 0:
// y0 + var_z * sum_i (theta v_i + rho) theta^2 x^2 (g_i^3 - g_i),
// g_i = tanh((theta u_i + rho) x). Error is O(var_z^2).
double tanh_taylor_mean_output(double x, const TanhWeights& w, double theta, double rho,
                               double var_z);

// Small-c polynomial approximation of the expected squared output error
// (terms of order c^4 and higher dropped).
double tanh_error_closed(double theta, double rho, const TanhConfig& cfg);

struct TanhOptimal {
    double lambda_star = 0.0;
    double beta_star = 0.0;
    double theta_star = 0.0; // sqrt(var_w / (var_w + 2 var_z))
};

TanhOptimal tanh_optimal_params(const TanhConfig& cfg);

// Error reduction of the optimal denoiser over ML: 2 var_z / (var_w + 2 var_z).
double tanh_gain(const TanhConfig& cfg);

// Monte Carlo expected squared output error; per-trial substreams, trial-order
// reduction, bitwise reproducible. Draw order per trial: x, u, v, z.
McEstimate tanh_mc_error(double theta, double rho, const TanhConfig& cfg,
                         std::uint64_t trials, SeedSpec seed);

struct CSweepRow {
    double c = 0.0;
    double closed_ml = 0.0;
    double mc_ml = 0.0;
    double mc_ml_std_err = 0.0;
    double closed_pb = 0.0;
    double mc_pb = 0.0;
    double mc_pb_std_err = 0.0;
};

// Closed-form vs Monte Carlo error at the ML point and at the optimal
// denoiser, one row per input half-width c.
std::vector<CSweepRow> tanh_c_sweep(const TanhConfig& cfg_template,
                                    std::span<const double> c_values,
                                    std::uint64_t trials, SeedSpec seed);

} // namespace nnd
