#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "treeh2/format.hpp"
#include "treeh2/metrics.hpp"

namespace treeh2 {

/// Independent white noise of intensity alpha on every node:
/// E[xi xi^T] = (alpha/2) I delta(t - tau).
struct NoiseModel {
    double alpha = 2.0;
    std::uint64_t seed = 0;
};

struct SimParams {
    Eigen::VectorXd x0;     // empty = start at the origin
    double dt = 0.0;        // <= 0 selects 1e-3 / max Re(lambda)
    long long steps = 0;
    long long burnin = 0;
    long long stride = 0;   // <= 0 selects ~2000 recorded samples
};

/// Euler-Maruyama trajectory of dx = -L x dt + dW with the recorded series
/// subsampled at `stride`, plus a batch-means estimator of the stationary
/// mean-square dispersion E[||y||^2].
struct SimulationRun {
    int n = 0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    double dt = 0.0;
    long long steps = 0, burnin = 0, stride = 0;

    std::vector<double> times;
    std::vector<double> dispersion_sq; // ||Qx||^2 at recorded samples
    std::vector<double> mean_state;    // mean of x at recorded samples
    std::vector<Eigen::VectorXd> states;

    double estimate = 0.0; // batch-means estimate of stationary E[||y||^2]
    double std_error = 0.0;
    int batches = 20;

    double h2_predicted = 0.0; // H from the Lyapunov route
    double target = 0.0;       // (alpha/2) H^2 = analytic stationary E[||y||^2]
    double z_score = 0.0;
};

inline SimulationRun simulate(const WeightedDigraph& g, const NoiseModel& noise,
                              const SimParams& params) {
    if (!is_connected(g)) fail(Errc::NotConnected, "simulation needs a connected graph");
    if (noise.alpha < 0.0) fail(Errc::InvalidParameters, "noise intensity must be >= 0");
    if (params.steps <= 0) fail(Errc::InvalidParameters, "step count must be positive");
    if (params.burnin < 0 || params.burnin >= params.steps)
        fail(Errc::InvalidParameters, "burn-in must satisfy 0 <= burnin < steps");

    const int n = g.node_count();
    Eigen::MatrixXd l = laplacian(g);

    double max_re = 0.0;
    for (const auto& ev : spectral_summary(g).eigenvalues) max_re = std::max(max_re, ev.real());

    double dt = params.dt;
    if (dt <= 0.0) dt = 1e-3 / max_re;
    if (!(dt < 2.0 / max_re))
        fail(Errc::UnstableStep, "dt must satisfy dt < 2 / max Re(lambda) = " + fmt12(2.0 / max_re));

    Eigen::VectorXd x = params.x0;
    if (x.size() == 0) x = Eigen::VectorXd::Zero(n);
    if (x.size() != n) fail(Errc::InvalidParameters, "initial state has wrong dimension");

    long long stride = params.stride;
    if (stride <= 0) stride = std::max<long long>(1, params.steps / 2000);

    SimulationRun run;
    run.n = n;
    run.alpha = noise.alpha;
    run.seed = noise.seed;
    run.dt = dt;
    run.steps = params.steps;
    run.burnin = params.burnin;
    run.stride = stride;

    GramianSolution gram = h2_lyapunov(g);
    run.h2_predicted = gram.h2;
    run.target = 0.5 * noise.alpha * gram.h2 * gram.h2;

    Eigen::MatrixXd q = projection_basis(n).q;
    std::mt19937_64 rng(noise.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double noise_coeff = std::sqrt(noise.alpha * dt / 2.0);

    const long long post = params.steps - params.burnin;
    const long long batch_len = post / run.batches;
    if (batch_len < 1) fail(Errc::InvalidParameters, "too few post-burn-in samples for 20 batches");
    std::vector<double> batch_sum(run.batches, 0.0);

    auto record = [&](long long step) {
        run.times.push_back(step * dt);
        run.dispersion_sq.push_back((q * x).squaredNorm());
        run.mean_state.push_back(x.mean());
        run.states.push_back(x);
    };
    record(0);

    Eigen::VectorXd eta(n);
    for (long long step = 1; step <= params.steps; ++step) {
        for (int i = 0; i < n; ++i) eta(i) = normal(rng);
        x += dt * (-(l * x)) + noise_coeff * eta;
        if (step > params.burnin) {
            long long idx = (step - params.burnin - 1) / batch_len;
            if (idx < run.batches) batch_sum[idx] += (q * x).squaredNorm();
        }
        if (step % stride == 0) record(step);
    }

    double mean = 0.0;
    for (double s : batch_sum) mean += s / batch_len;
    mean /= run.batches;
    double var = 0.0;
    for (double s : batch_sum) {
        double b = s / batch_len - mean;
        var += b * b;
    }
    var /= (run.batches - 1);
    run.estimate = mean;
    run.std_error = std::sqrt(var / run.batches);
    run.z_score = run.std_error > 0.0 ? (run.estimate - run.target) / run.std_error : 0.0;
    return run;
}

/// The recorded mean-of-state series (the projection of the dynamics onto
/// 1_N performs a random walk under noise).
inline const std::vector<double>& mean_state_series(const SimulationRun& run) {
    return run.mean_state;
}

/// Estimated growth rate of Var[mean(x)] per unit time from squared increments
/// of the recorded mean series; theory predicts alpha/(2N) for undirected
/// graphs.
struct MeanDiagnostics {
    double slope = 0.0;
    double slope_theory = 0.0;
    double std_error = 0.0;
    int windows = 0;
};

inline MeanDiagnostics mean_variance_slope(const SimulationRun& run) {
    MeanDiagnostics diag;
    diag.slope_theory = run.alpha / (2.0 * run.n);
    const double tau = run.stride * run.dt;
    double sum_sq = 0.0;
    int m = 0;
    for (size_t i = 1; i < run.mean_state.size(); ++i) {
        double inc = run.mean_state[i] - run.mean_state[i - 1];
        sum_sq += inc * inc;
        ++m;
    }
    if (m == 0 || tau <= 0.0) return diag;
    diag.windows = m;
    diag.slope = sum_sq / m / tau;
    diag.std_error = std::sqrt(2.0 / m) * diag.slope;
    return diag;
}

/// Run series as CSV: t, ||y||^2, mean(x).
inline std::string run_csv(const SimulationRun& run) {
    std::ostringstream out;
    out << "t,dispersion_sq,mean_state\n";
    for (size_t i = 0; i < run.times.size(); ++i)
        out << fmt12(run.times[i]) << "," << fmt12(run.dispersion_sq[i]) << ","
            << fmt12(run.mean_state[i]) << "\n";
    return out.str();
}

inline nlohmann::ordered_json run_summary_json(const SimulationRun& run) {
    nlohmann::ordered_json j;
    j["h2_predicted"] = round12(run.h2_predicted);
    j["e_dispersion_sq"] = round12(run.estimate);
    j["stderr"] = round12(run.std_error);
    j["z_score"] = round12(run.z_score);
    nlohmann::ordered_json p;
    p["n"] = run.n;
    p["alpha"] = round12(run.alpha);
    p["seed"] = run.seed;
    p["dt"] = round12(run.dt);
    p["steps"] = run.steps;
    p["burnin"] = run.burnin;
    p["stride"] = run.stride;
    p["batches"] = run.batches;
    j["params"] = std::move(p);
    return j;
}

} // namespace treeh2
