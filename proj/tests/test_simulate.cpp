#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "treeh2/families.hpp"
#include "treeh2/simulate.hpp"

#include "test_util.hpp"

using namespace treeh2;

namespace {

WeightedDigraph single_edge() { return build_graph(2, {{0, 1, 1.0}}, true); }

} // namespace

TEST_CASE("identical seeds give bit-identical trajectories", "[simulate]") {
    SimParams params;
    params.dt = 1e-3;
    params.steps = 20000;
    params.burnin = 2000;
    SimulationRun a = simulate(single_edge(), {2.0, 424242}, params);
    SimulationRun b = simulate(single_edge(), {2.0, 424242}, params);
    REQUIRE(a.dispersion_sq.size() == b.dispersion_sq.size());
    for (size_t i = 0; i < a.dispersion_sq.size(); ++i) {
        CHECK(a.dispersion_sq[i] == b.dispersion_sq[i]);
        CHECK(a.mean_state[i] == b.mean_state[i]);
    }
    CHECK(a.estimate == b.estimate);
    CHECK(run_csv(a) == run_csv(b));

    SimulationRun c = simulate(single_edge(), {2.0, 424243}, params);
    CHECK(a.dispersion_sq.back() != c.dispersion_sq.back());
}

TEST_CASE("stationary dispersion matches H^2 on the single edge (alpha=2)", "[simulate]") {
    SimParams params;
    params.dt = 1e-3;
    params.steps = 400000;
    params.burnin = 40000;
    SimulationRun run = simulate(single_edge(), {2.0, 20250114}, params);
    CHECK(run.h2_predicted == Catch::Approx(0.5).epsilon(1e-9));
    CHECK(run.target == Catch::Approx(0.25).epsilon(1e-12));
    CHECK(std::abs(run.z_score) <= 3.0);
    CHECK(std::abs(run.estimate - 0.25) / 0.25 <= 0.15);
}

TEST_CASE("noise-free dispersion decays at rate lambda_2", "[simulate]") {
    // x0 on the lambda_2 eigenvector of the single edge: exact exponential decay
    SimParams params;
    params.x0 = Eigen::VectorXd(2);
    params.x0 << 1.0, -1.0;
    params.dt = 1e-3;
    params.steps = 3000;
    params.burnin = 100;
    params.stride = 10;
    SimulationRun run = simulate(single_edge(), {0.0, 1}, params);

    // least-squares slope of log ||y|| over time
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (size_t i = 0; i < run.times.size(); ++i) {
        if (run.dispersion_sq[i] <= 0) continue;
        double x = run.times[i];
        double y = 0.5 * std::log(run.dispersion_sq[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    double lambda2 = 2.0;
    CHECK(std::abs(slope + lambda2) / lambda2 <= 0.10);

    // dispersion decreases monotonically without noise
    for (size_t i = 1; i < run.dispersion_sq.size(); ++i)
        CHECK(run.dispersion_sq[i] <= run.dispersion_sq[i - 1]);

    // undirected + alpha=0: the mean is conserved to machine precision
    for (double mval : run.mean_state) CHECK(std::abs(mval - 0.0) <= 1e-12);
}

TEST_CASE("analytic stationary covariance equals (alpha/2) Sigma", "[simulate]") {
    std::mt19937_64 rng(606);
    for (int rep = 0; rep < 8; ++rep) {
        int n = 2 + static_cast<int>(rng() % 8);
        WeightedDigraph g = testutil::random_connected_graph(rng, n, 0.3, false);
        double alpha = 0.5 + (rng() % 8) * 0.25;
        Eigen::MatrixXd lbar = reduced_laplacian(g);
        Eigen::MatrixXd p = detail::lyapunov_solve(
            lbar, (alpha / 2.0) * Eigen::MatrixXd::Identity(n - 1, n - 1));
        double sigma_trace = h2_lyapunov(g).sigma.trace();
        CHECK(std::abs(p.trace() - (alpha / 2.0) * sigma_trace) /
                  std::abs((alpha / 2.0) * sigma_trace) <=
              1e-10);
    }
}

TEST_CASE("dispersion series is invariant to the projection basis", "[simulate]") {
    WeightedDigraph g = materialize(blueprint_star(5));
    SimParams params;
    params.dt = 1e-3;
    params.steps = 5000;
    params.burnin = 200;
    params.stride = 50;
    SimulationRun run = simulate(g, {2.0, 777}, params);
    Eigen::MatrixXd q1 = projection_basis(5).q;
    Eigen::MatrixXd q2 = testutil::alt_projection_basis(5);
    REQUIRE(run.states.size() == run.dispersion_sq.size());
    for (size_t i = 0; i < run.states.size(); ++i) {
        double d1 = (q1 * run.states[i]).squaredNorm();
        double d2 = (q2 * run.states[i]).squaredNorm();
        CHECK(std::abs(d1 - d2) <= 1e-10 * std::max(1.0, d1));
        CHECK(run.dispersion_sq[i] == d1);
    }
}

TEST_CASE("variance of the mean grows at rate alpha/(2N)", "[simulate]") {
    SimParams params;
    params.dt = 1e-3;
    params.steps = 200000;
    params.burnin = 0;
    params.stride = 100;
    SimulationRun run = simulate(single_edge(), {2.0, 909090}, params);
    MeanDiagnostics diag = mean_variance_slope(run);
    CHECK(diag.slope_theory == Catch::Approx(0.5));
    CHECK(std::abs(diag.slope - diag.slope_theory) / diag.slope_theory <= 0.20);
    CHECK(diag.windows > 100);
}

TEST_CASE("directed graphs simulate without conservation claims", "[simulate]") {
    WeightedDigraph cycle = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}}, false);
    SimParams params;
    params.dt = 1e-3;
    params.steps = 30000;
    params.burnin = 3000;
    SimulationRun run = simulate(cycle, {2.0, 11}, params);
    CHECK(run.estimate > 0.0);
    CHECK(run.h2_predicted > 0.0);
}

TEST_CASE("simulate validates its inputs", "[simulate]") {
    SimParams params;
    params.dt = 1e-3;
    params.steps = 100;
    params.burnin = 10;
    CHECK_THROWS_AS(simulate(build_graph(3, {{0, 1, 1.0}}, true), {2.0, 0}, params), Error);

    SimParams unstable;
    unstable.dt = 1.5; // 2 / max lambda = 1 for the single edge
    unstable.steps = 100;
    unstable.burnin = 10;
    CHECK_THROWS_AS(simulate(single_edge(), {2.0, 0}, unstable), Error);

    SimParams bad_burn;
    bad_burn.dt = 1e-3;
    bad_burn.steps = 100;
    bad_burn.burnin = 100;
    CHECK_THROWS_AS(simulate(single_edge(), {2.0, 0}, bad_burn), Error);

    SimParams bad_alpha;
    bad_alpha.dt = 1e-3;
    bad_alpha.steps = 1000;
    bad_alpha.burnin = 100;
    CHECK_THROWS_AS(simulate(single_edge(), {-1.0, 0}, bad_alpha), Error);
}
