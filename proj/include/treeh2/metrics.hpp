#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <vector>

#include "json.hpp"

#include "treeh2/format.hpp"
#include "treeh2/graph.hpp"
#include "treeh2/projection.hpp"

namespace treeh2 {

/// Laplacian spectrum sorted ascending by real part (ties by imaginary part).
struct SpectralSummary {
    std::vector<std::complex<double>> eigenvalues;
    double algebraic_connectivity = 0.0; // Re(lambda_2)
};

inline SpectralSummary spectral_summary(const WeightedDigraph& g) {
    const int n = g.node_count();
    Eigen::MatrixXd l = laplacian(g);
    SpectralSummary s;
    s.eigenvalues.reserve(n);
    if (g.is_undirected()) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
        for (int i = 0; i < n; ++i) s.eigenvalues.emplace_back(es.eigenvalues()(i), 0.0);
    } else {
        Eigen::EigenSolver<Eigen::MatrixXd> es(l);
        for (int i = 0; i < n; ++i) s.eigenvalues.push_back(es.eigenvalues()(i));
        std::sort(s.eigenvalues.begin(), s.eigenvalues.end(),
                  [](const std::complex<double>& a, const std::complex<double>& b) {
                      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
                  });
    }
    if (n >= 2) s.algebraic_connectivity = s.eigenvalues[1].real();
    return s;
}

/// Reduced Laplacian with the library's deterministic projection basis.
inline Eigen::MatrixXd reduced_laplacian(const WeightedDigraph& g) {
    return reduce_with_basis(laplacian(g), projection_basis(g.node_count()).q);
}

/// H = sqrt(sum_{i>=2} 1/(2 lambda_i)) for undirected connected graphs.
inline double h2_eigen(const WeightedDigraph& g) {
    if (!g.is_undirected()) fail(Errc::NotUndirected, "eigenvalue H2 formula needs an undirected graph");
    if (!is_connected(g)) fail(Errc::NotConnected, "H2 undefined for disconnected graphs");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian(g), Eigen::EigenvaluesOnly);
    double sum = 0.0;
    for (int i = 1; i < g.node_count(); ++i) sum += 1.0 / (2.0 * es.eigenvalues()(i));
    return std::sqrt(sum);
}

/// Sigma solving L_bar Sigma + Sigma L_bar^T = I, and H = sqrt(tr(Sigma)).
struct GramianSolution {
    Eigen::MatrixXd sigma;
    double h2 = 0.0;
    double residual = 0.0; // max-norm of L_bar Sigma + Sigma L_bar^T - I
};

namespace detail {

/// Dense solve of the vectorized system ((I kron A) + (A kron I)) vec(X) = vec(C),
/// i.e. A X + X A^T = C. O(m^6): adequate at desk scale, guarded by callers.
inline Eigen::MatrixXd lyapunov_solve(const Eigen::MatrixXd& a, const Eigen::MatrixXd& c) {
    const int m = static_cast<int>(a.rows());
    if (m == 0) return Eigen::MatrixXd(0, 0);
    Eigen::MatrixXd big = Eigen::MatrixXd::Zero(m * m, m * m);
    // column-major vec: entry (r, c) of X sits at index c*m + r
    for (int col = 0; col < m; ++col)
        for (int r = 0; r < m; ++r) {
            for (int s = 0; s < m; ++s) big(col * m + r, col * m + s) += a(r, s); // I kron A
            for (int k = 0; k < m; ++k) big(col * m + r, k * m + r) += a(col, k); // A kron I
        }
    Eigen::VectorXd rhs(m * m);
    for (int col = 0; col < m; ++col)
        for (int r = 0; r < m; ++r) rhs(col * m + r) = c(r, col);
    Eigen::VectorXd x = big.partialPivLu().solve(rhs);
    Eigen::MatrixXd sol(m, m);
    for (int col = 0; col < m; ++col)
        for (int r = 0; r < m; ++r) sol(r, col) = x(col * m + r);
    return sol;
}

} // namespace detail

/// Size guard for the vectorized Lyapunov solve (O(N^6) work, O(N^4) memory).
inline constexpr int kLyapunovMaxNodes = 60;

inline GramianSolution h2_lyapunov(const WeightedDigraph& g) {
    if (!is_connected(g)) fail(Errc::NotConnected, "-L_bar is Hurwitz only for connected graphs");
    if (g.node_count() > kLyapunovMaxNodes)
        fail(Errc::SizeGuardExceeded,
             "Lyapunov solve guarded to N <= " + std::to_string(kLyapunovMaxNodes));
    if (g.node_count() == 1) return GramianSolution{Eigen::MatrixXd(0, 0), 0.0, 0.0};
    Eigen::MatrixXd lbar = reduced_laplacian(g);
    const int m = static_cast<int>(lbar.rows());
    Eigen::MatrixXd sigma = detail::lyapunov_solve(lbar, Eigen::MatrixXd::Identity(m, m));
    sigma = 0.5 * (sigma + sigma.transpose().eval());
    GramianSolution sol;
    sol.residual = (lbar * sigma + sigma * lbar.transpose() - Eigen::MatrixXd::Identity(m, m))
                       .cwiseAbs()
                       .maxCoeff();
    if (!std::isfinite(sol.residual) || sol.residual > 1e-8)
        fail(Errc::LyapunovSolveFailed, "residual " + fmt12(sol.residual));
    sol.sigma = std::move(sigma);
    sol.h2 = std::sqrt(sol.sigma.trace());
    return sol;
}

/// Pairwise effective resistances with the Kirchhoff index (sum over pairs).
struct ResistanceMatrix {
    Eigen::MatrixXd r;
    double kirchhoff = 0.0;
};

namespace detail {

inline ResistanceMatrix resistances_from_gram(const Eigen::MatrixXd& x) {
    const int n = static_cast<int>(x.rows());
    ResistanceMatrix rm;
    rm.r = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double rij = x(i, i) + x(j, j) - x(i, j) - x(j, i);
            rm.r(i, j) = rij;
            rm.r(j, i) = rij;
            rm.kirchhoff += rij;
        }
    return rm;
}

} // namespace detail

/// Resistances via the Laplacian pseudoinverse L^dagger = Q^T L_bar^{-1} Q.
inline ResistanceMatrix resistance_undirected(const WeightedDigraph& g) {
    if (!g.is_undirected()) fail(Errc::NotUndirected, "effective resistance needs an undirected graph");
    if (!is_connected(g)) fail(Errc::NotConnected, "effective resistance needs a connected graph");
    if (g.node_count() == 1) return ResistanceMatrix{Eigen::MatrixXd::Zero(1, 1), 0.0};
    Eigen::MatrixXd q = projection_basis(g.node_count()).q;
    Eigen::MatrixXd lbar = reduce_with_basis(laplacian(g), q);
    Eigen::MatrixXd pinv = q.transpose() * lbar.partialPivLu().solve(q);
    return detail::resistances_from_gram(pinv);
}

/// Directed resistances r_ij = X_ii + X_jj - 2 X_ij with X = 2 Q^T Sigma Q.
/// Coincides with resistance_undirected on symmetric inputs and satisfies
/// H = sqrt(K_f / 2N) with H from the Lyapunov route.
inline ResistanceMatrix resistance_directed(const WeightedDigraph& g) {
    GramianSolution sol = h2_lyapunov(g);
    if (g.node_count() == 1) return ResistanceMatrix{Eigen::MatrixXd::Zero(1, 1), 0.0};
    Eigen::MatrixXd q = projection_basis(g.node_count()).q;
    Eigen::MatrixXd x = 2.0 * q.transpose() * sol.sigma * q;
    return detail::resistances_from_gram(x);
}

/// Exact integer Kirchhoff index of a unit-weight tree: the pairwise distance
/// sum (equals the Wiener index on trees). No floating point anywhere.
inline long long kirchhoff_tree_exact(const WeightedDigraph& g) {
    if (!g.is_undirected() || g.undirected_edge_count() != g.node_count() - 1 || !is_connected(g))
        fail(Errc::NotTree, "exact Kirchhoff index is defined for trees");
    if (!g.unit_weights()) fail(Errc::NonUnitWeights, "exact Kirchhoff index needs unit weights");
    long long total = 0;
    for (int s = 0; s < g.node_count(); ++s) {
        std::vector<int> dist = bfs_distances(g, s);
        for (int j = s + 1; j < g.node_count(); ++j) total += dist[j];
    }
    return total;
}

/// Wiener index: sum of pairwise distances of an undirected connected graph.
inline double wiener_index(const WeightedDigraph& g) {
    if (!g.is_undirected()) fail(Errc::NotUndirected, "Wiener index needs an undirected graph");
    if (!is_connected(g)) fail(Errc::NotConnected, "Wiener index needs a connected graph");
    DistanceMatrix dm = distances(g);
    double w = 0.0;
    for (int i = 0; i < g.node_count(); ++i)
        for (int j = i + 1; j < g.node_count(); ++j) w += dm.d(i, j);
    return w;
}

/// H = sqrt(K_f / (2N)).
inline double h2_from_kirchhoff(double kirchhoff, int n) { return std::sqrt(kirchhoff / (2.0 * n)); }

enum class H2Method { Eig, Lyap, Resist, All };

/// Per-graph JSON report. Fields that do not apply (or were not requested)
/// are null; numbers carry 12 significant digits.
inline nlohmann::ordered_json metrics_report(const WeightedDigraph& g, H2Method method = H2Method::All) {
    const bool undirected = g.is_undirected();
    const bool connected = is_connected(g);

    nlohmann::ordered_json j;
    j["n"] = g.node_count();
    j["undirected"] = undirected;
    j["connected"] = connected;

    SpectralSummary s = spectral_summary(g);
    nlohmann::ordered_json evs = nlohmann::ordered_json::array();
    for (const auto& ev : s.eigenvalues)
        evs.push_back({round12(ev.real()), round12(ev.imag())});
    j["eigenvalues"] = evs;

    auto want = [&](H2Method m) { return method == m || method == H2Method::All; };

    j["h2_eigen"] = nullptr;
    if (want(H2Method::Eig) && undirected && connected) j["h2_eigen"] = round12(h2_eigen(g));

    j["h2_lyapunov"] = nullptr;
    if (want(H2Method::Lyap) && connected) j["h2_lyapunov"] = round12(h2_lyapunov(g).h2);

    j["kirchhoff"] = nullptr;
    if (want(H2Method::Resist) && connected) {
        ResistanceMatrix rm = undirected ? resistance_undirected(g) : resistance_directed(g);
        j["kirchhoff"] = round12(rm.kirchhoff);
    }

    j["wiener"] = nullptr;
    if (undirected && connected) j["wiener"] = round12(wiener_index(g));

    DistanceMatrix dm = distances(g);
    j["diameter"] = nullptr;
    if (std::isfinite(dm.diameter)) j["diameter"] = round12(dm.diameter);
    return j;
}

} // namespace treeh2
