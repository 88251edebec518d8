#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgraph/automorphism.hpp"
#include "qgraph/config.hpp"
#include "qgraph/eigh.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/matrix.hpp"

namespace qgraph {

// Equality: the standard theta SDP. VectorChromatic: additionally requires
// the witness to be entrywise nonnegative, which on the complement computes
// the vector chromatic number (the inequality-constrained relaxation of the
// S(m, alpha) representation); it never exceeds the equality-mode value.
enum class ThetaMode { Equality, VectorChromatic };

struct SdpResult {
    double value = 0.0;
    ComplexMatrix witness;  // PSD side of the splitting at convergence
    double primal_residual = 0.0;
    double dual_gap_estimate = 0.0;
    int iterations = 0;
};

namespace detail {

inline void project_diag_to_simplex(std::vector<double>& diag) {
    // Euclidean projection onto {d >= 0, sum d = 1}
    std::vector<double> u = diag;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0, theta = 0.0;
    int k = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        css += u[i];
        const double t = (css - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0) {
            theta = t;
            k = static_cast<int>(i + 1);
        }
    }
    if (k == 0) theta = (css - 1.0) / static_cast<double>(u.size());
    for (auto& d : diag) d = std::max(0.0, d - theta);
}

}  // namespace detail

// Lovasz theta of g: max <J, M> over tr(M) = 1, M_uv = 0 on edges, M PSD,
// solved by ADMM alternating the affine projection with a PSD-cone
// projection (warm-started Jacobi). Edgeless graphs return |V| analytically.
inline SdpResult lovasz_theta(const Graph& g, ThetaMode mode = ThetaMode::Equality,
                              double tol = 1e-7, const Caps& caps = default_caps(),
                              int max_iterations = 50000) {
    const int n = g.n();
    if (n > caps.sdp_max) throw CapError("lovasz_theta: graph exceeds SDP cap");
    if (n == 0) throw std::invalid_argument("lovasz_theta: empty graph");
    if (tol < 1e-8) throw std::invalid_argument("lovasz_theta: tol must be >= 1e-8");

    SdpResult out;
    if (g.edge_count() == 0) {
        // J/n is optimal: feasible, PSD, value n; the SDP is degenerate here
        out.value = n;
        out.witness = ComplexMatrix(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out.witness.at(i, j) = 1.0 / n;
        return out;
    }

    const std::size_t nn = static_cast<std::size_t>(n) * n;
    std::vector<double> M(nn, 0.0), Z(nn, 0.0), U(nn, 0.0), S(nn), V(nn), B(nn), tmp(nn);
    std::vector<double> diag(n), evals(n);
    for (int i = 0; i < n; ++i) Z[i * n + i] = 1.0 / n;
    for (std::size_t i = 0; i < nn; ++i) V[i] = 0.0;
    for (int i = 0; i < n; ++i) V[i * n + i] = 1.0;

    std::vector<char> edge_mask(nn, 0);
    for (const auto& [u, v] : g.edges()) {
        edge_mask[u * n + v] = 1;
        edge_mask[v * n + u] = 1;
    }

    double rho = 1.0;
    std::deque<double> window;
    double primal = 0.0, dual = 0.0, value = 0.0;
    int it = 0;

    auto project_constraints = [&](std::vector<double>& W) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double avg = 0.5 * (W[i * n + j] + W[j * n + i]);
                W[i * n + j] = avg;
                W[j * n + i] = avg;
            }
        for (std::size_t i = 0; i < nn; ++i)
            if (edge_mask[i]) W[i] = 0.0;
        if (mode == ThetaMode::VectorChromatic) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j && !edge_mask[i * n + j] && W[i * n + j] < 0.0)
                        W[i * n + j] = 0.0;
            for (int i = 0; i < n; ++i) diag[i] = W[i * n + i];
            detail::project_diag_to_simplex(diag);
            for (int i = 0; i < n; ++i) W[i * n + i] = diag[i];
        } else {
            double tr = 0.0;
            for (int i = 0; i < n; ++i) tr += W[i * n + i];
            const double shift = (1.0 - tr) / n;
            for (int i = 0; i < n; ++i) W[i * n + i] += shift;
        }
    };

    for (it = 1; it <= max_iterations; ++it) {
        // M-update: projection of Z - U + J/rho onto the constraint set
        for (std::size_t i = 0; i < nn; ++i) M[i] = Z[i] - U[i] + 1.0 / rho;
        project_constraints(M);

        // Z-update: PSD projection of M + U, warm-started on previous basis
        for (std::size_t i = 0; i < nn; ++i) S[i] = M[i] + U[i];
        // B = V' S V
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double acc = 0.0;
                for (int k = 0; k < n; ++k) acc += S[i * n + k] * V[k * n + j];
                tmp[i * n + j] = acc;
            }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double acc = 0.0;
                for (int k = 0; k < n; ++k) acc += V[k * n + i] * tmp[k * n + j];
                B[i * n + j] = acc;
            }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const double avg = 0.5 * (B[i * n + j] + B[j * n + i]);
                B[i * n + j] = avg;
                B[j * n + i] = avg;
            }
        double snorm = 0.0;
        for (std::size_t i = 0; i < nn; ++i) snorm += S[i] * S[i];
        snorm = std::sqrt(snorm);
        detail::jacobi_real(B, V, n, std::max(1e-12, 1e-3 * tol) * std::max(snorm, 1e-30), 64);
        for (int i = 0; i < n; ++i) evals[i] = std::max(0.0, B[i * n + i]);

        double dual_sq = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double acc = 0.0;
                for (int k = 0; k < n; ++k)
                    if (evals[k] != 0.0) acc += evals[k] * V[i * n + k] * V[j * n + k];
                const double prev = Z[i * n + j];
                Z[i * n + j] = acc;
                Z[j * n + i] = acc;
                const double dz = acc - prev;
                dual_sq += (i == j ? 1.0 : 2.0) * dz * dz;
            }
        dual = rho * std::sqrt(dual_sq);

        double primal_sq = 0.0;
        for (std::size_t i = 0; i < nn; ++i) {
            const double r = M[i] - Z[i];
            U[i] += r;
            primal_sq += r * r;
        }
        primal = std::sqrt(primal_sq);

        value = 0.0;
        for (std::size_t i = 0; i < nn; ++i) value += M[i];

        window.push_back(value);
        if (window.size() > 100) window.pop_front();

        double mnorm = 0.0;
        for (std::size_t i = 0; i < nn; ++i) mnorm += M[i] * M[i];
        mnorm = std::sqrt(mnorm);

        if (window.size() == 100 && std::max(primal, dual) < tol * (1.0 + mnorm)) {
            const auto [lo, hi] = std::minmax_element(window.begin(), window.end());
            if (*hi - *lo < tol) break;
        }

        if (it % 64 == 0) {
            if (primal > 10.0 * dual) {
                rho *= 2.0;
                for (auto& u : U) u *= 0.5;
            } else if (dual > 10.0 * primal) {
                rho *= 0.5;
                for (auto& u : U) u *= 2.0;
            }
        }
    }
    if (it > max_iterations)
        throw std::runtime_error("lovasz_theta: no convergence after " +
                                 std::to_string(max_iterations) +
                                 " iterations (primal " + std::to_string(primal) +
                                 ", dual " + std::to_string(dual) + ")");

    out.value = value;
    out.primal_residual = primal;
    out.dual_gap_estimate = dual;
    out.iterations = it;
    out.witness = ComplexMatrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.witness.at(i, j) = Z[i * n + j];
    return out;
}

inline SdpResult theta_bar(const Graph& g, ThetaMode mode = ThetaMode::Equality,
                           double tol = 1e-7, const Caps& caps = default_caps(),
                           int max_iterations = 50000) {
    return lovasz_theta(complement(g), mode, tol, caps, max_iterations);
}

// Closed form |V| * lmin / (lmin - lmax), valid only for regular
// edge-transitive graphs with at least one edge; refuses anything else.
inline double theta_spectral(const Graph& g, const Caps& caps = default_caps(),
                             const Tolerances& tol = default_tolerances()) {
    if (g.edge_count() == 0)
        throw std::invalid_argument("theta_spectral: empty edge set");
    if (!is_regular(g))
        throw std::invalid_argument("theta_spectral: graph is not regular");
    if (!is_edge_transitive(g, caps))
        throw std::invalid_argument("theta_spectral: graph is not edge-transitive");
    const auto eg = eigh(adjacency_matrix(g), tol, caps);
    const double lmin = eg.eigenvalues.front();
    const double lmax = eg.eigenvalues.back();
    return g.n() * lmin / (lmin - lmax);
}

// theta(g) * theta(complement g) = |V| for vertex-transitive g.
inline bool vt_product_identity_check(const Graph& g, double tol = 1e-3,
                                      const Caps& caps = default_caps()) {
    if (!is_vertex_transitive(g, caps))
        throw std::invalid_argument("vt_product_identity_check: graph is not vertex-transitive");
    const double th = lovasz_theta(g, ThetaMode::Equality, 1e-8, caps).value;
    const double thc = lovasz_theta(complement(g), ThetaMode::Equality, 1e-8, caps).value;
    return std::abs(th * thc - g.n()) <= tol * g.n();
}

// Unit vectors indexed by graph vertices with a fixed adjacent inner
// product alpha < 0 (equality mode), or <= alpha (vector-chromatic mode).
struct SVectorRepresentation {
    double alpha = -1.0;
    std::vector<std::vector<double>> vectors;
    bool inequality_mode = false;
};

struct SRepCheck {
    bool ok = true;
    double worst_norm_dev = 0.0;
    double worst_edge_dev = 0.0;
    int bad_u = -1, bad_v = -1;
};

inline SRepCheck validate_s_representation(const Graph& g, const SVectorRepresentation& rep,
                                           double norm_tol = 1e-9, double edge_tol = 1e-8) {
    SRepCheck c;
    if (static_cast<int>(rep.vectors.size()) != g.n())
        throw std::invalid_argument("s_representation: vector count mismatch");
    for (int u = 0; u < g.n(); ++u) {
        double nsq = 0.0;
        for (double x : rep.vectors[u]) nsq += x * x;
        c.worst_norm_dev = std::max(c.worst_norm_dev, std::abs(std::sqrt(nsq) - 1.0));
    }
    for (const auto& [u, v] : g.edges()) {
        double dot = 0.0;
        for (std::size_t k = 0; k < rep.vectors[u].size(); ++k)
            dot += rep.vectors[u][k] * rep.vectors[v][k];
        const double dev = rep.inequality_mode ? std::max(0.0, dot - rep.alpha)
                                               : std::abs(dot - rep.alpha);
        if (dev > c.worst_edge_dev) {
            c.worst_edge_dev = dev;
            c.bad_u = u;
            c.bad_v = v;
        }
    }
    c.ok = c.worst_norm_dev <= norm_tol && c.worst_edge_dev <= edge_tol;
    return c;
}

inline double s_representation_value(const SVectorRepresentation& rep) {
    return 1.0 - 1.0 / rep.alpha;
}

// Regular simplex: n unit vectors in R^{n-1} with pairwise inner product
// exactly -1/(n-1); the extremal S(m, alpha) representation of K_n.
inline SVectorRepresentation simplex_representation(int n) {
    if (n < 2) throw std::invalid_argument("simplex_representation: n must be >= 2");
    SVectorRepresentation rep;
    rep.alpha = -1.0 / (n - 1);
    if (n == 2) {
        rep.vectors = {{1.0}, {-1.0}};
        return rep;
    }
    ComplexMatrix gram(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gram.at(i, j) = (i == j) ? 1.0 : rep.alpha;
    Tolerances tight;
    tight.tol_eig = 1e-14;
    const auto eg = eigh(gram, tight);
    rep.vectors.assign(n, std::vector<double>(n - 1, 0.0));
    int col = 0;
    for (int k = 0; k < n; ++k) {
        if (eg.eigenvalues[k] < 1e-9) continue;
        const double s = std::sqrt(eg.eigenvalues[k]);
        for (int i = 0; i < n; ++i)
            rep.vectors[i][col] = s * eg.eigenvectors.at(i, k).real();
        ++col;
    }
    if (col != n - 1) throw std::logic_error("simplex_representation: unexpected Gram rank");
    return rep;
}

// Handle-form upper bound on theta(g): given unit vectors with nonadjacent
// pairs orthogonal and a unit handle c, returns max over vertices of
// 1 / (c . phi(x))^2.
inline double handle_bound(const Graph& g, const std::vector<std::vector<double>>& phi,
                           const std::vector<double>& c, double ortho_tol = 1e-7) {
    if (static_cast<int>(phi.size()) != g.n())
        throw std::invalid_argument("handle_bound: vector count mismatch");
    auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
        if (a.size() != b.size())
            throw std::invalid_argument("handle_bound: dimension mismatch");
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };
    if (std::abs(dot(c, c) - 1.0) > ortho_tol)
        throw std::invalid_argument("handle_bound: handle is not a unit vector");
    for (int u = 0; u < g.n(); ++u)
        if (std::abs(dot(phi[u], phi[u]) - 1.0) > ortho_tol)
            throw std::invalid_argument("handle_bound: vector " + std::to_string(u) +
                                        " is not a unit vector");
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v)
            if (!g.adjacent(u, v) && std::abs(dot(phi[u], phi[v])) > ortho_tol)
                throw std::invalid_argument("handle_bound: nonadjacent pair (" +
                                            std::to_string(u) + "," + std::to_string(v) +
                                            ") not orthogonal");
    double bound = 0.0;
    for (int u = 0; u < g.n(); ++u) {
        const double h = dot(c, phi[u]);
        if (h == 0.0) return std::numeric_limits<double>::infinity();
        bound = std::max(bound, 1.0 / (h * h));
    }
    return bound;
}

}  // namespace qgraph
