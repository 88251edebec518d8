#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgraph/automorphism.hpp"
#include "qgraph/config.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/linalg.hpp"
#include "qgraph/matrix.hpp"
#include "qgraph/projector.hpp"
#include "qgraph/quantum.hpp"
#include "qgraph/rational.hpp"
#include "qgraph/rng.hpp"

namespace qgraph {

// d/r-representation: rank-r projectors in dimension d on the vertices,
// orthogonal across edges. d and r are stored as given; value() reduces.
struct ProjectiveRepresentation {
    Graph graph;
    int d = 0, r = 0;
    std::vector<ComplexMatrix> projectors;
    bool verified = false;

    Rational value() const { return Rational(d, r); }

    static ProjectiveRepresentation unchecked(Graph g, int dim, int rank,
                                              std::vector<ComplexMatrix> projs) {
        ProjectiveRepresentation rep;
        rep.graph = std::move(g);
        rep.d = dim;
        rep.r = rank;
        rep.projectors = std::move(projs);
        return rep;
    }

    static ProjectiveRepresentation make(Graph g, int dim, int rank,
                                         std::vector<ComplexMatrix> projs,
                                         double tol = cert_tol);
};

struct RepReport {
    bool ok = false;
    double worst = 0.0;
    std::string worst_condition;
    double worst_projector = 0.0;
    double worst_rank = 0.0;  // |trace - r| over vertices
    double worst_orthogonality = 0.0;
    std::vector<CertViolation> violations;
};

inline RepReport verify_representation(const ProjectiveRepresentation& rep,
                                       double tol = cert_tol) {
    const int n = rep.graph.n();
    if (static_cast<int>(rep.projectors.size()) != n)
        throw std::invalid_argument("verify_representation: projector count mismatch");
    RepReport out;
    auto record = [&](const std::string& cond, double res, int u, int v, double& slot) {
        slot = std::max(slot, res);
        if (res > out.worst) {
            out.worst = res;
            out.worst_condition = cond;
        }
        if (res > tol) out.violations.push_back({cond, u, v, -1, -1, res});
    };
    for (int u = 0; u < n; ++u) {
        const auto& e = rep.projectors[u];
        if (e.rows() != rep.d || e.cols() != rep.d)
            throw std::invalid_argument("verify_representation: projector shape mismatch");
        record("projector", std::max(hermitian_deviation(e), idempotency_deviation(e)), u, -1,
               out.worst_projector);
        record("rank", std::abs(e.trace().real() - rep.r), u, -1, out.worst_rank);
    }
    for (const auto& [u, v] : rep.graph.edges())
        record("orthogonality", (rep.projectors[u] * rep.projectors[v]).frobenius_norm(), u, v,
               out.worst_orthogonality);
    out.ok = out.worst <= tol;
    return out;
}

inline ProjectiveRepresentation ProjectiveRepresentation::make(Graph g, int dim, int rank,
                                                               std::vector<ComplexMatrix> projs,
                                                               double tol) {
    ProjectiveRepresentation rep = unchecked(std::move(g), dim, rank, std::move(projs));
    const RepReport report = verify_representation(rep, tol);
    if (!report.ok)
        throw std::invalid_argument("representation verification failed: " +
                                    report.worst_condition + " residual " +
                                    std::to_string(report.worst));
    rep.verified = true;
    return rep;
}

// K_{n:r} has the exact n/r-representation by 0/1 diagonal projectors on
// the subsets (disjoint subsets give disjoint supports).
inline ProjectiveRepresentation kneser_to_projective(int n, int r) {
    if (2 * r > n)
        throw std::invalid_argument("kneser_to_projective: need 2r <= n");
    Graph g = kneser(n, r);
    const auto subsets = kneser_subsets(n, r);
    std::vector<ComplexMatrix> projs;
    projs.reserve(subsets.size());
    for (const auto& s : subsets) {
        ComplexMatrix e(n, n);
        for (int v : s) e.at(v, v) = 1.0;
        projs.push_back(std::move(e));
    }
    return ProjectiveRepresentation::make(std::move(g), n, r, std::move(projs));
}

struct ProjRankOutcome {
    // present only on success; failure means "no certificate found",
    // never a nonexistence proof
    std::optional<ProjectiveRepresentation> representation;
    double best_residual = 0.0;
    int restarts_used = 0;
    long long total_iterations = 0;
    std::uint64_t seed = 0;
};

namespace detail {

// Sum over edges of tr(E_u E_v) = ||V_u^H V_v||_F^2 for orthonormal frames.
inline double frame_residual(const Graph& g, const std::vector<ComplexMatrix>& frames) {
    double f = 0.0;
    for (const auto& [u, v] : g.edges()) {
        const ComplexMatrix c = frames[u].adjoint() * frames[v];
        const double nrm = c.frobenius_norm();
        f += nrm * nrm;
    }
    return f;
}

}  // namespace detail

// Stiefel-manifold search for a d/r-representation: each vertex carries an
// orthonormal frame V_x (E_x = V_x V_x^H); gradient descent on
// sum_{x~x'} ||E_x E_x'||_F^2 with QR retraction and backtracking line
// search, over independent random restarts.
inline ProjRankOutcome projrank_search(const Graph& g, int d, int r, std::uint64_t seed,
                                       int iterations = 6000, int restarts = 20) {
    if (r < 1 || r > d) throw std::invalid_argument("projrank_search: need 1 <= r <= d");
    ProjRankOutcome out;
    out.seed = seed;
    out.best_residual = std::numeric_limits<double>::infinity();
    const int n = g.n();
    Rng root(seed);

    for (int restart = 0; restart < restarts; ++restart) {
        Rng rng = root.split();
        ++out.restarts_used;
        std::vector<ComplexMatrix> frames(n);
        for (int u = 0; u < n; ++u) {
            frames[u] = detail::random_gaussian(d, r, rng);
            detail::orthonormalize_columns(frames[u]);
        }
        double f = detail::frame_residual(g, frames);
        double step = 0.25;
        for (int it = 0; it < iterations; ++it) {
            ++out.total_iterations;
            // polished well past the success threshold so the projector
            // products also clear the verification tolerance
            if (f < 1e-24) break;
            std::vector<ComplexMatrix> grad(n, ComplexMatrix::zeros(d, r));
            for (const auto& [u, v] : g.edges()) {
                grad[u] += 2.0 * (frames[v] * (frames[v].adjoint() * frames[u]));
                grad[v] += 2.0 * (frames[u] * (frames[u].adjoint() * frames[v]));
            }
            double gnorm_sq = 0.0;
            for (const auto& gm : grad) {
                const double nrm = gm.frobenius_norm();
                gnorm_sq += nrm * nrm;
            }
            if (gnorm_sq < 1e-30 * std::max(1.0, f)) break;  // stationary

            bool accepted = false;
            for (int bt = 0; bt < 40; ++bt) {
                std::vector<ComplexMatrix> cand(n);
                bool degenerate = false;
                for (int u = 0; u < n; ++u) {
                    cand[u] = frames[u];
                    cand[u] -= Complex(step) * grad[u];
                    try {
                        detail::orthonormalize_columns(cand[u]);
                    } catch (const std::runtime_error&) {
                        degenerate = true;
                        break;
                    }
                }
                if (!degenerate) {
                    const double fc = detail::frame_residual(g, cand);
                    if (fc < f) {
                        frames = std::move(cand);
                        f = fc;
                        step = std::min(step * 1.3, 8.0);
                        accepted = true;
                        break;
                    }
                }
                step *= 0.4;
                if (step < 1e-16) break;
            }
            if (!accepted) break;  // line search exhausted: local minimum
        }
        out.best_residual = std::min(out.best_residual, f);
        if (f < 1e-10) {
            std::vector<ComplexMatrix> projs(n);
            for (int u = 0; u < n; ++u) projs[u] = frames[u] * frames[u].adjoint();
            out.representation =
                ProjectiveRepresentation::make(g, d, r, std::move(projs));
            return out;
        }
    }
    return out;
}

// F_x = sum_y E_xy (x) F_y: pulls a representation of the certificate's
// target back to its source, preserving the value d/r.
inline ProjectiveRepresentation projrep_tensor_pullback(const QuantumHomCertificate& c,
                                                        const ProjectiveRepresentation& rep) {
    detail::require_verified(c, "projrep_tensor_pullback");
    if (!rep.verified)
        throw std::invalid_argument("projrep_tensor_pullback: refusing unverified representation");
    if (!rep.graph.same_edge_set(c.target))
        throw std::invalid_argument("projrep_tensor_pullback: representation is not over the "
                                    "certificate target");
    const int dd = c.d * rep.d;
    std::vector<ComplexMatrix> projs(c.source.n(), ComplexMatrix::zeros(dd, dd));
    for (int x = 0; x < c.source.n(); ++x) {
        ComplexMatrix sum = ComplexMatrix::zeros(dd, dd);
        for (int y = 0; y < c.target.n(); ++y) sum += kron(c.at(x, y), rep.projectors[y]);
        projs[x] = std::move(sum);
    }
    return ProjectiveRepresentation::make(c.source, dd, rep.r * c.d, std::move(projs));
}

// F_x = sum_i E_ix over an equal-rank certificate K_m => complement(x):
// a value-|V(x)|/m representation of the vertex-transitive graph x.
inline ProjectiveRepresentation projrep_from_independence_cert(const QuantumHomCertificate& c,
                                                               const Graph& x,
                                                               const Caps& caps = default_caps()) {
    detail::require_verified(c, "projrep_from_independence_cert");
    const int m = c.source.n();
    if (!c.source.same_edge_set(complete(std::max(m, 1))))
        throw std::invalid_argument("projrep_from_independence_cert: source must be complete");
    if (!c.target.same_edge_set(complement(x)))
        throw std::invalid_argument("projrep_from_independence_cert: target must be the "
                                    "complement of x");
    if (!is_vertex_transitive(x, caps))
        throw std::invalid_argument("projrep_from_independence_cert: x must be vertex-transitive");

    int rank = -1;
    std::string table;
    bool equal = true;
    for (int i = 0; i < m; ++i)
        for (int v = 0; v < x.n(); ++v) {
            const int rk = static_cast<int>(std::lround(c.at(i, v).trace().real()));
            table += "(" + std::to_string(i) + "," + std::to_string(v) + ")=" +
                     std::to_string(rk) + " ";
            if (rank == -1) rank = rk;
            if (rk != rank) equal = false;
        }
    if (!equal)
        throw std::invalid_argument("projrep_from_independence_cert: unequal ranks; rank table: " +
                                    table);
    if (rank * x.n() != c.d)
        throw std::invalid_argument("projrep_from_independence_cert: not in equal-rank normal "
                                    "form (d != r |V(x)|)");

    std::vector<ComplexMatrix> projs(x.n(), ComplexMatrix::zeros(c.d, c.d));
    for (int v = 0; v < x.n(); ++v) {
        ComplexMatrix sum = ComplexMatrix::zeros(c.d, c.d);
        for (int i = 0; i < m; ++i) sum += c.at(i, v);
        projs[v] = std::move(sum);
    }
    return ProjectiveRepresentation::make(x, c.d, m * rank, std::move(projs));
}

// k-fold block-diagonal copies: a (kd)/(kr)-representation with the same
// value, used to exercise scale invariance constructively.
inline ProjectiveRepresentation block_diagonal_representation(const ProjectiveRepresentation& rep,
                                                              int k) {
    if (k < 1) throw std::invalid_argument("block_diagonal_representation: k must be >= 1");
    if (!rep.verified)
        throw std::invalid_argument("block_diagonal_representation: refusing unverified input");
    std::vector<ComplexMatrix> projs;
    projs.reserve(rep.projectors.size());
    const ComplexMatrix eye = ComplexMatrix::identity(k);
    for (const auto& e : rep.projectors) projs.push_back(kron(eye, e));
    return ProjectiveRepresentation::make(rep.graph, k * rep.d, k * rep.r, std::move(projs));
}

}  // namespace qgraph
