#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgraph/combinatorics.hpp"
#include "qgraph/config.hpp"
#include "qgraph/eigh.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/linalg.hpp"
#include "qgraph/matrix.hpp"
#include "qgraph/theta.hpp"

namespace qgraph {

// Projector family {E_xy} witnessing a quantum homomorphism from source to
// target: completeness sum_y E_xy = I, consistency E_xy E_xy' = 0 for
// y != y', and E_xy E_x'y' = 0 whenever x ~ x' and y' is neither y nor a
// neighbor of y. Instances are verified eagerly; transformations refuse
// unverified inputs.
struct QuantumHomCertificate {
    Graph source;
    Graph target;
    int d = 0;
    std::vector<ComplexMatrix> projectors;  // row-major (x, y)
    bool verified = false;

    const ComplexMatrix& at(int x, int y) const {
        return projectors[static_cast<std::size_t>(x) * target.n() + y];
    }
    ComplexMatrix& at(int x, int y) {
        return projectors[static_cast<std::size_t>(x) * target.n() + y];
    }

    bool is_real(double tol = 1e-12) const {
        for (const auto& e : projectors)
            if (e.max_imag_abs() > tol) return false;
        return true;
    }

    static QuantumHomCertificate unchecked(Graph src, Graph tgt, int dim,
                                           std::vector<ComplexMatrix> projs) {
        QuantumHomCertificate c;
        c.source = std::move(src);
        c.target = std::move(tgt);
        c.d = dim;
        c.projectors = std::move(projs);
        return c;
    }

    static QuantumHomCertificate make(Graph src, Graph tgt, int dim,
                                      std::vector<ComplexMatrix> projs, double tol = cert_tol);
};

struct CertViolation {
    std::string condition;
    int x = -1, y = -1, x2 = -1, y2 = -1;
    double residual = 0.0;
};

struct CertReport {
    bool ok = false;
    double worst = 0.0;
    std::string worst_condition;
    double worst_projector = 0.0;
    double worst_completeness = 0.0;
    double worst_consistency = 0.0;
    double worst_adjacency = 0.0;
    double worst_rank_count = 0.0;  // excess of sum_x rank(E_xy) over d, complete sources
    std::vector<CertViolation> violations;
};

inline CertReport verify_certificate(const QuantumHomCertificate& c, double tol = cert_tol) {
    const int nx = c.source.n(), ny = c.target.n();
    if (static_cast<std::size_t>(nx) * ny != c.projectors.size())
        throw std::invalid_argument("verify_certificate: projector count mismatch");
    for (const auto& e : c.projectors)
        if (e.rows() != c.d || e.cols() != c.d)
            throw std::invalid_argument("verify_certificate: projector shape mismatch");

    CertReport rep;
    auto record = [&](const std::string& cond, double res, int x, int y, int x2, int y2,
                      double& worst_slot) {
        worst_slot = std::max(worst_slot, res);
        if (res > rep.worst) {
            rep.worst = res;
            rep.worst_condition = cond;
        }
        if (res > tol) rep.violations.push_back({cond, x, y, x2, y2, res});
    };

    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y) {
            const auto& e = c.at(x, y);
            const double res = std::max(hermitian_deviation(e), idempotency_deviation(e));
            record("projector", res, x, y, -1, -1, rep.worst_projector);
        }

    for (int x = 0; x < nx; ++x) {
        ComplexMatrix sum = ComplexMatrix::zeros(c.d, c.d);
        for (int y = 0; y < ny; ++y) sum += c.at(x, y);
        sum -= ComplexMatrix::identity(c.d);
        record("completeness", sum.frobenius_norm(), x, -1, -1, -1, rep.worst_completeness);
    }

    for (int x = 0; x < nx; ++x)
        for (int y = 0; y < ny; ++y)
            for (int y2 = y + 1; y2 < ny; ++y2)
                record("consistency", (c.at(x, y) * c.at(x, y2)).frobenius_norm(), x, y, x,
                       y2, rep.worst_consistency);

    for (const auto& [x, x2] : c.source.edges())
        for (int y = 0; y < ny; ++y)
            for (int y2 = 0; y2 < ny; ++y2) {
                if (y != y2 && c.target.adjacent(y, y2)) continue;
                record("adjacency", (c.at(x, y) * c.at(x2, y2)).frobenius_norm(), x, y, x2,
                       y2, rep.worst_adjacency);
            }

    // Rank counting for complete-graph sources: the E_xy for fixed y are
    // pairwise orthogonal, so their ranks cannot exceed the dimension.
    if (c.source.same_edge_set(complete(std::max(nx, 1)))) {
        for (int y = 0; y < ny; ++y) {
            long long total = 0;
            for (int x = 0; x < nx; ++x)
                total += std::lround(c.at(x, y).trace().real());
            const double excess = std::max(0.0, static_cast<double>(total - c.d));
            record("rank_count", excess, -1, y, -1, -1, rep.worst_rank_count);
        }
    }

    rep.ok = rep.worst <= tol;
    return rep;
}

inline QuantumHomCertificate QuantumHomCertificate::make(Graph src, Graph tgt, int dim,
                                                         std::vector<ComplexMatrix> projs,
                                                         double tol) {
    QuantumHomCertificate c = unchecked(std::move(src), std::move(tgt), dim, std::move(projs));
    const CertReport rep = verify_certificate(c, tol);
    if (!rep.ok)
        throw std::invalid_argument("certificate verification failed: " + rep.worst_condition +
                                    " residual " + std::to_string(rep.worst));
    c.verified = true;
    return c;
}

namespace detail {

inline void require_verified(const QuantumHomCertificate& c, const char* op) {
    if (!c.verified)
        throw std::invalid_argument(std::string(op) + ": refusing unverified certificate");
}

}  // namespace detail

// d = 1 embedding of a classical homomorphism: E_xy = [1] iff h(x) = y.
inline QuantumHomCertificate cert_from_classical_hom(const Homomorphism& h) {
    const int ny = h.target.n();
    std::vector<ComplexMatrix> projs;
    projs.reserve(static_cast<std::size_t>(h.source.n()) * ny);
    for (int x = 0; x < h.source.n(); ++x)
        for (int y = 0; y < ny; ++y) {
            ComplexMatrix e(1, 1);
            e.at(0, 0) = (h.map[x] == y) ? 1.0 : 0.0;
            projs.push_back(std::move(e));
        }
    return QuantumHomCertificate::make(h.source, h.target, 1, std::move(projs));
}

// Real form in doubled dimension via the [[Re, Im], [-Im, Re]] block map.
inline QuantumHomCertificate realify_certificate(const QuantumHomCertificate& c) {
    detail::require_verified(c, "realify_certificate");
    std::vector<ComplexMatrix> projs;
    projs.reserve(c.projectors.size());
    for (const auto& e : c.projectors) projs.push_back(realify(e));
    return QuantumHomCertificate::make(c.source, c.target, 2 * c.d, std::move(projs));
}

// E''_xz = sum_y E_xy (x) E'_yz: transitivity of quantum homomorphisms.
inline QuantumHomCertificate compose_certificates(const QuantumHomCertificate& c1,
                                                  const QuantumHomCertificate& c2) {
    detail::require_verified(c1, "compose_certificates");
    detail::require_verified(c2, "compose_certificates");
    if (!c1.target.same_edge_set(c2.source))
        throw std::invalid_argument("compose_certificates: middle graphs do not match");
    const int nx = c1.source.n(), ny = c1.target.n(), nz = c2.target.n();
    const int dd = c1.d * c2.d;
    std::vector<ComplexMatrix> projs(static_cast<std::size_t>(nx) * nz,
                                     ComplexMatrix::zeros(dd, dd));
    for (int x = 0; x < nx; ++x)
        for (int z = 0; z < nz; ++z) {
            ComplexMatrix sum = ComplexMatrix::zeros(dd, dd);
            for (int y = 0; y < ny; ++y) sum += kron(c1.at(x, y), c2.at(y, z));
            projs[static_cast<std::size_t>(x) * nz + z] = std::move(sum);
        }
    return QuantumHomCertificate::make(c1.source, c2.target, dd, std::move(projs));
}

struct ComponentRestriction {
    int k = 0;
    QuantumHomCertificate cert;
    // max_x ||E_xi - E_0i||_F over components i; the component sums are
    // constant across a connected source
    double constancy_residual = 0.0;
};

// Restricts a certificate into a disconnected target to the one component
// that carries it, compressing onto the image of the component projector.
inline ComponentRestriction restrict_to_component(const QuantumHomCertificate& c) {
    detail::require_verified(c, "restrict_to_component");
    if (!is_connected(c.source))
        throw std::invalid_argument("restrict_to_component: source must be connected");
    const Components comps = components(c.target);
    const int ncomp = static_cast<int>(comps.parts.size());

    std::vector<ComplexMatrix> comp_sum(ncomp, ComplexMatrix::zeros(c.d, c.d));
    double constancy = 0.0;
    for (int i = 0; i < ncomp; ++i) {
        for (int y : comps.original_vertices[i]) comp_sum[i] += c.at(0, y);
        for (int x = 1; x < c.source.n(); ++x) {
            ComplexMatrix other = ComplexMatrix::zeros(c.d, c.d);
            for (int y : comps.original_vertices[i]) other += c.at(x, y);
            other -= comp_sum[i];
            constancy = std::max(constancy, other.frobenius_norm());
        }
    }

    if (ncomp == 1) return {0, c, constancy};

    int k = -1;
    for (int i = 0; i < ncomp; ++i)
        if (comp_sum[i].trace().real() > 0.5) {
            k = i;
            break;
        }
    if (k == -1) throw std::logic_error("restrict_to_component: no nonzero component sum");

    const double tr = comp_sum[k].trace().real();
    const int rank = static_cast<int>(std::lround(tr));
    if (std::abs(tr - rank) > 0.25)
        throw std::runtime_error("restrict_to_component: ambiguous numerical rank " +
                                 std::to_string(tr));

    const auto eg = eigh(comp_sum[k]);
    ComplexMatrix basis(c.d, rank);
    int col = 0;
    for (int j = 0; j < c.d; ++j) {
        if (eg.eigenvalues[j] <= 0.5) continue;
        if (col >= rank)
            throw std::runtime_error("restrict_to_component: eigencount exceeds rank");
        for (int i = 0; i < c.d; ++i) basis.at(i, col) = eg.eigenvectors.at(i, j);
        ++col;
    }
    if (col != rank) throw std::runtime_error("restrict_to_component: eigencount below rank");

    const ComplexMatrix basis_h = basis.adjoint();
    const Graph& part = comps.parts[k];
    std::vector<ComplexMatrix> projs;
    projs.reserve(static_cast<std::size_t>(c.source.n()) * part.n());
    for (int x = 0; x < c.source.n(); ++x)
        for (int y : comps.original_vertices[k]) projs.push_back(basis_h * c.at(x, y) * basis);
    return {k, QuantumHomCertificate::make(c.source, part, rank, std::move(projs)), constancy};
}

// Rank-1 family coloring the Hadamard graph with n colors: E_{u,i} projects
// onto the vector with j-th entry u_j exp(2 pi i * ij / n) / sqrt(n).
// Same-vertex orthogonality is root-of-unity cancellation; adjacent-vertex
// same-color orthogonality is orthogonality of the sign vectors.
inline QuantumHomCertificate omega_coloring_certificate(int n,
                                                        const Caps& caps = default_caps()) {
    if (n < 2) throw std::invalid_argument("omega_coloring_certificate: n must be >= 2");
    Graph omega = omega_graph(n, caps);
    Graph target = complete(n);
    const int verts = omega.n();
    const double invsqrt = 1.0 / std::sqrt(static_cast<double>(n));
    const double tau = 6.283185307179586476925286766559 / n;
    std::vector<ComplexMatrix> projs;
    projs.reserve(static_cast<std::size_t>(verts) * n);
    for (int u = 0; u < verts; ++u) {
        for (int i = 0; i < n; ++i) {
            std::vector<Complex> v(n);
            for (int j = 0; j < n; ++j) {
                const double sign = (u >> j & 1) ? -1.0 : 1.0;
                v[j] = sign * invsqrt * Complex(std::cos(tau * i * j), std::sin(tau * i * j));
            }
            ComplexMatrix e(n, n);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) e.at(a, b) = v[a] * std::conj(v[b]);
            projs.push_back(std::move(e));
        }
    }
    return QuantumHomCertificate::make(std::move(omega), std::move(target), n, std::move(projs));
}

// u_x = (1/sqrt(d)) sum_y v_y (x) vec(E_xy): pulls an S(m, alpha)
// representation of the target back through a real certificate, preserving
// alpha on every edge (or the inequality in vector-chromatic mode).
inline SVectorRepresentation cert_to_theta_vectors(const QuantumHomCertificate& c,
                                                   const SVectorRepresentation& rep) {
    detail::require_verified(c, "cert_to_theta_vectors");
    if (!c.is_real())
        throw std::invalid_argument("cert_to_theta_vectors: certificate has complex entries; "
                                    "realify it first");
    const auto check = validate_s_representation(c.target, rep);
    if (!check.ok)
        throw std::invalid_argument("cert_to_theta_vectors: target representation invalid");
    const int m = rep.vectors.empty() ? 0 : static_cast<int>(rep.vectors.front().size());
    const int dsq = c.d * c.d;
    const double invsqrt = 1.0 / std::sqrt(static_cast<double>(c.d));
    SVectorRepresentation out;
    out.alpha = rep.alpha;
    out.inequality_mode = rep.inequality_mode;
    out.vectors.assign(c.source.n(), std::vector<double>(static_cast<std::size_t>(m) * dsq, 0.0));
    for (int x = 0; x < c.source.n(); ++x) {
        auto& u = out.vectors[x];
        for (int y = 0; y < c.target.n(); ++y) {
            const auto& e = c.at(x, y);
            for (int k = 0; k < m; ++k) {
                const double vk = rep.vectors[y][k];
                if (vk == 0.0) continue;
                const std::size_t base = static_cast<std::size_t>(k) * dsq;
                for (int a = 0; a < c.d; ++a)
                    for (int b = 0; b < c.d; ++b)
                        u[base + a * c.d + b] += vk * e.at(a, b).real() * invsqrt;
            }
        }
    }
    return out;
}

// P_{i,(x,y)} = delta_{i,x} E_xy: a verified certificate X => Y becomes a
// witness that the homomorphic product has quantum independence |V(X)|.
inline QuantumHomCertificate cert_to_independence_cert(const QuantumHomCertificate& c,
                                                       const Caps& caps = default_caps()) {
    detail::require_verified(c, "cert_to_independence_cert");
    const int m = c.source.n();
    Graph product = homomorphic_product(c.source, c.target, caps);
    Graph tgt = complement(product);
    const int np = product.n();
    std::vector<ComplexMatrix> projs(static_cast<std::size_t>(m) * np,
                                     ComplexMatrix::zeros(c.d, c.d));
    for (int i = 0; i < m; ++i)
        for (int y = 0; y < c.target.n(); ++y)
            projs[static_cast<std::size_t>(i) * np + i * c.target.n() + y] = c.at(i, y);
    return QuantumHomCertificate::make(complete(m), std::move(tgt), c.d, std::move(projs));
}

// Reverse direction: Q_xy = sum_i P_{i,(x,y)}; completeness follows from
// the rank-counting argument, so a failure here is an internal
// inconsistency rather than a caller error.
inline QuantumHomCertificate independence_cert_to_hom_cert(const QuantumHomCertificate& c,
                                                           const Graph& x, const Graph& y,
                                                           const Caps& caps = default_caps()) {
    detail::require_verified(c, "independence_cert_to_hom_cert");
    const int m = x.n();
    if (c.source.n() != m || !c.source.same_edge_set(complete(std::max(m, 1))))
        throw std::invalid_argument("independence_cert_to_hom_cert: source must be K_m with "
                                    "m = |V(x)|");
    Graph product = homomorphic_product(x, y, caps);
    if (!c.target.same_edge_set(complement(product)))
        throw std::invalid_argument("independence_cert_to_hom_cert: target is not the "
                                    "complement of the homomorphic product");
    const int np = product.n();
    std::vector<ComplexMatrix> projs(static_cast<std::size_t>(m) * y.n(),
                                     ComplexMatrix::zeros(c.d, c.d));
    for (int xv = 0; xv < m; ++xv)
        for (int yv = 0; yv < y.n(); ++yv) {
            ComplexMatrix q = ComplexMatrix::zeros(c.d, c.d);
            for (int i = 0; i < m; ++i) q += c.at(i, xv * y.n() + yv);
            projs[static_cast<std::size_t>(xv) * y.n() + yv] = std::move(q);
        }
    try {
        return QuantumHomCertificate::make(x, y, c.d, std::move(projs));
    } catch (const std::invalid_argument& err) {
        throw std::logic_error(std::string("independence_cert_to_hom_cert: internal "
                                           "inconsistency: ") +
                               err.what());
    }
}

// Coset lift through a transitive automorphism subgroup G of the target:
// E^{lift}_{(x,y),S} = sum over y' with G(y,y') = S of E_{x,y'}, giving a
// certificate X |x Y => K_{|G|:|G|/|V(Y)|}. Only coset-shaped subsets
// receive nonzero projectors.
inline QuantumHomCertificate kneser_cert_lift(const QuantumHomCertificate& c,
                                              const std::vector<Permutation>& group,
                                              const Caps& caps = default_caps()) {
    detail::require_verified(c, "kneser_cert_lift");
    const Graph& y = c.target;
    detail::check_transitive_group(group, y.n());
    const int gsize = static_cast<int>(group.size());
    if (gsize % y.n() != 0)
        throw std::invalid_argument("kneser_cert_lift: |G| not divisible by |V(Y)|");
    const int r = gsize / y.n();

    std::vector<std::vector<int>> coset_vertex(y.n(), std::vector<int>(y.n(), -1));
    for (int a = 0; a < y.n(); ++a)
        for (int b = 0; b < y.n(); ++b) {
            std::vector<int> coset;
            for (int gi = 0; gi < gsize; ++gi)
                if (group[gi][a] == b) coset.push_back(gi);
            if (static_cast<int>(coset.size()) != r)
                throw std::logic_error("kneser_cert_lift: coset size != |G|/|V(Y)|");
            coset_vertex[a][b] = kneser_vertex_index(gsize, r, coset);
        }

    Graph product = homomorphic_product(c.source, y, caps);
    Graph target = kneser(gsize, r);
    const int nk = target.n();
    std::vector<ComplexMatrix> projs(static_cast<std::size_t>(product.n()) * nk,
                                     ComplexMatrix::zeros(c.d, c.d));
    for (int xv = 0; xv < c.source.n(); ++xv)
        for (int yv = 0; yv < y.n(); ++yv) {
            const std::size_t row = static_cast<std::size_t>(xv * y.n() + yv) * nk;
            for (int y2 = 0; y2 < y.n(); ++y2)
                projs[row + coset_vertex[yv][y2]] += c.at(xv, y2);
        }
    return QuantumHomCertificate::make(std::move(product), std::move(target), c.d,
                                       std::move(projs));
}

// Equal-rank certificate K_m => complement(x) from a classical independent
// set, via a transitive automorphism subgroup of x: E_{i,v} is the diagonal
// indicator of the coset {g : g(s_i) = v}, which has rank |G|/|V(x)|.
inline QuantumHomCertificate equal_rank_cert_from_independent_set(
    const Graph& x, const std::vector<int>& set, const std::vector<Permutation>& group) {
    detail::check_transitive_group(group, x.n());
    const int gsize = static_cast<int>(group.size());
    if (gsize % x.n() != 0)
        throw std::invalid_argument("equal_rank_cert: |G| not divisible by |V(x)|");
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            if (set[i] == set[j])
                throw std::invalid_argument("equal_rank_cert: repeated vertex in set");
            if (x.adjacent(set[i], set[j]))
                throw std::invalid_argument("equal_rank_cert: set is not independent");
        }
    const int m = static_cast<int>(set.size());
    std::vector<ComplexMatrix> projs(static_cast<std::size_t>(m) * x.n(),
                                     ComplexMatrix::zeros(gsize, gsize));
    for (int i = 0; i < m; ++i)
        for (int gi = 0; gi < gsize; ++gi) {
            const int v = group[gi][set[i]];
            projs[static_cast<std::size_t>(i) * x.n() + v].at(gi, gi) = 1.0;
        }
    return QuantumHomCertificate::make(complete(m), complement(x), gsize, std::move(projs));
}

}  // namespace qgraph
