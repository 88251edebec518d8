#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgraph/combinatorics.hpp"
#include "qgraph/config.hpp"
#include "qgraph/eigh.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/linalg.hpp"
#include "qgraph/matrix.hpp"
#include "qgraph/quantum.hpp"

namespace qgraph {

// Classical channel as a conditional probability table N(w|z);
// row-stochastic within 1e-12, validated at construction.
struct Channel {
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<double> probs;  // row-major inputs x outputs

    double p(int z, int w) const { return probs[static_cast<std::size_t>(z) * outputs.size() + w]; }

    static Channel make(std::vector<std::string> inputs, std::vector<std::string> outputs,
                        std::vector<double> probs) {
        Channel ch;
        ch.inputs = std::move(inputs);
        ch.outputs = std::move(outputs);
        ch.probs = std::move(probs);
        if (ch.probs.size() != ch.inputs.size() * ch.outputs.size())
            throw std::invalid_argument("channel: probability table shape mismatch");
        for (std::size_t z = 0; z < ch.inputs.size(); ++z) {
            double row = 0.0;
            for (std::size_t w = 0; w < ch.outputs.size(); ++w) {
                const double v = ch.probs[z * ch.outputs.size() + w];
                if (!(v >= 0.0) || !std::isfinite(v))
                    throw std::invalid_argument("channel: negative or non-finite probability");
                row += v;
            }
            if (std::abs(row - 1.0) > 1e-12)
                throw std::invalid_argument("channel: row " + std::to_string(z) +
                                            " does not sum to 1");
        }
        return ch;
    }
};

// Inputs are adjacent iff some output has positive probability under both.
// Entries are constructed, not measured, so the threshold is exact zero.
inline Graph confusability_graph(const Channel& ch) {
    const int n = static_cast<int>(ch.inputs.size());
    std::vector<std::pair<int, int>> edges;
    for (int z = 0; z < n; ++z)
        for (int z2 = z + 1; z2 < n; ++z2) {
            bool confusable = false;
            for (std::size_t w = 0; w < ch.outputs.size() && !confusable; ++w)
                confusable = ch.p(z, static_cast<int>(w)) > 0.0 &&
                             ch.p(z2, static_cast<int>(w)) > 0.0;
            if (confusable) edges.emplace_back(z, z2);
        }
    std::vector<std::string> labels = ch.inputs;
    return Graph::from_edges(n, std::move(edges), std::move(labels));
}

// Canonical channel of a graph: inputs V(X), outputs E(X), uniform over
// incident edges; an isolated vertex gets a dedicated private output.
inline Channel canonical_channel(const Graph& g) {
    std::vector<std::string> inputs, outputs;
    for (int v = 0; v < g.n(); ++v)
        inputs.push_back(g.has_labels() ? g.label(v) : std::to_string(v));
    std::vector<int> edge_col;
    for (const auto& [u, v] : g.edges()) {
        outputs.push_back("e" + std::to_string(u) + "-" + std::to_string(v));
        edge_col.push_back(static_cast<int>(outputs.size()) - 1);
    }
    std::vector<int> private_col(g.n(), -1);
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) == 0) {
            outputs.push_back("v" + std::to_string(v));
            private_col[v] = static_cast<int>(outputs.size()) - 1;
        }
    std::vector<double> probs(inputs.size() * outputs.size(), 0.0);
    for (std::size_t ei = 0; ei < g.edges().size(); ++ei) {
        const auto& [u, v] = g.edges()[ei];
        probs[u * outputs.size() + edge_col[ei]] = 1.0 / g.degree(u);
        probs[v * outputs.size() + edge_col[ei]] = 1.0 / g.degree(v);
    }
    for (int v = 0; v < g.n(); ++v)
        if (private_col[v] != -1) probs[v * outputs.size() + private_col[v]] = 1.0;
    return Channel::make(std::move(inputs), std::move(outputs), std::move(probs));
}

// c_0 = alpha of the confusability graph.
inline int one_shot_capacity(const Graph& g, const Caps& caps = default_caps()) {
    return independence_number(g, caps).size;
}

// Entanglement-assisted protocol for sending one of m messages: Alice
// measures her half of the shared state with the POVM of message i and
// feeds the outcome into the channel.
struct EAProtocol {
    int m = 0;
    int d_a = 0, d_b = 0;
    std::vector<std::vector<ComplexMatrix>> povms;  // [message][input z]
    ComplexMatrix state;                            // unit column in C^{d_a d_b}
};

// beta^i_z = tr_A((E_iz (x) I) psi psi*), computed as Psi^T E^T conj(Psi)
// for the d_a x d_b reshaping Psi of the state.
inline std::vector<std::vector<ComplexMatrix>> residual_states(const EAProtocol& p) {
    ComplexMatrix psi(p.d_a, p.d_b);
    for (int i = 0; i < p.d_a; ++i)
        for (int j = 0; j < p.d_b; ++j) psi.at(i, j) = p.state.at(i * p.d_b + j, 0);
    const ComplexMatrix psi_t = psi.transpose();
    const ComplexMatrix psi_c = psi.conjugate();
    std::vector<std::vector<ComplexMatrix>> out(p.povms.size());
    for (std::size_t i = 0; i < p.povms.size(); ++i) {
        out[i].reserve(p.povms[i].size());
        for (const auto& e : p.povms[i]) out[i].push_back(psi_t * e.transpose() * psi_c);
    }
    return out;
}

struct ProtocolViolation {
    int msg_i = -1, input_z = -1, msg_j = -1, input_z2 = -1;
    double residual = 0.0;
};

struct ProtocolReport {
    bool ok = false;
    bool well_formed = false;
    std::string problem;
    double worst = 0.0;
    std::vector<ProtocolViolation> violations;
    // structural subclass: equality with the quantum independence number
    // needs projective measurements on the maximally entangled state
    bool projective = false;
    bool maximally_entangled_state = false;
};

// Checks tr(beta^i_z beta^j_z') = 0 for all distinct messages i, j and all
// confusable inputs z, z' (adjacent or equal in g), via the Gram matrix of
// the residual states.
inline ProtocolReport verify_protocol(const EAProtocol& p, const Graph& g, double tol = cert_tol) {
    ProtocolReport rep;
    const int nz = g.n();
    if (p.m < 1 || static_cast<int>(p.povms.size()) != p.m) {
        rep.problem = "message count mismatch";
        return rep;
    }
    if (p.state.rows() != p.d_a * p.d_b || p.state.cols() != 1) {
        rep.problem = "state shape mismatch";
        return rep;
    }
    double norm = 0.0;
    for (const auto& z : p.state.data()) norm += std::norm(z);
    if (std::abs(std::sqrt(norm) - 1.0) > 1e-9) {
        rep.problem = "state not unit norm";
        return rep;
    }
    rep.projective = true;
    for (const auto& povm : p.povms) {
        if (static_cast<int>(povm.size()) != nz) {
            rep.problem = "POVM outcome count differs from |V|";
            return rep;
        }
        ComplexMatrix sum = ComplexMatrix::zeros(p.d_a, p.d_a);
        for (const auto& e : povm) {
            if (e.rows() != p.d_a || e.cols() != p.d_a) {
                rep.problem = "POVM element shape mismatch";
                return rep;
            }
            const double scale = 1.0 + e.frobenius_norm();
            if (hermitian_deviation(e) > 1e-9 * scale) {
                rep.problem = "POVM element not Hermitian";
                return rep;
            }
            const auto ev = eigh(e);
            if (ev.eigenvalues.front() < -1e-9 * scale) {
                rep.problem = "POVM element not positive semidefinite";
                return rep;
            }
            if (idempotency_deviation(e) > 1e-9 * scale) rep.projective = false;
            sum += e;
        }
        sum -= ComplexMatrix::identity(p.d_a);
        if (sum.frobenius_norm() > 1e-9) {
            rep.problem = "POVM does not sum to identity";
            return rep;
        }
    }
    rep.well_formed = true;

    // maximally entangled iff the reshaped state is unitary / sqrt(d)
    if (p.d_a == p.d_b) {
        ComplexMatrix psi(p.d_a, p.d_b);
        for (int i = 0; i < p.d_a; ++i)
            for (int j = 0; j < p.d_b; ++j) psi.at(i, j) = p.state.at(i * p.d_b + j, 0);
        ComplexMatrix gram = psi * psi.adjoint();
        gram -= Complex(1.0 / p.d_a) * ComplexMatrix::identity(p.d_a);
        rep.maximally_entangled_state = gram.frobenius_norm() <= 1e-9;
    }

    const auto betas = residual_states(p);
    for (int i = 0; i < p.m; ++i)
        for (int j = i + 1; j < p.m; ++j)
            for (int z = 0; z < nz; ++z)
                for (int z2 = 0; z2 < nz; ++z2) {
                    if (z != z2 && !g.adjacent(z, z2)) continue;  // not confusable
                    const double res =
                        std::abs(trace_of_product(betas[i][z], betas[j][z2]));
                    if (res > rep.worst) rep.worst = res;
                    if (res > tol) rep.violations.push_back({i, z, j, z2, res});
                }
    rep.ok = rep.well_formed && rep.worst <= tol;
    return rep;
}

// A verified certificate K_m => complement(g) is a strategy for sending m
// messages over the canonical channel of g: POVMs are the certificate's
// projective measurements and the state is maximally entangled.
inline EAProtocol protocol_from_independence_cert(const QuantumHomCertificate& c) {
    detail::require_verified(c, "protocol_from_independence_cert");
    EAProtocol p;
    p.m = c.source.n();
    p.d_a = p.d_b = c.d;
    p.state = max_entangled_vector(c.d);
    p.povms.assign(p.m, {});
    for (int i = 0; i < p.m; ++i) {
        p.povms[i].reserve(c.target.n());
        for (int z = 0; z < c.target.n(); ++z) p.povms[i].push_back(c.at(i, z));
    }
    return p;
}

// The graph whose channel the derived protocol serves.
inline Graph protocol_graph_of_independence_cert(const QuantumHomCertificate& c) {
    return complement(c.target);
}

// Protocol lift through a certificate complement(X) => complement(Y):
// F_iy = sum_x P_xy (x) E_ix on state Phi_d (x) psi, transporting an
// m-message strategy for X to one for Y.
inline EAProtocol lift_protocol(const QuantumHomCertificate& c, const EAProtocol& p,
                                const Caps& caps = default_caps()) {
    detail::require_verified(c, "lift_protocol");
    const Graph x = complement(c.source);
    const Graph y = complement(c.target);
    if (static_cast<int>(p.povms.size()) != p.m || p.m < 1)
        throw std::invalid_argument("lift_protocol: malformed protocol");
    {
        const ProtocolReport check = verify_protocol(p, x);
        if (!check.ok)
            throw std::invalid_argument("lift_protocol: input protocol does not verify for "
                                        "the certificate's source graph");
    }
    const long long dim = static_cast<long long>(c.d) * p.d_a;
    if (dim * (static_cast<long long>(c.d) * p.d_b) > caps.product_max * 64LL)
        throw CapError("lift_protocol: lifted dimension exceeds cap");

    EAProtocol out;
    out.m = p.m;
    out.d_a = c.d * p.d_a;
    out.d_b = c.d * p.d_b;
    out.povms.assign(out.m, {});
    for (int i = 0; i < out.m; ++i) {
        out.povms[i].reserve(y.n());
        for (int yv = 0; yv < y.n(); ++yv) {
            ComplexMatrix f = ComplexMatrix::zeros(out.d_a, out.d_a);
            for (int xv = 0; xv < x.n(); ++xv) f += kron(c.at(xv, yv), p.povms[i][xv]);
            out.povms[i].push_back(std::move(f));
        }
    }
    const ComplexMatrix phi = max_entangled_vector(c.d);
    out.state = ComplexMatrix(out.d_a * out.d_b, 1);
    for (int a2 = 0; a2 < c.d; ++a2)
        for (int a = 0; a < p.d_a; ++a)
            for (int b2 = 0; b2 < c.d; ++b2)
                for (int b = 0; b < p.d_b; ++b)
                    out.state.at((a2 * p.d_a + a) * (c.d * p.d_b) + (b2 * p.d_b + b), 0) =
                        phi.at(a2 * c.d + b2, 0) * p.state.at(a * p.d_b + b, 0);
    return out;
}

// Deterministic m-message protocol from a classical independent set:
// message i deterministically inputs set[i], on a trivial shared state.
inline EAProtocol protocol_from_independent_set(const Graph& g, const std::vector<int>& set) {
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (set[i] == set[j] || g.adjacent(set[i], set[j]))
                throw std::invalid_argument("protocol_from_independent_set: not an independent "
                                            "set");
    EAProtocol p;
    p.m = static_cast<int>(set.size());
    p.d_a = p.d_b = 1;
    p.state = ComplexMatrix(1, 1);
    p.state.at(0, 0) = 1.0;
    p.povms.assign(p.m, {});
    for (int i = 0; i < p.m; ++i)
        for (int z = 0; z < g.n(); ++z) {
            ComplexMatrix e(1, 1);
            e.at(0, 0) = (z == set[i]) ? 1.0 : 0.0;
            p.povms[i].push_back(std::move(e));
        }
    return p;
}

// c_0(g^{boxtimes k})^{1/k} for k = 1..k_max: a nondecreasing lower-bound
// sequence for the Shannon capacity.
inline std::vector<double> capacity_series(const Graph& g, int k_max,
                                           const Caps& caps = default_caps()) {
    if (k_max < 1) throw std::invalid_argument("capacity_series: k_max must be >= 1");
    std::vector<double> out;
    Graph power = g;
    for (int k = 1; k <= k_max; ++k) {
        if (k > 1) power = strong_product(power, g, caps);
        const int alpha = independence_number(power, caps).size;
        out.push_back(std::pow(static_cast<double>(alpha), 1.0 / k));
    }
    return out;
}

}  // namespace qgraph
