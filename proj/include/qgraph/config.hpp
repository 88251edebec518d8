#pragma once

#include <stdexcept>
#include <string>

namespace qgraph {

inline constexpr const char* version_string = "0.1.0";

// Thrown when an operation would exceed a configured resource cap.
// CLI maps this to exit code 3.
struct CapError : std::runtime_error {
    explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

// Desk-scale resource caps. These are configuration, not constants:
// every operation that enforces one takes a Caps argument.
struct Caps {
    int omega_graph_max = 12;         // omega_graph(n) requires n <= this
    int automorphism_max = 32;        // full-group enumeration vertex cap
    int transitivity_max = 128;       // orbit-only transitivity checks
    int branch_and_bound_max = 64;    // alpha / omega / chi exact search
    int sdp_max = 64;                 // Lovasz theta SDP vertex cap
    int fractional_max = 16;          // exact rational LP vertex cap
    int eigh_max = 512;               // dense eigensolver dimension cap
    long long hom_search_max = 8192;  // |V(x)|*|V(y)| cap for homomorphism search
    long long product_max = 1 << 20;  // vertex-count cap for graph products
};

inline const Caps& default_caps() {
    static const Caps c{};
    return c;
}

// Numerical tolerances for matrix predicates. The Frobenius-relative ones
// (herm/idem/orth) are applied as tol * (1 + ||M||_F) unless stated absolute.
struct Tolerances {
    double tol_herm = 1e-9;
    double tol_idem = 1e-9;
    double tol_orth = 1e-9;
    double tol_eig = 1e-12;
};

inline const Tolerances& default_tolerances() {
    static const Tolerances t{};
    return t;
}

// Absolute orthogonality tolerance for certificate verification; compositions
// square the noise, so this is looser than the raw matrix predicates.
inline constexpr double cert_tol = 1e-8;

}  // namespace qgraph
