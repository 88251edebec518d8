#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qgraph/config.hpp"
#include "qgraph/matrix.hpp"

namespace qgraph {

namespace detail {

// One cyclic-Jacobi pass structure for real symmetric matrices, used both
// by the public eigensolver (via the complex path) and by the SDP cone
// projection. A is row-major n x n and is overwritten; V accumulates the
// rotations (caller initializes, typically to I or a warm start).
inline double sym_offdiag_norm(const std::vector<double>& a, int n) {
    double s = 0.0;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) s += a[p * n + q] * a[p * n + q];
    return std::sqrt(2.0 * s);
}

inline int jacobi_real(std::vector<double>& a, std::vector<double>& v, int n,
                       double off_target, int max_sweeps) {
    if (n <= 1) return 0;
    const double skip = off_target / (n * std::sqrt(2.0));
    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        if (sym_offdiag_norm(a, n) <= off_target) return sweep - 1;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (std::abs(apq) <= skip) continue;
                const double app = a[p * n + p], aqq = a[q * n + q];
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p], vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    return max_sweeps;
}

}  // namespace detail

struct EighResult {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // unitary, columns match eigenvalues
    int sweeps = 0;
};

// Cyclic Jacobi for Hermitian matrices. Each (p, q) rotation factors the
// off-diagonal phase out and applies a real rotation, i.e. U = D R with
// D = diag(e^{i phi/2}, e^{-i phi/2}).
inline EighResult eigh(const ComplexMatrix& m,
                       const Tolerances& tol = default_tolerances(),
                       const Caps& caps = default_caps(), int max_sweeps = 64) {
    if (!m.square()) throw std::invalid_argument("eigh: non-square input");
    const int n = m.rows();
    if (n > caps.eigh_max) throw CapError("eigh: dimension exceeds cap");
    if (!is_hermitian(m, tol.tol_herm))
        throw std::invalid_argument("eigh: input is not Hermitian within tolerance");

    ComplexMatrix a = m;
    // enforce exact Hermitian symmetry of the working copy
    for (int i = 0; i < n; ++i) {
        a.at(i, i) = a.at(i, i).real();
        for (int j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
            a.at(i, j) = avg;
            a.at(j, i) = std::conj(avg);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double norm = m.frobenius_norm();
    // converge to half the contract so rotation round-off cannot push the
    // final residual over tol_eig * ||M||
    const double off_target = std::max(0.5 * tol.tol_eig * norm, 1e-300);
    const double skip = off_target / (n == 0 ? 1 : n);

    auto offdiag = [&]() {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += std::norm(a.at(p, q));
        return std::sqrt(2.0 * s);
    };

    int sweeps = 0;
    while (offdiag() > off_target) {
        if (++sweeps > max_sweeps)
            throw std::runtime_error("eigh: no convergence within sweep limit");
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = a.at(p, q);
                const double mag = std::abs(apq);
                if (mag <= skip) continue;
                const Complex w = apq / mag;               // e^{i phi}
                const Complex hw = std::sqrt(w);           // e^{i phi/2}
                const double app = a.at(p, p).real(), aqq = a.at(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex upp = hw * c, upq = hw * s;
                const Complex uqp = -std::conj(hw) * s, uqq = std::conj(hw) * c;
                // columns: A <- A U
                for (int k = 0; k < n; ++k) {
                    const Complex akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = akp * upp + akq * uqp;
                    a.at(k, q) = akp * upq + akq * uqq;
                }
                // rows: A <- U^H A
                for (int k = 0; k < n; ++k) {
                    const Complex apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a.at(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;
                a.at(p, p) = a.at(p, p).real();
                a.at(q, q) = a.at(q, q).real();
                for (int k = 0; k < n; ++k) {
                    const Complex vkp = v.at(k, p), vkq = v.at(k, q);
                    v.at(k, p) = vkp * upp + vkq * uqp;
                    v.at(k, q) = vkp * upq + vkq * uqq;
                }
            }
        }
    }

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int i, int j) { return a.at(i, i).real() < a.at(j, j).real(); });
    EighResult r;
    r.sweeps = sweeps;
    r.eigenvalues.resize(n);
    r.eigenvectors = ComplexMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        r.eigenvalues[j] = a.at(idx[j], idx[j]).real();
        for (int i = 0; i < n; ++i) r.eigenvectors.at(i, j) = v.at(i, idx[j]);
    }

    // residual contract: ||M V - V diag|| <= tol_eig * ||M||
    ComplexMatrix check = m * r.eigenvectors;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) check.at(i, j) -= r.eigenvalues[j] * r.eigenvectors.at(i, j);
    if (check.frobenius_norm() > tol.tol_eig * norm + 1e-12)
        throw std::runtime_error("eigh: residual check failed");
    return r;
}

}  // namespace qgraph
