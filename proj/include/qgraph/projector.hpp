#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgraph/config.hpp"
#include "qgraph/eigh.hpp"
#include "qgraph/matrix.hpp"
#include "qgraph/rng.hpp"

namespace qgraph {

// Orthogonal projector with cached rank. Rank is round(trace); a mismatch
// between that and the eigenvalue count is an error, because certificate
// verification does rank arithmetic on these.
class Projector {
public:
    static Projector validate(const ComplexMatrix& m,
                              const Tolerances& tol = default_tolerances()) {
        if (!m.square()) throw std::invalid_argument("projector: non-square");
        const double scale = 1.0 + m.frobenius_norm();
        if (hermitian_deviation(m) > tol.tol_herm * scale)
            throw std::invalid_argument("projector: not Hermitian within tolerance");
        if (idempotency_deviation(m) > tol.tol_idem * scale)
            throw std::invalid_argument("projector: not idempotent within tolerance");
        const double tr = m.trace().real();
        const int r = static_cast<int>(std::lround(tr));
        if (std::abs(tr - r) > tol.tol_idem * scale)
            throw std::invalid_argument("projector: trace not integral within tolerance");
        int eigcount = 0;
        for (double ev : eigh(m, tol).eigenvalues)
            if (ev > 0.5) ++eigcount;
        if (eigcount != r)
            throw std::invalid_argument("projector: rank " + std::to_string(r) +
                                        " disagrees with eigenvalue count " +
                                        std::to_string(eigcount));
        Projector p;
        p.m_ = m;
        p.rank_ = r;
        return p;
    }

    const ComplexMatrix& matrix() const { return m_; }
    int rank() const { return rank_; }
    int dim() const { return m_.rows(); }

private:
    Projector() = default;
    ComplexMatrix m_;
    int rank_ = 0;
};

namespace detail {

// Modified Gram-Schmidt with one re-orthogonalization pass; columns of a
// are replaced by an orthonormal basis of their span.
inline void orthonormalize_columns(ComplexMatrix& a) {
    for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < a.cols(); ++j) {
            for (int k = 0; k < j; ++k) {
                Complex dot = 0.0;
                for (int i = 0; i < a.rows(); ++i) dot += std::conj(a.at(i, k)) * a.at(i, j);
                for (int i = 0; i < a.rows(); ++i) a.at(i, j) -= dot * a.at(i, k);
            }
            double norm = 0.0;
            for (int i = 0; i < a.rows(); ++i) norm += std::norm(a.at(i, j));
            norm = std::sqrt(norm);
            if (norm < 1e-12)
                throw std::runtime_error("orthonormalize: rank-deficient frame");
            for (int i = 0; i < a.rows(); ++i) a.at(i, j) /= norm;
        }
    }
}

inline ComplexMatrix random_gaussian(int rows, int cols, Rng& rng) {
    ComplexMatrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            g.at(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    return g;
}

}  // namespace detail

// Projector onto the span of r QR-orthonormalized Gaussian columns.
inline Projector random_projector(int d, int r, std::uint64_t seed,
                                  const Tolerances& tol = default_tolerances()) {
    if (r < 0 || r > d) throw std::invalid_argument("random_projector: need 0 <= r <= d");
    if (r == 0) return Projector::validate(ComplexMatrix::zeros(d, d), tol);
    Rng rng(seed);
    ComplexMatrix q = detail::random_gaussian(d, r, rng);
    detail::orthonormalize_columns(q);
    return Projector::validate(q * q.adjoint(), tol);
}

// Two projectors are orthogonal if PQ = 0.
inline bool is_orthogonal_pair(const ComplexMatrix& p, const ComplexMatrix& q, double tol) {
    return (p * q).frobenius_norm() <= tol;
}

inline bool is_orthogonal_pair(const Projector& p, const Projector& q,
                               const Tolerances& tol = default_tolerances()) {
    return is_orthogonal_pair(p.matrix(), q.matrix(), tol.tol_orth * (1.0 + p.matrix().frobenius_norm()));
}

}  // namespace qgraph
