#pragma once

#include "hyperpart/errors.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace hyperpart {

// Column-major dense complex matrix for the least-squares solver.
template <typename C>
struct DenseMatrix {
    std::int64_t rows = 0, cols = 0;
    std::vector<C> a;  // column-major: a[j*rows + i]

    DenseMatrix(std::int64_t r, std::int64_t c)
        : rows(r), cols(c), a(static_cast<std::size_t>(r * c)) {}
    C& at(std::int64_t i, std::int64_t j) {
        return a[static_cast<std::size_t>(j * rows + i)];
    }
    const C& at(std::int64_t i, std::int64_t j) const {
        return a[static_cast<std::size_t>(j * rows + i)];
    }
};

template <typename C>
struct LsqSolution {
    std::vector<C> x;
    std::int64_t rank = 0;  // columns that survived the pivot cut
};

// Minimizes ||A x - b||_2 by Householder QR, in place. Works for
// C = std::complex<double> (Real = double) and the extended-precision pair
// from quadfloat.hpp. Normal equations are never formed; conditioning is
// squared there, which is exactly what high-degree Vandermonde-style sample
// matrices cannot afford.
//
// Columns whose pivot falls below rcond * max-pivot are truncated: their
// solution component is zero and they carry no residual reduction. On
// decaying-pivot sample matrices this keeps the solution norm bounded by
// 1/rcond, so a later double-precision evaluation of the fitted polynomial
// does not drown in coefficient cancellation; the exact minimizer's
// coefficients grow geometrically with the column index once the pivots
// decay faster than the target's expansion, and chasing them is how a fit
// ends up orders of magnitude worse than a regularized one. The caller
// decides how much surviving rank its use case requires.
template <typename C, typename Real>
LsqSolution<C> householder_lsq(DenseMatrix<C> A, std::vector<C> b, Real rcond) {
    using std::abs;
    using std::sqrt;
    const std::int64_t m = A.rows, n = A.cols;
    if (m < n || static_cast<std::int64_t>(b.size()) != m)
        throw ValidationError("lsq: need rows >= cols and matching rhs");

    std::vector<Real> rdiag(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) {
        // Column norm below the diagonal.
        Real nrm(0);
        for (std::int64_t i = k; i < m; ++i) {
            const Real av = abs(A.at(i, k));
            nrm += av * av;
        }
        nrm = sqrt(nrm);
        rdiag[static_cast<std::size_t>(k)] = nrm;
        if (!(nrm > Real(0))) {
            rdiag[static_cast<std::size_t>(k)] = Real(0);
            continue;  // zero column; rank check below rejects it
        }

        // Householder vector v = x + phase(x0)*nrm*e1, stored in-place.
        C x0 = A.at(k, k);
        const Real ax0 = abs(x0);
        C phase = ax0 > Real(0) ? x0 / C(ax0) : C(Real(1));
        C alpha = phase * C(nrm);
        A.at(k, k) = x0 + alpha;

        Real vnorm2(0);
        for (std::int64_t i = k; i < m; ++i) {
            const Real av = abs(A.at(i, k));
            vnorm2 += av * av;
        }
        if (!(vnorm2 > Real(0))) continue;

        // Apply I - 2 v v^H / (v^H v) to the trailing columns and b.
        for (std::int64_t j = k + 1; j < n; ++j) {
            C dot(Real(0));
            for (std::int64_t i = k; i < m; ++i)
                dot += conj(A.at(i, k)) * A.at(i, j);
            const C f = C(Real(2)) * dot / C(vnorm2);
            for (std::int64_t i = k; i < m; ++i)
                A.at(i, j) -= f * A.at(i, k);
        }
        {
            C dot(Real(0));
            for (std::int64_t i = k; i < m; ++i)
                dot += conj(A.at(i, k)) * b[static_cast<std::size_t>(i)];
            const C f = C(Real(2)) * dot / C(vnorm2);
            for (std::int64_t i = k; i < m; ++i)
                b[static_cast<std::size_t>(i)] -= f * A.at(i, k);
        }
        // R's diagonal entry is -alpha; store magnitude for the rank check.
        A.at(k, k) = -alpha;
    }

    Real dmax(0);
    for (std::int64_t k = 0; k < n; ++k)
        if (rdiag[static_cast<std::size_t>(k)] > dmax)
            dmax = rdiag[static_cast<std::size_t>(k)];
    std::vector<char> keep(static_cast<std::size_t>(n));
    LsqSolution<C> out;
    for (std::int64_t k = 0; k < n; ++k) {
        keep[static_cast<std::size_t>(k)] =
            rdiag[static_cast<std::size_t>(k)] > rcond * dmax ? 1 : 0;
        if (keep[static_cast<std::size_t>(k)]) ++out.rank;
    }

    // Back-substitution on the upper triangle; truncated rows contribute
    // nothing (their component stays zero, their rhs entry is discarded).
    out.x.assign(static_cast<std::size_t>(n), C(Real(0)));
    for (std::int64_t i = n - 1; i >= 0; --i) {
        if (!keep[static_cast<std::size_t>(i)]) continue;
        C acc = b[static_cast<std::size_t>(i)];
        for (std::int64_t j = i + 1; j < n; ++j)
            acc -= A.at(i, j) * out.x[static_cast<std::size_t>(j)];
        out.x[static_cast<std::size_t>(i)] = acc / A.at(i, i);
    }
    return out;
}

} // namespace hyperpart
