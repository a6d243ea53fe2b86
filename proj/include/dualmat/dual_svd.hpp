#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "complex_linalg.hpp"
#include "dual_matrix.hpp"

namespace dualmat {

// Dual singular value decomposition A = U * Sigma * V^* with dual unitary
// U, V and a dual diagonal Sigma.  The first r singular values are
// appreciable (sigma[k] = Sigma1s[k] + eps Sigma1d[k]); the next t - r are
// purely infinitesimal (eps Sigma2d[k]); the remaining diagonal is zero.
struct DualSVD {
    DualMatrix U;                // m x m dual unitary
    DualMatrix V;                // n x n dual unitary
    std::vector<DualReal> sigma; // the t nonzero dual singular values, descending
    int r = 0;                   // appreciable rank
    int t = 0;                   // dual rank
    std::vector<double> Sigma1s; // length r
    std::vector<double> Sigma1d; // length r
    std::vector<double> Sigma2d; // length t - r
};

namespace detail {

// Threshold below which a scalar (standard or infinitesimal part) counts as
// zero at the working scale of the matrix.
inline double zero_threshold(const DualMatrix& A, const ToleranceConfig& cfg) {
    return cfg.appreciable * std::max(1.0, dm_scale(A));
}

// Make the largest-modulus entry of column k of U real positive, applying the
// same phase to the paired column of V so the product is unchanged.
inline void canonicalize_pair_phases(ComplexMatrix& U, ComplexMatrix& V, int pairs) {
    for (int k = 0; k < pairs; ++k) {
        int arg = 0;
        double best = 0.0;
        for (int i = 0; i < U.rows(); ++i) {
            double v = std::abs(U(i, k));
            if (v > best) {
                best = v;
                arg = i;
            }
        }
        if (best <= 0.0) continue;
        Complex ph = U(arg, k) / best;
        for (int i = 0; i < U.rows(); ++i) U(i, k) /= ph;
        for (int i = 0; i < V.rows(); ++i) V(i, k) /= ph;
    }
}

}  // namespace detail

inline int appreciable_rank(const DualMatrix& A,
                            const ToleranceConfig& cfg = default_tolerances()) {
    if (A.rows() == 0 || A.cols() == 0) return 0;
    auto s = singular_values(A.S, cfg);
    double thr = detail::zero_threshold(A, cfg);
    return rank_from_sigma(s, thr);
}

inline DualSVD dual_svd(const DualMatrix& A,
                        const ToleranceConfig& cfg = default_tolerances()) {
    const int m = A.rows();
    const int n = A.cols();
    const int mn = std::min(m, n);
    const double thr = detail::zero_threshold(A, cfg);

    DualSVD out;
    if (m == 0 || n == 0) {
        out.U = DualMatrix::identity(m);
        out.V = DualMatrix::identity(n);
        return out;
    }

    SVDResult svd = svd_complex(A.S, cfg);
    ComplexMatrix U = std::move(svd.U);
    ComplexMatrix V = std::move(svd.V);
    std::vector<double> s = std::move(svd.sigma);
    const int r = rank_from_sigma(s, thr);
    detail::canonicalize_pair_phases(U, V, mn);

    auto compute_b = [&]() { return cm_mul(cm_adjoint(U), cm_mul(A.D, V)); };
    ComplexMatrix B = compute_b();

    // Cluster appreciable singular values whose relative gap is below the
    // grouping tolerance; perturbation formulas degenerate inside a cluster.
    std::vector<int> cluster(r, 0);
    bool have_groups = false;
    for (int k = 1; k < r; ++k) {
        if (s[k - 1] - s[k] <= cfg.grouping * s[k - 1]) {
            cluster[k] = cluster[k - 1];
            have_groups = true;
        } else {
            cluster[k] = cluster[k - 1] + 1;
        }
    }

    // Within a cluster, rotate both factors by the eigenbasis of the
    // Hermitian part of the corresponding block of B.  That makes the block's
    // Hermitian part diagonal (these are the infinitesimal parts of the
    // repeated singular values) and orders them descending, so ties in the
    // standard part sort by the dual part.
    if (have_groups) {
        int k = 0;
        while (k < r) {
            int j = k;
            while (j + 1 < r && cluster[j + 1] == cluster[k]) ++j;
            int size = j - k + 1;
            if (size > 1) {
                ComplexMatrix Bg(size, size);
                for (int a = 0; a < size; ++a)
                    for (int b = 0; b < size; ++b) Bg(a, b) = B(k + a, k + b);
                ComplexMatrix Hg = cm_scale(cm_add(Bg, cm_adjoint(Bg)), Complex{0.5, 0.0});
                EigResult eig = hermitian_eig(Hg, cfg);
                ComplexMatrix Ug = U.block(0, k, m, size);
                ComplexMatrix Vg = V.block(0, k, n, size);
                U.set_block(0, k, cm_mul(Ug, eig.vectors));
                V.set_block(0, k, cm_mul(Vg, eig.vectors));
            }
            k = j + 1;
        }
        B = compute_b();
    }

    // Diagonalize the null-space block of B by its own SVD; the resulting
    // singular values are the purely infinitesimal dual singular values.
    std::vector<double> s2;
    if (m - r > 0 && n - r > 0) {
        ComplexMatrix B22 = B.block(r, r, m - r, n - r);
        SVDResult inner = svd_complex(B22, cfg);
        s2 = std::move(inner.sigma);
        U.set_block(0, r, cm_mul(U.block(0, r, m, m - r), inner.U));
        V.set_block(0, r, cm_mul(V.block(0, r, n, n - r), inner.V));
        B = compute_b();
    }

    // Solve for skew-Hermitian corrections X, Y so that
    // (U(I + eps X))^* A (V(I + eps Y)) is dual diagonal.
    ComplexMatrix X(m, m), Y(n, n);
    std::vector<double> d1(r, 0.0);
    for (int i = 0; i < r; ++i) {
        d1[i] = B(i, i).real();
        X(i, i) = Complex{0.0, B(i, i).imag() / s[i]};
    }
    for (int i = 0; i < r; ++i) {
        for (int j = i + 1; j < r; ++j) {
            Complex bij = B(i, j), bji_c = std::conj(B(j, i));
            if (cluster[i] == cluster[j]) {
                // Degenerate pair: the rotation above removed the Hermitian
                // part, leaving one consistent equation; take the minimal
                // norm solution with Y = 0.
                Complex x = (s[j] * bij - s[i] * bji_c) / (s[i] * s[i] + s[j] * s[j]);
                X(i, j) = x;
                X(j, i) = -std::conj(x);
            } else {
                double denom = s[j] * s[j] - s[i] * s[i];
                Complex x = (s[j] * bij + s[i] * bji_c) / denom;
                Complex y = (s[i] * bij + s[j] * bji_c) / denom;
                X(i, j) = x;
                X(j, i) = -std::conj(x);
                Y(i, j) = y;
                Y(j, i) = -std::conj(y);
            }
        }
    }
    // Coupling between the appreciable range and the null space.
    for (int i = 0; i < r; ++i) {
        for (int j = r; j < n; ++j) {
            Complex y = -B(i, j) / s[i];
            Y(i, j) = y;
            Y(j, i) = -std::conj(y);
        }
        for (int j = r; j < m; ++j) {
            Complex x = B(j, i) / s[i];
            X(j, i) = x;
            X(i, j) = -std::conj(x);
        }
    }

    out.r = r;
    out.t = r;
    out.Sigma1s.assign(s.begin(), s.begin() + r);
    out.Sigma1d = d1;
    for (int i = 0; i < r; ++i) out.sigma.push_back({s[i], d1[i]});
    for (double v : s2) {
        if (v > thr) {
            out.Sigma2d.push_back(v);
            out.sigma.push_back({0.0, v});
            ++out.t;
        }
    }
    out.U = DualMatrix(U, cm_mul(U, X));
    out.V = DualMatrix(V, cm_mul(V, Y));
    return out;
}

inline int dual_rank(const DualMatrix& A,
                     const ToleranceConfig& cfg = default_tolerances()) {
    return dual_svd(A, cfg).t;
}

// The m x n dual diagonal carrying all t nonzero dual singular values.
inline DualMatrix dual_sigma_matrix(const DualSVD& f, int rows, int cols) {
    DualMatrix S = DualMatrix::zeros(rows, cols);
    for (int k = 0; k < f.t; ++k) {
        S.S(k, k) = f.sigma[k].s;
        S.D(k, k) = f.sigma[k].d;
    }
    return S;
}

inline DualMatrix dual_svd_reconstruct(const DualSVD& f) {
    DualMatrix S = dual_sigma_matrix(f, f.U.rows(), f.V.rows());
    return dm_mul(dm_mul(f.U, S), dm_adjoint(f.V));
}

// Essential part: keep only the appreciable singular values.
inline DualMatrix essential_part_from(const DualSVD& f) {
    DualMatrix S = DualMatrix::zeros(f.U.rows(), f.V.rows());
    for (int k = 0; k < f.r; ++k) {
        S.S(k, k) = f.sigma[k].s;
        S.D(k, k) = f.sigma[k].d;
    }
    return dm_mul(dm_mul(f.U, S), dm_adjoint(f.V));
}

inline DualMatrix essential_part(const DualMatrix& A,
                                 const ToleranceConfig& cfg = default_tolerances()) {
    return essential_part_from(dual_svd(A, cfg));
}

}  // namespace dualmat
