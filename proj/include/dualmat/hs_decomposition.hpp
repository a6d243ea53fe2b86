#pragma once

#include <map>
#include <string>
#include <vector>

#include "dual_svd.hpp"

namespace dualmat {

// Unitary similarity forms for square dual matrices, all derived from the
// dual SVD through the block structure of W = V^* U.

// A = U * [Sigma0 K0, Sigma0 L0; 0, 0] * U^* with [K0 L0] the top block row
// of W partitioned at the dual rank t.
struct HSBasic {
    DualMatrix U;
    std::vector<DualReal> Sigma0;  // t nonzero dual singular values
    DualMatrix K0;                 // t x t
    DualMatrix L0;                 // t x (n - t)
};

// A = U * [Sigma1 K, Sigma1 L; Sigma2 M, Sigma2 N] * U^* with W partitioned
// at the appreciable rank r.  Sigma2 is padded with zeros to length n - r.
struct HSPartitioned {
    DualMatrix U;
    std::vector<DualReal> Sigma1;  // r appreciable dual singular values
    std::vector<DualReal> Sigma2;  // n - r values, infinitesimal then zero
    DualMatrix K;                  // r x r
    DualMatrix L;                  // r x (n - r)
    DualMatrix M;                  // (n - r) x r
    DualMatrix N;                  // (n - r) x (n - r)
};

// The partitioned form with every dual block split into standard and
// infinitesimal parts (K = K1 + eps K2 and so on).
struct HSRefined {
    DualMatrix U;
    ComplexMatrix K1, K2;
    ComplexMatrix L1, L2;
    ComplexMatrix M1, M2;
    ComplexMatrix N1, N2;
    std::vector<double> Sigma1s;  // length r
    std::vector<double> Sigma1d;  // length r
    std::vector<double> Sigma2d;  // length n - r, zero padded
};

namespace detail {

inline void require_square(const DualMatrix& A, const char* op) {
    if (A.rows() != A.cols()) {
        throw ShapeMismatch(std::string(op) + ": matrix must be square, got " +
                            std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
    }
}

// Left-multiplies a block row by a dual diagonal given as (s, d) pairs.
inline DualMatrix diag_times(const std::vector<DualReal>& diag, const DualMatrix& B) {
    DualMatrix out = DualMatrix::zeros(B.rows(), B.cols());
    for (int i = 0; i < B.rows(); ++i) {
        DualReal mu = i < static_cast<int>(diag.size()) ? diag[i] : DualReal{};
        for (int j = 0; j < B.cols(); ++j) {
            out.S(i, j) = mu.s * B.S(i, j);
            out.D(i, j) = mu.s * B.D(i, j) + mu.d * B.S(i, j);
        }
    }
    return out;
}

}  // namespace detail

inline HSBasic hs_basic(const DualMatrix& A,
                        const ToleranceConfig& cfg = default_tolerances()) {
    detail::require_square(A, "hs_basic");
    const int n = A.rows();
    DualSVD f = dual_svd(A, cfg);
    DualMatrix W = dm_mul(dm_adjoint(f.V), f.U);
    HSBasic out;
    out.U = f.U;
    out.Sigma0 = f.sigma;
    out.K0 = dm_block(W, 0, 0, f.t, f.t);
    out.L0 = dm_block(W, 0, f.t, f.t, n - f.t);
    return out;
}

inline HSPartitioned hs_partitioned(const DualMatrix& A,
                                    const ToleranceConfig& cfg = default_tolerances()) {
    detail::require_square(A, "hs_partitioned");
    const int n = A.rows();
    DualSVD f = dual_svd(A, cfg);
    DualMatrix W = dm_mul(dm_adjoint(f.V), f.U);
    HSPartitioned out;
    out.U = f.U;
    out.Sigma1.assign(f.sigma.begin(), f.sigma.begin() + f.r);
    out.Sigma2.assign(static_cast<size_t>(n - f.r), DualReal{});
    for (int k = 0; k < f.t - f.r; ++k) out.Sigma2[k] = {0.0, f.Sigma2d[k]};
    out.K = dm_block(W, 0, 0, f.r, f.r);
    out.L = dm_block(W, 0, f.r, f.r, n - f.r);
    out.M = dm_block(W, f.r, 0, n - f.r, f.r);
    out.N = dm_block(W, f.r, f.r, n - f.r, n - f.r);
    return out;
}

inline HSRefined hs_refined(const DualMatrix& A,
                            const ToleranceConfig& cfg = default_tolerances()) {
    detail::require_square(A, "hs_refined");
    const int n = A.rows();
    HSPartitioned p = hs_partitioned(A, cfg);
    const int r = static_cast<int>(p.Sigma1.size());
    HSRefined out;
    out.U = p.U;
    out.K1 = p.K.S;
    out.K2 = p.K.D;
    out.L1 = p.L.S;
    out.L2 = p.L.D;
    out.M1 = p.M.S;
    out.M2 = p.M.D;
    out.N1 = p.N.S;
    out.N2 = p.N.D;
    out.Sigma1s.resize(r);
    out.Sigma1d.resize(r);
    for (int k = 0; k < r; ++k) {
        out.Sigma1s[k] = p.Sigma1[k].s;
        out.Sigma1d[k] = p.Sigma1[k].d;
    }
    out.Sigma2d.resize(static_cast<size_t>(n - r));
    for (int k = 0; k < n - r; ++k) out.Sigma2d[k] = p.Sigma2[k].d;
    return out;
}

inline DualMatrix hs_reconstruct(const HSBasic& f) {
    const int n = f.U.rows();
    const int t = static_cast<int>(f.Sigma0.size());
    DualMatrix inner = DualMatrix::zeros(n, n);
    dm_set_block(inner, 0, 0, detail::diag_times(f.Sigma0, f.K0));
    dm_set_block(inner, 0, t, detail::diag_times(f.Sigma0, f.L0));
    return dm_mul(dm_mul(f.U, inner), dm_adjoint(f.U));
}

inline DualMatrix hs_reconstruct(const HSPartitioned& f) {
    const int n = f.U.rows();
    const int r = static_cast<int>(f.Sigma1.size());
    DualMatrix inner = DualMatrix::zeros(n, n);
    dm_set_block(inner, 0, 0, detail::diag_times(f.Sigma1, f.K));
    dm_set_block(inner, 0, r, detail::diag_times(f.Sigma1, f.L));
    dm_set_block(inner, r, 0, detail::diag_times(f.Sigma2, f.M));
    dm_set_block(inner, r, r, detail::diag_times(f.Sigma2, f.N));
    return dm_mul(dm_mul(f.U, inner), dm_adjoint(f.U));
}

inline DualMatrix hs_reconstruct(const HSRefined& f) {
    const int n = f.U.rows();
    const int r = static_cast<int>(f.Sigma1s.size());
    DualMatrix inner = DualMatrix::zeros(n, n);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            inner.S(i, j) = f.Sigma1s[i] * f.K1(i, j);
            inner.D(i, j) = f.Sigma1d[i] * f.K1(i, j) + f.Sigma1s[i] * f.K2(i, j);
        }
        for (int j = 0; j < n - r; ++j) {
            inner.S(i, r + j) = f.Sigma1s[i] * f.L1(i, j);
            inner.D(i, r + j) = f.Sigma1d[i] * f.L1(i, j) + f.Sigma1s[i] * f.L2(i, j);
        }
    }
    for (int i = 0; i < n - r; ++i) {
        for (int j = 0; j < r; ++j) inner.D(r + i, j) = f.Sigma2d[i] * f.M1(i, j);
        for (int j = 0; j < n - r; ++j) inner.D(r + i, r + j) = f.Sigma2d[i] * f.N1(i, j);
    }
    return dm_mul(dm_mul(f.U, inner), dm_adjoint(f.U));
}

// Essential part expressed inside the refined form: the appreciable block row
// keeps its dual singular values, while the infinitesimal block row drops.
inline DualMatrix essential_in_hs(const DualMatrix& A,
                                  const ToleranceConfig& cfg = default_tolerances()) {
    detail::require_square(A, "essential_in_hs");
    HSRefined f = hs_refined(A, cfg);
    const int n = f.U.rows();
    const int r = static_cast<int>(f.Sigma1s.size());
    DualMatrix inner = DualMatrix::zeros(n, n);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            inner.S(i, j) = f.Sigma1s[i] * f.K1(i, j);
            inner.D(i, j) = f.Sigma1d[i] * f.K1(i, j) + f.Sigma1s[i] * f.K2(i, j);
        }
        for (int j = 0; j < n - r; ++j) {
            inner.S(i, r + j) = f.Sigma1s[i] * f.L1(i, j);
            inner.D(i, r + j) = f.Sigma1d[i] * f.L1(i, j) + f.Sigma1s[i] * f.L2(i, j);
        }
    }
    return dm_mul(dm_mul(f.U, inner), dm_adjoint(f.U));
}

// Residuals of the unitarity constraints each form must satisfy.
inline std::map<std::string, double> hs_constraint_residuals(const HSBasic& f) {
    DualMatrix I = DualMatrix::identity(f.K0.rows());
    DualMatrix g = dm_add(dm_mul(f.K0, dm_adjoint(f.K0)), dm_mul(f.L0, dm_adjoint(f.L0)));
    return {{"k0k0_plus_l0l0_is_identity", dm_max_dev(g, I)}};
}

inline std::map<std::string, double> hs_constraint_residuals(const HSPartitioned& f) {
    const int r = f.K.rows();
    const int c = f.N.rows();
    DualMatrix top = dm_add(dm_mul(f.K, dm_adjoint(f.K)), dm_mul(f.L, dm_adjoint(f.L)));
    DualMatrix cross = dm_add(dm_mul(f.K, dm_adjoint(f.M)), dm_mul(f.L, dm_adjoint(f.N)));
    DualMatrix bottom = dm_add(dm_mul(f.M, dm_adjoint(f.M)), dm_mul(f.N, dm_adjoint(f.N)));
    return {
        {"kk_plus_ll_is_identity", dm_max_dev(top, DualMatrix::identity(r))},
        {"km_plus_ln_is_zero", dm_max_dev(cross, DualMatrix::zeros(r, c))},
        {"mm_plus_nn_is_identity", dm_max_dev(bottom, DualMatrix::identity(c))},
    };
}

inline std::map<std::string, double> hs_constraint_residuals(const HSRefined& f) {
    const int r = f.K1.rows();
    const int c = f.N1.rows();
    ComplexMatrix I_r = ComplexMatrix::identity(r);
    ComplexMatrix I_c = ComplexMatrix::identity(c);
    ComplexMatrix std_top =
        cm_add(cm_mul(f.K1, cm_adjoint(f.K1)), cm_mul(f.L1, cm_adjoint(f.L1)));
    ComplexMatrix dual_top = cm_add(
        cm_add(cm_mul(f.K1, cm_adjoint(f.K2)), cm_mul(f.K2, cm_adjoint(f.K1))),
        cm_add(cm_mul(f.L1, cm_adjoint(f.L2)), cm_mul(f.L2, cm_adjoint(f.L1))));
    ComplexMatrix std_bottom =
        cm_add(cm_mul(f.M1, cm_adjoint(f.M1)), cm_mul(f.N1, cm_adjoint(f.N1)));
    ComplexMatrix std_cross =
        cm_add(cm_mul(f.K1, cm_adjoint(f.M1)), cm_mul(f.L1, cm_adjoint(f.N1)));
    return {
        {"k1k1_plus_l1l1_is_identity", cm_norm_max(cm_sub(std_top, I_r))},
        {"dual_part_of_top_row_gram_is_zero", cm_norm_max(dual_top)},
        {"m1m1_plus_n1n1_is_identity", cm_norm_max(cm_sub(std_bottom, I_c))},
        {"k1m1_plus_l1n1_is_zero", cm_norm_max(std_cross)},
    };
}

}  // namespace dualmat
