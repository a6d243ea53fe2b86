#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "complex_linalg.hpp"
#include "complex_matrix.hpp"
#include "config.hpp"
#include "dual_scalar.hpp"
#include "error.hpp"

namespace dualmat {

// A dual complex matrix S + eps * D stored as two aligned dense blocks.
struct DualMatrix {
    ComplexMatrix S;
    ComplexMatrix D;

    DualMatrix() = default;
    DualMatrix(ComplexMatrix s, ComplexMatrix d) : S(std::move(s)), D(std::move(d)) {
        require_same_shape(S, D, "DualMatrix");
    }
    explicit DualMatrix(const ComplexMatrix& s)
        : S(s), D(ComplexMatrix::zeros(s.rows(), s.cols())) {}

    int rows() const { return S.rows(); }
    int cols() const { return S.cols(); }

    DualComplex at(int i, int j) const { return {S(i, j), D(i, j)}; }

    static DualMatrix identity(int n) {
        return DualMatrix(ComplexMatrix::identity(n), ComplexMatrix::zeros(n, n));
    }
    static DualMatrix zeros(int rows, int cols) {
        return DualMatrix(ComplexMatrix::zeros(rows, cols), ComplexMatrix::zeros(rows, cols));
    }
};

// Working scale of a dual matrix; tolerances multiply against this.
inline double dm_scale(const DualMatrix& A) {
    return std::max({cm_norm_max(A.S), cm_norm_max(A.D), 1.0});
}

inline DualMatrix dm_add(const DualMatrix& a, const DualMatrix& b) {
    return DualMatrix(cm_add(a.S, b.S), cm_add(a.D, b.D));
}

inline DualMatrix dm_sub(const DualMatrix& a, const DualMatrix& b) {
    return DualMatrix(cm_sub(a.S, b.S), cm_sub(a.D, b.D));
}

inline DualMatrix dm_scale_by(const DualMatrix& a, const DualComplex& alpha) {
    return DualMatrix(cm_scale(a.S, alpha.s),
                      cm_add(cm_scale(a.D, alpha.s), cm_scale(a.S, alpha.d)));
}

// (S_a + eps D_a)(S_b + eps D_b) = S_a S_b + eps (S_a D_b + D_a S_b).
inline DualMatrix dm_mul(const DualMatrix& a, const DualMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeMismatch("dm_mul: inner dimensions " + std::to_string(a.cols()) +
                            " and " + std::to_string(b.rows()) + " differ");
    }
    return DualMatrix(cm_mul(a.S, b.S), cm_add(cm_mul(a.S, b.D), cm_mul(a.D, b.S)));
}

inline DualMatrix dm_adjoint(const DualMatrix& a) {
    return DualMatrix(cm_adjoint(a.S), cm_adjoint(a.D));
}

// Inverse of a dual matrix whose standard part is invertible:
// (S + eps D)^-1 = S^-1 - eps S^-1 D S^-1.
inline DualMatrix dm_inv(const DualMatrix& a,
                         const ToleranceConfig& cfg = default_tolerances()) {
    if (a.rows() != a.cols()) throw ShapeMismatch("dm_inv: matrix must be square");
    if (a.rows() == 0) return DualMatrix::zeros(0, 0);
    (void)cfg;
    ComplexMatrix Si = lu_inverse(a.S);  // raises SingularStandardPart
    ComplexMatrix Di = cm_scale(cm_mul(Si, cm_mul(a.D, Si)), Complex{-1.0, 0.0});
    return DualMatrix(std::move(Si), std::move(Di));
}

inline double dm_max_dev(const DualMatrix& a, const DualMatrix& b) {
    require_same_shape(a.S, b.S, "dm_max_dev");
    return std::max(cm_norm_max(cm_sub(a.S, b.S)), cm_norm_max(cm_sub(a.D, b.D)));
}

// Entrywise comparison in both parts at tol * scale.
inline bool dm_approx_eq(const DualMatrix& a, const DualMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    double scale = std::max(dm_scale(a), dm_scale(b));
    return dm_max_dev(a, b) <= tol * scale;
}

// Relative deviation mirroring cm_rel_dev for dual operands.
inline double dm_rel_dev(const DualMatrix& a, const DualMatrix& b) {
    return dm_max_dev(a, b) / std::max(dm_scale(a), dm_scale(b));
}

inline DualMatrix dm_block(const DualMatrix& a, int row0, int col0, int nrows, int ncols) {
    return DualMatrix(a.S.block(row0, col0, nrows, ncols), a.D.block(row0, col0, nrows, ncols));
}

inline void dm_set_block(DualMatrix& a, int row0, int col0, const DualMatrix& B) {
    a.S.set_block(row0, col0, B.S);
    a.D.set_block(row0, col0, B.D);
}

// X is dual unitary when X^* X = X X^* = I, checking both parts.
inline bool is_dual_unitary(const DualMatrix& X, double tol) {
    if (X.rows() != X.cols()) return false;
    DualMatrix I = DualMatrix::identity(X.rows());
    DualMatrix Xh = dm_adjoint(X);
    return dm_max_dev(dm_mul(Xh, X), I) <= tol && dm_max_dev(dm_mul(X, Xh), I) <= tol;
}

}  // namespace dualmat
