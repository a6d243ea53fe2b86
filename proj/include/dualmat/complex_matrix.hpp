#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "dual_scalar.hpp"
#include "error.hpp"

namespace dualmat {

// Dense complex matrix, row-major.  Sizes stay small (a few hundred at most),
// so plain triple loops are all the linear algebra this library needs.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Complex& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const Complex& operator()(int i, int j) const {
        return data_[static_cast<size_t>(i) * cols_ + j];
    }

    const std::vector<Complex>& data() const { return data_; }
    std::vector<Complex>& data() { return data_; }

    static ComplexMatrix identity(int n) {
        ComplexMatrix I(n, n);
        for (int i = 0; i < n; ++i) I(i, i) = 1.0;
        return I;
    }

    static ComplexMatrix zeros(int rows, int cols) { return ComplexMatrix(rows, cols); }

    ComplexMatrix block(int row0, int col0, int nrows, int ncols) const {
        ComplexMatrix B(nrows, ncols);
        for (int i = 0; i < nrows; ++i)
            for (int j = 0; j < ncols; ++j) B(i, j) = (*this)(row0 + i, col0 + j);
        return B;
    }

    void set_block(int row0, int col0, const ComplexMatrix& B) {
        for (int i = 0; i < B.rows(); ++i)
            for (int j = 0; j < B.cols(); ++j) (*this)(row0 + i, col0 + j) = B(i, j);
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Complex> data_;
};

inline void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                               const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeMismatch(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                            "x" + std::to_string(b.cols()) + " differ");
    }
}

inline ComplexMatrix cm_add(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "cm_add");
    ComplexMatrix c(a.rows(), a.cols());
    for (size_t k = 0; k < c.data().size(); ++k) c.data()[k] = a.data()[k] + b.data()[k];
    return c;
}

inline ComplexMatrix cm_sub(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "cm_sub");
    ComplexMatrix c(a.rows(), a.cols());
    for (size_t k = 0; k < c.data().size(); ++k) c.data()[k] = a.data()[k] - b.data()[k];
    return c;
}

inline ComplexMatrix cm_scale(const ComplexMatrix& a, Complex alpha) {
    ComplexMatrix c(a.rows(), a.cols());
    for (size_t k = 0; k < c.data().size(); ++k) c.data()[k] = alpha * a.data()[k];
    return c;
}

inline ComplexMatrix cm_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeMismatch("cm_mul: inner dimensions " + std::to_string(a.cols()) + " and " +
                            std::to_string(b.rows()) + " differ");
    }
    ComplexMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

inline ComplexMatrix cm_adjoint(const ComplexMatrix& a) {
    ComplexMatrix c(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

inline double cm_norm_max(const ComplexMatrix& a) {
    double m = 0.0;
    for (const auto& v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

inline double cm_norm_fro(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& v : a.data()) s += std::norm(v);
    return std::sqrt(s);
}

inline bool cm_approx_eq(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (size_t k = 0; k < a.data().size(); ++k)
        if (std::abs(a.data()[k] - b.data()[k]) > tol) return false;
    return true;
}

// Relative deviation used by residual reports: max-norm difference scaled by
// the larger of 1 and the operand norms, so tolerances stay meaningful for
// both tiny and large matrices.
inline double cm_rel_dev(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "cm_rel_dev");
    double denom = std::max({1.0, cm_norm_max(a), cm_norm_max(b)});
    return cm_norm_max(cm_sub(a, b)) / denom;
}

}  // namespace dualmat
