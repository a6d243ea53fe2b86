#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "complex_matrix.hpp"
#include "config.hpp"
#include "error.hpp"

namespace dualmat {

struct SVDResult {
    ComplexMatrix U;            // m x m unitary
    std::vector<double> sigma;  // min(m, n) values, descending
    ComplexMatrix V;            // n x n unitary
};

struct EigResult {
    std::vector<double> values;  // real eigenvalues, descending
    ComplexMatrix vectors;       // unitary, columns match values
};

namespace detail {

constexpr double kMachineEps = std::numeric_limits<double>::epsilon();

// Orthonormally extends the first `filled` columns of U to a full basis by
// running modified Gram-Schmidt over the standard basis.  Candidates whose
// projection onto the remaining complement is too short are skipped and
// retried on a later pass; at least one candidate per pass survives, so the
// loop always terminates.
inline void complete_orthonormal_columns(ComplexMatrix& U, int filled) {
    const int m = U.rows();
    std::vector<bool> used(m, false);
    const double accept = 0.25 / std::sqrt(std::max(1, m));
    int passes = 0;
    while (filled < m) {
        if (++passes > m + 1) {
            throw ConvergenceFailure("orthonormal completion failed to make progress");
        }
        for (int cand = 0; cand < m && filled < m; ++cand) {
            if (used[cand]) continue;
            std::vector<Complex> v(m, Complex{});
            v[cand] = 1.0;
            // Two projection rounds keep the result orthogonal to working
            // precision even when the first round removes most of the vector.
            for (int round = 0; round < 2; ++round) {
                for (int j = 0; j < filled; ++j) {
                    Complex dot{};
                    for (int i = 0; i < m; ++i) dot += std::conj(U(i, j)) * v[i];
                    for (int i = 0; i < m; ++i) v[i] -= dot * U(i, j);
                }
            }
            double norm = 0.0;
            for (int i = 0; i < m; ++i) norm += std::norm(v[i]);
            norm = std::sqrt(norm);
            if (norm < accept) continue;
            for (int i = 0; i < m; ++i) U(i, filled) = v[i] / norm;
            used[cand] = true;
            ++filled;
        }
    }
}

// One-sided Jacobi on the columns of A, for m >= n.  Returns full factors.
inline SVDResult svd_tall(const ComplexMatrix& A, const ToleranceConfig& cfg) {
    const int m = A.rows();
    const int n = A.cols();
    ComplexMatrix G = A;
    ComplexMatrix V = ComplexMatrix::identity(n);
    const double conv = std::sqrt(static_cast<double>(std::max(1, m))) * kMachineEps;
    // Columns whose norm falls below round-off relative to the Frobenius norm
    // (which the rotations preserve) hold nothing but noise.  Pairs involving
    // them are skipped: their mutual correlation is O(1) and would otherwise
    // keep the relative convergence test from ever passing.
    const double dead = cm_norm_fro(A) * kMachineEps;
    const double dead2 = dead * dead;

    bool converged = (n <= 1);
    for (int sweep = 0; sweep < cfg.max_sweeps && !converged; ++sweep) {
        converged = true;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double a = 0.0, b = 0.0;
                Complex c{};
                for (int i = 0; i < m; ++i) {
                    a += std::norm(G(i, p));
                    b += std::norm(G(i, q));
                    c += std::conj(G(i, p)) * G(i, q);
                }
                double cabs = std::abs(c);
                if (a <= dead2 || b <= dead2 || cabs <= conv * std::sqrt(a * b)) continue;
                converged = false;
                // Diagonalize the 2x2 Gram block [[a, c], [conj(c), b]].
                Complex phase = c / cabs;
                double theta = (a - b) / (2.0 * cabs);
                double t = (theta >= 0.0 ? -1.0 : 1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double cs = 1.0 / std::sqrt(t * t + 1.0);
                double sn = t * cs;
                Complex spq = sn * std::conj(phase);
                Complex sqp = sn * phase;
                for (int i = 0; i < m; ++i) {
                    Complex gp = G(i, p), gq = G(i, q);
                    G(i, p) = cs * gp - spq * gq;
                    G(i, q) = sqp * gp + cs * gq;
                }
                for (int i = 0; i < n; ++i) {
                    Complex vp = V(i, p), vq = V(i, q);
                    V(i, p) = cs * vp - spq * vq;
                    V(i, q) = sqp * vp + cs * vq;
                }
            }
        }
    }
    if (!converged) {
        throw ConvergenceFailure("one-sided Jacobi sweep limit reached");
    }

    std::vector<double> norms(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += std::norm(G(i, j));
        norms[j] = std::sqrt(s);
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return norms[i] > norms[j]; });

    double sigma_max = n > 0 ? norms[order[0]] : 0.0;
    // Columns below round-off relative to the largest are numerically zero;
    // their directions come from the deterministic basis completion instead.
    double zero_cut = sigma_max * kMachineEps * std::max(m, n);

    SVDResult res;
    res.sigma.resize(n);
    res.U = ComplexMatrix(m, m);
    res.V = ComplexMatrix(n, n);
    int filled = 0;
    for (int k = 0; k < n; ++k) {
        int j = order[k];
        for (int i = 0; i < n; ++i) res.V(i, k) = V(i, j);
        if (norms[j] > zero_cut) {
            res.sigma[k] = norms[j];
            for (int i = 0; i < m; ++i) res.U(i, k) = G(i, j) / norms[j];
            ++filled;
        } else {
            res.sigma[k] = 0.0;
        }
    }
    complete_orthonormal_columns(res.U, filled);
    return res;
}

}  // namespace detail

// Full SVD A = U * diag(sigma) * V^H with unitary U (m x m) and V (n x n),
// singular values sorted descending.
inline SVDResult svd_complex(const ComplexMatrix& A,
                             const ToleranceConfig& cfg = default_tolerances()) {
    if (A.rows() >= A.cols()) return detail::svd_tall(A, cfg);
    SVDResult t = detail::svd_tall(cm_adjoint(A), cfg);
    return SVDResult{std::move(t.V), std::move(t.sigma), std::move(t.U)};
}

inline std::vector<double> singular_values(const ComplexMatrix& A,
                                           const ToleranceConfig& cfg = default_tolerances()) {
    return svd_complex(A, cfg).sigma;
}

// Rank cutoff in the usual relative form: values at or below it are noise.
inline double default_rank_cutoff(int rows, int cols, double sigma_max) {
    return std::max(rows, cols) * detail::kMachineEps * sigma_max;
}

inline int rank_from_sigma(const std::vector<double>& sigma, double cutoff) {
    int r = 0;
    for (double s : sigma)
        if (s > cutoff) ++r;
    return r;
}

inline int matrix_rank(const ComplexMatrix& A,
                       const ToleranceConfig& cfg = default_tolerances()) {
    if (A.rows() == 0 || A.cols() == 0) return 0;
    auto sigma = singular_values(A, cfg);
    double smax = sigma.empty() ? 0.0 : sigma.front();
    return rank_from_sigma(sigma, default_rank_cutoff(A.rows(), A.cols(), smax));
}

// Jacobi eigensolver for Hermitian matrices; eigenvalues descend.
inline EigResult hermitian_eig(const ComplexMatrix& H,
                               const ToleranceConfig& cfg = default_tolerances()) {
    const int n = H.rows();
    if (H.cols() != n) throw ShapeMismatch("hermitian_eig: matrix must be square");
    ComplexMatrix A = H;
    ComplexMatrix V = ComplexMatrix::identity(n);
    double scale = std::max(cm_norm_max(A), 1e-300);
    const double conv = detail::kMachineEps * scale * n;

    bool converged = (n <= 1);
    for (int sweep = 0; sweep < cfg.max_sweeps && !converged; ++sweep) {
        converged = true;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                Complex c = A(p, q);
                double cabs = std::abs(c);
                if (cabs <= conv) continue;
                converged = false;
                double a = A(p, p).real();
                double b = A(q, q).real();
                Complex phase = c / cabs;
                double theta = (a - b) / (2.0 * cabs);
                double t = (theta >= 0.0 ? -1.0 : 1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double cs = 1.0 / std::sqrt(t * t + 1.0);
                double sn = t * cs;
                Complex spq = sn * std::conj(phase);
                Complex sqp = sn * phase;
                // A <- J^H A J applied as column then row updates.
                for (int i = 0; i < n; ++i) {
                    Complex ip = A(i, p), iq = A(i, q);
                    A(i, p) = cs * ip - spq * iq;
                    A(i, q) = sqp * ip + cs * iq;
                }
                for (int j = 0; j < n; ++j) {
                    Complex pj = A(p, j), qj = A(q, j);
                    A(p, j) = cs * pj - std::conj(spq) * qj;
                    A(q, j) = std::conj(sqp) * pj + cs * qj;
                }
                for (int i = 0; i < n; ++i) {
                    Complex ip = V(i, p), iq = V(i, q);
                    V(i, p) = cs * ip - spq * iq;
                    V(i, q) = sqp * ip + cs * iq;
                }
            }
        }
    }
    if (!converged) {
        throw ConvergenceFailure("Hermitian Jacobi sweep limit reached");
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return A(i, i).real() > A(j, j).real(); });
    EigResult res;
    res.values.resize(n);
    res.vectors = ComplexMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        res.values[k] = A(order[k], order[k]).real();
        for (int i = 0; i < n; ++i) res.vectors(i, k) = V(i, order[k]);
    }
    return res;
}

// Inverse via LU with partial pivoting; square invertible input only.
inline ComplexMatrix lu_inverse(const ComplexMatrix& A) {
    const int n = A.rows();
    if (A.cols() != n) throw ShapeMismatch("lu_inverse: matrix must be square");
    ComplexMatrix lu = A;
    ComplexMatrix X = ComplexMatrix::identity(n);
    double scale = cm_norm_max(A);
    const double tiny = std::max(scale, 1.0) * detail::kMachineEps * n * 1e-2;

    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(lu(k, k));
        for (int i = k + 1; i < n; ++i) {
            double v = std::abs(lu(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= tiny) {
            throw SingularStandardPart("matrix is singular to working precision");
        }
        if (piv != k) {
            for (int j = 0; j < n; ++j) {
                std::swap(lu(k, j), lu(piv, j));
                std::swap(X(k, j), X(piv, j));
            }
        }
        Complex inv_piv = 1.0 / lu(k, k);
        for (int i = k + 1; i < n; ++i) {
            Complex f = lu(i, k) * inv_piv;
            if (f == Complex{}) continue;
            lu(i, k) = f;
            for (int j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
            for (int j = 0; j < n; ++j) X(i, j) -= f * X(k, j);
        }
    }
    // Back substitution on the upper triangle.
    for (int k = n - 1; k >= 0; --k) {
        Complex inv_piv = 1.0 / lu(k, k);
        for (int j = 0; j < n; ++j) {
            Complex s = X(k, j);
            for (int i = k + 1; i < n; ++i) s -= lu(k, i) * X(i, j);
            X(k, j) = s * inv_piv;
        }
    }
    return X;
}

// Moore-Penrose inverse through the SVD with the default rank cutoff.
inline ComplexMatrix pinv(const ComplexMatrix& A,
                          const ToleranceConfig& cfg = default_tolerances()) {
    const int m = A.rows(), n = A.cols();
    ComplexMatrix X(n, m);
    if (m == 0 || n == 0) return X;
    SVDResult svd = svd_complex(A, cfg);
    double smax = svd.sigma.empty() ? 0.0 : svd.sigma.front();
    double cut = default_rank_cutoff(m, n, smax);
    for (size_t k = 0; k < svd.sigma.size(); ++k) {
        if (svd.sigma[k] <= cut) continue;
        double inv = 1.0 / svd.sigma[k];
        for (int i = 0; i < n; ++i) {
            Complex vik = svd.V(i, static_cast<int>(k)) * inv;
            for (int j = 0; j < m; ++j) {
                X(i, j) += vik * std::conj(svd.U(j, static_cast<int>(k)));
            }
        }
    }
    return X;
}

// Group inverse through a full-rank factorization A = F * G taken from the
// SVD: X = F * (G F)^-2 * G.  Invertibility of G F is exactly the index-one
// test, so its failure raises NotIndexOne.
inline ComplexMatrix group_inv(const ComplexMatrix& A,
                               const ToleranceConfig& cfg = default_tolerances()) {
    const int n = A.rows();
    if (A.cols() != n) throw ShapeMismatch("group_inv: matrix must be square");
    if (n == 0) return ComplexMatrix(0, 0);
    SVDResult svd = svd_complex(A, cfg);
    double smax = svd.sigma.empty() ? 0.0 : svd.sigma.front();
    double cut = default_rank_cutoff(n, n, smax);
    int r = rank_from_sigma(svd.sigma, cut);
    if (r == 0) return ComplexMatrix(n, n);  // group inverse of the zero matrix

    ComplexMatrix F(n, r), G(r, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < r; ++k) F(i, k) = svd.U(i, k) * svd.sigma[k];
    for (int k = 0; k < r; ++k)
        for (int j = 0; j < n; ++j) G(k, j) = std::conj(svd.V(j, k));

    ComplexMatrix S = cm_mul(G, F);
    auto s_sigma = singular_values(S, cfg);
    double s_max = s_sigma.empty() ? 0.0 : s_sigma.front();
    if (rank_from_sigma(s_sigma, default_rank_cutoff(r, r, s_max)) < r) {
        throw NotIndexOne("rank of the square differs from the rank of the matrix");
    }
    ComplexMatrix Si = lu_inverse(S);
    return cm_mul(cm_mul(F, cm_mul(Si, Si)), G);
}

// Core inverse of an index-one matrix: group inverse projected back through
// the Moore-Penrose inverse.
inline ComplexMatrix core_inv(const ComplexMatrix& A,
                              const ToleranceConfig& cfg = default_tolerances()) {
    return cm_mul(cm_mul(group_inv(A, cfg), A), pinv(A, cfg));
}

}  // namespace dualmat
