#pragma once

// Shared helpers for the test suite: fixture access, the worked example
// matrices with their reference decomposition and inverse values, and small
// construction utilities used across test files.

#include <string>
#include <vector>

#include <dualmat/dualmat.hpp>

namespace testutil {

using dualmat::Complex;
using dualmat::ComplexMatrix;
using dualmat::DualMatrix;

inline std::string fixture_path(const std::string& name) {
    return std::string(DUALMAT_FIXTURES_DIR) + "/" + name;
}

inline DualMatrix load_fixture(const std::string& name) {
    return dualmat::read_matrix_file(fixture_path(name));
}

inline DualMatrix dual_from_rows(int rows, int cols, const std::vector<double>& s,
                                 const std::vector<double>& d) {
    ComplexMatrix S(rows, cols), D(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            S(i, j) = s[static_cast<std::size_t>(i) * cols + j];
            D(i, j) = d[static_cast<std::size_t>(i) * cols + j];
        }
    return DualMatrix(std::move(S), std::move(D));
}

// 4x4 with one purely infinitesimal singular direction: sigma = {2+e, 1+e, 3e},
// appreciable rank 2, dual rank 3.  Its Moore-Penrose inverse does not exist.
inline DualMatrix example_rank_mismatch() {
    return dual_from_rows(4, 4,
                          {1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                          {1, -3, 0, -3, 3, 1, -4, -2, -1, 2, 3, 0, 1, -2, 0, 0});
}

// 4x4 variant whose infinitesimal part stays inside the appreciable
// directions: sigma = {2+e, 1+e}, ranks agree, Moore-Penrose inverse exists.
inline DualMatrix example_rank_match() {
    return dual_from_rows(4, 4,
                          {1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                          {1, -3, 0, -3, 3, 1, -4, -2, -1, 2, 0, 0, 1, -2, 0, 0});
}

// Reference Moore-Penrose inverse of example_rank_match, which equals the
// relaxed inverse of example_rank_mismatch.
inline DualMatrix reference_mp_inverse() {
    return dual_from_rows(4, 4,
                          {1, 0, 0, 0, 0, 0.5, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
                          {-1, 1.5, -1, 1, -1.5, -0.25, 0.5, -0.5, 0, -1, 0, 0, -3, -0.5, 0, 0});
}

// 3x3 square dual index-one example for the group and core inverses.
inline DualMatrix example_index_one() {
    return dual_from_rows(3, 3, {2, 0, 0, 0, 3, 0, 0, 0, 0},
                          {3, -1, -6, 4, 4, 3, -6, 0, 0});
}

inline DualMatrix reference_group_inverse() {
    return dual_from_rows(3, 3, {0.5, 0, 0, 0, 1.0 / 3.0, 0, 0, 0, 0},
                          {-0.75, 1.0 / 6.0, -1.5, -2.0 / 3.0, -4.0 / 9.0, 1.0 / 3.0,
                           -1.5, 0, 0});
}

inline DualMatrix reference_core_inverse() {
    return dual_from_rows(3, 3, {0.5, 0, 0, 0, 1.0 / 3.0, 0, 0, 0, 0},
                          {-0.75, 1.0 / 6.0, -1.5, -2.0 / 3.0, -4.0 / 9.0, 0,
                           -1.5, 0, 0});
}

// Index-one complex matrix of the requested rank via a full-rank product.
inline ComplexMatrix random_index_one_standard(int n, int rank, dualmat::Rng& rng) {
    while (true) {
        ComplexMatrix B = dualmat::random_gaussian(n, rank, rng);
        ComplexMatrix C = dualmat::random_gaussian(rank, n, rng);
        ComplexMatrix A = cm_mul(B, C);
        auto sigma = dualmat::singular_values(cm_mul(C, B));
        if (!sigma.empty() && sigma.back() > 1e-3) return A;
    }
}

inline double unitarity_dev(const DualMatrix& X) {
    DualMatrix eye = DualMatrix::identity(X.rows());
    return std::max(dm_max_dev(dm_mul(dm_adjoint(X), X), eye),
                    dm_max_dev(dm_mul(X, dm_adjoint(X)), eye));
}

}  // namespace testutil
