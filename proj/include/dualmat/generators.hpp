#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "relations.hpp"

namespace dualmat {

// Deterministic random source.  Gaussian variates are produced by an explicit
// Box-Muller transform over the raw engine bits so that identical seeds give
// identical instances on every platform and standard library.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    double uniform() {  // in [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform();
        double u2 = uniform();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    Complex cgauss() {
        double re = gauss();
        return {re, gauss()};
    }

    // Uniform integer in [lo, hi]; bound is tiny, so modulo bias is irrelevant.
    int pick(int lo, int hi) {
        return lo + static_cast<int>(eng_() % static_cast<uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

inline ComplexMatrix random_gaussian(int rows, int cols, Rng& rng) {
    ComplexMatrix G(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) G(i, j) = rng.cgauss();
    return G;
}

// Haar-like random unitary through modified Gram-Schmidt on a Gaussian
// matrix, with a second projection round for orthogonality at working
// precision.
inline ComplexMatrix random_unitary(int n, Rng& rng) {
    ComplexMatrix Q = random_gaussian(n, n, rng);
    for (int j = 0; j < n; ++j) {
        for (int round = 0; round < 2; ++round) {
            for (int k = 0; k < j; ++k) {
                Complex dot{};
                for (int i = 0; i < n; ++i) dot += std::conj(Q(i, k)) * Q(i, j);
                for (int i = 0; i < n; ++i) Q(i, j) -= dot * Q(i, k);
            }
        }
        double norm = 0.0;
        for (int i = 0; i < n; ++i) norm += std::norm(Q(i, j));
        norm = std::sqrt(norm);
        if (norm < 1e-8) {
            // Degenerate draw; replace the column and redo it.
            for (int i = 0; i < n; ++i) Q(i, j) = rng.cgauss();
            --j;
            continue;
        }
        for (int i = 0; i < n; ++i) Q(i, j) /= norm;
    }
    return Q;
}

inline ComplexMatrix random_skew_hermitian(int n, Rng& rng) {
    ComplexMatrix W = random_gaussian(n, n, rng);
    return cm_scale(cm_sub(W, cm_adjoint(W)), Complex{0.5, 0.0});
}

// Dual unitary Q(I + eps Z) with Z skew-Hermitian.
inline DualMatrix random_dual_unitary(int n, Rng& rng) {
    ComplexMatrix Q = random_unitary(n, rng);
    ComplexMatrix Z = random_skew_hermitian(n, rng);
    return DualMatrix(Q, cm_mul(Q, Z));
}

// Generic dual matrix; `rank` restricts the rank of the standard part.
inline DualMatrix gen_random_dual(int rows, int cols, uint64_t seed, int rank = -1) {
    Rng rng(seed);
    if (rank < 0) rank = std::min(rows, cols);
    ComplexMatrix S = rank == 0 ? ComplexMatrix::zeros(rows, cols)
                                : cm_mul(random_gaussian(rows, rank, rng),
                                         random_gaussian(rank, cols, rng));
    return DualMatrix(std::move(S), random_gaussian(rows, cols, rng));
}

// Instance whose dual Moore-Penrose inverse exists: the infinitesimal part
// A_s X + Y A_s keeps the null space of the standard part fixed.
inline DualMatrix gen_dmpgi_exists(int n, uint64_t seed) {
    Rng rng(seed);
    int r = n <= 1 ? n : rng.pick(1, n - 1);
    ComplexMatrix S = cm_mul(random_gaussian(n, r, rng), random_gaussian(r, n, rng));
    ComplexMatrix X = random_gaussian(n, n, rng);
    ComplexMatrix Y = random_gaussian(n, n, rng);
    ComplexMatrix D = cm_add(cm_mul(S, X), cm_mul(Y, S));
    return DualMatrix(std::move(S), std::move(D));
}

// Dual index-one instance assembled in the similarity form: an invertible
// leading block times appreciable dual singular values, zero bottom rows,
// conjugated by a random dual unitary.  With zero_l the off-diagonal block
// vanishes exactly (the coincidence case).
inline DualMatrix gen_index1(int n, uint64_t seed, int rank = -1, bool zero_l = false) {
    Rng rng(seed);
    const int r = rank >= 0 ? rank : rng.pick(1, n);
    if (r == 0) return DualMatrix::zeros(n, n);

    ComplexMatrix K1(r, r), L1(r, n - r), KL2(r, n);
    if (zero_l) {
        K1 = random_unitary(r, rng);
        // Dual part S*K1 with S skew keeps K K^* = I exactly in both parts.
        ComplexMatrix Sk = random_skew_hermitian(r, rng);
        KL2.set_block(0, 0, cm_mul(Sk, K1));
    } else {
        ComplexMatrix W(0, 0);
        ToleranceConfig probe;
        for (int attempt = 0; attempt < 100; ++attempt) {
            W = random_unitary(n, rng);
            auto sv = singular_values(W.block(0, 0, r, r), probe);
            if (sv.empty() || sv.back() >= 0.05) break;
        }
        K1 = W.block(0, 0, r, r);
        L1 = W.block(0, r, r, n - r);
        // KL2 = S (K1 L1) + T (rows r..n of W): the first term is skew against
        // the top rows, the second lies in their orthogonal complement, so the
        // dual part of the row-orthonormality constraint stays zero.
        ComplexMatrix KL1 = W.block(0, 0, r, n);
        ComplexMatrix Sk = random_skew_hermitian(r, rng);
        KL2 = cm_mul(Sk, KL1);
        if (n - r > 0) {
            ComplexMatrix T = random_gaussian(r, n - r, rng);
            KL2 = cm_add(KL2, cm_mul(T, W.block(r, 0, n - r, n)));
        }
    }
    DualMatrix KL = DualMatrix::zeros(r, n);
    KL.S.set_block(0, 0, K1);
    if (n - r > 0 && !zero_l) KL.S.set_block(0, r, L1);
    KL.D = KL2;

    std::vector<DualReal> sig(r);
    for (int i = 0; i < r; ++i) sig[i] = {0.5 + 2.0 * rng.uniform(), rng.gauss()};
    std::sort(sig.begin(), sig.end(),
              [](const DualReal& a, const DualReal& b) { return dreal_less(b, a); });

    DualMatrix inner = DualMatrix::zeros(n, n);
    dm_set_block(inner, 0, 0, detail::diag_times(sig, KL));
    DualMatrix U = random_dual_unitary(n, rng);
    return dm_mul(dm_mul(U, inner), dm_adjoint(U));
}

// Pair (A, B) with A below B in the D-core order, built by planting a dual
// index-one corner block through the dominator construction.
inline std::pair<DualMatrix, DualMatrix> gen_dcore_pair(
    int n, uint64_t seed, const ToleranceConfig& cfg = default_tolerances()) {
    Rng rng(seed);
    int r = n <= 1 ? 1 : rng.pick(1, n - 1);
    DualMatrix A = gen_index1(n, seed * 2654435761u + 1, r);
    int free = n - r;
    int corner_rank = rng.pick(0, free);
    DualMatrix P = corner_rank == 0
                       ? DualMatrix::zeros(free, free)
                       : gen_index1(free, seed * 2654435761u + 2, corner_rank);
    return {A, dcore_dominator(A, P, cfg)};
}

// Instance with clustered standard singular values (multiplicities up to
// three) and a generic infinitesimal part, for the degenerate branch of the
// dual SVD.
inline DualMatrix gen_repeated_sigma(int rows, int cols, uint64_t seed) {
    Rng rng(seed);
    const int mn = std::min(rows, cols);
    std::vector<double> sv;
    double value = 2.0 + rng.uniform();
    while (static_cast<int>(sv.size()) < mn) {
        int mult = std::min(rng.pick(2, 3), mn - static_cast<int>(sv.size()));
        for (int k = 0; k < mult; ++k) sv.push_back(value);
        value *= 0.4 + 0.2 * rng.uniform();
    }
    ComplexMatrix U = random_unitary(rows, rng);
    ComplexMatrix V = random_unitary(cols, rng);
    ComplexMatrix S = ComplexMatrix::zeros(rows, cols);
    for (int k = 0; k < mn; ++k) S(k, k) = sv[k];
    ComplexMatrix std_part = cm_mul(U, cm_mul(S, cm_adjoint(V)));
    return DualMatrix(std::move(std_part), random_gaussian(rows, cols, rng));
}

}  // namespace dualmat
