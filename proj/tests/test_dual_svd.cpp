#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <dualmat/dualmat.hpp>

#include "util.hpp"

using namespace dualmat;
using testutil::unitarity_dev;

namespace {

// Independent oracle for the infinitesimal parts of appreciable singular
// values when the standard values are distinct: sigma_d = Re(u^H A_d v) for
// the standard singular pair (u, v).  The value is invariant under the joint
// phase freedom of the pair.
std::vector<double> sigma_d_oracle(const DualMatrix& A, int r) {
    Eigen::MatrixXcd S(A.rows(), A.cols()), D(A.rows(), A.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) {
            S(i, j) = A.S(i, j);
            D(i, j) = A.D(i, j);
        }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S, Eigen::ComputeThinU | Eigen::ComputeThinV);
    std::vector<double> out;
    for (int k = 0; k < r; ++k) {
        out.push_back((svd.matrixU().col(k).adjoint() * D * svd.matrixV().col(k))(0, 0).real());
    }
    return out;
}

}  // namespace

TEST_CASE("fixture with an infinitesimal direction: values, ranks, reconstruction") {
    DualMatrix A = testutil::load_fixture("example_rank_mismatch.json");
    DualSVD f = dual_svd(A);

    REQUIRE(f.r == 2);
    REQUIRE(f.t == 3);
    REQUIRE(f.sigma.size() == 3);
    REQUIRE(std::abs(f.sigma[0].s - 2.0) < 1e-9);
    REQUIRE(std::abs(f.sigma[0].d - 1.0) < 1e-9);
    REQUIRE(std::abs(f.sigma[1].s - 1.0) < 1e-9);
    REQUIRE(std::abs(f.sigma[1].d - 1.0) < 1e-9);
    REQUIRE(std::abs(f.sigma[2].s - 0.0) < 1e-9);
    REQUIRE(std::abs(f.sigma[2].d - 3.0) < 1e-9);

    REQUIRE(dm_rel_dev(dual_svd_reconstruct(f), A) < 1e-12);
    REQUIRE(unitarity_dev(f.U) < 1e-12);
    REQUIRE(unitarity_dev(f.V) < 1e-12);

    REQUIRE(f.Sigma1s.size() == 2);
    REQUIRE(f.Sigma2d.size() == 1);
    REQUIRE(std::abs(f.Sigma2d[0] - 3.0) < 1e-9);

    // The full dual diagonal has the same shape as the input.
    DualMatrix Sigma = dual_sigma_matrix(f, A.rows(), A.cols());
    REQUIRE(std::abs(Sigma.S(0, 0) - Complex{2.0, 0.0}) < 1e-9);
    REQUIRE(std::abs(Sigma.D(2, 2) - Complex{3.0, 0.0}) < 1e-9);
    REQUIRE(std::abs(Sigma.S(3, 3)) < 1e-12);
    REQUIRE(std::abs(Sigma.D(3, 3)) < 1e-12);
}

TEST_CASE("fixture without an infinitesimal direction has equal ranks") {
    DualMatrix A = testutil::load_fixture("example_rank_match.json");
    DualSVD f = dual_svd(A);
    REQUIRE(f.r == 2);
    REQUIRE(f.t == 2);
    REQUIRE(std::abs(f.sigma[0].s - 2.0) < 1e-9);
    REQUIRE(std::abs(f.sigma[0].d - 1.0) < 1e-9);
    REQUIRE(std::abs(f.sigma[1].s - 1.0) < 1e-9);
    REQUIRE(std::abs(f.sigma[1].d - 1.0) < 1e-9);
    REQUIRE(dm_rel_dev(dual_svd_reconstruct(f), A) < 1e-12);
}

TEST_CASE("square index-one fixture decomposes cleanly") {
    DualMatrix A = testutil::load_fixture("example_index_one.json");
    DualSVD f = dual_svd(A);
    REQUIRE(f.r == 2);
    REQUIRE(f.t == 2);
    REQUIRE(std::abs(f.sigma[0].s - 3.0) < 1e-9);
    REQUIRE(std::abs(f.sigma[0].d - 4.0) < 1e-9);
    REQUIRE(std::abs(f.sigma[1].s - 2.0) < 1e-9);
    REQUIRE(std::abs(f.sigma[1].d - 3.0) < 1e-9);
    REQUIRE(dm_rel_dev(dual_svd_reconstruct(f), A) < 1e-12);
}

TEST_CASE("random instances reconstruct with unitary factors and ordered values") {
    const struct {
        int m, n, rank;
    } shapes[] = {{4, 4, 4}, {4, 4, 2}, {6, 3, 2}, {3, 6, 2}, {5, 5, 3}, {7, 4, 4}};
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        for (const auto& sh : shapes) {
            DualMatrix A = gen_random_dual(sh.m, sh.n, seed, sh.rank);
            CAPTURE(sh.m, sh.n, sh.rank, seed);
            DualSVD f = dual_svd(A);
            double scale = dm_scale(A);

            REQUIRE(f.r == sh.rank);
            REQUIRE(f.t >= f.r);
            REQUIRE(dm_rel_dev(dual_svd_reconstruct(f), A) < 1e-10);
            REQUIRE(unitarity_dev(f.U) < 1e-10 * scale);
            REQUIRE(unitarity_dev(f.V) < 1e-10 * scale);
            for (std::size_t k = 1; k < f.sigma.size(); ++k) {
                REQUIRE(dreal_leq(f.sigma[k], f.sigma[k - 1]));
            }
            for (int k = 0; k < f.r; ++k) REQUIRE(f.sigma[k].s > 0.0);
            for (int k = f.r; k < f.t; ++k) {
                REQUIRE(f.sigma[k].s == 0.0);
                REQUIRE(f.sigma[k].d > 0.0);
            }

            // Distinct standard values: infinitesimal parts match the
            // first-order perturbation oracle.
            bool distinct = true;
            for (int k = 1; k < f.r; ++k) {
                if (f.sigma[k - 1].s - f.sigma[k].s < 1e-6 * f.sigma[0].s) distinct = false;
            }
            if (distinct) {
                auto oracle = sigma_d_oracle(A, f.r);
                for (int k = 0; k < f.r; ++k) {
                    REQUIRE(std::abs(f.sigma[k].d - oracle[k]) < 1e-8 * scale);
                }
            }
        }
    }
}

TEST_CASE("appreciable and dual rank helpers agree with the factorization") {
    DualMatrix A = testutil::load_fixture("example_rank_mismatch.json");
    REQUIRE(dual_rank(A) == 3);
    DualSVD f = dual_svd(A);
    REQUIRE(f.r == 2);
}

TEST_CASE("purely infinitesimal matrix has zero appreciable rank") {
    Rng rng(77);
    ComplexMatrix D = random_gaussian(4, 3, rng);
    DualMatrix A(ComplexMatrix::zeros(4, 3), D);
    DualSVD f = dual_svd(A);
    REQUIRE(f.r == 0);
    REQUIRE(f.t == 3);
    // epsilon * D has dual singular values epsilon * sigma(D).
    auto sd = singular_values(D);
    for (int k = 0; k < f.t; ++k) {
        REQUIRE(f.sigma[k].s == 0.0);
        REQUIRE(std::abs(f.sigma[k].d - sd[k]) < 1e-10);
    }
    REQUIRE(dm_rel_dev(dual_svd_reconstruct(f), A) < 1e-12);
}

TEST_CASE("zero and empty matrices decompose trivially") {
    DualMatrix Z = DualMatrix::zeros(3, 4);
    DualSVD f = dual_svd(Z);
    REQUIRE(f.r == 0);
    REQUIRE(f.t == 0);
    REQUIRE(f.sigma.empty());
    REQUIRE(unitarity_dev(f.U) < 1e-13);
    REQUIRE(unitarity_dev(f.V) < 1e-13);
    REQUIRE(dm_max_dev(dual_svd_reconstruct(f), Z) == 0.0);

    DualMatrix E = DualMatrix::zeros(0, 2);
    DualSVD fe = dual_svd(E);
    REQUIRE(fe.t == 0);
    REQUIRE(fe.V.rows() == 2);
}

TEST_CASE("repeated standard singular values take the degenerate branch") {
    for (uint64_t seed = 100; seed < 110; ++seed) {
        const int rows = 4 + static_cast<int>(seed % 3);
        const int cols = 4 + static_cast<int>((seed / 3) % 3);
        DualMatrix A = gen_repeated_sigma(rows, cols, seed);
        CAPTURE(rows, cols, seed);
        DualSVD f = dual_svd(A);
        REQUIRE(dm_rel_dev(dual_svd_reconstruct(f), A) < 1e-9);
        REQUIRE(unitarity_dev(f.U) < 1e-9);
        REQUIRE(unitarity_dev(f.V) < 1e-9);
        for (std::size_t k = 1; k < f.sigma.size(); ++k) {
            REQUIRE(dreal_leq(f.sigma[k], f.sigma[k - 1]));
        }
    }
}

TEST_CASE("exactly tied standard values split by the infinitesimal part") {
    Rng rng(55);
    ComplexMatrix U = random_unitary(4, rng);
    ComplexMatrix V = random_unitary(4, rng);
    ComplexMatrix S = ComplexMatrix::zeros(4, 4);
    S(0, 0) = 2.0;
    S(1, 1) = 2.0;  // exact tie
    S(2, 2) = 1.0;
    DualMatrix A(cm_mul(U, cm_mul(S, cm_adjoint(V))), random_gaussian(4, 4, rng));
    DualSVD f = dual_svd(A);
    REQUIRE(f.r == 3);
    REQUIRE(std::abs(f.sigma[0].s - 2.0) < 1e-12);
    REQUIRE(std::abs(f.sigma[1].s - 2.0) < 1e-12);
    REQUIRE(f.sigma[0].d >= f.sigma[1].d);
    REQUIRE(dm_rel_dev(dual_svd_reconstruct(f), A) < 1e-10);
    REQUIRE(unitarity_dev(f.U) < 1e-10);
    REQUIRE(unitarity_dev(f.V) < 1e-10);
}

TEST_CASE("essential part keeps only appreciable directions") {
    DualMatrix A = testutil::load_fixture("example_rank_mismatch.json");
    DualMatrix Ae = essential_part(A);
    DualSVD fe = dual_svd(Ae);
    REQUIRE(fe.r == 2);
    REQUIRE(fe.t == 2);  // the purely infinitesimal direction is gone
    REQUIRE(std::abs(fe.sigma[0].s - 2.0) < 1e-10);
    REQUIRE(std::abs(fe.sigma[1].s - 1.0) < 1e-10);
    // The essential part of a matrix with matching ranks is itself.
    DualMatrix B = testutil::load_fixture("example_rank_match.json");
    REQUIRE(dm_rel_dev(essential_part(B), B) < 1e-10);
}
