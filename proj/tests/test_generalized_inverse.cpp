#include <catch2/catch_amalgamated.hpp>

#include <dualmat/dualmat.hpp>

#include "util.hpp"

using namespace dualmat;

namespace {

void require_routes_match(const GinvResult& a, const GinvResult& b, double tol) {
    REQUIRE(dm_max_dev(a.value, b.value) < tol);
    REQUIRE(cm_norm_max(cm_sub(a.R, b.R)) < tol);
}

}  // namespace

TEST_CASE("Moore-Penrose inverse matches the reference matrix by both routes") {
    DualMatrix A = testutil::example_rank_match();
    DualMatrix expected = testutil::reference_mp_inverse();
    for (GinvMethod method : {GinvMethod::formula, GinvMethod::decomposition}) {
        CAPTURE(ginv_method_name(method));
        GinvResult res = dmpgi(A, method);
        REQUIRE(dm_max_dev(res.value, expected) < 1e-9);
        REQUIRE(cm_norm_max(cm_add(res.R, res.value.D)) == 0.0);
        for (const auto& [name, value] : res.residuals) {
            CAPTURE(name);
            REQUIRE(value < 1e-9);
        }
    }
    require_routes_match(dmpgi(A, GinvMethod::formula),
                         dmpgi(A, GinvMethod::decomposition), 1e-10);
}

TEST_CASE("Moore-Penrose inverse is refused when the ranks differ") {
    DualMatrix A = testutil::example_rank_mismatch();
    REQUIRE_THROWS_AS(dmpgi(A, GinvMethod::formula), InverseNotExists);
    REQUIRE_THROWS_AS(dmpgi(A, GinvMethod::decomposition), InverseNotExists);

    ExistenceReport rep = dmpgi_exists(A);
    REQUIRE(rep.agree);
    REQUIRE_FALSE(rep.exists);
    REQUIRE_FALSE(rep.borderline);
    for (const auto& [name, value] : rep.predicates) {
        CAPTURE(name);
        REQUIRE_FALSE(value);
    }
}

TEST_CASE("relaxed inverse of the rank-mismatch example equals the reference matrix") {
    DualMatrix A = testutil::example_rank_mismatch();
    DualMatrix expected = testutil::reference_mp_inverse();
    for (GinvMethod method : {GinvMethod::formula, GinvMethod::decomposition}) {
        CAPTURE(ginv_method_name(method));
        GinvResult res = ndmpi(A, method);
        REQUIRE(dm_max_dev(res.value, expected) < 1e-9);
    }
}

TEST_CASE("relaxed inverse coincides with the strict one whenever that exists") {
    DualMatrix A = testutil::example_rank_match();
    REQUIRE(dm_max_dev(ndmpi(A, GinvMethod::formula).value,
                       dmpgi(A, GinvMethod::formula).value) < 1e-11);
    for (uint64_t seed = 3; seed <= 6; ++seed) {
        DualMatrix B = gen_dmpgi_exists(4, seed);
        CAPTURE(seed);
        double tol = 1e-10 * dm_scale(B);
        REQUIRE(dm_max_dev(ndmpi(B, GinvMethod::decomposition).value,
                           dmpgi(B, GinvMethod::formula).value) < tol);
    }
}

TEST_CASE("group inverse matches the reference matrix by both routes") {
    DualMatrix A = testutil::example_index_one();
    DualMatrix expected = testutil::reference_group_inverse();
    for (GinvMethod method : {GinvMethod::formula, GinvMethod::decomposition}) {
        CAPTURE(ginv_method_name(method));
        GinvResult res = dggi(A, method);
        REQUIRE(dm_max_dev(res.value, expected) < 1e-9);
        REQUIRE(res.residuals.count("ax_equals_xa") == 1);
    }
    require_routes_match(dggi(A, GinvMethod::formula),
                         dggi(A, GinvMethod::decomposition), 1e-10);
}

TEST_CASE("core inverse matches the reference matrix by both routes") {
    DualMatrix A = testutil::example_index_one();
    DualMatrix expected = testutil::reference_core_inverse();
    for (GinvMethod method : {GinvMethod::formula, GinvMethod::decomposition}) {
        CAPTURE(ginv_method_name(method));
        GinvResult res = dcgi(A, method);
        REQUIRE(dm_max_dev(res.value, expected) < 1e-9);
    }
    // The two inverses differ in exactly one entry of the infinitesimal part
    // on this input, so the kinds are genuinely distinct.
    DualMatrix G = dggi(A, GinvMethod::formula).value;
    DualMatrix C = dcgi(A, GinvMethod::formula).value;
    REQUIRE(cm_norm_max(cm_sub(G.S, C.S)) < 1e-12);
    REQUIRE(std::abs(G.D(1, 2) - C.D(1, 2)) > 0.1);
}

TEST_CASE("existence report is positive on constructed full-agreement inputs") {
    for (uint64_t seed = 1; seed <= 8; ++seed) {
        DualMatrix A = gen_dmpgi_exists(3 + static_cast<int>(seed % 4), seed);
        CAPTURE(seed);
        ExistenceReport rep = dmpgi_exists(A);
        REQUIRE(rep.agree);
        REQUIRE(rep.exists);
    }
    for (uint64_t seed = 1; seed <= 8; ++seed) {
        DualMatrix A = gen_index1(3 + static_cast<int>(seed % 4), seed);
        CAPTURE(seed);
        ExistenceReport rep = dual_index_is_one(A);
        REQUIRE(rep.agree);
        REQUIRE(rep.exists);
    }
}

TEST_CASE("nilpotent standard part has dual index above one") {
    DualMatrix A(ComplexMatrix::zeros(2, 2), ComplexMatrix::identity(2));
    A.S(0, 1) = 1.0;
    ExistenceReport rep = dual_index_is_one(A);
    REQUIRE(rep.agree);
    REQUIRE_FALSE(rep.exists);
    REQUIRE_THROWS_AS(dggi(A, GinvMethod::formula), NotIndexOne);
    REQUIRE_THROWS_AS(dcgi(A, GinvMethod::decomposition), NotIndexOne);
}

TEST_CASE("group and core inverses require square input") {
    DualMatrix A = gen_random_dual(3, 4, 5);
    REQUIRE_THROWS_AS(dggi(A, GinvMethod::formula), ShapeMismatch);
    REQUIRE_THROWS_AS(dcgi(A, GinvMethod::formula), ShapeMismatch);
}

TEST_CASE("rectangular Moore-Penrose inverse agrees across routes") {
    Rng rng(314);
    for (auto [m, n, r] : {std::tuple{5, 3, 2}, std::tuple{3, 5, 2}, std::tuple{6, 4, 4}}) {
        CAPTURE(m, n, r);
        ComplexMatrix S = cm_mul(random_gaussian(m, r, rng), random_gaussian(r, n, rng));
        // D = S X + Y S keeps the perturbation inside the range and corange
        // of S, so the strict inverse exists.
        ComplexMatrix D = cm_add(cm_mul(S, random_gaussian(n, n, rng)),
                                 cm_mul(random_gaussian(m, m, rng), S));
        DualMatrix A(S, D);
        REQUIRE(dmpgi_exists(A).exists);
        GinvResult f = dmpgi(A, GinvMethod::formula);
        GinvResult d = dmpgi(A, GinvMethod::decomposition);
        require_routes_match(f, d, 1e-9 * dm_scale(A));
        REQUIRE(f.value.rows() == n);
        REQUIRE(f.value.cols() == m);
    }
}

TEST_CASE("all four kinds agree across routes on random index-one instances") {
    for (uint64_t seed = 20; seed <= 27; ++seed) {
        const int n = 3 + static_cast<int>(seed % 5);
        DualMatrix A = gen_index1(n, seed);
        CAPTURE(n, seed);
        const double tol = 1e-9 * dm_scale(A);
        require_routes_match(dmpgi(A, GinvMethod::formula),
                             dmpgi(A, GinvMethod::decomposition), tol);
        require_routes_match(ndmpi(A, GinvMethod::formula),
                             ndmpi(A, GinvMethod::decomposition), tol);
        require_routes_match(dggi(A, GinvMethod::formula),
                             dggi(A, GinvMethod::decomposition), tol);
        require_routes_match(dcgi(A, GinvMethod::formula),
                             dcgi(A, GinvMethod::decomposition), tol);
    }
}

TEST_CASE("invertible dual matrix reduces every kind to the ordinary inverse") {
    DualMatrix A = gen_index1(4, 99, 4);
    DualMatrix Ainv = dm_inv(A);
    const double tol = 1e-9 * dm_scale(A);
    REQUIRE(dm_max_dev(dmpgi(A, GinvMethod::formula).value, Ainv) < tol);
    REQUIRE(dm_max_dev(dggi(A, GinvMethod::decomposition).value, Ainv) < tol);
    REQUIRE(dm_max_dev(dcgi(A, GinvMethod::formula).value, Ainv) < tol);
    REQUIRE(dm_max_dev(ndmpi(A, GinvMethod::decomposition).value, Ainv) < tol);
}

TEST_CASE("defining equation residuals change with the kind") {
    DualMatrix A = testutil::example_index_one();
    auto mp = verify_defining_equations(GinvKind::dmpgi, A, dmpgi(A, GinvMethod::formula).value);
    REQUIRE(mp.count("xa_is_hermitian") == 1);
    auto core = verify_defining_equations(GinvKind::dcgi, A, dcgi(A, GinvMethod::formula).value);
    REQUIRE(core.count("a_x_x_equals_x") == 1);
    REQUIRE(core.count("xa_is_hermitian") == 0);
    // A group inverse is not a core inverse here: the Hermitian condition on
    // A X fails when checked against the wrong kind.
    auto cross = verify_defining_equations(GinvKind::dcgi, A, dggi(A, GinvMethod::formula).value);
    REQUIRE(cross["ax_is_hermitian"] > 1e-3);
    REQUIRE_THROWS_AS(
        verify_defining_equations(GinvKind::dmpgi, A, DualMatrix::zeros(2, 5)),
        ShapeMismatch);
}
