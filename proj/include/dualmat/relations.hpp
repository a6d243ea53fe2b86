#pragma once

#include <string>
#include <utility>
#include <vector>

#include "generalized_inverse.hpp"

namespace dualmat {

struct IdentityItem {
    std::string name;
    DualMatrix lhs;
    DualMatrix rhs;
    double residual = 0.0;
    bool pass = false;  // pass iff residual < tolerance
};

// For the plain identity suites all_pass is the verdict.  The coincidence and
// self-inverse reports additionally carry `consistent`: every statement of an
// equivalence theorem must come out on the same side, whether true or false.
struct IdentityReport {
    std::vector<IdentityItem> items;
    bool all_pass = true;
    bool consistent = true;

    void add(std::string name, DualMatrix lhs, DualMatrix rhs, double tol) {
        IdentityItem item;
        item.name = std::move(name);
        item.residual = dm_rel_dev(lhs, rhs);
        item.pass = item.residual < tol;
        item.lhs = std::move(lhs);
        item.rhs = std::move(rhs);
        all_pass = all_pass && item.pass;
        items.push_back(std::move(item));
    }

    bool passed(const std::string& name) const {
        for (const auto& it : items)
            if (it.name == name) return it.pass;
        return false;
    }
};

struct OrderVerdict {
    std::string kind;
    bool holds = false;
    std::vector<std::pair<std::string, bool>> evidence;
};

namespace detail {

struct FanBlocks {
    DualMatrix U;
    DualMatrix Sigma1;  // r x r dual diagonal
    DualMatrix K, L;
    int r = 0;
};

// Factors of an index-one matrix in its unitary similarity form.
inline FanBlocks fan_blocks(const DualMatrix& A, const ToleranceConfig& cfg) {
    HSPartitioned p = hs_partitioned(A, cfg);
    FanBlocks f;
    f.r = static_cast<int>(p.Sigma1.size());
    f.U = p.U;
    f.K = p.K;
    f.L = p.L;
    f.Sigma1 = DualMatrix::zeros(f.r, f.r);
    for (int k = 0; k < f.r; ++k) {
        f.Sigma1.S(k, k) = p.Sigma1[k].s;
        f.Sigma1.D(k, k) = p.Sigma1[k].d;
    }
    return f;
}

}  // namespace detail

// The four equivalent coincidence statements: the relaxed Moore-Penrose,
// group and core inverses collapse into one exactly when the off-diagonal
// block L of the similarity form vanishes.
inline IdentityReport coincidence(const DualMatrix& A,
                                  const ToleranceConfig& cfg = default_tolerances()) {
    detail::require_square(A, "coincidence");
    detail::require_index_one(A, "coincidence", cfg);
    const double tol = cfg.identity;
    DualMatrix N = ndmpi(A, GinvMethod::formula, cfg).value;
    DualMatrix G = dggi(A, GinvMethod::formula, cfg).value;
    DualMatrix C = dcgi(A, GinvMethod::formula, cfg).value;
    detail::FanBlocks f = detail::fan_blocks(A, cfg);

    IdentityReport rep;
    rep.add("relaxed_mp_equals_group_inverse", N, G, tol);
    rep.add("relaxed_mp_equals_core_inverse", N, C, tol);
    rep.add("group_inverse_equals_core_inverse", G, C, tol);
    rep.add("off_diagonal_block_vanishes", f.L,
            DualMatrix::zeros(f.L.rows(), f.L.cols()), tol);
    bool first = rep.items.front().pass;
    for (const auto& item : rep.items) rep.consistent = rep.consistent && item.pass == first;
    return rep;
}

// Four equivalences characterizing when the matrix (or its adjoint) is its
// own group or core inverse.  Each side of every equivalence is computed
// independently; `consistent` asserts the two sides agree.
inline IdentityReport self_inverse_checks(const DualMatrix& A,
                                          const ToleranceConfig& cfg = default_tolerances()) {
    detail::require_square(A, "self_inverse_checks");
    detail::require_index_one(A, "self_inverse_checks", cfg);
    const double tol = cfg.identity;
    DualMatrix G = dggi(A, GinvMethod::formula, cfg).value;
    DualMatrix C = dcgi(A, GinvMethod::formula, cfg).value;
    DualMatrix Ah = dm_adjoint(A);
    detail::FanBlocks f = detail::fan_blocks(A, cfg);
    DualMatrix SK = dm_mul(f.Sigma1, f.K);
    DualMatrix I_r = DualMatrix::identity(f.r);

    IdentityReport rep;
    rep.add("a_equals_group_inverse", A, G, tol);
    rep.add("a_equals_core_inverse", A, C, tol);
    rep.add("a_adjoint_equals_group_inverse", Ah, G, tol);
    rep.add("a_adjoint_equals_core_inverse", Ah, C, tol);
    rep.add("sigma_k_block_squares_to_identity", dm_mul(SK, SK), I_r, tol);
    rep.add("off_diagonal_block_vanishes", f.L,
            DualMatrix::zeros(f.L.rows(), f.L.cols()), tol);
    rep.add("sigma1_equals_identity", f.Sigma1, I_r, tol);

    bool sk2 = rep.passed("sigma_k_block_squares_to_identity");
    bool l0 = rep.passed("off_diagonal_block_vanishes");
    bool s1 = rep.passed("sigma1_equals_identity");
    rep.consistent = rep.passed("a_equals_group_inverse") == sk2 &&
                     rep.passed("a_equals_core_inverse") == (l0 && sk2) &&
                     rep.passed("a_adjoint_equals_group_inverse") == (l0 && s1) &&
                     rep.passed("a_adjoint_equals_core_inverse") == (l0 && s1);
    return rep;
}

// Eight composite identities tying the group inverse to Moore-Penrose
// expressions.  The two sides of every identity are assembled from inverses
// of different matrices, so they cannot self-confirm.  The factorization
// route is used throughout: the closed-form route squares condition numbers
// through its Gram-matrix pseudoinverses, which products like A^3 cannot
// afford.
inline IdentityReport identity_suite_group(const DualMatrix& A,
                                           const ToleranceConfig& cfg = default_tolerances()) {
    detail::require_square(A, "identity_suite_group");
    detail::require_index_one(A, "identity_suite_group", cfg);
    const double tol = cfg.identity;
    const GinvMethod m = GinvMethod::decomposition;
    DualMatrix G = dggi(A, m, cfg).value;
    DualMatrix Mp = dmpgi(A, m, cfg).value;
    DualMatrix A2 = dm_mul(A, A);
    DualMatrix A3 = dm_mul(A2, A);
    DualMatrix cube_mp = dmpgi(A3, m, cfg).value;
    DualMatrix G_mp = dmpgi(G, m, cfg).value;
    DualMatrix G_of_G = dggi(G, m, cfg).value;
    DualMatrix G_of_adj = dggi(dm_adjoint(A), m, cfg).value;
    DualMatrix G_of_mp = dggi(Mp, m, cfg).value;

    IdentityReport rep;
    rep.add("group_equals_a_cube_mp_a", G, dm_mul(dm_mul(A, cube_mp), A), tol);
    rep.add("group_inverse_is_an_involution", G_of_G, A, tol);
    rep.add("mp_of_group_equals_mp_a_cubed_mp", G_mp, dm_mul(Mp, dm_mul(A3, Mp)), tol);
    rep.add("group_of_adjoint_equals_adjoint_of_group", G_of_adj, dm_adjoint(G), tol);
    rep.add("a_group_mp_of_group_equals_a_squared_mp", dm_mul(dm_mul(A, G), G_mp),
            dm_mul(A2, Mp), tol);
    rep.add("mp_of_group_group_a_equals_mp_a_squared", dm_mul(dm_mul(G_mp, G), A),
            dm_mul(Mp, A2), tol);

    // Block representation of the group inverse of the Moore-Penrose inverse.
    detail::FanBlocks f = detail::fan_blocks(A, cfg);
    DualMatrix Kih = dm_adjoint(dm_inv(f.K, cfg));
    DualMatrix tl = dm_mul(f.Sigma1, Kih);
    DualMatrix bl = dm_mul(dm_mul(dm_adjoint(f.L), Kih), tl);
    const int n = A.rows();
    DualMatrix inner = DualMatrix::zeros(n, n);
    dm_set_block(inner, 0, 0, tl);
    dm_set_block(inner, f.r, 0, bl);
    DualMatrix block_rep = dm_mul(dm_mul(f.U, inner), dm_adjoint(f.U));
    rep.add("group_of_mp_has_block_representation", G_of_mp, block_rep, tol);

    DualMatrix sandwich =
        dm_mul(G_of_adj, dm_mul(dm_adjoint(A), dm_mul(A, dm_mul(dm_adjoint(A), G_of_adj))));
    rep.add("group_of_mp_equals_adjoint_sandwich", G_of_mp, sandwich, tol);
    return rep;
}

// Seven composite identities around the core inverse, assembled by the
// factorization route for the same conditioning reason as above.
inline IdentityReport identity_suite_core(const DualMatrix& A,
                                          const ToleranceConfig& cfg = default_tolerances()) {
    detail::require_square(A, "identity_suite_core");
    detail::require_index_one(A, "identity_suite_core", cfg);
    const double tol = cfg.identity;
    const GinvMethod m = GinvMethod::decomposition;
    DualMatrix C = dcgi(A, m, cfg).value;
    DualMatrix G = dggi(A, m, cfg).value;
    DualMatrix Mp = dmpgi(A, m, cfg).value;
    DualMatrix C_mp = dmpgi(C, m, cfg).value;
    DualMatrix C_group = dggi(C, m, cfg).value;
    DualMatrix C_core = dcgi(C, m, cfg).value;
    DualMatrix a2mp = dm_mul(dm_mul(A, A), Mp);

    IdentityReport rep;
    rep.add("core_equals_group_a_mp", C, dm_mul(dm_mul(G, A), Mp), tol);
    rep.add("mp_of_core_equals_a_squared_mp", C_mp, a2mp, tol);
    rep.add("mp_of_core_equals_group_of_core", C_mp, C_group, tol);
    rep.add("core_of_core_equals_a_squared_mp", C_core, a2mp, tol);
    rep.add("core_a_equals_group_a", dm_mul(C, A), dm_mul(G, A), tol);
    rep.add("core_squared_a_equals_group", dm_mul(dm_mul(C, C), A), G, tol);
    rep.add("core_commutes_with_its_mp", dm_mul(C, C_mp), dm_mul(C_mp, C), tol);
    return rep;
}

// D-core partial order: both matrices have dual index one and the core
// projections of A agree with those built from B.
inline OrderVerdict dcore_leq(const DualMatrix& A, const DualMatrix& B,
                              const ToleranceConfig& cfg = default_tolerances()) {
    detail::require_square(A, "dcore_leq");
    if (B.rows() != A.rows() || B.cols() != A.cols()) {
        throw ShapeMismatch("dcore_leq: operands must be square of the same size");
    }
    OrderVerdict v;
    v.kind = "dcore";
    ExistenceReport ia = dual_index_is_one(A, cfg);
    ExistenceReport ib = dual_index_is_one(B, cfg);
    bool index_a = ia.agree && ia.exists;
    bool index_b = ib.agree && ib.exists;
    v.evidence.emplace_back("a_has_dual_index_one", index_a);
    v.evidence.emplace_back("b_has_dual_index_one", index_b);
    bool left = false, right = false;
    if (index_a && index_b) {
        DualMatrix C = dcgi(A, GinvMethod::formula, cfg).value;
        left = dm_rel_dev(dm_mul(C, A), dm_mul(C, B)) < cfg.identity;
        right = dm_rel_dev(dm_mul(A, C), dm_mul(B, C)) < cfg.identity;
    }
    v.evidence.emplace_back("core_projection_matches_on_left", left);
    v.evidence.emplace_back("core_projection_matches_on_right", right);
    v.holds = index_a && index_b && left && right;
    return v;
}

// D-minus partial order: the standard parts are in the classical minus order
// (rank subtractivity) and the three dual Moore-Penrose inverses exist.
inline OrderVerdict dminus_leq(const DualMatrix& A, const DualMatrix& B,
                               const ToleranceConfig& cfg = default_tolerances()) {
    require_same_shape(A.S, B.S, "dminus_leq");
    OrderVerdict v;
    v.kind = "dminus";
    int rank_a = matrix_rank(A.S, cfg);
    int rank_b = matrix_rank(B.S, cfg);
    int rank_diff = matrix_rank(cm_sub(B.S, A.S), cfg);
    bool minus = rank_diff == rank_b - rank_a;
    ExistenceReport ea = dmpgi_exists(A, cfg);
    ExistenceReport eb = dmpgi_exists(B, cfg);
    ExistenceReport ed = dmpgi_exists(dm_sub(B, A), cfg);
    v.evidence.emplace_back("standard_parts_in_minus_order", minus);
    v.evidence.emplace_back("mp_inverse_of_a_exists", ea.agree && ea.exists);
    v.evidence.emplace_back("mp_inverse_of_b_exists", eb.agree && eb.exists);
    v.evidence.emplace_back("mp_inverse_of_difference_exists", ed.agree && ed.exists);
    v.holds = true;
    for (const auto& [name, ok] : v.evidence) v.holds = v.holds && ok;
    return v;
}

// Builds the canonical dominator of A in the D-core order by placing a dual
// index-one block P in the free corner of A's similarity form.
inline DualMatrix dcore_dominator(const DualMatrix& A, const DualMatrix& P,
                                  const ToleranceConfig& cfg = default_tolerances()) {
    detail::require_square(A, "dcore_dominator");
    detail::require_index_one(A, "dcore_dominator", cfg);
    detail::FanBlocks f = detail::fan_blocks(A, cfg);
    const int n = A.rows();
    const int free = n - f.r;
    if (P.rows() != free || P.cols() != free) {
        throw ShapeMismatch("dcore_dominator: corner block must be " + std::to_string(free) +
                            "x" + std::to_string(free));
    }
    ExistenceReport ip = dual_index_is_one(P, cfg);
    if (!(ip.agree && ip.exists)) {
        throw NotIndexOne("dcore_dominator: corner block does not have dual index one");
    }
    DualMatrix corner = DualMatrix::zeros(n, n);
    dm_set_block(corner, f.r, f.r, P);
    return dm_add(A, dm_mul(dm_mul(f.U, corner), dm_adjoint(f.U)));
}

}  // namespace dualmat
