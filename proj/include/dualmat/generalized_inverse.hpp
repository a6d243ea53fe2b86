#pragma once

#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hs_decomposition.hpp"

namespace dualmat {

enum class GinvKind { dmpgi, ndmpi, dggi, dcgi };
enum class GinvMethod { formula, decomposition };

inline const char* ginv_kind_name(GinvKind k) {
    switch (k) {
        case GinvKind::dmpgi: return "dmpgi";
        case GinvKind::ndmpi: return "ndmpi";
        case GinvKind::dggi: return "dggi";
        case GinvKind::dcgi: return "dcgi";
    }
    return "unknown";
}

inline const char* ginv_method_name(GinvMethod m) {
    return m == GinvMethod::formula ? "formula" : "decomposition";
}

struct GinvResult {
    GinvKind kind{};
    GinvMethod method{};
    DualMatrix value;
    // Infinitesimal correction: value = standard-part inverse - eps * R.
    ComplexMatrix R;
    std::map<std::string, double> residuals;
};

// Outcome of an existence test: several independently computed predicates
// that theory says must agree, plus margins showing how far each decisive
// quantity sits from its threshold.
struct ExistenceReport {
    std::string kind;
    std::vector<std::pair<std::string, bool>> predicates;
    bool agree = false;
    bool exists = false;
    bool borderline = false;
    std::map<std::string, double> margins;
};

namespace detail {

// Smallest multiplicative distance of the positive values to the cutoff;
// infinity when every value is zero or the list is empty.
inline double multiplicative_gap(const std::vector<double>& values, double cutoff) {
    double g = std::numeric_limits<double>::infinity();
    if (cutoff <= 0.0) return g;
    for (double v : values) {
        if (v <= 0.0) continue;
        g = std::min(g, std::max(v / cutoff, cutoff / v));
    }
    return g;
}

// Singular values of the null-space block of the infinitesimal part,
// including the ones the dual SVD filtered out as numerically zero.
inline std::vector<double> raw_infinitesimal_values(const DualMatrix& A, const DualSVD& f,
                                                    const ToleranceConfig& cfg) {
    const int m = A.rows(), n = A.cols();
    if (m - f.r <= 0 || n - f.r <= 0) return {};
    ComplexMatrix U2 = f.U.S.block(0, f.r, m, m - f.r);
    ComplexMatrix V2 = f.V.S.block(0, f.r, n, n - f.r);
    return singular_values(cm_mul(cm_adjoint(U2), cm_mul(A.D, V2)), cfg);
}

inline ComplexMatrix left_projector_complement(const ComplexMatrix& S,
                                               const ComplexMatrix& Sinv) {
    return cm_sub(ComplexMatrix::identity(S.rows()), cm_mul(S, Sinv));
}

inline ComplexMatrix right_projector_complement(const ComplexMatrix& S,
                                                const ComplexMatrix& Sinv) {
    return cm_sub(ComplexMatrix::identity(S.cols()), cm_mul(Sinv, S));
}

// Dual diagonal holding the inverses of the appreciable singular values.
inline DualMatrix sigma1_inverse(const DualSVD& f, double scale,
                                 const ToleranceConfig& cfg) {
    DualMatrix S = DualMatrix::zeros(f.r, f.r);
    for (int k = 0; k < f.r; ++k) {
        DualReal inv = dreal_inv(f.sigma[k], scale, cfg);
        S.S(k, k) = inv.s;
        S.D(k, k) = inv.d;
    }
    return S;
}

}  // namespace detail

// Existence test for the dual Moore-Penrose inverse.  Three equivalent
// predicates are evaluated through independent computations.
inline ExistenceReport dmpgi_exists(const DualMatrix& A,
                                    const ToleranceConfig& cfg = default_tolerances()) {
    const int m = A.rows(), n = A.cols();
    const double scale = dm_scale(A);
    ExistenceReport rep;
    rep.kind = "dmpgi";

    // Predicate 1: the infinitesimal part has no component mapping the null
    // space of the standard part into its conull space.
    ComplexMatrix P = pinv(A.S, cfg);
    ComplexMatrix residual_m = cm_mul(detail::left_projector_complement(A.S, P),
                                      cm_mul(A.D, detail::right_projector_complement(A.S, P)));
    double proj_res = cm_norm_max(residual_m) / scale;
    bool p1 = proj_res <= cfg.residual;
    rep.predicates.emplace_back("null_space_perturbation_vanishes", p1);
    rep.margins["projector_residual"] = proj_res;

    // Predicate 2: the bordered matrix [D S; S 0] has exactly twice the rank
    // of the standard part.
    ComplexMatrix bordered(2 * m, 2 * n);
    bordered.set_block(0, 0, A.D);
    bordered.set_block(0, n, A.S);
    bordered.set_block(m, 0, A.S);
    auto sig_b = singular_values(bordered, cfg);
    auto sig_s = singular_values(A.S, cfg);
    double cut_b = default_rank_cutoff(2 * m, 2 * n, sig_b.empty() ? 0.0 : sig_b.front());
    double cut_s = default_rank_cutoff(m, n, sig_s.empty() ? 0.0 : sig_s.front());
    bool p2 = rank_from_sigma(sig_b, cut_b) == 2 * rank_from_sigma(sig_s, cut_s);
    rep.predicates.emplace_back("bordered_matrix_rank_doubles", p2);
    rep.margins["bordered_sigma_gap"] = detail::multiplicative_gap(sig_b, cut_b);

    // Predicate 3: appreciable rank equals dual rank, straight from the
    // dual SVD.
    DualSVD f = dual_svd(A, cfg);
    bool p3 = f.r == f.t;
    rep.predicates.emplace_back("appreciable_rank_equals_dual_rank", p3);
    double thr = detail::zero_threshold(A, cfg);
    rep.margins["appreciable_sigma_gap"] = detail::multiplicative_gap(sig_s, thr);
    rep.margins["infinitesimal_sigma_gap"] =
        detail::multiplicative_gap(detail::raw_infinitesimal_values(A, f, cfg), thr);

    rep.agree = (p1 == p2) && (p2 == p3);
    rep.exists = p1;
    rep.borderline = near_threshold(proj_res, cfg.residual, cfg.borderline_factor);
    for (const char* key : {"bordered_sigma_gap", "appreciable_sigma_gap",
                            "infinitesimal_sigma_gap"}) {
        if (rep.margins[key] < cfg.borderline_factor) rep.borderline = true;
    }
    return rep;
}

// Existence test for dual index one (equivalently, for the dual group and
// dual core inverses of a square matrix).
inline ExistenceReport dual_index_is_one(const DualMatrix& A,
                                         const ToleranceConfig& cfg = default_tolerances()) {
    detail::require_square(A, "dual_index_is_one");
    const int n = A.rows();
    ExistenceReport rep;
    rep.kind = "index1";

    // Predicate 1: the standard part has index one and the dual
    // Moore-Penrose inverse exists.
    auto sig_s = singular_values(A.S, cfg);
    auto sig_s2 = singular_values(cm_mul(A.S, A.S), cfg);
    double cut_s = default_rank_cutoff(n, n, sig_s.empty() ? 0.0 : sig_s.front());
    double cut_s2 = default_rank_cutoff(n, n, sig_s2.empty() ? 0.0 : sig_s2.front());
    ExistenceReport mp = dmpgi_exists(A, cfg);
    bool p1 = rank_from_sigma(sig_s2, cut_s2) == rank_from_sigma(sig_s, cut_s) && mp.exists;
    rep.predicates.emplace_back("standard_index_one_and_mp_inverse_exists", p1);
    rep.margins["mp_projector_residual"] = mp.margins["projector_residual"];
    rep.margins["standard_square_sigma_gap"] = detail::multiplicative_gap(sig_s2, cut_s2);

    // Predicate 2: in the unitary similarity form, the leading block is
    // invertible (tested through its singular values) and the infinitesimal
    // band vanishes.
    DualSVD f = dual_svd(A, cfg);
    ComplexMatrix K1 =
        cm_mul(cm_adjoint(f.V.S), f.U.S).block(0, 0, f.r, f.r);
    auto sig_k = singular_values(K1, cfg);
    double cut_k = default_rank_cutoff(f.r, f.r, sig_k.empty() ? 0.0 : sig_k.front());
    bool k1_invertible = rank_from_sigma(sig_k, cut_k) == f.r;
    bool band_zero = f.t == f.r;
    bool p2 = k1_invertible && band_zero;
    rep.predicates.emplace_back("leading_block_invertible_and_band_vanishes", p2);
    rep.margins["k1_sigma_gap"] = detail::multiplicative_gap(sig_k, cut_k);
    double thr = detail::zero_threshold(A, cfg);
    rep.margins["infinitesimal_sigma_gap"] =
        detail::multiplicative_gap(detail::raw_infinitesimal_values(A, f, cfg), thr);

    // Predicate 3: same statement tested through a different computation,
    // actually inverting the dual leading block by elimination.
    DualMatrix W = dm_mul(dm_adjoint(f.V), f.U);
    DualMatrix K = dm_block(W, 0, 0, f.r, f.r);
    bool k_dual_invertible = false;
    try {
        DualMatrix Kinv = dm_inv(K, cfg);
        k_dual_invertible =
            dm_max_dev(dm_mul(K, Kinv), DualMatrix::identity(f.r)) <= cfg.residual;
    } catch (const SingularStandardPart&) {
        k_dual_invertible = false;
    }
    bool p3 = k_dual_invertible && band_zero;
    rep.predicates.emplace_back("dual_block_inversion_succeeds_and_band_vanishes", p3);

    rep.agree = (p1 == p2) && (p2 == p3);
    rep.exists = p2;
    rep.borderline = mp.borderline;
    for (const char* key : {"standard_square_sigma_gap", "k1_sigma_gap",
                            "infinitesimal_sigma_gap"}) {
        if (rep.margins[key] < cfg.borderline_factor) rep.borderline = true;
    }
    return rep;
}

// Residuals of the defining equations of each inverse kind.
inline std::map<std::string, double> verify_defining_equations(
    GinvKind kind, const DualMatrix& A, const DualMatrix& X,
    const ToleranceConfig& cfg = default_tolerances()) {
    if (X.rows() != A.cols() || X.cols() != A.rows()) {
        throw ShapeMismatch("verify_defining_equations: inverse has wrong shape");
    }
    DualMatrix AX = dm_mul(A, X);
    DualMatrix XA = dm_mul(X, A);
    std::map<std::string, double> res;
    switch (kind) {
        case GinvKind::dmpgi:
            res["a_x_a_equals_a"] = dm_rel_dev(dm_mul(AX, A), A);
            res["x_a_x_equals_x"] = dm_rel_dev(dm_mul(XA, X), X);
            res["ax_is_hermitian"] = dm_rel_dev(dm_adjoint(AX), AX);
            res["xa_is_hermitian"] = dm_rel_dev(dm_adjoint(XA), XA);
            break;
        case GinvKind::ndmpi:
            res["a_x_a_equals_essential_part"] =
                dm_rel_dev(dm_mul(AX, A), essential_part(A, cfg));
            res["x_a_x_equals_x"] = dm_rel_dev(dm_mul(XA, X), X);
            res["ax_is_hermitian"] = dm_rel_dev(dm_adjoint(AX), AX);
            res["xa_is_hermitian"] = dm_rel_dev(dm_adjoint(XA), XA);
            break;
        case GinvKind::dggi:
            res["a_x_a_equals_a"] = dm_rel_dev(dm_mul(AX, A), A);
            res["x_a_x_equals_x"] = dm_rel_dev(dm_mul(XA, X), X);
            res["ax_equals_xa"] = dm_rel_dev(AX, XA);
            break;
        case GinvKind::dcgi:
            res["a_x_a_equals_a"] = dm_rel_dev(dm_mul(AX, A), A);
            res["a_x_x_equals_x"] = dm_rel_dev(dm_mul(AX, X), X);
            res["ax_is_hermitian"] = dm_rel_dev(dm_adjoint(AX), AX);
            break;
    }
    return res;
}

namespace detail {

inline GinvResult finish_ginv(GinvKind kind, GinvMethod method, const DualMatrix& A,
                              DualMatrix X, const ToleranceConfig& cfg) {
    GinvResult out;
    out.kind = kind;
    out.method = method;
    out.R = cm_scale(X.D, Complex{-1.0, 0.0});
    out.residuals = verify_defining_equations(kind, A, X, cfg);
    out.value = std::move(X);
    for (const auto& [name, value] : out.residuals) {
        if (value > cfg.residual) {
            throw ToleranceBreach(std::string(ginv_kind_name(kind)) +
                                  " defining equation '" + name + "' residual " +
                                  std::to_string(value) + " exceeds tolerance");
        }
    }
    return out;
}

// Moore-Penrose style inverse through the decomposition: for square input
// the unitary similarity form, otherwise the dual SVD factors directly.
inline DualMatrix mp_via_decomposition(const DualMatrix& A, const ToleranceConfig& cfg) {
    const double scale = dm_scale(A);
    if (A.rows() == A.cols()) {
        const int n = A.rows();
        DualSVD f = dual_svd(A, cfg);
        DualMatrix W = dm_mul(dm_adjoint(f.V), f.U);
        DualMatrix K = dm_block(W, 0, 0, f.r, f.r);
        DualMatrix L = dm_block(W, 0, f.r, f.r, n - f.r);
        DualMatrix S1i = sigma1_inverse(f, scale, cfg);
        DualMatrix inner = DualMatrix::zeros(n, n);
        dm_set_block(inner, 0, 0, dm_mul(dm_adjoint(K), S1i));
        dm_set_block(inner, f.r, 0, dm_mul(dm_adjoint(L), S1i));
        return dm_mul(dm_mul(f.U, inner), dm_adjoint(f.U));
    }
    DualSVD f = dual_svd(A, cfg);
    DualMatrix S1i = sigma1_inverse(f, scale, cfg);
    DualMatrix inner = DualMatrix::zeros(A.cols(), A.rows());
    dm_set_block(inner, 0, 0, S1i);
    return dm_mul(dm_mul(f.V, inner), dm_adjoint(f.U));
}

inline DualMatrix dmpgi_via_formula(const DualMatrix& A, const ToleranceConfig& cfg) {
    ComplexMatrix P = pinv(A.S, cfg);
    ComplexMatrix left = left_projector_complement(A.S, P);    // I_m - S P
    ComplexMatrix right = right_projector_complement(A.S, P);  // I_n - P S
    ComplexMatrix Dh = cm_adjoint(A.D);
    ComplexMatrix gram_right = pinv(cm_mul(cm_adjoint(A.S), A.S), cfg);  // (S^* S)^+
    ComplexMatrix gram_left = pinv(cm_mul(A.S, cm_adjoint(A.S)), cfg);   // (S S^*)^+
    ComplexMatrix R = cm_mul(P, cm_mul(A.D, P));
    R = cm_sub(R, cm_mul(gram_right, cm_mul(Dh, left)));
    R = cm_sub(R, cm_mul(cm_mul(right, Dh), gram_left));
    return DualMatrix(P, cm_scale(R, Complex{-1.0, 0.0}));
}

}  // namespace detail

inline GinvResult dmpgi(const DualMatrix& A, GinvMethod method,
                        const ToleranceConfig& cfg = default_tolerances()) {
    ExistenceReport rep = dmpgi_exists(A, cfg);
    if (!rep.agree) {
        throw ToleranceBreach("dmpgi existence predicates disagree on a borderline input");
    }
    if (!rep.exists) {
        throw InverseNotExists(
            "dual Moore-Penrose inverse does not exist: the infinitesimal part moves the "
            "null space of the standard part");
    }
    DualMatrix X = method == GinvMethod::formula ? detail::dmpgi_via_formula(A, cfg)
                                                 : detail::mp_via_decomposition(A, cfg);
    return detail::finish_ginv(GinvKind::dmpgi, method, A, std::move(X), cfg);
}

// The relaxed Moore-Penrose inverse exists for every dual matrix: it inverts
// the essential part, discarding the purely infinitesimal singular values.
inline GinvResult ndmpi(const DualMatrix& A, GinvMethod method,
                        const ToleranceConfig& cfg = default_tolerances()) {
    DualMatrix X = method == GinvMethod::formula
                       ? detail::dmpgi_via_formula(essential_part(A, cfg), cfg)
                       : detail::mp_via_decomposition(A, cfg);
    return detail::finish_ginv(GinvKind::ndmpi, method, A, std::move(X), cfg);
}

namespace detail {

inline void require_index_one(const DualMatrix& A, const char* op,
                              const ToleranceConfig& cfg) {
    ExistenceReport rep = dual_index_is_one(A, cfg);
    if (!rep.agree) {
        throw ToleranceBreach(std::string(op) +
                              ": index predicates disagree on a borderline input");
    }
    if (!rep.exists) {
        throw NotIndexOne(std::string(op) + ": dual index of the input is not one");
    }
}

}  // namespace detail

inline GinvResult dggi(const DualMatrix& A, GinvMethod method,
                       const ToleranceConfig& cfg = default_tolerances()) {
    detail::require_square(A, "dggi");
    detail::require_index_one(A, "dggi", cfg);
    DualMatrix X;
    if (method == GinvMethod::formula) {
        ComplexMatrix G = group_inv(A.S, cfg);
        ComplexMatrix left = cm_sub(ComplexMatrix::identity(A.rows()), cm_mul(A.S, G));
        ComplexMatrix G2 = cm_mul(G, G);
        ComplexMatrix R = cm_mul(G, cm_mul(A.D, G));
        R = cm_sub(R, cm_mul(G2, cm_mul(A.D, left)));
        R = cm_sub(R, cm_mul(left, cm_mul(A.D, G2)));
        X = DualMatrix(G, cm_scale(R, Complex{-1.0, 0.0}));
    } else {
        const int n = A.rows();
        const double scale = dm_scale(A);
        DualSVD f = dual_svd(A, cfg);
        DualMatrix W = dm_mul(dm_adjoint(f.V), f.U);
        DualMatrix K = dm_block(W, 0, 0, f.r, f.r);
        DualMatrix L = dm_block(W, 0, f.r, f.r, n - f.r);
        DualMatrix Kinv = dm_inv(K, cfg);
        DualMatrix S1i = detail::sigma1_inverse(f, scale, cfg);
        DualMatrix top_left = dm_mul(Kinv, S1i);
        DualMatrix inner = DualMatrix::zeros(n, n);
        dm_set_block(inner, 0, 0, top_left);
        dm_set_block(inner, 0, f.r, dm_mul(dm_mul(top_left, Kinv), L));
        X = dm_mul(dm_mul(f.U, inner), dm_adjoint(f.U));
    }
    return detail::finish_ginv(GinvKind::dggi, method, A, std::move(X), cfg);
}

inline GinvResult dcgi(const DualMatrix& A, GinvMethod method,
                       const ToleranceConfig& cfg = default_tolerances()) {
    detail::require_square(A, "dcgi");
    detail::require_index_one(A, "dcgi", cfg);
    DualMatrix X;
    if (method == GinvMethod::formula) {
        ComplexMatrix C = core_inv(A.S, cfg);
        ComplexMatrix G = group_inv(A.S, cfg);
        ComplexMatrix P = pinv(A.S, cfg);
        ComplexMatrix DP = cm_mul(A.D, P);
        ComplexMatrix R = cm_mul(C, DP);
        R = cm_sub(R, cm_mul(G, DP));
        R = cm_add(R, cm_mul(G, cm_mul(A.D, C)));
        R = cm_sub(R, cm_mul(C, cm_mul(cm_adjoint(DP),
                                       detail::left_projector_complement(A.S, P))));
        ComplexMatrix group_left = cm_sub(ComplexMatrix::identity(A.rows()),
                                          cm_mul(A.S, G));
        R = cm_sub(R, cm_mul(group_left, cm_mul(A.D, cm_mul(G, C))));
        X = DualMatrix(C, cm_scale(R, Complex{-1.0, 0.0}));
    } else {
        const int n = A.rows();
        const double scale = dm_scale(A);
        DualSVD f = dual_svd(A, cfg);
        DualMatrix W = dm_mul(dm_adjoint(f.V), f.U);
        DualMatrix K = dm_block(W, 0, 0, f.r, f.r);
        DualMatrix Kinv = dm_inv(K, cfg);
        DualMatrix S1i = detail::sigma1_inverse(f, scale, cfg);
        DualMatrix inner = DualMatrix::zeros(n, n);
        dm_set_block(inner, 0, 0, dm_mul(Kinv, S1i));
        X = dm_mul(dm_mul(f.U, inner), dm_adjoint(f.U));
    }
    return detail::finish_ginv(GinvKind::dcgi, method, A, std::move(X), cfg);
}

}  // namespace dualmat
