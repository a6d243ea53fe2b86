#pragma once

#include <cmath>
#include <complex>

#include "config.hpp"
#include "error.hpp"

namespace dualmat {

using Complex = std::complex<double>;

// A dual complex number s + eps*d with eps^2 = 0.
struct DualComplex {
    Complex s{0.0, 0.0};
    Complex d{0.0, 0.0};
};

// A dual real number, used for singular values and ordering.
struct DualReal {
    double s = 0.0;
    double d = 0.0;
};

inline DualComplex dc_add(const DualComplex& a, const DualComplex& b) {
    return {a.s + b.s, a.d + b.d};
}

inline DualComplex dc_sub(const DualComplex& a, const DualComplex& b) {
    return {a.s - b.s, a.d - b.d};
}

// (a_s + eps a_d)(b_s + eps b_d) = a_s b_s + eps(a_s b_d + a_d b_s).
inline DualComplex dc_mul(const DualComplex& a, const DualComplex& b) {
    return {a.s * b.s, a.s * b.d + a.d * b.s};
}

inline DualComplex dc_conj(const DualComplex& a) {
    return {std::conj(a.s), std::conj(a.d)};
}

// Appreciable means the standard part is nonzero at the working scale; only
// appreciable dual numbers are invertible.
inline bool is_appreciable(const DualComplex& a, double scale = 1.0,
                           const ToleranceConfig& cfg = default_tolerances()) {
    return std::abs(a.s) > cfg.appreciable * std::max(1.0, scale);
}

inline bool is_appreciable(const DualReal& a, double scale = 1.0,
                           const ToleranceConfig& cfg = default_tolerances()) {
    return std::abs(a.s) > cfg.appreciable * std::max(1.0, scale);
}

// Inverse of an appreciable dual number: (s + eps d)^-1 = s^-1 - eps s^-2 d.
inline DualComplex dc_inv(const DualComplex& a, double scale = 1.0,
                          const ToleranceConfig& cfg = default_tolerances()) {
    if (!is_appreciable(a, scale, cfg)) {
        throw NotAppreciable("dual number has no inverse: standard part vanishes");
    }
    Complex si = 1.0 / a.s;
    return {si, -si * si * a.d};
}

inline DualReal dreal_inv(const DualReal& a, double scale = 1.0,
                          const ToleranceConfig& cfg = default_tolerances()) {
    if (!is_appreciable(a, scale, cfg)) {
        throw NotAppreciable("dual number has no inverse: standard part vanishes");
    }
    double si = 1.0 / a.s;
    return {si, -si * si * a.d};
}

// Lexicographic order on dual reals: compare standard parts first, then the
// infinitesimal parts on ties.
inline bool dreal_less(const DualReal& a, const DualReal& b) {
    if (a.s != b.s) return a.s < b.s;
    return a.d < b.d;
}

inline bool dreal_leq(const DualReal& a, const DualReal& b) {
    if (a.s != b.s) return a.s < b.s;
    return a.d <= b.d;
}

}  // namespace dualmat
