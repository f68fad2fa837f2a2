#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "projective.hpp"

namespace padyn {

/// phi(z) = (z^q - z) / (pi + z^{q_m} - z^{q_n}) with q = p^f, q_m = p^{mf},
/// q_n = p^{nf}, m > n >= 1.
struct PhiMap {
    Field field;
    int m = 3;
    int n = 2;
    std::uint64_t q = 2;    // p^f
    std::uint64_t q_m = 8;  // p^{mf}, the degree
    std::uint64_t q_n = 4;  // p^{nf}

    std::uint64_t degree() const { return q_m; }

    /// The local-scaling argument needs n >= 2; n = 1 runs report-only.
    bool verified_regime() const { return n >= 2; }

    std::string regime_flag() const { return verified_regime() ? "verified" : "experimental_n1"; }

    std::string describe() const {
        return "phi(z) = (z^" + std::to_string(q) + " - z) / (pi + z^" + std::to_string(q_m) + " - z^" +
               std::to_string(q_n) + ")";
    }
};

inline constexpr std::uint64_t kMaxPhiDegree = 1u << 16;

inline PhiMap make_phi(const Field& F, int m, int n) {
    if (!(m > n && n >= 1))
        throw BadParameters("need m > n >= 1, got m=" + std::to_string(m) + ", n=" + std::to_string(n));
    PhiMap phi;
    phi.field = F;
    phi.m = m;
    phi.n = n;
    std::uint64_t q = 1;
    for (int i = 0; i < F->f; ++i) q *= F->p;
    auto power = [&](int k) {
        std::uint64_t r = 1;
        for (int i = 0; i < k; ++i) {
            if (r > kMaxPhiDegree / q)
                throw ExponentTooLarge("p^{mf} exceeds 2^16 for m=" + std::to_string(m));
            r *= q;
        }
        return r;
    };
    phi.q = q;
    phi.q_m = power(m);
    phi.q_n = power(n);
    return phi;
}

/// M_k(z) = z^{p^{kf}}.
inline Element frobenius_power(const PhiMap& phi, const Element& z, int k) {
    Element r = z;
    for (int i = 0; i < k; ++i) r = r.pow(phi.q);
    return r;
}

/// pi + M_m(z) - M_n(z).
inline Element phi_denominator(const PhiMap& phi, const Element& z) {
    return Element::pi_power(phi.field, 1) + z.pow(phi.q_m) - z.pow(phi.q_n);
}

inline Element phi_numerator(const PhiMap& phi, const Element& z) { return z.pow(phi.q) - z; }

/// Affine evaluation num(z) / den(z).
inline Element eval_affine(const PhiMap& phi, const Element& z) {
    const Element den = phi_denominator(phi, z);
    if (den.is_zero()) throw IndeterminatePoint("denominator vanishes at precision");
    return phi_numerator(phi, z) * den.inverse();
}

/// Homogeneous evaluation
///   [X^q Y^{D-q} - X Y^{D-1} : pi Y^D + X^D - X^{q_n} Y^{D-q_n}],  D = q_m,
/// followed by normalization.
inline ProjectivePoint eval(const PhiMap& phi, const ProjectivePoint& P) {
    const Element& X = P.x();
    const Element& Y = P.y();
    const std::uint64_t D = phi.q_m;
    const Element num = X.pow(phi.q) * Y.pow(D - phi.q) - X * Y.pow(D - 1);
    const Element den = Element::pi_power(phi.field, 1) * Y.pow(D) + X.pow(D) - X.pow(phi.q_n) * Y.pow(D - phi.q_n);
    try {
        return normalize(num, den);
    } catch (const BothCoordinatesVanish& err) {
        throw IndeterminatePoint(std::string("phi image undetermined at precision: ") + err.what());
    }
}

struct Orbit {
    std::vector<ProjectivePoint> points;  // P, phi(P), ...
    /// Set when iteration stopped early on an undetermined image; holds the
    /// index of the step that could not be computed.
    std::optional<int> truncated_at;
};

inline Orbit orbit(const PhiMap& phi, const ProjectivePoint& P, int steps) {
    if (steps > phi.field->pi_precision)
        throw PrecisionExhausted("orbit length exceeds pi-adic precision " + std::to_string(phi.field->pi_precision));
    Orbit out;
    out.points.push_back(P);
    for (int s = 1; s <= steps; ++s) {
        try {
            out.points.push_back(eval(phi, out.points.back()));
        } catch (const IndeterminatePoint&) {
            out.truncated_at = s;
            break;
        }
    }
    return out;
}

} // namespace padyn
