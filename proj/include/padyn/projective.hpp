#pragma once

#include <algorithm>
#include <climits>
#include <string>

#include "element.hpp"

namespace padyn {

/// A point [x : y] of P^1(K) with min(v(x), v(y)) = 0.
class ProjectivePoint {
public:
    ProjectivePoint() = default;

    const Element& x() const { return x_; }
    const Element& y() const { return y_; }
    const Field& field() const { return x_.field(); }

    /// In O_K means [z : 1] with z integral, i.e. y is a unit.
    bool is_integral() const { return !y_.is_zero() && y_.valuation() == 0; }

    bool is_infinity() const { return y_.is_zero(); }

    /// z = x / y for an integral point.
    Element affine() const {
        if (!is_integral()) throw NotIntegral("affine coordinate of a point outside O_K");
        return x_ * y_.inverse();
    }

    friend ProjectivePoint normalize(const Element& x, const Element& y);

private:
    ProjectivePoint(Element x, Element y) : x_(std::move(x)), y_(std::move(y)) {}

    Element x_;
    Element y_;
};

/// Scales [x : y] by pi^{-min(v(x), v(y))}.  A coordinate that is zero at
/// precision counts with its precision as valuation bound; if such a bound is
/// what attains the minimum, the ratio is undetermined.
inline ProjectivePoint normalize(const Element& x, const Element& y) {
    if (x.is_zero() && y.is_zero())
        throw BothCoordinatesVanish("both homogeneous coordinates vanish at precision");
    const int vx = x.is_zero() ? INT_MAX : x.valuation();
    const int vy = y.is_zero() ? INT_MAX : y.valuation();
    const int k = std::min(vx, vy);
    if ((x.is_zero() && x.precision() < k) || (y.is_zero() && y.precision() < k))
        throw BothCoordinatesVanish("coordinate known only below the other's valuation");
    return ProjectivePoint(x.shifted(-k), y.shifted(-k));
}

inline ProjectivePoint affine_point(const Element& z) { return normalize(z, Element::one(z.field())); }

inline ProjectivePoint infinity_point(const Field& F) { return normalize(Element::one(F), Element::zero(F)); }

/// rho(P, Q) = p^{-k/e}.  When the cross term vanishes at precision, k is
/// only a lower bound and `resolved` is false.
struct RhoLog {
    int k = 0;
    bool resolved = true;
};

inline Element cross_term(const ProjectivePoint& P, const ProjectivePoint& Q) {
    return P.x() * Q.y() - Q.x() * P.y();
}

inline RhoLog spherical_distance_bound(const ProjectivePoint& P, const ProjectivePoint& Q) {
    const Element t = cross_term(P, Q);
    if (t.is_zero()) return {t.precision(), false};
    return {t.valuation(), true};
}

/// k with rho(P, Q) = p^{-k/e}.  Throws PrecisionExhausted when P and Q are
/// indistinguishable at the working precision.
inline int spherical_distance(const ProjectivePoint& P, const ProjectivePoint& Q) {
    const Element t = cross_term(P, Q);
    if (t.is_zero())
        throw PrecisionExhausted("points indistinguishable at precision " + std::to_string(t.precision()));
    return t.valuation();
}

inline bool indistinguishable(const ProjectivePoint& P, const ProjectivePoint& Q) {
    return cross_term(P, Q).is_zero();
}

/// `inf`, or an element literal z meaning [z : 1].
inline ProjectivePoint parse_point(const Field& F, const std::string& text) {
    const std::string s = detail::trim(text);
    if (s == "inf" || s == "infinity") return infinity_point(F);
    return affine_point(parse_element(F, s));
}

/// `[<elem> : <elem>]`
inline std::string to_string(const ProjectivePoint& P) {
    return "[" + to_literal(P.x()) + " : " + to_literal(P.y()) + "]";
}

/// Short form: `inf`, the affine literal for integral points, or the
/// homogeneous pair otherwise.
inline std::string to_point_literal(const ProjectivePoint& P) {
    if (P.is_infinity() && !P.x().is_zero()) return "inf";
    if (P.is_integral()) return to_literal(P.affine());
    return to_string(P);
}

} // namespace padyn
