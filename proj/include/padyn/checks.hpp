#pragma once

#include <string>
#include <utility>
#include <vector>

#include "phi.hpp"

namespace padyn {

enum class Verdict {
    pass,
    fail,
    vacuous,       // the quantity vanished at precision or the hypothesis is empty
    inconclusive,  // precision too low to decide
    report,        // experimental regime: observed, not asserted
};

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::vacuous: return "vacuous";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::report: return "report";
    }
    return "?";
}

/// A valuation observed at finite precision: exact, or only known to be at
/// least `v` because the quantity vanished at precision v.
struct ValuationObs {
    int v = 0;
    bool exact = true;

    static ValuationObs of(const Element& x) { return {x.valuation_bound(), !x.is_zero()}; }

    std::string str() const { return (exact ? "" : ">=") + std::to_string(v); }

    friend ValuationObs operator+(ValuationObs a, ValuationObs b) { return {a.v + b.v, a.exact && b.exact}; }
};

/// true when "a >= b" holds for every value consistent with the observations.
inline bool certainly_geq(ValuationObs a, int b) { return a.v >= b; }

/// Two observations of the same quantity agree.
inline bool consistent(ValuationObs a, ValuationObs b) {
    if (a.exact && b.exact) return a.v == b.v;
    if (a.exact) return a.v >= b.v;
    if (b.exact) return b.v >= a.v;
    return true;
}

struct CheckResult {
    std::string check_id;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::pair<std::string, std::string>> observed;
    std::string expected;
    Verdict verdict = Verdict::pass;
    std::string regime_flag = "verified";

    bool failed() const { return verdict == Verdict::fail; }
};

namespace detail {

inline void require_integral(const Element& x, const char* what) {
    if (!x.is_integral()) throw NotIntegral(std::string(what) + " must lie in O_K");
}

// sum_{i=0}^{q-1} X^i Y^{q-1-i}, so that X^q - Y^q = (X - Y) * factor.
inline Element power_difference_factor(const Element& X, const Element& Y, std::uint64_t q) {
    Element acc = Element::one(X.field());
    Element ypow = Element::one(X.field());
    for (std::uint64_t k = 1; k < q; ++k) {
        ypow *= Y;
        acc = acc * X + ypow;
    }
    return acc;
}

} // namespace detail

/// teichmuller(c) is fixed by x -> x^{p^f}, reduces
/// to c, and matches the lift obtained by direct iteration.
inline CheckResult check_teichmuller(const Field& F, ResidueElement c) {
    CheckResult r;
    r.check_id = "teichmuller";
    r.inputs = {{"c", std::to_string(c.value)}};
    r.expected = "v(xi^q - xi) >= N, reduction(xi) = c, xi = iterated lift";
    const Element xi = teichmuller(c, F);
    const Element fixed = xi.pow(F->residue_size()) - xi;
    const Element oracle = Element::from_coords(F, ring::teichmuller_by_iteration(*F, c));
    const bool reduces = xi.reduction() == c;
    const bool same = indistinguishable(xi, oracle);
    r.observed = {{"v_fixed", ValuationObs::of(fixed).str()},
                  {"reduction", std::to_string(xi.reduction().value)},
                  {"matches_iteration", same ? "true" : "false"}};
    r.verdict = (fixed.is_zero() && reduces && same) ? Verdict::pass : Verdict::fail;
    return r;
}

/// |M_m(x) - M_n(x)| < |pi| for x in O_K, i.e. v_pi >= 2.
inline CheckResult check_frobenius_gap(const PhiMap& phi, const Element& x) {
    detail::require_integral(x, "x");
    CheckResult r;
    r.check_id = "frobenius_gap";
    r.inputs = {{"x", to_literal(x)}};
    r.expected = "v(M_m(x) - M_n(x)) >= 2";
    const Element diff = frobenius_power(phi, x, phi.m) - frobenius_power(phi, x, phi.n);
    const auto obs = ValuationObs::of(diff);
    r.observed = {{"v_diff", obs.str()}};
    // A difference vanishing at precision N still certifies v >= N >= 2.
    r.verdict = certainly_geq(obs, 2) ? Verdict::pass : Verdict::fail;
    return r;
}

/// |M_m(x)-M_m(y)| < |M_n(x)-M_n(y)| < |x-y| for |x-y| < 1, together with the
/// bound v(M_k(x)-M_k(y)) >= k + v(x-y) for k in {n, m}.
///
/// Each M_{j+1} difference is the M_j difference times
/// S_j = sum_i M_j(x)^i M_j(y)^{q-1-i}; the chain is certified by v(S_j) >= 1,
/// and the factored valuations are cross-checked against direct evaluation.
inline CheckResult check_frobenius_contraction(const PhiMap& phi, const Element& x, const Element& y) {
    detail::require_integral(x, "x");
    detail::require_integral(y, "y");
    CheckResult r;
    r.check_id = "frobenius_contraction";
    r.inputs = {{"x", to_literal(x)}, {"y", to_literal(y)}};
    r.expected = "v(M_m diff) > v(M_n diff) > v(x-y); v(M_k diff) >= k + v(x-y)";
    const Element d0 = x - y;
    if (d0.is_zero()) {
        r.observed = {{"v_xy", ValuationObs::of(d0).str()}};
        r.verdict = Verdict::vacuous;
        return r;
    }
    const int c = d0.valuation();
    if (c < 1) throw PreconditionViolated("frobenius contraction needs |x - y| < 1");

    ValuationObs chain{c, true};
    ValuationObs at_n{}, at_m{};
    bool factors_ok = true;
    std::string factor_vals;
    Element X = x, Y = y;
    for (int j = 0; j < phi.m; ++j) {
        const Element S = detail::power_difference_factor(X, Y, phi.q);
        const auto vs = ValuationObs::of(S);
        factor_vals += (j ? "," : "") + vs.str();
        if (vs.exact && vs.v < 1) factors_ok = false;
        chain = chain + vs;
        if (j + 1 == phi.n) at_n = chain;
        if (j + 1 == phi.m) at_m = chain;
        X = X.pow(phi.q);
        Y = Y.pow(phi.q);
    }
    const auto direct_n = ValuationObs::of(frobenius_power(phi, x, phi.n) - frobenius_power(phi, y, phi.n));
    const auto direct_m = ValuationObs::of(frobenius_power(phi, x, phi.m) - frobenius_power(phi, y, phi.m));

    const bool consistent_n = consistent(direct_n, at_n);
    const bool consistent_m = consistent(direct_m, at_m);
    const bool bound_ok = certainly_geq(at_n, phi.n + c) && certainly_geq(at_m, phi.m + c);
    r.observed = {{"v_xy", std::to_string(c)},
                  {"v_Mn_diff", direct_n.str()},
                  {"v_Mm_diff", direct_m.str()},
                  {"v_factors", factor_vals},
                  {"factored_v_Mn_diff", at_n.str()},
                  {"factored_v_Mm_diff", at_m.str()},
                  {"bound_k_plus_v", bound_ok ? "true" : "false"}};
    r.verdict = (factors_ok && consistent_n && consistent_m && bound_ok) ? Verdict::pass : Verdict::fail;
    return r;
}

/// |x/(1+u) - y/(1+v)| <= |x-y| when |u-v| <= |x-y|, with equality when
/// |u-v| < |x-y|.  x, y in O_K and u, v in pi O_K.
inline CheckResult check_quotient_bound(const Element& x, const Element& y, const Element& u, const Element& v) {
    detail::require_integral(x, "x");
    detail::require_integral(y, "y");
    if (u.valuation_bound() < 1 || v.valuation_bound() < 1) throw PreconditionViolated("u, v must lie in pi O_K");
    CheckResult r;
    r.check_id = "quotient_bound";
    r.inputs = {{"x", to_literal(x)}, {"y", to_literal(y)}, {"u", to_literal(u)}, {"v", to_literal(v)}};
    const Element one = Element::one(x.field());
    const Element lhs = x * (one + u).inverse() - y * (one + v).inverse();
    const auto L = ValuationObs::of(lhs);
    const auto R = ValuationObs::of(x - y);
    const auto D = ValuationObs::of(u - v);
    r.observed = {{"v_lhs", L.str()}, {"v_xy", R.str()}, {"v_uv", D.str()}};

    if (!R.exact) {
        // x = y: the difference is x (v - u) / ((1+u)(1+v)), so v(lhs) = v(x) + v(u - v).
        const auto bound = ValuationObs::of(x) + D;
        r.expected = "x = y: v(lhs) >= v(x) + v(u-v)";
        r.observed.emplace_back("bound", bound.str());
        r.verdict = (!L.exact || L.v >= bound.v) ? Verdict::pass : Verdict::fail;
        if (!L.exact && !bound.exact) r.verdict = Verdict::vacuous;
        return r;
    }
    if (D.exact && D.v < R.v) {
        r.expected = "hypothesis |u-v| <= |x-y| not met";
        r.verdict = Verdict::vacuous;
        return r;
    }
    const bool strict = !D.exact || D.v > R.v;
    if (strict) {
        r.expected = "v(lhs) = v(x-y)";
        r.verdict = (L.exact && L.v == R.v) ? Verdict::pass : Verdict::fail;
    } else {
        r.expected = "v(lhs) >= v(x-y)";
        r.verdict = certainly_geq(L, R.v) ? Verdict::pass : Verdict::fail;
    }
    return r;
}

/// |phi(x) - phi(y)| = p^{1/e} |x - y| for x, y in O_K with |x - y| < 1.
inline CheckResult check_local_scaling(const PhiMap& phi, const Element& x, const Element& y) {
    detail::require_integral(x, "x");
    detail::require_integral(y, "y");
    CheckResult r;
    r.check_id = "local_scaling";
    r.inputs = {{"x", to_literal(x)}, {"y", to_literal(y)}};
    r.expected = "v(phi(x) - phi(y)) = v(x - y) - 1";
    r.regime_flag = phi.regime_flag();
    const Element d = x - y;
    if (d.is_zero()) {
        r.observed = {{"v_xy", ValuationObs::of(d).str()}};
        r.verdict = Verdict::vacuous;
        return r;
    }
    const int c = d.valuation();
    if (c < 1 || c > phi.field->pi_precision - 2)
        throw PreconditionViolated("local scaling needs 1 <= v(x - y) <= N - 2, got " + std::to_string(c));
    const auto img = ValuationObs::of(eval_affine(phi, x) - eval_affine(phi, y));
    const bool holds = img.exact && img.v == c - 1;
    r.observed = {{"v_xy", std::to_string(c)}, {"v_image", img.str()}, {"holds", holds ? "true" : "false"}};
    if (!phi.verified_regime())
        r.verdict = Verdict::report;
    else
        r.verdict = holds ? Verdict::pass : Verdict::fail;
    return r;
}

/// phi(P^1(K) \ O_K) lies in pi O_K.
inline CheckResult check_outside_maps_in(const PhiMap& phi, const ProjectivePoint& P) {
    if (P.is_integral()) throw PreconditionViolated("point must lie outside O_K");
    CheckResult r;
    r.check_id = "outside_maps_in";
    r.inputs = {{"P", to_point_literal(P)}};
    r.expected = "phi(P) = [z : 1] with v(z) >= 1";
    const ProjectivePoint img = eval(phi, P);
    if (!img.is_integral()) {
        r.observed = {{"image", to_string(img)}, {"integral", "false"}};
        r.verdict = Verdict::fail;
        return r;
    }
    const auto vz = ValuationObs::of(img.affine());
    r.observed = {{"v_image", vz.str()}};
    r.verdict = certainly_geq(vz, 1) ? Verdict::pass : Verdict::fail;
    return r;
}

/// phi(O_K) lies in O_K and the denominator has valuation exactly 1 there.
inline CheckResult check_integral_maps_in(const PhiMap& phi, const Element& x) {
    detail::require_integral(x, "x");
    CheckResult r;
    r.check_id = "integral_maps_in";
    r.inputs = {{"x", to_literal(x)}};
    r.expected = "v(pi + M_m(x) - M_n(x)) = 1 and v(phi(x)) >= 0";
    const auto vden = ValuationObs::of(phi_denominator(phi, x));
    const auto vimg = ValuationObs::of(eval_affine(phi, x));
    r.observed = {{"v_denominator", vden.str()}, {"v_image", vimg.str()}};
    r.verdict = (vden.exact && vden.v == 1 && certainly_geq(vimg, 0)) ? Verdict::pass : Verdict::fail;
    return r;
}

/// |M_1(x) - x| <= |pi| on O_K.
inline CheckResult check_m1_bound(const PhiMap& phi, const Element& x) {
    detail::require_integral(x, "x");
    CheckResult r;
    r.check_id = "m1_bound";
    r.inputs = {{"x", to_literal(x)}};
    r.expected = "v(x^q - x) >= 1";
    const auto obs = ValuationObs::of(x.pow(phi.q) - x);
    r.observed = {{"v_diff", obs.str()}};
    r.verdict = certainly_geq(obs, 1) ? Verdict::pass : Verdict::fail;
    return r;
}

/// Homogeneous and affine evaluation agree on O_K.
inline CheckResult check_degree_consistency(const PhiMap& phi, const Element& x) {
    detail::require_integral(x, "x");
    CheckResult r;
    r.check_id = "degree_consistency";
    r.inputs = {{"x", to_literal(x)}};
    r.expected = "eval([x:1]) indistinguishable from [phi_affine(x) : 1]";
    const ProjectivePoint hom = eval(phi, affine_point(x));
    const ProjectivePoint aff = affine_point(eval_affine(phi, x));
    const auto rho = spherical_distance_bound(hom, aff);
    r.observed = {{"rho_log", (rho.resolved ? "" : ">=") + std::to_string(rho.k)}};
    r.verdict = rho.resolved ? Verdict::fail : Verdict::pass;
    return r;
}

} // namespace padyn
