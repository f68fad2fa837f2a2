#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phi.hpp"
#include "random.hpp"

namespace padyn {

struct WitnessResult {
    bool found = false;
    ProjectivePoint partner;  // Q with rho(P, Q) = p^{-delta_log/e}
    int steps = 0;            // n with rho(phi^n P, phi^n Q) >= |pi|
    RhoLog final_distance;
    /// Smallest separation exponent reached across all attempts.
    std::optional<int> best_distance_log;
    int attempts_used = 0;
    std::string failure;
};

namespace detail {

// Q at spherical distance exactly |pi|^delta from P along the unit direction u.
inline ProjectivePoint perturb(const ProjectivePoint& P, const Element& u, int delta) {
    const Element step = u.shifted(delta);
    if (P.is_integral()) return normalize(P.x() + step, P.y());
    return normalize(P.x(), P.y() + step);
}

} // namespace detail

/// Searches for Q within p^{-delta_log/e} of P whose orbit separates from P's
/// orbit to distance >= |pi| within max_steps iterations.  Teichmuller unit
/// directions are tried first, then random units drawn from `seed`.
inline WitnessResult find_expansion_witness(const PhiMap& phi, const ProjectivePoint& P, int delta_log, int max_steps,
                                            int attempts, std::uint64_t seed = 0) {
    const Field& F = phi.field;
    if (delta_log < 1) throw PreconditionViolated("delta_log must be >= 1");
    if (max_steps > F->pi_precision) throw PrecisionExhausted("max_steps exceeds pi-adic precision");
    if (attempts < 1) throw PreconditionViolated("attempts must be >= 1");

    WitnessResult out;
    std::vector<ProjectivePoint> base{P};
    std::optional<int> base_truncated;
    auto base_at = [&](int n) -> const ProjectivePoint* {
        while (static_cast<int>(base.size()) <= n && !base_truncated) {
            try {
                base.push_back(eval(phi, base.back()));
            } catch (const IndeterminatePoint&) {
                base_truncated = static_cast<int>(base.size());
            }
        }
        return n < static_cast<int>(base.size()) ? &base[static_cast<std::size_t>(n)] : nullptr;
    };

    RandomStream rng = RandomStream(seed).substream("witness");
    const std::uint64_t q = F->residue_size();
    for (int a = 0; a < attempts; ++a) {
        out.attempts_used = a + 1;
        const Element u = static_cast<std::uint64_t>(a) + 1 < q ? teichmuller({static_cast<std::uint64_t>(a) + 1}, F)
                                                                 : random_unit(F, rng);
        ProjectivePoint Qn = detail::perturb(P, u, delta_log);
        const ProjectivePoint Q0 = Qn;
        RhoLog rho = spherical_distance_bound(P, Qn);
        for (int n = 0;; ++n) {
            if (rho.resolved && (!out.best_distance_log || rho.k < *out.best_distance_log)) out.best_distance_log = rho.k;
            if (rho.resolved && rho.k <= 1) {
                out.found = true;
                out.partner = Q0;
                out.steps = n;
                out.final_distance = rho;
                out.failure.clear();
                return out;
            }
            if (!rho.resolved) {
                out.failure = "orbits indistinguishable at precision after " + std::to_string(n) + " steps";
                break;
            }
            if (n == max_steps) {
                out.failure = "no separation within " + std::to_string(max_steps) + " steps";
                break;
            }
            const ProjectivePoint* Pn = base_at(n + 1);
            if (!Pn) {
                out.failure = "orbit of P undetermined at step " + std::to_string(n + 1);
                break;
            }
            try {
                Qn = eval(phi, Qn);
            } catch (const IndeterminatePoint&) {
                out.failure = "orbit of Q undetermined at step " + std::to_string(n + 1);
                break;
            }
            rho = spherical_distance_bound(*Pn, Qn);
        }
    }
    return out;
}

} // namespace padyn
