#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "checks.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "report.hpp"
#include "symbolic.hpp"
#include "witness.hpp"

namespace padyn {

struct RunConfig {
    unsigned long p = 2;
    int e = 1;
    int f = 1;
    int m = 3;
    int n = 2;
    int precision = 32;
    std::uint64_t seed = 0;
    int samples = 500;
    ReportFormat format = ReportFormat::json;
    int max_steps = 0;  // 0: the pi-adic precision N
    int attempts = 4;
    int delta_log = 10;
    unsigned workers = 0;  // 0: hardware concurrency
};

/// Field and map of a configuration; throws on invalid parameters.
struct Setup {
    Field field;
    PhiMap phi;
};

inline Setup make_setup(const RunConfig& c) {
    Field F = make_field(c.p, c.e, c.f, c.precision);
    if (c.samples < 0) throw BadParameters("samples must be >= 0");
    if (c.attempts < 1) throw BadParameters("attempts must be >= 1");
    if (c.delta_log < 1) throw BadParameters("delta-log must be >= 1");
    if (c.max_steps < 0 || c.max_steps > F->pi_precision)
        throw BadParameters("max-steps must lie in [0, " + std::to_string(F->pi_precision) + "]");
    return {F, make_phi(F, c.m, c.n)};
}

struct VerifyReport {
    std::vector<Record> records;
    std::map<std::string, std::size_t> verdict_counts;

    bool all_hard_checks_pass() const {
        auto it = verdict_counts.find("fail");
        return it == verdict_counts.end() || it->second == 0;
    }
};

namespace suites {

using SampleFn = std::function<CheckResult(RandomStream&, std::size_t)>;

// Runs `count` independent samples; sample i draws from substream (suite, i).
inline std::vector<Record> sampled(const std::string& suite, std::size_t count, const RandomStream& root,
                                   unsigned workers, const SampleFn& fn) {
    std::vector<Record> out(count);
    const RandomStream base = root.substream(suite);
    parallel_for(
        count,
        [&](std::size_t i) {
            RandomStream rng = base.substream(static_cast<std::uint64_t>(i));
            CheckResult r;
            try {
                r = fn(rng, i);
            } catch (const Error& err) {
                r.check_id = suite;
                r.observed = {{"error", err.name()}, {"message", err.what()}};
                r.verdict = Verdict::fail;
            }
            out[i] = to_record(suite, i, r);
        },
        workers);
    return out;
}

inline CheckResult make_result(std::string id, std::vector<std::pair<std::string, std::string>> inputs,
                               std::vector<std::pair<std::string, std::string>> observed, std::string expected,
                               bool ok) {
    CheckResult r;
    r.check_id = std::move(id);
    r.inputs = std::move(inputs);
    r.observed = std::move(observed);
    r.expected = std::move(expected);
    r.verdict = ok ? Verdict::pass : Verdict::fail;
    return r;
}

inline const char* yes(bool b) { return b ? "true" : "false"; }

inline Record header(const Setup& s, const RunConfig& c) {
    const Field& F = s.field;
    const Element p = Element::from_integer(F, static_cast<long>(F->p));
    Record r;
    r.suite = "header";
    r.inputs = {{"field", F->spec_string()},
                {"m", std::to_string(c.m)},
                {"n", std::to_string(c.n)},
                {"seed", std::to_string(c.seed)},
                {"samples", std::to_string(c.samples)}};
    r.observed = {{"d", std::to_string(F->d)},
                  {"e", std::to_string(F->e)},
                  {"f", std::to_string(F->f)},
                  {"unram_poly", F->unram_poly_string()},
                  {"eis_poly", "X^" + std::to_string(F->e) + "-" + std::to_string(F->p)},
                  {"v_pi(p)", std::to_string(p.valuation())},
                  {"pi_precision", std::to_string(F->pi_precision)},
                  {"map", s.phi.describe()}};
    if (!s.phi.verified_regime())
        r.observed.emplace_back("note", "n = 1: local scaling, decode and periodic checks are report-only");
    r.verdict = "info";
    r.regime_flag = s.phi.regime_flag();
    return r;
}

inline std::vector<Record> field_suites(const Setup& s, const RunConfig& c, const RandomStream& root) {
    const Field& F = s.field;
    const std::size_t S = static_cast<std::size_t>(c.samples);
    const int N = F->pi_precision;
    std::vector<Record> out;
    auto append = [&](std::vector<Record> rs) { out.insert(out.end(), rs.begin(), rs.end()); };

    // Teichmuller lifts: exhaustive over the residue field when small.
    const std::uint64_t q = F->residue_size();
    if (q <= 256) {
        append(sampled("teichmuller", q, root, c.workers,
                       [&](RandomStream&, std::size_t i) { return check_teichmuller(F, {i}); }));
    } else {
        append(sampled("teichmuller", S, root, c.workers,
                       [&](RandomStream& rng, std::size_t) { return check_teichmuller(F, random_residue(F, rng)); }));
    }

    append(sampled("teichmuller_multiplicative", S, root, c.workers, [&](RandomStream& rng, std::size_t) {
        const auto a = random_residue(F, rng), b = random_residue(F, rng);
        const bool ok = indistinguishable(teichmuller(F->residue.mul(a, b), F), teichmuller(a, F) * teichmuller(b, F));
        return make_result("teichmuller_multiplicative", {{"a", std::to_string(a.value)}, {"b", std::to_string(b.value)}},
                           {{"equal", yes(ok)}}, "T(ab) = T(a) T(b)", ok);
    }));

    append(sampled("digits_roundtrip", S, root, c.workers, [&](RandomStream& rng, std::size_t) {
        const Element x = random_integral(F, rng);
        const int k = rng.uniform_int(0, N);
        const Element back = from_digits(F, digits(x, k));
        const auto v = ValuationObs::of(back - x);
        const bool ok = v.v >= k;
        return make_result("digits_roundtrip", {{"x", to_literal(x)}, {"k", std::to_string(k)}},
                           {{"v_resummed_minus_x", v.str()}}, "v >= k", ok);
    }));

    append(sampled("ultrametric", S, root, c.workers, [&](RandomStream& rng, std::size_t) {
        const Element x = random_with_valuation(F, rng, rng.uniform_int(0, N / 4));
        const Element y = random_with_valuation(F, rng, rng.uniform_int(0, N / 4));
        const int vx = x.valuation(), vy = y.valuation();
        const auto vs = ValuationObs::of(x + y);
        const auto vm = ValuationObs::of(x * y);
        bool ok = certainly_geq(vs, std::min(vx, vy));
        if (vx != vy) ok = ok && vs.exact && vs.v == std::min(vx, vy);
        ok = ok && vm.exact && vm.v == vx + vy;
        return make_result("ultrametric", {{"x", to_literal(x)}, {"y", to_literal(y)}},
                           {{"v_x", std::to_string(vx)}, {"v_y", std::to_string(vy)}, {"v_sum", vs.str()},
                            {"v_product", vm.str()}},
                           "v(x+y) >= min, = min if v(x) != v(y); v(xy) = v(x)+v(y)", ok);
    }));

    append(sampled("spherical_ultrametric", S, root, c.workers, [&](RandomStream& rng, std::size_t) {
        auto pick = [&]() {
            return rng.below(3) == 0 ? random_outside_point(F, rng, 4) : affine_point(random_integral(F, rng));
        };
        const ProjectivePoint P = pick(), Q = pick(), R = pick();
        const auto pq = spherical_distance_bound(P, Q), qr = spherical_distance_bound(Q, R),
                   pr = spherical_distance_bound(P, R);
        // rho(P, R) <= max(rho(P, Q), rho(Q, R)) reads k_PR >= min(k_PQ, k_QR).
        const bool ok = pr.k >= std::min(pq.k, qr.k) && pq.k >= 0 && qr.k >= 0 && pr.k >= 0;
        auto fmt = [](RhoLog r) { return (r.resolved ? "" : ">=") + std::to_string(r.k); };
        return make_result("spherical_ultrametric",
                           {{"P", to_point_literal(P)}, {"Q", to_point_literal(Q)}, {"R", to_point_literal(R)}},
                           {{"k_PQ", fmt(pq)}, {"k_QR", fmt(qr)}, {"k_PR", fmt(pr)}},
                           "k_PR >= min(k_PQ, k_QR), all k >= 0", ok);
    }));
    return out;
}

inline std::vector<Record> map_suites(const Setup& s, const RunConfig& c, const RandomStream& root) {
    const Field& F = s.field;
    const PhiMap& phi = s.phi;
    const std::size_t S = static_cast<std::size_t>(c.samples);
    const int N = F->pi_precision;
    std::vector<Record> out;
    auto append = [&](std::vector<Record> rs) { out.insert(out.end(), rs.begin(), rs.end()); };

    append(sampled("frobenius_gap", S, root, c.workers,
                   [&](RandomStream& rng, std::size_t) { return check_frobenius_gap(phi, random_integral(F, rng)); }));

    append(sampled("frobenius_contraction", S, root, c.workers, [&](RandomStream& rng, std::size_t) {
        const Element x = random_integral(F, rng);
        const int k = rng.uniform_int(1, std::max(1, N - phi.m - 2));
        return check_frobenius_contraction(phi, x, random_at_distance(x, rng, k));
    }));

    append(sampled("quotient_bound", S, root, c.workers, [&](RandomStream& rng, std::size_t i) {
        const Element x = random_integral(F, rng);
        const int k = rng.uniform_int(0, N / 2);
        const Element y = random_at_distance(x, rng, k);
        const Element u = random_with_valuation(F, rng, rng.uniform_int(1, N / 2));
        // Alternate the strict (|u-v| < |x-y|) and boundary (|u-v| = |x-y|) cases.
        const int dist = std::max(1, (i % 2 == 0) ? k + 1 + rng.uniform_int(0, 3) : k);
        const Element v = random_at_distance(u, rng, dist);
        return check_quotient_bound(x, y, u, v);
    }));

    append(sampled("m1_bound", S, root, c.workers,
                   [&](RandomStream& rng, std::size_t) { return check_m1_bound(phi, random_integral(F, rng)); }));

    append(sampled("local_scaling", S, root, c.workers, [&](RandomStream& rng, std::size_t i) {
        const Element x = random_integral(F, rng);
        const int depth = 1 + static_cast<int>(i % static_cast<std::size_t>(N - 2));
        return check_local_scaling(phi, x, random_at_distance(x, rng, depth));
    }));

    append(sampled("integral_maps_in", S, root, c.workers, [&](RandomStream& rng, std::size_t) {
        return check_integral_maps_in(phi, random_integral(F, rng));
    }));

    append(sampled("outside_maps_in", S, root, c.workers, [&](RandomStream& rng, std::size_t i) {
        const ProjectivePoint P = i == 0 ? infinity_point(F) : random_outside_point(F, rng, N / 2);
        return check_outside_maps_in(phi, P);
    }));

    append(sampled("degree_consistency", S, root, c.workers, [&](RandomStream& rng, std::size_t) {
        return check_degree_consistency(phi, random_integral(F, rng));
    }));
    return out;
}

inline std::vector<Record> symbolic_suites(const Setup& s, const RunConfig& c, const RandomStream& root) {
    const Field& F = s.field;
    const PhiMap& phi = s.phi;
    const std::size_t S = static_cast<std::size_t>(c.samples);
    const int N = F->pi_precision;
    const std::uint64_t q = F->residue_size();
    const bool hard = phi.verified_regime();
    auto soften = [&](CheckResult r) {
        r.regime_flag = phi.regime_flag();
        if (!hard && r.verdict != Verdict::pass) r.verdict = Verdict::report;
        return r;
    };
    std::vector<Record> out;
    auto append = [&](std::vector<Record> rs) { out.insert(out.end(), rs.begin(), rs.end()); };

    const int k = std::min(20, N - 2);
    append(sampled("conjugacy", S, root, c.workers, [&](RandomStream& rng, std::size_t) {
        const Element z = random_integral(F, rng);
        const Word lhs = itinerary(phi, eval_affine(phi, z), k);
        const Word rhs = shift(itinerary(phi, z, k + 1));
        return make_result("conjugacy", {{"z", to_literal(z)}, {"k", std::to_string(k)}},
                           {{"itinerary_phi_z", to_string(lhs)}, {"shift_itinerary_z", to_string(rhs)}},
                           "itinerary(phi z, k) = shift(itinerary(z, k+1))", lhs == rhs);
    }));

    int depth = 0;
    for (std::uint64_t total = q; total <= 4096 && depth < std::min(8, N - 2); total *= q) ++depth;
    {
        CheckResult r;
        r.check_id = "bijectivity";
        r.inputs = {{"depth", std::to_string(depth)}};
        r.expected = std::to_string(q) + "^" + std::to_string(depth) + " disjoint balls of radius_log " +
                     std::to_string(depth) + ", roundtrip exact";
        try {
            const auto rep = exhaustive_bijectivity(phi, depth, c.workers);
            r.observed = {{"words", std::to_string(rep.words)},
                          {"decoded", std::to_string(rep.decoded)},
                          {"distinct_balls", std::to_string(rep.distinct_balls)},
                          {"roundtrips", std::to_string(rep.roundtrips)}};
            if (rep.failed_word) {
                r.observed.emplace_back("failed_word", to_string(*rep.failed_word));
                r.observed.emplace_back("failure", rep.failure);
            }
            r.verdict = rep.ok ? Verdict::pass : Verdict::fail;
        } catch (const Error& err) {
            r.observed = {{"error", err.name()}, {"message", err.what()}};
            r.verdict = Verdict::fail;
        }
        out.push_back(to_record("bijectivity", 0, soften(r)));
    }

    // Periodic points for every word of length <= the largest k with q^k <= 64.
    std::size_t index = 0;
    for (int len = 1; len <= (N - 2) / 2; ++len) {
        std::uint64_t words = 1;
        for (int i = 0; i < len; ++i) words *= q;
        if (words > 64) break;
        std::vector<CheckResult> results(words);
        std::vector<std::vector<std::uint64_t>> keys(words);
        parallel_for(
            words,
            [&](std::size_t w_idx) {
                const Word w = word_from_index(w_idx, q, len);
                try {
                    const Element z = periodic_point(phi, w);
                    results[w_idx] = check_periodic_point(phi, w, z);
                    for (const auto& d : digits(z, N - 1)) keys[w_idx].push_back(d.value);
                } catch (const Error& err) {
                    results[w_idx].check_id = "periodic_point";
                    results[w_idx].inputs = {{"word", to_string(w)}};
                    results[w_idx].observed = {{"error", err.name()}, {"message", err.what()}};
                    results[w_idx].verdict = Verdict::fail;
                }
            },
            c.workers);
        for (auto& r : results) out.push_back(to_record("periodic_point", index++, soften(r)));
        std::sort(keys.begin(), keys.end());
        const auto distinct = static_cast<std::uint64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
        out.push_back(to_record(
            "periodic_count", static_cast<std::size_t>(len),
            soften(make_result("periodic_count", {{"period", std::to_string(len)}},
                               {{"distinct_points", std::to_string(distinct)}},
                               std::to_string(words) + " distinct points of period dividing " + std::to_string(len),
                               distinct == words))));
    }
    return out;
}

inline CheckResult witness_check(const PhiMap& phi, const ProjectivePoint& P, int delta, int max_steps, int attempts,
                                 std::uint64_t seed) {
    const bool integral = P.is_integral();
    CheckResult r;
    r.check_id = "witness";
    r.inputs = {{"P", to_point_literal(P)}, {"delta_log", std::to_string(delta)}};
    r.expected = "rho(phi^n P, phi^n Q) >= |pi| for some Q with rho(P, Q) = |pi|^delta, n <= " +
                 std::to_string(max_steps);
    const auto w = find_expansion_witness(phi, P, delta, max_steps, attempts, seed);
    r.observed = {{"found", yes(w.found)}, {"attempts", std::to_string(w.attempts_used)}};
    if (w.found) {
        r.observed.emplace_back("steps", std::to_string(w.steps));
        r.observed.emplace_back("final_rho_log", std::to_string(w.final_distance.k));
        r.observed.emplace_back("Q", to_point_literal(w.partner));
    } else {
        if (w.best_distance_log) r.observed.emplace_back("best_rho_log", std::to_string(*w.best_distance_log));
        r.observed.emplace_back("failure", w.failure);
    }
    if (w.found)
        r.verdict = Verdict::pass;
    else
        r.verdict = integral ? Verdict::fail : Verdict::inconclusive;
    return r;
}

inline std::vector<Record> witness_suite(const Setup& s, const RunConfig& c, const RandomStream& root) {
    const Field& F = s.field;
    const int N = F->pi_precision;
    const int max_steps = c.max_steps ? c.max_steps : N;
    const int delta = std::min(c.delta_log, N - 2);
    return sampled("witness", static_cast<std::size_t>(c.samples), root, c.workers,
                   [&](RandomStream& rng, std::size_t i) {
                       ProjectivePoint P;
                       if (i == 0)
                           P = infinity_point(F);
                       else if (i % 4 == 3)
                           P = random_outside_point(F, rng, 3);
                       else
                           P = affine_point(random_integral(F, rng));
                       auto r = witness_check(s.phi, P, delta, max_steps, c.attempts, rng.next());
                       r.regime_flag = s.phi.regime_flag();
                       if (!s.phi.verified_regime() && r.verdict == Verdict::fail) r.verdict = Verdict::report;
                       return r;
                   });
}

} // namespace suites

/// Runs every verification suite for the configuration.  Output is a pure
/// function of the configuration (worker count included or not).
inline VerifyReport run_verify(const RunConfig& c) {
    const Setup s = make_setup(c);
    const RandomStream root(c.seed);
    VerifyReport rep;
    rep.records.push_back(suites::header(s, c));
    for (auto&& part : {suites::field_suites(s, c, root), suites::map_suites(s, c, root),
                        suites::symbolic_suites(s, c, root), suites::witness_suite(s, c, root)})
        rep.records.insert(rep.records.end(), part.begin(), part.end());
    for (const auto& r : rep.records)
        if (r.suite != "header") ++rep.verdict_counts[r.verdict];
    Record summary;
    summary.suite = "summary";
    for (const auto& [verdict, count] : rep.verdict_counts) summary.observed.emplace_back(verdict, std::to_string(count));
    summary.expected = "no fail verdicts";
    summary.verdict = rep.all_hard_checks_pass() ? "pass" : "fail";
    summary.regime_flag = s.phi.regime_flag();
    rep.records.push_back(summary);
    return rep;
}

} // namespace padyn
