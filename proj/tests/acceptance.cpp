// Acceptance driver: one PASS/FAIL line per criterion.
//
//   acceptance [--only N] [--cli PATH] [--seed S]

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "padyn/padyn.hpp"

namespace {

using namespace padyn;
using Clock = std::chrono::steady_clock;

struct FieldCase {
    unsigned long p;
    int e;
    int f;
};

const std::vector<FieldCase> kFields = {{2, 1, 1}, {3, 1, 1}, {2, 2, 1}, {2, 1, 2}, {5, 1, 1}};
constexpr int kPrecision = 32;

struct Outcome {
    bool pass = true;
    std::string detail;
    double limit_seconds = 0;  // per unit of work
    double worst_seconds = 0;
};

struct Tally {
    std::map<std::string, int> verdicts;
    std::string first_failure;

    void add(const CheckResult& r) {
        ++verdicts[to_string(r.verdict)];
        if (r.verdict == Verdict::fail && first_failure.empty()) {
            first_failure = r.check_id;
            for (const auto& [k, v] : r.inputs) first_failure += " " + k + "=" + v;
            for (const auto& [k, v] : r.observed) first_failure += " " + k + "=" + v;
        }
    }
    int fails() const { return verdicts.count("fail") ? verdicts.at("fail") : 0; }
    std::string str() const {
        std::string s;
        for (const auto& [k, v] : verdicts) s += (s.empty() ? "" : " ") + k + "=" + std::to_string(v);
        return s;
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs `count` samples per field, each on its own substream, and tallies
// verdicts; exceptions count as failures.
template <class Fn>
Outcome per_field(const RandomStream& root, const std::string& label, int count, double limit, Fn&& fn,
                  const std::vector<FieldCase>& fields = kFields) {
    Outcome out;
    out.limit_seconds = limit;
    for (std::size_t fi = 0; fi < fields.size(); ++fi) {
        const auto [p, e, f] = fields[fi];
        const Field F = make_field(p, e, f, kPrecision);
        const PhiMap phi = make_phi(F, 3, 2);
        const RandomStream base = root.substream(label).substream(static_cast<std::uint64_t>(fi));
        const auto t0 = Clock::now();
        std::vector<CheckResult> results(static_cast<std::size_t>(count));
        parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
            RandomStream rng = base.substream(static_cast<std::uint64_t>(i));
            try {
                results[i] = fn(F, phi, rng, static_cast<int>(i));
            } catch (const Error& err) {
                results[i].check_id = label;
                results[i].observed = {{"error", err.what()}};
                results[i].verdict = Verdict::fail;
            }
        });
        const double dt = seconds_since(t0);
        out.worst_seconds = std::max(out.worst_seconds, dt);
        Tally t;
        for (const auto& r : results) t.add(r);
        if (t.fails() > 0) out.pass = false;
        out.detail += (out.detail.empty() ? "" : "; ") + F->spec_string() + ": " + t.str();
        if (!t.first_failure.empty()) out.detail += " first_fail{" + t.first_failure + "}";
    }
    return out;
}

Outcome criterion_1(const RandomStream& root) {
    return per_field(root, "c1", 500, 5.0, [](const Field& F, const PhiMap& phi, RandomStream& rng, int) {
        return check_frobenius_gap(phi, random_integral(F, rng));
    });
}

Outcome criterion_2(const RandomStream& root) {
    return per_field(root, "c2", 500, 5.0, [](const Field& F, const PhiMap& phi, RandomStream& rng, int) {
        const Element x = random_integral(F, rng);
        const int k = rng.uniform_int(1, F->pi_precision - phi.m - 2);
        return check_frobenius_contraction(phi, x, random_at_distance(x, rng, k));
    });
}

Outcome criterion_3(const RandomStream& root) {
    return per_field(root, "c3", 500, 5.0, [](const Field& F, const PhiMap&, RandomStream& rng, int i) {
        const int N = F->pi_precision;
        const Element x = random_integral(F, rng);
        const int k = rng.uniform_int(0, N / 2);
        const Element y = random_at_distance(x, rng, k);
        const Element u = random_with_valuation(F, rng, rng.uniform_int(1, N / 2));
        // Admissible: |u - v| <= |x - y|, half strict and half on the boundary.
        const int dist = std::max(1, i % 2 == 0 ? k + rng.uniform_int(1, 4) : k);
        const Element v = random_at_distance(u, rng, dist);
        auto r = check_quotient_bound(x, y, u, v);
        // Every generated tuple meets the hypothesis; a vacuous verdict would mean it did not.
        if (r.verdict == Verdict::vacuous) r.verdict = Verdict::fail;
        return r;
    });
}

Outcome criterion_4(const RandomStream& root) {
    Outcome out;
    out.limit_seconds = 10.0;
    for (std::size_t fi = 0; fi < kFields.size(); ++fi) {
        const auto [p, e, f] = kFields[fi];
        const Field F = make_field(p, e, f, kPrecision);
        const PhiMap phi = make_phi(F, 3, 2);
        const int depths = F->pi_precision - 2;
        const int pairs = 20;
        const RandomStream base = root.substream("c4").substream(static_cast<std::uint64_t>(fi));
        const auto t0 = Clock::now();
        std::vector<CheckResult> results(static_cast<std::size_t>(depths * pairs));
        parallel_for(results.size(), [&](std::size_t i) {
            RandomStream rng = base.substream(static_cast<std::uint64_t>(i));
            const int depth = 1 + static_cast<int>(i) / pairs;
            const Element x = random_integral(F, rng);
            try {
                results[i] = check_local_scaling(phi, x, random_at_distance(x, rng, depth));
            } catch (const Error& err) {
                results[i].check_id = "local_scaling";
                results[i].observed = {{"error", err.what()}};
                results[i].verdict = Verdict::fail;
            }
        });
        out.worst_seconds = std::max(out.worst_seconds, seconds_since(t0));
        Tally t;
        for (const auto& r : results) t.add(r);
        if (t.fails() > 0 || t.verdicts["pass"] != depths * pairs) out.pass = false;
        out.detail += (out.detail.empty() ? "" : "; ") + F->spec_string() + " depths 1.." + std::to_string(depths) +
                      ": " + t.str();
        if (!t.first_failure.empty()) out.detail += " first_fail{" + t.first_failure + "}";
    }
    return out;
}

Outcome criterion_5(const RandomStream& root) {
    Outcome inside = per_field(root, "c5in", 500, 10.0, [](const Field& F, const PhiMap& phi, RandomStream& rng, int) {
        return check_integral_maps_in(phi, random_integral(F, rng));
    });
    Outcome outside = per_field(root, "c5out", 500, 10.0, [](const Field& F, const PhiMap& phi, RandomStream& rng,
                                                            int i) {
        const ProjectivePoint P = i == 0 ? infinity_point(F) : random_outside_point(F, rng, F->pi_precision / 2);
        return check_outside_maps_in(phi, P);
    });
    Outcome out;
    out.limit_seconds = 10.0;
    out.pass = inside.pass && outside.pass;
    out.worst_seconds = inside.worst_seconds + outside.worst_seconds;
    out.detail = "inside {" + inside.detail + "} outside {" + outside.detail + "}";
    return out;
}

Outcome criterion_6(const RandomStream& root) {
    Outcome out;
    out.limit_seconds = 30.0;
    const Field F = make_field(2, 1, 1, kPrecision);
    const PhiMap phi = make_phi(F, 3, 2);
    const auto t0 = Clock::now();
    const auto rep = exhaustive_bijectivity(phi, 8);
    const bool ball_radius_ok = rep.depth == 8;
    const RandomStream base = root.substream("c6");
    std::vector<char> ok(500, 0);
    parallel_for(ok.size(), [&](std::size_t i) {
        RandomStream rng = base.substream(static_cast<std::uint64_t>(i));
        const Element z = random_integral(F, rng);
        ok[i] = itinerary(phi, eval_affine(phi, z), 20) == shift(itinerary(phi, z, 21));
    });
    out.worst_seconds = seconds_since(t0);
    int shift_ok = 0;
    for (char c : ok) shift_ok += c;
    out.pass = rep.ok && rep.distinct_balls == 256 && rep.roundtrips == 256 && ball_radius_ok && shift_ok == 500;
    out.detail = "depth 8: words=" + std::to_string(rep.words) + " distinct_balls=" + std::to_string(rep.distinct_balls) +
                 " roundtrips=" + std::to_string(rep.roundtrips) + (rep.failure.empty() ? "" : " " + rep.failure) +
                 "; shift identity k=20: " + std::to_string(shift_ok) + "/500";
    return out;
}

Outcome criterion_7(const RandomStream&) {
    Outcome out;
    out.limit_seconds = 30.0;
    const Field F = make_field(2, 1, 1, kPrecision);
    const PhiMap phi = make_phi(F, 3, 2);
    const int N = F->pi_precision;
    const auto t0 = Clock::now();
    for (int k = 1; k <= 4; ++k) {
        const std::uint64_t words = 1u << k;
        std::vector<std::vector<std::uint64_t>> keys(words);
        std::vector<char> ok(words, 0);
        parallel_for(words, [&](std::size_t idx) {
            const Word w = word_from_index(idx, 2, k);
            const Element z = periodic_point(phi, w);
            Element it = z;
            for (int s = 0; s < k; ++s) it = eval_affine(phi, it);
            const auto fixed = ValuationObs::of(it - z);
            ok[idx] = check_periodic_point(phi, w, z).verdict == Verdict::pass && fixed.v >= std::max(20, N - k - 1);
            for (const auto& d : digits(z, 20)) keys[idx].push_back(d.value);
        });
        std::sort(keys.begin(), keys.end());
        const auto distinct = static_cast<std::uint64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
        int verified = 0;
        for (char c : ok) verified += c;
        if (distinct != words || verified != static_cast<int>(words)) out.pass = false;
        out.detail += (out.detail.empty() ? "" : "; ") + std::string("k=") + std::to_string(k) +
                      ": distinct=" + std::to_string(distinct) + "/" + std::to_string(words) +
                      " verified=" + std::to_string(verified);
    }
    out.worst_seconds = seconds_since(t0);
    return out;
}

Outcome criterion_8(const RandomStream& root) {
    Outcome out;
    out.limit_seconds = 30.0;
    const Field F = make_field(2, 1, 1, kPrecision);
    const PhiMap phi = make_phi(F, 3, 2);
    constexpr int kDelta = 10;
    constexpr int kBudget = kDelta + 3;
    const RandomStream base = root.substream("c8");
    // 60 points of O_K, 39 of K \ O_K, and infinity.
    std::vector<ProjectivePoint> points;
    for (int i = 0; i < 100; ++i) {
        RandomStream rng = base.substream(static_cast<std::uint64_t>(i));
        if (i < 60)
            points.push_back(affine_point(random_integral(F, rng)));
        else if (i < 99)
            points.push_back(normalize(random_unit(F, rng), Element::pi_power(F, rng.uniform_int(1, 4))));
        else
            points.push_back(infinity_point(F));
    }
    const auto t0 = Clock::now();
    std::vector<WitnessResult> results(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        results[i] = find_expansion_witness(phi, points[i], kDelta, kBudget, 4, base.substream(i).next());
    });
    out.worst_seconds = seconds_since(t0);
    int found[3] = {0, 0, 0};
    std::string first_miss;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const int kind = i < 60 ? 0 : (i < 99 ? 1 : 2);
        if (results[i].found)
            ++found[kind];
        else if (first_miss.empty())
            first_miss = to_point_literal(points[i]) + ": " + results[i].failure;
    }
    out.pass = found[0] + found[1] + found[2] == 100;
    out.detail = "witness within " + std::to_string(kBudget) + " steps: integral " + std::to_string(found[0]) +
                 "/60, outside " + std::to_string(found[1]) + "/39, infinity " + std::to_string(found[2]) + "/1";
    if (!first_miss.empty()) out.detail += "; first miss " + first_miss;
    return out;
}

std::string run_capture(const std::string& cmd, int& status) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        status = -1;
        return out;
    }
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    status = pclose(pipe);
    return out;
}

Outcome criterion_9(const std::string& cli) {
    Outcome out;
    out.limit_seconds = 0;
    const auto t0 = Clock::now();
    if (cli.empty()) {
        out.pass = false;
        out.detail = "no --cli path given";
        return out;
    }
    const std::string cmd = "'" + cli + "' verify --seed 7 --samples 500";
    int s1 = 0, s2 = 0;
    const std::string a = run_capture(cmd + " --workers 1", s1);
    const std::string b = run_capture(cmd, s2);
    out.worst_seconds = seconds_since(t0);
    out.pass = s1 == 0 && s2 == 0 && !a.empty() && a == b;
    out.detail = "two runs, " + std::to_string(a.size()) + " bytes, identical=" + (a == b ? "yes" : "no") +
                 ", exit " + std::to_string(s1) + "/" + std::to_string(s2);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    std::string cli;
    std::uint64_t seed = 20240607;
    app.add_option("--only", only, "run a single criterion (1-9)")->check(CLI::Range(0, 9));
    app.add_option("--cli", cli, "path to the padyn executable");
    app.add_option("--seed", seed, "root seed");
    CLI11_PARSE(app, argc, argv);

    const RandomStream root(seed);
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"v(M_m(x) - M_n(x)) >= 2 on O_K", [&] { return criterion_1(root); }},
        {"strict Frobenius chain and k + v(x-y) bound", [&] { return criterion_2(root); }},
        {"quotient bound and equality", [&] { return criterion_3(root); }},
        {"local scaling v(phi x - phi y) = v(x - y) - 1", [&] { return criterion_4(root); }},
        {"mapping properties", [&] { return criterion_5(root); }},
        {"conjugacy and bijectivity in Q_2", [&] { return criterion_6(root); }},
        {"periodic points in Q_2", [&] { return criterion_7(root); }},
        {"expansion witness for every sampled point", [&] { return criterion_8(root); }},
        {"verify determinism", [&] { return criterion_9(cli); }},
    };

    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (only && only != id) continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& err) {
            o.pass = false;
            o.detail = std::string("exception: ") + err.what();
        }
        const bool in_time = o.limit_seconds <= 0 || o.worst_seconds < o.limit_seconds;
        const bool pass = o.pass && in_time;
        all = all && pass;
        std::ostringstream line;
        line << "criterion " << id << " " << (pass ? "PASS" : "FAIL") << ": " << criteria[i].first << " | "
             << o.detail << " | " << std::fixed;
        line.precision(2);
        line << o.worst_seconds << " s";
        if (o.limit_seconds > 0) line << " (limit " << o.limit_seconds << " s" << (in_time ? "" : ", exceeded") << ")";
        std::cout << line.str() << std::endl;
    }
    return all ? 0 : 1;
}
