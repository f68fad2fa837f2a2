// padyn: command-line front end for the p-adic dynamics library.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "padyn/padyn.hpp"

namespace {

using namespace padyn;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Options {
    RunConfig run;
    std::string format;
    std::string z = "0";
    std::string P = "0";
    std::string Q = "0";
    std::string word;
    int depth = 8;
};

// Errors raised while building the field or map, or parsing literals, are
// usage errors; everything later is an operation error.
struct UsageError {
    std::string message;
};

Setup setup_or_usage(const RunConfig& c) {
    try {
        return make_setup(c);
    } catch (const Error& e) {
        throw UsageError{e.what()};
    }
}

template <class Fn>
auto parse_or_usage(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw UsageError{e.what()};
    }
}

std::string rho_text(const Field& F, RhoLog r) {
    std::string s = r.k == 0 ? "p^(0) = 1" : "p^(-" + std::to_string(r.k) + "/" + std::to_string(F->e) + ")";
    return r.resolved ? s : "<= " + s + " (indistinguishable at precision)";
}

Record info_record(std::string suite, std::size_t index, std::vector<std::pair<std::string, std::string>> inputs,
                   std::vector<std::pair<std::string, std::string>> observed, const PhiMap& phi,
                   std::string verdict = "info") {
    Record r;
    r.suite = std::move(suite);
    r.index = index;
    r.inputs = std::move(inputs);
    r.observed = std::move(observed);
    r.verdict = std::move(verdict);
    r.regime_flag = phi.regime_flag();
    return r;
}

// Prints `text` in text mode, the records otherwise.
void emit(const Options& o, const std::string& text, const std::vector<Record>& records) {
    const ReportFormat fmt = parse_format(o.format.empty() ? "text" : o.format);
    if (fmt == ReportFormat::text)
        std::cout << text << "\n";
    else
        write_records(std::cout, records, fmt);
}

int cmd_verify(const Options& o) {
    RunConfig c = o.run;
    c.format = parse_or_usage([&] { return parse_format(o.format.empty() ? "json" : o.format); });
    setup_or_usage(c);
    const VerifyReport rep = run_verify(c);
    write_records(std::cout, rep.records, c.format);
    return rep.all_hard_checks_pass() ? 0 : kExitFail;
}

int cmd_orbit(const Options& o) {
    const Setup s = setup_or_usage(o.run);
    const ProjectivePoint P = parse_or_usage([&] { return parse_point(s.field, o.P); });
    const Orbit orb = orbit(s.phi, P, o.depth);
    std::string text;
    std::vector<Record> recs;
    for (std::size_t i = 0; i < orb.points.size(); ++i) {
        text += (i ? "\n" : "") + std::to_string(i) + ": " + to_string(orb.points[i]);
        recs.push_back(info_record("orbit", i, {{"P", o.P}, {"step", std::to_string(i)}},
                                   {{"point", to_string(orb.points[i])}}, s.phi));
    }
    if (orb.truncated_at) {
        text += "\ntruncated at step " + std::to_string(*orb.truncated_at) + ": image undetermined at precision";
        recs.push_back(info_record("orbit", orb.points.size(), {{"P", o.P}},
                                   {{"truncated_at", std::to_string(*orb.truncated_at)}}, s.phi));
    }
    emit(o, text, recs);
    return 0;
}

int cmd_itinerary(const Options& o) {
    const Setup s = setup_or_usage(o.run);
    const Element z = parse_or_usage([&] { return parse_element(s.field, o.z); });
    const Word w = itinerary(s.phi, z, o.depth);
    emit(o, to_string(w),
         {info_record("itinerary", 0, {{"z", o.z}, {"depth", std::to_string(o.depth)}}, {{"word", to_string(w)}},
                      s.phi)});
    return 0;
}

int cmd_decode(const Options& o) {
    const Setup s = setup_or_usage(o.run);
    const Word w = parse_or_usage([&] { return parse_word(s.field, o.word); });
    const CodedBall ball = decode(s.phi, w);
    const Word back = itinerary(s.phi, ball.center, static_cast<int>(w.size()));
    emit(o, to_string(ball),
         {info_record("decode", 0, {{"word", to_string(w)}},
                      {{"center", to_literal(ball.center)},
                       {"radius_log", std::to_string(ball.radius_log)},
                       {"center_itinerary", to_string(back)}},
                      s.phi)});
    return 0;
}

int cmd_periodic(const Options& o) {
    const Setup s = setup_or_usage(o.run);
    const Word w = parse_or_usage([&] { return parse_word(s.field, o.word); });
    const Element z = periodic_point(s.phi, w);
    CheckResult r = check_periodic_point(s.phi, w, z);
    std::vector<Record> recs{to_record("periodic", 0, r)};
    std::string text = to_literal(z);
    if (r.verdict != Verdict::pass) text += "\n" + to_text(recs[0]);
    emit(o, text, recs);
    return r.verdict == Verdict::fail ? kExitFail : 0;
}

int cmd_witness(const Options& o) {
    const Setup s = setup_or_usage(o.run);
    const ProjectivePoint P = parse_or_usage([&] { return parse_point(s.field, o.P); });
    const int max_steps = o.run.max_steps ? o.run.max_steps : s.field->pi_precision;
    const WitnessResult w =
        find_expansion_witness(s.phi, P, o.run.delta_log, max_steps, o.run.attempts, o.run.seed);
    std::vector<std::pair<std::string, std::string>> obs{{"found", w.found ? "true" : "false"},
                                                         {"attempts", std::to_string(w.attempts_used)}};
    std::string text;
    if (w.found) {
        obs.emplace_back("steps", std::to_string(w.steps));
        obs.emplace_back("Q", to_point_literal(w.partner));
        obs.emplace_back("final_rho_log", std::to_string(w.final_distance.k));
        text = "witness Q = " + to_point_literal(w.partner) + " separates after n = " + std::to_string(w.steps) +
               " steps, rho = " + rho_text(s.field, w.final_distance);
    } else {
        if (w.best_distance_log) obs.emplace_back("best_rho_log", std::to_string(*w.best_distance_log));
        obs.emplace_back("failure", w.failure);
        text = "no witness within " + std::to_string(max_steps) + " steps: " + w.failure;
    }
    emit(o, text,
         {info_record("witness", 0,
                      {{"P", to_point_literal(P)},
                       {"delta_log", std::to_string(o.run.delta_log)},
                       {"max_steps", std::to_string(max_steps)}},
                      obs, s.phi, w.found ? "pass" : "fail")});
    return w.found ? 0 : kExitFail;
}

int cmd_dist(const Options& o) {
    const Setup s = setup_or_usage(o.run);
    const auto [P, Q] = parse_or_usage(
        [&] { return std::pair{parse_point(s.field, o.P), parse_point(s.field, o.Q)}; });
    const RhoLog r = spherical_distance_bound(P, Q);
    emit(o, rho_text(s.field, r),
         {info_record("dist", 0, {{"P", o.P}, {"Q", o.Q}},
                      {{"k", std::to_string(r.k)}, {"e", std::to_string(s.field->e)},
                       {"resolved", r.resolved ? "true" : "false"}},
                      s.phi)});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact p-adic dynamics of phi(z) = (z^q - z) / (pi + z^{q^m} - z^{q^n})"};
    app.require_subcommand(1);
    Options o;
    o.run.format = ReportFormat::json;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--p", o.run.p, "residue characteristic")->capture_default_str();
        sub->add_option("--e", o.run.e, "ramification index")->capture_default_str();
        sub->add_option("--f", o.run.f, "residue degree")->capture_default_str();
        sub->add_option("--m", o.run.m, "exponent m > n")->capture_default_str();
        sub->add_option("--n", o.run.n, "exponent n >= 1")->capture_default_str();
        sub->add_option("--precision", o.run.precision, "p-adic precision M (pi-adic N = e*M)")
            ->capture_default_str();
        sub->add_option("--seed", o.run.seed, "root seed")->capture_default_str();
        sub->add_option("--samples", o.run.samples, "random inputs per suite")->capture_default_str();
        sub->add_option("--format", o.format, "text, json or csv")
            ->check(CLI::IsMember({"text", "json", "csv"}));
        sub->add_option("--max-steps", o.run.max_steps, "witness step budget (0: N)")->capture_default_str();
        sub->add_option("--attempts", o.run.attempts, "witness directions tried")->capture_default_str();
        sub->add_option("--workers", o.run.workers, "worker threads (0: all cores)");
    };

    auto* verify = app.add_subcommand("verify", "run every verification suite");
    add_common(verify);
    verify->add_option("--delta-log", o.run.delta_log, "witness ball radius exponent")->capture_default_str();

    auto* orbit_cmd = app.add_subcommand("orbit", "print P, phi(P), ...");
    add_common(orbit_cmd);
    orbit_cmd->add_option("--P", o.P, "point literal or inf")->required();
    orbit_cmd->add_option("--depth", o.depth, "number of steps")->capture_default_str();

    auto* itin = app.add_subcommand("itinerary", "residues of z, phi(z), ...");
    add_common(itin);
    itin->add_option("--z", o.z, "element of O_K")->required();
    itin->add_option("--depth", o.depth, "word length")->capture_default_str();

    auto* dec = app.add_subcommand("decode", "ball of points with a given itinerary prefix");
    add_common(dec);
    dec->add_option("--word", o.word, "comma-separated symbols")->required();

    auto* per = app.add_subcommand("periodic", "periodic point with itinerary w w w ...");
    add_common(per);
    per->add_option("--word", o.word, "comma-separated symbols")->required();

    auto* wit = app.add_subcommand("witness", "search for an orbit separating from P");
    add_common(wit);
    wit->add_option("--P", o.P, "point literal or inf")->required();
    wit->add_option("--delta-log", o.run.delta_log, "initial distance p^(-delta/e)")->capture_default_str();

    auto* dist = app.add_subcommand("dist", "spherical distance");
    add_common(dist);
    dist->add_option("--P", o.P, "point literal or inf")->required();
    dist->add_option("--Q", o.Q, "point literal or inf")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (verify->parsed()) return cmd_verify(o);
        if (orbit_cmd->parsed()) return cmd_orbit(o);
        if (itin->parsed()) return cmd_itinerary(o);
        if (dec->parsed()) return cmd_decode(o);
        if (per->parsed()) return cmd_periodic(o);
        if (wit->parsed()) return cmd_witness(o);
        if (dist->parsed()) return cmd_dist(o);
    } catch (const UsageError& e) {
        std::cerr << e.message << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}
