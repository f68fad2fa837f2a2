#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "checks.hpp"
#include "parallel.hpp"
#include "phi.hpp"

namespace padyn {

/// A finite word over F_{p^f}: a prefix of a point of the one-sided full shift.
struct Word {
    std::vector<ResidueElement> symbols;

    std::size_t size() const { return symbols.size(); }
    bool empty() const { return symbols.empty(); }
    const ResidueElement& operator[](std::size_t i) const { return symbols[i]; }

    friend bool operator==(const Word&, const Word&) = default;
};

/// `1,0,3`
inline std::string to_string(const Word& w) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i].value;
    return os.str();
}

inline Word parse_word(const Field& F, const std::string& text) {
    Word w;
    const std::string s = detail::trim(text);
    if (s.empty()) return w;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) w.symbols.push_back({detail::parse_symbol(tok, F->residue_size())});
    return w;
}

/// The ball center + pi^radius_log O_K.
struct CodedBall {
    Element center;
    int radius_log = 0;
};

inline std::string to_string(const CodedBall& b) {
    return "{center: " + to_literal(b.center) + ", radius_log: " + std::to_string(b.radius_log) + "}";
}

/// sigma: drops the first symbol.
inline Word shift(const Word& w) {
    if (w.empty()) throw EmptyWord("shift of the empty word");
    return Word{{w.symbols.begin() + 1, w.symbols.end()}};
}

/// H(z) truncated to `depth` symbols: the residues of z, phi(z), ...
inline Word itinerary(const PhiMap& phi, const Element& z, int depth) {
    if (!z.is_integral()) throw NotIntegral("itinerary needs z in O_K");
    if (depth > phi.field->pi_precision)
        throw PrecisionExhausted("itinerary depth exceeds pi-adic precision " + std::to_string(phi.field->pi_precision));
    Word w;
    Element cur = z;
    for (int i = 0; i < depth; ++i) {
        try {
            if (i > 0) cur = eval_affine(phi, cur);
            w.symbols.push_back(cur.reduction());
        } catch (const PrecisionExhausted& err) {
            throw PrecisionExhausted("itinerary step " + std::to_string(i) + ": " + err.what());
        } catch (const IndeterminatePoint& err) {
            throw IndeterminatePoint("itinerary step " + std::to_string(i) + ": " + err.what());
        }
    }
    return w;
}

namespace detail {

inline void check_symbols(const Field& F, const Word& w) {
    for (const auto& s : w.symbols)
        if (s.value >= F->residue_size())
            throw PreconditionViolated("symbol " + std::to_string(s.value) + " outside F_{p^f}");
}

inline Element iterate_affine(const PhiMap& phi, Element z, int times) {
    for (int i = 0; i < times; ++i) z = eval_affine(phi, z);
    return z;
}

// Greedy digit construction: the k-th pi-adic digit of the center is the
// unique Teichmuller digit t with reduction(phi^k(center + t pi^k)) = w_k.
// Valid up to |w| = N, since phi^k loses k digits of precision.
inline CodedBall decode_prefix(const PhiMap& phi, const Word& w) {
    const Field& F = phi.field;
    check_symbols(F, w);
    if (static_cast<int>(w.size()) > F->pi_precision)
        throw PrecisionExhausted("word longer than pi-adic precision");
    Element center = Element::zero(F);
    const std::uint64_t q = F->residue_size();
    for (int k = 0; k < static_cast<int>(w.size()); ++k) {
        std::optional<Element> match;
        int hits = 0;
        for (std::uint64_t t = 0; t < q; ++t) {
            const Element cand = center + teichmuller({t}, F).shifted(k);
            if (iterate_affine(phi, cand, k).reduction() == w[static_cast<std::size_t>(k)]) {
                if (++hits == 1) match = cand;
            }
        }
        if (hits == 0)
            throw DecodeEmpty("no digit at level " + std::to_string(k) + " realizes symbol " +
                              std::to_string(w[static_cast<std::size_t>(k)].value));
        if (hits > 1)
            throw DecodeAmbiguous(std::to_string(hits) + " digits at level " + std::to_string(k) + " realize symbol " +
                                  std::to_string(w[static_cast<std::size_t>(k)].value));
        center = *match;
    }
    return {center, static_cast<int>(w.size())};
}

} // namespace detail

/// The cylinder of w pulled back by H: {z in O_K : itinerary(z, |w|) = w},
/// returned as center + pi^{|w|} O_K.
inline CodedBall decode(const PhiMap& phi, const Word& w) {
    if (static_cast<int>(w.size()) > phi.field->pi_precision - 2)
        throw PrecisionExhausted("decode needs |w| <= N - 2 = " + std::to_string(phi.field->pi_precision - 2));
    return detail::decode_prefix(phi, w);
}

struct BijectivityReport {
    int depth = 0;
    std::uint64_t words = 0;
    std::uint64_t decoded = 0;
    std::uint64_t distinct_balls = 0;
    std::uint64_t roundtrips = 0;
    bool ok = false;
    std::optional<Word> failed_word;
    std::string failure;
};

inline Word word_from_index(std::uint64_t index, std::uint64_t q, int depth) {
    Word w;
    w.symbols.resize(static_cast<std::size_t>(depth));
    for (int i = depth - 1; i >= 0; --i) {
        w.symbols[static_cast<std::size_t>(i)] = {index % q};
        index /= q;
    }
    return w;
}

/// Decodes every word of length `depth`; checks the balls are pairwise
/// disjoint, number (p^f)^depth (so they tile O_K), and that each center's
/// itinerary reproduces its word.
inline BijectivityReport exhaustive_bijectivity(const PhiMap& phi, int depth, unsigned workers = 0) {
    const Field& F = phi.field;
    const std::uint64_t q = F->residue_size();
    std::uint64_t total = 1;
    for (int i = 0; i < depth; ++i) {
        total *= q;
        if (total > 100000) throw PreconditionViolated("(p^f)^depth exceeds 10^5");
    }
    BijectivityReport rep;
    rep.depth = depth;
    rep.words = total;

    struct Slot {
        std::vector<std::uint64_t> digits;
        bool roundtrip = false;
        std::string error;
    };
    std::vector<Slot> slots(total);
    parallel_for(
        total,
        [&](std::size_t idx) {
            const Word w = word_from_index(idx, q, depth);
            Slot& s = slots[idx];
            try {
                const CodedBall ball = decode(phi, w);
                for (const auto& d : digits(ball.center, depth)) s.digits.push_back(d.value);
                s.roundtrip = itinerary(phi, ball.center, depth) == w;
            } catch (const Error& err) {
                s.error = err.what();
            }
        },
        workers);

    std::set<std::vector<std::uint64_t>> centers;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        const Slot& s = slots[idx];
        if (!s.error.empty()) {
            rep.failed_word = word_from_index(idx, q, depth);
            rep.failure = s.error;
            return rep;
        }
        ++rep.decoded;
        if (s.roundtrip) ++rep.roundtrips;
        else if (!rep.failed_word) {
            rep.failed_word = word_from_index(idx, q, depth);
            rep.failure = "itinerary of decoded center differs from word";
        }
        centers.insert(s.digits);
    }
    rep.distinct_balls = centers.size();
    rep.ok = rep.decoded == total && rep.roundtrips == total && rep.distinct_balls == total;
    if (!rep.ok && rep.failure.empty()) rep.failure = "decoded balls overlap";
    return rep;
}

/// A point of period |w| with itinerary w w w ...: the center of the cylinder
/// of w repeated to length N - 1.
inline Element periodic_point(const PhiMap& phi, const Word& w) {
    const int N = phi.field->pi_precision;
    if (w.empty() || static_cast<int>(w.size()) > (N - 2) / 2)
        throw PreconditionViolated("periodic_point needs 1 <= |w| <= (N - 2) / 2");
    Word repeated;
    for (int i = 0; i < N - 1; ++i) repeated.symbols.push_back(w[static_cast<std::size_t>(i) % w.size()]);
    return detail::decode_prefix(phi, repeated).center;
}

/// phi^{|w|}(z) = z at precision N - |w| - 1 and itinerary(z) = w repeated.
inline CheckResult check_periodic_point(const PhiMap& phi, const Word& w, const Element& z) {
    const int N = phi.field->pi_precision;
    const int k = static_cast<int>(w.size());
    CheckResult r;
    r.check_id = "periodic_point";
    r.inputs = {{"word", to_string(w)}};
    r.expected = "v(phi^k(z) - z) >= " + std::to_string(N - k - 1) + ", itinerary = word repeated";
    r.regime_flag = phi.regime_flag();
    const auto v = ValuationObs::of(detail::iterate_affine(phi, z, k) - z);
    const int len = N - 1;
    const Word it = itinerary(phi, z, len);
    bool periodic_word = true;
    for (int i = 0; i < len; ++i)
        if (it[static_cast<std::size_t>(i)] != w[static_cast<std::size_t>(i % k)]) periodic_word = false;
    r.observed = {{"z", to_literal(z)}, {"v_fixed", v.str()}, {"itinerary_matches", periodic_word ? "true" : "false"}};
    const bool ok = certainly_geq(v, N - k - 1) && periodic_word;
    r.verdict = ok ? Verdict::pass : (phi.verified_regime() ? Verdict::fail : Verdict::report);
    return r;
}

} // namespace padyn
