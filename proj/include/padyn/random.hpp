#pragma once

#include <cstdint>
#include <string_view>

#include "projective.hpp"

namespace padyn {

/// Counter-based generator: the i-th draw of a stream is a pure function of
/// (key, i), so streams can be split by label without sharing state.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : key_(mix(seed ^ 0x243f6a8885a308d3ull)) {}

    /// An independent stream for `label` (suite name, worker index, ...).
    RandomStream substream(std::string_view label) const { return RandomStream(key_, fnv1a(label)); }
    RandomStream substream(std::uint64_t index) const { return RandomStream(key_, mix(index + 0x9e3779b97f4a7c15ull)); }

    std::uint64_t next() { return mix(key_ + 0x9e3779b97f4a7c15ull * ++counter_); }

    /// Uniform in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    int uniform_int(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

private:
    RandomStream(std::uint64_t parent, std::uint64_t salt) : key_(mix(parent ^ mix(salt))) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

inline mpz_class random_below(RandomStream& rng, const mpz_class& bound) {
    // 64 extra bits make the modulo bias negligible.
    mpz_class acc = 0;
    const std::size_t words = mpz_sizeinbase(bound.get_mpz_t(), 2) / 64 + 2;
    for (std::size_t i = 0; i < words; ++i) {
        acc <<= 64;
        acc += static_cast<unsigned long>(rng.next());
    }
    return acc % bound;
}

inline ResidueElement random_residue(const Field& F, RandomStream& rng) { return {rng.below(F->residue_size())}; }

/// Uniform in O_K / pi^N.
inline Element random_integral(const Field& F, RandomStream& rng) {
    const mpz_class mod = F->p_power(F->scalar_precision);
    ring::Coords c = ring::zero(*F);
    for (auto& x : c) x = random_below(rng, mod);
    return Element::from_coords(F, std::move(c));
}

inline Element random_unit(const Field& F, RandomStream& rng) {
    for (;;) {
        Element x = random_integral(F, rng);
        if (!x.is_zero() && x.valuation() == 0) return x;
    }
}

/// pi^k times a random unit.
inline Element random_with_valuation(const Field& F, RandomStream& rng, int k) {
    return random_unit(F, rng).shifted(k);
}

/// y with v(x - y) = k exactly.
inline Element random_at_distance(const Element& x, RandomStream& rng, int k) {
    return x + random_with_valuation(x.field(), rng, k);
}

/// A point of P^1(K) \ O_K: z = pi^{-s} u with 1 <= s <= max_depth, or inf
/// with probability 1/16.
inline ProjectivePoint random_outside_point(const Field& F, RandomStream& rng, int max_depth) {
    if (rng.below(16) == 0) return infinity_point(F);
    const int s = rng.uniform_int(1, max_depth);
    return normalize(random_unit(F, rng), Element::pi_power(F, s));
}

} // namespace padyn
