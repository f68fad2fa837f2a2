#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "errors.hpp"

namespace padyn {

/// An element of the residue field F_{p^f}, encoded as the integer
/// sum a_j p^j of the coefficients of a_0 + a_1 g + ... + a_{f-1} g^{f-1}.
struct ResidueElement {
    std::uint64_t value = 0;

    friend auto operator<=>(const ResidueElement&, const ResidueElement&) = default;
};

namespace poly_mod_p {

// Dense polynomials over F_p, lowest coefficient first, no trailing zeros.
using Poly = std::vector<std::int64_t>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::int64_t mod(std::int64_t a, std::int64_t p) {
    a %= p;
    return a < 0 ? a + p : a;
}

inline std::int64_t pow_mod(std::int64_t b, std::uint64_t e, std::int64_t p) {
    __int128 r = 1, x = mod(b, p);
    while (e) {
        if (e & 1) r = r * x % p;
        x = x * x % p;
        e >>= 1;
    }
    return static_cast<std::int64_t>(r);
}

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) { return pow_mod(a, p - 2, p); }

inline Poly mul(const Poly& a, const Poly& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::int64_t>((r[i + j] + static_cast<__int128>(a[i]) * b[j]) % p);
    trim(r);
    return r;
}

inline Poly sub(Poly a, const Poly& b, std::int64_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = mod(a[i] - b[i], p);
    trim(a);
    return a;
}

// Remainder of a modulo a nonzero polynomial m.
inline Poly rem(Poly a, const Poly& m, std::int64_t p) {
    trim(a);
    const std::int64_t lead_inv = inv_mod(m.back(), p);
    while (a.size() >= m.size()) {
        const std::int64_t c = static_cast<std::int64_t>(static_cast<__int128>(a.back()) * lead_inv % p);
        const std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[shift + i] = mod(static_cast<std::int64_t>((a[shift + i] - static_cast<__int128>(c) * m[i] % p) % p), p);
        trim(a);
    }
    return a;
}

inline Poly gcd(Poly a, Poly b, std::int64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline Poly pow_rem(Poly base, std::uint64_t e, const Poly& m, std::int64_t p) {
    Poly r{1};
    base = rem(std::move(base), m, p);
    while (e) {
        if (e & 1) r = rem(mul(r, base, p), m, p);
        base = rem(mul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

/// Ben-Or irreducibility test: a monic P of degree f is irreducible over F_p
/// iff gcd(X^{p^i} - X, P) = 1 for every 1 <= i <= f/2.
inline bool is_irreducible(const Poly& monic, std::int64_t p) {
    const std::size_t f = monic.size() - 1;
    if (f == 0) return false;
    if (f == 1) return true;
    Poly xp{0, 1};
    for (std::size_t i = 1; i <= f / 2; ++i) {
        xp = pow_rem(xp, static_cast<std::uint64_t>(p), monic, p);
        Poly g = gcd(monic, sub(xp, Poly{0, 1}, p), p);
        if (g.size() > 1) return false;
    }
    return true;
}

} // namespace poly_mod_p

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Arithmetic in F_{p^f} = F_p[g]/(P) on the integer encoding.
class ResidueField {
public:
    ResidueField() = default;

    /// `modulus` holds the monic polynomial coefficients c_0..c_f (c_f = 1).
    ResidueField(std::int64_t p, std::vector<std::int64_t> modulus)
        : p_(p), f_(static_cast<int>(modulus.size()) - 1), modulus_(std::move(modulus)) {
        size_ = 1;
        for (int i = 0; i < f_; ++i) size_ *= static_cast<std::uint64_t>(p_);
    }

    std::int64_t characteristic() const { return p_; }
    int degree() const { return f_; }
    std::uint64_t size() const { return size_; }
    const std::vector<std::int64_t>& modulus() const { return modulus_; }

    std::vector<std::int64_t> to_coeffs(ResidueElement a) const {
        std::vector<std::int64_t> c(static_cast<std::size_t>(f_), 0);
        std::uint64_t v = a.value;
        for (int j = 0; j < f_; ++j) {
            c[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(v % static_cast<std::uint64_t>(p_));
            v /= static_cast<std::uint64_t>(p_);
        }
        return c;
    }

    ResidueElement from_coeffs(const std::vector<std::int64_t>& c) const {
        std::uint64_t v = 0;
        for (int j = f_ - 1; j >= 0; --j) {
            const auto idx = static_cast<std::size_t>(j);
            const std::int64_t cj = idx < c.size() ? poly_mod_p::mod(c[idx], p_) : 0;
            v = v * static_cast<std::uint64_t>(p_) + static_cast<std::uint64_t>(cj);
        }
        return {v};
    }

    ResidueElement add(ResidueElement a, ResidueElement b) const {
        auto x = to_coeffs(a), y = to_coeffs(b);
        for (int j = 0; j < f_; ++j) x[static_cast<std::size_t>(j)] += y[static_cast<std::size_t>(j)];
        return from_coeffs(x);
    }

    ResidueElement mul(ResidueElement a, ResidueElement b) const {
        poly_mod_p::Poly x = to_coeffs(a), y = to_coeffs(b);
        poly_mod_p::trim(x);
        poly_mod_p::trim(y);
        auto r = poly_mod_p::rem(poly_mod_p::mul(x, y, p_), modulus_, p_);
        return from_coeffs(r);
    }

    ResidueElement pow(ResidueElement a, std::uint64_t e) const {
        ResidueElement r{size_ > 1 ? 1u : 0u};
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    /// Multiplicative inverse of a nonzero element.
    ResidueElement inverse(ResidueElement a) const {
        if (a.value == 0) throw PrecisionExhausted("inverse of zero residue");
        return pow(a, size_ - 2);
    }

private:
    std::int64_t p_ = 2;
    int f_ = 1;
    std::vector<std::int64_t> modulus_{0, 1};
    std::uint64_t size_ = 2;
};

/// Lexicographically smallest monic irreducible polynomial of degree f over
/// F_p, ordered by the base-p code c_0 + c_1 p + ... + c_{f-1} p^{f-1} of its
/// lower coefficients (so c_{f-1} is the most significant key).
inline std::optional<std::vector<std::int64_t>> smallest_irreducible(std::int64_t p, int f) {
    std::uint64_t count = 1;
    for (int i = 0; i < f; ++i) count *= static_cast<std::uint64_t>(p);
    for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<std::int64_t> poly(static_cast<std::size_t>(f) + 1, 0);
        std::uint64_t c = code;
        for (int j = 0; j < f; ++j) {
            poly[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(c % static_cast<std::uint64_t>(p));
            c /= static_cast<std::uint64_t>(p);
        }
        poly[static_cast<std::size_t>(f)] = 1;
        if (poly_mod_p::is_irreducible(poly, p)) return poly;
    }
    return std::nullopt;
}

} // namespace padyn
