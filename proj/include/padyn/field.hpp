#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "residue.hpp"

namespace padyn {

/// Immutable description of K = Q_p(g)(pi): g a root of the unramified
/// polynomial of degree f, pi a root of X^e - p.
///
/// Elements of O_K are stored in the basis g^j pi^i (0 <= j < f, 0 <= i < e);
/// K is known modulo pi^{pi_precision} = p^{scalar_precision}.
struct FieldDescriptor {
    unsigned long p = 2;
    int e = 1;
    int f = 1;
    int d = 1;
    int scalar_precision = 32;
    int pi_precision = 32;
    /// Monic c_0 + c_1 X + ... + X^f with c_i in [0, p), irreducible mod p.
    std::vector<std::int64_t> unram_poly;
    ResidueField residue;
    /// Teichmuller lifts indexed by residue code: f coordinates mod p^M in
    /// the g-basis.  Empty when p^f exceeds kTeichmullerTableLimit.
    std::vector<std::vector<mpz_class>> teichmuller_table;

    static constexpr std::uint64_t kTeichmullerTableLimit = 4096;

    std::uint64_t residue_size() const { return residue.size(); }

    mpz_class p_power(long k) const {
        mpz_class r;
        mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(k < 0 ? 0 : k));
        return r;
    }

    bool same_as(const FieldDescriptor& o) const {
        return p == o.p && e == o.e && f == o.f && scalar_precision == o.scalar_precision;
    }

    /// `p=<prime>,e=<int>,f=<int>,prec=<int>`
    std::string spec_string() const {
        std::ostringstream os;
        os << "p=" << p << ",e=" << e << ",f=" << f << ",prec=" << scalar_precision;
        return os.str();
    }

    std::string unram_poly_string() const {
        std::ostringstream os;
        bool first = true;
        for (int k = f; k >= 0; --k) {
            const auto c = unram_poly[static_cast<std::size_t>(k)];
            if (c == 0) continue;
            if (!first) os << "+";
            first = false;
            if (k == 0 || c != 1) os << c;
            if (k > 0) os << "X";
            if (k > 1) os << "^" << k;
        }
        if (first) os << "0";
        return os.str();
    }
};

using Field = std::shared_ptr<const FieldDescriptor>;

// Arithmetic on raw coordinate arrays of O_K / p^W, where index i*f + j holds
// the coefficient of g^j pi^i.  Representatives are kept in [0, p^W).
namespace ring {

using Coords = std::vector<mpz_class>;

inline std::size_t at(const FieldDescriptor& F, int i, int j) {
    return static_cast<std::size_t>(i * F.f + j);
}

inline Coords zero(const FieldDescriptor& F) { return Coords(static_cast<std::size_t>(F.e * F.f), 0); }

inline void reduce(Coords& a, const mpz_class& mod) {
    for (auto& c : a) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
    }
}

inline int vp(const mpz_class& c, unsigned long p) {
    if (c == 0) return INT_MAX;
    return static_cast<int>(mpz_remove(nullptr, c.get_mpz_t(), mpz_class(p).get_mpz_t()));
}

/// min_i (e * v_p(b_i) + i); INT_MAX when every coordinate is zero.
inline int valuation(const FieldDescriptor& F, const Coords& a) {
    int best = INT_MAX;
    mpz_class pz(F.p), scratch;
    for (int i = 0; i < F.e; ++i) {
        int row = INT_MAX;
        for (int j = 0; j < F.f; ++j) {
            const mpz_class& c = a[at(F, i, j)];
            if (c == 0) continue;
            const int v = static_cast<int>(mpz_remove(scratch.get_mpz_t(), c.get_mpz_t(), pz.get_mpz_t()));
            row = std::min(row, v);
        }
        if (row != INT_MAX) best = std::min(best, F.e * row + i);
    }
    return best;
}

/// Multiplies by pi^k, k >= 0, using pi^e = p.
inline Coords shift_up(const FieldDescriptor& F, const Coords& a, int k) {
    if (k == 0) return a;
    const int s = k / F.e, r = k % F.e;
    const mpz_class ps = F.p_power(s);
    Coords out = zero(F);
    for (int i = 0; i < F.e; ++i) {
        const int ni = i + r;
        for (int j = 0; j < F.f; ++j) {
            mpz_class v = a[at(F, i, j)] * ps;
            if (ni >= F.e) {
                v *= F.p;
                out[at(F, ni - F.e, j)] = std::move(v);
            } else {
                out[at(F, ni, j)] = std::move(v);
            }
        }
    }
    return out;
}

/// Divides by pi^k; requires valuation(a) >= k.
inline Coords shift_down(const FieldDescriptor& F, const Coords& a, int k) {
    if (k == 0) return a;
    const int s = k / F.e, r = k % F.e;
    Coords out = zero(F);
    for (int i = 0; i < F.e; ++i) {
        const int ni = i - r;
        for (int j = 0; j < F.f; ++j) {
            mpz_class v = a[at(F, i, j)];
            if (ni < 0) {
                mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), F.p);
                out[at(F, ni + F.e, j)] = std::move(v);
            } else {
                out[at(F, ni, j)] = std::move(v);
            }
        }
    }
    if (s > 0) {
        const mpz_class ps = F.p_power(s);
        for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), ps.get_mpz_t());
    }
    return out;
}

inline Coords add(const Coords& a, const Coords& b) {
    Coords r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
    return r;
}

inline Coords sub(const Coords& a, const Coords& b) {
    Coords r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
    return r;
}

/// Product in O_K / p^W.
inline Coords mul(const FieldDescriptor& F, const Coords& a, const Coords& b, const mpz_class& mod) {
    const int rows = 2 * F.e - 1, cols = 2 * F.f - 1;
    std::vector<mpz_class> t(static_cast<std::size_t>(rows * cols), 0);
    for (int i1 = 0; i1 < F.e; ++i1)
        for (int j1 = 0; j1 < F.f; ++j1) {
            const mpz_class& x = a[at(F, i1, j1)];
            if (x == 0) continue;
            for (int i2 = 0; i2 < F.e; ++i2)
                for (int j2 = 0; j2 < F.f; ++j2) {
                    const mpz_class& y = b[at(F, i2, j2)];
                    if (y == 0) continue;
                    auto& dst = t[static_cast<std::size_t>((i1 + i2) * cols + j1 + j2)];
                    mpz_addmul(dst.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                }
        }
    // g^f = -(c_0 + ... + c_{f-1} g^{f-1})
    for (int i = 0; i < rows; ++i) {
        auto* row = &t[static_cast<std::size_t>(i * cols)];
        for (int deg = cols - 1; deg >= F.f; --deg) {
            const mpz_class c = row[deg];
            if (c == 0) continue;
            row[deg] = 0;
            for (int k = 0; k < F.f; ++k) {
                const auto ck = F.unram_poly[static_cast<std::size_t>(k)];
                if (ck != 0) row[deg - F.f + k] -= c * ck;
            }
        }
    }
    Coords out = zero(F);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < F.f; ++j) {
            const mpz_class& v = t[static_cast<std::size_t>(i * cols + j)];
            if (i >= F.e)
                out[at(F, i - F.e, j)] += v * F.p;
            else
                out[at(F, i, j)] += v;
        }
    reduce(out, mod);
    return out;
}

inline Coords pow(const FieldDescriptor& F, Coords base, std::uint64_t e, const mpz_class& mod) {
    Coords r = zero(F);
    r[0] = 1;
    reduce(r, mod);
    while (e) {
        if (e & 1) r = mul(F, r, base, mod);
        e >>= 1;
        if (e) base = mul(F, base, base, mod);
    }
    return r;
}

inline Coords from_residue(const FieldDescriptor& F, ResidueElement c) {
    Coords r = zero(F);
    const auto coeffs = F.residue.to_coeffs(c);
    for (int j = 0; j < F.f; ++j) r[at(F, 0, j)] = static_cast<long>(coeffs[static_cast<std::size_t>(j)]);
    return r;
}

/// Image in F_{p^f} of the pi^0 row.
inline ResidueElement to_residue(const FieldDescriptor& F, const Coords& a) {
    std::vector<std::int64_t> coeffs(static_cast<std::size_t>(F.f));
    mpz_class r;
    for (int j = 0; j < F.f; ++j) {
        mpz_fdiv_r_ui(r.get_mpz_t(), a[at(F, 0, j)].get_mpz_t(), F.p);
        coeffs[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(r.get_ui());
    }
    return F.residue.from_coeffs(coeffs);
}

/// Teichmuller lift by iterating x -> x^{p^f} from the naive lift until the
/// value is stable modulo p^M.
inline Coords teichmuller_by_iteration(const FieldDescriptor& F, ResidueElement c) {
    const mpz_class mod = F.p_power(F.scalar_precision);
    Coords x = from_residue(F, c);
    for (int it = 0; it <= F.scalar_precision + 1; ++it) {
        Coords y = pow(F, x, F.residue_size(), mod);
        if (y == x) break;
        x = std::move(y);
    }
    return x;
}

} // namespace ring

namespace detail {

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline ResidueElement primitive_element(const ResidueField& R) {
    const std::uint64_t order = R.size() - 1;
    const auto factors = prime_factors(order);
    for (std::uint64_t c = 1; c < R.size(); ++c) {
        bool ok = true;
        for (auto q : factors)
            if (R.pow({c}, order / q).value == 1) {
                ok = false;
                break;
            }
        if (ok) return {c};
    }
    throw NoIrreducibleFound("residue field has no primitive element");
}

// teich(gamma^k) = teich(gamma)^k for a generator gamma of F_q^*.
inline std::vector<std::vector<mpz_class>> build_teichmuller_table(const FieldDescriptor& F) {
    const std::uint64_t q = F.residue_size();
    const mpz_class mod = F.p_power(F.scalar_precision);
    std::vector<ring::Coords> table(q);
    table[0] = ring::zero(F);
    const ResidueElement gamma = primitive_element(F.residue);
    const ring::Coords t = ring::teichmuller_by_iteration(F, gamma);
    ring::Coords acc = ring::zero(F);
    acc[0] = 1;
    ResidueElement r{1};
    for (std::uint64_t k = 0; k + 1 < q; ++k) {
        table[r.value] = acc;
        acc = ring::mul(F, acc, t, mod);
        r = F.residue.mul(r, gamma);
    }
    std::vector<std::vector<mpz_class>> out(q);
    for (std::uint64_t c = 0; c < q; ++c)
        out[c] = std::vector<mpz_class>(table[c].begin(), table[c].begin() + F.f);
    return out;
}

} // namespace detail

/// Builds K with e*f <= 8 and M = precision base-p digits per coordinate.
inline Field make_field(unsigned long p, int e, int f, int precision) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    if (e < 1 || f < 1) throw BadParameters("ramification index and residue degree must be >= 1");
    if (e * f > 8) throw DegreeTooLarge("e*f = " + std::to_string(e * f) + " exceeds 8");
    if (precision < 8) throw BadParameters("precision must be >= 8");
    if (p >= (1ul << 31)) throw DegreeTooLarge("prime too large for residue encoding");
    std::uint64_t q = 1;
    for (int i = 0; i < f; ++i) {
        q *= p;
        if (q >= (1ull << 31)) throw DegreeTooLarge("p^f exceeds 2^31");
    }

    auto F = std::make_shared<FieldDescriptor>();
    F->p = p;
    F->e = e;
    F->f = f;
    F->d = e * f;
    F->scalar_precision = precision;
    F->pi_precision = e * precision;
    auto poly = smallest_irreducible(static_cast<std::int64_t>(p), f);
    if (!poly) throw NoIrreducibleFound("no irreducible polynomial of degree " + std::to_string(f));
    F->unram_poly = *poly;
    F->residue = ResidueField(static_cast<std::int64_t>(p), *poly);
    if (q <= FieldDescriptor::kTeichmullerTableLimit) F->teichmuller_table = detail::build_teichmuller_table(*F);
    return F;
}

/// Parses `p=<prime>,e=<int>,f=<int>,prec=<int>`; missing keys default to
/// p=2, e=1, f=1, prec=32.
inline Field parse_field_spec(const std::string& spec) {
    unsigned long p = 2;
    int e = 1, f = 1, prec = 32;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("bad field spec item '" + item + "'");
        const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        try {
            if (key == "p")
                p = std::stoul(val);
            else if (key == "e")
                e = std::stoi(val);
            else if (key == "f")
                f = std::stoi(val);
            else if (key == "prec")
                prec = std::stoi(val);
            else
                throw ParseError("unknown field spec key '" + key + "'");
        } catch (const std::logic_error&) {
            throw ParseError("bad integer in field spec item '" + item + "'");
        }
    }
    return make_field(p, e, f, prec);
}

} // namespace padyn
