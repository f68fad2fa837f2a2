#pragma once

#include <algorithm>
#include <cctype>
#include <climits>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "field.hpp"
#include "scalar.hpp"

namespace padyn {

/// An element of K known modulo pi^precision().
///
/// Stored as pi^lo * u with u a unit of O_K given by its coordinates in the
/// basis g^j pi^i, reduced modulo p^W where W = ceil((precision - lo) / e).
/// An element whose value is divisible by pi^precision is "zero at precision":
/// it carries lo == precision and no unit part.
///
/// precision never exceeds the field's pi_precision N.  Arithmetic tracks the
/// absolute precision that survives each operation: a product loses
/// whatever the other factor's negative valuation costs, division by pi^k
/// loses k digits, and inversion of pi^v * u yields precision N - 2v.
class Element {
public:
    Element() = default;

    static Element zero(const Field& F) { return Element(F, F->pi_precision, F->pi_precision, {}); }

    static Element one(const Field& F) { return from_integer(F, 1); }

    static Element from_integer(const Field& F, const mpz_class& n) {
        ring::Coords c = ring::zero(*F);
        c[0] = n;
        return canonical(F, 0, F->pi_precision, std::move(c));
    }

    static Element from_integer(const Field& F, long n) { return from_integer(F, mpz_class(n)); }

    /// pi^k, exact up to the working precision.
    static Element pi_power(const Field& F, int k) { return one(F).shifted(k); }

    /// g^k for the unramified generator g.
    static Element generator_power(const Field& F, unsigned k) {
        ring::Coords c = ring::zero(*F);
        if (F->f == 1) {
            c[0] = 0;  // g is the root of X, i.e. g = 0
            if (k == 0) c[0] = 1;
        } else {
            c[ring::at(*F, 0, 1)] = 1;
            c = ring::pow(*F, c, k, F->p_power(F->scalar_precision));
        }
        return canonical(F, 0, F->pi_precision, std::move(c));
    }

    /// Builds an integral element from raw coordinates (index i*f + j).
    static Element from_coords(const Field& F, ring::Coords coords, int precision = INT_MAX) {
        return canonical(F, 0, std::min(precision, F->pi_precision), std::move(coords));
    }

    const Field& field() const { return field_; }
    int precision() const { return prec_; }
    bool is_zero() const { return lo_ >= prec_; }

    /// v_pi(x).  Throws PrecisionExhausted when x is zero at precision.
    int valuation() const {
        if (is_zero()) throw PrecisionExhausted("valuation of an element indistinguishable from 0 (precision " +
                                                std::to_string(prec_) + ")");
        return lo_;
    }

    /// v_pi(x) if resolved, otherwise the precision (a lower bound).
    int valuation_bound() const { return lo_; }

    bool is_integral() const { return lo_ >= 0; }

    /// Coefficient of g^j pi^i as a p-adic scalar.
    PadicScalar coordinate(int j, int i) const {
        check_field();
        if (is_zero()) return PadicScalar(field_->p, field_->scalar_precision, 0);
        // x = pi^lo * u, so the coefficient of g^j pi^i lives in u at row (i - lo) mod e.
        const int shift = i - lo_;
        const int row = ((shift % field_->e) + field_->e) % field_->e;
        const int pexp = (shift - row) / field_->e;
        const mpz_class& c = unit_[ring::at(*field_, row, j)];
        if (c == 0) return PadicScalar(field_->p, field_->scalar_precision, 0);
        mpz_class u = c;
        const int v = static_cast<int>(mpz_remove(u.get_mpz_t(), c.get_mpz_t(), mpz_class(field_->p).get_mpz_t()));
        return PadicScalar::from_parts(field_->p, field_->scalar_precision, v - pexp, u);
    }

    /// Multiplication by pi^k; exact, so precision moves with the valuation.
    Element shifted(int k) const {
        check_field();
        const int prec = std::min(field_->pi_precision, prec_ + k);
        if (is_zero()) return Element(field_, prec, prec, {});
        return canonical(field_, lo_ + k, prec, unit_);
    }

    friend Element operator+(const Element& a, const Element& b) {
        a.check_same(b);
        const Field& F = a.field_;
        const int prec = std::min(a.prec_, b.prec_);
        const int lo = std::min({a.lo_, b.lo_, prec});
        ring::Coords sum = ring::zero(*F);
        if (!a.is_zero()) sum = ring::add(sum, ring::shift_up(*F, a.unit_, a.lo_ - lo));
        if (!b.is_zero()) sum = ring::add(sum, ring::shift_up(*F, b.unit_, b.lo_ - lo));
        return canonical(F, lo, prec, std::move(sum));
    }

    Element operator-() const {
        Element r = *this;
        if (!is_zero()) {
            for (auto& c : r.unit_) c = -c;
            ring::reduce(r.unit_, modulus_for(*field_, r.lo_, r.prec_));
        }
        return r;
    }

    friend Element operator-(const Element& a, const Element& b) { return a + (-b); }

    friend Element operator*(const Element& a, const Element& b) {
        a.check_same(b);
        const Field& F = a.field_;
        const int prec = std::min({F->pi_precision, a.prec_ + b.lo_, b.prec_ + a.lo_});
        const int lo = a.lo_ + b.lo_;
        if (a.is_zero() || b.is_zero() || lo >= prec) return Element(F, prec, prec, {});
        const mpz_class mod = modulus_for(*F, lo, prec);
        // Product of two units is a unit: lo stays exact.
        return Element(F, lo, prec, ring::mul(*F, a.unit_, b.unit_, mod));
    }

    Element& operator+=(const Element& o) { return *this = *this + o; }
    Element& operator-=(const Element& o) { return *this = *this - o; }
    Element& operator*=(const Element& o) { return *this = *this * o; }

    /// Multiplicative inverse.  Throws PrecisionExhausted on zero at precision.
    Element inverse() const {
        check_field();
        if (is_zero()) throw PrecisionExhausted("inverse of an element indistinguishable from 0");
        const FieldDescriptor& F = *field_;
        const int rel = prec_ - lo_;
        const int prec = std::min(F.pi_precision, prec_ - 2 * lo_);
        const int lo = -lo_;
        if (lo >= prec) return Element(field_, prec, prec, {});
        const mpz_class mod = modulus_for(F, lo, lo + rel);
        // Start from a lift of the residue inverse; Newton y <- y(2 - u y) doubles
        // the number of correct pi-adic digits each round.
        ring::Coords y = ring::from_residue(F, F.residue.inverse(ring::to_residue(F, unit_)));
        ring::reduce(y, mod);
        ring::Coords two = ring::zero(F);
        two[0] = 2;
        for (int good = 1; good < F.e * 2 + rel + 1; good *= 2) {
            ring::Coords uy = ring::mul(F, unit_, y, mod);
            y = ring::mul(F, y, ring::sub(two, uy), mod);
        }
        return canonical(field_, lo, prec, std::move(y));
    }

    friend Element operator/(const Element& a, const Element& b) { return a * b.inverse(); }

    Element pow(std::uint64_t k) const {
        Element r = one(field_);
        Element b = *this;
        while (k) {
            if (k & 1) r *= b;
            k >>= 1;
            if (k) b *= b;
        }
        return r;
    }

    /// Image in O_K / P_K = F_{p^f}.
    ResidueElement reduction() const {
        check_field();
        if (prec_ <= 0) throw PrecisionExhausted("reduction needs at least one known pi-adic digit");
        if (lo_ < 0) throw NotIntegral("reduction of an element with negative valuation");
        if (lo_ > 0) return {0};
        return ring::to_residue(*field_, unit_);
    }

    /// Coordinates of x itself modulo p^M (integral x only).
    ring::Coords integral_coords() const {
        check_field();
        if (lo_ < 0) throw NotIntegral("integral_coords of an element with negative valuation");
        if (is_zero()) return ring::zero(*field_);
        ring::Coords c = ring::shift_up(*field_, unit_, lo_);
        ring::reduce(c, field_->p_power(field_->scalar_precision));
        return c;
    }

    /// True when x - y vanishes at the common precision.
    friend bool indistinguishable(const Element& a, const Element& b) { return (a - b).is_zero(); }

private:
    Element(Field F, int lo, int prec, ring::Coords unit)
        : field_(std::move(F)), lo_(lo), prec_(prec), unit_(std::move(unit)) {}

    static mpz_class modulus_for(const FieldDescriptor& F, int lo, int prec) {
        const long rel = prec - lo;
        return F.p_power(rel <= 0 ? 0 : (rel + F.e - 1) / F.e);
    }

    // Brings pi^lo * raw into canonical form: factor out the valuation of raw
    // and reduce the unit part modulo p^W.
    static Element canonical(const Field& F, int lo, int prec, ring::Coords raw) {
        prec = std::min(prec, F->pi_precision);
        if (lo >= prec) return Element(F, prec, prec, {});
        ring::reduce(raw, modulus_for(*F, lo, prec));
        const int v = ring::valuation(*F, raw);
        if (v == INT_MAX || lo + v >= prec) return Element(F, prec, prec, {});
        ring::Coords u = ring::shift_down(*F, raw, v);
        lo += v;
        ring::reduce(u, modulus_for(*F, lo, prec));
        return Element(F, lo, prec, std::move(u));
    }

    void check_field() const {
        if (!field_) throw FieldMismatch("element is not attached to a field");
    }

    void check_same(const Element& o) const {
        check_field();
        o.check_field();
        if (field_ != o.field_ && !field_->same_as(*o.field_))
            throw FieldMismatch(field_->spec_string() + " vs " + o.field_->spec_string());
    }

    Field field_;
    int lo_ = 0;
    int prec_ = 0;
    ring::Coords unit_;
};

/// The Teichmuller representative of c: the unique root of x^{p^f} = x
/// reducing to c.
inline Element teichmuller(ResidueElement c, const Field& F) {
    if (c.value >= F->residue_size()) throw PreconditionViolated("residue code out of range");
    ring::Coords coords = ring::zero(*F);
    if (!F->teichmuller_table.empty()) {
        const auto& row = F->teichmuller_table[c.value];
        for (int j = 0; j < F->f; ++j) coords[ring::at(*F, 0, j)] = row[static_cast<std::size_t>(j)];
    } else {
        coords = ring::teichmuller_by_iteration(*F, c);
    }
    return Element::from_coords(F, std::move(coords));
}

/// First `count` pi-adic digits of integral x over the Teichmuller set:
/// x = sum teichmuller(a_i) pi^i mod pi^count.
inline std::vector<ResidueElement> digits(const Element& x, int count) {
    const Field& F = x.field();
    if (!x.is_integral()) throw NotIntegral("digits of an element with negative valuation");
    if (count > x.precision())
        throw PrecisionExhausted("requested " + std::to_string(count) + " digits, element known to " +
                                 std::to_string(x.precision()));
    std::vector<ResidueElement> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    Element rest = x;
    for (int i = 0; i < count; ++i) {
        const ResidueElement a = rest.reduction();
        out.push_back(a);
        rest = (rest - teichmuller(a, F)).shifted(-1);
    }
    return out;
}

inline Element from_digits(const Field& F, const std::vector<ResidueElement>& ds) {
    Element x = Element::zero(F);
    const int n = std::min<int>(static_cast<int>(ds.size()), F->pi_precision);
    for (int i = n - 1; i >= 0; --i) x = x.shifted(1) + teichmuller(ds[static_cast<std::size_t>(i)], F);
    return x;
}

/// Text form `digits:[a0,a1,...]` (trailing zero digits dropped), prefixed
/// by `pi^<v>*` when v_pi(x) < 0.
inline std::string to_literal(const Element& x) {
    Element y = x;
    std::string prefix;
    if (!x.is_zero() && x.valuation() < 0) {
        prefix = "pi^" + std::to_string(x.valuation()) + "*";
        y = x.shifted(-x.valuation());
    }
    auto ds = digits(y, y.precision());
    while (!ds.empty() && ds.back().value == 0) ds.pop_back();
    std::ostringstream os;
    os << prefix << "digits:[";
    for (std::size_t i = 0; i < ds.size(); ++i) os << (i ? "," : "") << ds[i].value;
    os << "]";
    return os.str();
}

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline std::uint64_t parse_symbol(const std::string& tok, std::uint64_t bound) {
    const std::string t = trim(tok);
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char ch) { return std::isdigit(ch); }))
        throw ParseError("bad residue symbol '" + tok + "'");
    std::uint64_t v = 0;
    try {
        v = std::stoull(t);
    } catch (const std::logic_error&) {
        throw ParseError("bad residue symbol '" + tok + "'");
    }
    if (v >= bound) throw ParseError("residue symbol " + t + " not below p^f = " + std::to_string(bound));
    return v;
}

} // namespace detail

/// Parses an element literal: a (possibly negative) integer, `digits:[...]`,
/// or either of those prefixed by `pi^<k>*`.
inline Element parse_element(const Field& F, const std::string& text) {
    std::string s = detail::trim(text);
    int shift = 0;
    if (s.rfind("pi^", 0) == 0) {
        const auto star = s.find('*');
        if (star == std::string::npos) throw ParseError("expected '*' after pi^k in '" + text + "'");
        try {
            shift = std::stoi(s.substr(3, star - 3));
        } catch (const std::logic_error&) {
            throw ParseError("bad pi exponent in '" + text + "'");
        }
        s = detail::trim(s.substr(star + 1));
    }
    Element x;
    if (s.rfind("digits:", 0) == 0) {
        std::string body = detail::trim(s.substr(7));
        if (body.size() < 2 || body.front() != '[' || body.back() != ']')
            throw ParseError("expected digits:[...] in '" + text + "'");
        body = body.substr(1, body.size() - 2);
        std::vector<ResidueElement> ds;
        if (!detail::trim(body).empty()) {
            std::stringstream ss(body);
            std::string tok;
            while (std::getline(ss, tok, ',')) ds.push_back({detail::parse_symbol(tok, F->residue_size())});
        }
        x = from_digits(F, ds);
    } else {
        mpz_class n;
        const std::string digits_part = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? s.substr(1) : s;
        if (digits_part.empty() ||
            !std::all_of(digits_part.begin(), digits_part.end(), [](unsigned char ch) { return std::isdigit(ch); }) ||
            n.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
            throw ParseError("bad element literal '" + text + "'");
        x = Element::from_integer(F, n);
    }
    return shift ? x.shifted(shift) : x;
}

} // namespace padyn
