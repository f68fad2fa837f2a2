#pragma once

#include <algorithm>
#include <climits>
#include <string>

#include <gmpxx.h>

#include "errors.hpp"

namespace padyn {

/// An element of Q_p at a fixed working precision, stored as p^valuation * unit
/// where unit is a residue modulo p^precision coprime to p.  Zero is the
/// valuation sentinel `kZeroValuation` with unit 0.
class PadicScalar {
public:
    static constexpr int kZeroValuation = INT_MAX;

    PadicScalar() = default;

    /// Embeds an integer.  Digits beyond p^{valuation + precision} are dropped.
    PadicScalar(unsigned long p, int precision, const mpz_class& n) : p_(p), precision_(precision) {
        if (n == 0) return;
        mpz_class m = n;
        int v = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p_)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p_);
            ++v;
        }
        valuation_ = v;
        unit_ = m;
        reduce();
    }

    static PadicScalar from_parts(unsigned long p, int precision, int valuation, const mpz_class& unit) {
        PadicScalar s;
        s.p_ = p;
        s.precision_ = precision;
        if (unit == 0) return s;
        s.valuation_ = valuation;
        s.unit_ = unit;
        s.reduce();
        if (s.unit_ == 0 || mpz_divisible_ui_p(s.unit_.get_mpz_t(), p))
            throw PreconditionViolated("PadicScalar unit part must be coprime to p");
        return s;
    }

    bool is_zero() const { return valuation_ == kZeroValuation; }
    int valuation() const { return valuation_; }
    const mpz_class& unit() const { return unit_; }
    int precision() const { return precision_; }
    unsigned long prime() const { return p_; }

    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
        PadicScalar r;
        r.p_ = a.p_;
        r.precision_ = std::min(a.precision_, b.precision_);
        if (a.is_zero() || b.is_zero()) return r;
        r.valuation_ = a.valuation_ + b.valuation_;
        r.unit_ = a.unit_ * b.unit_;
        r.reduce();
        return r;
    }

    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const PadicScalar& lo = a.valuation_ <= b.valuation_ ? a : b;
        const PadicScalar& hi = a.valuation_ <= b.valuation_ ? b : a;
        const int prec = std::min(a.precision_, b.precision_);
        mpz_class shift;
        mpz_ui_pow_ui(shift.get_mpz_t(), lo.p_, static_cast<unsigned long>(hi.valuation_ - lo.valuation_));
        mpz_class sum = lo.unit_ + hi.unit_ * shift;
        // Cancellation consumes unit digits; the result keeps what survives.
        PadicScalar r;
        r.p_ = lo.p_;
        r.precision_ = prec;
        mpz_class mod;
        mpz_ui_pow_ui(mod.get_mpz_t(), lo.p_, static_cast<unsigned long>(prec));
        sum %= mod;
        if (sum < 0) sum += mod;
        if (sum == 0) return r;
        int v = 0;
        while (mpz_divisible_ui_p(sum.get_mpz_t(), lo.p_)) {
            mpz_divexact_ui(sum.get_mpz_t(), sum.get_mpz_t(), lo.p_);
            ++v;
        }
        r.valuation_ = lo.valuation_ + v;
        r.unit_ = sum;
        r.reduce();
        return r;
    }

    PadicScalar operator-() const {
        PadicScalar r = *this;
        if (!is_zero()) {
            r.unit_ = -r.unit_;
            r.reduce();
        }
        return r;
    }

    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a + (-b); }

    PadicScalar inverse() const {
        if (is_zero()) throw PrecisionExhausted("inverse of zero scalar");
        PadicScalar r = *this;
        r.valuation_ = -valuation_;
        mpz_class mod = modulus();
        mpz_invert(r.unit_.get_mpz_t(), unit_.get_mpz_t(), mod.get_mpz_t());
        return r;
    }

    friend bool operator==(const PadicScalar& a, const PadicScalar& b) {
        return a.valuation_ == b.valuation_ && a.unit_ == b.unit_;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        return std::to_string(p_) + "^" + std::to_string(valuation_) + "*" + unit_.get_str();
    }

private:
    mpz_class modulus() const {
        mpz_class m;
        mpz_ui_pow_ui(m.get_mpz_t(), p_, static_cast<unsigned long>(precision_));
        return m;
    }

    void reduce() {
        const mpz_class m = modulus();
        unit_ %= m;
        if (unit_ < 0) unit_ += m;
    }

    unsigned long p_ = 2;
    int precision_ = 32;
    int valuation_ = kZeroValuation;
    mpz_class unit_ = 0;
};

} // namespace padyn
