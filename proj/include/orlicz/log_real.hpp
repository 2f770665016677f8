#pragma once

#include <cmath>
#include <limits>

#include "orlicz/errors.hpp"

namespace orlicz {

// Signed scalar stored as {sign, ln|x|}. Arithmetic stays in the log domain,
// so quantities like M(2^-8192) that underflow double are exact to work with.
struct LogReal {
    int sign = 0;          // -1, 0, +1
    double lnmag = -std::numeric_limits<double>::infinity();

    static LogReal zero() { return LogReal{}; }
    static LogReal one() { return LogReal{1, 0.0}; }

    static LogReal from_double(double v) {
        if (v == 0.0) return zero();
        if (std::isnan(v)) throw DomainError("log-domain value from NaN");
        return LogReal{v > 0 ? 1 : -1, std::log(std::fabs(v))};
    }

    // x = sign * exp(lnmag)
    static LogReal from_log(int sign, double lnmag) {
        if (sign == 0 || lnmag == -std::numeric_limits<double>::infinity())
            return zero();
        return LogReal{sign, lnmag};
    }

    bool is_zero() const { return sign == 0; }
    bool is_positive() const { return sign > 0; }

    double to_double() const {
        if (sign == 0) return 0.0;
        return sign * std::exp(lnmag);   // may flush to 0 or inf, caller's risk
    }

    LogReal neg() const { return LogReal{-sign, lnmag}; }

    LogReal mul(const LogReal& o) const {
        if (sign == 0 || o.sign == 0) return zero();
        return LogReal{sign * o.sign, lnmag + o.lnmag};
    }

    LogReal div(const LogReal& o) const {
        if (o.sign == 0) throw DomainError("log-domain division by zero");
        if (sign == 0) return zero();
        return LogReal{sign * o.sign, lnmag - o.lnmag};
    }

    // |x|^e * sgn-preserving only for positive base; negative base rejected.
    LogReal pow(double e) const {
        if (sign == 0) {
            if (e <= 0) throw DomainError("log-domain pow: 0 to nonpositive power");
            return zero();
        }
        if (sign < 0) throw DomainError("log-domain pow of negative base");
        return LogReal{1, lnmag * e};
    }

    LogReal add(const LogReal& o) const {
        if (sign == 0) return o;
        if (o.sign == 0) return *this;
        double hi = lnmag, lo = o.lnmag;
        int shi = sign, slo = o.sign;
        if (lo > hi) { std::swap(hi, lo); std::swap(shi, slo); }
        const double d = lo - hi;          // <= 0
        if (shi == slo) return LogReal{shi, hi + std::log1p(std::exp(d))};
        if (d == 0.0) return zero();       // exact cancellation
        return LogReal{shi, hi + std::log1p(-std::exp(d))};
    }

    LogReal sub(const LogReal& o) const { return add(o.neg()); }

    // ln of a positive value, returned as an ordinary LogReal.
    LogReal ln() const {
        if (sign <= 0) throw DomainError("log-domain ln of nonpositive value");
        return from_double(lnmag);
    }

    // exp of the represented value; needs |x| small enough to realize.
    LogReal exp_of() const {
        if (sign == 0) return one();
        if (lnmag > std::log(700.0) + 1.0)
            throw OverflowError("log-domain exp argument too large to realize");
        return LogReal{1, to_double()};
    }

    // Compare by represented value.
    bool less_than(const LogReal& o) const {
        if (sign != o.sign) return sign < o.sign;
        if (sign == 0) return false;
        if (sign > 0) return lnmag < o.lnmag;
        return lnmag > o.lnmag;
    }
};

} // namespace orlicz
