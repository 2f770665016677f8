#include "orlicz/orlicz_function.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace orlicz {
namespace {

double power_log_small(double t) {
    // t in [0,1]
    if (t == 0.0) return 0.0;
    return t * t / (1.0 - std::log(t));
}

// Validates the Orlicz axioms on a geometric grid. Throws ValidationError
// naming the first failed property.
void validate_expr(const ExprNode& e, const ValidateOptions& opts) {
    const double lo = std::min(opts.lo, 1e-8);
    const double hi = opts.t_max;
    if (!(hi >= 1.0)) throw ValidationError("t_max must be at least 1");
    if (!(lo > 0.0) || !(lo < hi)) throw ValidationError("bad validation grid bounds");
    const int n = std::max(opts.points, 65);

    const double v0 = eval(e, 0.0);
    if (!(v0 == 0.0)) throw ValidationError("M(0) is not 0");

    std::vector<double> ts(static_cast<std::size_t>(n)), vs(static_cast<std::size_t>(n));
    const double r = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        ts[i] = (i == 0) ? lo : (i == n - 1 ? hi : lo * std::exp(r * i));
        vs[i] = eval(e, ts[i]);
        if (!std::isfinite(vs[i]))
            throw ValidationError("value not finite within grid; lower t_max");
        if (!(vs[i] > 0.0))
            throw ValidationError("value not positive within grid");
    }
    for (int i = 0; i + 1 < n; ++i) {
        const double slack = 1e-12 * std::max(std::fabs(vs[i]), std::fabs(vs[i + 1]));
        if (vs[i + 1] < vs[i] - slack)
            throw ValidationError("not nondecreasing on grid");
        const double mid = 0.5 * (ts[i] + ts[i + 1]);
        const double vm = eval(e, mid);
        const double ctol = 1e-12 * (std::fabs(vs[i]) + std::fabs(vs[i + 1]));
        if (!(vm <= 0.5 * (vs[i] + vs[i + 1]) + ctol))
            throw ValidationError("midpoint convexity fails on grid");
    }
    // Strict growth at the top plus convexity certifies unboundedness.
    const double vh = eval(e, hi);
    const double vh2 = eval(e, hi * 0.5);
    if (!(vh > vh2))
        throw ValidationError("no strict growth near t_max; unboundedness not certified");
}

} // namespace

OrliczFunction OrliczFunction::power(double p) {
    if (!(p >= 1.0) || !std::isfinite(p))
        throw ValidationError("power exponent must be finite and >= 1");
    OrliczFunction f;
    f.kind_ = Kind::Power;
    f.p_ = p;
    std::string s = std::to_string(p);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    f.source_ = "power:" + s;
    return f;
}

OrliczFunction OrliczFunction::power_log() {
    OrliczFunction f;
    f.kind_ = Kind::PowerLog;
    f.source_ = "power_log";
    return f;
}

OrliczFunction OrliczFunction::from_expression(const std::string& text, ValidateOptions opts) {
    ExprPtr e = parse_expression(text);
    validate_expr(*e, opts);
    OrliczFunction f;
    f.kind_ = Kind::Expr;
    f.expr_ = std::move(e);
    f.source_ = text;
    f.t_max_ = opts.t_max;
    return f;
}

OrliczFunction OrliczFunction::from_spec(const std::string& spec, ValidateOptions opts) {
    if (spec == "power_log") return power_log();
    if (spec.rfind("power:", 0) == 0) {
        const std::string arg = spec.substr(6);
        std::size_t used = 0;
        double p = 0.0;
        try {
            p = std::stod(arg, &used);
        } catch (const std::exception&) {
            throw ParseError("bad power catalog tag", 6);
        }
        if (used != arg.size()) throw ParseError("bad power catalog tag", 6 + used);
        return power(p);
    }
    return from_expression(spec, opts);
}

double OrliczFunction::raw_value(double x) const {
    switch (kind_) {
        case Kind::Power:
            if (p_ == 2.0) return x * x;
            if (p_ == 1.0) return x;
            if (p_ == 3.0) return x * x * x;
            if (p_ == 1.5) return x * std::sqrt(x);
            return std::pow(x, p_);
        case Kind::PowerLog:
            return x <= 1.0 ? power_log_small(x) : 3.0 * x - 2.0;
        case Kind::Expr:
            return eval(*expr_, x);
    }
    throw Error("corrupt function kind");
}

double OrliczFunction::value(double t) const {
    if (!(t >= 0.0)) throw DomainError("Orlicz function argument must be >= 0");
    if (t > t_max_) throw DomainError("argument beyond validated range");
    return raw_value(arg_scale_ * t);
}

LogReal OrliczFunction::raw_value_log(const LogReal& x) const {
    if (x.sign < 0) throw DomainError("Orlicz function argument must be >= 0");
    if (x.is_zero()) return LogReal::zero();
    switch (kind_) {
        case Kind::Power:
            return x.pow(p_);
        case Kind::PowerLog:
            if (x.lnmag <= 0.0) {
                // ln M = 2 ln t - ln(1 - ln t), exact in the log domain
                const double lt = x.lnmag;
                return LogReal::from_log(1, 2.0 * lt - std::log1p(-lt));
            }
            return LogReal::from_double(3.0).mul(x).sub(LogReal::from_double(2.0));
        case Kind::Expr:
            return eval_log(*expr_, x);
    }
    throw Error("corrupt function kind");
}

LogReal OrliczFunction::value_log(const LogReal& t) const {
    if (t.sign < 0) throw DomainError("Orlicz function argument must be >= 0");
    if (std::isfinite(t_max_) && LogReal::from_double(t_max_).less_than(t))
        throw DomainError("argument beyond validated range");
    return raw_value_log(t.mul(LogReal::from_double(arg_scale_)));
}

double OrliczFunction::raw_inverse(double y) const {
    switch (kind_) {
        case Kind::Power:
            if (p_ == 2.0) return std::sqrt(y);
            if (p_ == 1.0) return y;
            if (p_ == 3.0) return std::cbrt(y);
            if (p_ == 1.5) { const double c = std::cbrt(y); return c * c; }
            return std::pow(y, 1.0 / p_);
        case Kind::PowerLog: {
            if (y == 1.0) return 1.0;
            if (y > 1.0) return (y + 2.0) / 3.0;
            // t^3 <= M(t) <= t^2 on (0,1] brackets the root
            double a = 0.5 * std::log(y);          // ln sqrt(y)
            double b = std::log(y) / 3.0;          // ln cbrt(y)
            const double lny = std::log(y);
            for (int i = 0; i < 100; ++i) {
                const double m = 0.5 * (a + b);
                const double lnf = 2.0 * m - std::log1p(-m);
                if (lnf < lny) a = m; else b = m;
            }
            return std::exp(0.5 * (a + b));
        }
        case Kind::Expr: {
            const double cap = arg_scale_ * t_max_;
            const double vcap = eval(*expr_, cap);
            if (!(y <= vcap)) throw DomainError("inverse target beyond validated range");
            double b = cap;
            double a = cap;
            int guard = 0;
            while (eval(*expr_, a) > y) {
                a *= 0.5;
                if (++guard > 2200 || a < 1e-300) break;
            }
            if (a == b) return a;
            double la = std::log(a), lb = std::log(b);
            for (int i = 0; i < 200; ++i) {
                const double m = 0.5 * (la + lb);
                if (eval(*expr_, std::exp(m)) < y) la = m; else lb = m;
            }
            return std::exp(0.5 * (la + lb));
        }
    }
    throw Error("corrupt function kind");
}

double OrliczFunction::inverse(double y) const {
    if (!(y >= 0.0)) throw DomainError("inverse argument must be >= 0");
    if (y == 0.0) return 0.0;
    const double t = raw_inverse(y) / arg_scale_;
    if (t > t_max_ * (1.0 + 1e-12)) throw DomainError("inverse target beyond validated range");
    return t;
}

OrliczFunction OrliczFunction::normalized() const {
    const double c = inverse(1.0);
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("cannot normalize: M never reaches 1");
    OrliczFunction f = *this;
    f.arg_scale_ = arg_scale_ * c;
    if (std::isfinite(t_max_)) f.t_max_ = t_max_ / c;
    return f;
}

} // namespace orlicz
