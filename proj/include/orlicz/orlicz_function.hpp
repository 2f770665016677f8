#pragma once

#include <limits>
#include <string>

#include "orlicz/expr.hpp"
#include "orlicz/log_real.hpp"

namespace orlicz {

// A candidate function failed one of the Orlicz-function checks.
struct ValidationError : Error {
    using Error::Error;
};

struct ValidateOptions {
    double lo = 1e-8;     // lower end of the certification grid
    double t_max = 1e4;   // upper end; growth beyond this is not certified
    int points = 513;     // geometric grid size (>= 64)
};

// An Orlicz function: convex, nondecreasing, M(0) = 0, M(t) > 0 for t > 0,
// unbounded. Backed either by a catalog entry with exact closed forms or by
// a validated expression. Evaluation applies M(t) = raw(arg_scale * t) so
// instances can be renormalized to M(1) = 1 without touching the tree.
class OrliczFunction {
public:
    enum class Kind { Power, PowerLog, Expr };

    // t^p for p >= 1.
    static OrliczFunction power(double p);

    // t^2/(1 - ln t) on (0,1], continued affinely by 3t - 2 above 1 (the
    // one-sided derivative at 1 is exactly 3, so the continuation is C^1).
    static OrliczFunction power_log();

    // Parses and validates expression text.
    static OrliczFunction from_expression(const std::string& text, ValidateOptions opts = {});

    // Accepts catalog tags "power:<p>" and "power_log", else expression text.
    static OrliczFunction from_spec(const std::string& spec, ValidateOptions opts = {});

    double value(double t) const;            // throws DomainError for t < 0 or t > t_max
    LogReal value_log(const LogReal& t) const;
    double inverse(double y) const;          // M^{-1}(y), y >= 0
    OrliczFunction normalized() const;       // argument-scaled so M(1) = 1

    Kind kind() const { return kind_; }
    double power_exponent() const { return p_; }
    const std::string& source() const { return source_; }
    double arg_scale() const { return arg_scale_; }
    double t_max() const { return t_max_; }
    bool is_catalog() const { return kind_ != Kind::Expr; }

private:
    OrliczFunction() = default;

    double raw_value(double t) const;
    LogReal raw_value_log(const LogReal& t) const;
    double raw_inverse(double y) const;

    Kind kind_ = Kind::Power;
    double p_ = 2.0;                 // Power exponent
    ExprPtr expr_;
    std::string source_;
    double arg_scale_ = 1.0;
    double t_max_ = std::numeric_limits<double>::infinity();
};

} // namespace orlicz
