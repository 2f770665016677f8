#include "orlicz/indices.hpp"

#include <algorithm>
#include <cmath>

#include "orlicz/log_real.hpp"

namespace orlicz {
namespace {

constexpr double kLn2 = 0.6931471805599453;
const double kFloorLog = std::log(1e-6);
const double kCeilLog = std::log(1e6);
constexpr double kBisectWidth = 0.001;
constexpr double kQMax = 64.0;

// logM[m] = ln M(2^-m) for m = 0..2J, cut at the deepest prefix on which the
// function stays positive and evaluable (DSL expressions can go bad far below
// their validated range; catalog entries never truncate).
struct DyadicGrid {
    std::vector<double> logM;
    int J = 0;
    bool truncated = false;
};

DyadicGrid build_grid(const OrliczFunction& M, int J) {
    DyadicGrid g;
    g.logM.reserve(2 * J + 1);
    for (int m = 0; m <= 2 * J; ++m) {
        bool ok = true;
        try {
            const LogReal v = M.value_log(LogReal::from_log(1, -m * kLn2));
            if (v.sign <= 0) ok = false;
            else g.logM.push_back(v.lnmag);
        } catch (const Error&) {
            ok = false;
        }
        if (!ok) { g.truncated = true; break; }
    }
    const int usable = (static_cast<int>(g.logM.size()) - 1) / 2;
    if (usable < 20)
        throw Error("dyadic grid too shallow: function not positive deep enough");
    g.J = usable;
    g.logM.resize(2 * usable + 1);
    return g;
}

// dmin[j] = min_i, dmax[j] = max_i of ln M(2^-(i+j)) - ln M(2^-i), i,j in [0,J].
void ratio_extremes(const DyadicGrid& g, std::vector<double>& dmin, std::vector<double>& dmax) {
    const int J = g.J;
    dmin.assign(J + 1, 0.0);
    dmax.assign(J + 1, 0.0);
    for (int j = 1; j <= J; ++j) {
        double mn = g.logM[j] - g.logM[0];
        double mx = mn;
        for (int i = 1; i <= J; ++i) {
            const double d = g.logM[i + j] - g.logM[i];
            mn = std::min(mn, d);
            mx = std::max(mx, d);
        }
        dmin[j] = mn;
        dmax[j] = mx;
    }
}

bool beta_feasible(const std::vector<double>& dmin, double q) {
    for (std::size_t j = 1; j < dmin.size(); ++j)
        if (dmin[j] + q * static_cast<double>(j) * kLn2 < kFloorLog) return false;
    return true;
}

bool alpha_feasible(const std::vector<double>& dmax, double q) {
    for (std::size_t j = 1; j < dmax.size(); ++j)
        if (dmax[j] + q * static_cast<double>(j) * kLn2 > kCeilLog) return false;
    return true;
}

} // namespace

IndexEstimate estimate_indices(const OrliczFunction& M, int J) {
    if (J < 20) throw DomainError("index grid needs J >= 20");
    const DyadicGrid g = build_grid(M, J);
    std::vector<double> dmin, dmax;
    ratio_extremes(g, dmin, dmax);

    IndexEstimate est;
    est.J = J;
    est.J_used = g.J;
    est.grid_truncated = g.truncated;
    est.samples = static_cast<long>(g.logM.size());

    // Bracket corrections: the floor/ceiling crossing undershoots a pure power
    // law's index by exactly ln(1e6)/(J ln 2); slowly varying factors such as
    // 1/(1 - ln t) move it by up to ln(1 + J ln 2)/(J ln 2) more.
    const double JL = g.J * kLn2;
    const double bias = kCeilLog / JL;
    const double slack = std::log1p(JL) / JL;

    auto probe_beta = [&](double q) {
        const bool f = beta_feasible(dmin, q);
        est.trace.push_back({'b', q, f});
        return f;
    };
    auto probe_alpha = [&](double q) {
        const bool f = alpha_feasible(dmax, q);
        est.trace.push_back({'a', q, f});
        return f;
    };

    // beta: feasibility is monotone increasing in q; find the crossing.
    {
        double lo = 0.0, hi = 1.0;
        if (probe_beta(lo)) {
            est.beta_low = 1.0;
            est.beta_high = 1.0 + bias + slack;
        } else {
            while (!probe_beta(hi) && hi < kQMax) hi *= 2.0;
            if (hi >= kQMax && !beta_feasible(dmin, kQMax)) {
                est.beta_low = kQMax;
                est.beta_high = std::numeric_limits<double>::infinity();
            } else {
                while (hi - lo > kBisectWidth) {
                    const double mid = 0.5 * (lo + hi);
                    if (probe_beta(mid)) hi = mid; else lo = mid;
                }
                est.beta_low = std::max(1.0, lo);
                est.beta_high = hi + bias + slack;
            }
        }
    }

    // alpha: feasibility is monotone decreasing in q.
    {
        double lo = 1.0, hi = 2.0;
        if (!probe_alpha(lo)) {
            est.alpha_low = 1.0;
            est.alpha_high = 1.0;
        } else {
            while (probe_alpha(hi) && hi < kQMax) hi *= 2.0;
            if (hi >= kQMax && alpha_feasible(dmax, kQMax)) {
                est.alpha_low = std::max(1.0, kQMax - bias - slack);
                est.alpha_high = std::numeric_limits<double>::infinity();
            } else {
                while (hi - lo > kBisectWidth) {
                    const double mid = 0.5 * (lo + hi);
                    if (probe_alpha(mid)) lo = mid; else hi = mid;
                }
                est.alpha_low = std::max(1.0, lo - bias - slack);
                est.alpha_high = hi;
            }
        }
    }
    return est;
}

ConstantEstimate estimate_C(const OrliczFunction& M, double q, int J, double t_max,
                            double beta_high_hint) {
    if (J < 20) throw DomainError("constant grid needs J >= 20");
    const DyadicGrid g = build_grid(M, J);

    ConstantEstimate est;
    est.q = q;
    double best = std::numeric_limits<double>::infinity();
    int bi = 0, bj = 0;
    for (int j = 0; j <= g.J; ++j) {
        const double qj = q * j * kLn2;
        for (int i = 0; i <= g.J; ++i) {
            const double v = g.logM[i + j] - g.logM[i] + qj;
            if (v < best) { best = v; bi = i; bj = j; }
        }
    }
    est.C = std::exp(best);
    est.lambda_at_min = std::ldexp(1.0, -bi);
    est.t_at_min = std::ldexp(1.0, -bj);
    if (est.C < 1e-12)
        throw Error("constant estimate failed: C below 1e-12, q too close to the upper index");

    double cap = t_max;
    if (std::isfinite(M.t_max())) cap = std::min(cap, M.t_max());
    double supD = 0.0;
    const int steps = std::max(2, static_cast<int>(std::ceil(8.0 * std::log2(cap))));
    for (int k = 1; k <= steps; ++k) {
        const double t = std::exp(std::log(cap) * k / steps);
        if (t <= 1.0) continue;
        supD = std::max(supD, M.value(t) / std::pow(t, q));
    }
    est.D = std::max(1.0, supD);
    est.C_ext = est.C / est.D;
    if (!std::isnan(beta_high_hint)) est.boundary = (q <= beta_high_hint);
    return est;
}

double cotype(const IndexEstimate& est) {
    if (std::isinf(est.beta_high)) return std::numeric_limits<double>::infinity();
    return std::max(2.0, est.beta_mid());
}

double cotype(const OrliczFunction& M, int J) { return cotype(estimate_indices(M, J)); }

std::string trend_name(Trend t) {
    switch (t) {
        case Trend::Vanishing: return "vanishing";
        case Trend::BoundedAway: return "bounded-away";
        case Trend::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Trend classify_trend(const std::vector<double>& v) {
    if (v.size() < 2) return Trend::Inconclusive;
    const std::size_t tail = std::min<std::size_t>(10, v.size() - 1);
    bool dec = true;
    for (std::size_t i = v.size() - tail; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) { dec = false; break; }
    if (dec && v.back() < 0.1 * v.front()) return Trend::Vanishing;
    if (v.back() >= 0.5 * v.front()) return Trend::BoundedAway;
    return Trend::Inconclusive;
}

BasisCriterionSeries basis_criterion(const OrliczFunction& M) {
    if (std::fabs(M.value(1.0) - 1.0) > 1e-9)
        throw DomainError("basis criterion needs M normalized to M(1) = 1");
    BasisCriterionSeries s;
    for (int k = 0; k <= 40; ++k) {
        const double n = std::ldexp(1.0, k);
        const double y = 1.0 / n;
        const double t = M.inverse(y);
        s.ns.push_back(n);
        s.cs.push_back(std::sqrt(y) / t);
        s.rs.push_back(y / (t * t));
    }
    // Thresholds act on r_n = c_n^2: the unsquared series can decay like a
    // power of ln n (e.g. the power_log entry) and never cross a fixed ratio
    // threshold even though its limit, and the criterion's ratio M(t)/t^2,
    // is 0. Squaring makes the rule consistent with the small-scale test.
    s.trend = classify_trend(s.rs);
    return s;
}

std::vector<double> small_scale_ratio_series(const OrliczFunction& M) {
    std::vector<double> rs;
    for (int j = 1; j <= 40; ++j) {
        const LogReal v = M.value_log(LogReal::from_log(1, -j * kLn2));
        if (v.sign <= 0) throw DomainError("function not positive on the small-scale grid");
        rs.push_back(std::exp(v.lnmag + 2.0 * j * kLn2));
    }
    return rs;
}

Trend small_scale_ratio_limit(const OrliczFunction& M) {
    return classify_trend(small_scale_ratio_series(M));
}

} // namespace orlicz
