#include "orlicz/tent_embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "orlicz/errors.hpp"
#include "orlicz/indices.hpp"
#include "orlicz/log_real.hpp"

namespace orlicz {

namespace {

double powp(double v, double p) {
    if (p == 2.0) return v * v;
    if (p == 1.0) return v;
    if (p == 3.0) return v * v * v;
    if (p == 1.5) return v * std::sqrt(v);
    return std::pow(v, p);
}

// Exact position of t in units of h = 2^(-(n+1)). Guarded so that the
// translate indices below fit in int64.
double scaled_position(double t, long n) {
    double x = std::ldexp(t, static_cast<int>(n) + 1);
    if (!(std::fabs(x) < 9.223372036854776e18 / 2.0))
        throw OverflowError("tent translate index out of range");
    return x;
}

// Tent profile in h units: 0 outside (0,4), else min(xl, 4-xl).
double tent_profile(double xl) {
    if (xl <= 0.0 || xl >= 4.0) return 0.0;
    return std::min(xl, 4.0 - xl);
}

// The (at most four) translates k-1 whose support contains x.
void active_translates(double x, std::int64_t out[4]) {
    std::int64_t k0 = static_cast<std::int64_t>(std::floor(x));
    out[0] = k0 - 3;
    out[1] = k0 - 2;
    out[2] = k0 - 1;
    out[3] = k0;
}

} // namespace

int dyadic_scale(double d) {
    if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("dyadic_scale needs d > 0");
    int e = 0;
    double m = std::frexp(d, &e); // d = m * 2^e, m in [0.5, 1)
    // d = 2^(e-1) exactly when m == 0.5; then N = 1-e gives 2^(-(N+1)) < d = 2^(-N).
    return m == 0.5 ? 1 - e : -e;
}

double tent_slope(const TentParams& tp, long n) {
    static const double kLn2 = std::log(2.0);
    LogReal t = LogReal::from_log(1, -static_cast<double>(n + 1) * kLn2);
    LogReal Mv = tp.M.value_log(t);
    if (!Mv.is_positive()) throw DomainError("tent slope needs M > 0");
    double ln_a = static_cast<double>(n + 2) * kLn2 + Mv.lnmag / tp.p;
    double a = std::exp(ln_a);
    if (!std::isfinite(a) || a <= 0.0)
        throw OverflowError("tent slope not representable at this scale");
    return a;
}

double tent_eval(const TentParams& tp, long n, std::int64_t k, double t) {
    double a = tent_slope(tp, n);
    double x = scaled_position(t, n);
    double xl = x - static_cast<double>(k - 1);
    double y = tent_profile(xl);
    if (y == 0.0) return 0.0;
    return a * std::ldexp(y, -static_cast<int>(n) - 1);
}

int tent_window_fine(const TentParams& tp) {
    if (tp.b_fine > 0) return tp.b_fine;
    double need = 16.0 * std::pow(4.0, tp.p) / tp.tail_eps;
    return static_cast<int>(std::ceil(std::log2(need)));
}

int tent_window_coarse(const TentParams& tp) {
    if (tp.b_coarse > 0) return tp.b_coarse;
    double r = tp.p / tp.q - 1.0;
    if (!(r > 0.0)) throw DomainError("tent window needs p > q");
    double geo = 1.0 - std::exp2(-r);
    double need = 16.0 * std::pow(4.0, tp.p) / (tp.C * tp.tail_eps * geo);
    return static_cast<int>(std::ceil(std::log2(need) / r));
}

TentParams make_tent_params(const OrliczFunction& M, double p, double q,
                            int J, double t_max) {
    if (!(p > 1.0)) throw DomainError("tent embedding needs p > 1");
    if (std::fabs(M.value(1.0) - 1.0) > 1e-9)
        throw DomainError("tent embedding needs a normalized function, M(1) = 1");
    TentParams tp{M};
    tp.p = p;
    double hint = std::numeric_limits<double>::quiet_NaN();
    if (std::isnan(q)) {
        IndexEstimate est = estimate_indices(M, J);
        tp.beta_high = est.beta_high;
        hint = est.beta_high;
        if (!(est.beta_high < p))
            throw DomainError("tent embedding needs p above the upper index bracket");
        q = est.beta_high + (p - est.beta_high) / 4.0;
    }
    if (!(q >= 1.0) || !(q < p)) throw DomainError("tent embedding needs 1 <= q < p");
    tp.q = q;
    ConstantEstimate ce = estimate_C(M, q, std::min(J, 2048), t_max, hint);
    tp.C = ce.C_ext;
    if (!(tp.C > 0.0)) throw Error("degenerate lower-regularity constant");
    double r = std::exp2(1.0 - p / q); // < 1 since p > q
    tp.A = 8.0 * std::pow(4.0, p) * (1.0 + (1.0 / tp.C) / (1.0 - r));
    return tp;
}

SandwichSum scalar_sandwich_sum(const TentParams& tp, double s, double t) {
    SandwichSum out;
    if (s == t) return out;
    double d = std::fabs(s - t);
    double Md = tp.M.value(d);
    int N = dyadic_scale(d);
    int Bf = tent_window_fine(tp);
    int Bc = tent_window_coarse(tp);
    out.n_lo = static_cast<long>(N) - Bc;
    out.n_hi = static_cast<long>(N) + Bf;

    double four_p = std::pow(4.0, tp.p);
    double r = tp.p / tp.q - 1.0;
    double fine_tail = 8.0 * four_p * std::exp2(-static_cast<double>(Bf));
    double coarse_tail = (8.0 * four_p / tp.C) * std::exp2(-r * Bc) / (1.0 - std::exp2(-r));
    out.tail_bound = (fine_tail + coarse_tail) * Md;

    double sum = 0.0, comp = 0.0;
    for (long n = out.n_lo; n <= out.n_hi; ++n) {
        double a = tent_slope(tp, n);
        double xs = scaled_position(s, n);
        double xt = scaled_position(t, n);
        std::int64_t ks[4], kt[4];
        active_translates(xs, ks);
        active_translates(xt, kt);
        std::int64_t keys[8];
        int nk = 0;
        for (int j = 0; j < 4; ++j) keys[nk++] = ks[j];
        for (int j = 0; j < 4; ++j) keys[nk++] = kt[j];
        std::sort(keys, keys + nk);
        nk = static_cast<int>(std::unique(keys, keys + nk) - keys);
        for (int j = 0; j < nk; ++j) {
            double km1 = static_cast<double>(keys[j]);
            double ys = tent_profile(xs - km1);
            double yt = tent_profile(xt - km1);
            if (ys == yt) continue;
            double diff = a * std::ldexp(std::fabs(ys - yt), -static_cast<int>(n) - 1);
            double term = powp(diff, tp.p) - comp;
            double tsum = sum + term;
            comp = (tsum - sum) - term;
            sum = tsum;
        }
    }
    out.sum = sum;
    return out;
}

TentCoordinates embed_vector(const TentParams& tp, const SparseVector& x) {
    TentCoordinates out;
    int Bf = tent_window_fine(tp);
    int Bc = tent_window_coarse(tp);
    for (const auto& [idx, xi] : x.entries()) {
        int N = dyadic_scale(std::fabs(xi));
        for (long n = static_cast<long>(N) - Bc; n <= static_cast<long>(N) + Bf; ++n) {
            double a = tent_slope(tp, n);
            double xv = scaled_position(xi, n);
            std::int64_t kx[4];
            active_translates(xv, kx);
            // Basepoint 0 sits at position 0; its active translates are fixed.
            std::int64_t keys[8] = {kx[0], kx[1], kx[2], kx[3], -3, -2, -1, 0};
            std::sort(keys, keys + 8);
            int nk = static_cast<int>(std::unique(keys, keys + 8) - keys);
            for (int j = 0; j < nk; ++j) {
                double km1 = static_cast<double>(keys[j]);
                // The basepoint's profile value and the branch offsets are exact
                // small integers, so the difference against the basepoint needs
                // only one rounding. Forming profile(xv - km1) - profile(-km1)
                // directly would absorb a coarse-scale xv into the integer
                // translate and leave pure noise.
                double y0 = tent_profile(-km1);
                double xl = xv - km1;
                double diff;
                if (xl <= 0.0 || xl >= 4.0)
                    diff = -y0;
                else if (xl <= 2.0)
                    diff = xv + (-km1 - y0);
                else
                    diff = (4.0 + km1 - y0) - xv;
                if (diff == 0.0) continue;
                double v = a * std::ldexp(diff, -static_cast<int>(n) - 1);
                out.entries.push_back({idx, n, keys[j] + 1, v});
            }
        }
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const TentCoordinates::Entry& a, const TentCoordinates::Entry& b) {
                  if (a.i != b.i) return a.i < b.i;
                  if (a.n != b.n) return a.n < b.n;
                  return a.k < b.k;
              });
    return out;
}

double tent_lp_distance(double p, const TentCoordinates& a, const TentCoordinates& b) {
    auto key_less = [](const TentCoordinates::Entry& u, const TentCoordinates::Entry& v) {
        if (u.i != v.i) return u.i < v.i;
        if (u.n != v.n) return u.n < v.n;
        return u.k < v.k;
    };
    double sum = 0.0, comp = 0.0;
    auto add = [&](double diff) {
        if (diff == 0.0) return;
        double term = powp(std::fabs(diff), p) - comp;
        double tsum = sum + term;
        comp = (tsum - sum) - term;
        sum = tsum;
    };
    std::size_t ia = 0, ib = 0;
    while (ia < a.entries.size() || ib < b.entries.size()) {
        if (ib >= b.entries.size()) { add(a.entries[ia].v); ++ia; }
        else if (ia >= a.entries.size()) { add(b.entries[ib].v); ++ib; }
        else if (key_less(a.entries[ia], b.entries[ib])) { add(a.entries[ia].v); ++ia; }
        else if (key_less(b.entries[ib], a.entries[ia])) { add(b.entries[ib].v); ++ib; }
        else { add(a.entries[ia].v - b.entries[ib].v); ++ia; ++ib; }
    }
    return std::pow(sum, 1.0 / p);
}

ModulusPair tent_moduli(const TentParams& tp) {
    double C = tp.C, q = tp.q, p = tp.p, A = tp.A;
    ModulusPair m;
    m.rho1 = [C, q, p](double t) {
        if (t <= 0.0) return 0.0;
        if (t < 1.0) return std::pow(C, 1.0 / p) * std::pow(t, q / p);
        return std::pow(t, 1.0 / p);
    };
    m.rho2 = [C, q, p, A](double t) {
        if (t <= 0.0) return 0.0;
        if (t <= 1.0) return std::pow(A, 1.0 / p) * std::pow(t, 1.0 / p);
        return std::pow(A / C, 1.0 / p) * std::pow(t, q / p);
    };
    m.form1 = "C^(1/p) t^(q/p) for t<1, t^(1/p) for t>=1";
    m.form2 = "A^(1/p) t^(1/p) for t<=1, (A/C)^(1/p) t^(q/p) for t>1";
    return m;
}

double tent_pair_tolerance(const TentParams& tp, double d_in) {
    ModulusPair m = tent_moduli(tp);
    return 1e-9 + tp.tail_eps * (m.rho2(d_in) + 1.0);
}

} // namespace orlicz
