#include "orlicz/luxemburg.hpp"

#include <cmath>

namespace orlicz {

double modular_sum(const OrliczFunction& M, const SparseVector& x, double rho) {
    if (!(rho > 0.0)) throw DomainError("modular_sum needs rho > 0");
    // Kahan summation: the norm bisection drives this to 1 within 1e-10 and
    // plain accumulation noise over a few thousand terms would eat the budget.
    double s = 0.0, c = 0.0;
    for (const auto& e : x.entries()) {
        const double term = M.value(std::fabs(e.second) / rho);
        const double y = term - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

NormResult luxemburg_norm(const OrliczFunction& M, const SparseVector& x) {
    NormResult r;
    if (x.empty()) return r;

    const double mx = x.max_abs();
    const double n = static_cast<double>(x.support());
    // modular(lo) >= 1: the largest entry alone contributes M(inverse(M,1)) = 1.
    // modular(hi) <= 1: every entry contributes at most M(inverse(M,1/n)) = 1/n.
    double lo = mx / M.inverse(1.0);
    double hi = mx / M.inverse(1.0 / n);
    int it = 0;
    while (modular_sum(M, x, lo) < 1.0 && it < 64) { lo *= 0.5; ++it; }
    while (modular_sum(M, x, hi) > 1.0 && it < 128) { hi *= 2.0; ++it; }

    double mid = hi, res = modular_sum(M, x, hi) - 1.0;
    for (; it < 500; ++it) {
        mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;   // interval exhausted in doubles
        const double s = modular_sum(M, x, mid);
        res = s - 1.0;
        if (std::fabs(res) <= 1e-11 && (hi - lo) <= 1e-13 * hi) break;
        if (s > 1.0) lo = mid; else hi = mid;
    }
    r.value = mid;
    r.residual = res;
    r.iterations = it;
    return r;
}

LemmaCheck check_lemma_sum_vs_norm(const OrliczFunction& M, const SparseVector& x) {
    LemmaCheck c;
    c.norm = luxemburg_norm(M, x).value;
    c.modsum = x.empty() ? 0.0 : modular_sum(M, x, 1.0);
    const double tol = 1e-9 * std::fmax(1.0, c.norm);
    if (c.norm < 1.0 - 1e-12) {
        c.side = "below";
        c.margin = c.norm - c.modsum;
    } else if (c.norm > 1.0 + 1e-12) {
        c.side = "above";
        c.margin = c.modsum - c.norm;
    } else {
        c.side = "unit";
        c.margin = -std::fabs(c.modsum - c.norm);
    }
    c.holds = c.margin >= -tol;
    return c;
}

} // namespace orlicz
