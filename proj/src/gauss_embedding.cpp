#include "orlicz/gauss_embedding.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "orlicz/errors.hpp"
#include "orlicz/mazur.hpp"
#include "orlicz/rng.hpp"

namespace orlicz {

namespace {

void check_params(const GaussParams& gp) {
    if (!(gp.p >= 1.0) || !(gp.p < 2.0))
        throw DomainError("stacked kernel embedding needs 1 <= p < 2");
    if (gp.d < 1 || gp.d > 64) throw DomainError("ambient dimension out of range");
    if (gp.K < 2 || gp.K % 2 != 0)
        throw DomainError("feature degree cap must be even and >= 2");
    if (gp.levels < 1) throw DomainError("need at least one level");
    if (!(gp.radius > 0.0)) throw DomainError("radius must be positive");
}

double norm2(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

std::vector<double> densify(const GaussParams& gp, const SparseVector& x) {
    std::vector<double> out(static_cast<std::size_t>(gp.d), 0.0);
    for (const auto& [idx, v] : x.entries()) {
        if (idx < 1 || idx > gp.d)
            throw DomainError("input support outside the ambient dimension");
        out[static_cast<std::size_t>(idx - 1)] = v;
    }
    return out;
}

// Mazur image of a unit ell_2 vector on the unit ell_p sphere.
std::vector<double> mazur_level(const std::vector<double>& f, double p) {
    std::vector<double> out(f.size());
    double r = 2.0 / p;
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i] = signed_power(f[i], r);
        s += std::pow(std::fabs(out[i]), p);
    }
    double nrm = std::pow(s, 1.0 / p); // 1 up to rounding, by construction
    for (double& v : out) v /= nrm;
    return out;
}

} // namespace

std::int64_t feature_count(int d, int K) {
    // binomial(d + K, K); the running product stays integral at each step
    std::int64_t r = 1;
    for (int j = 1; j <= K; ++j) {
        r = r * (d + j) / j;
        if (r > (std::int64_t{1} << 40)) throw OverflowError("feature count too large");
    }
    return r;
}

std::vector<std::vector<int>> enumerate_exponents(int d, int K) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(d), 0);
    // Ascending lexicographic order over (alpha_1, ..., alpha_d).
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == d) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur[static_cast<std::size_t>(pos)] = e;
            self(self, pos + 1, remaining - e);
        }
        cur[static_cast<std::size_t>(pos)] = 0;
    };
    rec(rec, 0, K);
    return out;
}

std::vector<double> gauss_schedule(const GaussParams& gp) {
    if (!gp.t_schedule.empty()) {
        if (static_cast<int>(gp.t_schedule.size()) != gp.levels)
            throw DomainError("t_schedule length must match levels");
        for (double t : gp.t_schedule)
            if (!(t > 0.0)) throw DomainError("t_schedule entries must be positive");
        return gp.t_schedule;
    }
    std::vector<double> ts(static_cast<std::size_t>(gp.levels));
    for (int n = 1; n <= gp.levels; ++n) ts[static_cast<std::size_t>(n - 1)] = std::pow(4.0, -n);
    return ts;
}

double tailfrac_bound(double u, int K) {
    if (!(u > 0.0)) return 0.0;
    // Remainder terms beyond degree K shrink geometrically with ratio
    // u/(K+2) once u < K+2, certifying tail(u)/e^u <= the value below.
    if (u < 0.9 * (K + 2)) {
        double ln_lead = (K + 1) * std::log(u) - std::lgamma(K + 2.0) - u;
        return std::exp(ln_lead) / (1.0 - u / (K + 2));
    }
    return 1.0;
}

double kernel_dev_bound(double tau) {
    if (!(tau >= 0.0)) return std::numeric_limits<double>::infinity();
    if (tau > 0.4) return std::numeric_limits<double>::infinity();
    return 2.0 * tau / (1.0 - tau);
}

std::vector<double> level_certificates(const GaussParams& gp, double point_norm) {
    check_params(gp);
    double R = point_norm < 0.0 ? gp.radius : point_norm;
    std::vector<double> ts = gauss_schedule(gp);
    std::vector<double> out(ts.size());
    for (std::size_t n = 0; n < ts.size(); ++n) {
        double u_max = 2.0 * ts[n] * R * R;
        out[n] = kernel_dev_bound(tailfrac_bound(u_max, gp.K));
    }
    return out;
}

std::vector<double> phi_dense(const GaussParams& gp, double t, const std::vector<double>& x) {
    if (gp.d < 1 || gp.d > 64) throw DomainError("ambient dimension out of range");
    if (gp.K < 2 || gp.K % 2 != 0)
        throw DomainError("feature degree cap must be even and >= 2");
    if (static_cast<int>(x.size()) != gp.d)
        throw DomainError("point dimension does not match params");
    if (!(t > 0.0)) throw DomainError("level parameter t must be positive");
    double nx = norm2(x);
    if (!(nx <= gp.radius * (1.0 + 1e-12)))
        throw DomainError("point outside the certified ball");
    double u = 2.0 * t * nx * nx;
    if (gp.enforce_trunc_budget && tailfrac_bound(u, gp.K) > gp.eps_trunc)
        throw OverflowError("truncation budget exceeded at this level");

    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(feature_count(gp.d, gp.K)));
    double s = std::sqrt(2.0 * t);
    // coord(alpha) = prod_j x_j^a_j * (2t)^(|a|/2) / sqrt(a!), in the same
    // ascending lexicographic order as enumerate_exponents. The exp(-t|x|^2)
    // prefactor is omitted: renormalization cancels it exactly.
    auto rec = [&](auto&& self, int pos, int remaining, double acc) -> void {
        if (pos == gp.d) {
            coords.push_back(acc);
            return;
        }
        double cur = acc;
        self(self, pos + 1, remaining, cur);
        for (int e = 1; e <= remaining; ++e) {
            cur *= x[static_cast<std::size_t>(pos)] * s / std::sqrt(static_cast<double>(e));
            self(self, pos + 1, remaining - e, cur);
        }
    };
    rec(rec, 0, gp.K, 1.0);

    double nrm = norm2(coords);
    if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw OverflowError("feature vector not normalizable");
    for (double& v : coords) v /= nrm;
    return coords;
}

std::vector<double> phi(const GaussParams& gp, double t, const SparseVector& x) {
    return phi_dense(gp, t, densify(gp, x));
}

double feature_dot(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw DomainError("feature vectors of unequal length");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double l2_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw DomainError("vectors of unequal length");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

StackedEmbedding stacked_embed_dense(const GaussParams& gp, const std::vector<double>& x) {
    check_params(gp);
    StackedEmbedding out;
    out.t_schedule = gauss_schedule(gp);
    out.certificates = level_certificates(gp);
    out.levels.reserve(out.t_schedule.size());
    std::vector<double> base = densify(gp, gp.x0);
    for (double t : out.t_schedule) {
        std::vector<double> f = mazur_level(phi_dense(gp, t, x), gp.p);
        std::vector<double> g = mazur_level(phi_dense(gp, t, base), gp.p);
        for (std::size_t i = 0; i < f.size(); ++i) f[i] -= g[i];
        out.levels.push_back(std::move(f));
    }
    return out;
}

StackedEmbedding stacked_embed(const GaussParams& gp, const SparseVector& x) {
    return stacked_embed_dense(gp, densify(gp, x));
}

double stacked_distance(double p, const StackedEmbedding& a, const StackedEmbedding& b) {
    if (a.levels.size() != b.levels.size())
        throw DomainError("stacks of unequal depth");
    double s = 0.0;
    for (std::size_t n = 0; n < a.levels.size(); ++n) {
        const auto& u = a.levels[n];
        const auto& v = b.levels[n];
        if (u.size() != v.size()) throw DomainError("levels of unequal width");
        for (std::size_t i = 0; i < u.size(); ++i)
            s += std::pow(std::fabs(u[i] - v[i]), p);
    }
    return std::pow(s, 1.0 / p);
}

ModulusPair gauss_moduli(const GaussParams& gp, double C_hat) {
    check_params(gp);
    std::vector<double> ts = gauss_schedule(gp);
    double p = gp.p;
    double chat = std::isnan(C_hat) ? mazur_lower_constant(MazurParams{2.0, p}) : C_hat;
    if (!(chat > 0.0)) throw DomainError("C_hat must be positive");
    double slope = 0.0;
    for (double t : ts) slope += std::sqrt(t);
    slope *= 2.0 * std::sqrt(2.0) / p;
    double cap = (2.0 * std::sqrt(2.0) / p) * std::pow(static_cast<double>(ts.size()), 1.0 / p);
    ModulusPair m;
    m.rho1 = [ts, p, chat](double s) {
        if (s <= 0.0) return 0.0;
        double acc = 0.0;
        for (double t : ts) acc += -std::expm1(-t * s * s);
        return std::pow(2.0 * std::pow(chat, p) * acc, 1.0 / p);
    };
    m.rho2 = [slope, cap](double s) {
        if (s <= 0.0) return 0.0;
        return std::min(slope * s, cap);
    };
    m.form1 = "2^(1/p) C_hat (sum_n (1-exp(-t_n s^2)))^(1/p)";
    m.form2 = "min((2 sqrt2/p) (sum_n sqrt t_n) s, (2 sqrt2/p) levels^(1/p))";
    return m;
}

double gauss_pair_tolerance(const GaussParams& gp, double d_in, double max_point_norm,
                            double C_hat) {
    check_params(gp);
    std::vector<double> ts = gauss_schedule(gp);
    std::vector<double> certs = level_certificates(gp, max_point_norm);
    double p = gp.p;
    double chat = std::isnan(C_hat) ? mazur_lower_constant(MazurParams{2.0, p}) : C_hat;

    // Lower side: a certified level may under-report 2(1-rho) by 2 e_n;
    // an uncertified level forfeits its whole contribution.
    double slack_p = 0.0;
    for (std::size_t n = 0; n < ts.size(); ++n) {
        double e = certs[n];
        double give = std::isfinite(e) ? e : -std::expm1(-ts[n] * d_in * d_in);
        slack_p += 2.0 * std::pow(chat, p) * give;
    }
    ModulusPair m = gauss_moduli(gp, chat);
    double r1 = m.rho1(d_in);
    double lower_tol = r1 - std::pow(std::max(0.0, std::pow(r1, p) - slack_p), 1.0 / p);

    // Upper side: a certified level can overshoot the sqrt(2(1-rho)) block
    // distance by sqrt(2 e_n); an uncertified level with t_n d^2 >= 1 is
    // already covered by the absolute per-level cap, the rest forfeit it.
    double upper_tol = 0.0;
    for (std::size_t n = 0; n < ts.size(); ++n) {
        double e = certs[n];
        if (std::isfinite(e))
            upper_tol += (2.0 / p) * std::sqrt(2.0 * e);
        else if (ts[n] * d_in * d_in < 1.0)
            upper_tol += (2.0 / p) * std::sqrt(2.0);
    }
    return 1e-9 + std::max(lower_tol, upper_tol);
}

double min_eigenvalue_symmetric(std::vector<double> m, int n) {
    if (n < 1 || static_cast<std::size_t>(n) * static_cast<std::size_t>(n) != m.size())
        throw DomainError("matrix shape mismatch");
    auto at = [&](int i, int j) -> double& {
        return m[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
    };
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::fabs(at(i, j)));
    if (scale == 0.0) return 0.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off = std::max(off, std::fabs(at(i, j)));
        if (off <= 1e-14 * scale) break;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double apq = at(i, j);
                if (std::fabs(apq) <= 1e-300) continue;
                double theta = (at(j, j) - at(i, i)) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double aki = at(k, i), akj = at(k, j);
                    at(k, i) = c * aki - s * akj;
                    at(k, j) = s * aki + c * akj;
                }
                for (int k = 0; k < n; ++k) {
                    double aik = at(i, k), ajk = at(j, k);
                    at(i, k) = c * aik - s * ajk;
                    at(j, k) = s * aik + c * ajk;
                }
            }
        }
    }
    double mn = at(0, 0);
    for (int i = 1; i < n; ++i) mn = std::min(mn, at(i, i));
    return mn;
}

double max_negative_type_violation(const std::vector<double>& dist, int n,
                                   double expo, int trials, std::uint64_t seed) {
    if (n < 2 || static_cast<std::size_t>(n) * static_cast<std::size_t>(n) != dist.size())
        throw DomainError("distance matrix shape mismatch");
    double worst = -std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
        std::vector<double> w(static_cast<std::size_t>(n));
        double mean = 0.0;
        for (double& v : w) {
            v = gaussian(rng);
            mean += v;
        }
        mean /= n;
        for (double& v : w) v -= mean; // zero-sum
        double q = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                q += w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)] *
                     std::pow(dist[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                                   static_cast<std::size_t>(j)],
                              expo);
        worst = std::max(worst, q);
    }
    return worst;
}

} // namespace orlicz
