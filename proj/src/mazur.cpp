#include "orlicz/mazur.hpp"

#include <cmath>

#include "orlicz/rng.hpp"

namespace orlicz {

double signed_power(double v, double r) {
    if (v == 0.0) return 0.0;
    const double m = std::pow(std::fabs(v), r);
    return v > 0 ? m : -m;
}

double mazur_lower_constant(const MazurParams& params) {
    return std::exp2(1.0 - params.p / params.q);
}

SparseVector mazur_map(const MazurParams& params, const SparseVector& x) {
    if (!(params.p >= 1.0) || !(params.q >= 1.0))
        throw DomainError("Mazur map needs p, q >= 1");
    const double nrm = x.lp_norm(params.p);
    if (std::fabs(nrm - 1.0) > 1e-9)
        throw DomainError("Mazur map input is not on the unit sphere");
    const double r = params.p / params.q;
    std::vector<SparseVector::Entry> out;
    out.reserve(x.support());
    for (const auto& e : x.entries())
        out.push_back({e.first, signed_power(e.second / nrm, r)});
    return SparseVector::from_entries(std::move(out));
}

SparseVector random_sphere_point(double p, int dim, std::mt19937_64& rng) {
    for (;;) {
        std::vector<SparseVector::Entry> es;
        es.reserve(dim);
        for (int i = 1; i <= dim; ++i) {
            const double g = gaussian(rng);
            if (g != 0.0) es.push_back({i, g});
        }
        if (es.empty()) continue;
        SparseVector v = SparseVector::from_entries(std::move(es));
        const double n = v.lp_norm(p);
        if (n > 0.0 && std::isfinite(n)) return v.scaled(1.0 / n);
    }
}

MazurBoundsReport check_mazur_bounds(const MazurParams& params, long pair_count,
                                     int dim, std::uint64_t seed) {
    if (!(params.p > params.q))
        throw DomainError("bounds check is for the p > q regime");
    MazurBoundsReport rep;
    rep.pairs = pair_count;
    rep.C_hat = std::numeric_limits<double>::infinity();
    const double r = params.p / params.q;

    for (long i = 0; i < pair_count; ++i) {
        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        SparseVector x = random_sphere_point(params.p, dim, rng);
        SparseVector y;
        const int mode = static_cast<int>(i % 20);
        if (mode < 14) {
            y = random_sphere_point(params.p, dim, rng);
        } else if (mode < 17) {
            // single-coordinate sign flip: the lower-constant equality case
            std::vector<SparseVector::Entry> es = x.entries();
            es[rng() % es.size()].second *= -1.0;
            y = SparseVector::from_entries(std::move(es));
        } else if (mode < 19) {
            std::vector<SparseVector::Entry> es = x.entries();
            for (auto& e : es) e.second += 1e-7 * gaussian(rng);
            SparseVector z = SparseVector::from_entries(std::move(es));
            y = z.scaled(1.0 / z.lp_norm(params.p));
        } else {
            y = x.scaled(-1.0);
        }

        const SparseVector mx = mazur_map(params, x);
        const SparseVector my = mazur_map(params, y);
        const double din = SparseVector::subtract(x, y).lp_norm(params.p);
        const double dout = SparseVector::subtract(mx, my).lp_norm(params.q);
        if (din == 0.0) continue;

        const double upper = r * din;
        if (dout > upper * (1.0 + 1e-12)) {
            rep.upper_holds = false;
            if (rep.witness_pair < 0) rep.witness_pair = i;
        }
        rep.max_upper_ratio = std::max(rep.max_upper_ratio, dout / din);
        rep.C_hat = std::min(rep.C_hat, dout / std::pow(din, r));
    }
    return rep;
}

} // namespace orlicz
