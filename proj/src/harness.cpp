#include "orlicz/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "orlicz/errors.hpp"
#include "orlicz/mazur.hpp"
#include "orlicz/parallel.hpp"
#include "orlicz/rng.hpp"

namespace orlicz {

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

double dyadic_value(const SamplePlan& plan, std::mt19937_64& rng) {
    double sign = uniform01(rng) < 0.5 ? -1.0 : 1.0;
    int e = uniform_int(rng, plan.scale_min, plan.scale_max);
    double v = std::ldexp(1.0, e);
    // Non-dyadic mantissas guard against dyadic-only artifacts; skipped at
    // the top scale so magnitudes stay within [2^scale_min, 2^scale_max].
    if (e < plan.scale_max && uniform01(rng) < plan.nondyadic_fraction)
        v *= 1.0 + uniform01(rng);
    return sign * v;
}

SparseVector random_sparse(const SamplePlan& plan, std::mt19937_64& rng) {
    int support = uniform_int(rng, 1, std::max(1, plan.max_support));
    std::vector<std::pair<std::int64_t, double>> entries;
    std::int64_t index_range = 4 * std::max<std::int64_t>(1, plan.max_support);
    while (static_cast<int>(entries.size()) < support) {
        std::int64_t idx = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(index_range));
        bool dup = false;
        for (const auto& [j, v] : entries) dup = dup || j == idx;
        if (dup) continue;
        entries.emplace_back(idx, dyadic_value(plan, rng));
    }
    return SparseVector::from_entries(entries);
}

// Relative dyadic nudge of magnitude 2^-j on one value.
double nudged(double v, int j, double sign) {
    int e = 0;
    std::frexp(v, &e);
    return v + sign * std::ldexp(1.0, e - 1 - j);
}

std::pair<SparseVector, SparseVector> dyadic_pair(const SamplePlan& plan,
                                                  std::mt19937_64& rng, std::size_t i) {
    SparseVector x = random_sparse(plan, rng);
    int mode = static_cast<int>(i % 4);
    if (mode == 0) {
        SparseVector y = random_sparse(plan, rng);
        if (SparseVector::subtract(x, y).empty()) mode = 2; // degenerate, nudge instead
        else return {x, y};
    }
    if (mode == 1) {
        std::vector<std::pair<std::int64_t, double>> entries;
        for (const auto& [idx, v] : x.entries()) {
            (void)v;
            entries.emplace_back(idx, dyadic_value(plan, rng));
        }
        SparseVector y = SparseVector::from_entries(entries);
        if (!SparseVector::subtract(x, y).empty()) return {x, y};
        mode = 2;
    }
    int j = uniform_int(rng, 1, 16);
    double sgn = uniform01(rng) < 0.5 ? -1.0 : 1.0;
    std::vector<std::pair<std::int64_t, double>> entries(x.entries().begin(), x.entries().end());
    if (mode == 2) {
        std::size_t pos = rng() % entries.size();
        entries[pos].second = nudged(entries[pos].second, j, sgn);
    } else {
        for (auto& [idx, v] : entries) {
            (void)idx;
            v = nudged(v, j, uniform01(rng) < 0.5 ? -1.0 : 1.0);
        }
    }
    SparseVector y = SparseVector::from_entries(entries);
    if (SparseVector::subtract(x, y).empty())
        throw Error("degenerate sample pair"); // unreachable: nudges are nonzero
    return {x, y};
}

std::pair<SparseVector, SparseVector> distance_pair(const SamplePlan& plan,
                                                    std::mt19937_64& rng, std::size_t i) {
    if (plan.d_grid.empty()) throw DomainError("pairs-at-distance needs a d_grid");
    double d = plan.d_grid[i % plan.d_grid.size()];
    if (!(d > 0.0)) throw DomainError("d_grid entries must be positive");
    int dim = std::max(1, plan.dim);
    std::vector<double> u(static_cast<std::size_t>(dim));
    double nrm = 0.0;
    do {
        nrm = 0.0;
        for (double& v : u) {
            v = gaussian(rng);
            nrm += v * v;
        }
        nrm = std::sqrt(nrm);
    } while (!(nrm > 1e-12));
    std::vector<std::pair<std::int64_t, double>> ex, ey;
    for (int k = 0; k < dim; ++k) {
        double c = 0.5 * d * u[static_cast<std::size_t>(k)] / nrm;
        if (c == 0.0) continue;
        ex.emplace_back(k + 1, c);
        ey.emplace_back(k + 1, -c);
    }
    return {SparseVector::from_entries(ex), SparseVector::from_entries(ey)};
}

} // namespace

std::pair<SparseVector, SparseVector> generate_pair(const SamplePlan& plan, std::size_t i) {
    std::mt19937_64 rng(derive_seed(plan.seed, static_cast<std::uint64_t>(i)));
    switch (plan.gen) {
        case SamplePlan::Gen::DyadicSparse:
            return dyadic_pair(plan, rng, i);
        case SamplePlan::Gen::Sphere: {
            SparseVector x = random_sphere_point(plan.sphere_p, plan.dim, rng);
            SparseVector y = random_sphere_point(plan.sphere_p, plan.dim, rng);
            return {x, y};
        }
        case SamplePlan::Gen::PairsAtDistance:
            return distance_pair(plan, rng, i);
    }
    throw Error("unknown generator");
}

DistortionReport run_distortion(const EmbeddingAdapter& adapter, const ModulusPair& moduli,
                                const SamplePlan& plan, double tol) {
    DistortionReport rep;
    rep.pairs.resize(plan.count);
    std::vector<std::pair<SparseVector, SparseVector>> witnesses(plan.count);
    parallel_for(plan.count, [&](std::size_t i) {
        auto [x, y] = generate_pair(plan, i);
        PairRecord r;
        try {
            r.d_in = adapter.input_distance(x, y);
            r.d_out = adapter.output_distance(x, y);
            r.tol = tol >= 0.0 ? tol
                               : (adapter.pair_tol ? adapter.pair_tol(x, y, r.d_in) : 1e-9);
            r.rho1 = moduli.rho1(r.d_in);
            r.rho2 = moduli.rho2(r.d_in);
            r.slack_lo = r.d_out - r.rho1;
            r.slack_hi = r.rho2 - r.d_out;
        } catch (const std::exception&) {
            r.eval_failed = true;
        }
        rep.pairs[i] = r;
        witnesses[i] = {std::move(x), std::move(y)};
    });

    rep.min_lower_slack = std::numeric_limits<double>::infinity();
    rep.min_upper_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rep.pairs.size(); ++i) {
        const PairRecord& r = rep.pairs[i];
        if (r.eval_failed) {
            ++rep.eval_failures;
            continue;
        }
        rep.min_lower_slack = std::min(rep.min_lower_slack, r.slack_lo);
        rep.min_upper_slack = std::min(rep.min_upper_slack, r.slack_hi);
        if (r.slack_lo < -r.tol || r.slack_hi < -r.tol) {
            Violation v;
            v.pair_index = i;
            v.rec = r;
            v.x = witnesses[i].first;
            v.y = witnesses[i].second;
            v.note = r.slack_lo < -r.tol ? "output below rho1" : "output above rho2";
            if (rep.violations.size() < 32) rep.violations.push_back(std::move(v));
        }
    }
    rep.curves = empirical_moduli(rep.pairs);
    return rep;
}

ModuliCurves empirical_moduli(const std::vector<PairRecord>& pairs) {
    std::map<int, Bucket> by_exp;
    for (const PairRecord& r : pairs) {
        if (r.eval_failed || !(r.d_in > 0.0)) continue;
        int e = static_cast<int>(std::floor(std::log2(r.d_in)));
        auto it = by_exp.find(e);
        if (it == by_exp.end()) {
            by_exp.emplace(e, Bucket{e, r.d_out, r.d_out, 1});
        } else {
            it->second.out_min = std::min(it->second.out_min, r.d_out);
            it->second.out_max = std::max(it->second.out_max, r.d_out);
            ++it->second.count;
        }
    }
    ModuliCurves c;
    for (const auto& [e, b] : by_exp) {
        (void)e;
        c.buckets.push_back(b);
    }
    c.lower_env.resize(c.buckets.size());
    c.upper_env.resize(c.buckets.size());
    double run = std::numeric_limits<double>::infinity();
    for (std::size_t i = c.buckets.size(); i-- > 0;) {
        run = std::min(run, c.buckets[i].out_min);
        c.lower_env[i] = run;
    }
    run = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.buckets.size(); ++i) {
        run = std::max(run, c.buckets[i].out_max);
        c.upper_env[i] = run;
    }
    return c;
}

SmallDistanceCheck small_distance_check(const DistortionReport& report,
                                        const ModulusPair& moduli,
                                        double threshold, double tol) {
    SmallDistanceCheck out;
    int limit_exp = static_cast<int>(std::floor(std::log2(threshold)));
    const Bucket* best = nullptr;
    for (const Bucket& b : report.curves.buckets)
        if (b.exp2 + 1 <= limit_exp && (!best || b.exp2 > best->exp2)) best = &b;
    if (!best) return out;
    out.applicable = true;
    out.bucket_exp = best->exp2;
    out.observed_max = best->out_max;
    out.bound = moduli.rho2(threshold) + tol;
    out.ok = out.observed_max < out.bound;
    return out;
}

} // namespace orlicz
