#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <set>

#include "orlicz/adapters.hpp"
#include "orlicz/harness.hpp"

using namespace orlicz;

TEST_CASE("pair generation is deterministic in (plan, index)") {
    SamplePlan plan;
    plan.seed = 99;
    for (std::size_t i : {std::size_t{0}, std::size_t{7}, std::size_t{123}}) {
        auto a = generate_pair(plan, i);
        auto b = generate_pair(plan, i);
        CHECK(a.first == b.first);
        CHECK(a.second == b.second);
    }
    CHECK_FALSE(generate_pair(plan, 1).first == generate_pair(plan, 2).first);
}

TEST_CASE("dyadic sparse pairs respect the plan limits") {
    SamplePlan plan;
    plan.max_support = 5;
    plan.scale_min = -6;
    plan.scale_max = 3;
    for (std::size_t i = 0; i < 200; ++i) {
        auto [x, y] = generate_pair(plan, i);
        for (const auto& v : {x, y}) {
            CHECK(v.support() <= 5);
            for (const auto& [idx, val] : v.entries()) {
                CHECK(idx >= 1);
                CHECK(std::fabs(val) >= std::ldexp(1.0, -7));
                CHECK(std::fabs(val) <= std::ldexp(1.0, 4));
            }
        }
        CHECK_FALSE(SparseVector::subtract(x, y).empty()); // pairs are distinct
        if (i % 4 == 1) { // shared-support mode
            std::set<std::int64_t> sx, sy;
            for (const auto& [idx, val] : x.entries()) sx.insert(idx);
            for (const auto& [idx, val] : y.entries()) sy.insert(idx);
            CHECK(sx == sy);
        }
        if (i % 4 == 2) { // single-nudge mode: y differs in exactly one entry
            CHECK(SparseVector::subtract(x, y).support() == 1);
        }
    }
}

TEST_CASE("sphere pairs live on the sphere") {
    SamplePlan plan;
    plan.gen = SamplePlan::Gen::Sphere;
    plan.sphere_p = 1.5;
    plan.dim = 6;
    for (std::size_t i = 0; i < 50; ++i) {
        auto [x, y] = generate_pair(plan, i);
        CHECK(x.lp_norm(1.5) == doctest::Approx(1.0).epsilon(1e-11));
        CHECK(y.lp_norm(1.5) == doctest::Approx(1.0).epsilon(1e-11));
    }
}

TEST_CASE("pairs-at-distance cycle through the grid antipodally") {
    SamplePlan plan;
    plan.gen = SamplePlan::Gen::PairsAtDistance;
    plan.dim = 4;
    plan.d_grid = {0.25, 1.0, 8.0};
    for (std::size_t i = 0; i < 30; ++i) {
        auto [x, y] = generate_pair(plan, i);
        double want = plan.d_grid[i % 3];
        CHECK(SparseVector::subtract(x, y).l2_norm() == doctest::Approx(want).epsilon(1e-12));
        CHECK(SparseVector::subtract(x, y.scaled(-1.0)).l2_norm() <= 1e-12 * want);
    }
}

TEST_CASE("identity run is clean and fills the report") {
    SamplePlan plan;
    plan.count = 300;
    plan.seed = 5;
    DistortionReport rep = run_distortion(identity_adapter(), identity_moduli(), plan, 1e-12);
    CHECK(rep.ok());
    CHECK(rep.pairs.size() == 300);
    CHECK(rep.eval_failures == 0);
    CHECK(rep.min_lower_slack >= -1e-12);
    CHECK(rep.min_upper_slack >= -1e-12);
    CHECK(rep.min_lower_slack <= 1e-9);   // identity sits exactly on both moduli
    REQUIRE(!rep.curves.buckets.empty());

    std::size_t bucketed = 0;
    for (std::size_t i = 0; i < rep.curves.buckets.size(); ++i) {
        const Bucket& b = rep.curves.buckets[i];
        bucketed += b.count;
        CHECK(b.out_min <= b.out_max);
        if (i > 0) {
            CHECK(rep.curves.buckets[i - 1].exp2 < b.exp2);
            CHECK(rep.curves.lower_env[i] >= rep.curves.lower_env[i - 1]);
            CHECK(rep.curves.upper_env[i] >= rep.curves.upper_env[i - 1]);
        }
        CHECK(rep.curves.lower_env[i] <= b.out_min + 1e-15);
        CHECK(rep.curves.upper_env[i] >= b.out_max - 1e-15);
    }
    CHECK(bucketed == rep.pairs.size());

    ModuliCurves again = empirical_moduli(rep.pairs);
    REQUIRE(again.buckets.size() == rep.curves.buckets.size());
    for (std::size_t i = 0; i < again.buckets.size(); ++i) {
        CHECK(again.buckets[i].out_min == rep.curves.buckets[i].out_min);
        CHECK(again.upper_env[i] == rep.curves.upper_env[i]);
    }
}

TEST_CASE("violations are detected, witnessed, and capped") {
    SamplePlan plan;
    plan.count = 200;
    // A lower modulus the identity map cannot satisfy.
    ModulusPair wrong{[](double t) { return 2.0 * t; }, [](double t) { return 3.0 * t; },
                      "2t", "3t"};
    DistortionReport rep = run_distortion(identity_adapter(), wrong, plan, 1e-12);
    CHECK_FALSE(rep.ok());
    CHECK(rep.min_lower_slack < 0.0);
    CHECK(!rep.violations.empty());
    CHECK(rep.violations.size() <= 32);
    for (const auto& v : rep.violations) {
        CHECK(v.rec.slack_lo < -v.rec.tol);
        CHECK_FALSE(v.x.empty());
        CHECK_FALSE(v.note.empty());
    }
}

TEST_CASE("adapter tolerance is honored unless overridden") {
    SamplePlan plan;
    plan.count = 100;
    EmbeddingAdapter ad = identity_adapter();
    ad.output_distance = [](const SparseVector& a, const SparseVector& b) {
        return SparseVector::subtract(a, b).l2_norm() * (1.0 + 3e-7);
    };
    ad.pair_tol = [](const SparseVector&, const SparseVector&, double d) { return 1e-6 * d; };
    // Relative inflation 3e-7 sits inside the adapter's 1e-6 relative tolerance.
    CHECK(run_distortion(ad, identity_moduli(), plan).ok());
    // A tighter override flags it.
    CHECK_FALSE(run_distortion(ad, identity_moduli(), plan, 1e-12).ok());
}

TEST_CASE("small-distance check") {
    SamplePlan plan;
    plan.gen = SamplePlan::Gen::PairsAtDistance;
    plan.dim = 3;
    plan.count = 400;
    for (int e = -14; e <= 2; ++e) plan.d_grid.push_back(std::ldexp(1.0, e));
    DistortionReport rep = run_distortion(identity_adapter(), identity_moduli(), plan, 1e-12);
    SmallDistanceCheck sd = small_distance_check(rep, identity_moduli());
    CHECK(sd.applicable);
    CHECK(sd.ok);
    CHECK(sd.bucket_exp <= -11);  // the bucket must sit fully below 2^-10
    CHECK(sd.observed_max <= sd.bound);

    // No pairs below the threshold: the check reports not-applicable.
    SamplePlan coarse = plan;
    coarse.d_grid = {1.0, 2.0};
    DistortionReport rep2 =
        run_distortion(identity_adapter(), identity_moduli(), coarse, 1e-12);
    CHECK_FALSE(small_distance_check(rep2, identity_moduli()).applicable);
}

TEST_CASE("mazur adapter round trip through the harness") {
    MazurParams mp{2.0, 1.0};
    SamplePlan plan;
    plan.gen = SamplePlan::Gen::Sphere;
    plan.sphere_p = mp.p;
    plan.dim = 6;
    plan.count = 300;
    DistortionReport rep = run_distortion(mazur_adapter(mp), mazur_moduli(mp), plan);
    CHECK(rep.ok());
    CHECK(rep.eval_failures == 0);
}

TEST_CASE("thread count does not change the report") {
    SamplePlan plan;
    plan.count = 128;
    plan.seed = 1234;
    setenv("ORLICZ_THREADS", "1", 1);
    DistortionReport serial = run_distortion(identity_adapter(), identity_moduli(), plan);
    setenv("ORLICZ_THREADS", "7", 1);
    DistortionReport parallel = run_distortion(identity_adapter(), identity_moduli(), plan);
    unsetenv("ORLICZ_THREADS");
    REQUIRE(serial.pairs.size() == parallel.pairs.size());
    for (std::size_t i = 0; i < serial.pairs.size(); ++i) {
        CHECK(serial.pairs[i].d_in == parallel.pairs[i].d_in);
        CHECK(serial.pairs[i].d_out == parallel.pairs[i].d_out);
    }
    CHECK(serial.min_lower_slack == parallel.min_lower_slack);
}
