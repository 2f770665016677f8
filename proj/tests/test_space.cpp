#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "orlicz/luxemburg.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/rng.hpp"
#include "orlicz/sparse_vector.hpp"

using namespace orlicz;

TEST_CASE("sparse vector construction") {
    SparseVector x = SparseVector::from_entries({{5, 2.0}, {1, -3.0}, {9, 0.0}});
    REQUIRE(x.support() == 2);               // zero dropped
    CHECK(x.entries()[0].first == 1);        // sorted by index
    CHECK(x.entries()[0].second == -3.0);
    CHECK(x.entries()[1].first == 5);
    CHECK(x.max_abs() == 3.0);

    CHECK_THROWS_AS((void)SparseVector::from_entries({{1, 1.0}, {1, 2.0}}), Error);
    CHECK_THROWS_AS((void)SparseVector::from_entries({{0, 1.0}}), Error);
    CHECK_THROWS_AS((void)SparseVector::from_entries({{-2, 1.0}}), Error);
    CHECK_THROWS_AS((void)SparseVector::from_entries({{1, std::nan("")}}), Error);

    CHECK(SparseVector().empty());
    CHECK(SparseVector().max_abs() == 0.0);
}

TEST_CASE("lp norms of sparse vectors") {
    SparseVector x = SparseVector::from_entries({{1, 3.0}, {4, -4.0}});
    CHECK(x.lp_norm(1.0) == doctest::Approx(7.0).epsilon(1e-15));
    CHECK(x.l2_norm() == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(x.lp_norm(1.5)
          == doctest::Approx(std::pow(std::pow(3.0, 1.5) + 8.0, 1.0 / 1.5)).epsilon(1e-15));
    CHECK(SparseVector().lp_norm(2.0) == 0.0);
}

TEST_CASE("scaling and subtraction") {
    SparseVector x = SparseVector::from_entries({{1, 1.0}, {2, 2.0}});
    SparseVector y = SparseVector::from_entries({{2, 2.0}, {3, -1.0}});
    SparseVector d = SparseVector::subtract(x, y);
    REQUIRE(d.support() == 2);               // the shared entry cancels exactly
    CHECK(d.entries()[0] == SparseVector::Entry{1, 1.0});
    CHECK(d.entries()[1] == SparseVector::Entry{3, 1.0});
    CHECK(x.scaled(-2.0).entries()[1].second == -4.0);
    CHECK(x.scaled(0.0).empty());
    CHECK(SparseVector::subtract(x, x).empty());
}

TEST_CASE("modular sum") {
    OrliczFunction M = OrliczFunction::power(2.0);
    SparseVector x = SparseVector::from_entries({{1, 3.0}, {2, 4.0}});
    CHECK(modular_sum(M, x, 5.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(modular_sum(M, x, 10.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(modular_sum(M, SparseVector(), 1.0) == 0.0);
}

TEST_CASE("Luxemburg norm equals the lp norm for power functions") {
    SparseVector x = SparseVector::from_entries({{1, 3.0}, {7, -4.0}});
    NormResult r2 = luxemburg_norm(OrliczFunction::power(2.0), x);
    CHECK(r2.value == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(std::fabs(r2.residual) <= 1e-10);
    CHECK(r2.iterations <= 500);
    NormResult r1 = luxemburg_norm(OrliczFunction::power(1.0), x);
    CHECK(r1.value == doctest::Approx(7.0).epsilon(1e-12));

    std::mt19937_64 rng(derive_seed(42, 0));
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<SparseVector::Entry> entries;
        int support = 1 + static_cast<int>(rng() % 32);
        for (int k = 0; k < support; ++k) {
            double mag = std::ldexp(1.0, -10) *
                         std::pow(2.0, 20.0 * uniform01(rng));
            entries.push_back({k + 1, (rng() & 1) ? mag : -mag});
        }
        SparseVector v = SparseVector::from_entries(entries);
        for (double p : {1.0, 1.5, 2.0, 3.0}) {
            NormResult r = luxemburg_norm(OrliczFunction::power(p), v);
            CHECK(std::fabs(r.value - v.lp_norm(p)) <= 1e-10 * v.lp_norm(p));
        }
    }
}

TEST_CASE("norm of a single coordinate is its magnitude when M(1) = 1") {
    for (const char* spec : {"power:2", "power_log", "power:1.5"}) {
        OrliczFunction M = OrliczFunction::from_spec(spec);
        for (double v : {1e-3, 0.5, 1.0, 7.25}) {
            SparseVector x = SparseVector::from_entries({{3, -v}});
            CHECK(luxemburg_norm(M, x).value == doctest::Approx(v).epsilon(1e-11));
        }
    }
    CHECK(luxemburg_norm(OrliczFunction::power_log(), SparseVector()).value == 0.0);
}

TEST_CASE("norm is absolutely homogeneous") {
    OrliczFunction M = OrliczFunction::power_log();
    SparseVector x = SparseVector::from_entries({{1, 0.7}, {2, -0.1}, {5, 2.0}});
    double base = luxemburg_norm(M, x).value;
    for (double c : {0.001, 0.5, -3.0, 64.0}) {
        CHECK(luxemburg_norm(M, x.scaled(c)).value
              == doctest::Approx(std::fabs(c) * base).epsilon(1e-10));
    }
}

TEST_CASE("modular equals one at the norm") {
    std::mt19937_64 rng(derive_seed(7, 1));
    OrliczFunction Mlog = OrliczFunction::power_log();
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<SparseVector::Entry> entries;
        int support = 1 + static_cast<int>(rng() % 8);
        for (int k = 0; k < support; ++k)
            entries.push_back({k + 1, uniform(rng, -4.0, 4.0)});
        SparseVector v = SparseVector::from_entries(entries);
        if (v.empty()) continue;
        NormResult r = luxemburg_norm(Mlog, v);
        CHECK(std::fabs(modular_sum(Mlog, v, r.value) - 1.0) <= 1e-9);
    }
}

TEST_CASE("modular sum vs norm on both sides of the unit sphere") {
    OrliczFunction M = OrliczFunction::power_log();
    SparseVector base = SparseVector::from_entries({{1, 0.3}, {2, -0.4}, {3, 0.2}});
    double norm = luxemburg_norm(M, base).value;

    SparseVector small = base.scaled(0.5 / norm);
    LemmaCheck below = check_lemma_sum_vs_norm(M, small);
    CHECK(below.side == "below");
    CHECK(below.holds);
    CHECK(below.modsum <= below.norm + 1e-12);

    SparseVector big = base.scaled(3.0 / norm);
    LemmaCheck above = check_lemma_sum_vs_norm(M, big);
    CHECK(above.side == "above");
    CHECK(above.holds);
    CHECK(above.modsum >= above.norm - 1e-12);

    std::mt19937_64 rng(derive_seed(11, 2));
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<SparseVector::Entry> entries;
        int support = 1 + static_cast<int>(rng() % 6);
        for (int k = 0; k < support; ++k)
            entries.push_back({k + 1, uniform(rng, -2.0, 2.0)});
        SparseVector v = SparseVector::from_entries(entries);
        if (v.empty()) continue;
        CHECK(check_lemma_sum_vs_norm(M, v).holds);
    }
}
