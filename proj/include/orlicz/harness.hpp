#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "orlicz/moduli.hpp"
#include "orlicz/sparse_vector.hpp"

namespace orlicz {

// Sampling-based certification of coarse/uniform embedding estimates:
// falsify or support rho1(d_in) <= d_out <= rho2(d_in) on random pairs.

struct SamplePlan {
    enum class Gen { DyadicSparse, Sphere, PairsAtDistance };
    Gen gen = Gen::DyadicSparse;
    std::size_t count = 1000;
    std::uint64_t seed = 1;
    // dyadic-sparse: random sparse vectors with dyadic magnitudes 2^e,
    // e in [scale_min, scale_max], plus a fraction of non-dyadic mantissas.
    int max_support = 8;
    int scale_min = -10, scale_max = 10;
    double nondyadic_fraction = 0.25;
    // sphere: pairs of uniform points on the unit sphere of ell_p.
    double sphere_p = 2.0;
    int dim = 8;
    // pairs-at-distance: antipodal pairs x = (d/2)u, y = -(d/2)u with the
    // input distance d cycling through d_grid.
    std::vector<double> d_grid;
};

// Deterministic: pair i depends only on (plan, i), never on thread order.
std::pair<SparseVector, SparseVector> generate_pair(const SamplePlan& plan, std::size_t i);

struct EmbeddingAdapter {
    std::string name;
    // Distance in the source metric.
    std::function<double(const SparseVector&, const SparseVector&)> input_distance;
    // Distance between the two images in the target metric.
    std::function<double(const SparseVector&, const SparseVector&)> output_distance;
    // Certified per-pair slack (tail/truncation bound plus rounding floor);
    // null means a bare 1e-9 floor.
    std::function<double(const SparseVector&, const SparseVector&, double d_in)> pair_tol;
};

struct PairRecord {
    double d_in = 0, d_out = 0;
    double rho1 = 0, rho2 = 0;
    double slack_lo = 0, slack_hi = 0; // d_out - rho1, rho2 - d_out
    double tol = 0;
    bool eval_failed = false;
};

struct Violation {
    std::size_t pair_index;
    PairRecord rec;
    SparseVector x, y;
    std::string note;
};

struct Bucket {
    int exp2;                  // bucket covers d_in in [2^exp2, 2^(exp2+1))
    double out_min, out_max;
    std::size_t count;
};

struct ModuliCurves {
    std::vector<Bucket> buckets;      // ascending exp2
    std::vector<double> lower_env;    // running min from the right: nondecreasing
    std::vector<double> upper_env;    // running max from the left: nondecreasing
};

struct DistortionReport {
    std::vector<PairRecord> pairs;
    double min_lower_slack = 0, min_upper_slack = 0;
    std::size_t eval_failures = 0;
    std::vector<Violation> violations; // nonempty iff some slack < -tol
    ModuliCurves curves;
    bool ok() const { return violations.empty(); }
};

// Evaluates both modulus bounds on every sampled pair. tol >= 0 overrides
// the adapter's own per-pair tolerance; pass a negative tol to use it.
DistortionReport run_distortion(const EmbeddingAdapter& adapter, const ModulusPair& moduli,
                                const SamplePlan& plan, double tol = -1.0);

// Recomputes the bucketed min/max curves with monotone envelopes.
ModuliCurves empirical_moduli(const std::vector<PairRecord>& pairs);

struct SmallDistanceCheck {
    bool applicable = false; // a bucket entirely below the threshold exists
    bool ok = false;
    int bucket_exp = 0;
    double observed_max = 0;
    double bound = 0;
};

// Uniform-embedding side: the largest bucket below `threshold` must have
// max output distance < rho2(threshold) + tol.
SmallDistanceCheck small_distance_check(const DistortionReport& report,
                                        const ModulusPair& moduli,
                                        double threshold = 0.0009765625, // 2^-10
                                        double tol = 1e-9);

} // namespace orlicz
