#pragma once

#include <cstdint>
#include <random>

#include "orlicz/sparse_vector.hpp"

namespace orlicz {

struct MazurParams {
    double p = 2.0;  // source sphere S_{l_p}
    double q = 1.0;  // target sphere S_{l_q}
};

// |v|^r * sign(v)
double signed_power(double v, double r);

// Coordinatewise |x_i|^(p/q) sign(x_i). Input must lie on S_{l_p} within
// 1e-9 (renormalized); farther inputs are rejected so harness bugs surface.
SparseVector mazur_map(const MazurParams& params, const SparseVector& x);

// Dimension-free lower constant 2^(1-p/q) for p >= q: the scalar bound
// |g(s)-g(t)| >= 2^(1-r) |s-t|^r with r = p/q sums through l_q because
// r*q = p, and single-coordinate sign flips attain equality.
double mazur_lower_constant(const MazurParams& params);

struct MazurBoundsReport {
    long pairs = 0;
    bool upper_holds = true;
    double max_upper_ratio = 0.0;  // max ||Mx-My||_q / ||x-y||_p, must be <= p/q
    double C_hat = 0.0;            // min ||Mx-My||_q / ||x-y||_p^(p/q)
    long witness_pair = -1;        // first upper violation, if any
};

// Samples sphere pairs with a battery that includes the extremal sign-flip
// and antipodal configurations, so C_hat converges to the provable constant
// instead of drifting with dimension.
MazurBoundsReport check_mazur_bounds(const MazurParams& params, long pair_count,
                                     int dim, std::uint64_t seed);

// Gaussian direction normalized to S_{l_p}; support is {1..dim}.
SparseVector random_sphere_point(double p, int dim, std::mt19937_64& rng);

} // namespace orlicz
