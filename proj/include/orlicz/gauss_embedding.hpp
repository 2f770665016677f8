#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "orlicz/moduli.hpp"
#include "orlicz/sparse_vector.hpp"

namespace orlicz {

// Stacked Gaussian-kernel embedding of a ball in ell_2^d into ell_p,
// 1 <= p < 2. Each level n renormalizes the degree-<=K Taylor feature
// map of the kernel exp(-t_n |x-y|^2), then pushes the resulting unit
// vector through the Mazur map from the ell_2 sphere to the ell_p sphere
// and subtracts the image of the basepoint x0.
struct GaussParams {
    double p = 1.5;
    int levels = 12;
    int d = 4;                // ambient dimension: support of inputs is {1..d}
    int K = 12;               // feature degree cap; must be even
    double radius = 2.0;      // certified ball: |x|_2 <= radius
    double eps_trunc = 1e-6;  // per-level truncation budget
    bool enforce_trunc_budget = true;
    std::vector<double> t_schedule; // empty means t_n = 4^(-n), n = 1..levels
    SparseVector x0;          // basepoint, default 0
};

// Number of exponent vectors alpha in Z_{>=0}^d with |alpha| <= K.
std::int64_t feature_count(int d, int K);

// All such exponent vectors in ascending lexicographic order; this is the
// coordinate order used by phi.
std::vector<std::vector<int>> enumerate_exponents(int d, int K);

// The resolved level schedule (default t_n = 4^(-n)).
std::vector<double> gauss_schedule(const GaussParams& gp);

// Certified bound on tail(u)/exp(u) where tail is the Taylor remainder of
// exp beyond degree K at u >= 0. Returns 1 when no useful bound applies.
double tailfrac_bound(double u, int K);

// Bound on |rho_hat - rho| for the renormalized truncated kernel, given a
// tail fraction tau valid for both points. Infinity when uncertified.
double kernel_dev_bound(double tau);

// Per-level kernel deviation certificates e_n for points of ell_2 norm up
// to point_norm (default: the configured radius). +inf marks a level with
// no usable certificate.
std::vector<double> level_certificates(const GaussParams& gp,
                                       double point_norm = -1.0);

// Renormalized truncated feature map at one level: unit vector in ell_2
// whose inner products approximate exp(-t |x-y|^2). Throws OverflowError
// if the truncation budget is exceeded while enforcement is on.
std::vector<double> phi_dense(const GaussParams& gp, double t,
                              const std::vector<double>& x);
std::vector<double> phi(const GaussParams& gp, double t, const SparseVector& x);

// Inner product of two feature vectors (the approximate kernel value).
double feature_dot(const std::vector<double>& a, const std::vector<double>& b);

double l2_distance(const std::vector<double>& a, const std::vector<double>& b);

struct StackedEmbedding {
    // levels[n] holds mazur(phi at t_n) minus the same block at x0;
    // blocks are aligned by the shared exponent order.
    std::vector<std::vector<double>> levels;
    std::vector<double> t_schedule;
    std::vector<double> certificates; // e_n over the configured ball
};

StackedEmbedding stacked_embed(const GaussParams& gp, const SparseVector& x);
StackedEmbedding stacked_embed_dense(const GaussParams& gp, const std::vector<double>& x);

// ell_p distance of the concatenated stacks.
double stacked_distance(double p, const StackedEmbedding& a, const StackedEmbedding& b);

// rho1(s) = 2^(1/p) * C_hat * (sum_n (1 - exp(-t_n s^2)))^(1/p)
// rho2(s) = (2 sqrt(2)/p) * min(sum_n sqrt(t_n) * s, levels^(1/p))
// C_hat defaults to the proven Mazur lower constant 2^(1-2/p).
ModulusPair gauss_moduli(const GaussParams& gp,
                         double C_hat = std::numeric_limits<double>::quiet_NaN());

// Certified per-pair slack in distance units for distortion runs, given the
// larger of the two point norms: truncation deviation on certified levels,
// forfeited contributions on uncertified ones.
double gauss_pair_tolerance(const GaussParams& gp, double d_in, double max_point_norm,
                            double C_hat = std::numeric_limits<double>::quiet_NaN());

// Smallest eigenvalue of a dense symmetric matrix (row-major, n x n),
// via cyclic Jacobi rotations.
double min_eigenvalue_symmetric(std::vector<double> m, int n);

// Largest value of sum_{i,j} w_i w_j dist[i*n+j]^expo over random zero-sum
// weight vectors w; kernels of negative type keep this nonpositive up to
// rounding.
double max_negative_type_violation(const std::vector<double>& dist, int n,
                                   double expo, int trials, std::uint64_t seed);

} // namespace orlicz
