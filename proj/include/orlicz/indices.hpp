#pragma once

#include <limits>
#include <string>
#include <vector>

#include "orlicz/orlicz_function.hpp"

namespace orlicz {

// Brackets for the lower/upper Matuszewska-Orlicz indices, estimated on the
// dyadic grid lambda, t in {2^-j : 0 <= j <= J} by bisection on q against
// floor/ceiling feasibility of the ratio M(lambda*t)/(M(lambda)*t^q).
struct IndexEstimate {
    double alpha_low = 1.0, alpha_high = 1.0;
    double beta_low = 1.0, beta_high = 1.0;   // beta_high may be +inf
    int J = 0;         // requested dyadic depth
    int J_used = 0;    // after truncating to the all-positive prefix
    long samples = 0;  // number of function evaluations
    bool grid_truncated = false;
    struct Probe { char which; double q; bool feasible; };
    std::vector<Probe> trace;

    double beta_mid() const {
        if (std::isinf(beta_high)) return beta_high;
        return 0.5 * (beta_low + beta_high);
    }
};

IndexEstimate estimate_indices(const OrliczFunction& M, int J = 8192);

// The constant C of the power-law lower bound M(lambda*t) >= C*M(lambda)*t^q
// on the dyadic grid, with the extension constant C_ext = C/D valid for all
// lambda (D absorbs growth above 1).
struct ConstantEstimate {
    double q = 0.0;
    double C = 0.0;          // grid inf over lambda, t in (0,1]
    double D = 1.0;          // max(1, grid sup of M(t)/t^q on (1, t_max])
    double C_ext = 0.0;      // C / D
    double lambda_at_min = 1.0, t_at_min = 1.0;
    bool boundary = false;   // q <= the supplied beta_high hint
};

ConstantEstimate estimate_C(const OrliczFunction& M, double q, int J = 2048,
                            double t_max = 1e4,
                            double beta_high_hint = std::numeric_limits<double>::quiet_NaN());

// Cotype of h_M: max(2, midpoint of the beta bracket); +inf sentinel passes through.
double cotype(const IndexEstimate& est);
double cotype(const OrliczFunction& M, int J = 8192);

enum class Trend { Vanishing, BoundedAway, Inconclusive };
std::string trend_name(Trend t);

// Shared rule: vanishing needs the series strictly decreasing over its last
// 10 points and last < 0.1 * first; bounded-away needs last >= 0.5 * first.
Trend classify_trend(const std::vector<double>& series);

// c_n = M(t_n)^(1/2) / t_n = n^(-1/2) * ||sum_{i<=n} e_i||, t_n = inverse(M, 1/n),
// over dyadic n = 2^k, k = 0..40. The liminf of c_n being 0 certifies
// non-embeddability into Hilbert space (symmetric-basis criterion). The trend
// thresholds act on the squared series r_n = c_n^2 = M(t_n)/t_n^2, the ratio
// that the criterion actually drives to 0; see basis_criterion notes.
struct BasisCriterionSeries {
    std::vector<double> ns;   // 2^k
    std::vector<double> cs;   // c_n
    std::vector<double> rs;   // r_n = c_n^2
    Trend trend = Trend::Inconclusive;
};
BasisCriterionSeries basis_criterion(const OrliczFunction& M);

// M(2^-j)/2^-2j for j = 1..40, classified with the same trend rule.
Trend small_scale_ratio_limit(const OrliczFunction& M);
std::vector<double> small_scale_ratio_series(const OrliczFunction& M);

} // namespace orlicz
