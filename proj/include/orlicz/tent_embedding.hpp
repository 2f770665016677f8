#pragma once

#include <cstdint>
#include <vector>

#include "orlicz/moduli.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/sparse_vector.hpp"

namespace orlicz {

// Parameters for the tent-system embedding of h_M into ell_p.
// Requires a normalized M (M(1) = 1) and exponents 1 <= q < p with
// M(lambda t) >= C * lambda^q * M(t) on the dyadic grid (C from
// estimate_C, extended past t = 1 by the D correction).
struct TentParams {
    OrliczFunction M;
    double p = 2.0;
    double q = 1.5;
    double C = 1.0;          // extended lower-regularity constant
    double A = 0.0;          // upper constant 8*4^p*(1 + (1/C)/(1-2^(1-p/q)))
    double tail_eps = 1e-6;  // relative truncation budget per scalar pair
    int b_fine = -1;         // window override; -1 derives from tail_eps
    int b_coarse = -1;
    double beta_high = 0.0;  // echo of the index bracket used to pick q
};

// Derives q (if NaN) from the upper Matuszewska-Orlicz index, estimates C,
// and assembles A. Throws DomainError if p does not exceed the upper index.
TentParams make_tent_params(const OrliczFunction& M, double p,
                            double q = std::numeric_limits<double>::quiet_NaN(),
                            int J = 2048, double t_max = 1e4);

// Window widths (number of scales finer / coarser than the scale of |s-t|)
// needed so the discarded tail stays below tail_eps * M(|s-t|).
int tent_window_fine(const TentParams& tp);
int tent_window_coarse(const TentParams& tp);

// Dyadic scale N of d > 0: the unique integer with 2^(-(N+1)) < d <= 2^(-N).
int dyadic_scale(double d);

// Slope coefficient a_n = 2^(n+2) * M(2^(-(n+1)))^(1/p), computed in the
// log domain. Throws OverflowError if not representable as a double.
double tent_slope(const TentParams& tp, long n);

// Tent function f_{n,k} at t: supported on [(k-1)h, (k-1)h + 4h] with
// h = 2^(-(n+1)), rising to a_n * 2^(-n) at the midpoint, slope +-a_n.
double tent_eval(const TentParams& tp, long n, std::int64_t k, double t);

struct SandwichSum {
    double sum = 0.0;        // sum over the window of |f_{n,k}(s)-f_{n,k}(t)|^p
    double tail_bound = 0.0; // certified bound on the omitted scales
    long n_lo = 0, n_hi = 0; // window actually used
};

// Windowed scalar sum with certified truncation error. The invariant
//   C * M(|s-t|) - tail <= sum <= A * M(|s-t|) + tail
// holds for every s, t; the lower witness is a single rising-branch term.
SandwichSum scalar_sandwich_sum(const TentParams& tp, double s, double t);

struct TentCoordinates {
    struct Entry {
        std::int64_t i; // source coordinate
        std::int64_t n; // scale
        std::int64_t k; // translate
        double v;
    };
    std::vector<Entry> entries; // sorted by (i, n, k)
};

// Per-coordinate tent features relative to the basepoint 0: entries are
// f_{n,k}(x_i) - f_{n,k}(0) over the window around the scale of |x_i|.
TentCoordinates embed_vector(const TentParams& tp, const SparseVector& x);

// ell_p distance between two coordinate sets (merge by key).
double tent_lp_distance(double p, const TentCoordinates& a, const TentCoordinates& b);

// rho1(t) = C^(1/p) t^(q/p) for t < 1, t^(1/p) for t >= 1;
// rho2(t) = A^(1/p) t^(1/p) for t <= 1, (A/C)^(1/p) t^(q/p) for t > 1.
ModulusPair tent_moduli(const TentParams& tp);

// Reported per-pair tolerance for distortion runs: the certified truncation
// slack converted to distance units, plus a fixed rounding floor.
double tent_pair_tolerance(const TentParams& tp, double d_in);

} // namespace orlicz
