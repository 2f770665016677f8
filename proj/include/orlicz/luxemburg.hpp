#pragma once

#include <string>

#include "orlicz/orlicz_function.hpp"
#include "orlicz/sparse_vector.hpp"

namespace orlicz {

struct NormResult {
    double value = 0.0;     // the Luxemburg norm
    double residual = 0.0;  // modular_sum(M, x, value) - 1
    int iterations = 0;
};

// sum_i M(|x_i| / rho)
double modular_sum(const OrliczFunction& M, const SparseVector& x, double rho);

// Bisection on the strictly decreasing map rho -> modular_sum(M, x, rho);
// at the norm the modular equals 1 (within 1e-10). Empty vector has norm 0.
NormResult luxemburg_norm(const OrliczFunction& M, const SparseVector& x);

// sum_i M(|x_i|) vs ||x||: below the unit sphere the modular is <= the norm,
// above it is >= the norm.
struct LemmaCheck {
    std::string side;   // "below", "above", or "unit"
    bool holds = false;
    double margin = 0.0;
    double norm = 0.0;
    double modsum = 0.0;
};
LemmaCheck check_lemma_sum_vs_norm(const OrliczFunction& M, const SparseVector& x);

} // namespace orlicz
