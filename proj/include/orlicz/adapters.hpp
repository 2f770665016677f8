#pragma once

#include <limits>

#include "orlicz/gauss_embedding.hpp"
#include "orlicz/harness.hpp"
#include "orlicz/mazur.hpp"
#include "orlicz/moduli.hpp"
#include "orlicz/tent_embedding.hpp"

namespace orlicz {

// Harness adapters pairing each embedding with its source/target metrics.

// Source metric: Luxemburg norm of the difference; target: ell_p on tents.
EmbeddingAdapter tent_adapter(const TentParams& tp);

// Source: ell_2; target: ell_p on the stacked features.
EmbeddingAdapter gauss_adapter(const GaussParams& gp,
                               double C_hat = std::numeric_limits<double>::quiet_NaN());

// Source: ell_p sphere; target: ell_q sphere.
EmbeddingAdapter mazur_adapter(const MazurParams& mp);
ModulusPair mazur_moduli(const MazurParams& mp,
                         double lower_c = std::numeric_limits<double>::quiet_NaN());

EmbeddingAdapter identity_adapter();
ModulusPair identity_moduli();

} // namespace orlicz
