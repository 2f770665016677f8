#pragma once

#include <functional>
#include <string>

namespace orlicz {

// Compression/expansion moduli: rho1(d_in) <= d_out <= rho2(d_in).
// Both nondecreasing; rho1 unbounded for coarse embeddings.
struct ModulusPair {
    std::function<double(double)> rho1, rho2;
    std::string form1, form2;   // closed forms, echoed in reports
};

} // namespace orlicz
