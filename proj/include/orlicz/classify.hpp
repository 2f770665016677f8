#pragma once

#include <array>
#include <string>
#include <vector>

#include "orlicz/indices.hpp"

namespace orlicz {

// Decision table for coarse/uniform embeddability of h_M into h_N, driven
// by the upper Matuszewska-Orlicz indices beta_M, beta_N in [1, inf].

enum class VerdictKind {
    StrongUniformEmbeds,
    NoCoarseNoUniform,
    NotDeterminedByIndices,
    OpenProblem,
};

const char* verdict_name(VerdictKind k);

struct Verdict {
    VerdictKind kind;
    int case_id = 0; // 1..4 for the index table, 0 for the ell_p rule
    std::string rationale;
    double betaM_lo = 0, betaM_hi = 0, betaN_lo = 0, betaN_hi = 0; // inputs echo
};

struct Bracket {
    double lo, hi;
    Bracket(double l, double h);       // requires lo <= hi
    static Bracket exact(double v) { return Bracket(v, v); }
    bool is_exact() const { return lo == hi; }
    bool contains(double v) const { return lo <= v && v <= hi; }
};

// The four case predicates evaluated independently; exactly one holds for
// every (betaM, betaN) in [1, inf]^2.
std::array<bool, 4> orlicz_case_flags(double betaM, double betaN);
int orlicz_case(double betaM, double betaN);

Verdict classify_orlicz_exact(double betaM, double betaN);

struct VerdictSet {
    std::vector<Verdict> verdicts; // distinct cases, ascending case id
    bool boundary = false;         // true when more than one case is possible
};

// Evaluates the table over everything the brackets allow. Never picks a
// silent midpoint: if the brackets straddle a case boundary, all reachable
// verdicts are returned and the boundary flag is set.
VerdictSet classify_orlicz(Bracket betaM, Bracket betaN);

// ell_p into ell_q: embeds iff p <= q or p <= 2.
Verdict classify_lp(double p, double q);

struct Obstruction {
    bool blocked;
    std::string rationale;
};

// Mendel-Naor metric cotype obstruction: a coarse or uniform embedding
// forces qX <= qY when the target has nontrivial type.
Obstruction cotype_obstruction(double qX, double qY, bool target_has_nontrivial_type);

// Index table refined by the symmetric basis evidence: when the source
// bracket contains 2, the target index is at most 2, and the basis series
// vanishes, the case-3 verdict is reported with a rationale citing the
// symmetric basis criterion.
VerdictSet classify_orlicz_with_evidence(Bracket betaM, Bracket betaN, Trend basis_trend);

} // namespace orlicz
