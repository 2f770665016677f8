#include "orlicz/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string case_rationale(int case_id) {
    switch (case_id) {
        case 1:
            return "strong uniform embedding exists: beta_M < beta_N, or "
                   "beta_N <= beta_M < 2, or both upper indices are infinite";
        case 2:
            return "no coarse or uniform embedding: beta_M > 2 gives h_M cotype "
                   "max(2, beta_M) above the target's, and the Mendel-Naor metric "
                   "cotype theorem forbids such embeddings into a space of "
                   "nontrivial type";
        case 3:
            return "not determined by the indices: beta_M = 2 admits both "
                   "embeddable spaces and spaces excluded by the symmetric basis "
                   "criterion";
        case 4:
            return "open problem: equal upper indices above 2 are not decided by "
                   "any known criterion";
        default:
            throw Error("unknown case id");
    }
}

} // namespace

const char* verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::StrongUniformEmbeds: return "StrongUniformEmbeds";
        case VerdictKind::NoCoarseNoUniform: return "NoCoarseNoUniform";
        case VerdictKind::NotDeterminedByIndices: return "NotDeterminedByIndices";
        case VerdictKind::OpenProblem: return "OpenProblem";
    }
    throw Error("unknown verdict kind");
}

Bracket::Bracket(double l, double h) : lo(l), hi(h) {
    if (std::isnan(l) || std::isnan(h) || l > h || l < 1.0)
        throw DomainError("invalid index bracket");
}

std::array<bool, 4> orlicz_case_flags(double betaM, double betaN) {
    if (std::isnan(betaM) || std::isnan(betaN) || betaM < 1.0 || betaN < 1.0)
        throw DomainError("indices must lie in [1, inf]");
    bool m_inf = std::isinf(betaM), n_inf = std::isinf(betaN);
    std::array<bool, 4> f{};
    f[0] = (betaM < betaN) || (betaN <= betaM && betaM < 2.0) || (m_inf && n_inf);
    f[1] = betaM > 2.0 && betaN < betaM;
    f[2] = betaN <= betaM && betaM == 2.0;
    f[3] = betaM > 2.0 && betaM == betaN && !m_inf;
    return f;
}

int orlicz_case(double betaM, double betaN) {
    std::array<bool, 4> f = orlicz_case_flags(betaM, betaN);
    int id = 0;
    for (int i = 0; i < 4; ++i)
        if (f[static_cast<std::size_t>(i)]) {
            if (id != 0) throw Error("case table fired twice");
            id = i + 1;
        }
    if (id == 0) throw Error("case table fired never");
    return id;
}

Verdict classify_orlicz_exact(double betaM, double betaN) {
    int id = orlicz_case(betaM, betaN);
    Verdict v;
    v.case_id = id;
    switch (id) {
        case 1: v.kind = VerdictKind::StrongUniformEmbeds; break;
        case 2: v.kind = VerdictKind::NoCoarseNoUniform; break;
        case 3: v.kind = VerdictKind::NotDeterminedByIndices; break;
        default: v.kind = VerdictKind::OpenProblem; break;
    }
    v.rationale = case_rationale(id);
    v.betaM_lo = v.betaM_hi = betaM;
    v.betaN_lo = v.betaN_hi = betaN;
    return v;
}

VerdictSet classify_orlicz(Bracket betaM, Bracket betaN) {
    // The table only changes across betaM = betaN and betaM = 2, so probing
    // the corners, midpoints, threshold neighborhoods, and the diagonal
    // reaches every case the brackets allow.
    auto candidates = [](const Bracket& b, const Bracket& other) {
        std::vector<double> c{b.lo, b.hi};
        if (std::isfinite(b.lo) && std::isfinite(b.hi)) c.push_back(0.5 * (b.lo + b.hi));
        for (double v : {2.0, std::nextafter(2.0, 1.0), std::nextafter(2.0, 3.0),
                         other.lo, other.hi})
            c.push_back(std::min(b.hi, std::max(b.lo, v)));
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        return c;
    };
    std::vector<double> cm = candidates(betaM, betaN);
    std::vector<double> cn = candidates(betaN, betaM);

    bool seen[4] = {false, false, false, false};
    for (double m : cm)
        for (double n : cn) seen[orlicz_case(m, n) - 1] = true;
    for (double m : cm)
        if (betaN.contains(m)) seen[orlicz_case(m, m) - 1] = true;

    VerdictSet out;
    for (int id = 1; id <= 4; ++id) {
        if (!seen[id - 1]) continue;
        Verdict v;
        v.case_id = id;
        v.kind = id == 1   ? VerdictKind::StrongUniformEmbeds
                 : id == 2 ? VerdictKind::NoCoarseNoUniform
                 : id == 3 ? VerdictKind::NotDeterminedByIndices
                           : VerdictKind::OpenProblem;
        v.rationale = case_rationale(id);
        v.betaM_lo = betaM.lo;
        v.betaM_hi = betaM.hi;
        v.betaN_lo = betaN.lo;
        v.betaN_hi = betaN.hi;
        out.verdicts.push_back(v);
    }
    out.boundary = out.verdicts.size() > 1;
    return out;
}

Verdict classify_lp(double p, double q) {
    if (!(p >= 1.0) || !(q >= 1.0)) throw DomainError("need p, q >= 1");
    Verdict v;
    v.case_id = 0;
    v.betaM_lo = v.betaM_hi = p;
    v.betaN_lo = v.betaN_hi = q;
    if (p <= q || p <= 2.0) {
        v.kind = VerdictKind::StrongUniformEmbeds;
        v.rationale = "ell_p strongly uniformly embeds into ell_q exactly when "
                      "p <= q or p <= 2; this pair satisfies it";
    } else {
        v.kind = VerdictKind::NoCoarseNoUniform;
        v.rationale = "ell_p with p > 2 does not coarsely or uniformly embed into "
                      "ell_q for q < p (metric cotype obstruction)";
    }
    return v;
}

Obstruction cotype_obstruction(double qX, double qY, bool target_has_nontrivial_type) {
    if (!(qX >= 2.0) || !(qY >= 2.0)) throw DomainError("cotype indices are >= 2");
    Obstruction o;
    o.blocked = target_has_nontrivial_type && qX > qY;
    if (o.blocked)
        o.rationale = "blocked: source cotype exceeds target cotype and the target "
                      "has nontrivial type, so the Mendel-Naor theorem rules out "
                      "coarse and uniform embeddings";
    else
        o.rationale = "not blocked: qX <= qY or the target lacks nontrivial type";
    return o;
}

VerdictSet classify_orlicz_with_evidence(Bracket betaM, Bracket betaN, Trend basis_trend) {
    VerdictSet base = classify_orlicz(betaM, betaN);
    bool straddles_two = betaM.contains(2.0);
    bool target_at_most_two = betaN.hi <= 2.0;
    if (straddles_two && target_at_most_two && basis_trend == Trend::Vanishing) {
        Verdict v = classify_orlicz_exact(2.0, std::min(betaN.hi, 2.0));
        v.betaM_lo = betaM.lo;
        v.betaM_hi = betaM.hi;
        v.betaN_lo = betaN.lo;
        v.betaN_hi = betaN.hi;
        v.rationale += "; here the symmetric basis series "
                       "n^(-1/2) ||sum_{i<=n} e_i|| has vanishing trend, so the "
                       "symmetric basis criterion excludes a strong uniform "
                       "embedding into ell_2";
        VerdictSet out;
        out.verdicts.push_back(v);
        out.boundary = false;
        return out;
    }
    return base;
}

} // namespace orlicz
