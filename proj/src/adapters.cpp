#include "orlicz/adapters.hpp"

#include <algorithm>
#include <cmath>

#include "orlicz/luxemburg.hpp"

namespace orlicz {

EmbeddingAdapter tent_adapter(const TentParams& tp) {
    EmbeddingAdapter a;
    a.name = "tent";
    a.input_distance = [tp](const SparseVector& x, const SparseVector& y) {
        return luxemburg_norm(tp.M, SparseVector::subtract(x, y)).value;
    };
    a.output_distance = [tp](const SparseVector& x, const SparseVector& y) {
        return tent_lp_distance(tp.p, embed_vector(tp, x), embed_vector(tp, y));
    };
    a.pair_tol = [tp](const SparseVector&, const SparseVector&, double d_in) {
        return tent_pair_tolerance(tp, d_in);
    };
    return a;
}

EmbeddingAdapter gauss_adapter(const GaussParams& gp, double C_hat) {
    EmbeddingAdapter a;
    a.name = "gauss";
    a.input_distance = [](const SparseVector& x, const SparseVector& y) {
        return SparseVector::subtract(x, y).lp_norm(2.0);
    };
    a.output_distance = [gp](const SparseVector& x, const SparseVector& y) {
        return stacked_distance(gp.p, stacked_embed(gp, x), stacked_embed(gp, y));
    };
    a.pair_tol = [gp, C_hat](const SparseVector& x, const SparseVector& y, double d_in) {
        double mx = std::max(x.lp_norm(2.0), y.lp_norm(2.0));
        return gauss_pair_tolerance(gp, d_in, mx, C_hat);
    };
    return a;
}

EmbeddingAdapter mazur_adapter(const MazurParams& mp) {
    EmbeddingAdapter a;
    a.name = "mazur";
    a.input_distance = [mp](const SparseVector& x, const SparseVector& y) {
        return SparseVector::subtract(x, y).lp_norm(mp.p);
    };
    a.output_distance = [mp](const SparseVector& x, const SparseVector& y) {
        return SparseVector::subtract(mazur_map(mp, x), mazur_map(mp, y)).lp_norm(mp.q);
    };
    a.pair_tol = nullptr;
    return a;
}

ModulusPair mazur_moduli(const MazurParams& mp, double lower_c) {
    double r = mp.p / mp.q;
    double c = std::isnan(lower_c) ? mazur_lower_constant(mp) : lower_c;
    ModulusPair m;
    m.rho1 = [c, r](double t) { return t <= 0.0 ? 0.0 : c * std::pow(t, r); };
    m.rho2 = [r](double t) { return t <= 0.0 ? 0.0 : r * t; };
    m.form1 = "c t^(p/q) with c = 2^(1-p/q)";
    m.form2 = "(p/q) t";
    return m;
}

EmbeddingAdapter identity_adapter() {
    EmbeddingAdapter a;
    a.name = "identity";
    a.input_distance = [](const SparseVector& x, const SparseVector& y) {
        return SparseVector::subtract(x, y).lp_norm(2.0);
    };
    a.output_distance = a.input_distance;
    a.pair_tol = nullptr;
    return a;
}

ModulusPair identity_moduli() {
    ModulusPair m;
    m.rho1 = [](double t) { return t; };
    m.rho2 = [](double t) { return t; };
    m.form1 = "t";
    m.form2 = "t";
    return m;
}

} // namespace orlicz
