#include "orlicz/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orlicz/adapters.hpp"
#include "orlicz/classify.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/indices.hpp"
#include "orlicz/json_io.hpp"
#include "orlicz/luxemburg.hpp"
#include "orlicz/version.hpp"

namespace orlicz::cli {

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFalsified = 2;
constexpr int kNumeric = 3;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw Error("cannot open output file " + out_path);
    out << text << "\n";
}

void emit_json(const ojson& j, const std::string& out_path) { emit(j.dump(2), out_path); }

ojson header(const std::string& command, std::uint64_t seed) {
    return ojson{{"command", command}, {"version", kVersion}, {"seed", seed}};
}

double parse_real(const std::string& s) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw ParseError("trailing characters in number: " + s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("not a number: " + s);
    }
}

Bracket parse_bracket(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) return Bracket::exact(parse_real(s));
    return Bracket(parse_real(s.substr(0, comma)), parse_real(s.substr(comma + 1)));
}

ojson bracket_json(const Bracket& b) { return ojson::array({b.lo, b.hi}); }

ojson verdict_json(const Verdict& v) {
    return ojson{{"kind", verdict_name(v.kind)},
                 {"case", v.case_id},
                 {"rationale", v.rationale},
                 {"inputs",
                  ojson{{"betaM", ojson::array({v.betaM_lo, v.betaM_hi})},
                        {"betaN", ojson::array({v.betaN_lo, v.betaN_hi})}}}};
}

ojson verdict_set_json(const VerdictSet& vs) {
    ojson arr = ojson::array();
    for (const auto& v : vs.verdicts) arr.push_back(verdict_json(v));
    return ojson{{"verdicts", arr}, {"boundary", vs.boundary}};
}

struct Opts {
    std::string fn, fn_n, vec, out, format = "json";
    std::string beta_m, beta_n;
    double p = 2.0;
    double q = std::numeric_limits<double>::quiet_NaN();
    double t_max = 1e4, lo = 1e-8, tail_eps = 1e-6, radius = 2.0;
    double c_hat = std::numeric_limits<double>::quiet_NaN();
    int grid = 8192, levels = 12, dim = 4, K = 12;
    int max_support = 8, scale_min = -10, scale_max = 10;
    std::uint64_t seed = 1;
    std::size_t pairs = 1000;
    bool evidence = false, trace = false, no_enforce = false;
};

OrliczFunction load_fn(const Opts& o, const std::string& spec) {
    ValidateOptions v;
    v.lo = o.lo;
    v.t_max = o.t_max;
    return OrliczFunction::from_spec(spec, v);
}

int run_validate(const Opts& o) {
    ojson j = header("validate", o.seed);
    j["config"] = ojson{{"fn", o.fn}, {"t_max", o.t_max}, {"lo", o.lo}};
    try {
        OrliczFunction M = load_fn(o, o.fn);
        j["valid"] = true;
        j["kind"] = M.is_catalog() ? "catalog" : "expression";
        j["value_at_one"] = M.value(1.0);
        emit_json(j, o.out);
        return kOk;
    } catch (const ValidationError& e) {
        j["valid"] = false;
        j["error"] = e.what();
        emit_json(j, o.out);
        return kFalsified;
    }
    // ParseError propagates: malformed input is a usage error, not a finding.
}

int run_norm(const Opts& o) {
    OrliczFunction M = load_fn(o, o.fn);
    SparseVector x = parse_vector_arg(o.vec);
    NormResult r = luxemburg_norm(M, x);
    LemmaCheck lemma = check_lemma_sum_vs_norm(M, x);
    ojson j = header("norm", o.seed);
    j["config"] = ojson{{"fn", o.fn}, {"entries", x.entries().size()}};
    j["norm"] = r.value;
    j["residual"] = r.residual;
    j["iterations"] = r.iterations;
    j["lemma"] = ojson{{"side", lemma.side}, {"holds", lemma.holds}, {"margin", lemma.margin}};
    emit_json(j, o.out);
    return kOk;
}

int run_indices(const Opts& o) {
    OrliczFunction M = load_fn(o, o.fn);
    IndexEstimate est = estimate_indices(M, o.grid);
    ojson j = header("indices", o.seed);
    j["config"] = ojson{{"fn", o.fn}, {"grid", o.grid}};
    j["alpha"] = ojson::array({est.alpha_low, est.alpha_high});
    j["beta"] = ojson::array({est.beta_low, est.beta_high});
    j["J_used"] = est.J_used;
    j["grid_truncated"] = est.grid_truncated;
    j["samples"] = est.samples;
    j["cotype"] = cotype(est);
    if (o.trace) {
        ojson tr = ojson::array();
        for (const auto& p : est.trace)
            tr.push_back(ojson{{"which", std::string(1, p.which)},
                               {"q", p.q},
                               {"feasible", p.feasible}});
        j["trace"] = tr;
    }
    emit_json(j, o.out);
    return kOk;
}

int run_basis(const Opts& o) {
    OrliczFunction M = load_fn(o, o.fn).normalized();
    BasisCriterionSeries s = basis_criterion(M);
    std::vector<double> small = small_scale_ratio_series(M);
    Trend small_trend = classify_trend(small);
    if (o.format == "csv") {
        std::ostringstream csv;
        csv.precision(17);
        csv << "series,k,value,aux\n";
        for (std::size_t i = 0; i < s.ns.size(); ++i)
            csv << "basis," << s.ns[i] << ',' << s.cs[i] << ',' << s.rs[i] << '\n';
        for (std::size_t jx = 0; jx < small.size(); ++jx)
            csv << "small," << (jx + 1) << ',' << small[jx] << ",\n";
        emit(csv.str(), o.out);
        return kOk;
    }
    ojson j = header("basis-criterion", o.seed);
    j["config"] = ojson{{"fn", o.fn}};
    j["n"] = s.ns;
    j["c_n"] = s.cs;
    j["r_n"] = s.rs;
    j["trend"] = trend_name(s.trend);
    j["small_scale"] = ojson{{"ratios", small}, {"trend", trend_name(small_trend)}};
    // The small-scale limit vanishing forces the basis series to vanish.
    j["consistent"] =
        small_trend != Trend::Vanishing || s.trend == Trend::Vanishing;
    emit_json(j, o.out);
    return kOk;
}

int run_classify_lp(const Opts& o) {
    Verdict v = classify_lp(o.p, parse_real(o.beta_n.empty() ? std::to_string(o.q) : o.beta_n));
    ojson j = header("classify lp", o.seed);
    j["config"] = ojson{{"p", v.betaM_lo}, {"q", v.betaN_lo}};
    j["verdict"] = verdict_json(v);
    emit_json(j, o.out);
    return kOk;
}

int run_classify_orlicz(const Opts& o) {
    Bracket bm = Bracket::exact(1.0), bn = Bracket::exact(1.0);
    ojson cfg;
    if (!o.fn.empty()) {
        OrliczFunction M = load_fn(o, o.fn);
        IndexEstimate est = estimate_indices(M, o.grid);
        bm = Bracket(est.beta_low, est.beta_high);
        cfg["fn_m"] = o.fn;
    } else if (!o.beta_m.empty()) {
        bm = parse_bracket(o.beta_m);
    } else {
        throw ParseError("classify orlicz needs --beta-m or --fn-m");
    }
    if (!o.fn_n.empty()) {
        OrliczFunction N = load_fn(o, o.fn_n);
        IndexEstimate est = estimate_indices(N, o.grid);
        bn = Bracket(est.beta_low, est.beta_high);
        cfg["fn_n"] = o.fn_n;
    } else if (!o.beta_n.empty()) {
        bn = parse_bracket(o.beta_n);
    } else {
        throw ParseError("classify orlicz needs --beta-n or --fn-n");
    }
    cfg["betaM"] = bracket_json(bm);
    cfg["betaN"] = bracket_json(bn);
    ojson j = header("classify orlicz", o.seed);
    VerdictSet vs;
    if (o.evidence) {
        if (o.fn.empty())
            throw ParseError("--evidence needs --fn-m to evaluate the basis series");
        OrliczFunction M = load_fn(o, o.fn).normalized();
        BasisCriterionSeries s = basis_criterion(M);
        cfg["basis_trend"] = trend_name(s.trend);
        vs = classify_orlicz_with_evidence(bm, bn, s.trend);
    } else {
        vs = classify_orlicz(bm, bn);
    }
    j["config"] = cfg;
    j["result"] = verdict_set_json(vs);
    emit_json(j, o.out);
    return kOk;
}

TentParams tent_params_from(const Opts& o, const OrliczFunction& M) {
    TentParams tp = make_tent_params(M, o.p, o.q, std::min(o.grid, 4096), o.t_max);
    tp.tail_eps = o.tail_eps;
    return tp;
}

ojson tent_params_json(const TentParams& tp) {
    return ojson{{"p", tp.p},
                 {"q", tp.q},
                 {"C", tp.C},
                 {"A", tp.A},
                 {"tail_eps", tp.tail_eps},
                 {"window_fine", tent_window_fine(tp)},
                 {"window_coarse", tent_window_coarse(tp)},
                 {"beta_high", tp.beta_high}};
}

int run_embed_tent(const Opts& o) {
    OrliczFunction M = load_fn(o, o.fn).normalized();
    TentParams tp = tent_params_from(o, M);
    SparseVector x = parse_vector_arg(o.vec);
    TentCoordinates tc = embed_vector(tp, x);
    ojson j = header("embed tent", o.seed);
    j["config"] = ojson{{"fn", o.fn}, {"params", tent_params_json(tp)}};
    j["coordinates"] = to_json(tc);
    j["count"] = tc.entries.size();
    emit_json(j, o.out);
    return kOk;
}

GaussParams gauss_params_from(const Opts& o) {
    GaussParams gp;
    gp.p = o.p;
    gp.levels = o.levels;
    gp.d = o.dim;
    gp.K = o.K;
    gp.radius = o.radius;
    gp.eps_trunc = o.tail_eps;
    gp.enforce_trunc_budget = !o.no_enforce;
    return gp;
}

ojson gauss_params_json(const GaussParams& gp) {
    return ojson{{"p", gp.p},           {"levels", gp.levels},
                 {"d", gp.d},           {"K", gp.K},
                 {"radius", gp.radius}, {"eps_trunc", gp.eps_trunc},
                 {"enforce_trunc_budget", gp.enforce_trunc_budget},
                 {"feature_count", feature_count(gp.d, gp.K)}};
}

int run_embed_gauss(const Opts& o) {
    GaussParams gp = gauss_params_from(o);
    SparseVector x = parse_vector_arg(o.vec);
    StackedEmbedding se = stacked_embed(gp, x);
    ojson j = header("embed gauss", o.seed);
    j["config"] = gauss_params_json(gp);
    j["t_schedule"] = se.t_schedule;
    j["certificates"] = se.certificates;
    j["coordinates"] = to_json(se, gp.d, gp.K);
    emit_json(j, o.out);
    return kOk;
}

int run_embed_mazur(const Opts& o) {
    MazurParams mp{o.p, std::isnan(o.q) ? 1.0 : o.q};
    SparseVector x = parse_vector_arg(o.vec);
    SparseVector y = mazur_map(mp, x);
    ojson j = header("embed mazur", o.seed);
    j["config"] = ojson{{"p", mp.p}, {"q", mp.q}};
    j["image"] = to_json(y);
    emit_json(j, o.out);
    return kOk;
}

int emit_report(const ojson& base, const DistortionReport& rep, const Opts& o) {
    if (o.format == "csv") {
        emit(report_csv(rep), o.out);
    } else {
        ojson j = base;
        j["report"] = to_json(rep);
        emit_json(j, o.out);
    }
    return rep.ok() && rep.eval_failures == 0 ? kOk : kFalsified;
}

int run_verify_tent(const Opts& o) {
    OrliczFunction M = load_fn(o, o.fn).normalized();
    TentParams tp = tent_params_from(o, M);
    SamplePlan plan;
    plan.gen = SamplePlan::Gen::DyadicSparse;
    plan.count = o.pairs;
    plan.seed = o.seed;
    plan.max_support = o.max_support;
    plan.scale_min = o.scale_min;
    plan.scale_max = o.scale_max;
    DistortionReport rep = run_distortion(tent_adapter(tp), tent_moduli(tp), plan);
    ojson j = header("verify tent", o.seed);
    j["config"] = ojson{{"fn", o.fn},
                        {"params", tent_params_json(tp)},
                        {"pairs", o.pairs},
                        {"max_support", o.max_support},
                        {"scales", ojson::array({o.scale_min, o.scale_max})}};
    return emit_report(j, rep, o);
}

int run_verify_gauss(const Opts& o) {
    GaussParams gp = gauss_params_from(o);
    // Distance grid 2^-12 .. 2^6; the radius must cover the farthest pair.
    SamplePlan plan;
    plan.gen = SamplePlan::Gen::PairsAtDistance;
    plan.count = o.pairs;
    plan.seed = o.seed;
    plan.dim = gp.d;
    for (int e = -12; e <= 6; ++e) plan.d_grid.push_back(std::ldexp(1.0, e));
    double need = std::ldexp(1.0, 6) / 2.0 + 1.0;
    if (gp.radius < need) gp.radius = need;
    gp.enforce_trunc_budget = false; // certificates carry the honest slack
    double chat = o.c_hat;
    if (std::isnan(chat))
        chat = check_mazur_bounds(MazurParams{2.0, gp.p}, 1000, 8, o.seed).C_hat;
    DistortionReport rep = run_distortion(gauss_adapter(gp, chat), gauss_moduli(gp, chat), plan);
    SmallDistanceCheck sd = small_distance_check(rep, gauss_moduli(gp, chat));
    ojson j = header("verify gauss", o.seed);
    j["config"] = gauss_params_json(gp);
    j["config"]["pairs"] = o.pairs;
    j["config"]["C_hat"] = chat;
    j["small_distance"] = ojson{{"applicable", sd.applicable},
                                {"ok", sd.ok},
                                {"bucket_exp", sd.bucket_exp},
                                {"observed_max", sd.observed_max},
                                {"bound", sd.bound}};
    int code = emit_report(j, rep, o);
    if (code == kOk && !(sd.applicable && sd.ok)) code = kFalsified;
    return code;
}

int run_verify_mazur(const Opts& o) {
    MazurParams mp{o.p, std::isnan(o.q) ? 1.0 : o.q};
    MazurBoundsReport battery = check_mazur_bounds(mp, static_cast<long>(o.pairs), o.dim, o.seed);
    SamplePlan plan;
    plan.gen = SamplePlan::Gen::Sphere;
    plan.count = o.pairs;
    plan.seed = o.seed;
    plan.sphere_p = mp.p;
    plan.dim = o.dim;
    DistortionReport rep = run_distortion(mazur_adapter(mp), mazur_moduli(mp), plan);
    ojson j = header("verify mazur", o.seed);
    j["config"] = ojson{{"p", mp.p}, {"q", mp.q}, {"pairs", o.pairs}, {"dim", o.dim}};
    j["battery"] = ojson{{"upper_holds", battery.upper_holds},
                         {"max_upper_ratio", battery.max_upper_ratio},
                         {"C_hat", battery.C_hat},
                         {"witness_pair", battery.witness_pair}};
    int code = emit_report(j, rep, o);
    if (!battery.upper_holds) code = kFalsified;
    return code;
}

int run_verify_identity(const Opts& o) {
    SamplePlan plan;
    plan.gen = SamplePlan::Gen::DyadicSparse;
    plan.count = o.pairs;
    plan.seed = o.seed;
    plan.max_support = o.max_support;
    DistortionReport rep = run_distortion(identity_adapter(), identity_moduli(), plan, 1e-12);
    ojson j = header("verify identity", o.seed);
    j["config"] = ojson{{"pairs", o.pairs}};
    return emit_report(j, rep, o);
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Orlicz sequence space toolkit: Luxemburg norms, regularity "
                 "indices, embeddings, and their sampling-based certification"};
    app.require_subcommand(1);
    Opts o;

    auto add_fn = [&](CLI::App* c, bool required = true) {
        auto* opt = c->add_option("--fn", o.fn, "function spec: power:<p>, power_log, or expression");
        if (required) opt->required();
    };
    auto add_out = [&](CLI::App* c) {
        c->add_option("--out", o.out, "write output to this path instead of stdout");
        c->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };
    auto add_seed = [&](CLI::App* c) { c->add_option("--seed", o.seed, "deterministic seed"); };

    CLI::App* validate = app.add_subcommand("validate", "check a function spec");
    add_fn(validate);
    validate->add_option("--t-max", o.t_max, "certification grid upper end");
    validate->add_option("--lo", o.lo, "certification grid lower end");
    add_out(validate);

    CLI::App* norm = app.add_subcommand("norm", "Luxemburg norm of a sparse vector");
    add_fn(norm);
    norm->add_option("--vec", o.vec, "vector: {\"entries\":[[i,v],...]} or [[i,v],...] or @file")
        ->required();
    add_out(norm);

    CLI::App* indices = app.add_subcommand("indices", "Matuszewska-Orlicz index brackets");
    add_fn(indices);
    indices->add_option("--grid", o.grid, "dyadic grid depth J");
    indices->add_flag("--trace", o.trace, "include the per-probe feasibility trace");
    add_out(indices);

    CLI::App* basis = app.add_subcommand("basis-criterion",
                                         "symmetric basis series and small-scale ratios");
    add_fn(basis);
    add_out(basis);

    CLI::App* classify = app.add_subcommand("classify", "embeddability decision tables");
    classify->require_subcommand(1);
    CLI::App* clp = classify->add_subcommand("lp", "ell_p into ell_q");
    clp->add_option("--p", o.p, "source exponent")->required();
    clp->add_option("--q", o.beta_n, "target exponent")->required();
    add_out(clp);
    CLI::App* corl = classify->add_subcommand("orlicz", "h_M into h_N by upper indices");
    corl->add_option("--beta-m", o.beta_m, "source index: exact or lo,hi bracket");
    corl->add_option("--beta-n", o.beta_n, "target index: exact or lo,hi bracket");
    corl->add_option("--fn-m", o.fn, "estimate the source bracket from this function");
    corl->add_option("--fn-n", o.fn_n, "estimate the target bracket from this function");
    corl->add_option("--grid", o.grid, "dyadic grid depth for index estimation");
    corl->add_flag("--evidence", o.evidence,
                   "refine a bracket containing 2 with the basis series trend");
    add_out(corl);

    CLI::App* embed = app.add_subcommand("embed", "compute embedding coordinates");
    embed->require_subcommand(1);
    CLI::App* et = embed->add_subcommand("tent", "tent-system coordinates of a vector");
    add_fn(et);
    et->add_option("--vec", o.vec, "input vector")->required();
    et->add_option("--p", o.p, "target exponent")->required();
    et->add_option("--q", o.q, "regularity exponent (default: derived from the upper index)");
    et->add_option("--tail-eps", o.tail_eps, "truncation budget");
    et->add_option("--grid", o.grid, "dyadic grid depth for index estimation");
    add_out(et);
    CLI::App* eg = embed->add_subcommand("gauss", "stacked kernel feature coordinates");
    eg->add_option("--vec", o.vec, "input vector, support within 1..dim")->required();
    eg->add_option("--p", o.p, "target exponent in [1,2)")->required();
    eg->add_option("--levels", o.levels, "number of kernel levels");
    eg->add_option("--dim", o.dim, "ambient dimension");
    eg->add_option("--K", o.K, "feature degree cap (even)");
    eg->add_option("--radius", o.radius, "certified ball radius");
    eg->add_option("--eps-trunc", o.tail_eps, "truncation budget");
    eg->add_flag("--no-enforce", o.no_enforce, "do not reject budget overruns");
    add_out(eg);
    CLI::App* em = embed->add_subcommand("mazur", "Mazur map image of a sphere point");
    em->add_option("--vec", o.vec, "input vector on the ell_p sphere")->required();
    em->add_option("--p", o.p, "source exponent")->required();
    em->add_option("--q", o.q, "target exponent")->required();
    add_out(em);

    CLI::App* verify = app.add_subcommand("verify", "sampling-based modulus certification");
    verify->require_subcommand(1);
    CLI::App* vt = verify->add_subcommand("tent", "tent embedding distortion run");
    add_fn(vt);
    vt->add_option("--p", o.p, "target exponent")->required();
    vt->add_option("--q", o.q, "regularity exponent");
    vt->add_option("--pairs", o.pairs, "number of sampled pairs");
    vt->add_option("--tail-eps", o.tail_eps, "truncation budget");
    vt->add_option("--grid", o.grid, "dyadic grid depth for index estimation");
    vt->add_option("--max-support", o.max_support, "sparse support bound");
    vt->add_option("--scale-min", o.scale_min, "smallest magnitude exponent");
    vt->add_option("--scale-max", o.scale_max, "largest magnitude exponent");
    add_seed(vt);
    add_out(vt);
    CLI::App* vg = verify->add_subcommand("gauss", "stacked kernel distortion run");
    vg->add_option("--p", o.p, "target exponent in [1,2)")->required();
    vg->add_option("--pairs", o.pairs, "number of sampled pairs");
    vg->add_option("--levels", o.levels, "number of kernel levels");
    vg->add_option("--dim", o.dim, "ambient dimension");
    vg->add_option("--K", o.K, "feature degree cap (even)");
    vg->add_option("--c-hat", o.c_hat, "lower Mazur constant (default: estimated)");
    add_seed(vg);
    add_out(vg);
    CLI::App* vm = verify->add_subcommand("mazur", "Mazur map bounds on sphere pairs");
    vm->add_option("--p", o.p, "source exponent")->required();
    vm->add_option("--q", o.q, "target exponent")->required();
    vm->add_option("--pairs", o.pairs, "number of sampled pairs");
    vm->add_option("--dim", o.dim, "sphere dimension");
    add_seed(vm);
    add_out(vm);
    CLI::App* vi = verify->add_subcommand("identity", "identity-map sanity run");
    vi->add_option("--pairs", o.pairs, "number of sampled pairs");
    vi->add_option("--max-support", o.max_support, "sparse support bound");
    add_seed(vi);
    add_out(vi);

    int code = kOk;
    validate->callback([&] { code = run_validate(o); });
    norm->callback([&] { code = run_norm(o); });
    indices->callback([&] { code = run_indices(o); });
    basis->callback([&] { code = run_basis(o); });
    clp->callback([&] { code = run_classify_lp(o); });
    corl->callback([&] { code = run_classify_orlicz(o); });
    et->callback([&] { code = run_embed_tent(o); });
    eg->callback([&] { code = run_embed_gauss(o); });
    em->callback([&] { code = run_embed_mazur(o); });
    vt->callback([&] { code = run_verify_tent(o); });
    vg->callback([&] { code = run_verify_gauss(o); });
    vm->callback([&] { code = run_verify_mazur(o); });
    vi->callback([&] { code = run_verify_identity(o); });

    std::vector<const char*> argv;
    argv.push_back("orlicz");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        return code;
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return kOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    } catch (const ParseError& e) {
        emit_json(ojson{{"error", e.what()}, {"kind", "parse"}}, "");
        return kUsage;
    } catch (const ValidationError& e) {
        emit_json(ojson{{"error", e.what()}, {"kind", "validation"}}, "");
        return kFalsified;
    } catch (const std::exception& e) {
        emit_json(ojson{{"error", e.what()}, {"kind", "numeric"}}, "");
        return kNumeric;
    }
}

} // namespace orlicz::cli
