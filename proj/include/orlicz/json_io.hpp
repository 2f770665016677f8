#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "orlicz/errors.hpp"
#include "orlicz/gauss_embedding.hpp"
#include "orlicz/harness.hpp"
#include "orlicz/sparse_vector.hpp"
#include "orlicz/tent_embedding.hpp"

namespace orlicz {

using ojson = nlohmann::ordered_json;

inline ojson to_json(const SparseVector& x) {
    ojson entries = ojson::array();
    for (const auto& [i, v] : x.entries()) entries.push_back(ojson::array({i, v}));
    return ojson{{"entries", entries}};
}

// Accepts {"entries": [[i, v], ...]} or a bare [[i, v], ...] array.
inline SparseVector sparse_from_json(const nlohmann::json& j) {
    const nlohmann::json* arr = &j;
    if (j.is_object()) {
        if (!j.contains("entries")) throw ParseError("vector object needs an \"entries\" field");
        arr = &j.at("entries");
    }
    if (!arr->is_array()) throw ParseError("vector must be an array of [index, value] pairs");
    std::vector<std::pair<std::int64_t, double>> entries;
    for (const auto& e : *arr) {
        if (!e.is_array() || e.size() != 2)
            throw ParseError("vector entry must be an [index, value] pair");
        entries.emplace_back(e.at(0).get<std::int64_t>(), e.at(1).get<double>());
    }
    return SparseVector::from_entries(entries);
}

// Inline JSON text, or @path to read the JSON from a file.
inline SparseVector parse_vector_arg(const std::string& arg) {
    std::string text = arg;
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw ParseError("cannot open vector file " + arg.substr(1));
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("vector JSON: ") + e.what());
    }
    return sparse_from_json(j);
}

inline ojson to_json(const TentCoordinates& tc) {
    ojson out = ojson::array();
    for (const auto& e : tc.entries)
        out.push_back(ojson::array({ojson::array({e.i, e.n, e.k}), e.v}));
    return out;
}

// Feature coordinates as [[level, sorted index multiset], value].
inline ojson to_json(const StackedEmbedding& se, int d, int K) {
    std::vector<std::vector<int>> expo = enumerate_exponents(d, K);
    ojson out = ojson::array();
    for (std::size_t n = 0; n < se.levels.size(); ++n) {
        const auto& block = se.levels[n];
        for (std::size_t j = 0; j < block.size(); ++j) {
            ojson multiset = ojson::array();
            for (int pos = 0; pos < d; ++pos)
                for (int rep = 0; rep < expo[j][static_cast<std::size_t>(pos)]; ++rep)
                    multiset.push_back(pos + 1);
            out.push_back(ojson::array({ojson::array({n + 1, multiset}), block[j]}));
        }
    }
    return out;
}

inline ojson to_json(const PairRecord& r) {
    return ojson{{"d_in", r.d_in},         {"d_out", r.d_out},
                 {"rho1", r.rho1},         {"rho2", r.rho2},
                 {"slack_lo", r.slack_lo}, {"slack_hi", r.slack_hi},
                 {"tol", r.tol},           {"eval_failed", r.eval_failed}};
}

inline ojson to_json(const DistortionReport& rep) {
    ojson viols = ojson::array();
    for (const auto& v : rep.violations) {
        viols.push_back(ojson{{"pair_index", v.pair_index},
                              {"record", to_json(v.rec)},
                              {"x", to_json(v.x)},
                              {"y", to_json(v.y)},
                              {"note", v.note}});
    }
    ojson buckets = ojson::array();
    for (std::size_t i = 0; i < rep.curves.buckets.size(); ++i) {
        const Bucket& b = rep.curves.buckets[i];
        buckets.push_back(ojson{{"exp2", b.exp2},
                                {"out_min", b.out_min},
                                {"out_max", b.out_max},
                                {"count", b.count},
                                {"lower_env", rep.curves.lower_env[i]},
                                {"upper_env", rep.curves.upper_env[i]}});
    }
    return ojson{{"pairs", rep.pairs.size()},
                 {"eval_failures", rep.eval_failures},
                 {"min_lower_slack", rep.min_lower_slack},
                 {"min_upper_slack", rep.min_upper_slack},
                 {"violations", viols},
                 {"buckets", buckets}};
}

inline std::string report_csv(const DistortionReport& rep) {
    std::ostringstream out;
    out << "d_in,d_out,rho1,rho2,slack_lo,slack_hi\n";
    out.precision(17);
    for (const PairRecord& r : rep.pairs) {
        if (r.eval_failed) continue;
        out << r.d_in << ',' << r.d_out << ',' << r.rho1 << ',' << r.rho2 << ','
            << r.slack_lo << ',' << r.slack_hi << '\n';
    }
    return out.str();
}

} // namespace orlicz
