#pragma once

// JSON encodings of verdicts, sweep reports and determinant reports.
// Requires nlohmann/json on the include path. Big integers are emitted as JSON
// numbers when they fit in 64 bits and as decimal strings otherwise.

#include "graphqec/detector.hpp"
#include "graphqec/oracle.hpp"
#include "graphqec/singleton.hpp"

#include <json.hpp>

#include <limits>
#include <string>

namespace graphqec {

inline nlohmann::json to_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return v.convert_to<std::int64_t>();
    return v.str();
}

inline nlohmann::json to_json(const FiniteAbelianGroup& g) { return g.factors(); }

inline nlohmann::json to_json(const IntMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline nlohmann::json to_json(const PrimeSet& p) {
    if (p.all) return "all";
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& q : p.primes) arr.push_back(to_json(q));
    return arr;
}

inline nlohmann::json to_json(const DetectionVerdict& v, const std::string& graph, const FiniteAbelianGroup& grp) {
    nlohmann::json j;
    j["graph"] = graph;
    j["group"] = to_json(grp);
    j["config"] = v.config;
    j["variables"] = v.variables;
    j["detected"] = v.detected;
    if (v.witness) {
        j["witness"] = v.witness->vector;
        j["factor"] = v.witness->factor;
        j["condition"] = to_string(v.witness->condition);
    }
    if (v.detected) {
        nlohmann::json cert = nlohmann::json::array();
        for (const auto& fc : v.certificate) cert.push_back({{"factor", fc.factor}, {"generators", fc.generators}});
        j["certificate"] = std::move(cert);
    }
    return j;
}

inline nlohmann::json to_json(const SweepReport& r, bool with_timing = false) {
    nlohmann::json j;
    j["graph"] = r.graph;
    j["group"] = to_json(r.group);
    j["max_size"] = r.max_size;
    j["checked"] = r.total_checked();
    j["detected"] = r.total_detected();
    j["all_detected"] = r.all_detected();
    nlohmann::json sizes = nlohmann::json::array();
    for (const auto& s : r.sizes) {
        nlohmann::json und = nlohmann::json::array();
        for (const auto& v : s.undetected) {
            nlohmann::json u{{"config", v.config}, {"variables", v.variables}};
            if (v.witness) {
                u["witness"] = v.witness->vector;
                u["factor"] = v.witness->factor;
                u["condition"] = to_string(v.witness->condition);
            }
            und.push_back(std::move(u));
        }
        sizes.push_back({{"size", s.size},
                         {"checked", s.checked},
                         {"evaluated", s.evaluated},
                         {"detected", s.detected},
                         {"undetected", std::move(und)}});
    }
    j["sizes"] = std::move(sizes);
    if (with_timing) j["wall_seconds"] = r.wall_seconds;
    return j;
}

inline nlohmann::json to_json(const DeterminantReport& r) {
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& p : r.partitions) parts.push_back({{"I", p.block}, {"det", to_json(p.det)}});
    nlohmann::json dets = nlohmann::json::array();
    for (const auto& d : r.det_set) dets.push_back(to_json(d));
    return {{"m", r.m}, {"partitions", std::move(parts)}, {"det_set", std::move(dets)},
            {"bad_primes", to_json(r.bad_primes)}};
}

}  // namespace graphqec
