#pragma once

#include <json.hpp>

#include <sstream>
#include <string>

#include "whstab/graph.hpp"
#include "whstab/jsr.hpp"

namespace whstab {

/// {nodes: [...], edges: [[from, "H", to], ...], initial: i}
inline nlohmann::json graph_to_json(const ConstraintGraph& g) {
    nlohmann::json j;
    j["nodes"] = g.words;
    nlohmann::json edges = nlohmann::json::array();
    for (int u = 0; u < g.node_count(); ++u)
        for (int c = 0; c < kOutcomeCount; ++c) {
            const int v = g.next[static_cast<std::size_t>(u)][c];
            if (v >= 0) edges.push_back({u, std::string(1, to_char(static_cast<Outcome>(c))), v});
        }
    j["edges"] = edges;
    j["initial"] = g.initial;
    return j;
}

inline nlohmann::json bounds_to_json(const Bounds& b) {
    nlohmann::json j;
    j["lb"] = b.lb;
    if (std::isfinite(b.ub)) j["ub"] = b.ub;
    else j["ub"] = "inf";
    j["lb_witness"] = to_string(b.lb_witness);
    j["params"] = {{"delta", b.params.delta},
                   {"max_depth", b.params.max_depth},
                   {"budget", b.params.budget}};
    j["budget_exhausted"] = b.budget_exhausted;
    j["depth_reached"] = b.depth_reached;
    j["explored"] = b.explored;
    return j;
}

inline nlohmann::json report_to_json(const StabilityReport& r) {
    nlohmann::json j;
    j["verdict"] = to_string(r.verdict);
    j["bounds"] = bounds_to_json(r.bounds);
    nlohmann::json cs = nlohmann::json::array();
    for (const Constraint& c : r.constraints.constraints) cs.push_back(to_string(c));
    j["constraints"] = cs;
    j["strategy"] = to_string(r.strategy);
    j["actuator"] = to_string(r.mode);
    j["graph"] = {{"nodes", r.graph_nodes}, {"edges", r.graph_edges}};
    j["walltime_ms"] = r.walltime_ms;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline std::string report_csv_header() {
    return "m,k,strategy,mode,lb,ub,verdict,depth,walltime_ms";
}

/// One CSV row per analyzed constraint (they share the joint bracket).
inline std::string report_to_csv(const StabilityReport& r) {
    std::ostringstream os;
    os << report_csv_header() << "\n";
    for (const Constraint& c : r.constraints.constraints) {
        os << c.bound << "," << c.window << "," << to_string(r.strategy) << "," << to_string(r.mode)
           << "," << r.bounds.lb << ",";
        if (std::isfinite(r.bounds.ub)) os << r.bounds.ub;
        else os << "inf";
        os << "," << to_string(r.verdict) << "," << r.bounds.depth_reached << "," << r.walltime_ms
           << "\n";
    }
    return os.str();
}

} // namespace whstab
