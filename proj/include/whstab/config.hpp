#pragma once

#include <json.hpp>

#include <string>

#include "whstab/constraint.hpp"
#include "whstab/jsr.hpp"
#include "whstab/state_space.hpp"

namespace whstab {

enum class OutputFormat : std::uint8_t { Json, Csv, Dot };

inline std::string to_string(OutputFormat f) {
    switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Dot: return "dot";
    }
    return "?";
}

inline OutputFormat output_format_from_string(std::string_view s) {
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "dot") return OutputFormat::Dot;
    throw ParseError("unknown output format \"" + std::string(s) + "\" (expected json, csv, or dot)");
}

/// One batch-analysis configuration: systems, strategy, actuation,
/// constraints, and bounding parameters.
struct AnalysisConfig {
    StateSpace plant;
    StateSpace controller;
    Strategy strategy = Strategy::Kill;
    ActuatorMode actuator = ActuatorMode::Zero;
    std::vector<Constraint> constraints;
    JsrParams jsr;
    OutputFormat format = OutputFormat::Json;

    ConstraintSet constraint_set() const { return ConstraintSet{constraints, strategy}; }
};

namespace detail {

inline Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw ParseError(where + ": expected a nested array of numbers");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    Eigen::MatrixXd m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw ParseError(where + ": ragged rows in matrix");
        for (std::size_t k = 0; k < cols; ++k) {
            if (!j[i][k].is_number())
                throw ParseError(where + ": non-numeric entry at row " + std::to_string(i + 1));
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<double>();
        }
    }
    return m;
}

inline nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

inline StateSpace state_space_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object with A, B, C, D");
    for (const char* key : {"A", "B", "C", "D"})
        if (!j.contains(key)) throw ParseError(where + ": missing matrix \"" + key + "\"");
    StateSpace s;
    s.A = matrix_from_json(j.at("A"), where + ".A");
    s.B = matrix_from_json(j.at("B"), where + ".B");
    s.C = matrix_from_json(j.at("C"), where + ".C");
    s.D = matrix_from_json(j.at("D"), where + ".D");
    if (j.contains("period_s")) {
        if (!j.at("period_s").is_number()) throw ParseError(where + ".period_s: expected a number");
        s.period_s = j.at("period_s").get<double>();
    }
    try {
        s.validate();
    } catch (const Error& e) {
        throw ParseError(where + ": " + e.what());
    }
    return s;
}

inline nlohmann::json state_space_to_json(const StateSpace& s) {
    nlohmann::json j;
    j["A"] = matrix_to_json(s.A);
    j["B"] = matrix_to_json(s.B);
    j["C"] = matrix_to_json(s.C);
    j["D"] = matrix_to_json(s.D);
    j["period_s"] = s.period_s;
    return j;
}

} // namespace detail

inline AnalysisConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("config: expected a JSON object");
    for (const char* key : {"plant", "controller", "strategy", "actuator", "constraints"})
        if (!j.contains(key)) throw ParseError("config: missing field \"" + std::string(key) + "\"");

    AnalysisConfig cfg;
    cfg.plant = detail::state_space_from_json(j.at("plant"), "plant");
    cfg.controller = detail::state_space_from_json(j.at("controller"), "controller");
    if (!j.at("strategy").is_string()) throw ParseError("strategy: expected a string");
    cfg.strategy = strategy_from_string(j.at("strategy").get<std::string>());
    if (!j.at("actuator").is_string()) throw ParseError("actuator: expected a string");
    cfg.actuator = actuator_mode_from_string(j.at("actuator").get<std::string>());

    if (!j.at("constraints").is_array() || j.at("constraints").empty())
        throw ParseError("constraints: expected a non-empty array of strings");
    for (const auto& c : j.at("constraints")) {
        if (!c.is_string()) throw ParseError("constraints: entries must be strings");
        cfg.constraints.push_back(parse_constraint(c.get<std::string>()));
    }

    if (j.contains("jsr")) {
        const nlohmann::json& p = j.at("jsr");
        if (!p.is_object()) throw ParseError("jsr: expected an object");
        if (p.contains("delta")) cfg.jsr.delta = p.at("delta").get<double>();
        if (p.contains("max_depth")) cfg.jsr.max_depth = p.at("max_depth").get<int>();
        if (p.contains("budget")) cfg.jsr.budget = p.at("budget").get<long long>();
        if (cfg.jsr.delta <= 0.0) throw ParseError("jsr.delta must be > 0");
        if (cfg.jsr.max_depth < 1) throw ParseError("jsr.max_depth must be >= 1");
        if (cfg.jsr.budget < 1) throw ParseError("jsr.budget must be >= 1");
    }
    if (j.contains("format")) cfg.format = output_format_from_string(j.at("format").get<std::string>());
    return cfg;
}

inline AnalysisConfig parse_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

inline nlohmann::json config_to_json(const AnalysisConfig& cfg) {
    nlohmann::json j;
    j["plant"] = detail::state_space_to_json(cfg.plant);
    j["controller"] = detail::state_space_to_json(cfg.controller);
    j["strategy"] = to_string(cfg.strategy);
    j["actuator"] = to_string(cfg.actuator);
    nlohmann::json cs = nlohmann::json::array();
    for (const Constraint& c : cfg.constraints) cs.push_back(to_string(c));
    j["constraints"] = cs;
    j["jsr"] = {{"delta", cfg.jsr.delta}, {"max_depth", cfg.jsr.max_depth}, {"budget", cfg.jsr.budget}};
    j["format"] = to_string(cfg.format);
    return j;
}

inline std::string dump_config(const AnalysisConfig& cfg) { return config_to_json(cfg).dump(2) + "\n"; }

} // namespace whstab
