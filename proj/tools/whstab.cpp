// Command-line front-end: constraint-automaton export, switching-stability
// analysis, constraint dominance, and closed-loop simulation.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "whstab/whstab.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitEmptyLanguage = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitUnstable = 10;
constexpr int kExitInconclusive = 11;

struct CommonOpts {
    std::string config_path;
    std::string system_name;
    std::string strategy;
    std::string actuator;
    std::vector<std::string> constraints;
    std::string format;
    std::string output_path;
    std::optional<double> delta;
    std::optional<int> depth;
    std::optional<long long> budget;
    bool dump_config = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON configuration file");
    cmd->add_option("--system", o.system_name, "built-in system: p1c1 or p2c2");
    cmd->add_option("--strategy", o.strategy, "kill or skip-next (with --system)");
    cmd->add_option("--actuator", o.actuator, "zero or hold (with --system)");
    cmd->add_option("--constraint", o.constraints, "constraint, e.g. anymiss(1,3); repeatable");
    cmd->add_option("--format", o.format, "output format: json, csv, or dot");
    cmd->add_option("--output", o.output_path, "write the report to a file instead of stdout");
    cmd->add_option("--delta", o.delta, "bracket gap for the branch-and-bound");
    cmd->add_option("--depth", o.depth, "maximum walk depth");
    cmd->add_option("--budget", o.budget, "walk-expansion budget");
    cmd->add_flag("--dump-config", o.dump_config, "print the effective configuration and exit");
}

whstab::AnalysisConfig load_config(const CommonOpts& o) {
    whstab::AnalysisConfig cfg;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw whstab::ParseError("cannot open config file \"" + o.config_path + "\"");
        std::ostringstream buf;
        buf << in.rdbuf();
        cfg = whstab::parse_config(buf.str());
    } else if (!o.system_name.empty()) {
        const whstab::NamedSystem sys = whstab::builtin_system(o.system_name);
        cfg.plant = sys.plant;
        cfg.controller = sys.controller;
        if (o.constraints.empty())
            throw whstab::ParseError("--system requires at least one --constraint");
    } else {
        throw whstab::ParseError("either --config or --system is required");
    }
    if (!o.strategy.empty()) cfg.strategy = whstab::strategy_from_string(o.strategy);
    if (!o.actuator.empty()) cfg.actuator = whstab::actuator_mode_from_string(o.actuator);
    if (!o.constraints.empty()) {
        cfg.constraints.clear();
        for (const std::string& c : o.constraints) cfg.constraints.push_back(whstab::parse_constraint(c));
    }
    if (o.delta) cfg.jsr.delta = *o.delta;
    if (o.depth) cfg.jsr.max_depth = *o.depth;
    if (o.budget) cfg.jsr.budget = *o.budget;
    if (!o.format.empty()) cfg.format = whstab::output_format_from_string(o.format);
    if (cfg.jsr.delta <= 0.0) throw whstab::ParseError("delta must be > 0");
    if (cfg.jsr.max_depth < 1) throw whstab::ParseError("depth must be >= 1");
    if (cfg.jsr.budget < 1) throw whstab::ParseError("budget must be >= 1");

    // Worker cap; the search is deterministic regardless, so the cap only
    // needs validation here.
    if (const char* threads = std::getenv("WHSTAB_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(threads, &end, 10);
        if (end == threads || *end != '\0' || v < 1)
            throw whstab::ParseError("WHSTAB_THREADS must be a positive integer");
    }
    return cfg;
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.output_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(o.output_path);
    if (!out) throw whstab::ParseError("cannot open output file \"" + o.output_path + "\"");
    out << text;
}

int run_fsm(const CommonOpts& o, bool raw) {
    const whstab::AnalysisConfig cfg = load_config(o);
    if (o.dump_config) {
        emit(o, whstab::dump_config(cfg));
        return kExitOk;
    }
    const whstab::ConstraintSet dominant = whstab::dominant_set(cfg.constraint_set());
    whstab::ConstraintGraph g = whstab::build_graph(dominant);
    if (!raw) g = whstab::minimize(g);
    if (cfg.format == whstab::OutputFormat::Dot) emit(o, whstab::export_dot(g));
    else if (cfg.format == whstab::OutputFormat::Json) emit(o, whstab::graph_to_json(g).dump(2) + "\n");
    else throw whstab::ParseError("fsm supports only dot or json output");
    return kExitOk;
}

int run_stability(const CommonOpts& o) {
    const whstab::AnalysisConfig cfg = load_config(o);
    if (o.dump_config) {
        emit(o, whstab::dump_config(cfg));
        return kExitOk;
    }
    const whstab::StabilityReport rep = whstab::analyze(cfg.plant, cfg.controller, cfg.strategy,
                                                        cfg.actuator, cfg.constraint_set(), cfg.jsr);
    if (cfg.format == whstab::OutputFormat::Csv) emit(o, whstab::report_to_csv(rep));
    else emit(o, whstab::report_to_json(rep).dump(2) + "\n");
    switch (rep.verdict) {
    case whstab::Verdict::Stable: return kExitOk;
    case whstab::Verdict::Unstable: return kExitUnstable;
    case whstab::Verdict::Inconclusive: return kExitInconclusive;
    }
    return kExitInconclusive;
}

int run_dominance(const CommonOpts& o) {
    const whstab::AnalysisConfig cfg = load_config(o);
    if (o.dump_config) {
        emit(o, whstab::dump_config(cfg));
        return kExitOk;
    }
    if (cfg.constraints.size() != 2)
        throw whstab::ParseError("dominance compares exactly two constraints");
    const whstab::ConstraintSet a{{cfg.constraints[0]}, cfg.strategy};
    const whstab::ConstraintSet b{{cfg.constraints[1]}, cfg.strategy};
    emit(o, whstab::to_string(whstab::dominates(a, b)) + "\n");
    return kExitOk;
}

int run_simulate(const CommonOpts& o, const std::string& sequence, const std::string& x0_text,
                 std::optional<int> steps, bool unchecked) {
    const whstab::AnalysisConfig cfg = load_config(o);
    if (o.dump_config) {
        emit(o, whstab::dump_config(cfg));
        return kExitOk;
    }
    whstab::OutcomeString base = whstab::parse_outcomes(sequence);
    whstab::OutcomeString seq;
    const int n = steps ? *steps : static_cast<int>(base.size());
    if (n > 0 && base.empty()) throw whstab::ParseError("--steps requires a non-empty sequence");
    for (int i = 0; i < n; ++i) seq.push_back(base[static_cast<std::size_t>(i) % base.size()]);
    whstab::validate_sequence(seq, cfg.strategy, /*allow_initial_recovery=*/false);

    const whstab::ClosedLoopSet cl =
        whstab::closed_loop_set(cfg.plant, cfg.controller, cfg.strategy, cfg.actuator);
    if (!unchecked) {
        const whstab::ConstraintGraph g =
            whstab::minimize(whstab::build_graph(whstab::dominant_set(cfg.constraint_set())));
        if (!whstab::is_feasible(g, seq)) {
            std::cerr << "error: sequence \"" << whstab::to_string(seq)
                      << "\" is infeasible under the configured constraints\n";
            return kExitInfeasible;
        }
    }

    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(cl.dimension());
    if (x0_text.empty()) {
        x0(0) = 1.0;
    } else {
        std::vector<double> vals;
        std::stringstream ss(x0_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                std::size_t used = 0;
                vals.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw whstab::ParseError("non-numeric --x0 entry \"" + tok + "\"");
            }
        }
        if (static_cast<int>(vals.size()) != cl.dimension())
            throw whstab::ParseError("--x0 has " + std::to_string(vals.size()) +
                                     " entries but the closed loop has dimension " +
                                     std::to_string(cl.dimension()));
        for (std::size_t i = 0; i < vals.size(); ++i) x0(static_cast<Eigen::Index>(i)) = vals[i];
    }

    const std::vector<Eigen::VectorXd> traj = whstab::simulate(cl, seq, x0);
    std::ostringstream os;
    os << "t,outcome";
    for (int i = 0; i < cl.dimension(); ++i) os << ",x" << i;
    os << "\n";
    for (std::size_t t = 0; t < traj.size(); ++t) {
        os << t << "," << (t == 0 ? std::string("-") : std::string(1, whstab::to_char(seq[t - 1])));
        for (int i = 0; i < cl.dimension(); ++i) os << "," << traj[t](i);
        os << "\n";
    }
    emit(o, os.str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"switching-stability analysis of control loops under weakly-hard constraints"};
    app.require_subcommand(1);

    CommonOpts fsm_opts, stab_opts, dom_opts, sim_opts;
    bool raw = false, unchecked = false;
    std::string sequence, x0_text;
    std::optional<int> steps;

    CLI::App* fsm = app.add_subcommand("fsm", "export the minimized constraint automaton");
    add_common(fsm, fsm_opts);
    fsm->add_flag("--raw", raw, "skip minimization");

    CLI::App* stab = app.add_subcommand("stability", "bracket the constrained JSR and report a verdict");
    add_common(stab, stab_opts);

    CLI::App* dom = app.add_subcommand("dominance", "compare two constraints by language inclusion");
    add_common(dom, dom_opts);

    CLI::App* sim = app.add_subcommand("simulate", "run the closed loop along an outcome sequence");
    add_common(sim, sim_opts);
    sim->add_option("--sequence", sequence, "outcome string over H/M/R")->required();
    sim->add_option("--x0", x0_text, "comma-separated initial state (default: e_1)");
    sim->add_option("--steps", steps, "number of steps; the sequence repeats cyclically");
    sim->add_flag("--unchecked", unchecked, "skip the feasibility check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitParse;
    }

    try {
        if (fsm->parsed()) return run_fsm(fsm_opts, raw);
        if (stab->parsed()) return run_stability(stab_opts);
        if (dom->parsed()) return run_dominance(dom_opts);
        if (sim->parsed()) return run_simulate(sim_opts, sequence, x0_text, steps, unchecked);
    } catch (const whstab::EmptyLanguage& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEmptyLanguage;
    } catch (const whstab::MalformedSequence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const whstab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitParse;
}
