#pragma once

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "whstab/dominance.hpp"
#include "whstab/graph.hpp"
#include "whstab/lifting.hpp"
#include "whstab/state_space.hpp"

namespace whstab {

struct JsrParams {
    double delta = 0.01;
    int max_depth = 30;
    long long budget = 5'000'000; ///< walk expansions across the whole search
};

/// Bracket on the constrained joint spectral radius.
struct Bounds {
    double lb = 0.0;
    double ub = std::numeric_limits<double>::infinity();
    OutcomeString lb_witness; ///< closed walk with rho(A_witness)^{1/len} == lb
    JsrParams params;
    bool budget_exhausted = false;
    int depth_reached = 0;
    long long explored = 0; ///< walk expansions consumed
};

namespace detail {

/// DFS over feasible closed walks of g that start and end at `start`,
/// visiting only intermediate nodes with index >= start (each cyclic
/// rotation class is enumerated exactly once, from its minimal node).
template <typename OnCycle>
void closed_walks_from(const ConstraintGraph& g, const ClosedLoopSet& cl, int start, int max_len,
                       OnCycle&& on_cycle) {
    struct Frame {
        int node;
        Eigen::MatrixXd prod;
        OutcomeString seq;
    };
    std::vector<Frame> stack;
    stack.push_back({start, Eigen::MatrixXd::Identity(cl.dimension(), cl.dimension()), {}});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (f.node == start && !f.seq.empty()) on_cycle(f.seq, f.prod);
        if (static_cast<int>(f.seq.size()) == max_len) continue;
        for (Outcome o : alphabet(g.strategy)) {
            const int t = g.step(f.node, o);
            if (t < 0 || t < start) continue;
            Frame nf;
            nf.node = t;
            nf.prod = cl.matrix(o) * f.prod;
            nf.seq = f.seq;
            nf.seq.push_back(o);
            stack.push_back(std::move(nf));
        }
    }
}

} // namespace detail

/// Best lower bound from feasible periodic sequences: the maximum of
/// rho(A_{alpha_l} ... A_{alpha_1})^{1/l} over closed walks of length
/// l <= max_len. The returned Bounds carries no upper bound.
inline Bounds lower_bound_cycles(const ConstraintGraph& g, const ClosedLoopSet& cl, int max_len) {
    if (max_len < 1) throw ParseError("max_len must be >= 1");
    Bounds b;
    b.params.max_depth = max_len;
    for (int start = 0; start < g.node_count(); ++start)
        detail::closed_walks_from(g, cl, start, max_len, [&](const OutcomeString& seq, const Eigen::MatrixXd& prod) {
            const double v = std::pow(spectral_radius(prod), 1.0 / static_cast<double>(seq.size()));
            b.explored += 1;
            b.depth_reached = std::max(b.depth_reached, static_cast<int>(seq.size()));
            if (v > b.lb) {
                b.lb = v;
                b.lb_witness = seq;
            }
        });
    return b;
}

/// Branch-and-bound bracket of the constrained JSR. Explores feasible
/// walks from every node; a walk's key value is the minimum over its
/// prefixes of ||A_prefix||^{1/len} (monotone along a walk, so pruning at
/// value <= lb + delta is hereditary and sound). lb is raised by each
/// walk that returns to its start node. On clean termination
/// ub = lb + delta; when depth or budget cuts the search, the surviving
/// frontier's key values cap the result instead.
inline Bounds gripenberg(const ConstraintGraph& g, const ClosedLoopSet& cl, double delta,
                         int max_depth, long long budget) {
    if (delta <= 0.0) throw ParseError("delta must be > 0");
    if (max_depth < 1) throw ParseError("max_depth must be >= 1");

    Bounds b;
    b.params = JsrParams{delta, max_depth, budget};
    double frontier_max = 0.0;
    bool frontier_live = false;

    struct Frame {
        int node;
        int start;
        double key; ///< min over prefixes of ||A_prefix||^{1/len}
        Eigen::MatrixXd prod;
        OutcomeString seq;
    };
    // Roots are pre-expanded to length-1 walks so that every stacked frame
    // carries a finite key; a budget cut then still yields a finite ub.
    std::vector<Frame> stack;
    for (int start = g.node_count() - 1; start >= 0; --start) {
        for (Outcome o : alphabet(g.strategy)) {
            const int t = g.step(start, o);
            if (t < 0) continue;
            Frame f;
            f.node = t;
            f.start = start;
            f.prod = cl.matrix(o);
            f.seq = {o};
            f.key = spectral_norm(f.prod);
            stack.push_back(std::move(f));
        }
        b.explored += 1;
    }

    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (b.explored >= budget) {
            // Everything still on the stack is an unexpanded frontier walk;
            // an untouched root carries key = infinity and forces ub = inf.
            b.budget_exhausted = true;
            if (f.key > b.lb + delta) {
                frontier_max = std::max(frontier_max, f.key);
                frontier_live = true;
            }
            continue;
        }
        b.explored += 1;
        b.depth_reached = std::max(b.depth_reached, static_cast<int>(f.seq.size()));

        if (f.node == f.start && !f.seq.empty()) {
            const double v = std::pow(spectral_radius(f.prod), 1.0 / static_cast<double>(f.seq.size()));
            if (v > b.lb) {
                b.lb = v;
                b.lb_witness = f.seq;
            }
        }
        if (f.key <= b.lb + delta) continue; // no descendant can beat lb + delta
        if (static_cast<int>(f.seq.size()) == max_depth) {
            frontier_max = std::max(frontier_max, f.key);
            frontier_live = true;
            continue;
        }
        for (Outcome o : alphabet(g.strategy)) {
            const int t = g.step(f.node, o);
            if (t < 0) continue;
            Frame nf;
            nf.node = t;
            nf.start = f.start;
            nf.prod = cl.matrix(o) * f.prod;
            nf.seq = f.seq;
            nf.seq.push_back(o);
            nf.key = std::min(f.key, std::pow(spectral_norm(nf.prod),
                                              1.0 / static_cast<double>(nf.seq.size())));
            stack.push_back(std::move(nf));
        }
    }

    b.ub = frontier_live ? std::max(b.lb + delta, frontier_max) : b.lb + delta;
    return b;
}

inline Bounds gripenberg(const ConstraintGraph& g, const ClosedLoopSet& cl,
                         const JsrParams& params = {}) {
    return gripenberg(g, cl, params.delta, params.max_depth, params.budget);
}

enum class Verdict : std::uint8_t { Stable, Unstable, Inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Stable: return "stable";
    case Verdict::Unstable: return "unstable";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

inline Verdict verdict_from_bounds(const Bounds& b) {
    if (b.ub < 1.0) return Verdict::Stable;
    if (b.lb > 1.0) return Verdict::Unstable;
    return Verdict::Inconclusive;
}

struct StabilityReport {
    Verdict verdict = Verdict::Inconclusive;
    Bounds bounds;
    ConstraintSet constraints; ///< the dominant set actually analyzed
    Strategy strategy = Strategy::Kill;
    ActuatorMode mode = ActuatorMode::Zero;
    int graph_nodes = 0;
    int graph_edges = 0;
    double walltime_ms = 0.0;
    std::string note; ///< non-empty when a bound is within delta of 1
};

/// Full pipeline: dominance pruning, graph construction and minimization,
/// closed-loop assembly, branch-and-bound bracketing, verdict. The lower
/// bound is additionally refreshed with a closed-walk sweep so short
/// periodic witnesses are never missed by pruning.
inline StabilityReport analyze(const StateSpace& plant, const StateSpace& controller,
                               Strategy strategy, ActuatorMode mode, const ConstraintSet& cs,
                               const JsrParams& params = {}) {
    const auto t0 = std::chrono::steady_clock::now();

    ConstraintSet input = cs;
    input.strategy = strategy;
    const ConstraintSet dominant = dominant_set(input);
    const ConstraintGraph g = minimize(build_graph(dominant));
    const ClosedLoopSet cl = closed_loop_set(plant, controller, strategy, mode);

    StabilityReport rep;
    rep.constraints = dominant;
    rep.strategy = strategy;
    rep.mode = mode;
    rep.graph_nodes = g.node_count();
    rep.graph_edges = g.edge_count();
    rep.bounds = gripenberg(g, cl, params);

    const int cycle_len = std::min(params.max_depth, 12);
    const Bounds cyc = lower_bound_cycles(g, cl, cycle_len);
    if (cyc.lb > rep.bounds.lb) {
        rep.bounds.lb = cyc.lb;
        rep.bounds.lb_witness = cyc.lb_witness;
        rep.bounds.ub = std::max(rep.bounds.ub, rep.bounds.lb);
    }

    rep.verdict = verdict_from_bounds(rep.bounds);
    if (std::abs(rep.bounds.lb - 1.0) < params.delta || std::abs(rep.bounds.ub - 1.0) < params.delta)
        rep.note = "borderline: a bound lies within delta of 1";

    rep.walltime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace whstab
