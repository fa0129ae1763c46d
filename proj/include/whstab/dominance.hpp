#pragma once

#include <deque>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "whstab/graph.hpp"

namespace whstab {

/// True iff every outcome word feasible in `a` (from its initial node) is
/// also feasible in `b`. Product construction over the two deterministic
/// automata; inclusion fails exactly when a word reachable in `a` falls
/// off `b`.
inline bool language_included(const ConstraintGraph& a, const ConstraintGraph& b) {
    if (a.strategy != b.strategy)
        throw StrategyMismatch("language inclusion requires a common strategy");
    std::set<std::pair<int, int>> seen;
    std::deque<std::pair<int, int>> queue;
    seen.emplace(a.initial, b.initial);
    queue.emplace_back(a.initial, b.initial);
    while (!queue.empty()) {
        auto [u, v] = queue.front();
        queue.pop_front();
        for (int c = 0; c < kOutcomeCount; ++c) {
            const int un = a.next[static_cast<std::size_t>(u)][c];
            if (un < 0) continue;
            const int vn = b.next[static_cast<std::size_t>(v)][c];
            if (vn < 0) return false;
            if (seen.emplace(un, vn).second) queue.emplace_back(un, vn);
        }
    }
    return true;
}

/// Ordering of two constraint sets by satisfaction-language inclusion.
/// StrictlyHarder means the first set's language is a proper subset of
/// the second's (harder to satisfy).
enum class DominanceRelation : std::uint8_t { StrictlyHarder, Equivalent, StrictlyEasier, Incomparable };

inline std::string to_string(DominanceRelation r) {
    switch (r) {
    case DominanceRelation::StrictlyHarder: return "harder";
    case DominanceRelation::Equivalent: return "equivalent";
    case DominanceRelation::StrictlyEasier: return "easier";
    case DominanceRelation::Incomparable: return "incomparable";
    }
    return "?";
}

inline DominanceRelation dominates(const ConstraintSet& c1, const ConstraintSet& c2) {
    if (c1.strategy != c2.strategy)
        throw StrategyMismatch("dominance requires a common strategy");
    const ConstraintGraph g1 = build_graph(c1);
    const ConstraintGraph g2 = build_graph(c2);
    const bool fwd = language_included(g1, g2);
    const bool bwd = language_included(g2, g1);
    if (fwd && bwd) return DominanceRelation::Equivalent;
    if (fwd) return DominanceRelation::StrictlyHarder;
    if (bwd) return DominanceRelation::StrictlyEasier;
    return DominanceRelation::Incomparable;
}

/// Indices of the constraints surviving dominance pruning, in input
/// order. A constraint is dropped when another member is strictly harder,
/// or defines the same language and appears earlier.
inline std::vector<int> dominant_indices(const ConstraintSet& cs) {
    const int n = static_cast<int>(cs.constraints.size());
    std::vector<ConstraintGraph> graphs;
    graphs.reserve(static_cast<std::size_t>(n));
    for (const Constraint& c : cs.constraints)
        graphs.push_back(build_graph(ConstraintSet{{c}, cs.strategy}));

    std::vector<std::vector<bool>> incl(static_cast<std::size_t>(n),
                                        std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            incl[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                i == j || language_included(graphs[static_cast<std::size_t>(i)], graphs[static_cast<std::size_t>(j)]);

    std::vector<int> keep;
    for (int i = 0; i < n; ++i) {
        bool redundant = false;
        for (int j = 0; j < n && !redundant; ++j) {
            if (j == i) continue;
            const bool j_implies_i = incl[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
            const bool i_implies_j = incl[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            redundant = j_implies_i && (!i_implies_j || j < i);
        }
        if (!redundant) keep.push_back(i);
    }
    return keep;
}

/// The minimal antichain of `cs` with the same satisfaction language.
/// Equivalent members are resolved in favour of the earlier one.
inline ConstraintSet dominant_set(const ConstraintSet& cs) {
    ConstraintSet out;
    out.strategy = cs.strategy;
    for (int i : dominant_indices(cs)) out.constraints.push_back(cs.constraints[static_cast<std::size_t>(i)]);
    return out;
}

} // namespace whstab
