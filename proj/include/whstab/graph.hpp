#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "whstab/constraint.hpp"
#include "whstab/satisfaction.hpp"

namespace whstab {

/// Node-word characters: the concrete outcomes plus the merge tokens
/// X (any character) and T (any completion, i.e. {H, R}).
/// Canonical character order for node sorting.
inline int word_char_rank(char c) {
    switch (c) {
    case 'X': return 0;
    case 'T': return 1;
    case 'H': return 2;
    case 'M': return 3;
    case 'R': return 4;
    }
    return 5;
}

/// Deterministic safety automaton over outcome words of length k*.
/// Nodes are in canonical order: the initial node first, the rest sorted
/// lexicographically under word_char_rank.
struct ConstraintGraph {
    Strategy strategy = Strategy::Kill;
    int k_star = 0;
    std::vector<std::string> words;                ///< node labels, |word| == k_star
    std::vector<std::array<int, kOutcomeCount>> next; ///< successor index per outcome, -1 if none
    int initial = 0;
    std::vector<Constraint> source; ///< constraints this graph was built from
    bool reduced = false;           ///< true once minimize has run

    int node_count() const { return static_cast<int>(words.size()); }

    int edge_count() const {
        int n = 0;
        for (const auto& row : next)
            for (int t : row) n += (t >= 0);
        return n;
    }

    int step(int node, Outcome o) const { return next[static_cast<std::size_t>(node)][static_cast<int>(o)]; }
};

inline constexpr int kDefaultWindowCap = 16;

namespace detail {

/// Puts the initial node first and sorts the rest canonically; remaps edges.
inline void canonicalize(ConstraintGraph& g) {
    const int n = g.node_count();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (a == g.initial) return b != g.initial;
        if (b == g.initial) return false;
        const std::string& wa = g.words[static_cast<std::size_t>(a)];
        const std::string& wb = g.words[static_cast<std::size_t>(b)];
        return std::lexicographical_compare(wa.begin(), wa.end(), wb.begin(), wb.end(),
                                            [](char x, char y) { return word_char_rank(x) < word_char_rank(y); });
    });
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

    ConstraintGraph out;
    out.strategy = g.strategy;
    out.k_star = g.k_star;
    out.source = g.source;
    out.reduced = g.reduced;
    out.initial = 0;
    out.words.resize(static_cast<std::size_t>(n));
    out.next.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int src = order[static_cast<std::size_t>(i)];
        out.words[static_cast<std::size_t>(i)] = g.words[static_cast<std::size_t>(src)];
        for (int c = 0; c < kOutcomeCount; ++c) {
            const int t = g.next[static_cast<std::size_t>(src)][c];
            out.next[static_cast<std::size_t>(i)][c] = t < 0 ? -1 : pos[static_cast<std::size_t>(t)];
        }
    }
    g = std::move(out);
}

} // namespace detail

/// Builds the unminimized constraint graph: nodes are the feasible
/// outcome words of length k* reachable from the all-Hit startup word,
/// edges follow the successor relation and keep every constraint's
/// window condition on the shifted word. Dead-end nodes (no feasible
/// continuation) are pruned.
inline ConstraintGraph build_graph(const ConstraintSet& cs, int window_cap = kDefaultWindowCap) {
    if (cs.constraints.empty()) throw ParseError("constraint set must be non-empty");
    int k_star = 1;
    for (const Constraint& c : cs.constraints) {
        const Constraint n = c.kind == ConstraintKind::RowMiss && c.window == c.bound + 1
                                 ? normalize_row_constraint(c)
                                 : c;
        k_star = std::max(k_star, n.window);
    }
    if (k_star > window_cap)
        throw CapExceeded("maximum constraint window " + std::to_string(k_star) +
                          " exceeds cap " + std::to_string(window_cap));

    const std::string init(static_cast<std::size_t>(k_star), 'H');
    // New windows introduced by appending one character all end at the
    // appended character, so checking the word suffixes is exact along a
    // path that started from the all-Hit word.
    auto word_extension_ok = [&](const std::string& shifted) {
        OutcomeString word = parse_outcomes(shifted);
        for (const Constraint& c : cs.constraints)
            if (!detail::window_at_satisfied(c, word, k_star - 1)) return false;
        return true;
    };

    std::map<std::string, int> index;
    std::vector<std::string> words;
    std::vector<std::array<int, kOutcomeCount>> next;
    std::deque<int> queue;

    auto intern = [&](const std::string& w) {
        auto [it, inserted] = index.emplace(w, static_cast<int>(words.size()));
        if (inserted) {
            words.push_back(w);
            next.push_back({-1, -1, -1});
            queue.push_back(it->second);
        }
        return it->second;
    };

    intern(init);
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        const std::string w = words[static_cast<std::size_t>(u)];
        for (Outcome o : successors(outcome_from_char(w.back()), cs.strategy)) {
            std::string shifted = w.substr(1) + to_char(o);
            if (!word_extension_ok(shifted)) continue;
            next[static_cast<std::size_t>(u)][static_cast<int>(o)] = intern(shifted);
        }
    }

    // Prune words with no feasible continuation; they lie on no infinite run.
    std::vector<bool> dead(words.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t u = 0; u < words.size(); ++u) {
            if (dead[u]) continue;
            bool live = false;
            for (int c = 0; c < kOutcomeCount; ++c) {
                const int t = next[u][c];
                live = live || (t >= 0 && !dead[static_cast<std::size_t>(t)]);
            }
            if (!live) {
                dead[u] = true;
                changed = true;
            }
        }
    }
    if (dead[static_cast<std::size_t>(index.at(init))])
        throw EmptyLanguage("no feasible infinite run exists from startup");

    ConstraintGraph g;
    g.strategy = cs.strategy;
    g.k_star = k_star;
    g.source = cs.constraints;
    std::vector<int> remap(words.size(), -1);
    for (std::size_t u = 0; u < words.size(); ++u) {
        if (dead[u]) continue;
        remap[u] = g.node_count();
        g.words.push_back(words[u]);
        g.next.push_back({-1, -1, -1});
    }
    for (std::size_t u = 0; u < words.size(); ++u) {
        if (dead[u]) continue;
        for (int c = 0; c < kOutcomeCount; ++c) {
            const int t = next[u][c];
            g.next[static_cast<std::size_t>(remap[u])][c] =
                (t >= 0 && !dead[static_cast<std::size_t>(t)]) ? remap[static_cast<std::size_t>(t)] : -1;
        }
    }
    g.initial = remap[static_cast<std::size_t>(index.at(init))];
    detail::canonicalize(g);
    return g;
}

namespace detail {

/// Moore partition refinement: one initial block (every state accepting in
/// a safety language), split on per-label successor blocks and edge
/// presence. Returns the block id per node.
inline std::vector<int> moore_blocks(const ConstraintGraph& g, int& blocks) {
    const int n = g.node_count();
    std::vector<int> block(static_cast<std::size_t>(n), 0);
    blocks = 1;
    for (;;) {
        std::map<std::array<int, kOutcomeCount + 1>, int> sig_to_block;
        std::vector<int> fresh(static_cast<std::size_t>(n));
        for (int u = 0; u < n; ++u) {
            std::array<int, kOutcomeCount + 1> sig{};
            sig[0] = block[static_cast<std::size_t>(u)];
            for (int c = 0; c < kOutcomeCount; ++c) {
                const int t = g.next[static_cast<std::size_t>(u)][c];
                sig[static_cast<std::size_t>(c) + 1] = t < 0 ? -1 : block[static_cast<std::size_t>(t)];
            }
            auto [it, inserted] = sig_to_block.emplace(sig, static_cast<int>(sig_to_block.size()));
            fresh[static_cast<std::size_t>(u)] = it->second;
        }
        const int count = static_cast<int>(sig_to_block.size());
        block = std::move(fresh);
        if (count == blocks) break;
        blocks = count;
    }
    return block;
}

ConstraintGraph quotient(const ConstraintGraph& g, const std::vector<int>& block, int blocks);

/// Per-node signature: the tuple of states each individual constraint's
/// minimized automaton reaches on the node word. This reproduces the
/// pruned product of the per-constraint automata; it refines the joint
/// language equivalence but may be strictly finer than it (the product is
/// not re-minimized).
inline std::vector<int> product_blocks(const ConstraintGraph& g, int& blocks) {
    const int n = g.node_count();
    std::vector<std::vector<int>> sig(static_cast<std::size_t>(n));
    for (const Constraint& c : g.source) {
        const ConstraintGraph raw = build_graph(ConstraintSet{{c}, g.strategy});
        int sub_blocks = 0;
        const std::vector<int> sub = moore_blocks(raw, sub_blocks);
        std::map<std::string, int> word_state;
        for (int u = 0; u < raw.node_count(); ++u)
            word_state[raw.words[static_cast<std::size_t>(u)]] = sub[static_cast<std::size_t>(u)];
        for (int u = 0; u < n; ++u) {
            const std::string& w = g.words[static_cast<std::size_t>(u)];
            const std::string suffix = w.substr(w.size() - static_cast<std::size_t>(raw.k_star));
            sig[static_cast<std::size_t>(u)].push_back(word_state.at(suffix));
        }
    }
    std::map<std::vector<int>, int> sig_to_block;
    std::vector<int> block(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) {
        auto [it, inserted] = sig_to_block.emplace(sig[static_cast<std::size_t>(u)],
                                                   static_cast<int>(sig_to_block.size()));
        block[static_cast<std::size_t>(u)] = it->second;
    }
    blocks = static_cast<int>(sig_to_block.size());
    return block;
}

} // namespace detail

/// Quotient of a deterministic safety automaton. For a single constraint
/// this is the Moore-minimal automaton; for a multi-constraint graph it
/// is the pruned product of the per-constraint minimal automata, which
/// keeps the per-constraint state readable in the node words. Merged node
/// words are relabeled with X where the merged characters differ, and
/// with T where they are exactly {H, R}. Idempotent.
inline ConstraintGraph minimize(const ConstraintGraph& g) {
    if (g.reduced) return g;
    int blocks = 0;
    const std::vector<int> block = g.source.size() > 1 ? detail::product_blocks(g, blocks)
                                                       : detail::moore_blocks(g, blocks);
    ConstraintGraph out = detail::quotient(g, block, blocks);
    out.reduced = true;
    return out;
}

/// Builds the quotient graph for a block assignment consistent with the
/// transition relation.
inline ConstraintGraph detail::quotient(const ConstraintGraph& g, const std::vector<int>& block,
                                        int blocks) {
    ConstraintGraph out;
    out.strategy = g.strategy;
    out.k_star = g.k_star;
    out.source = g.source;
    out.words.assign(static_cast<std::size_t>(blocks), std::string());
    out.next.assign(static_cast<std::size_t>(blocks), {-1, -1, -1});
    const int n = g.node_count();

    // Wildcard relabeling: per position, the set of merged characters.
    std::vector<std::vector<std::string>> members(static_cast<std::size_t>(blocks));
    for (int u = 0; u < n; ++u) members[static_cast<std::size_t>(block[static_cast<std::size_t>(u)])].push_back(g.words[static_cast<std::size_t>(u)]);
    for (int b = 0; b < blocks; ++b) {
        std::string label(static_cast<std::size_t>(g.k_star), '?');
        for (int pos = 0; pos < g.k_star; ++pos) {
            bool h = false, m = false, r = false, x = false, t = false;
            for (const std::string& w : members[static_cast<std::size_t>(b)]) {
                switch (w[static_cast<std::size_t>(pos)]) {
                case 'H': h = true; break;
                case 'M': m = true; break;
                case 'R': r = true; break;
                case 'T': t = true; break;
                case 'X': x = true; break;
                }
            }
            char c;
            if (x || m + (h || r || t) > 1) c = 'X';      // any character
            else if (m) c = 'M';
            else if (t || (h && r)) c = 'T';              // any completion
            else c = h ? 'H' : 'R';
            label[static_cast<std::size_t>(pos)] = c;
        }
        out.words[static_cast<std::size_t>(b)] = label;
    }
    for (int u = 0; u < n; ++u) {
        const int b = block[static_cast<std::size_t>(u)];
        for (int c = 0; c < kOutcomeCount; ++c) {
            const int v = g.next[static_cast<std::size_t>(u)][c];
            if (v >= 0) out.next[static_cast<std::size_t>(b)][c] = block[static_cast<std::size_t>(v)];
        }
    }
    out.initial = block[static_cast<std::size_t>(g.initial)];
    detail::canonicalize(out);
    return out;
}

/// Per-character transition matrix: entry (i, j) is 1 iff the graph has
/// an edge from node j to node i labeled `c` (note the transpose).
inline Eigen::MatrixXd transition_matrix(const ConstraintGraph& g, Outcome c) {
    const int n = g.node_count();
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        const int i = g.step(j, c);
        if (i >= 0) f(i, j) = 1.0;
    }
    return f;
}

/// One automaton step on the 0/1 node-indicator vector.
inline Eigen::VectorXd step_gstate(const Eigen::MatrixXd& f, const Eigen::VectorXd& q) {
    if (f.cols() != q.size())
        throw DimensionMismatch("transition matrix is " + std::to_string(f.rows()) + "x" +
                                std::to_string(f.cols()) + " but the G-state has length " +
                                std::to_string(q.size()));
    return f * q;
}

/// True iff the walk from the initial node following `seq` never leaves
/// the graph.
inline bool is_feasible(const ConstraintGraph& g, const OutcomeString& seq) {
    int node = g.initial;
    for (Outcome o : seq) {
        node = g.step(node, o);
        if (node < 0) return false;
    }
    return true;
}

/// Graphviz rendering; byte-for-byte deterministic for a given graph.
inline std::string export_dot(const ConstraintGraph& g) {
    std::ostringstream os;
    os << "digraph constraint_graph {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=circle];\n";
    for (int u = 0; u < g.node_count(); ++u) {
        os << "  n" << u << " [label=\"" << g.words[static_cast<std::size_t>(u)] << "\"";
        if (u == g.initial) os << ", shape=doublecircle";
        os << "];\n";
    }
    for (int u = 0; u < g.node_count(); ++u)
        for (int c = 0; c < kOutcomeCount; ++c) {
            const int v = g.next[static_cast<std::size_t>(u)][c];
            if (v >= 0)
                os << "  n" << u << " -> n" << v << " [label=\"" << to_char(static_cast<Outcome>(c)) << "\"];\n";
        }
    os << "}\n";
    return os.str();
}

} // namespace whstab
