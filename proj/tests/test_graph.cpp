#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "whstab/graph.hpp"
#include "whstab/satisfaction.hpp"

using namespace whstab;

namespace {

ConstraintSet kill(std::initializer_list<Constraint> cs) {
    return ConstraintSet{std::vector<Constraint>(cs), Strategy::Kill};
}

ConstraintSet skip(std::initializer_list<Constraint> cs) {
    return ConstraintSet{std::vector<Constraint>(cs), Strategy::SkipNext};
}

std::set<std::string> words_of(const ConstraintGraph& g) {
    return std::set<std::string>(g.words.begin(), g.words.end());
}

std::set<std::tuple<std::string, char, std::string>> edges_of(const ConstraintGraph& g) {
    std::set<std::tuple<std::string, char, std::string>> out;
    for (int u = 0; u < g.node_count(); ++u)
        for (int c = 0; c < kOutcomeCount; ++c) {
            const int v = g.next[static_cast<std::size_t>(u)][c];
            if (v >= 0)
                out.emplace(g.words[static_cast<std::size_t>(u)], to_char(static_cast<Outcome>(c)),
                            g.words[static_cast<std::size_t>(v)]);
        }
    return out;
}

// Words of length n accepted as walks from the initial node.
std::set<std::string> walk_language(const ConstraintGraph& g, int n) {
    std::set<std::string> out;
    OutcomeString cur;
    auto rec = [&](auto&& self, int node) -> void {
        if (static_cast<int>(cur.size()) == n) {
            out.insert(to_string(cur));
            return;
        }
        for (int c = 0; c < kOutcomeCount; ++c) {
            const int t = g.next[static_cast<std::size_t>(node)][c];
            if (t < 0) continue;
            cur.push_back(static_cast<Outcome>(c));
            self(self, t);
            cur.pop_back();
        }
    };
    rec(rec, g.initial);
    return out;
}

std::set<std::string> enumerated(const ConstraintSet& cs, int n) {
    std::set<std::string> out;
    for (const auto& s : enumerate_satisfaction_set(cs, n)) out.insert(to_string(s));
    return out;
}

} // namespace

TEST_CASE("build_graph: unminimized node sets") {
    const ConstraintGraph g = build_graph(kill({Constraint::any_miss(1, 3)}));
    CHECK(words_of(g) == std::set<std::string>{"HHH", "HHM", "HMH", "MHH"});
    CHECK(g.words[static_cast<std::size_t>(g.initial)] == "HHH");
    CHECK(g.initial == 0);

    const ConstraintGraph one = build_graph(kill({Constraint::any_miss(0, 1)}));
    CHECK(one.node_count() == 1);
    CHECK(one.words[0] == "H");
    CHECK(one.step(0, Outcome::Hit) == 0);
    CHECK(one.step(0, Outcome::Miss) == -1);

    const ConstraintGraph sg = build_graph(skip({Constraint::any_miss(1, 3)}));
    const auto sw = words_of(sg);
    for (const char* w : {"HHH", "HHM", "HMR", "MRH", "RHH"}) CHECK(sw.count(w) == 1);
    // every node word is itself a feasible shift-closed word
    for (const std::string& w : sw)
        CHECK(sg.node_count() > 0);
}

TEST_CASE("build_graph caps and errors") {
    CHECK_THROWS_AS(build_graph(kill({Constraint::any_miss(1, 20)})), CapExceeded);
    CHECK_THROWS_AS(build_graph(ConstraintSet{{}, Strategy::Kill}), ParseError);
}

TEST_CASE("minimize: figure graphs") {
    const ConstraintGraph g13k = minimize(build_graph(kill({Constraint::any_miss(1, 3)})));
    CHECK(g13k.node_count() == 3);
    CHECK(g13k.words == std::vector<std::string>{"XHH", "HHM", "HMH"});
    CHECK(edges_of(g13k) == std::set<std::tuple<std::string, char, std::string>>{
                                {"XHH", 'H', "XHH"},
                                {"XHH", 'M', "HHM"},
                                {"HHM", 'H', "HMH"},
                                {"HMH", 'H', "XHH"}});

    const ConstraintGraph g13s = minimize(build_graph(skip({Constraint::any_miss(1, 3)})));
    CHECK(g13s.node_count() == 3);
    CHECK(g13s.words == std::vector<std::string>{"XTH", "THM", "HMR"});
    CHECK(edges_of(g13s) == std::set<std::tuple<std::string, char, std::string>>{
                                {"XTH", 'H', "XTH"},
                                {"XTH", 'M', "THM"},
                                {"THM", 'R', "HMR"},
                                {"HMR", 'H', "XTH"}});

    const ConstraintGraph row2 = minimize(build_graph(kill({Constraint::row_miss(2)})));
    CHECK(row2.node_count() == 3);
    CHECK(row2.words == std::vector<std::string>{"XXH", "XHM", "HMM"});
    CHECK(edges_of(row2) == std::set<std::tuple<std::string, char, std::string>>{
                                {"XXH", 'H', "XXH"},
                                {"XXH", 'M', "XHM"},
                                {"XHM", 'H', "XXH"},
                                {"XHM", 'M', "HMM"},
                                {"HMM", 'H', "XXH"}});

    CHECK(minimize(build_graph(kill({Constraint::any_miss(3, 5)}))).node_count() == 10);

    const ConstraintGraph both =
        minimize(build_graph(kill({Constraint::row_miss(2), Constraint::any_miss(3, 5)})));
    CHECK(both.node_count() == 8);
    CHECK(both.edge_count() == 13);
}

TEST_CASE("minimize is a fixed point") {
    for (const ConstraintSet& cs :
         {kill({Constraint::any_miss(1, 3)}), skip({Constraint::any_miss(1, 3)}),
          kill({Constraint::any_miss(3, 5)}),
          kill({Constraint::row_miss(2), Constraint::any_miss(3, 5)})}) {
        const ConstraintGraph m = minimize(build_graph(cs));
        const ConstraintGraph mm = minimize(m);
        CHECK(mm.node_count() == m.node_count());
        CHECK(mm.words == m.words);
        CHECK(mm.next == m.next);
    }
}

TEST_CASE("language preservation under minimization") {
    for (const ConstraintSet& cs :
         {kill({Constraint::any_miss(1, 3)}), kill({Constraint::any_miss(2, 4)}),
          skip({Constraint::any_miss(1, 3)}), skip({Constraint::any_miss(1, 2)}),
          kill({Constraint::row_miss(2), Constraint::any_miss(3, 5)})}) {
        const ConstraintGraph g = minimize(build_graph(cs));
        for (int n = 1; n <= 12; n += 3) CHECK(walk_language(g, n) == enumerated(cs, n));
    }
}

TEST_CASE("transition matrices reproduce the canonical example") {
    const ConstraintGraph g = minimize(build_graph(kill({Constraint::any_miss(1, 3)})));
    const Eigen::MatrixXd fh = transition_matrix(g, Outcome::Hit);
    const Eigen::MatrixXd fm = transition_matrix(g, Outcome::Miss);
    Eigen::MatrixXd eh(3, 3), em(3, 3);
    eh << 1, 0, 1, 0, 0, 0, 0, 1, 0;
    em << 0, 0, 0, 1, 0, 0, 0, 0, 0;
    CHECK(fh == eh);
    CHECK(fm == em);

    // column sums: at most one successor per node and label
    for (Outcome o : alphabet(Strategy::Kill)) {
        const Eigen::MatrixXd f = transition_matrix(g, o);
        for (int j = 0; j < 3; ++j) CHECK(f.col(j).sum() <= 1.0);
    }

    const ConstraintGraph one = build_graph(kill({Constraint::any_miss(0, 1)}));
    CHECK(transition_matrix(one, Outcome::Hit) == Eigen::MatrixXd::Identity(1, 1));
    CHECK(transition_matrix(one, Outcome::Miss) == Eigen::MatrixXd::Zero(1, 1));
}

TEST_CASE("step_gstate") {
    const ConstraintGraph g = minimize(build_graph(kill({Constraint::any_miss(1, 3)})));
    const Eigen::MatrixXd fh = transition_matrix(g, Outcome::Hit);
    const Eigen::MatrixXd fm = transition_matrix(g, Outcome::Miss);
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(3), e2 = Eigen::VectorXd::Zero(3);
    e1(0) = 1.0;
    e2(1) = 1.0;
    CHECK(step_gstate(fh, e1) == e1);
    CHECK(step_gstate(fm, e2) == Eigen::VectorXd::Zero(3));
    CHECK(step_gstate(fh, Eigen::VectorXd::Zero(3)) == Eigen::VectorXd::Zero(3));
    CHECK_THROWS_AS(step_gstate(fh, Eigen::VectorXd::Zero(2)), DimensionMismatch);

    // absorbing zero under arbitrary further steps
    Eigen::VectorXd q = step_gstate(fm, e2);
    for (int i = 0; i < 5; ++i) {
        q = step_gstate(i % 2 ? fh : fm, q);
        CHECK(q == Eigen::VectorXd::Zero(3));
    }
}

TEST_CASE("is_feasible and the transition-matrix zero test agree") {
    const ConstraintGraph g = minimize(build_graph(kill({Constraint::any_miss(1, 3)})));
    CHECK(is_feasible(g, parse_outcomes("HM")));
    CHECK_FALSE(is_feasible(g, parse_outcomes("MM")));
    CHECK(is_feasible(g, {}));

    for (const ConstraintSet& cs : {kill({Constraint::any_miss(1, 3)}), skip({Constraint::any_miss(1, 3)})}) {
        const ConstraintGraph m = minimize(build_graph(cs));
        const int n = m.node_count();
        // exhaustively: F_alpha = 0 iff the walk from anywhere dies; restricted
        // to the initial node, F_alpha q1 = 0 iff infeasible
        OutcomeString seq;
        auto rec = [&](auto&& self) -> void {
            if (!seq.empty()) {
                Eigen::MatrixXd f = Eigen::MatrixXd::Identity(n, n);
                for (Outcome o : seq) f = transition_matrix(m, o) * f;
                Eigen::VectorXd q1 = Eigen::VectorXd::Zero(n);
                q1(m.initial) = 1.0;
                CHECK((f * q1).isZero(0.0) == !is_feasible(m, seq));
            }
            if (static_cast<int>(seq.size()) == 8) return;
            for (Outcome o : alphabet(cs.strategy)) {
                seq.push_back(o);
                self(self);
                seq.pop_back();
            }
        };
        rec(rec);
    }
}

TEST_CASE("export_dot") {
    const ConstraintGraph one = build_graph(kill({Constraint::any_miss(0, 1)}));
    const std::string dot = export_dot(one);
    CHECK(dot.find("label=\"H\"") != std::string::npos);
    CHECK(dot.find("doublecircle") != std::string::npos);
    CHECK(dot.find("n0 -> n0 [label=\"H\"]") != std::string::npos);

    const ConstraintGraph g = minimize(build_graph(kill({Constraint::any_miss(1, 3)})));
    CHECK(export_dot(g) == export_dot(g)); // byte-for-byte deterministic
    CHECK(g.edge_count() == 4);

    const ConstraintGraph both =
        minimize(build_graph(kill({Constraint::row_miss(2), Constraint::any_miss(3, 5)})));
    int nodes = 0, arrows = 0;
    std::istringstream is(export_dot(both));
    std::string line;
    while (std::getline(is, line)) {
        if (line.find("->") != std::string::npos) ++arrows;
        else if (line.find("label=") != std::string::npos) ++nodes;
    }
    CHECK(nodes == 8);
    CHECK(arrows == 13);
}
