#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "jdm/graphic.hpp"
#include "jdm/oracle.hpp"

using namespace jdm;

namespace {

// Edges between partition classes, counted from the edge list.
std::vector<std::vector<Count>> pair_counts(const LabeledGraph& g, int k) {
    std::vector<std::vector<Count>> m(k, std::vector<Count>(k, 0));
    for (const auto& e : g.edges()) {
        const int a = g.vertex_class(e.u) - 1, b = g.vertex_class(e.v) - 1;
        ++m[a][b];
        if (a != b) ++m[b][a];
    }
    return m;
}

bool in_family(const CandidateState& s) {
    return pair_counts(s.graph, s.target.dim()) == s.target.rows();
}

// Random member of the candidate family: each class pair gets its J_ij edges at random cells.
CandidateState random_candidate(const Jdm& j, Rng& rng) {
    const auto labels = default_labels(j);
    CandidateState s{LabeledGraph::with_partition(assign_partition(j, labels)), j};
    for (int a = 1; a <= j.dim(); ++a) {
        for (int b = a; b <= j.dim(); ++b) {
            std::vector<std::pair<Vertex, Vertex>> cells;
            for (Vertex x : s.graph.class_members(a))
                for (Vertex y : s.graph.class_members(b))
                    if (a != b || x < y) cells.emplace_back(x, y);
            for (std::size_t t = cells.size(); t > 1; --t) std::swap(cells[t - 1], cells[rng.below(t)]);
            for (Count e = 0; e < j(a, b); ++e) s.graph.add_edge(cells[e].first, cells[e].second);
        }
    }
    return s;
}

}  // namespace

TEST_CASE("check_graphical examples") {
    auto r = check_graphical(Jdm({{0, 0}, {0, 6}}));
    CHECK(r.graphical);
    CHECK(r.class_sizes[1] == Rational(6));
    CHECK_FALSE(r.first_violation.has_value());

    r = check_graphical(Jdm({{0, 1}, {1, 0}}));
    CHECK_FALSE(r.graphical);
    REQUIRE(r.first_violation.has_value());
    CHECK(r.first_violation->condition == Condition::kIntegralClassSize);
    CHECK(r.first_violation->i == 2);
    CHECK(describe(*r.first_violation).find("condition (i)") != std::string::npos);

    Jdm j(3);
    j.set(3, 3, 3);
    r = check_graphical(j);
    CHECK_FALSE(r.graphical);
    CHECK(r.class_sizes[2] == Rational(2));
    CHECK(r.first_violation->condition == Condition::kWithinClassCapacity);
    CHECK(r.first_violation->i == 3);
    CHECK(enumerate_realizations(j).empty());
}

TEST_CASE("condition (iii) is detected") {
    // n_2 = 2, n_4 = 1, yet four cross edges
    Jdm j(4);
    j.set(2, 4, 4);
    const auto r = check_graphical(j);
    CHECK_FALSE(r.graphical);
    CHECK(r.class_sizes[1] == Rational(2));
    CHECK(r.class_sizes[3] == Rational(1));
    REQUIRE(r.first_violation.has_value());
    CHECK(r.first_violation->condition == Condition::kCrossClassCapacity);
    CHECK(r.first_violation->i == 2);
    CHECK(r.first_violation->j == 4);
    CHECK_FALSE(r.cross_capacity[1][3]);
    CHECK(enumerate_realizations(j).empty());
}

TEST_CASE("initial_candidate examples") {
    const Jdm k2({{1}});
    const auto labels = default_labels(k2);
    auto s = initial_candidate(k2, labels);
    CHECK(s.graph.has_edge(1, 2));
    CHECK(s.psi() == 0);

    const Jdm c({{0, 0}, {0, 6}});
    s = initial_candidate(c, default_labels(c));
    CHECK(in_family(s));
    CHECK(s.graph.edge_count() == 6);
    CHECK(s.psi() >= 0);
    CHECK(s.psi() % 2 == 0);

    const Jdm t({{0, 2}, {2, 2}});
    s = initial_candidate(t, default_labels(t));
    CHECK(s.graph.class_members(1).size() == 2);
    CHECK(s.graph.class_members(2).size() == 3);
    CHECK(in_family(s));

    CHECK_THROWS_AS(initial_candidate(Jdm({{0, 1}, {1, 0}}), std::vector<Vertex>{1, 2}), NotGraphical);
}

TEST_CASE("labels are handed out in sorted order") {
    const Jdm t({{0, 2}, {2, 2}});
    const std::vector<Vertex> labels{50, 10, 40, 30, 20};
    const auto p = assign_partition(t, labels);
    CHECK(p == std::vector<std::pair<Vertex, int>>{{10, 1}, {20, 1}, {30, 2}, {40, 2}, {50, 2}});
    CHECK_THROWS_AS(assign_partition(t, std::vector<Vertex>{1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(assign_partition(t, std::vector<Vertex>{1, 1, 2, 3, 4}), std::invalid_argument);
    const auto g = construct_realization(t, labels);
    CHECK(extract_jdm(g) == t);
    CHECK(g.vertices() == std::vector<Vertex>{10, 20, 30, 40, 50});
}

TEST_CASE("psi_descent_step at zero is rejected") {
    const Jdm k2({{1}});
    const auto s = initial_candidate(k2, default_labels(k2));
    CHECK_THROWS_AS(psi_descent_step(s), std::invalid_argument);
}

TEST_CASE("construct_realization examples") {
    CHECK(construct_realization(Jdm({{1}})) == fixtures::graph({{1, 2}}));
    const auto g = construct_realization(Jdm({{0, 0}, {0, 6}}));
    CHECK(extract_jdm(g) == Jdm({{0, 0}, {0, 6}}));
    for (Vertex v : g.vertices()) CHECK(g.degree(v) == 2);
    CHECK(g == construct_realization(Jdm({{0, 0}, {0, 6}})));
    CHECK_THROWS_AS(construct_realization(Jdm({{0, 1}, {1, 0}})), NotGraphical);
    try {
        construct_realization(Jdm({{0, 1}, {1, 0}}));
    } catch (const NotGraphical& e) {
        CHECK(e.report().first_violation->condition == Condition::kIntegralClassSize);
    }
}

TEST_CASE("property: descent drops psi by two and stays in the family") {
    Rng rng(3);
    int steps = 0;
    for (int round = 0; round < 200; ++round) {
        const auto g = fixtures::random_realization(rng, 10, 0.3);
        const Jdm j = extract_jdm(g);
        auto s = random_candidate(j, rng);
        REQUIRE(in_family(s));
        CHECK(s.psi() % 2 == 0);
        while (s.psi() > 0) {
            const Count before = s.psi();
            s = psi_descent_step(s);
            CHECK(s.psi() == before - 2);
            CHECK(in_family(s));
            ++steps;
        }
        CHECK(s.graph.is_realization());
        CHECK(extract_jdm(s.graph, j.dim()) == j);
    }
    CHECK(steps > 50);
}

TEST_CASE("property: necessity and construction on random realizations") {
    Rng rng(8);
    for (int round = 0; round < 200; ++round) {
        const auto g = fixtures::random_realization(rng, 14, 0.25);
        const Jdm j = extract_jdm(g);
        CHECK(check_graphical(j).graphical);
        const auto c = construct_realization_traced(j, default_labels(j));
        CHECK(extract_jdm(c.graph, j.dim()) == j);
        CHECK(static_cast<Count>(2 * c.steps) == c.initial_psi);
    }
}
