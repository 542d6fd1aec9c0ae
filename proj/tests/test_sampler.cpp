#include <doctest.h>

#include <cmath>
#include <map>

#include "fixtures.hpp"
#include "jdm/graphic.hpp"
#include "jdm/oracle.hpp"
#include "jdm/sampler.hpp"

using namespace jdm;

namespace {

const Jdm kTriangle({{0, 0}, {0, 3}});

// Degree of every vertex in the multigraph, loops twice, counted from the multiplicities.
void check_degrees(const ConfigModel& m, const MultiGraphRealization& g) {
    std::map<Vertex, int> deg;
    for (const auto& [key, mult] : g.multiplicity) {
        deg[key.first] += mult;
        deg[key.second] += mult;
    }
    for (std::size_t x = 0; x < m.vertices().size(); ++x) CHECK(deg[m.vertices()[x]] == m.vertex_class(x));
}

MultiGraphRealization multigraph(std::vector<Vertex> vs, std::initializer_list<std::tuple<Vertex, Vertex, int>> es) {
    MultiGraphRealization g;
    g.vertices = std::move(vs);
    for (auto [u, v, k] : es) g.multiplicity[{u, v}] = k;
    return g;
}

}  // namespace

TEST_CASE("build_model examples") {
    auto m = build_model(kTriangle);
    REQUIRE(m.components().size() == 1);
    CHECK(m.components()[0].degree_class == 2);
    CHECK(m.components()[0].size() == 6);
    CHECK(m.total_mini_vertices() == 6);
    CHECK(m.edges().size() == 3);

    m = build_model(Jdm({{1}}));
    REQUIRE(m.components().size() == 1);
    CHECK(m.components()[0].size() == 2);

    m = build_model(Jdm({{0, 2}, {2, 0}}));
    REQUIRE(m.components().size() == 2);
    CHECK(m.components()[0].size() == 2);
    CHECK(m.components()[1].size() == 2);
    CHECK(m.vertices() == std::vector<Vertex>{1, 2, 3});
    CHECK(m.vertex_class(2) == 2);
    CHECK(m.component_of_class(2) == 1U);
    CHECK_FALSE(m.component_of_class(3).has_value());

    CHECK_THROWS_AS(build_model(Jdm({{0, 1}, {1, 0}})), std::invalid_argument);
    // non-graphical but integral: multigraphs only
    CHECK_NOTHROW(build_model(Jdm({{0, 0}, {0, 1}})));
}

TEST_CASE("per-class mini-vertex and edge-point counts agree") {
    Rng rng(2);
    for (int round = 0; round < 50; ++round) {
        const auto g = fixtures::random_realization(rng, 10, 0.3);
        const auto m = build_model(g);
        for (const auto& comp : m.components()) {
            std::size_t members = 0;
            for (std::size_t x = 0; x < m.vertices().size(); ++x)
                if (m.vertex_class(x) == comp.degree_class) ++members;
            CHECK(comp.size() == members * static_cast<std::size_t>(comp.degree_class));
        }
    }
}

TEST_CASE("uniform_configuration basics") {
    Rng rng(1);
    const auto single = build_model(Jdm({{1}}));
    const auto c = uniform_configuration(single, rng);
    CHECK(c.valid());
    CHECK(to_multigraph(single, c).multiplicity.size() == 1);

    const auto m = build_model(kTriangle);
    Rng a(77), b(77);
    CHECK(uniform_configuration(m, a) == uniform_configuration(m, b));
}

TEST_CASE("uniform configurations hit all 720 evenly") {
    const auto m = build_model(kTriangle);
    Rng rng(99);
    std::map<std::vector<std::uint32_t>, int> counts;
    const int draws = 72000;
    for (int t = 0; t < draws; ++t) ++counts[uniform_configuration(m, rng).matching[0]];
    CHECK(counts.size() == 720);
    double chi2 = 0;
    for (const auto& kv : counts) chi2 += std::pow(kv.second - 100.0, 2) / 100.0;
    // df = 719; the 0.999 quantile is about 849
    CHECK(chi2 < 849);
}

TEST_CASE("to_multigraph examples") {
    const auto m = build_model(kTriangle);
    // edge points 0..5 are (e0,s0),(e0,s1),(e1,s0),(e1,s1),(e2,s0),(e2,s1); mini-vertices 2v, 2v+1
    Configuration loops = identity_configuration(m);
    CHECK(to_multigraph(m, loops) == multigraph({1, 2, 3}, {{1, 1, 1}, {2, 2, 1}, {3, 3, 1}}));
    CHECK(to_multigraph(m, loops).loop_count() == 3);
    CHECK_FALSE(to_multigraph(m, loops).is_simple());

    Configuration tri = identity_configuration(m);
    tri.matching[0] = {0, 3, 2, 5, 4, 1};
    for (std::uint32_t x = 0; x < 6; ++x) tri.inverse[0][tri.matching[0][x]] = x;
    REQUIRE(tri.valid());
    const auto g = to_multigraph(m, tri);
    CHECK(g == multigraph({1, 2, 3}, {{1, 2, 1}, {2, 3, 1}, {1, 3, 1}}));
    CHECK(g.is_simple());
    CHECK(extract_jdm(g.to_graph()) == kTriangle);
    CHECK(g.degree(2) == 2);
    CHECK_THROWS_AS(to_multigraph(m, loops).to_graph(), InvalidGraph);
}

TEST_CASE("property: multigraph degrees equal classes") {
    Rng rng(6);
    for (int round = 0; round < 100; ++round) {
        const auto g = fixtures::random_realization(rng, 9, 0.35);
        const auto m = build_model(g);
        const auto c = uniform_configuration(m, rng);
        REQUIRE(c.valid());
        const auto mg = to_multigraph(m, c);
        check_degrees(m, mg);
        if (mg.is_simple()) CHECK(extract_jdm(mg.to_graph()) == extract_jdm(g));
    }
    // every configuration of the triangle model
    const auto m = build_model(kTriangle);
    for (const auto& f : enumerate_configurations(m).fibers) check_degrees(m, f.graph);
}

TEST_CASE("chain A keeps configurations valid") {
    const auto single = build_model(Jdm({{1}}));
    Rng rng(3);
    Configuration c = identity_configuration(single);
    const auto start = to_multigraph(single, c);
    for (int t = 0; t < 100; ++t) {
        chain_a_step(single, c, rng);
        CHECK(to_multigraph(single, c) == start);
    }

    const auto m = build_model(Jdm({{1, 2, 0}, {2, 1, 2}, {0, 2, 2}}));
    c = identity_configuration(m);
    for (int t = 0; t < 2000; ++t) {
        chain_a_step(m, c, rng);
        REQUIRE(c.valid());
    }
}

TEST_CASE("chain B stays simple") {
    Rng rng(12);
    for (int round = 0; round < 30; ++round) {
        const auto g = fixtures::random_realization(rng, 10, 0.3);
        const auto m = build_model(g);
        SimpleChain chain(m, embed_realization(g, m));
        for (int t = 0; t < 500; ++t) {
            const auto before = to_multigraph(m, chain.state());
            const auto outcome = chain.step(rng);
            const auto after = to_multigraph(m, chain.state());
            REQUIRE(after.is_simple());
            REQUIRE(chain.state().valid());
            if (outcome == SimpleChain::Outcome::kRejected || outcome == SimpleChain::Outcome::kLazy)
                CHECK(after == before);
        }
    }
    const auto m = build_model(kTriangle);
    Configuration loops = identity_configuration(m);
    CHECK_THROWS_AS(SimpleChain(m, loops), std::invalid_argument);
    CHECK_THROWS_AS(chain_b_step(m, loops, rng), std::invalid_argument);
}

TEST_CASE("chain B on the triangle reaches all 384 triangle configurations") {
    const auto m = build_model(kTriangle);
    const auto tm = transition_matrix(m, ChainKind::kB);
    CHECK(tm.states.size() == 384);
    CHECK(tm.irreducible());
    CHECK(tm.symmetric());
    CHECK(tm.doubly_stochastic());

    Rng rng(5);
    const auto tri = fixtures::graph({{1, 2}, {2, 3}, {1, 3}});
    Configuration c = embed_realization(tri, m);
    std::set<std::vector<std::uint32_t>> seen;
    for (int t = 0; t < 200000 && seen.size() < 384; ++t) {
        chain_b_step(m, c, rng);
        CHECK(to_multigraph(m, c).to_graph() == tri);
        seen.insert(c.matching[0]);
    }
    CHECK(seen.size() == 384);
}

TEST_CASE("a proposal creating a double edge is rejected") {
    // path 1-2-3-4: moving the points of 2 and 3 would double the middle edge
    const auto g = fixtures::graph({{1, 2}, {2, 3}, {3, 4}});
    const auto m = build_model(g);
    Rng rng(41);
    SimpleChain chain(m, embed_realization(g, m));
    int rejected = 0;
    for (int t = 0; t < 2000; ++t) {
        const auto before = chain.state();
        if (chain.step(rng) == SimpleChain::Outcome::kRejected) {
            CHECK(chain.state() == before);
            ++rejected;
        }
    }
    CHECK(rejected > 0);
}

TEST_CASE("embed_realization round trips") {
    for (const auto& g : {fixtures::graph({{1, 2}}), fixtures::six_cycle(), fixtures::two_triangles(),
                          fixtures::pendant_instance()}) {
        const auto m = build_model(g);
        const auto c = embed_realization(g, m);
        CHECK(c.valid());
        CHECK(to_multigraph(m, c).to_graph() == g);
    }
    Rng rng(10);
    for (int round = 0; round < 50; ++round) {
        const auto g = fixtures::random_realization(rng, 12, 0.3);
        const auto m = build_model(g);
        CHECK(to_multigraph(m, embed_realization(g, m)).to_graph() == g);
    }
    const auto m = build_model(kTriangle);
    CHECK_THROWS_AS(embed_realization(fixtures::six_cycle(), m), std::invalid_argument);
    const auto c6 = build_model(fixtures::six_cycle());
    CHECK_THROWS_AS(embed_realization(fixtures::graph({{1, 2}, {2, 3}, {3, 1}, {4, 5}, {5, 6}, {6, 7}, {7, 4}}), c6),
                    std::invalid_argument);
}

TEST_CASE("simple fiber size") {
    CHECK(simple_fiber_size(kTriangle) == 384);
    CHECK(simple_fiber_size(Jdm({{1}})) == 2);
    CHECK(simple_fiber_size(Jdm({{0, 0}, {0, 6}})) == 64 * 64 * 720);
    CHECK(simple_fiber_size(Jdm({{0, 2}, {2, 0}})) == 2 * 2);
    CHECK_THROWS_AS(simple_fiber_size(Jdm({{0, 0}, {0, 40}})), std::overflow_error);
}

TEST_CASE("autocorrelation examples") {
    Rng rng(19);
    std::vector<double> iid(40000);
    for (auto& x : iid) x = rng.unit();
    auto a = autocorrelation(iid, 10);
    CHECK(a.rho[0] == doctest::Approx(1.0));
    CHECK(std::abs(a.rho[1]) < 4.0 / std::sqrt(40000.0));
    CHECK(a.integrated_time > 0.5);
    CHECK(a.integrated_time < 1.5);

    std::vector<double> wave(4000);
    for (std::size_t t = 0; t < wave.size(); ++t) wave[t] = static_cast<double>(t % 4);
    a = autocorrelation(wave, 8);
    CHECK(a.rho[4] == doctest::Approx(1.0).epsilon(0.01));
    CHECK(a.rho[8] == doctest::Approx(1.0).epsilon(0.01));

    std::vector<double> flat(100, 3.0);
    a = autocorrelation(flat, 5);
    CHECK(a.rho == std::vector<double>{1, 0, 0, 0, 0, 0});
    CHECK(a.integrated_time == 1.0);

    CHECK_THROWS_AS(autocorrelation(flat, 100), std::invalid_argument);
}

TEST_CASE("run_sampler is reproducible and reports a finite time") {
    const auto m = build_model(Jdm({{0, 0}, {0, 6}}));
    SampleOptions opt;
    opt.chain = ChainKind::kB;
    opt.steps = 20000;
    opt.thin = 10;
    opt.seed = 4;
    std::vector<MultiGraphRealization> first, second;
    const auto s1 = run_sampler(m, opt, [&](const MultiGraphRealization& g) { first.push_back(g); });
    const auto s2 = run_sampler(m, opt, [&](const MultiGraphRealization& g) { second.push_back(g); });
    CHECK(first == second);
    CHECK(s1.samples == 2000);
    CHECK(s1.simple_samples == 2000);
    CHECK(s1.lazy + s1.no_op + s1.accepted + s1.rejected == s1.steps);
    CHECK(std::isfinite(s1.tracked_autocorrelation.integrated_time));
    CHECK(s1.tracked_autocorrelation.integrated_time == s2.tracked_autocorrelation.integrated_time);

    opt.chain = ChainKind::kA;
    opt.burnin = 100;
    const auto sa = run_sampler(m, opt, nullptr);
    CHECK(sa.rejected == 0);
    CHECK(sa.simple_samples < sa.samples);

    opt.chain = ChainKind::kDirect;
    const auto sd = run_sampler(m, opt, nullptr);
    CHECK(sd.samples == 2000);

    opt.thin = 0;
    CHECK_THROWS_AS(run_sampler(m, opt, nullptr), std::invalid_argument);
}
