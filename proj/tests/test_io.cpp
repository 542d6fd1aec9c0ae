#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "jdm/io.hpp"

using namespace jdm;

namespace {

LabeledGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return io::read_graph(in);
}

Jdm parse_jdm(const std::string& text) {
    std::istringstream in(text);
    return io::read_jdm(in);
}

std::size_t graph_error_line(const std::string& text) {
    try {
        parse_graph(text);
    } catch (const io::ParseError& e) {
        return e.line();
    }
    return 999;
}

}  // namespace

TEST_CASE("graph text round trip") {
    const auto c6 = fixtures::six_cycle();
    const std::string text = io::to_text(c6);
    CHECK(text == "6 6\n1 2\n1 6\n2 3\n3 4\n4 5\n5 6\n");
    CHECK(parse_graph(text) == c6);
    CHECK(io::to_text(parse_graph(text)) == text);
    CHECK(parse_graph("\n2 1\n\n  9 4 \n\n") == fixtures::graph({{4, 9}}));
    CHECK(parse_graph("0 0\n").vertex_count() == 0);
}

TEST_CASE("graph parse errors carry line numbers") {
    CHECK(graph_error_line("") == 0);
    CHECK(graph_error_line("2 1\n1 x\n") == 2);
    CHECK(graph_error_line("2 1\n1 1\n") == 2);
    CHECK(graph_error_line("3 2\n1 2\n2 1\n") == 3);
    CHECK(graph_error_line("3 2\n1 2\n") == 3);
    CHECK(graph_error_line("2 1\n1 2\n3 4\n") == 3);
    CHECK(graph_error_line("5 1\n1 2\n") == 1);
    CHECK(graph_error_line("2 1 7\n1 2\n") == 1);
    CHECK(graph_error_line("2 1\n-1 2\n") == 2);
}

TEST_CASE("jdm text round trip") {
    const Jdm j({{0, 2}, {2, 2}});
    CHECK(io::to_text(j) == "2\n0 2\n2 2\n");
    CHECK(parse_jdm(io::to_text(j)) == j);
    CHECK(parse_jdm("0\n").dim() == 0);
}

TEST_CASE("jdm parse errors") {
    CHECK_THROWS_AS(parse_jdm(""), io::ParseError);
    CHECK_THROWS_AS(parse_jdm("2\n0 1\n"), io::ParseError);
    CHECK_THROWS_AS(parse_jdm("2\n0 1\n2 0\n"), io::ParseError);
    CHECK_THROWS_AS(parse_jdm("1\n1 1\n"), io::ParseError);
    CHECK_THROWS_AS(parse_jdm("1\n1\n1\n"), io::ParseError);
    try {
        parse_jdm("2\n0 1\n1 z\n");
        FAIL("expected an error");
    } catch (const io::ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).rfind("line 3: ", 0) == 0);
    }
}

TEST_CASE("trace round trip") {
    const std::vector<Rso> trace{{1, 4, 2, 5, 2}, {7, 3, 1, 9, 3}};
    std::ostringstream out;
    io::write_trace(out, trace);
    CHECK(out.str() == "1 4 2 5 2\n7 3 1 9 3\n");
    std::istringstream in(out.str());
    CHECK(io::read_trace(in) == trace);
    std::istringstream bad("1 2 3 4\n");
    CHECK_THROWS_AS(io::read_trace(bad), io::ParseError);
}

TEST_CASE("missing files are reported") {
    CHECK_THROWS_AS(io::load_graph("/nonexistent/graph.txt"), std::runtime_error);
    CHECK_THROWS_AS(io::load_jdm("/nonexistent/jdm.txt"), std::runtime_error);
}

TEST_CASE("property: random graphs round trip") {
    Rng rng(5);
    for (int round = 0; round < 50; ++round) {
        const auto g = fixtures::random_realization(rng, 12, 0.3);
        CHECK(parse_graph(io::to_text(g)) == g);
        const Jdm j = extract_jdm(g);
        CHECK(parse_jdm(io::to_text(j)) == j);
    }
}
