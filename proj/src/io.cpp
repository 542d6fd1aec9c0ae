#include "jdm/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace jdm::io {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

namespace {

// Reads lines, tracking the line number, skipping blank ones.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++number_;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    }

    std::size_t number() const { return number_; }

private:
    std::istream& in_;
    std::size_t number_ = 0;
};

template <class T>
std::vector<T> parse_fields(const std::string& line, std::size_t expected, std::size_t lineno) {
    std::istringstream ss(line);
    std::vector<T> out;
    std::string token;
    while (ss >> token) {
        if (token.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError(lineno, "expected a non-negative integer, got '" + token + "'");
        try {
            out.push_back(static_cast<T>(std::stoull(token)));
        } catch (const std::out_of_range&) {
            throw ParseError(lineno, "integer out of range: " + token);
        }
    }
    if (out.size() != expected)
        throw ParseError(lineno, "expected " + std::to_string(expected) + " fields, got " +
                                     std::to_string(out.size()));
    return out;
}

void expect_end(LineReader& reader) {
    std::string line;
    if (reader.next(line)) throw ParseError(reader.number(), "unexpected trailing content");
}

}  // namespace

LabeledGraph read_graph(std::istream& in) {
    LineReader reader(in);
    std::string line;
    if (!reader.next(line)) throw ParseError(0, "empty graph file");
    const auto header = parse_fields<std::uint64_t>(line, 2, reader.number());
    const std::size_t header_line = reader.number();
    const auto n = header[0];
    const auto m = header[1];

    std::vector<Edge> edges;
    std::set<Edge> seen;
    for (std::uint64_t e = 0; e < m; ++e) {
        if (!reader.next(line))
            throw ParseError(reader.number() + 1, "expected " + std::to_string(m) + " edges, found " +
                                                      std::to_string(e));
        const auto uv = parse_fields<Vertex>(line, 2, reader.number());
        if (uv[0] == uv[1]) throw ParseError(reader.number(), "loop edges are not allowed");
        const Edge edge = Edge::of(uv[0], uv[1]);
        if (!seen.insert(edge).second) throw ParseError(reader.number(), "repeated edge");
        edges.push_back(edge);
    }
    expect_end(reader);

    LabeledGraph g = LabeledGraph::from_edges(edges);
    if (g.vertex_count() != n)
        throw ParseError(header_line, "header declares " + std::to_string(n) +
                                          " vertices but edges touch " +
                                          std::to_string(g.vertex_count()));
    return g;
}

void write_graph(std::ostream& out, const LabeledGraph& g) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Jdm read_jdm(std::istream& in) {
    LineReader reader(in);
    std::string line;
    if (!reader.next(line)) throw ParseError(0, "empty JDM file");
    const auto k = parse_fields<std::uint64_t>(line, 1, reader.number())[0];
    if (k > 4096) throw ParseError(reader.number(), "JDM dimension too large");
    std::vector<std::vector<Count>> rows;
    for (std::uint64_t i = 0; i < k; ++i) {
        if (!reader.next(line))
            throw ParseError(reader.number() + 1, "expected " + std::to_string(k) + " rows");
        rows.push_back(parse_fields<Count>(line, k, reader.number()));
    }
    const std::size_t last = reader.number();
    expect_end(reader);
    try {
        return Jdm(rows);
    } catch (const std::invalid_argument& e) {
        throw ParseError(last, e.what());
    }
}

void write_jdm(std::ostream& out, const Jdm& j) {
    out << j.dim() << '\n';
    for (int i = 1; i <= j.dim(); ++i) {
        for (int l = 1; l <= j.dim(); ++l) out << (l > 1 ? " " : "") << j(i, l);
        out << '\n';
    }
}

std::vector<Rso> read_trace(std::istream& in) {
    LineReader reader(in);
    std::string line;
    std::vector<Rso> out;
    while (reader.next(line)) {
        const auto f = parse_fields<std::uint64_t>(line, 5, reader.number());
        out.push_back(Rso{f[0], f[1], f[2], f[3], static_cast<int>(f[4])});
    }
    return out;
}

void write_trace(std::ostream& out, std::span<const Rso> trace) {
    for (const auto& r : trace)
        out << r.a << ' ' << r.b << ' ' << r.c << ' ' << r.d << ' ' << r.pivot_class << '\n';
}

std::string to_text(const LabeledGraph& g) {
    std::ostringstream ss;
    write_graph(ss, g);
    return ss.str();
}

std::string to_text(const Jdm& j) {
    std::ostringstream ss;
    write_jdm(ss, j);
    return ss.str();
}

LabeledGraph load_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_graph(in);
}

Jdm load_jdm(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_jdm(in);
}

}  // namespace jdm::io
