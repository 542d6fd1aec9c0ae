#include "jdm/core.hpp"

#include <algorithm>
#include <numeric>

namespace jdm {

Jdm::Jdm(int k) : k_(k), entries_(static_cast<std::size_t>(k) * k, 0) {
    if (k < 0) throw std::invalid_argument("JDM dimension must be non-negative");
}

Jdm::Jdm(const std::vector<std::vector<Count>>& rows) : Jdm(static_cast<int>(rows.size())) {
    for (int i = 0; i < k_; ++i) {
        if (static_cast<int>(rows[i].size()) != k_)
            throw std::invalid_argument("JDM must be square");
        for (int j = 0; j < k_; ++j) {
            if (rows[i][j] < 0) throw std::invalid_argument("JDM entries must be non-negative");
            if (rows[i][j] != rows[j][i]) throw std::invalid_argument("JDM must be symmetric");
            entries_[static_cast<std::size_t>(i) * k_ + j] = rows[i][j];
        }
    }
}

std::size_t Jdm::index(int i, int j) const {
    if (i < 1 || j < 1 || i > k_ || j > k_) throw std::out_of_range("JDM class index out of range");
    return static_cast<std::size_t>(i - 1) * k_ + (j - 1);
}

void Jdm::set(int i, int j, Count value) {
    if (value < 0) throw std::invalid_argument("JDM entries must be non-negative");
    entries_[index(i, j)] = value;
    entries_[index(j, i)] = value;
}

Count Jdm::edge_count() const {
    Count total = 0;
    for (int i = 1; i <= k_; ++i)
        for (int j = i; j <= k_; ++j) total += (*this)(i, j);
    return total;
}

Count Jdm::class_degree_sum(int i) const {
    Count total = (*this)(i, i);
    for (int l = 1; l <= k_; ++l) total += (*this)(i, l);
    return total;
}

Jdm Jdm::padded(int k) const {
    if (k < k_) throw std::invalid_argument("cannot pad JDM to a smaller dimension");
    Jdm out(k);
    for (int i = 1; i <= k_; ++i)
        for (int j = 1; j <= k_; ++j) out.entries_[out.index(i, j)] = (*this)(i, j);
    return out;
}

Jdm Jdm::trimmed() const {
    int k = k_;
    while (k > 0) {
        bool zero = true;
        for (int l = 1; l <= k_ && zero; ++l) zero = (*this)(k, l) == 0;
        if (!zero) break;
        --k;
    }
    Jdm out(k);
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j) out.entries_[out.index(i, j)] = (*this)(i, j);
    return out;
}

std::vector<std::vector<Count>> Jdm::rows() const {
    std::vector<std::vector<Count>> out(k_, std::vector<Count>(k_));
    for (int i = 0; i < k_; ++i)
        for (int j = 0; j < k_; ++j) out[i][j] = entries_[static_cast<std::size_t>(i) * k_ + j];
    return out;
}

// ---------------------------------------------------------------------------

LabeledGraph LabeledGraph::from_edges(std::span<const Edge> edges) {
    std::vector<Vertex> labels;
    labels.reserve(edges.size() * 2);
    for (const auto& e : edges) {
        if (e.u == e.v) throw InvalidGraph("loop at vertex " + std::to_string(e.u));
        labels.push_back(e.u);
        labels.push_back(e.v);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    LabeledGraph g;
    g.labels_ = std::move(labels);
    g.classes_.assign(g.labels_.size(), 0);
    g.adjacency_.resize(g.labels_.size());
    for (const auto& e : edges) {
        if (g.has_edge(e.u, e.v))
            throw InvalidGraph("repeated edge " + std::to_string(e.u) + " " + std::to_string(e.v));
        g.add_edge(e.u, e.v);
    }
    for (std::size_t i = 0; i < g.labels_.size(); ++i)
        g.classes_[i] = static_cast<int>(g.adjacency_[i].size());
    return g;
}

LabeledGraph LabeledGraph::with_partition(std::vector<std::pair<Vertex, int>> vertex_classes) {
    std::sort(vertex_classes.begin(), vertex_classes.end());
    LabeledGraph g;
    for (std::size_t i = 0; i < vertex_classes.size(); ++i) {
        if (i > 0 && vertex_classes[i].first == vertex_classes[i - 1].first)
            throw InvalidGraph("vertex listed twice: " + std::to_string(vertex_classes[i].first));
        if (vertex_classes[i].second < 1) throw InvalidGraph("degree classes start at 1");
        g.labels_.push_back(vertex_classes[i].first);
        g.classes_.push_back(vertex_classes[i].second);
    }
    g.adjacency_.resize(g.labels_.size());
    return g;
}

std::size_t LabeledGraph::index_of(Vertex v) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), v);
    if (it == labels_.end() || *it != v) throw InvalidGraph("unknown vertex " + std::to_string(v));
    return static_cast<std::size_t>(it - labels_.begin());
}

bool LabeledGraph::has_vertex(Vertex v) const {
    return std::binary_search(labels_.begin(), labels_.end(), v);
}

int LabeledGraph::degree(Vertex v) const {
    return static_cast<int>(adjacency_[index_of(v)].size());
}

int LabeledGraph::vertex_class(Vertex v) const { return classes_[index_of(v)]; }

const std::vector<Vertex>& LabeledGraph::neighbors(Vertex v) const {
    return adjacency_[index_of(v)];
}

bool LabeledGraph::has_edge(Vertex a, Vertex b) const {
    const auto& n = adjacency_[index_of(a)];
    return std::binary_search(n.begin(), n.end(), b);
}

void LabeledGraph::add_edge(Vertex a, Vertex b) {
    if (a == b) throw InvalidGraph("loop at vertex " + std::to_string(a));
    auto& na = adjacency_[index_of(a)];
    auto& nb = adjacency_[index_of(b)];
    auto ia = std::lower_bound(na.begin(), na.end(), b);
    if (ia != na.end() && *ia == b)
        throw InvalidGraph("edge already present " + std::to_string(a) + " " + std::to_string(b));
    na.insert(ia, b);
    nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
    ++edge_count_;
}

void LabeledGraph::remove_edge(Vertex a, Vertex b) {
    auto& na = adjacency_[index_of(a)];
    auto& nb = adjacency_[index_of(b)];
    auto ia = std::lower_bound(na.begin(), na.end(), b);
    if (ia == na.end() || *ia != b)
        throw InvalidGraph("edge not present " + std::to_string(a) + " " + std::to_string(b));
    na.erase(ia);
    nb.erase(std::lower_bound(nb.begin(), nb.end(), a));
    --edge_count_;
}

std::vector<Edge> LabeledGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t i = 0; i < labels_.size(); ++i)
        for (Vertex w : adjacency_[i])
            if (labels_[i] < w) out.push_back({labels_[i], w});
    return out;
}

int LabeledGraph::max_class() const {
    return classes_.empty() ? 0 : *std::max_element(classes_.begin(), classes_.end());
}

std::vector<Vertex> LabeledGraph::class_members(int i) const {
    std::vector<Vertex> out;
    for (std::size_t x = 0; x < labels_.size(); ++x)
        if (classes_[x] == i) out.push_back(labels_[x]);
    return out;
}

std::vector<std::vector<Vertex>> LabeledGraph::partition() const {
    std::vector<std::vector<Vertex>> out(max_class());
    for (std::size_t x = 0; x < labels_.size(); ++x) out[classes_[x] - 1].push_back(labels_[x]);
    return out;
}

bool LabeledGraph::is_realization() const {
    for (std::size_t x = 0; x < labels_.size(); ++x)
        if (adjacency_[x].empty() || static_cast<int>(adjacency_[x].size()) != classes_[x])
            return false;
    return true;
}

bool LabeledGraph::operator==(const LabeledGraph& other) const {
    return labels_ == other.labels_ && classes_ == other.classes_ &&
           adjacency_ == other.adjacency_;
}

// ---------------------------------------------------------------------------

Count DegreeSpectrum::total() const { return std::accumulate(counts.begin(), counts.end(), Count{0}); }

std::string to_string(RsoFault fault) {
    switch (fault) {
        case RsoFault::kNotDistinct: return "vertices not pairwise distinct";
        case RsoFault::kUnknownVertex: return "unknown vertex";
        case RsoFault::kPivotMismatch: return "a and b not both in the pivot class";
        case RsoFault::kMissingEdge: return "edge ac or bd missing";
        case RsoFault::kEdgePresent: return "edge bc or ad already present";
    }
    return "unknown fault";
}

std::optional<RsoFault> validate_rso(const LabeledGraph& g, const Rso& r) {
    const Vertex vs[4] = {r.a, r.b, r.c, r.d};
    for (int x = 0; x < 4; ++x)
        for (int y = x + 1; y < 4; ++y)
            if (vs[x] == vs[y]) return RsoFault::kNotDistinct;
    for (Vertex v : vs)
        if (!g.has_vertex(v)) return RsoFault::kUnknownVertex;
    if (g.vertex_class(r.a) != r.pivot_class || g.vertex_class(r.b) != r.pivot_class)
        return RsoFault::kPivotMismatch;
    if (!g.has_edge(r.a, r.c) || !g.has_edge(r.b, r.d)) return RsoFault::kMissingEdge;
    if (g.has_edge(r.b, r.c) || g.has_edge(r.a, r.d)) return RsoFault::kEdgePresent;
    return std::nullopt;
}

void apply_rso_in_place(LabeledGraph& g, const Rso& r) {
    if (auto fault = validate_rso(g, r)) {
        throw RsoError(*fault, "RSO " + std::to_string(r.a) + " " + std::to_string(r.b) + " " +
                                   std::to_string(r.c) + " " + std::to_string(r.d) + ": " +
                                   to_string(*fault));
    }
    g.remove_edge(r.a, r.c);
    g.remove_edge(r.b, r.d);
    g.add_edge(r.b, r.c);
    g.add_edge(r.a, r.d);
}

LabeledGraph apply_rso(const LabeledGraph& g, const Rso& r) {
    LabeledGraph out = g;
    apply_rso_in_place(out, r);
    return out;
}

Jdm extract_jdm(const LabeledGraph& g) {
    if (!g.is_realization()) throw NotARealization("graph degrees do not match its partition");
    Jdm j(g.max_class());
    for (const auto& e : g.edges()) {
        const int cu = g.vertex_class(e.u);
        const int cv = g.vertex_class(e.v);
        j.set(cu, cv, j(cu, cv) + 1);
    }
    return j;
}

Jdm extract_jdm(const LabeledGraph& g, int k) { return extract_jdm(g).padded(k); }

std::vector<Rational> vertex_counts(const Jdm& j) {
    std::vector<Rational> out;
    out.reserve(j.dim());
    for (int i = 1; i <= j.dim(); ++i) out.emplace_back(j.class_degree_sum(i), i);
    return out;
}

std::vector<Count> integral_vertex_counts(const Jdm& j) {
    std::vector<Count> out;
    for (const auto& n : vertex_counts(j)) {
        if (!is_integral(n)) throw std::invalid_argument("JDM has a fractional class size");
        out.push_back(n.numerator());
    }
    return out;
}

DegreeSpectrum degree_spectrum(const LabeledGraph& g, Vertex v) {
    DegreeSpectrum s{std::vector<Count>(g.max_class(), 0)};
    for (Vertex w : g.neighbors(v)) ++s.counts[g.vertex_class(w) - 1];
    return s;
}

LabeledGraph delete_vertex(const LabeledGraph& g, Vertex v) {
    if (!g.has_vertex(v)) throw InvalidGraph("unknown vertex " + std::to_string(v));
    std::vector<Edge> kept;
    for (const auto& e : g.edges())
        if (e.u != v && e.v != v) kept.push_back(e);
    return LabeledGraph::from_edges(kept);
}

std::uint64_t fingerprint(const LabeledGraph& g) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t x) {
        for (int b = 0; b < 8; ++b) {
            h ^= (x >> (8 * b)) & 0xffU;
            h *= 1099511628211ULL;
        }
    };
    for (const auto& e : g.edges()) {
        mix(e.u);
        mix(e.v);
    }
    return h;
}

}  // namespace jdm
