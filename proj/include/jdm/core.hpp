#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <initializer_list>
#include <vector>

#include "jdm/rational.hpp"

namespace jdm {

using Vertex = std::uint64_t;
using Count = std::int64_t;

/// Joint degree matrix. Rows and columns are degree classes, addressed 1..dim().
/// Always symmetric with non-negative entries; the diagonal counts each
/// within-class edge once.
class Jdm {
public:
    Jdm() = default;
    explicit Jdm(int k);
    /// Throws std::invalid_argument unless rows form a symmetric non-negative square matrix.
    explicit Jdm(const std::vector<std::vector<Count>>& rows);
    Jdm(std::initializer_list<std::initializer_list<Count>> rows)
        : Jdm(std::vector<std::vector<Count>>(rows.begin(), rows.end())) {}

    int dim() const { return k_; }
    Count operator()(int i, int j) const { return entries_[index(i, j)]; }
    /// Sets entries (i,j) and (j,i).
    void set(int i, int j, Count value);

    /// Number of edges described by the matrix, sum over i <= j.
    Count edge_count() const;
    /// Row sum counting the diagonal twice: the total degree of class i.
    Count class_degree_sum(int i) const;

    /// Same matrix embedded in a larger dimension with zero rows appended.
    Jdm padded(int k) const;
    /// Drops trailing all-zero rows/columns.
    Jdm trimmed() const;

    std::vector<std::vector<Count>> rows() const;

    bool operator==(const Jdm&) const = default;

private:
    std::size_t index(int i, int j) const;

    int k_ = 0;
    std::vector<Count> entries_;
};

struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    /// Normalized so that u < v.
    static Edge of(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
    auto operator<=>(const Edge&) const = default;
};

class InvalidGraph : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotARealization : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Simple graph over labeled vertices with an explicitly stored degree-class
/// partition. The partition normally equals the degree of each vertex; the
/// realization constructor also builds intermediate graphs where it does not.
class LabeledGraph {
public:
    LabeledGraph() = default;

    /// Vertex set is the set of edge endpoints; each vertex is classed by its degree.
    /// Throws InvalidGraph on loops or repeated edges.
    static LabeledGraph from_edges(std::span<const Edge> edges);
    /// Edgeless graph with the given (vertex, class) assignment.
    static LabeledGraph with_partition(std::vector<std::pair<Vertex, int>> vertex_classes);

    std::size_t vertex_count() const { return labels_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    const std::vector<Vertex>& vertices() const { return labels_; }
    bool has_vertex(Vertex v) const;

    int degree(Vertex v) const;
    int vertex_class(Vertex v) const;
    /// Sorted neighbor labels.
    const std::vector<Vertex>& neighbors(Vertex v) const;
    bool has_edge(Vertex a, Vertex b) const;

    void add_edge(Vertex a, Vertex b);
    void remove_edge(Vertex a, Vertex b);

    /// Sorted edge list.
    std::vector<Edge> edges() const;
    /// Largest class index in the partition (0 for the empty graph).
    int max_class() const;
    /// Members of V_i in label order.
    std::vector<Vertex> class_members(int i) const;
    std::vector<std::vector<Vertex>> partition() const;

    /// True when every vertex has degree equal to its class and no vertex is isolated.
    bool is_realization() const;

    bool operator==(const LabeledGraph& other) const;

private:
    std::size_t index_of(Vertex v) const;

    std::vector<Vertex> labels_;
    std::vector<int> classes_;
    std::vector<std::vector<Vertex>> adjacency_;
    std::size_t edge_count_ = 0;
};

/// s_G(v): component i counts the neighbors of v lying in class i.
struct DegreeSpectrum {
    std::vector<Count> counts;

    /// Component for class i (1-based); zero outside the stored range.
    Count operator[](int i) const {
        return i >= 1 && i <= static_cast<int>(counts.size()) ? counts[i - 1] : 0;
    }
    int size() const { return static_cast<int>(counts.size()); }
    Count total() const;
    bool operator==(const DegreeSpectrum&) const = default;
};

/// Restricted swap ac, bd => bc, ad with a and b in class pivot_class.
struct Rso {
    Vertex a = 0;
    Vertex b = 0;
    Vertex c = 0;
    Vertex d = 0;
    int pivot_class = 0;

    Rso inverse() const { return Rso{b, a, c, d, pivot_class}; }
    bool operator==(const Rso&) const = default;
};

enum class RsoFault {
    kNotDistinct,
    kUnknownVertex,
    kPivotMismatch,
    kMissingEdge,
    kEdgePresent,
};

std::string to_string(RsoFault fault);

class RsoError : public std::invalid_argument {
public:
    RsoError(RsoFault fault, const std::string& what)
        : std::invalid_argument(what), fault_(fault) {}
    RsoFault fault() const { return fault_; }

private:
    RsoFault fault_;
};

/// Empty when the swap applies to g.
std::optional<RsoFault> validate_rso(const LabeledGraph& g, const Rso& r);
/// Throws RsoError if the swap does not apply.
void apply_rso_in_place(LabeledGraph& g, const Rso& r);
LabeledGraph apply_rso(const LabeledGraph& g, const Rso& r);

/// Throws NotARealization if some vertex degree differs from its class.
Jdm extract_jdm(const LabeledGraph& g);
/// As above, zero-padded to dimension k (which must be at least the graph's max class).
Jdm extract_jdm(const LabeledGraph& g, int k);

/// n_i = (J_ii + sum_l J_il) / i, exact.
std::vector<Rational> vertex_counts(const Jdm& j);
/// Integral class sizes; throws std::invalid_argument if any n_i is fractional.
std::vector<Count> integral_vertex_counts(const Jdm& j);

/// Spectrum of length g.max_class(). Throws InvalidGraph for unknown vertices.
DegreeSpectrum degree_spectrum(const LabeledGraph& g, Vertex v);

/// Removes v, re-classes remaining vertices by their new degree and drops isolated ones.
LabeledGraph delete_vertex(const LabeledGraph& g, Vertex v);

/// FNV-1a hash over the sorted edge list.
std::uint64_t fingerprint(const LabeledGraph& g);

}  // namespace jdm
