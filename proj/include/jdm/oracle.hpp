#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jdm/core.hpp"
#include "jdm/sampler.hpp"

namespace jdm {

/// Thrown when an exhaustive computation would exceed its configured bound.
class BoundExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Every labeled simple realization of a JDM on one fixed partition.
/// Members are edge sets over vertex indices, packed into 64-bit masks.
class RealizationSpace {
public:
    static constexpr std::size_t kMaxVertices = 11;

    RealizationSpace() = default;
    RealizationSpace(Jdm j, std::vector<std::pair<Vertex, int>> partition);

    const Jdm& jdm() const { return jdm_; }
    /// Labels ascending; classes()[x] is the class of vertices()[x].
    const std::vector<Vertex>& vertices() const { return labels_; }
    const std::vector<int>& classes() const { return classes_; }

    std::size_t size() const { return masks_.size(); }
    bool empty() const { return masks_.empty(); }
    const std::vector<std::uint64_t>& masks() const { return masks_; }
    LabeledGraph graph(std::size_t index) const;
    /// Position of g in the space, if present.
    std::optional<std::size_t> find(const LabeledGraph& g) const;

    /// Bit for the vertex-index pair x < y.
    std::size_t pair_bit(std::size_t x, std::size_t y) const;

    /// Used by the enumerator: masks must arrive in increasing order.
    void push(std::uint64_t mask) { masks_.push_back(mask); }

private:
    Jdm jdm_;
    std::vector<Vertex> labels_;
    std::vector<int> classes_;
    std::vector<std::uint64_t> masks_;
};

/// Exhaustive search over the vertex pairs of each class pair, with degree and
/// class-pair-count pruning. Matrices failing condition (i) give an empty
/// space. Throws BoundExceeded past `bound` vertices (at most kMaxVertices).
RealizationSpace enumerate_realizations(const Jdm& j, std::span<const Vertex> labels,
                                        std::size_t bound = 8);
/// Labels 1..n.
RealizationSpace enumerate_realizations(const Jdm& j, std::size_t bound = 8);

struct MetagraphCensus {
    bool connected = false;
    /// Descending.
    std::vector<std::size_t> component_sizes;
    /// Unordered pairs of realizations one RSO apart.
    std::size_t edge_count = 0;
};

/// Every realization one RSO away from realization `index`, as indices into the space.
std::vector<std::size_t> rso_neighbors(const RealizationSpace& space, std::size_t index);

/// Breadth-first search over single-RSO adjacency. Throws std::invalid_argument on an empty space.
MetagraphCensus metagraph_connected(const RealizationSpace& space);

/// Existence search without a vertex bound. Vertices are processed one at a
/// time; a vertex takes its neighbors inside each class from the unprocessed
/// members with the largest residual degree, which loses nothing (any
/// realization can be moved there by swaps preserving the class-pair counts).
/// Failed residual states are memoized. Returns a realization when one exists.
std::optional<LabeledGraph> find_realization(const Jdm& j);
bool realization_exists(const Jdm& j);

struct Fiber {
    MultiGraphRealization graph;
    std::uint64_t count = 0;
};

struct FiberCensus {
    std::uint64_t total = 0;
    /// Ordered by multigraph.
    std::vector<Fiber> fibers;
};

/// Walks every tuple of per-component permutations and groups configurations
/// by labeled multigraph. Throws BoundExceeded if some component has more than
/// `bound` matchings.
FiberCensus enumerate_configurations(const ConfigModel& m, std::uint64_t bound = 3628800);

/// Exact transition matrix of chain A (or chain B over the simple
/// configurations). Entries are integers over a common denominator.
struct TransitionMatrix {
    std::vector<Configuration> states;
    std::uint64_t denominator = 0;
    /// Sparse rows: (column, numerator), columns ascending.
    std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> rows;

    std::uint64_t entry(std::size_t from, std::size_t to) const;
    bool symmetric() const;
    bool doubly_stochastic() const;
    /// Every state reaches every other.
    bool irreducible() const;
};

/// Only ChainKind::kA and ChainKind::kB are meaningful. Throws BoundExceeded
/// if the state space exceeds max_states.
TransitionMatrix transition_matrix(const ConfigModel& m, ChainKind chain,
                                   std::size_t max_states = 100000);

}  // namespace jdm
