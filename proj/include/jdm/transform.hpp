#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jdm/core.hpp"

namespace jdm {

/// Bipartite graph on index sets [0, left) and [0, right).
class BipartiteGraph {
public:
    BipartiteGraph() = default;
    BipartiteGraph(std::size_t left, std::size_t right);

    std::size_t left_size() const { return adjacency_.size(); }
    std::size_t right_size() const { return right_; }
    bool has_edge(std::size_t l, std::size_t r) const;
    void add_edge(std::size_t l, std::size_t r);
    void remove_edge(std::size_t l, std::size_t r);
    /// Sorted right neighbors of left node l.
    const std::vector<std::size_t>& neighbors(std::size_t l) const { return adjacency_[l]; }
    std::vector<std::size_t> left_degrees() const;
    std::vector<std::size_t> right_degrees() const;
    std::size_t edge_count() const;

    bool operator==(const BipartiteGraph&) const = default;

private:
    std::size_t right_ = 0;
    std::vector<std::vector<std::size_t>> adjacency_;
};

/// Left nodes a, b trade right partners: ac, bd => bc, ad.
struct BipartiteSwap {
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t c = 0;
    std::size_t d = 0;
    bool operator==(const BipartiteSwap&) const = default;
};

/// Throws std::invalid_argument if the swap does not apply.
void apply_swap(BipartiteGraph& g, const BipartiteSwap& s);

/// Swap sequence turning b1 into exactly b2. Both must share node sets and
/// per-node degrees (std::invalid_argument otherwise).
std::vector<BipartiteSwap> bipartite_swap_path(const BipartiteGraph& b1, const BipartiteGraph& b2);

/// Ordinary swap ac, bd => bc, ad with no class restriction.
struct Swap {
    Vertex a = 0;
    Vertex b = 0;
    Vertex c = 0;
    Vertex d = 0;
    Swap inverse() const { return Swap{b, a, c, d}; }
    bool operator==(const Swap&) const = default;
};

/// Throws std::invalid_argument if the swap does not apply. Ignores the partition.
void apply_swap(LabeledGraph& g, const Swap& s);

/// Swap sequence turning g1 into exactly g2; same vertex sets and degrees required.
std::vector<Swap> simple_swap_path(const LabeledGraph& g1, const LabeledGraph& g2);

/// Vertices of class j against the classes whose average A_j(i) is fractional.
/// An edge marks a vertex that is high for that class (one above the floor).
struct AuxBipartite {
    std::vector<Vertex> vertices;    // left side, label order
    std::vector<int> mixed_classes;  // right side, ascending
    BipartiteGraph graph;
};

/// Throws std::invalid_argument unless class j is balanced in g.
AuxBipartite aux_bipartite(const LabeledGraph& g, int j);

struct Lifted {
    LabeledGraph graph;
    Rso rso;
};

/// Realizes a swap of aux_bipartite(g, j) as one RSO on g.
Lifted lift_aux_swap(const LabeledGraph& g, int j, const BipartiteSwap& aux_swap);

struct Aligned {
    LabeledGraph graph;
    std::vector<Rso> rsos;
};

/// RSOs moving balanced g to a balanced g' whose spectra equal those of h everywhere.
Aligned spectrum_align(const LabeledGraph& g, const LabeledGraph& h);

struct SwapSequence {
    std::vector<Rso> rsos;
    std::uint64_t source_fingerprint = 0;
    std::uint64_t target_fingerprint = 0;
};

/// RSO sequence from g to h. Both must realize the same JDM on the same partition.
SwapSequence rso_path(const LabeledGraph& g, const LabeledGraph& h);

struct ReplayReport {
    bool valid = false;
    std::size_t steps_applied = 0;
    std::optional<std::size_t> failed_step;
    std::string message;
};

/// Applies every RSO in order, validating each, and compares against target.
ReplayReport replay(const LabeledGraph& source, const std::vector<Rso>& rsos,
                    const LabeledGraph& target);

}  // namespace jdm
