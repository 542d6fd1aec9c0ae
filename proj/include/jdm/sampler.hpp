#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jdm/core.hpp"
#include "jdm/rng.hpp"

namespace jdm {

/// Generalized configuration model of a JDM.
///
/// Every vertex of class k contributes a cloud of k mini-vertices; every edge
/// counted by J_ij contributes two labeled edge-points, one of class i and one
/// of class j (for i == j both are class i, told apart as side 0 and side 1).
/// Class k yields one component pairing its k|V_k| mini-vertices with its
/// k|V_k| edge-points. Only condition (i) is required, so the model also
/// describes matrices whose realizations are necessarily multigraphs.
class ConfigModel {
public:
    struct EdgePoint {
        std::size_t edge = 0;
        int side = 0;
    };

    struct Component {
        int degree_class = 0;
        std::size_t first_vertex = 0;  // index into vertices() of the class's first member
        std::vector<EdgePoint> points;

        std::size_t size() const { return points.size(); }
        /// Mini-vertex m belongs to vertex first_vertex + m / degree_class (slot m % degree_class).
        std::size_t owner(std::size_t m) const { return first_vertex + m / degree_class; }
    };

    struct EdgeLabel {
        int class_a = 0;
        int class_b = 0;
        std::size_t component[2] = {0, 0};
        std::size_t point[2] = {0, 0};
    };

    ConfigModel(const Jdm& j, std::vector<std::pair<Vertex, int>> partition);

    const Jdm& jdm() const { return jdm_; }
    /// Vertex labels ordered by class, then label.
    const std::vector<Vertex>& vertices() const { return vertices_; }
    int vertex_class(std::size_t index) const { return vertex_classes_[index]; }
    const std::vector<Component>& components() const { return components_; }
    const std::vector<EdgeLabel>& edges() const { return edges_; }
    std::size_t total_mini_vertices() const { return total_; }
    /// Component index holding class k, if V_k is non-empty.
    std::optional<std::size_t> component_of_class(int k) const;

private:
    Jdm jdm_;
    std::vector<Vertex> vertices_;
    std::vector<int> vertex_classes_;
    std::vector<Component> components_;
    std::vector<EdgeLabel> edges_;
    std::size_t total_ = 0;
};

/// Labels 1..n assigned class by class. Throws std::invalid_argument if some n_i is fractional.
ConfigModel build_model(const Jdm& j);
ConfigModel build_model(const Jdm& j, std::span<const Vertex> labels);
/// Model over g's own vertex partition.
ConfigModel build_model(const LabeledGraph& g);

/// One perfect matching per component: mini-vertex -> edge-point, kept with its inverse.
struct Configuration {
    std::vector<std::vector<std::uint32_t>> matching;
    std::vector<std::vector<std::uint32_t>> inverse;

    /// Exchanges the edge-points of mini-vertices m1 and m2 of one component.
    void swap_points(std::size_t component, std::size_t m1, std::size_t m2);
    /// Each matching is a bijection and agrees with its inverse.
    bool valid() const;
    bool operator==(const Configuration&) const = default;
};

/// Matching each mini-vertex m to edge-point m.
Configuration identity_configuration(const ConfigModel& m);
/// Independent Fisher-Yates permutation per component. Uniform over
/// configurations, not over multigraphs: each multigraph is weighted by its
/// fiber size (the triangle model gives 384 : 48 : 96 : 96 : 96).
Configuration uniform_configuration(const ConfigModel& m, Rng& rng);

/// Loops and parallel edges allowed; keys are (u, v) with u <= v.
struct MultiGraphRealization {
    std::vector<Vertex> vertices;
    std::map<std::pair<Vertex, Vertex>, int> multiplicity;

    bool is_simple() const;
    /// Loops count twice.
    int degree(Vertex v) const;
    std::size_t loop_count() const;
    /// Requires is_simple(); the partition is inferred from degrees.
    LabeledGraph to_graph() const;

    bool operator==(const MultiGraphRealization&) const = default;
    auto operator<=>(const MultiGraphRealization&) const = default;
};

MultiGraphRealization to_multigraph(const ConfigModel& m, const Configuration& c);

/// Lazy step: with probability 1/2 nothing; otherwise pick a matched pair
/// uniformly among all mini-vertices, a second uniformly within the same
/// component, and exchange their edge-points.
void chain_a_step(const ConfigModel& m, Configuration& c, Rng& rng);

/// Chain B with an incrementally maintained edge set: proposals are drawn as
/// in chain A and rejected if the two affected edge labels would form a loop
/// or a parallel edge.
class SimpleChain {
public:
    /// Throws std::invalid_argument if the starting configuration is not simple.
    SimpleChain(const ConfigModel& model, Configuration start);

    enum class Outcome { kLazy, kNoOp, kAccepted, kRejected };
    Outcome step(Rng& rng);

    const Configuration& state() const { return state_; }
    bool has_edge(std::size_t u, std::size_t v) const;

private:
    std::pair<std::size_t, std::size_t> endpoints(std::size_t edge) const;
    static std::uint64_t key(std::size_t u, std::size_t v);

    const ConfigModel* model_;
    Configuration state_;
    std::unordered_map<std::uint64_t, int> edges_;
};

/// One chain-B step on c; rebuilds the edge set, so prefer SimpleChain for long runs.
void chain_b_step(const ConfigModel& m, Configuration& c, Rng& rng);

/// Configuration whose multigraph is g: class-pair edges in sorted order take
/// edge labels in index order, and each vertex's slots are consumed in order.
Configuration embed_realization(const LabeledGraph& g, const ConfigModel& m);

/// Number of configurations mapping to any one simple realization:
/// prod_k (k!)^{|V_k|} * prod_{i<j} J_ij! * prod_i 2^{J_ii} J_ii!.
/// Throws std::overflow_error past 64 bits.
std::uint64_t simple_fiber_size(const Jdm& j);

struct Autocorrelation {
    std::vector<double> rho;  // rho[0] == 1
    double integrated_time = 1.0;
    std::size_t window = 0;   // number of lag pairs summed
};

/// Normalized autocovariance for lags 0..max_lag and the integrated
/// autocorrelation time by Geyer's initial positive sequence. Constant series
/// report zero correlation beyond lag 0. Requires series.size() > max_lag.
Autocorrelation autocorrelation(std::span<const double> series, std::size_t max_lag);

enum class ChainKind { kA, kB, kDirect };

struct SampleOptions {
    ChainKind chain = ChainKind::kB;
    std::size_t steps = 1000;
    std::size_t burnin = 0;
    std::size_t thin = 1;
    std::uint64_t seed = 0;
    std::size_t max_lag = 50;
};

struct SampleStats {
    std::size_t steps = 0;
    std::size_t lazy = 0;
    std::size_t no_op = 0;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t samples = 0;
    std::size_t simple_samples = 0;
    std::pair<Vertex, Vertex> tracked_pair{0, 0};
    Autocorrelation tracked_autocorrelation;
};

/// Runs a chain (or draws direct samples) for burnin + steps iterations, and
/// after burn-in reports every thin-th state to on_sample. Chain B starts from
/// the constructed realization; chain A and direct need only condition (i).
SampleStats run_sampler(const ConfigModel& m, const SampleOptions& options,
                        const std::function<void(const MultiGraphRealization&)>& on_sample);

}  // namespace jdm
