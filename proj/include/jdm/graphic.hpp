#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jdm/core.hpp"

namespace jdm {

/// The three conditions characterizing graphical JDMs.
enum class Condition {
    kIntegralClassSize = 1,    // (i)   n_i is an integer
    kWithinClassCapacity = 2,  // (ii)  J_ii <= C(n_i, 2)
    kCrossClassCapacity = 3,   // (iii) J_ij <= n_i * n_j
};

struct Violation {
    Condition condition;
    int i = 0;
    int j = 0;  // equals i for conditions (i) and (ii)
};

std::string describe(const Violation& v);

struct GraphicalityReport {
    bool graphical = false;
    std::vector<Rational> class_sizes;
    std::vector<bool> integral;
    std::vector<bool> within_capacity;
    /// Symmetric; diagonal entries are true.
    std::vector<std::vector<bool>> cross_capacity;
    /// Scan order: condition (i) over all classes, then (ii), then (iii) over i < j.
    std::optional<Violation> first_violation;
};

GraphicalityReport check_graphical(const Jdm& j);

class NotGraphical : public std::invalid_argument {
public:
    explicit NotGraphical(GraphicalityReport report);
    const GraphicalityReport& report() const { return report_; }

private:
    GraphicalityReport report_;
};

/// Labels 1..n for the n vertices the matrix implies. Requires integral class sizes.
std::vector<Vertex> default_labels(const Jdm& j);

/// Sorts labels and hands them out class by class: the first n_1 to W_1, and so on.
std::vector<std::pair<Vertex, int>> assign_partition(const Jdm& j, std::span<const Vertex> labels);

/// Edge counts between partition classes (not degrees). Dimension = g.max_class().
Jdm class_pair_counts(const LabeledGraph& g);

/// sum over vertices of |degree - class|.
Count psi(const LabeledGraph& g);

/// A graph on the fixed partition W_1..W_k whose class-pair edge counts match
/// the target matrix exactly; degrees may still be off.
struct CandidateState {
    LabeledGraph graph;
    Jdm target;

    Count psi() const { return jdm::psi(graph); }
};

/// Fills each class pair greedily: row-major cells of W_i x W_j for i < j,
/// lexicographic pairs inside W_i. Throws NotGraphical if the matrix fails the test.
CandidateState initial_candidate(const Jdm& j, std::span<const Vertex> labels);

/// One edge move yz => xz inside a class W_i with d(x) < i < d(y). psi drops by 2.
/// Throws std::invalid_argument when psi is already zero.
CandidateState psi_descent_step(const CandidateState& s);

struct Construction {
    LabeledGraph graph;
    Count initial_psi = 0;
    std::size_t steps = 0;
};

Construction construct_realization_traced(const Jdm& j, std::span<const Vertex> labels);
LabeledGraph construct_realization(const Jdm& j, std::span<const Vertex> labels);
LabeledGraph construct_realization(const Jdm& j);

}  // namespace jdm
