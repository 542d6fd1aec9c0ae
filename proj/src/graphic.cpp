#include "jdm/graphic.hpp"

#include <algorithm>
#include <cstdlib>

namespace jdm {

std::string describe(const Violation& v) {
    switch (v.condition) {
        case Condition::kIntegralClassSize:
            return "condition (i): n_" + std::to_string(v.i) + " is not an integer";
        case Condition::kWithinClassCapacity:
            return "condition (ii): J_" + std::to_string(v.i) + std::to_string(v.i) +
                   " exceeds C(n_" + std::to_string(v.i) + ", 2)";
        case Condition::kCrossClassCapacity:
            return "condition (iii): J_" + std::to_string(v.i) + std::to_string(v.j) +
                   " exceeds n_" + std::to_string(v.i) + " * n_" + std::to_string(v.j);
    }
    return "unknown condition";
}

GraphicalityReport check_graphical(const Jdm& j) {
    const int k = j.dim();
    GraphicalityReport r;
    r.class_sizes = vertex_counts(j);
    r.integral.resize(k);
    r.within_capacity.resize(k);
    r.cross_capacity.assign(k, std::vector<bool>(k, true));

    std::vector<Violation> violations;
    for (int i = 1; i <= k; ++i) {
        r.integral[i - 1] = is_integral(r.class_sizes[i - 1]);
        if (!r.integral[i - 1]) violations.push_back({Condition::kIntegralClassSize, i, i});
    }
    for (int i = 1; i <= k; ++i) {
        const Rational& n = r.class_sizes[i - 1];
        r.within_capacity[i - 1] = Rational(j(i, i)) <= n * (n - 1) / 2;
        if (!r.within_capacity[i - 1]) violations.push_back({Condition::kWithinClassCapacity, i, i});
    }
    for (int i = 1; i <= k; ++i) {
        for (int l = i + 1; l <= k; ++l) {
            const bool ok = Rational(j(i, l)) <= r.class_sizes[i - 1] * r.class_sizes[l - 1];
            r.cross_capacity[i - 1][l - 1] = r.cross_capacity[l - 1][i - 1] = ok;
            if (!ok) violations.push_back({Condition::kCrossClassCapacity, i, l});
        }
    }
    if (!violations.empty()) r.first_violation = violations.front();
    r.graphical = violations.empty();
    return r;
}

NotGraphical::NotGraphical(GraphicalityReport report)
    : std::invalid_argument("matrix is not a graphical JDM: " +
                            describe(*report.first_violation)),
      report_(std::move(report)) {}

std::vector<Vertex> default_labels(const Jdm& j) {
    Count n = 0;
    for (Count c : integral_vertex_counts(j)) n += c;
    std::vector<Vertex> labels(static_cast<std::size_t>(n));
    for (std::size_t x = 0; x < labels.size(); ++x) labels[x] = x + 1;
    return labels;
}

std::vector<std::pair<Vertex, int>> assign_partition(const Jdm& j, std::span<const Vertex> labels) {
    const auto sizes = integral_vertex_counts(j);
    std::vector<Vertex> sorted(labels.begin(), labels.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("vertex labels must be distinct");
    Count total = 0;
    for (Count c : sizes) total += c;
    if (static_cast<Count>(sorted.size()) != total)
        throw std::invalid_argument("expected " + std::to_string(total) + " labels, got " +
                                    std::to_string(sorted.size()));
    std::vector<std::pair<Vertex, int>> out;
    std::size_t next = 0;
    for (int i = 1; i <= j.dim(); ++i)
        for (Count c = 0; c < sizes[i - 1]; ++c) out.emplace_back(sorted[next++], i);
    return out;
}

Jdm class_pair_counts(const LabeledGraph& g) {
    Jdm counts(g.max_class());
    for (const auto& e : g.edges()) {
        const int a = g.vertex_class(e.u);
        const int b = g.vertex_class(e.v);
        counts.set(a, b, counts(a, b) + 1);
    }
    return counts;
}

Count psi(const LabeledGraph& g) {
    Count total = 0;
    for (Vertex v : g.vertices()) total += std::abs(g.degree(v) - g.vertex_class(v));
    return total;
}

CandidateState initial_candidate(const Jdm& j, std::span<const Vertex> labels) {
    auto report = check_graphical(j);
    if (!report.graphical) throw NotGraphical(std::move(report));

    CandidateState s{LabeledGraph::with_partition(assign_partition(j, labels)), j};
    const int k = j.dim();
    std::vector<std::vector<Vertex>> classes(k);
    for (int i = 1; i <= k; ++i) classes[i - 1] = s.graph.class_members(i);

    for (int i = 1; i <= k; ++i) {
        const auto& wi = classes[i - 1];
        Count left = j(i, i);
        for (std::size_t x = 0; x < wi.size() && left > 0; ++x)
            for (std::size_t y = x + 1; y < wi.size() && left > 0; ++y, --left)
                s.graph.add_edge(wi[x], wi[y]);
        for (int l = i + 1; l <= k; ++l) {
            const auto& wl = classes[l - 1];
            left = j(i, l);
            for (std::size_t x = 0; x < wi.size() && left > 0; ++x)
                for (std::size_t y = 0; y < wl.size() && left > 0; ++y, --left)
                    s.graph.add_edge(wi[x], wl[y]);
        }
    }
    return s;
}

CandidateState psi_descent_step(const CandidateState& s) {
    const LabeledGraph& g = s.graph;
    std::optional<Vertex> deficient;
    for (Vertex v : g.vertices()) {
        if (g.degree(v) < g.vertex_class(v)) {
            deficient = v;
            break;
        }
    }
    if (!deficient) {
        if (psi(g) == 0) throw std::invalid_argument("psi is already zero");
        throw std::logic_error("psi > 0 but no deficient vertex");
    }
    const Vertex x = *deficient;
    const int cls = g.vertex_class(x);

    // A class's degree sum is fixed at cls * |W_cls|, so a deficit forces a surplus there.
    std::optional<Vertex> surplus;
    for (Vertex v : g.class_members(cls)) {
        if (g.degree(v) > cls) {
            surplus = v;
            break;
        }
    }
    if (!surplus) throw std::logic_error("deficient class without a surplus vertex");
    const Vertex y = *surplus;

    const auto& nx = g.neighbors(x);
    for (Vertex z : g.neighbors(y)) {
        if (z == x || std::binary_search(nx.begin(), nx.end(), z)) continue;
        CandidateState next = s;
        next.graph.remove_edge(y, z);
        next.graph.add_edge(x, z);
        return next;
    }
    throw std::logic_error("no neighbor of the surplus vertex can be moved");
}

Construction construct_realization_traced(const Jdm& j, std::span<const Vertex> labels) {
    CandidateState s = initial_candidate(j, labels);
    Construction out;
    out.initial_psi = s.psi();
    while (s.psi() > 0) {
        s = psi_descent_step(s);
        ++out.steps;
    }
    out.graph = std::move(s.graph);
    return out;
}

LabeledGraph construct_realization(const Jdm& j, std::span<const Vertex> labels) {
    return construct_realization_traced(j, labels).graph;
}

LabeledGraph construct_realization(const Jdm& j) {
    auto report = check_graphical(j);
    if (!report.graphical) throw NotGraphical(std::move(report));
    const auto labels = default_labels(j);
    return construct_realization(j, labels);
}

}  // namespace jdm
