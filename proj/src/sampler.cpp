#include "jdm/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "jdm/graphic.hpp"

namespace jdm {

ConfigModel::ConfigModel(const Jdm& j, std::vector<std::pair<Vertex, int>> partition) : jdm_(j) {
    const auto sizes = integral_vertex_counts(j);
    std::sort(partition.begin(), partition.end(), [](const auto& x, const auto& y) {
        return std::tie(x.second, x.first) < std::tie(y.second, y.first);
    });
    std::vector<Count> seen(j.dim(), 0);
    for (const auto& [v, k] : partition) {
        if (k < 1 || k > j.dim()) throw std::invalid_argument("vertex class outside the JDM");
        ++seen[k - 1];
        vertices_.push_back(v);
        vertex_classes_.push_back(k);
    }
    if (seen != sizes) throw std::invalid_argument("partition sizes do not match the JDM");

    std::vector<std::optional<std::size_t>> component_index(j.dim());
    std::size_t first = 0;
    for (int k = 1; k <= j.dim(); ++k) {
        if (sizes[k - 1] == 0) continue;
        component_index[k - 1] = components_.size();
        components_.push_back(Component{k, first, {}});
        first += static_cast<std::size_t>(sizes[k - 1]);
    }
    for (int a = 1; a <= j.dim(); ++a) {
        for (int b = a; b <= j.dim(); ++b) {
            for (Count e = 0; e < j(a, b); ++e) {
                EdgeLabel label{a, b, {}, {}};
                const std::size_t id = edges_.size();
                for (int side = 0; side < 2; ++side) {
                    auto& comp = components_[*component_index[(side == 0 ? a : b) - 1]];
                    label.component[side] = *component_index[(side == 0 ? a : b) - 1];
                    label.point[side] = comp.points.size();
                    comp.points.push_back(EdgePoint{id, side});
                }
                edges_.push_back(label);
            }
        }
    }
    for (const auto& comp : components_) total_ += comp.size();
}

std::optional<std::size_t> ConfigModel::component_of_class(int k) const {
    for (std::size_t c = 0; c < components_.size(); ++c)
        if (components_[c].degree_class == k) return c;
    return std::nullopt;
}

ConfigModel build_model(const Jdm& j) { return build_model(j, default_labels(j)); }

ConfigModel build_model(const Jdm& j, std::span<const Vertex> labels) {
    return ConfigModel(j, assign_partition(j, labels));
}

ConfigModel build_model(const LabeledGraph& g) {
    std::vector<std::pair<Vertex, int>> partition;
    for (Vertex v : g.vertices()) partition.emplace_back(v, g.vertex_class(v));
    return ConfigModel(extract_jdm(g), std::move(partition));
}

// ---------------------------------------------------------------------------

void Configuration::swap_points(std::size_t component, std::size_t m1, std::size_t m2) {
    auto& match = matching[component];
    auto& inv = inverse[component];
    std::swap(match[m1], match[m2]);
    inv[match[m1]] = static_cast<std::uint32_t>(m1);
    inv[match[m2]] = static_cast<std::uint32_t>(m2);
}

bool Configuration::valid() const {
    if (matching.size() != inverse.size()) return false;
    for (std::size_t c = 0; c < matching.size(); ++c) {
        const auto& match = matching[c];
        const auto& inv = inverse[c];
        if (match.size() != inv.size()) return false;
        std::vector<bool> hit(match.size(), false);
        for (std::size_t m = 0; m < match.size(); ++m) {
            if (match[m] >= match.size() || hit[match[m]] || inv[match[m]] != m) return false;
            hit[match[m]] = true;
        }
    }
    return true;
}

Configuration identity_configuration(const ConfigModel& m) {
    Configuration c;
    for (const auto& comp : m.components()) {
        std::vector<std::uint32_t> ident(comp.size());
        std::iota(ident.begin(), ident.end(), 0U);
        c.matching.push_back(ident);
        c.inverse.push_back(std::move(ident));
    }
    return c;
}

Configuration uniform_configuration(const ConfigModel& m, Rng& rng) {
    Configuration c = identity_configuration(m);
    for (std::size_t comp = 0; comp < c.matching.size(); ++comp) {
        auto& match = c.matching[comp];
        for (std::size_t x = match.size(); x > 1; --x) {
            const std::size_t y = rng.below(x);
            std::swap(match[x - 1], match[y]);
        }
        for (std::size_t x = 0; x < match.size(); ++x) c.inverse[comp][match[x]] = x;
    }
    return c;
}

// ---------------------------------------------------------------------------

bool MultiGraphRealization::is_simple() const {
    return std::all_of(multiplicity.begin(), multiplicity.end(), [](const auto& kv) {
        return kv.first.first != kv.first.second && kv.second == 1;
    });
}

int MultiGraphRealization::degree(Vertex v) const {
    int deg = 0;
    for (const auto& [key, mult] : multiplicity) {
        if (key.first == v) deg += mult;
        if (key.second == v) deg += mult;
    }
    return deg;
}

std::size_t MultiGraphRealization::loop_count() const {
    std::size_t loops = 0;
    for (const auto& [key, mult] : multiplicity)
        if (key.first == key.second) loops += static_cast<std::size_t>(mult);
    return loops;
}

LabeledGraph MultiGraphRealization::to_graph() const {
    if (!is_simple()) throw InvalidGraph("multigraph has loops or parallel edges");
    std::vector<Edge> edges;
    for (const auto& kv : multiplicity) edges.push_back(Edge::of(kv.first.first, kv.first.second));
    return LabeledGraph::from_edges(edges);
}

namespace {

std::pair<std::size_t, std::size_t> edge_endpoints(const ConfigModel& m, const Configuration& c,
                                                   std::size_t edge) {
    const auto& label = m.edges()[edge];
    std::size_t ends[2];
    for (int side = 0; side < 2; ++side) {
        const auto& comp = m.components()[label.component[side]];
        ends[side] = comp.owner(c.inverse[label.component[side]][label.point[side]]);
    }
    return {ends[0], ends[1]};
}

struct Proposal {
    std::size_t component = 0;
    std::size_t m1 = 0;
    std::size_t m2 = 0;
};

// Empty for the lazy half. Draw order: coin, first pair, second pair.
std::optional<Proposal> propose(const ConfigModel& m, Rng& rng) {
    if (rng.coin()) return std::nullopt;
    std::size_t first = rng.below(m.total_mini_vertices());
    std::size_t comp = 0;
    while (first >= m.components()[comp].size()) first -= m.components()[comp++].size();
    const std::size_t second = rng.below(m.components()[comp].size());
    return Proposal{comp, first, second};
}

}  // namespace

MultiGraphRealization to_multigraph(const ConfigModel& m, const Configuration& c) {
    MultiGraphRealization g;
    g.vertices = m.vertices();
    std::sort(g.vertices.begin(), g.vertices.end());
    for (std::size_t e = 0; e < m.edges().size(); ++e) {
        auto [x, y] = edge_endpoints(m, c, e);
        Vertex u = m.vertices()[x];
        Vertex v = m.vertices()[y];
        if (u > v) std::swap(u, v);
        ++g.multiplicity[{u, v}];
    }
    return g;
}

void chain_a_step(const ConfigModel& m, Configuration& c, Rng& rng) {
    if (auto p = propose(m, rng)) c.swap_points(p->component, p->m1, p->m2);
}

SimpleChain::SimpleChain(const ConfigModel& model, Configuration start)
    : model_(&model), state_(std::move(start)) {
    for (std::size_t e = 0; e < model.edges().size(); ++e) {
        auto [u, v] = endpoints(e);
        if (u == v || ++edges_[key(u, v)] > 1)
            throw std::invalid_argument("chain B needs a simple starting configuration");
    }
}

std::uint64_t SimpleChain::key(std::size_t u, std::size_t v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

std::pair<std::size_t, std::size_t> SimpleChain::endpoints(std::size_t edge) const {
    return edge_endpoints(*model_, state_, edge);
}

bool SimpleChain::has_edge(std::size_t u, std::size_t v) const {
    auto it = edges_.find(key(u, v));
    return it != edges_.end() && it->second > 0;
}

SimpleChain::Outcome SimpleChain::step(Rng& rng) {
    const auto p = propose(*model_, rng);
    if (!p) return Outcome::kLazy;
    if (p->m1 == p->m2) return Outcome::kNoOp;

    const auto& comp = model_->components()[p->component];
    const std::size_t e1 = comp.points[state_.matching[p->component][p->m1]].edge;
    const std::size_t e2 = comp.points[state_.matching[p->component][p->m2]].edge;
    const auto old1 = endpoints(e1);
    const auto old2 = endpoints(e2);

    auto drop = [this](std::pair<std::size_t, std::size_t> uv) {
        auto it = edges_.find(key(uv.first, uv.second));
        if (--it->second == 0) edges_.erase(it);
    };
    drop(old1);
    if (e2 != e1) drop(old2);

    state_.swap_points(p->component, p->m1, p->m2);
    const auto new1 = endpoints(e1);
    const auto new2 = endpoints(e2);

    const bool loop = new1.first == new1.second || new2.first == new2.second;
    const bool parallel = has_edge(new1.first, new1.second) || has_edge(new2.first, new2.second) ||
                          (e1 != e2 && key(new1.first, new1.second) == key(new2.first, new2.second));
    if (loop || parallel) {
        state_.swap_points(p->component, p->m1, p->m2);
        ++edges_[key(old1.first, old1.second)];
        if (e2 != e1) ++edges_[key(old2.first, old2.second)];
        return Outcome::kRejected;
    }
    ++edges_[key(new1.first, new1.second)];
    if (e2 != e1) ++edges_[key(new2.first, new2.second)];
    return Outcome::kAccepted;
}

void chain_b_step(const ConfigModel& m, Configuration& c, Rng& rng) {
    SimpleChain chain(m, c);
    chain.step(rng);
    c = chain.state();
}

Configuration embed_realization(const LabeledGraph& g, const ConfigModel& m) {
    const Jdm target = m.jdm();
    const Jdm actual = extract_jdm(g);
    const int dim = std::max(target.dim(), actual.dim());
    if (actual.padded(dim) != target.padded(dim))
        throw std::invalid_argument("graph does not realize the model's JDM");

    std::unordered_map<Vertex, std::size_t> index;
    for (std::size_t x = 0; x < m.vertices().size(); ++x) index[m.vertices()[x]] = x;
    for (Vertex v : g.vertices()) {
        auto it = index.find(v);
        if (it == index.end() || m.vertex_class(it->second) != g.vertex_class(v))
            throw std::invalid_argument("graph partition differs from the model's");
    }

    // Edge labels are laid out pair by pair, so each class pair owns a contiguous range.
    std::map<std::pair<int, int>, std::size_t> cursor;
    for (std::size_t e = m.edges().size(); e-- > 0;)
        cursor[{m.edges()[e].class_a, m.edges()[e].class_b}] = e;

    Configuration c = identity_configuration(m);
    std::vector<std::size_t> next_slot(m.vertices().size(), 0);
    for (const auto& edge : g.edges()) {
        Vertex a = edge.u, b = edge.v;
        if (g.vertex_class(a) > g.vertex_class(b)) std::swap(a, b);
        const std::size_t label = cursor[{g.vertex_class(a), g.vertex_class(b)}]++;
        const auto& el = m.edges()[label];
        const Vertex ends[2] = {a, b};
        for (int side = 0; side < 2; ++side) {
            const std::size_t vi = index[ends[side]];
            const auto& comp = m.components()[el.component[side]];
            const std::size_t mini =
                (vi - comp.first_vertex) * static_cast<std::size_t>(comp.degree_class) + next_slot[vi]++;
            c.matching[el.component[side]][mini] = static_cast<std::uint32_t>(el.point[side]);
        }
    }
    for (std::size_t comp = 0; comp < c.matching.size(); ++comp)
        for (std::size_t x = 0; x < c.matching[comp].size(); ++x)
            c.inverse[comp][c.matching[comp][x]] = static_cast<std::uint32_t>(x);
    return c;
}

std::uint64_t simple_fiber_size(const Jdm& j) {
    const auto sizes = integral_vertex_counts(j);
    std::uint64_t total = 1;
    auto mul = [&total](std::uint64_t x) {
        if (x != 0 && total > std::numeric_limits<std::uint64_t>::max() / x)
            throw std::overflow_error("fiber size exceeds 64 bits");
        total *= x;
    };
    auto factorial = [&mul](Count n) {
        for (Count x = 2; x <= n; ++x) mul(static_cast<std::uint64_t>(x));
    };
    for (int k = 1; k <= j.dim(); ++k)
        for (Count v = 0; v < sizes[k - 1]; ++v) factorial(k);
    for (int a = 1; a <= j.dim(); ++a) {
        for (int b = a; b <= j.dim(); ++b) {
            factorial(j(a, b));
            if (a == b)
                for (Count e = 0; e < j(a, a); ++e) mul(2);
        }
    }
    return total;
}

Autocorrelation autocorrelation(std::span<const double> series, std::size_t max_lag) {
    const std::size_t n = series.size();
    if (n <= max_lag) throw std::invalid_argument("series must be longer than max_lag");
    Autocorrelation out;
    out.rho.assign(max_lag + 1, 0.0);
    out.rho[0] = 1.0;

    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);
    double c0 = 0.0;
    for (double x : series) c0 += (x - mean) * (x - mean);
    c0 /= static_cast<double>(n);
    if (c0 <= 0.0) return out;

    for (std::size_t t = 1; t <= max_lag; ++t) {
        double acc = 0.0;
        for (std::size_t i = 0; i + t < n; ++i) acc += (series[i] - mean) * (series[i + t] - mean);
        out.rho[t] = acc / static_cast<double>(n) / c0;
    }

    double sum = 0.0;
    std::size_t m = 0;
    while (2 * m + 1 <= max_lag) {
        const double pair = out.rho[2 * m] + out.rho[2 * m + 1];
        if (pair <= 0.0) break;
        sum += pair;
        ++m;
    }
    out.window = m;
    if (m > 0) out.integrated_time = -1.0 + 2.0 * sum;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// The constructed realization, relabeled onto the model's own partition.
LabeledGraph realization_on_model(const ConfigModel& m) {
    const LabeledGraph built = construct_realization(m.jdm());
    std::unordered_map<Vertex, Vertex> relabel;
    for (const auto& comp : m.components()) {
        const auto members = built.class_members(comp.degree_class);
        for (std::size_t r = 0; r < members.size(); ++r)
            relabel[members[r]] = m.vertices()[comp.first_vertex + r];
    }
    std::vector<Edge> edges;
    for (const auto& e : built.edges()) edges.push_back(Edge::of(relabel[e.u], relabel[e.v]));
    return LabeledGraph::from_edges(edges);
}

}  // namespace

SampleStats run_sampler(const ConfigModel& m, const SampleOptions& options,
                        const std::function<void(const MultiGraphRealization&)>& on_sample) {
    if (options.thin == 0) throw std::invalid_argument("thin must be positive");
    Rng rng(options.seed);
    SampleStats stats;

    Configuration state;
    std::optional<SimpleChain> simple;
    switch (options.chain) {
        case ChainKind::kA: state = identity_configuration(m); break;
        case ChainKind::kB: simple.emplace(m, embed_realization(realization_on_model(m), m)); break;
        case ChainKind::kDirect: state = uniform_configuration(m, rng); break;
    }
    const auto current = [&]() -> const Configuration& { return simple ? simple->state() : state; };

    const auto start = to_multigraph(m, current());
    if (!start.multiplicity.empty()) stats.tracked_pair = start.multiplicity.begin()->first;

    std::vector<double> series;
    const std::size_t total = options.burnin + options.steps;
    for (std::size_t it = 0; it < total; ++it) {
        switch (options.chain) {
            case ChainKind::kA:
                if (auto p = propose(m, rng)) {
                    if (p->m1 == p->m2) {
                        ++stats.no_op;
                    } else {
                        state.swap_points(p->component, p->m1, p->m2);
                        ++stats.accepted;
                    }
                } else {
                    ++stats.lazy;
                }
                break;
            case ChainKind::kB:
                switch (simple->step(rng)) {
                    case SimpleChain::Outcome::kLazy: ++stats.lazy; break;
                    case SimpleChain::Outcome::kNoOp: ++stats.no_op; break;
                    case SimpleChain::Outcome::kAccepted: ++stats.accepted; break;
                    case SimpleChain::Outcome::kRejected: ++stats.rejected; break;
                }
                break;
            case ChainKind::kDirect:
                state = uniform_configuration(m, rng);
                ++stats.accepted;
                break;
        }
        ++stats.steps;
        if (it < options.burnin || (it - options.burnin) % options.thin != 0) continue;

        const auto g = to_multigraph(m, current());
        ++stats.samples;
        if (g.is_simple()) ++stats.simple_samples;
        series.push_back(g.multiplicity.count(stats.tracked_pair) ? 1.0 : 0.0);
        if (on_sample) on_sample(g);
    }
    if (series.size() >= 2)
        stats.tracked_autocorrelation =
            autocorrelation(series, std::min(options.max_lag, series.size() - 1));
    return stats;
}

}  // namespace jdm
