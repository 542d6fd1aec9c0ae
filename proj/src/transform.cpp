#include "jdm/transform.hpp"

#include <algorithm>
#include <stdexcept>

#include "jdm/balance.hpp"

namespace jdm {

BipartiteGraph::BipartiteGraph(std::size_t left, std::size_t right)
    : right_(right), adjacency_(left) {}

bool BipartiteGraph::has_edge(std::size_t l, std::size_t r) const {
    const auto& n = adjacency_.at(l);
    return std::binary_search(n.begin(), n.end(), r);
}

void BipartiteGraph::add_edge(std::size_t l, std::size_t r) {
    if (r >= right_) throw std::out_of_range("right node out of range");
    auto& n = adjacency_.at(l);
    auto it = std::lower_bound(n.begin(), n.end(), r);
    if (it != n.end() && *it == r) throw std::invalid_argument("bipartite edge already present");
    n.insert(it, r);
}

void BipartiteGraph::remove_edge(std::size_t l, std::size_t r) {
    auto& n = adjacency_.at(l);
    auto it = std::lower_bound(n.begin(), n.end(), r);
    if (it == n.end() || *it != r) throw std::invalid_argument("bipartite edge not present");
    n.erase(it);
}

std::vector<std::size_t> BipartiteGraph::left_degrees() const {
    std::vector<std::size_t> out;
    for (const auto& n : adjacency_) out.push_back(n.size());
    return out;
}

std::vector<std::size_t> BipartiteGraph::right_degrees() const {
    std::vector<std::size_t> out(right_, 0);
    for (const auto& n : adjacency_)
        for (auto r : n) ++out[r];
    return out;
}

std::size_t BipartiteGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& n : adjacency_) total += n.size();
    return total;
}

void apply_swap(BipartiteGraph& g, const BipartiteSwap& s) {
    if (s.a == s.b || s.c == s.d) throw std::invalid_argument("bipartite swap nodes not distinct");
    if (!g.has_edge(s.a, s.c) || !g.has_edge(s.b, s.d))
        throw std::invalid_argument("bipartite swap: edge ac or bd missing");
    if (g.has_edge(s.b, s.c) || g.has_edge(s.a, s.d))
        throw std::invalid_argument("bipartite swap: edge bc or ad present");
    g.remove_edge(s.a, s.c);
    g.remove_edge(s.b, s.d);
    g.add_edge(s.b, s.c);
    g.add_edge(s.a, s.d);
}

// Both swap-path routines use the classical induction: make the current vertex's
// neighborhood agree in the two graphs, then forget that vertex. To replace
// v-w by v-u, a partner x adjacent to u but not to w must exist, which holds
// whenever d(u) >= d(w) among unfinished vertices. Otherwise the mirrored swap
// is done on the target graph, and those swaps are appended in reverse.

std::vector<BipartiteSwap> bipartite_swap_path(const BipartiteGraph& b1, const BipartiteGraph& b2) {
    if (b1.left_size() != b2.left_size() || b1.right_size() != b2.right_size())
        throw std::invalid_argument("bipartite graphs have different node sets");
    if (b1.left_degrees() != b2.left_degrees() || b1.right_degrees() != b2.right_degrees())
        throw std::invalid_argument("bipartite graphs have different degree sequences");

    BipartiteGraph g = b1;
    BipartiteGraph h = b2;
    std::vector<BipartiteSwap> forward, backward;
    const std::size_t left = g.left_size();
    std::vector<bool> done(left, false);

    // Right degree counted over unfinished left nodes; equal in g and h.
    auto right_degree = [&](const BipartiteGraph& x, std::size_t r) {
        std::size_t deg = 0;
        for (std::size_t l = 0; l < left; ++l)
            if (!done[l] && x.has_edge(l, r)) ++deg;
        return deg;
    };
    // A left node other than v adjacent to `to` but not `from`.
    auto partner = [&](const BipartiteGraph& x, std::size_t v, std::size_t to, std::size_t from) {
        for (std::size_t l = 0; l < left; ++l)
            if (!done[l] && l != v && x.has_edge(l, to) && !x.has_edge(l, from)) return l;
        throw std::logic_error("bipartite swap partner not found");
    };

    for (std::size_t v = 0; v < left; ++v) {
        while (g.neighbors(v) != h.neighbors(v)) {
            const auto& ng = g.neighbors(v);
            const auto& nh = h.neighbors(v);
            std::vector<std::size_t> only_h, only_g;
            std::set_difference(nh.begin(), nh.end(), ng.begin(), ng.end(), std::back_inserter(only_h));
            std::set_difference(ng.begin(), ng.end(), nh.begin(), nh.end(), std::back_inserter(only_g));
            const std::size_t u = only_h.front();
            const std::size_t w = only_g.front();
            if (right_degree(g, u) >= right_degree(g, w)) {
                const std::size_t x = partner(g, v, u, w);
                const BipartiteSwap s{v, x, w, u};
                apply_swap(g, s);
                forward.push_back(s);
            } else {
                const std::size_t x = partner(h, v, w, u);
                const BipartiteSwap s{v, x, u, w};
                apply_swap(h, s);
                backward.push_back(s);
            }
        }
        done[v] = true;
    }
    for (auto it = backward.rbegin(); it != backward.rend(); ++it)
        forward.push_back(BipartiteSwap{it->b, it->a, it->c, it->d});
    return forward;
}

void apply_swap(LabeledGraph& g, const Swap& s) {
    const Vertex vs[4] = {s.a, s.b, s.c, s.d};
    for (int x = 0; x < 4; ++x)
        for (int y = x + 1; y < 4; ++y)
            if (vs[x] == vs[y]) throw std::invalid_argument("swap vertices not distinct");
    if (!g.has_edge(s.a, s.c) || !g.has_edge(s.b, s.d))
        throw std::invalid_argument("swap: edge ac or bd missing");
    if (g.has_edge(s.b, s.c) || g.has_edge(s.a, s.d))
        throw std::invalid_argument("swap: edge bc or ad present");
    g.remove_edge(s.a, s.c);
    g.remove_edge(s.b, s.d);
    g.add_edge(s.b, s.c);
    g.add_edge(s.a, s.d);
}

std::vector<Swap> simple_swap_path(const LabeledGraph& g1, const LabeledGraph& g2) {
    if (g1.vertices() != g2.vertices())
        throw std::invalid_argument("graphs have different vertex sets");
    for (Vertex v : g1.vertices())
        if (g1.degree(v) != g2.degree(v))
            throw std::invalid_argument("graphs differ in the degree of vertex " + std::to_string(v));

    LabeledGraph g = g1;
    LabeledGraph h = g2;
    std::vector<Swap> forward, backward;
    const auto& vertices = g.vertices();
    std::vector<bool> done(vertices.size(), false);
    auto is_done = [&](Vertex v) {
        return done[std::lower_bound(vertices.begin(), vertices.end(), v) - vertices.begin()];
    };
    auto open_neighbors = [&](const LabeledGraph& x, Vertex v) {
        std::vector<Vertex> out;
        for (Vertex w : x.neighbors(v))
            if (!is_done(w)) out.push_back(w);
        return out;
    };
    auto partner = [&](const LabeledGraph& x, Vertex v, Vertex to, Vertex from) {
        for (Vertex c : x.neighbors(to))
            if (!is_done(c) && c != v && c != from && !x.has_edge(c, from)) return c;
        throw std::logic_error("swap partner not found");
    };

    for (std::size_t idx = 0; idx < vertices.size(); ++idx) {
        const Vertex v = vertices[idx];
        for (;;) {
            const auto ng = open_neighbors(g, v);
            const auto nh = open_neighbors(h, v);
            if (ng == nh) break;
            std::vector<Vertex> only_h, only_g;
            std::set_difference(nh.begin(), nh.end(), ng.begin(), ng.end(), std::back_inserter(only_h));
            std::set_difference(ng.begin(), ng.end(), nh.begin(), nh.end(), std::back_inserter(only_g));
            const Vertex u = only_h.front();
            const Vertex w = only_g.front();
            if (open_neighbors(g, u).size() >= open_neighbors(g, w).size()) {
                const Vertex x = partner(g, v, u, w);
                const Swap s{v, x, w, u};
                apply_swap(g, s);
                forward.push_back(s);
            } else {
                const Vertex x = partner(h, v, w, u);
                const Swap s{v, x, u, w};
                apply_swap(h, s);
                backward.push_back(s);
            }
        }
        done[idx] = true;
    }
    for (auto it = backward.rbegin(); it != backward.rend(); ++it) forward.push_back(it->inverse());
    return forward;
}

// ---------------------------------------------------------------------------

AuxBipartite aux_bipartite(const LabeledGraph& g, int j) {
    const ClassAverages averages(extract_jdm(g));
    if (!is_balanced(g, averages, j))
        throw std::invalid_argument("class " + std::to_string(j) + " is not balanced");
    AuxBipartite aux;
    aux.vertices = g.class_members(j);
    for (int i = 1; i <= averages.dim(); ++i)
        if (!is_integral(averages(j, i))) aux.mixed_classes.push_back(i);
    aux.graph = BipartiteGraph(aux.vertices.size(), aux.mixed_classes.size());
    for (std::size_t l = 0; l < aux.vertices.size(); ++l) {
        const auto s = degree_spectrum(g, aux.vertices[l]);
        for (std::size_t r = 0; r < aux.mixed_classes.size(); ++r) {
            const int i = aux.mixed_classes[r];
            if (s[i] == floor_of(averages(j, i)) + 1) aux.graph.add_edge(l, r);
        }
    }
    return aux;
}

Lifted lift_aux_swap(const LabeledGraph& g, int j, const BipartiteSwap& aux_swap) {
    AuxBipartite aux = aux_bipartite(g, j);
    if (aux.mixed_classes.empty()) throw std::invalid_argument("no mixed classes to swap");
    apply_swap(aux.graph, aux_swap);  // validates against the current aux graph

    // v is high for class i and low for k; w the reverse.
    const Vertex v = aux.vertices.at(aux_swap.a);
    const Vertex w = aux.vertices.at(aux_swap.b);
    const int ci = aux.mixed_classes.at(aux_swap.c);
    const int ck = aux.mixed_classes.at(aux_swap.d);

    std::optional<Vertex> x, y;
    for (Vertex t : g.neighbors(v)) {
        if (t != w && g.vertex_class(t) == ci && !g.has_edge(w, t)) {
            x = t;
            break;
        }
    }
    for (Vertex t : g.neighbors(w)) {
        if (t != v && g.vertex_class(t) == ck && !g.has_edge(v, t)) {
            y = t;
            break;
        }
    }
    if (!x || !y) throw std::logic_error("aux swap could not be lifted");
    const Rso rso{v, w, *x, *y, j};
    return Lifted{apply_rso(g, rso), rso};
}

namespace {

void require_same_partition(const LabeledGraph& g, const LabeledGraph& h) {
    if (g.vertices() != h.vertices()) throw std::invalid_argument("vertex sets differ");
    for (Vertex v : g.vertices())
        if (g.vertex_class(v) != h.vertex_class(v))
            throw std::invalid_argument("vertex " + std::to_string(v) + " is in different classes");
    if (extract_jdm(g) != extract_jdm(h)) throw std::invalid_argument("JDMs differ");
}

}  // namespace

Aligned spectrum_align(const LabeledGraph& g, const LabeledGraph& h) {
    require_same_partition(g, h);
    Aligned out{g, {}};
    for (int j = 1; j <= g.max_class(); ++j) {
        if (g.class_members(j).empty()) continue;
        const auto target = aux_bipartite(h, j);
        const auto path = bipartite_swap_path(aux_bipartite(out.graph, j).graph, target.graph);
        for (const auto& s : path) {
            auto lifted = lift_aux_swap(out.graph, j, s);
            out.graph = std::move(lifted.graph);
            out.rsos.push_back(lifted.rso);
        }
        for (Vertex v : target.vertices)
            if (degree_spectrum(out.graph, v) != degree_spectrum(h, v))
                throw std::logic_error("spectrum alignment left a mismatch");
    }
    return out;
}

SwapSequence rso_path(const LabeledGraph& g, const LabeledGraph& h) {
    require_same_partition(g, h);
    SwapSequence seq;
    seq.source_fingerprint = fingerprint(g);
    seq.target_fingerprint = fingerprint(h);

    const Balanced bg = balance(g);
    const Balanced bh = balance(h);
    Aligned aligned = spectrum_align(bg.graph, bh.graph);
    seq.rsos = bg.rsos;
    seq.rsos.insert(seq.rsos.end(), aligned.rsos.begin(), aligned.rsos.end());
    LabeledGraph current = std::move(aligned.graph);

    const int delta = g.max_class();
    std::vector<std::vector<Vertex>> classes(delta);
    for (int i = 1; i <= delta; ++i) classes[i - 1] = g.class_members(i);

    for (int i = 1; i <= delta; ++i) {
        const auto& wi = classes[i - 1];
        if (wi.empty()) continue;

        // Within W_i every swap has all four vertices in class i.
        std::vector<std::pair<Vertex, int>> part;
        for (Vertex v : wi) part.emplace_back(v, i);
        LabeledGraph sub_g = LabeledGraph::with_partition(part);
        LabeledGraph sub_h = sub_g;
        for (Vertex v : wi) {
            for (Vertex w : current.neighbors(v))
                if (v < w && current.vertex_class(w) == i) sub_g.add_edge(v, w);
            for (Vertex w : bh.graph.neighbors(v))
                if (v < w && bh.graph.vertex_class(w) == i) sub_h.add_edge(v, w);
        }
        for (const auto& s : simple_swap_path(sub_g, sub_h)) {
            const Rso r{s.a, s.b, s.c, s.d, i};
            apply_rso_in_place(current, r);
            seq.rsos.push_back(r);
        }

        // Between W_i and W_l the swapped pair stays in the lower class.
        for (int l = i + 1; l <= delta; ++l) {
            const auto& wl = classes[l - 1];
            if (wl.empty()) continue;
            auto to_bipartite = [&](const LabeledGraph& x) {
                BipartiteGraph b(wi.size(), wl.size());
                for (std::size_t a = 0; a < wi.size(); ++a)
                    for (std::size_t c = 0; c < wl.size(); ++c)
                        if (x.has_edge(wi[a], wl[c])) b.add_edge(a, c);
                return b;
            };
            for (const auto& s : bipartite_swap_path(to_bipartite(current), to_bipartite(bh.graph))) {
                const Rso r{wi[s.a], wi[s.b], wl[s.c], wl[s.d], i};
                apply_rso_in_place(current, r);
                seq.rsos.push_back(r);
            }
        }
    }
    if (!(current == bh.graph)) throw std::logic_error("class-pair swaps did not reach the target");

    for (auto it = bh.rsos.rbegin(); it != bh.rsos.rend(); ++it) seq.rsos.push_back(it->inverse());
    return seq;
}

ReplayReport replay(const LabeledGraph& source, const std::vector<Rso>& rsos,
                    const LabeledGraph& target) {
    ReplayReport report;
    LabeledGraph current = source;
    for (std::size_t step = 0; step < rsos.size(); ++step) {
        if (auto fault = validate_rso(current, rsos[step])) {
            report.failed_step = step;
            report.message = "step " + std::to_string(step) + ": " + to_string(*fault);
            return report;
        }
        apply_rso_in_place(current, rsos[step]);
        ++report.steps_applied;
    }
    if (!(current == target)) {
        report.message = "replay does not end at the target graph";
        return report;
    }
    report.valid = true;
    report.message = "ok";
    return report;
}

}  // namespace jdm
