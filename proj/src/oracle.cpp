#include "jdm/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "jdm/graphic.hpp"

namespace jdm {

RealizationSpace::RealizationSpace(Jdm j, std::vector<std::pair<Vertex, int>> partition)
    : jdm_(std::move(j)) {
    std::sort(partition.begin(), partition.end());
    if (partition.size() > kMaxVertices)
        throw BoundExceeded("realization spaces hold at most 11 vertices");
    for (const auto& [v, k] : partition) {
        labels_.push_back(v);
        classes_.push_back(k);
    }
}

std::size_t RealizationSpace::pair_bit(std::size_t x, std::size_t y) const {
    if (x > y) std::swap(x, y);
    // Row-major over the strict upper triangle.
    const std::size_t n = labels_.size();
    return x * n - x * (x + 1) / 2 + (y - x - 1);
}

LabeledGraph RealizationSpace::graph(std::size_t index) const {
    std::vector<std::pair<Vertex, int>> partition;
    for (std::size_t x = 0; x < labels_.size(); ++x) partition.emplace_back(labels_[x], classes_[x]);
    LabeledGraph g = LabeledGraph::with_partition(std::move(partition));
    const std::uint64_t mask = masks_.at(index);
    for (std::size_t x = 0; x < labels_.size(); ++x)
        for (std::size_t y = x + 1; y < labels_.size(); ++y)
            if (mask >> pair_bit(x, y) & 1U) g.add_edge(labels_[x], labels_[y]);
    return g;
}

std::optional<std::size_t> RealizationSpace::find(const LabeledGraph& g) const {
    if (g.vertices() != labels_) return std::nullopt;
    std::uint64_t mask = 0;
    for (const auto& e : g.edges()) {
        const auto x = static_cast<std::size_t>(
            std::lower_bound(labels_.begin(), labels_.end(), e.u) - labels_.begin());
        const auto y = static_cast<std::size_t>(
            std::lower_bound(labels_.begin(), labels_.end(), e.v) - labels_.begin());
        mask |= std::uint64_t{1} << pair_bit(x, y);
    }
    auto it = std::lower_bound(masks_.begin(), masks_.end(), mask);
    if (it == masks_.end() || *it != mask) return std::nullopt;
    return static_cast<std::size_t>(it - masks_.begin());
}

// ---------------------------------------------------------------------------

namespace {

struct Candidate {
    std::size_t x, y, block;
};

class Enumerator {
public:
    Enumerator(const Jdm& j, RealizationSpace& space) : space_(space) {
        const auto& classes = space.classes();
        const std::size_t n = classes.size();
        residual_.assign(classes.begin(), classes.end());
        last_.assign(n, kNone);
        for (int a = 1; a <= j.dim(); ++a) {
            for (int b = a; b <= j.dim(); ++b) {
                if (j(a, b) == 0) continue;
                const std::size_t block = block_need_.size();
                block_need_.push_back(j(a, b));
                const std::size_t start = candidates_.size();
                for (std::size_t x = 0; x < n; ++x)
                    for (std::size_t y = x + 1; y < n; ++y)
                        if ((classes[x] == a && classes[y] == b) || (classes[x] == b && classes[y] == a))
                            candidates_.push_back({x, y, block});
                block_end_.insert(block_end_.end(), candidates_.size() - start, candidates_.size());
            }
        }
        for (std::size_t p = 0; p < candidates_.size(); ++p) {
            last_[candidates_[p].x] = p;
            last_[candidates_[p].y] = p;
        }
    }

    void run() {
        for (std::size_t x = 0; x < last_.size(); ++x)
            if (last_[x] == kNone && residual_[x] > 0) return;
        dfs(0, 0);
    }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    void dfs(std::size_t p, std::uint64_t mask) {
        if (p == candidates_.size()) {
            if (std::all_of(residual_.begin(), residual_.end(), [](Count r) { return r == 0; }) &&
                std::all_of(block_need_.begin(), block_need_.end(), [](Count r) { return r == 0; }))
                found_.push_back(mask);
            return;
        }
        const auto [x, y, block] = candidates_[p];
        if (static_cast<Count>(block_end_[p] - p) < block_need_[block]) return;

        if (residual_[x] > 0 && residual_[y] > 0 && block_need_[block] > 0) {
            --residual_[x];
            --residual_[y];
            --block_need_[block];
            dfs(p + 1, mask | std::uint64_t{1} << space_.pair_bit(x, y));
            ++residual_[x];
            ++residual_[y];
            ++block_need_[block];
        }
        if ((last_[x] == p && residual_[x] > 0) || (last_[y] == p && residual_[y] > 0)) return;
        dfs(p + 1, mask);
    }

public:
    std::vector<std::uint64_t> found_;

private:
    RealizationSpace& space_;
    std::vector<Candidate> candidates_;
    std::vector<std::size_t> block_end_;
    std::vector<Count> block_need_;
    std::vector<Count> residual_;
    std::vector<std::size_t> last_;
};

bool integral_sizes(const Jdm& j) {
    const auto sizes = vertex_counts(j);
    return std::all_of(sizes.begin(), sizes.end(), [](const Rational& r) { return is_integral(r); });
}

}  // namespace

RealizationSpace enumerate_realizations(const Jdm& j, std::span<const Vertex> labels, std::size_t bound) {
    if (bound > RealizationSpace::kMaxVertices)
        throw std::invalid_argument("enumeration bound is at most 11 vertices");
    if (!integral_sizes(j)) return RealizationSpace(j, {});
    if (labels.size() > bound) throw BoundExceeded("too many vertices to enumerate");
    RealizationSpace space(j, assign_partition(j, labels));
    Enumerator e(j, space);
    e.run();
    std::sort(e.found_.begin(), e.found_.end());
    for (std::uint64_t mask : e.found_) space.push(mask);
    return space;
}

RealizationSpace enumerate_realizations(const Jdm& j, std::size_t bound) {
    if (!integral_sizes(j)) return RealizationSpace(j, {});
    Count n = 0;
    for (Count c : integral_vertex_counts(j)) n += c;
    if (static_cast<std::size_t>(n) > bound) throw BoundExceeded("too many vertices to enumerate");
    const auto labels = default_labels(j);
    return enumerate_realizations(j, labels, bound);
}

std::vector<std::size_t> rso_neighbors(const RealizationSpace& space, std::size_t index) {
    const std::uint64_t mask = space.masks().at(index);
    const auto& cls = space.classes();
    const std::size_t n = cls.size();
    auto adjacent = [&](std::size_t x, std::size_t y) { return (mask >> space.pair_bit(x, y) & 1U) != 0; };

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            if (adjacent(x, y)) edges.emplace_back(x, y);

    std::set<std::size_t> out;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        for (std::size_t f = 0; f < edges.size(); ++f) {
            if (e == f) continue;
            for (int oe = 0; oe < 2; ++oe) {
                const std::size_t a = oe ? edges[e].second : edges[e].first;
                const std::size_t c = oe ? edges[e].first : edges[e].second;
                for (int of = 0; of < 2; ++of) {
                    const std::size_t b = of ? edges[f].second : edges[f].first;
                    const std::size_t d = of ? edges[f].first : edges[f].second;
                    if (cls[a] != cls[b]) continue;
                    if (a == b || a == d || b == c || c == d) continue;
                    if (adjacent(b, c) || adjacent(a, d)) continue;
                    std::uint64_t next = mask;
                    next &= ~(std::uint64_t{1} << space.pair_bit(a, c));
                    next &= ~(std::uint64_t{1} << space.pair_bit(b, d));
                    next |= std::uint64_t{1} << space.pair_bit(b, c);
                    next |= std::uint64_t{1} << space.pair_bit(a, d);
                    auto it = std::lower_bound(space.masks().begin(), space.masks().end(), next);
                    if (it == space.masks().end() || *it != next)
                        throw std::logic_error("RSO left the realization space");
                    out.insert(static_cast<std::size_t>(it - space.masks().begin()));
                }
            }
        }
    }
    return {out.begin(), out.end()};
}

MetagraphCensus metagraph_connected(const RealizationSpace& space) {
    if (space.empty()) throw std::invalid_argument("realization space is empty");
    MetagraphCensus census;
    std::vector<bool> seen(space.size(), false);
    std::size_t degree_sum = 0;
    for (std::size_t root = 0; root < space.size(); ++root) {
        if (seen[root]) continue;
        std::size_t size = 0;
        std::queue<std::size_t> queue;
        queue.push(root);
        seen[root] = true;
        while (!queue.empty()) {
            const std::size_t at = queue.front();
            queue.pop();
            ++size;
            const auto next = rso_neighbors(space, at);
            degree_sum += next.size();
            for (std::size_t y : next) {
                if (!seen[y]) {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        census.component_sizes.push_back(size);
    }
    std::sort(census.component_sizes.rbegin(), census.component_sizes.rend());
    census.connected = census.component_sizes.size() == 1;
    census.edge_count = degree_sum / 2;
    return census;
}

// ---------------------------------------------------------------------------

namespace {

class ExistenceSearch {
public:
    ExistenceSearch(const Jdm& j, const std::vector<std::pair<Vertex, int>>& partition) : j_(j) {
        for (const auto& [v, k] : partition) {
            labels_.push_back(v);
            classes_.push_back(k);
            residual_.push_back(k);
        }
        need_ = j.rows();
    }

    bool run() { return visit(0); }

    LabeledGraph witness() const {
        std::vector<std::pair<Vertex, int>> partition;
        for (std::size_t x = 0; x < labels_.size(); ++x) partition.emplace_back(labels_[x], classes_[x]);
        LabeledGraph g = LabeledGraph::with_partition(std::move(partition));
        for (const auto& [x, y] : edges_) g.add_edge(labels_[x], labels_[y]);
        return g;
    }

private:
    std::vector<Count> key(std::size_t next) const {
        std::vector<Count> out;
        for (int c = 1; c <= j_.dim(); ++c) {
            std::vector<Count> part;
            for (std::size_t x = next; x < labels_.size(); ++x)
                if (classes_[x] == c) part.push_back(residual_[x]);
            std::sort(part.begin(), part.end());
            out.insert(out.end(), part.begin(), part.end());
            out.push_back(-1);
        }
        for (const auto& row : need_) out.insert(out.end(), row.begin(), row.end());
        return out;
    }

    bool hopeless(std::size_t next) const {
        std::vector<Count> live(j_.dim(), 0);
        Count alive = 0;
        for (std::size_t x = next; x < labels_.size(); ++x) {
            if (residual_[x] > 0) {
                ++live[classes_[x] - 1];
                ++alive;
            }
        }
        for (std::size_t x = next; x < labels_.size(); ++x)
            if (residual_[x] > alive - 1) return true;
        for (int a = 1; a <= j_.dim(); ++a) {
            const Count la = live[a - 1];
            if (need_[a - 1][a - 1] > la * (la - 1) / 2) return true;
            for (int b = a + 1; b <= j_.dim(); ++b)
                if (need_[a - 1][b - 1] > la * live[b - 1]) return true;
        }
        return false;
    }

    bool visit(std::size_t v) {
        while (v < labels_.size() && residual_[v] == 0) ++v;
        if (v == labels_.size()) {
            for (const auto& row : need_)
                for (Count x : row)
                    if (x != 0) return false;
            return true;
        }
        if (hopeless(v)) return false;
        auto k = key(v);
        if (failed_.count(k)) return false;

        std::vector<Count> take(j_.dim(), 0);
        if (split(v, 1, residual_[v], take)) return true;
        failed_.insert(std::move(k));
        return false;
    }

    // Chooses how many of v's remaining edges go to each class, c onward.
    bool split(std::size_t v, int c, Count left, std::vector<Count>& take) {
        if (c > j_.dim()) return left == 0 && connect(v, take);
        const int cv = classes_[v];
        Count room = 0;
        for (std::size_t x = v + 1; x < labels_.size(); ++x)
            if (classes_[x] == c && residual_[x] > 0) ++room;
        const Count cap = std::min({left, room, need_[cv - 1][c - 1]});
        for (Count t = cap; t >= 0; --t) {
            take[c - 1] = t;
            if (split(v, c + 1, left - t, take)) return true;
        }
        take[c - 1] = 0;
        return false;
    }

    bool connect(std::size_t v, const std::vector<Count>& take) {
        const int cv = classes_[v];
        std::vector<std::size_t> chosen;
        for (int c = 1; c <= j_.dim(); ++c) {
            if (take[c - 1] == 0) continue;
            std::vector<std::size_t> pool;
            for (std::size_t x = v + 1; x < labels_.size(); ++x)
                if (classes_[x] == c && residual_[x] > 0) pool.push_back(x);
            std::stable_sort(pool.begin(), pool.end(),
                             [this](std::size_t x, std::size_t y) { return residual_[x] > residual_[y]; });
            chosen.insert(chosen.end(), pool.begin(), pool.begin() + take[c - 1]);
        }
        const Count saved = residual_[v];
        residual_[v] = 0;
        for (std::size_t x : chosen) {
            --residual_[x];
            --need_[cv - 1][classes_[x] - 1];
            if (classes_[x] != cv) --need_[classes_[x] - 1][cv - 1];
            edges_.emplace_back(v, x);
        }
        if (visit(v + 1)) return true;
        for (std::size_t x : chosen) {
            ++residual_[x];
            ++need_[cv - 1][classes_[x] - 1];
            if (classes_[x] != cv) ++need_[classes_[x] - 1][cv - 1];
            edges_.pop_back();
        }
        residual_[v] = saved;
        return false;
    }

    const Jdm& j_;
    std::vector<Vertex> labels_;
    std::vector<int> classes_;
    std::vector<Count> residual_;
    std::vector<std::vector<Count>> need_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::set<std::vector<Count>> failed_;
};

}  // namespace

std::optional<LabeledGraph> find_realization(const Jdm& j) {
    if (!integral_sizes(j)) return std::nullopt;
    const auto labels = default_labels(j);
    ExistenceSearch search(j, assign_partition(j, labels));
    if (!search.run()) return std::nullopt;
    LabeledGraph g = search.witness();
    if (!g.is_realization() && g.vertex_count() != 0) throw std::logic_error("existence search built a non-realization");
    return g;
}

bool realization_exists(const Jdm& j) { return find_realization(j).has_value(); }

// ---------------------------------------------------------------------------

namespace {

std::uint64_t factorial_within(std::size_t n, std::uint64_t bound) {
    std::uint64_t f = 1;
    for (std::size_t x = 2; x <= n; ++x) {
        if (f > bound / x) throw BoundExceeded("component has too many matchings");
        f *= x;
    }
    return f;
}

// Steps through every tuple of per-component permutations.
class Odometer {
public:
    explicit Odometer(const ConfigModel& m) : config_(identity_configuration(m)) {}

    const Configuration& current() const { return config_; }

    bool advance() {
        for (std::size_t c = config_.matching.size(); c-- > 0;) {
            auto& perm = config_.matching[c];
            const bool more = std::next_permutation(perm.begin(), perm.end());
            for (std::size_t x = 0; x < perm.size(); ++x) config_.inverse[c][perm[x]] = x;
            if (more) return true;
        }
        return false;
    }

private:
    Configuration config_;
};

std::vector<std::uint32_t> flatten(const Configuration& c) {
    std::vector<std::uint32_t> out;
    for (const auto& perm : c.matching) out.insert(out.end(), perm.begin(), perm.end());
    return out;
}

}  // namespace

FiberCensus enumerate_configurations(const ConfigModel& m, std::uint64_t bound) {
    for (const auto& comp : m.components()) factorial_within(comp.size(), bound);
    std::map<MultiGraphRealization, std::uint64_t> counts;
    FiberCensus census;
    Odometer odo(m);
    do {
        ++counts[to_multigraph(m, odo.current())];
        ++census.total;
    } while (odo.advance());
    for (auto& [g, n] : counts) census.fibers.push_back(Fiber{g, n});
    return census;
}

std::uint64_t TransitionMatrix::entry(std::size_t from, std::size_t to) const {
    const auto& row = rows.at(from);
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(to, std::uint64_t{0}));
    return it != row.end() && it->first == to ? it->second : 0;
}

bool TransitionMatrix::symmetric() const {
    for (std::size_t s = 0; s < rows.size(); ++s)
        for (const auto& [t, p] : rows[s])
            if (entry(t, s) != p) return false;
    return true;
}

bool TransitionMatrix::doubly_stochastic() const {
    std::vector<std::uint64_t> column(rows.size(), 0);
    for (const auto& row : rows) {
        std::uint64_t sum = 0;
        for (const auto& [t, p] : row) {
            sum += p;
            column[t] += p;
        }
        if (sum != denominator) return false;
    }
    return std::all_of(column.begin(), column.end(), [this](std::uint64_t x) { return x == denominator; });
}

bool TransitionMatrix::irreducible() const {
    if (rows.empty()) return true;
    std::vector<bool> seen(rows.size(), false);
    std::queue<std::size_t> queue;
    queue.push(0);
    seen[0] = true;
    std::size_t reached = 0;
    while (!queue.empty()) {
        const std::size_t s = queue.front();
        queue.pop();
        ++reached;
        for (const auto& [t, p] : rows[s]) {
            if (p > 0 && !seen[t]) {
                seen[t] = true;
                queue.push(t);
            }
        }
    }
    return reached == rows.size();
}

TransitionMatrix transition_matrix(const ConfigModel& m, ChainKind chain, std::size_t max_states) {
    if (chain == ChainKind::kDirect) throw std::invalid_argument("direct sampling has no transition matrix");
    std::uint64_t total = 1;
    for (const auto& comp : m.components()) {
        const std::uint64_t f = factorial_within(comp.size(), max_states);
        if (total > max_states / f) throw BoundExceeded("too many configurations");
        total *= f;
    }

    TransitionMatrix out;
    std::map<std::vector<std::uint32_t>, std::size_t> index;
    Odometer odo(m);
    do {
        if (chain == ChainKind::kB && !to_multigraph(m, odo.current()).is_simple()) continue;
        index.emplace(flatten(odo.current()), out.states.size());
        out.states.push_back(odo.current());
    } while (odo.advance());

    const std::uint64_t M = m.total_mini_vertices();
    if (M == 0) {
        out.denominator = 1;
        out.rows.assign(out.states.size(), {{0, 1}});
        return out;
    }
    std::uint64_t L = 1;
    for (const auto& comp : m.components()) L = std::lcm(L, static_cast<std::uint64_t>(comp.size()));
    out.denominator = 2 * M * L;

    for (std::size_t s = 0; s < out.states.size(); ++s) {
        std::map<std::size_t, std::uint64_t> row;
        row[s] += M * L;
        for (std::size_t c = 0; c < m.components().size(); ++c) {
            const std::size_t n = m.components()[c].size();
            const std::uint64_t weight = L / n;
            for (std::size_t m1 = 0; m1 < n; ++m1) {
                for (std::size_t m2 = 0; m2 < n; ++m2) {
                    if (m1 == m2) {
                        row[s] += weight;
                        continue;
                    }
                    Configuration next = out.states[s];
                    next.swap_points(c, m1, m2);
                    auto it = index.find(flatten(next));
                    if (it == index.end()) {
                        if (chain == ChainKind::kA) throw std::logic_error("swap left the configuration space");
                        row[s] += weight;
                    } else {
                        row[it->second] += weight;
                    }
                }
            }
        }
        out.rows.emplace_back(row.begin(), row.end());
    }
    return out;
}

}  // namespace jdm
