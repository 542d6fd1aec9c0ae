#include "jdm/balance.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace jdm {

ClassAverages::ClassAverages(const Jdm& j)
    : dim_(j.dim()),
      sizes_(integral_vertex_counts(j)),
      averages_(static_cast<std::size_t>(dim_) * dim_) {
    for (int c = 1; c <= dim_; ++c) {
        if (sizes_[c - 1] == 0) continue;
        for (int i = 1; i <= dim_; ++i) {
            const Count edges = c == i ? 2 * j(c, c) : j(i, c);
            averages_[static_cast<std::size_t>(c - 1) * dim_ + (i - 1)] =
                Rational(edges, sizes_[c - 1]);
        }
    }
}

const Rational& ClassAverages::operator()(int j, int i) const {
    if (j < 1 || j > dim_ || i < 1 || i > dim_)
        throw std::out_of_range("class index out of range");
    if (sizes_[j - 1] == 0)
        throw std::invalid_argument("class " + std::to_string(j) + " is empty");
    return averages_[static_cast<std::size_t>(j - 1) * dim_ + (i - 1)];
}

ClassAverages class_averages(const Jdm& j) { return ClassAverages(j); }

namespace {

Count deviation_from(const Rational& average, Count spectrum_entry) {
    Rational diff = average - Rational(spectrum_entry);
    if (diff < 0) diff = -diff;
    return floor_of(diff);
}

}  // namespace

Count deviation(const LabeledGraph& g, const ClassAverages& averages, Vertex v, int i) {
    return deviation_from(averages(g.vertex_class(v), i), degree_spectrum(g, v)[i]);
}

Count deviation(const LabeledGraph& g, Vertex v, int i) {
    return deviation(g, ClassAverages(extract_jdm(g)), v, i);
}

Count imbalance(const LabeledGraph& g, const ClassAverages& averages, int j) {
    Count total = 0;
    for (Vertex v : g.class_members(j)) {
        const auto s = degree_spectrum(g, v);
        for (int i = 1; i <= averages.dim(); ++i) total += deviation_from(averages(j, i), s[i]);
    }
    return total;
}

Count imbalance(const LabeledGraph& g, int j) { return imbalance(g, ClassAverages(extract_jdm(g)), j); }

bool is_balanced(const LabeledGraph& g, const ClassAverages& averages, int j) {
    for (Vertex v : g.class_members(j)) {
        const auto s = degree_spectrum(g, v);
        for (int i = 1; i <= averages.dim(); ++i) {
            const Rational& a = averages(j, i);
            if (s[i] != floor_of(a) && s[i] != ceil_of(a)) return false;
        }
    }
    return true;
}

bool is_balanced(const LabeledGraph& g) {
    const ClassAverages averages(extract_jdm(g));
    for (int j = 1; j <= averages.dim(); ++j)
        if (averages.class_size(j) > 0 && !is_balanced(g, averages, j)) return false;
    return true;
}

BalanceStep balance_step(const LabeledGraph& g, int j) {
    const ClassAverages averages(extract_jdm(g));
    const int delta = averages.dim();
    const auto members = g.class_members(j);
    std::vector<DegreeSpectrum> spectra;
    for (Vertex v : members) spectra.push_back(degree_spectrum(g, v));

    for (int i = 1; i <= delta; ++i) {
        const Rational& avg = averages(j, i);
        const bool witnessed = std::any_of(spectra.begin(), spectra.end(), [&](const auto& s) {
            return deviation_from(avg, s[i]) > 0;
        });
        if (!witnessed) continue;

        // Lowest label wins ties: members are sorted and the comparisons are strict.
        std::size_t lo = 0, hi = 0;
        for (std::size_t x = 1; x < members.size(); ++x) {
            if (spectra[x][i] < spectra[lo][i]) lo = x;
            if (spectra[x][i] > spectra[hi][i]) hi = x;
        }
        const Vertex u = members[lo];
        const Vertex v = members[hi];
        const auto& su = spectra[lo];
        const auto& sv = spectra[hi];

        // s(u)_i < t < s(v)_i for t = floor(A) or, failing that, t = ceil(A).
        const bool pattern = (su[i] < floor_of(avg) && floor_of(avg) < sv[i]) ||
                             (su[i] < ceil_of(avg) && ceil_of(avg) < sv[i]);
        if (!pattern) throw std::logic_error("imbalanced class without a strict spread");

        std::optional<Vertex> w;
        for (Vertex x : g.neighbors(v)) {
            if (x != u && g.vertex_class(x) == i && !g.has_edge(u, x)) {
                w = x;
                break;
            }
        }
        int k = 0;
        for (int c = 1; c <= delta && k == 0; ++c)
            if (c != i && su[c] > sv[c]) k = c;
        std::optional<Vertex> z;
        for (Vertex x : g.neighbors(u)) {
            if (k != 0 && x != v && g.vertex_class(x) == k && !g.has_edge(v, x)) {
                z = x;
                break;
            }
        }
        if (!w || !z) throw std::logic_error("balance step witnesses not found");

        const Rso rso{v, u, *w, *z, j};
        return BalanceStep{apply_rso(g, rso), rso, i, k};
    }
    throw std::invalid_argument("class " + std::to_string(j) + " is already balanced");
}

Balanced balance(const LabeledGraph& g) {
    Balanced out{g, {}};
    const ClassAverages averages(extract_jdm(g));
    for (int j = 1; j <= averages.dim(); ++j) {
        if (averages.class_size(j) == 0) continue;
        while (imbalance(out.graph, averages, j) > 0) {
            auto step = balance_step(out.graph, j);
            out.graph = std::move(step.graph);
            out.rsos.push_back(step.rso);
        }
    }
    return out;
}

}  // namespace jdm
