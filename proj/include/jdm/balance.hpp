#pragma once

#include <vector>

#include "jdm/core.hpp"

namespace jdm {

/// A_j(i): the mean number of class-i neighbors over the vertices of class j.
/// A_j(j) = 2 J_jj / |V_j| and A_j(i) = J_ij / |V_j| otherwise.
class ClassAverages {
public:
    /// Requires integral class sizes.
    explicit ClassAverages(const Jdm& j);

    int dim() const { return dim_; }
    Count class_size(int j) const { return sizes_[j - 1]; }
    /// Throws std::invalid_argument if V_j is empty.
    const Rational& operator()(int j, int i) const;

private:
    int dim_ = 0;
    std::vector<Count> sizes_;
    std::vector<Rational> averages_;
};

ClassAverages class_averages(const Jdm& j);

/// c_G(v, i) = floor(|A_{d(v)}(i) - s_G(v)_i|).
Count deviation(const LabeledGraph& g, const ClassAverages& averages, Vertex v, int i);
Count deviation(const LabeledGraph& g, Vertex v, int i);

/// C_G(j) = sum over v in V_j and over i of c_G(v, i).
Count imbalance(const LabeledGraph& g, const ClassAverages& averages, int j);
Count imbalance(const LabeledGraph& g, int j);

/// Every spectrum entry of V_j lies in {floor A_j(i), ceil A_j(i)}.
bool is_balanced(const LabeledGraph& g, const ClassAverages& averages, int j);
bool is_balanced(const LabeledGraph& g);

struct BalanceStep {
    LabeledGraph graph;
    Rso rso;
    int witness_class = 0;  // the class i whose spread certified the imbalance
    int partner_class = 0;  // the class k where u had more neighbors than v
};

/// One RSO vw, uz => vz, uw with u, v in V_j that strictly lowers C(j) and
/// leaves C(l) unchanged for l != j. Throws std::invalid_argument if C(j) == 0.
BalanceStep balance_step(const LabeledGraph& g, int j);

struct Balanced {
    LabeledGraph graph;
    std::vector<Rso> rsos;
};

/// Balances classes in ascending order.
Balanced balance(const LabeledGraph& g);

}  // namespace jdm
