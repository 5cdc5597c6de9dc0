#pragma once

#include <limits>
#include <string>
#include <vector>

#include "ptune/expsum.hpp"
#include "ptune/instances.hpp"
#include "ptune/linkage.hpp"

namespace ptune {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ObjectiveKind {
    phi_p,          // sum_i (sum_{q in C_i} d(q,c_i)^p)^(1/p); p = inf is sum of per-cluster maxima
    phi_power_sum,  // sum_i sum_{q in C_i} d(q,c_i)^p, the p-th power form used by the lower-bound fixtures
    ground_truth,   // pair-counting distance to inst.ground_truth
    kcenter,        // max over clusters of the radius; conventional k-center, not part of the family above
};

struct Objective {
    ObjectiveKind kind = ObjectiveKind::phi_p;
    double p = 1.0;

    static Objective phi(double p) { return {ObjectiveKind::phi_p, p}; }
    static Objective phi_power_sum(double p) { return {ObjectiveKind::phi_power_sum, p}; }
    static Objective ground_truth_distance() { return {ObjectiveKind::ground_truth, 1.0}; }
    static Objective kcenter() { return {ObjectiveKind::kcenter, kInf}; }
};

std::string objective_name(const Objective& o);
// Throws Error(domain_error) for p < 1 (phi_p) or p <= 0 / infinite (phi_power_sum).
void check_objective(const Objective& o);

// Psi^(p): (sum over all points of d(q, center)^p)^(1/p); p = inf is the largest radius.
struct PruningRule {
    double p = 1.0;
};

enum class AssignVariant { fixed_partition, voronoi_reassign };

const char* variant_name(AssignVariant v);
AssignVariant parse_variant(const std::string& s);

struct PruningResult {
    std::vector<int> nodes;                 // selected tree nodes, ordered by min leaf
    std::vector<std::vector<int>> clusters; // final membership (after reassignment for voronoi)
    std::vector<int> centers;               // aligned with clusters
    double score = 0.0;                     // Psi^(p) of (clusters, centers)
    AssignVariant variant = AssignVariant::fixed_partition;

    // Per-point cluster index.
    std::vector<int> labels(int n) const;
};

double objective_value(const Objective& obj, const std::vector<std::vector<int>>& clusters,
                       const std::vector<int>& centers, const ClusteringInstance& inst, bool check_membership = true);
// Dispatches on the objective; ground_truth uses inst.ground_truth.
double objective_value(const Objective& obj, const PruningResult& r, const ClusteringInstance& inst);

// Psi^(p) of a clustering, summed cluster by cluster in the order given.
double pruning_score(double p, const std::vector<std::vector<int>>& clusters, const std::vector<int>& centers,
                     const ClusteringInstance& inst);

struct PruneOptions {
    AssignVariant variant = AssignVariant::fixed_partition;
    // When set (finite p only), every DP decision is appended as an ExpSum in p
    // that stays positive while the chosen option remains strictly better.
    std::vector<ExpSum>* comparisons = nullptr;
};

PruningResult best_k_pruning(const ClusterTree& tree, int k, const PruningRule& rule, const ClusteringInstance& inst,
                             const PruneOptions& opt = {});

// Pair-counting symmetric distance between two labelings, in [0,1].
double pair_distance(const std::vector<int>& a, const std::vector<int>& b);
double ground_truth_distance(const PruningResult& r, const ClusteringInstance& inst);

} // namespace ptune
