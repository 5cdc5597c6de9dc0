#pragma once

#include <utility>
#include <vector>

#include "ptune/expsum.hpp"
#include "ptune/family.hpp"
#include "ptune/instances.hpp"

namespace ptune {

struct MergeRule {
    Family family = Family::minmax_convex;
    double alpha = 0.5;          // unused by sigma_linear
    int sigma = 2;               // sigma families only
    std::vector<double> weights; // sigma_linear only, size sigma

    static MergeRule minmax_power(double a) { return {Family::minmax_power, a, 2, {}}; }
    static MergeRule average_power(double a) { return {Family::average_power, a, 2, {}}; }
    static MergeRule minmax_convex(double a) { return {Family::minmax_convex, a, 2, {}}; }
    static MergeRule sigma_linear(std::vector<double> w) {
        const int s = static_cast<int>(w.size());
        return {Family::sigma_linear, 0.0, s, std::move(w)};
    }
    static MergeRule sigma_power(double a, int s) { return {Family::sigma_power, a, s, {}}; }
};

// Throws Error(domain_error) when the parameters are outside the family's domain.
void check_rule(const MergeRule& rule);

struct TreeNode {
    int left = -1;  // child holding the smaller leaf id, -1 for leaves
    int right = -1;
    int merge_order = -1; // 0-based merge index, -1 for leaves
    double merge_value = 0.0;
    int min_leaf = 0;
    int size = 1;
};

// Leaves are nodes 0..n-1; internal node n+t is created by merge t.
struct ClusterTree {
    int n = 0;
    std::vector<TreeNode> nodes;

    int root() const { return static_cast<int>(nodes.size()) - 1; }
    std::vector<int> leaves(int node) const;
    // (left, right) node ids in merge order.
    std::vector<std::pair<int, int>> merges() const;
    // Same as merges() but expressed by min leaf ids; equal trees have equal signatures.
    std::vector<std::pair<int, int>> signature() const;
};

bool same_merge_sequence(const ClusterTree& a, const ClusterTree& b);

// Distance multiset between two clusters in compressed form.
struct PairSummary {
    std::vector<std::pair<double, int>> hist; // sorted distinct values with multiplicities
    int count = 0;
    double min() const { return hist.front().first; }
    double max() const { return hist.back().first; }
    // Value at 0-based position k of the sorted multiset.
    double order_stat(long long k) const;
};

// The sigma pairs picked by the selector: min, max and evenly spaced order statistics.
std::vector<double> select_sigma(const PairSummary& s, int sigma);

double rule_value(const MergeRule& rule, const std::vector<int>& A, const std::vector<int>& B,
                  const ClusteringInstance& inst);
double rule_value(const MergeRule& rule, const PairSummary& s);

// Monotone transform of rule_value that the builder minimizes; for power
// families sign(a) * (sum of powers) so no 1/a root is ever taken.
double rule_key(const MergeRule& rule, const PairSummary& s);

// Receives, at every merge step, the winning pair against each other candidate.
class MergeObserver {
public:
    virtual ~MergeObserver() = default;
    virtual void on_step(int step) { (void)step; }
    virtual void on_compare(int step, int winner_a, int winner_b, const PairSummary& winner, int other_a, int other_b,
                            const PairSummary& other) = 0;
};

struct BuildOptions {
    // Keys within this relative distance are ties, broken by lexicographic min leaf ids.
    double tie_tol = 1e-12;
    MergeObserver* observer = nullptr;
};

ClusterTree build_tree(const ClusteringInstance& inst, const MergeRule& rule, const BuildOptions& opt = {});

// A recorded decision as a function of the family parameter. The winner stays
// ahead while value(param) > 0.
struct Comparison {
    int step = 0;
    std::pair<int, int> winner;
    std::pair<int, int> other;
    bool affine = false;
    double c0 = 0.0, c1 = 0.0;    // affine form c0 + c1 * alpha
    ExpSum expsum;                // power families
    std::vector<double> normal;   // sigma_linear: key(other) - key(winner) = normal . w

    double value(double param) const { return affine ? c0 + c1 * param : expsum.eval(param); }
};

// Comparison between two summaries under the rule's family, in the rule's parameter.
Comparison make_comparison(const MergeRule& rule, const PairSummary& winner, const PairSummary& other);

struct RecordedRun {
    ClusterTree tree;
    std::vector<Comparison> comparisons;
};

RecordedRun record_comparisons(const ClusteringInstance& inst, const MergeRule& rule);

} // namespace ptune
