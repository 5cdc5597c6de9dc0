#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ptune/error.hpp"
#include "ptune/rng.hpp"

using namespace ptune;

namespace {

ClusteringInstance line(const std::vector<double>& xs) {
    ClusteringInstance inst(static_cast<int>(xs.size()));
    for (int i = 0; i < inst.n; ++i)
        for (int j = i + 1; j < inst.n; ++j) inst.set(i, j, std::abs(xs[i] - xs[j]));
    return inst;
}

} // namespace

TEST_CASE("merge values of the three single-parameter families") {
    const ClusteringInstance inst = line({0.0, 1.0, 3.0, 7.0});
    const std::vector<int> A{0, 1}, B{2, 3};
    // Cross distances: 3, 7, 2, 6.
    CHECK(rule_value(MergeRule::minmax_convex(0.25), A, B, inst) == doctest::Approx(0.25 * 2 + 0.75 * 7));
    CHECK(rule_value(MergeRule::minmax_power(2.0), A, B, inst) == doctest::Approx(std::sqrt(4.0 + 49.0)));
    CHECK(rule_value(MergeRule::average_power(1.0), A, B, inst) == doctest::Approx(4.5));
    CHECK(rule_value(MergeRule::average_power(2.0), A, B, inst) ==
          doctest::Approx(std::sqrt((9.0 + 49.0 + 4.0 + 36.0) / 4.0)));
    CHECK(rule_value(MergeRule::average_power(kInf), A, B, inst) == 7.0);
    CHECK(rule_value(MergeRule::average_power(-kInf), A, B, inst) == 2.0);
}

TEST_CASE("sigma selector picks min, max and spread order statistics") {
    PairSummary s;
    s.hist = {{1.0, 1}, {2.0, 2}, {5.0, 1}, {9.0, 1}};
    s.count = 5;
    CHECK(s.order_stat(0) == 1.0);
    CHECK(s.order_stat(2) == 2.0);
    CHECK(s.order_stat(4) == 9.0);
    CHECK(select_sigma(s, 2) == std::vector<double>{1.0, 9.0});
    const std::vector<double> three = select_sigma(s, 3);
    REQUIRE(three.size() == 3);
    CHECK(three.front() == 1.0);
    CHECK(three[1] == 2.0);
    CHECK(three.back() == 9.0);
}

TEST_CASE("rule domains") {
    CHECK_THROWS_AS(check_rule(MergeRule::minmax_convex(1.5)), Error);
    CHECK_THROWS_AS(check_rule(MergeRule::minmax_power(0.0)), Error);
    CHECK_THROWS_AS(check_rule(MergeRule::sigma_linear({1.0})), Error);
    CHECK_NOTHROW(check_rule(MergeRule::average_power(-3.0)));
    CHECK_NOTHROW(check_rule(MergeRule::sigma_power(2.0, 4)));
}

TEST_CASE("tree structure") {
    const ClusteringInstance inst = random_euclidean(9, 2, 1);
    const ClusterTree t = build_tree(inst, MergeRule::average_power(1.0));
    CHECK(t.nodes.size() == 17);
    CHECK(t.nodes[t.root()].size == 9);
    std::vector<int> all = t.leaves(t.root());
    std::sort(all.begin(), all.end());
    for (int i = 0; i < 9; ++i) CHECK(all[i] == i);
    for (int v = 9; v < 17; ++v) {
        const TreeNode& nd = t.nodes[v];
        CHECK(nd.merge_order == v - 9);
        CHECK(t.nodes[nd.left].min_leaf < t.nodes[nd.right].min_leaf);
    }
}

TEST_CASE("builder agrees with naive recomputation") {
    SplitMix64 rng(12);
    for (int s = 0; s < 150; ++s) {
        const ClusteringInstance inst = random_euclidean(3 + s % 10, 2, 300 + s);
        MergeRule rule;
        switch (s % 5) {
        case 0: rule = MergeRule::minmax_convex(rng.uniform()); break;
        case 1: rule = MergeRule::minmax_power(rng.uniform(-3.0, 3.0)); break;
        case 2: rule = MergeRule::average_power(rng.uniform(-3.0, 3.0)); break;
        case 3: rule = MergeRule::sigma_power(rng.uniform(0.5, 3.0), 3); break;
        default: rule = MergeRule::sigma_linear({rng.uniform(), rng.uniform()}); break;
        }
        CHECK(build_tree(inst, rule).signature() == oracle::naive_merges(inst, rule));
    }
}

TEST_CASE("ties break toward the lexicographically smallest pair") {
    // Four points on a unit square: all sides tie.
    ClusteringInstance inst(4);
    inst.set(0, 1, 1.0);
    inst.set(1, 2, 1.0);
    inst.set(2, 3, 1.0);
    inst.set(0, 3, 1.0);
    inst.set(0, 2, std::sqrt(2.0));
    inst.set(1, 3, std::sqrt(2.0));
    const auto sig = build_tree(inst, MergeRule::minmax_convex(1.0)).signature();
    CHECK(sig[0] == std::pair{0, 1});
    // {0,1} against {2} has min leaves (0,2), which precedes (2,3).
    CHECK(sig[1] == std::pair{0, 2});
}

TEST_CASE("recorded comparisons favour the winner at the build parameter") {
    for (int s = 0; s < 40; ++s) {
        const ClusteringInstance inst = random_euclidean(7, 2, 700 + s);
        const MergeRule rule = s % 2 ? MergeRule::average_power(1.3) : MergeRule::minmax_convex(0.4);
        const RecordedRun run = record_comparisons(inst, rule);
        CHECK(same_merge_sequence(run.tree, build_tree(inst, rule)));
        CHECK_FALSE(run.comparisons.empty());
        for (const Comparison& c : run.comparisons) CHECK(c.value(rule.alpha) >= -1e-12);
    }
}

TEST_CASE("make_comparison signs for the convex family") {
    PairSummary w, o;
    w.hist = {{1.0, 1}, {4.0, 1}};
    w.count = 2;
    o.hist = {{2.0, 1}, {3.0, 1}};
    o.count = 2;
    const Comparison c = make_comparison(MergeRule::minmax_convex(0.9), w, o);
    REQUIRE(c.affine);
    // other - winner = (2a + 3(1-a)) - (a + 4(1-a)) = 2a - 1.
    CHECK(c.value(0.9) == doctest::Approx(0.8));
    CHECK(c.value(0.5) == doctest::Approx(0.0));
}
