#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ptune/error.hpp"

using namespace ptune;

namespace {

struct Sample {
    std::vector<ClusteringInstance> insts;
    ClusteringTask task;
};

Sample make_sample(std::uint64_t seed, int count, int n, int k, double p) {
    Sample s;
    for (int i = 0; i < count; ++i) s.insts.push_back(random_euclidean(n, 2, seed + i));
    for (const auto& i : s.insts) s.task.instances.push_back(&i);
    s.task.k = k;
    s.task.rule = {p};
    s.task.objective = Objective::phi(1.0);
    return s;
}

} // namespace

TEST_CASE("lazy sweep recovers a synthetic step function") {
    // Cost is the number of thresholds below x; comparisons are x - t.
    const std::vector<double> t{0.2, 0.5, 0.55, 0.9};
    SweepRun run = [&](double x, SweepWindow& w) {
        double cost = 0.0;
        for (double v : t) {
            w.offer_affine(-v, 1.0);
            if (x > v) cost += 1.0;
        }
        return cost;
    };
    std::size_t runs = 0;
    const PiecewiseProfile p = lazy_sweep(run, 0.0, 1.0, {}, &runs);
    REQUIRE(p.breakpoints.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(p.breakpoints[i] == doctest::Approx(t[i]).epsilon(1e-12));
        CHECK(p.values[i] == static_cast<double>(i));
    }
    CHECK(p.values[4] == 4.0);
    CHECK(runs == 5 + 4);
}

TEST_CASE("profile values match the pipeline at representatives and breakpoints") {
    for (int s = 0; s < 6; ++s) {
        Sample smp = make_sample(50 + 10 * s, 2, 8, 3, 1.0 + 0.5 * s);
        const Family f = s % 3 == 0 ? Family::minmax_convex : s % 3 == 1 ? Family::minmax_power : Family::average_power;
        const std::pair<double, double> r = f == Family::minmax_convex ? std::pair{0.0, 1.0} : std::pair{0.2, 4.0};
        const PiecewiseProfile p = sweep_alpha(smp.task, f, r);
        REQUIRE(p.values.size() == p.representatives.size());
        for (std::size_t i = 0; i < p.values.size(); ++i)
            CHECK(p.values[i] == doctest::Approx(pipeline_cost(smp.task, family_rule(f, p.representatives[i]))));
        for (std::size_t i = 0; i < p.values.size(); ++i) {
            CHECK(p.representatives[i] > p.bound(i));
            CHECK(p.representatives[i] < p.bound(i + 1));
        }
        // Dense probes never see a value outside the profile.
        for (int g = 1; g < 400; ++g) {
            const double x = r.first + (r.second - r.first) * g / 400.0;
            bool on_break = false;
            for (double b : p.breakpoints) on_break = on_break || std::abs(b - x) < 1e-9;
            if (!on_break) CHECK(p.value_at(x) == doctest::Approx(pipeline_cost(smp.task, family_rule(f, x))));
        }
    }
}

TEST_CASE("power sweeps split at zero") {
    Sample smp = make_sample(11, 1, 7, 2, 1.0);
    const PiecewiseProfile p = sweep_alpha(smp.task, Family::minmax_power, {-2.0, 2.0});
    CHECK(std::find(p.breakpoints.begin(), p.breakpoints.end(), 0.0) != p.breakpoints.end());
}

TEST_CASE("unbounded ranges report limit costs") {
    Sample smp = make_sample(21, 1, 7, 2, 1.0);
    const PiecewiseProfile p = sweep_alpha(smp.task, Family::average_power, {1.0, kInf});
    REQUIRE(p.hi_limit_value.has_value());
    CHECK(*p.hi_limit_value == doctest::Approx(pipeline_cost(smp.task, MergeRule::average_power(kInf))));
}

TEST_CASE("erm_alpha is never beaten by a grid") {
    for (int s = 0; s < 5; ++s) {
        Sample smp = make_sample(500 + 7 * s, 3, 8, 3, 2.0);
        const ErmResult r = erm_alpha(smp.task, Family::minmax_convex, {0.0, 1.0});
        CHECK(r.best_cost == doctest::Approx(pipeline_cost(smp.task, MergeRule::minmax_convex(r.best_param[0]))));
        for (int g = 0; g <= 200; ++g)
            CHECK(r.best_cost <= pipeline_cost(smp.task, MergeRule::minmax_convex(g / 200.0)) + 1e-9);
    }
}

TEST_CASE("erm_p over fixed trees") {
    Sample smp = make_sample(900, 2, 9, 3, 1.0);
    std::vector<ClusterTree> trees;
    for (const auto& i : smp.insts) trees.push_back(build_tree(i, MergeRule::average_power(1.0)));
    std::vector<const ClusterTree*> tp;
    for (const auto& t : trees) tp.push_back(&t);
    const ErmResult r = erm_p(tp, smp.task, {0.5, 5.0});
    for (int g = 0; g <= 100; ++g) {
        const double p = 0.5 + 4.5 * g / 100.0;
        double total = 0.0;
        for (std::size_t i = 0; i < trees.size(); ++i)
            total += objective_value(smp.task.objective,
                                     best_k_pruning(trees[i], 3, PruningRule{p}, smp.insts[i]), smp.insts[i]);
        CHECK(r.best_cost <= total + 1e-9);
    }
}

TEST_CASE("joint search matches the grid on small samples") {
    for (int s = 0; s < 3; ++s) {
        Sample smp = make_sample(2000 + 10 * s, 2, 7, 2, 1.0);
        const ErmResult r = erm_joint(smp.task, Family::minmax_convex, {0.0, 1.0}, {0.5, 3.0});
        REQUIRE(r.best_p_interval.has_value());
        const double g = oracle::joint_grid_min(smp.task, Family::minmax_convex, {0.0, 1.0}, {0.5, 3.0}, 60);
        CHECK(r.best_cost <= g + 1e-9);
    }
}

TEST_CASE("sigma-linear search") {
    Sample smp = make_sample(77, 2, 7, 2, 1.0);
    const ErmResult r = erm_sigma_linear(smp.task, 2, {{0.0, 1.0}, {0.0, 1.0}});
    REQUIRE(r.best_param.size() == 2);
    const MergeRule best = MergeRule::sigma_linear(r.best_param);
    CHECK(r.best_cost == doctest::Approx(pipeline_cost(smp.task, best)));
    for (int a = 0; a <= 20; ++a)
        for (int b = 0; b <= 20; ++b) {
            if (a == 0 && b == 0) continue;
            CHECK(r.best_cost <= pipeline_cost(smp.task, MergeRule::sigma_linear({a / 20.0, b / 20.0})) + 1e-9);
        }
    SigmaLinearOptions exact;
    CHECK_THROWS_AS(erm_sigma_linear(smp.task, 3, {{0, 1}, {0, 1}, {0, 1}}, exact), Error);
    SigmaLinearOptions approx;
    approx.exact = false;
    approx.starts = 8;
    CHECK_NOTHROW(erm_sigma_linear(smp.task, 3, {{0, 1}, {0, 1}, {0, 1}}, approx));
}

TEST_CASE("convex breakpoint candidates contain every sweep breakpoint") {
    const ClusteringInstance inst = random_euclidean(6, 2, 606);
    ClusteringTask t;
    t.instances = {&inst};
    t.k = 2;
    const PiecewiseProfile p = sweep_alpha(t, Family::minmax_convex, {0.0, 1.0});
    const std::vector<double> cand = convex_breakpoint_candidates(inst);
    for (double b : p.breakpoints) {
        bool found = false;
        for (double c : cand) found = found || std::abs(b - c) < 1e-9;
        CHECK(found);
    }
}

TEST_CASE("sample size and pseudo-dimension table") {
    CHECK(sample_size(1.0, 0.1, std::exp(-3.0), 10.0) == 1300);
    CHECK(sample_size(2.0, 0.5, 0.5, 1.0, 2.0) == static_cast<std::uint64_t>(std::ceil(32.0 * (1.0 + std::log(2.0)))));
    CHECK_THROWS_AS(sample_size(1.0, 0.1, 1.5, 3.0), Error);
    CHECK(pdim_table("minmax-convex", 1024).value == doctest::Approx(10.0));
    CHECK(pdim_table("average-power", 64).value == 64.0);
    CHECK(pdim_table("beta-restricted", 1024, 2, 3).value == doctest::Approx(30.0));
    CHECK_THROWS_AS(pdim_table("nonsense", 10), Error);
}
