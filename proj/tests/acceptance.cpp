// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "ptune/expsum.hpp"
#include "ptune/rng.hpp"

using namespace ptune;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// ---------------------------------------------------------------- 1

Outcome root_finder() {
    const double mid = std::sqrt((1.1 * 1.1 + 1.2 * 1.2) / 2.0);
    auto eq = [&](std::vector<double> left, std::vector<double> right) {
        std::vector<ExpTerm> t{{1.0, 1.1}, {1.0, 1.2}, {-2.0, mid}};
        for (double b : left) t.push_back({1.0, b});
        for (double b : right) t.push_back({-1.0, b});
        return ExpSum(t);
    };
    Outcome o{true, ""};
    const RootSet r1 = find_roots(eq({}, {}), 1.0, 3.0);
    if (r1.roots.size() != 1 || std::abs(r1.roots[0] - 2.0) > 1e-8) o.pass = false;
    o.detail = "round1 " + (r1.roots.empty() ? std::string("none") : fmt("%.10f", r1.roots[0]));

    const double hi4 = 1.5 + 1e-4, lo4 = 1.5 - 1e-4, hi6 = 1.5 + 1e-6, lo6 = 1.5 - 1e-6;
    const std::vector<ExpSum> later = {
        eq({hi4}, {lo4}), eq({lo4}, {hi4}),                                   // round 2
        eq({hi4, hi6}, {lo4, lo6}), eq({hi4, lo6}, {lo4, hi6}),               // round 3
        eq({lo4, hi6}, {hi4, lo6}), eq({lo4, lo6}, {hi4, hi6}),
    };
    std::vector<double> found;
    bool single = true;
    for (const ExpSum& f : later) {
        const RootSet r = find_roots(f, 1.0, 3.0);
        if (r.roots.size() != 1) single = false;
        found.insert(found.end(), r.roots.begin(), r.roots.end());
    }
    std::sort(found.begin(), found.end());
    const std::vector<double> want = {1.882, 1.884, 1.885, 2.123, 2.124, 2.125};
    if (!single || found.size() != want.size()) o.pass = false;
    std::string got;
    for (std::size_t i = 0; i < found.size(); ++i) {
        if (i < want.size() && std::abs(found[i] - want[i]) > 2e-3) o.pass = false;
        got += fmt(" %.4f", found[i]);
    }
    o.detail += ", rounds2-3" + got;
    return o;
}

// ---------------------------------------------------------------- 2

Outcome exponential_sweep() {
    const Fixture fx = gen_general_lb(3);
    ClusteringTask t;
    t.instances = {&fx.instance};
    t.k = 2;
    t.objective = Objective::phi(1.0);
    const PiecewiseProfile p = sweep_alpha(t, Family::average_power, {1.0, 3.0});
    const std::vector<double> want = {1.882, 1.884, 1.885, 2.0, 2.123, 2.124, 2.125};
    Outcome o{p.intervals() == 8 && p.breakpoints.size() == want.size(), ""};
    for (std::size_t i = 0; o.pass && i < want.size(); ++i)
        if (std::abs(p.breakpoints[i] - want[i]) > 2e-3) o.pass = false;
    std::set<std::vector<std::pair<int, int>>> trees;
    for (double x : p.representatives) trees.insert(build_tree(fx.instance, MergeRule::average_power(x)).signature());
    if (trees.size() != 8) o.pass = false;
    o.detail = std::to_string(p.intervals()) + " intervals, " + std::to_string(trees.size()) + " distinct trees, bounds";
    for (double b : p.breakpoints) o.detail += fmt(" %.4f", b);
    return o;
}

// ---------------------------------------------------------------- 3

Outcome oscillation() {
    Outcome o{true, ""};
    double worst = 0.0, slowest = 0.0;
    int cases = 0;
    for (int fam = 0; fam < 2; ++fam)
        for (double p : {1.0, 2.0})
            for (int np : {4, 7}) {
                const auto t0 = std::chrono::steady_clock::now();
                std::vector<double> al;
                for (int i = 0; i < np; ++i) al.push_back(fam == 0 ? 0.05 + 0.08 * i : 0.3 + 0.3 * i);
                int n = 6 * np + 2;
                while (n / 7 < np) n += 6;
                const Fixture fx = gen_oscillation(
                    n, al, fam == 0 ? OscillationFamily::convex_minmax : OscillationFamily::power_minmax, p);
                ClusteringTask t;
                t.instances = {&fx.instance};
                t.k = 2;
                t.rule = {p};
                t.objective = Objective::phi_power_sum(p);
                const std::pair<double, double> range =
                    fam == 0 ? std::pair{0.0, 0.7} : std::pair{0.0, al.back() + 0.5};
                const PiecewiseProfile prof =
                    sweep_alpha(t, fam == 0 ? Family::minmax_convex : Family::minmax_power, range).compacted();
                const std::vector<double>& want = fx.spec.expected_profile;
                bool ok = prof.values.size() == want.size() && want.size() == static_cast<std::size_t>(np + 1);
                for (std::size_t i = 0; ok && i < want.size(); ++i) {
                    const double expect = i % 2 == 0 ? fx.spec.r_low : fx.spec.r_high;
                    worst = std::max(worst, std::abs(prof.values[i] - want[i]));
                    if (std::abs(prof.values[i] - want[i]) > 1e-9 || std::abs(want[i] - expect) > 1e-9) ok = false;
                }
                const double gap = 2.0 * (std::pow(1.47, p) - std::pow(1.46, p));
                if (std::abs((fx.spec.r_high - fx.spec.r_low) - gap) > 1e-9) ok = false;
                const double dt = seconds_since(t0);
                slowest = std::max(slowest, dt);
                if (!ok || dt >= 10.0) o.pass = false;
                ++cases;
            }
    o.detail = std::to_string(cases) + " cases, worst deviation " + fmt("%.2e", worst) + ", slowest case " +
               fmt("%.2fs", slowest);
    return o;
}

// ---------------------------------------------------------------- 4

Outcome gadget_recovery() {
    struct Case {
        Family f;
        double a;
        std::pair<double, double> range;
    };
    std::vector<Case> cases;
    for (double a : {0.2, 0.5, 0.8}) cases.push_back({Family::minmax_convex, a, {0.0, 1.0}});
    for (Family f : {Family::minmax_power, Family::average_power})
        for (double a : {0.5, 1.5, 2.5}) cases.push_back({f, a, {0.0, 4.0}});
    Outcome o{true, ""};
    int hits = 0;
    double slowest = 0.0;
    std::string misses;
    for (const Case& c : cases) {
        const auto t0 = std::chrono::steady_clock::now();
        const Fixture fx = gen_two_gadget(c.a, c.f, 1.0);
        ClusteringTask t;
        t.instances = {&fx.instance};
        t.k = 4;
        t.objective = Objective::phi(1.0);
        const ErmResult r = erm_alpha(t, c.f, c.range);
        const double dt = seconds_since(t0);
        slowest = std::max(slowest, dt);
        const bool hit = r.best_interval.first <= c.a && c.a <= r.best_interval.second && dt < 120.0;
        if (hit) {
            ++hits;
        } else {
            o.pass = false;
            char buf[200];
            std::snprintf(buf, sizeof buf, " %s a*=%.1f got (%.4f,%.4f) cost %.3f vs %.3f at a*;",
                          family_name(c.f).c_str(), c.a, r.best_interval.first, r.best_interval.second, r.best_cost,
                          r.profile.value_at(c.a));
            misses += buf;
        }
    }
    o.detail = std::to_string(hits) + "/" + std::to_string(cases.size()) + " intervals contain alpha*, slowest " +
               fmt("%.1fs", slowest) + (misses.empty() ? "" : "; misses:" + misses);
    return o;
}

// ---------------------------------------------------------------- 5

Outcome dp_oracle() {
    SplitMix64 rng(5);
    const double ps[] = {0.5, 1.0, 2.0, kInf};
    int agree = 0;
    const int total = 500;
    for (int s = 0; s < total; ++s) {
        const int n = 3 + static_cast<int>(rng.next() % 8);
        const int k = 1 + static_cast<int>(rng.next() % std::min(4, n));
        const double p = ps[s % 4];
        const ClusteringInstance inst = random_euclidean(n, 2, 10000 + s);
        MergeRule rule;
        switch (s % 3) {
        case 0: rule = MergeRule::minmax_convex(rng.uniform()); break;
        case 1: rule = MergeRule::minmax_power(rng.uniform(0.5, 3.0)); break;
        default: rule = MergeRule::average_power(rng.uniform(-2.0, 3.0)); break;
        }
        if (rule.family == Family::average_power && rule.alpha == 0.0) rule.alpha = 1.0;
        const ClusterTree tree = build_tree(inst, rule);
        const PruningResult r = best_k_pruning(tree, k, PruningRule{p}, inst);
        if (r.score == oracle::brute_force_pruning(tree, k, p, inst)) ++agree;
    }
    return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " exact score matches"};
}

// ---------------------------------------------------------------- 6

Outcome joint_grid() {
    int equal = 0, finer = 0;
    const int total = 20;
    std::string notes;
    for (int s = 0; s < total; ++s) {
        std::vector<ClusteringInstance> insts;
        for (int q = 0; q < 3; ++q) insts.push_back(random_euclidean(6 + (s + q) % 5, 2, 1000 * s + q));
        ClusteringTask t;
        for (const auto& i : insts) t.instances.push_back(&i);
        t.k = 3;
        t.objective = Objective::phi(1.0);
        const Family f = s % 2 ? Family::average_power : Family::minmax_convex;
        const std::pair<double, double> ar = s % 2 ? std::pair{1.0, 3.0} : std::pair{0.0, 1.0};
        const std::pair<double, double> pr{0.5, 4.0};
        const ErmResult r = erm_joint(t, f, ar, pr);
        const double g = oracle::joint_grid_min(t, f, ar, pr, 200);
        if (std::abs(r.best_cost - g) <= 1e-9) {
            ++equal;
            continue;
        }
        // The sweep can only be finer than the grid. A lower sweep minimum must be
        // reproduced by evaluating the pipeline inside the reported cell and by a finer grid.
        ClusteringTask at = t;
        at.rule.p = r.best_param[1];
        const double direct = pipeline_cost(at, family_rule(f, r.best_param[0]));
        const double fine = oracle::joint_grid_min(t, f, ar, pr, 1000);
        char buf[220];
        std::snprintf(buf, sizeof buf,
                      " sample %d: sweep %.9f < grid200 %.9f, cell alpha (%.5f,%.5f), direct %.9f, grid1000 %.9f;", s,
                      r.best_cost, g, r.best_interval.first, r.best_interval.second, direct, fine);
        notes += buf;
        if (r.best_cost < g && std::abs(direct - r.best_cost) <= 1e-9 && std::abs(fine - r.best_cost) <= 1e-9) ++finer;
    }
    Outcome o{equal + finer == total, ""};
    o.detail = std::to_string(equal) + "/" + std::to_string(total) + " equal to the 200x200 grid";
    if (finer) o.detail += ", " + std::to_string(finer) + " with a verified optimum in a cell narrower than the grid:";
    o.detail += notes;
    return o;
}

// ---------------------------------------------------------------- 7

double slin_grid_max(const std::vector<RoundingSample>& ss, double lo, double hi, int points) {
    double best = -1e300;
    const double ratio = std::log(hi / lo);
    for (int g = 0; g < points; ++g) {
        const double s = lo * std::exp(ratio * g / (points - 1));
        double v = 0.0;
        for (const auto& x : ss) v += slin_value(*x.instance, *x.embedding, x.z, s);
        best = std::max(best, v / static_cast<double>(ss.size()));
    }
    return best;
}

Outcome slin() {
    const K4Fixture f = gen_k4_shatter(20, 1);
    Outcome o{true, ""};
    std::vector<RoundingSample> ss;
    for (std::uint64_t d = 0; d < 5; ++d) ss.push_back({&f.instance, &f.embedding, sample_z(7, d, 20), {}});
    double worst = 0.0;
    auto check = [&](const std::vector<RoundingSample>& group) {
        const RoundingErmResult r = slin_erm(group);
        // Reaches far enough past the last threshold that the s -> inf limit is within 1e-8.
        const double lo = r.thresholds.front() / 100.0, hi = r.thresholds.back() * 1e4;
        const double g = slin_grid_max(group, lo, hi, 100000);
        worst = std::max(worst, std::abs(r.best_value - g));
        if (std::abs(r.best_value - g) > 1e-6) o.pass = false;
    };
    check(ss);
    for (const auto& s : ss) check({s});

    const K4Constants k = k4_constants();
    int pattern = 0;
    for (int i = 0; i < 3; ++i) {
        const double at_c = slin_value(f.instance, f.embedding, f.z, std::pow(7.0, i) * k.c);
        const double at_d = slin_value(f.instance, f.embedding, f.z, std::pow(7.0, i) * k.d);
        // Equality holds exactly at i = 0; allow a few ulp there.
        if (at_c >= f.witness - 1e-12) ++pattern;
        if (at_d < f.witness) ++pattern;
    }
    if (pattern != 6) o.pass = false;
    o.detail = "6 ERM runs vs 1e5-point grid, worst gap " + fmt("%.2e", worst) + "; witness pattern " +
               std::to_string(pattern) + "/6";
    return o;
}

// ---------------------------------------------------------------- 8

Outcome rprt() {
    const K4Fixture f = gen_k4_shatter(20, 1);
    Outcome o{true, ""};
    int exact = 0, within = 0;
    double worst_z = 0.0;
    for (std::uint64_t d = 0; d < 10; ++d) {
        const std::vector<double> z = sample_z(11, d, 20);
        const double s = 0.25 + 0.25 * static_cast<double>(d);
        const double e = rprt_expect(f.instance, f.embedding, z, Baseline::linear, s);
        if (e == rpr2_value(f.instance, f.embedding, z, Baseline::linear, s)) ++exact;
        const int draws = 100000;
        double sum = 0.0, sq = 0.0;
        std::vector<double> q(20);
        for (int m = 0; m < draws; ++m) {
            SplitMix64 rng = sample_stream(1000 + d, static_cast<std::uint64_t>(m));
            for (double& v : q) v = baseline_quantile(Baseline::linear, rng.uniform());
            const double v = cut_value(f.instance, rprt_assign(f.embedding, z, q, s));
            sum += v;
            sq += v * v;
        }
        const double mean = sum / draws;
        const double se = std::sqrt(std::max(0.0, sq / draws - mean * mean) / draws);
        const double zscore = se > 0 ? std::abs(mean - e) / se : (mean == e ? 0.0 : 1e9);
        worst_z = std::max(worst_z, zscore);
        if (zscore <= 4.0) ++within;
    }
    o.pass = exact == 10 && within == 10;
    o.detail = std::to_string(exact) + "/10 exact, " + std::to_string(within) + "/10 within 4 SE (worst " +
               fmt("%.2f SE)", worst_z);
    return o;
}

// ---------------------------------------------------------------- 9

Outcome outward_rotation() {
    Outcome o{true, ""};
    int intervals = 0, max_thr = 0;
    double worst = 0.0;
    for (int n : {4, 8, 20}) {
        const K4Fixture f = gen_k4_shatter(n, 1);
        std::vector<RoundingSample> ss;
        for (std::uint64_t d = 0; d < 5; ++d) ss.push_back({&f.instance, &f.embedding, sample_z(13, d, 2 * n), {}});
        for (const RoundingSample& s : ss) {
            const RoundingErmResult r = owr_erm({s});
            max_thr = std::max(max_thr, static_cast<int>(r.thresholds.size()));
            if (static_cast<int>(r.thresholds.size()) > n) o.pass = false;
            for (std::size_t i = 0; i <= r.thresholds.size(); ++i) {
                const double a = i == 0 ? 0.0 : r.thresholds[i - 1];
                const double b = i == r.thresholds.size() ? M_PI / 2 : r.thresholds[i];
                const double v0 = owr_value(*s.instance, *s.embedding, s.z, a + 0.25 * (b - a));
                const double v1 = owr_value(*s.instance, *s.embedding, s.z, a + 0.5 * (b - a));
                const double v2 = owr_value(*s.instance, *s.embedding, s.z, a + 0.75 * (b - a));
                if (v0 != v1 || v1 != v2) o.pass = false;
                ++intervals;
            }
        }
        const RoundingErmResult r = owr_erm(ss);
        double grid = -1e300;
        for (int g = 0; g < 10000; ++g) {
            const double gamma = (M_PI / 2) * g / 9999.0;
            double v = 0.0;
            for (const auto& s : ss) v += owr_value(*s.instance, *s.embedding, s.z, gamma);
            grid = std::max(grid, v / static_cast<double>(ss.size()));
        }
        worst = std::max(worst, grid - r.best_value);
        if (r.best_value < grid - 1e-9) o.pass = false;
    }
    o.detail = std::to_string(intervals) + " intervals constant at 3 probes, at most " + std::to_string(max_thr) +
               " thresholds per sample, grid excess " + fmt("%.2e", worst);
    return o;
}

// ---------------------------------------------------------------- 10

Outcome discretized() {
    Outcome o{true, ""};
    for (double eps : {0.9, 0.7}) {
        // Closed form: K steps of eps^2 until the bound sqrt(2 ln(1/eps)) is exceeded.
        const double bound = std::sqrt(2.0 * std::log(1.0 / eps));
        long long K = 1;
        while (!(K * eps * eps > bound)) ++K;
        int values = 0;
        for (int j = -100; j <= 100; ++j)
            if (std::abs(j * eps) < 1.0) ++values;
        const long long finite = 2 * K - 1;
        const double expected = std::pow(values, static_cast<double>(finite));

        DiscretizedEnumerator en(eps);
        const DiscretizedGrid& g = en.grid();
        std::uint64_t seen = 0;
        bool tails = true;
        DiscretizedSpec spec;
        while (en.next(spec)) {
            ++seen;
            if (spec(g, -g.B) != -1.0 || spec(g, -g.B - 1.0) != -1.0 || spec(g, 0.0) != 0.0 || spec(g, g.B) != 1.0 ||
                spec(g, g.B + 1.0) != 1.0)
                tails = false;
            for (int l : spec.levels)
                if (!(std::abs(l * eps) < 1.0)) tails = false;
        }
        const bool ok = tails && static_cast<double>(seen) == expected && en.count() == seen &&
                        g.total_pieces() == 2 * K + 1;
        if (!ok) o.pass = false;
        o.detail += fmt("eps=%.1f: ", eps) + std::to_string(seen) + " enumerated, closed form " +
                    fmt("%.0f", expected) + (tails ? ", constraints hold; " : ", constraint violated; ");
    }
    return o;
}

// ---------------------------------------------------------------- 11

Outcome properties() {
    Outcome o{true, ""};
    // Root counts and scan completeness.
    const int sums = 10000, scan = 100000;
    std::atomic<int> bad_count{0}, bad_residual{0}, missed{0};
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int id = next++; id < sums; id = next++) {
            SplitMix64 rng = sample_stream(77, static_cast<std::uint64_t>(id));
            const int m = 1 + static_cast<int>(rng.next() % 8);
            std::vector<ExpTerm> terms;
            for (int i = 0; i < m; ++i) terms.push_back({rng.normal(), rng.uniform(0.5, 3.0)});
            const ExpSum f(terms);
            const double lo = -5.0, hi = 5.0;
            const RootSet rs = find_roots(f, lo, hi);
            if (rs.roots.size() > static_cast<std::size_t>(m)) ++bad_count;
            for (double r : rs.roots) {
                double scale = 0.0;
                for (const ExpTerm& t : f.terms()) scale += std::abs(t.coef) * std::pow(t.base, r);
                if (std::abs(f.eval(r)) > 1e-8 * std::max(1.0, scale)) ++bad_residual;
            }
            // Scan with b^(x+h) = b^x * b^h, resynchronised every 1000 steps.
            const double h = (hi - lo) / scan;
            const std::vector<ExpTerm>& tt = f.terms();
            std::vector<double> pw(tt.size()), step(tt.size());
            for (std::size_t i = 0; i < tt.size(); ++i) step[i] = std::pow(tt[i].base, h);
            double prev = f.eval(lo);
            for (int g = 1; g <= scan; ++g) {
                const double x = lo + g * h;
                double cur = 0.0;
                for (std::size_t i = 0; i < tt.size(); ++i) {
                    pw[i] = g % 1000 == 1 ? std::pow(tt[i].base, x) : pw[i] * step[i];
                    cur += tt[i].coef * pw[i];
                }
                if ((prev < 0 && cur > 0) || (prev > 0 && cur < 0)) {
                    bool found = false;
                    for (double r : rs.roots)
                        if (r >= x - 2 * h && r <= x + h) found = true;
                    if (!found) ++missed;
                }
                if (cur != 0.0) prev = cur;
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned threads = std::max(1u, worker_threads());
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (bad_count || bad_residual || missed) o.pass = false;
    o.detail = "roots: " + std::to_string(bad_count.load()) + " over count, " + std::to_string(bad_residual.load()) +
               " bad residuals, " + std::to_string(missed.load()) + " missed sign changes";

    // Infinite parameters reproduce single and complete linkage.
    int limit_bad = 0;
    for (int s = 0; s < 200; ++s) {
        const ClusteringInstance inst = random_euclidean(4 + s % 9, 2, 500 + s);
        const auto single = oracle::naive_merges(inst, MergeRule::minmax_convex(1.0));
        const auto complete = oracle::naive_merges(inst, MergeRule::minmax_convex(0.0));
        for (Family f : {Family::minmax_power, Family::average_power, Family::sigma_power}) {
            MergeRule lo = family_rule(f, -kInf, 2), hi = family_rule(f, kInf, 2);
            if (build_tree(inst, lo).signature() != single) ++limit_bad;
            if (build_tree(inst, hi).signature() != complete) ++limit_bad;
        }
    }
    if (limit_bad) o.pass = false;
    o.detail += "; limits: " + std::to_string(limit_bad) + " disagreements";

    // Power means do not decrease with the exponent.
    int mono_bad = 0;
    SplitMix64 rng(31);
    for (int s = 0; s < 500; ++s) {
        const ClusteringInstance inst = random_euclidean(8, 2, 900 + s);
        std::vector<int> A, B;
        for (int i = 0; i < 8; ++i) (rng.next() % 2 ? A : B).push_back(i);
        if (A.empty() || B.empty()) continue;
        double prev = -1.0;
        for (int g = -120; g <= 120; ++g) {
            if (g == 0) continue;
            const double v = rule_value(MergeRule::average_power(0.05 * g), A, B, inst);
            if (v < prev - 1e-12 * prev) ++mono_bad;
            prev = v;
        }
    }
    if (mono_bad) o.pass = false;
    o.detail += "; power-mean monotonicity: " + std::to_string(mono_bad) + " violations";

    // Pair-counting distance against the quadratic oracle.
    int pair_bad = 0;
    for (int s = 0; s < 1000; ++s) {
        const int n = 1 + static_cast<int>(rng.next() % 60);
        const int ka = 1 + static_cast<int>(rng.next() % 6), kb = 1 + static_cast<int>(rng.next() % 6);
        std::vector<int> a(n), b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = static_cast<int>(rng.next() % ka);
            b[i] = static_cast<int>(rng.next() % kb);
        }
        if (pair_distance(a, b) != oracle::pair_distance_quadratic(a, b)) ++pair_bad;
    }
    if (pair_bad) o.pass = false;
    o.detail += "; pair distance: " + std::to_string(pair_bad) + " mismatches";
    return o;
}

} // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int id;
        const char* name;
        double budget;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all = {
        {1, "root-finder fidelity", 1.0, root_finder},
        {2, "exponential-tree sweep", 10.0, exponential_sweep},
        {3, "oscillation exactness", 80.0, oscillation},
        {4, "optimal-alpha gadget recovery", 1080.0, gadget_recovery},
        {5, "DP oracle equivalence", 60.0, dp_oracle},
        {6, "joint (alpha, p) ERM vs grid", 120.0, joint_grid},
        {7, "s-linear ERM", 10.0, slin},
        {8, "RPRT equivalence", 20.0, rprt},
        {9, "outward-rotation structure", 10.0, outward_rotation},
        {10, "discretized class count", 30.0, discretized},
        {11, "property suites", 120.0, properties},
    };
    // Optional arguments select criteria by number; default runs all.
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    int failed = 0, ran = 0;
    for (const Criterion& c : all) {
        if (!only.empty() && !only.count(c.id)) continue;
        ++ran;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = seconds_since(t0);
        const bool pass = o.pass && dt < c.budget;
        if (!pass) ++failed;
        std::printf("[%s] criterion %d: %s (%.2fs, budget %.0fs) %s\n", pass ? "PASS" : "FAIL", c.id, c.name, dt,
                    c.budget, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed\n", ran - failed, ran);
    return failed == 0 ? 0 : 1;
}
