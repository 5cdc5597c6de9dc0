#include "ptune/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>
#include <thread>

#include "ptune/error.hpp"
#include "ptune/rng.hpp"

namespace ptune {

namespace {

constexpr double kBreakSep = 1e-9;   // roots closer than this to the current breakpoint are the same breakpoint
constexpr double kPointWidth = 1e-10; // half-width reported for a single-point optimum
const double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class F>
void parallel_for(std::size_t count, const F& fn) {
    const unsigned threads = std::min<std::size_t>(worker_threads(), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < count; i += threads) fn(i);
            } catch (...) {
                errs[t] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

} // namespace

unsigned worker_threads() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PARTITION_TUNER_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return hw;
}

// ---------------------------------------------------------------- profile

double PiecewiseProfile::bound(std::size_t i) const {
    if (i == 0) return lo;
    if (i > breakpoints.size()) return hi;
    return breakpoints[i - 1];
}

double PiecewiseProfile::value_at(double x) const {
    const auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), x);
    const std::size_t idx = static_cast<std::size_t>(it - breakpoints.begin());
    if (it != breakpoints.end() && *it == x && idx < breakpoint_values.size() && !std::isnan(breakpoint_values[idx]))
        return breakpoint_values[idx];
    return values[std::min(idx + (it != breakpoints.end() && *it == x ? 1 : 0), values.size() - 1)];
}

PiecewiseProfile PiecewiseProfile::compacted(double rel_tol) const {
    auto same = [rel_tol](double a, double b) {
        return std::abs(a - b) <= rel_tol * std::max({1.0, std::abs(a), std::abs(b)});
    };
    PiecewiseProfile out;
    out.lo = lo;
    out.hi = hi;
    out.lo_limit_value = lo_limit_value;
    out.hi_limit_value = hi_limit_value;
    if (values.empty()) return out;
    out.values.push_back(values[0]);
    out.representatives.push_back(representatives[0]);
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        const double bv = i < breakpoint_values.size() ? breakpoint_values[i] : kNaN;
        const bool point_same = std::isnan(bv) || same(bv, values[i + 1]);
        if (same(out.values.back(), values[i + 1]) && point_same) continue;
        out.breakpoints.push_back(breakpoints[i]);
        out.breakpoint_values.push_back(bv);
        out.values.push_back(values[i + 1]);
        out.representatives.push_back(representatives[i + 1]);
    }
    return out;
}

// ---------------------------------------------------------------- window

void SweepWindow::offer_affine(double c0, double c1) {
    if (c1 == 0.0) return;
    const double r = -c0 / c1;
    const double floor = lo_ + kBreakSep * std::max(1.0, std::abs(lo_));
    if (r > x_ && r < right_) right_ = r;
    if (r < x_ && r > left_ && r > floor) left_ = r;
}

void SweepWindow::offer(const ExpSum& f) {
    if (f.size() <= 1) return;
    if (right_ > x_ && !sign_definite_on(f, x_, right_))
        if (auto r = first_root(f, x_, right_)) right_ = *r;
    const double a = std::max(left_, lo_ + kBreakSep * std::max(1.0, std::abs(lo_)));
    if (a < x_ && !sign_definite_on(f, a, x_))
        if (auto r = last_root(f, a, x_)) left_ = std::max(left_, *r);
}

void SweepWindow::offer(const Comparison& c) {
    if (c.affine)
        offer_affine(c.c0, c.c1);
    else
        offer(c.expsum);
}

void SweepWindow::merge(const SweepWindow& o) {
    left_ = std::max(left_, o.left_);
    right_ = std::min(right_, o.right_);
}

// ---------------------------------------------------------------- engine

PiecewiseProfile lazy_sweep(const SweepRun& run, double lo, double hi, const SweepOptions& opt, std::size_t* runs) {
    if (!(lo < hi)) throw Error(ErrorCode::domain_error, "sweep range needs lo < hi");
    std::size_t count = 0;
    PiecewiseProfile prof;
    prof.lo = lo;
    prof.hi = hi;
    const double a = std::isinf(lo) ? -opt.clip : lo;
    const double b = std::isinf(hi) ? opt.clip : hi;
    if (!(a < b)) throw Error(ErrorCode::domain_error, "sweep range is empty after clipping");

    std::vector<double> cuts{a};
    std::vector<bool> fixed_cut{false};
    for (double f : opt.fixed_breakpoints)
        if (f > a && f < b) {
            cuts.push_back(f);
            fixed_cut.push_back(true);
        }
    cuts.push_back(b);
    std::vector<bool> is_fixed;

    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double s0 = cuts[s], s1 = cuts[s + 1];
        if (s > 0) {
            prof.breakpoints.push_back(s0);
            is_fixed.push_back(true);
        }
        double cur = s0;
        bool first = true;
        while (cur < s1) {
            double x = cur + std::min(1e-3 * std::max(1.0, std::abs(cur)), (s1 - cur) / 2.0);
            double cost = 0.0;
            double right = s1;
            for (;;) {
                SweepWindow w(cur, x, s1);
                cost = run(x, w);
                ++count;
                const double gap = x - cur;
                if (w.left() > cur && gap > 1e-13 * std::max(1.0, std::abs(cur))) {
                    x = cur + (w.left() - cur) / 2.0;
                    continue;
                }
                right = w.right();
                break;
            }
            if (!first) {
                prof.breakpoints.push_back(cur);
                is_fixed.push_back(false);
            }
            first = false;
            const double ilo = (cur == a && std::isinf(lo)) ? lo : cur;
            const double ihi = (right == b && std::isinf(hi)) ? hi : right;
            double rep;
            if (std::isinf(ilo) && std::isinf(ihi))
                rep = x;
            else if (std::isinf(ilo))
                rep = ihi - 1.0;
            else if (std::isinf(ihi))
                rep = ilo + 1.0;
            else
                rep = ilo + (ihi - ilo) / 2.0;
            prof.values.push_back(cost);
            prof.representatives.push_back(rep);
            if (opt.on_interval) opt.on_interval(ilo, ihi, cost);
            if (right <= cur) break;
            cur = right;
        }
    }
    if (opt.eval_breakpoints) {
        for (std::size_t i = 0; i < prof.breakpoints.size(); ++i) {
            if (is_fixed[i] && !opt.defined_at_fixed) {
                prof.breakpoint_values.push_back(kNaN);
                continue;
            }
            SweepWindow w(prof.breakpoints[i], prof.breakpoints[i], prof.breakpoints[i]);
            prof.breakpoint_values.push_back(run(prof.breakpoints[i], w));
            ++count;
        }
    }
    if (std::isinf(lo)) {
        SweepWindow w(lo, lo, lo);
        prof.lo_limit_value = run(lo, w);
        ++count;
    }
    if (std::isinf(hi)) {
        SweepWindow w(hi, hi, hi);
        prof.hi_limit_value = run(hi, w);
        ++count;
    }
    if (runs) *runs += count;
    return prof;
}

namespace {

ErmResult erm_from_profile(const PiecewiseProfile& prof) {
    ErmResult r;
    r.profile = prof;
    std::size_t best = 0;
    for (std::size_t i = 1; i < prof.values.size(); ++i)
        if (prof.values[i] < prof.values[best]) best = i;
    r.best_cost = prof.values[best];
    r.best_interval = {prof.bound(best), prof.bound(best + 1)};
    r.best_param = {prof.representatives[best]};
    for (std::size_t i = 0; i < prof.breakpoint_values.size(); ++i) {
        const double v = prof.breakpoint_values[i];
        if (std::isnan(v)) continue;
        if (v < r.best_cost - 1e-12 * std::max(1.0, std::abs(r.best_cost))) {
            r.best_cost = v;
            const double x = prof.breakpoints[i];
            r.best_interval = {x - kPointWidth, x + kPointWidth};
            r.best_param = {x};
        }
    }
    return r;
}

class WindowFeeder : public MergeObserver {
public:
    WindowFeeder(const MergeRule& r, SweepWindow& w) : rule_(r), w_(w) {}
    void on_compare(int, int, int, const PairSummary& win, int, int, const PairSummary& other) override {
        w_.offer(make_comparison(rule_, win, other));
    }

private:
    const MergeRule& rule_;
    SweepWindow& w_;
};

// Sigma-linear weights along a segment: comparisons are affine in t.
class SegmentFeeder : public MergeObserver {
public:
    SegmentFeeder(const MergeRule& r, const std::vector<double>& u, const std::vector<double>& v, SweepWindow& w)
        : rule_(r), u_(u), v_(v), w_(w) {}
    void on_compare(int, int, int, const PairSummary& win, int, int, const PairSummary& other) override {
        const Comparison c = make_comparison(rule_, win, other);
        double c0 = 0.0, c1 = 0.0;
        for (std::size_t i = 0; i < u_.size(); ++i) {
            c0 += c.normal[i] * u_[i];
            c1 += c.normal[i] * (v_[i] - u_[i]);
        }
        w_.offer_affine(c0, c1);
    }

private:
    const MergeRule& rule_;
    const std::vector<double>& u_;
    const std::vector<double>& v_;
    SweepWindow& w_;
};

double instance_cost(const ClusteringTask& task, const ClusteringInstance& inst, const ClusterTree& tree) {
    PruneOptions po;
    po.variant = task.variant;
    const PruningResult pr = best_k_pruning(tree, task.k, task.rule, inst, po);
    return objective_value(task.objective, pr, inst);
}

// Runs the merge stage at rule on every instance, feeding the window through make_feeder.
template <class MakeFeeder>
double run_merge_stage(const ClusteringTask& task, const MergeRule& rule, SweepWindow& w, bool observe,
                       const MakeFeeder& make_feeder, std::vector<ClusterTree>* trees_out = nullptr) {
    const std::size_t m = task.instances.size();
    std::vector<double> costs(m, 0.0);
    std::vector<SweepWindow> windows(m, w);
    std::vector<ClusterTree> trees(m);
    parallel_for(m, [&](std::size_t i) {
        BuildOptions bo;
        auto feeder = make_feeder(windows[i]);
        if (observe) bo.observer = &feeder;
        trees[i] = build_tree(*task.instances[i], rule, bo);
        if (!trees_out) costs[i] = instance_cost(task, *task.instances[i], trees[i]);
    });
    for (auto& wi : windows) w.merge(wi);
    double total = 0.0;
    for (double c : costs) total += c;
    if (trees_out) *trees_out = std::move(trees);
    return total;
}

void check_task(const ClusteringTask& task) {
    if (task.instances.empty()) throw Error(ErrorCode::invalid_argument, "no instances given");
    check_objective(task.objective);
    if (!(task.rule.p > 0.0)) throw Error(ErrorCode::domain_error, "pruning exponent must be positive");
    for (const auto* inst : task.instances)
        if (task.k > inst->n)
            throw Error(ErrorCode::k_too_large, "k = " + std::to_string(task.k) + " exceeds an instance size");
}

void check_family_range(Family f, std::pair<double, double> r) {
    if (std::isnan(r.first) || std::isnan(r.second) || !(r.first < r.second))
        throw Error(ErrorCode::domain_error, "parameter range needs lo < hi");
    if (f == Family::minmax_convex && (r.first < 0.0 || r.second > 1.0))
        throw Error(ErrorCode::domain_error, "convex family parameter must lie in [0,1]");
    if (f == Family::sigma_linear)
        throw Error(ErrorCode::domain_error, "sigma-linear weights are searched with erm_sigma_linear");
}

SweepOptions family_sweep_options(Family f) {
    SweepOptions so;
    if (is_power_family(f)) {
        so.fixed_breakpoints = {0.0};
        so.defined_at_fixed = f != Family::minmax_power;
    }
    return so;
}

PiecewiseProfile sweep_alpha_impl(const ClusteringTask& task, Family family, std::pair<double, double> range,
                                  std::size_t* runs, int sigma, SweepOptions so) {
    check_task(task);
    check_family_range(family, range);
    SweepRun run = [&](double x, SweepWindow& w) {
        const MergeRule rule = family_rule(family, x, sigma);
        return run_merge_stage(task, rule, w, std::isfinite(x),
                               [&](SweepWindow& wi) { return WindowFeeder(rule, wi); });
    };
    return lazy_sweep(run, range.first, range.second, so, runs);
}

PiecewiseProfile sweep_p_impl(const std::vector<const ClusterTree*>& trees, const ClusteringTask& task,
                              std::pair<double, double> p_range, std::size_t* runs, bool eval_points) {
    check_task(task);
    if (trees.size() != task.instances.size())
        throw Error(ErrorCode::dimension_mismatch, "one tree per instance is required");
    if (!(p_range.first >= 0.0) || !(p_range.first < p_range.second))
        throw Error(ErrorCode::domain_error, "p range must satisfy 0 <= lo < hi");
    SweepRun run = [&](double p, SweepWindow& w) {
        const std::size_t m = trees.size();
        std::vector<double> costs(m);
        std::vector<SweepWindow> windows(m, w);
        parallel_for(m, [&](std::size_t i) {
            std::vector<ExpSum> cmp;
            PruneOptions po;
            po.variant = task.variant;
            if (std::isfinite(p)) po.comparisons = &cmp;
            const PruningResult pr = best_k_pruning(*trees[i], task.k, PruningRule{p}, *task.instances[i], po);
            costs[i] = objective_value(task.objective, pr, *task.instances[i]);
            for (const auto& f : cmp) windows[i].offer(f);
        });
        for (auto& wi : windows) w.merge(wi);
        double total = 0.0;
        for (double c : costs) total += c;
        return total;
    };
    SweepOptions so;
    so.eval_breakpoints = eval_points;
    return lazy_sweep(run, p_range.first, p_range.second, so, runs);
}

} // namespace

MergeRule family_rule(Family f, double a, int sigma) {
    switch (f) {
    case Family::minmax_power: return MergeRule::minmax_power(a);
    case Family::average_power: return MergeRule::average_power(a);
    case Family::minmax_convex: return MergeRule::minmax_convex(a);
    case Family::sigma_power: return MergeRule::sigma_power(a, sigma);
    case Family::sigma_linear: break;
    }
    throw Error(ErrorCode::domain_error, "sigma-linear is not a single-parameter family");
}

double pipeline_cost(const ClusteringTask& task, const MergeRule& rule) {
    check_task(task);
    check_rule(rule);
    const std::size_t m = task.instances.size();
    std::vector<double> costs(m);
    parallel_for(m, [&](std::size_t i) {
        const ClusterTree t = build_tree(*task.instances[i], rule);
        costs[i] = instance_cost(task, *task.instances[i], t);
    });
    double total = 0.0;
    for (double c : costs) total += c;
    return total;
}

PiecewiseProfile sweep_alpha(const ClusteringTask& task, Family family, std::pair<double, double> range,
                             std::size_t* runs, int sigma) {
    return sweep_alpha_impl(task, family, range, runs, sigma, family_sweep_options(family));
}

ErmResult erm_alpha(const ClusteringTask& task, Family family, std::pair<double, double> range, int sigma) {
    std::size_t runs = 0;
    ErmResult r = erm_from_profile(sweep_alpha(task, family, range, &runs, sigma));
    r.instances_evaluated = task.instances.size();
    r.runs = runs;
    return r;
}

PiecewiseProfile sweep_p(const std::vector<const ClusterTree*>& trees, const ClusteringTask& task,
                         std::pair<double, double> p_range, std::size_t* runs) {
    return sweep_p_impl(trees, task, p_range, runs, true);
}

ErmResult erm_p(const std::vector<const ClusterTree*>& trees, const ClusteringTask& task,
                std::pair<double, double> p_range) {
    std::size_t runs = 0;
    ErmResult r = erm_from_profile(sweep_p(trees, task, p_range, &runs));
    r.instances_evaluated = task.instances.size();
    r.runs = runs;
    return r;
}

ErmResult erm_joint(const ClusteringTask& task, Family family, std::pair<double, double> alpha_range,
                    std::pair<double, double> p_range) {
    check_task(task);
    check_family_range(family, alpha_range);
    std::size_t runs = 0, cells = 0;
    ErmResult last_inner;
    std::vector<ErmResult> per_cell;
    SweepRun run = [&](double x, SweepWindow& w) {
        const MergeRule rule = family_rule(family, x);
        std::vector<ClusterTree> trees;
        run_merge_stage(task, rule, w, std::isfinite(x), [&](SweepWindow& wi) { return WindowFeeder(rule, wi); },
                        &trees);
        std::vector<const ClusterTree*> tp;
        for (const auto& t : trees) tp.push_back(&t);
        std::size_t inner_runs = 0;
        last_inner = erm_from_profile(sweep_p_impl(tp, task, p_range, &inner_runs, false));
        runs += inner_runs;
        return last_inner.best_cost;
    };
    SweepOptions so = family_sweep_options(family);
    so.eval_breakpoints = false;
    so.on_interval = [&](double, double, double) {
        per_cell.push_back(last_inner);
        cells += last_inner.profile.intervals();
    };
    const PiecewiseProfile outer = lazy_sweep(run, alpha_range.first, alpha_range.second, so, &runs);
    ErmResult r = erm_from_profile(outer);
    std::size_t best = 0;
    for (std::size_t i = 1; i < outer.values.size(); ++i)
        if (outer.values[i] < outer.values[best]) best = i;
    const ErmResult& inner = per_cell[best];
    r.best_param = {outer.representatives[best], inner.best_param[0]};
    r.best_p_interval = inner.best_interval;
    r.instances_evaluated = task.instances.size();
    r.runs = runs;
    r.cells = cells;
    return r;
}

// ---------------------------------------------------------------- sigma-linear

namespace {

std::vector<std::vector<double>> active_normals(const ClusteringTask& task, const MergeRule& rule) {
    std::set<std::vector<double>> uniq;
    for (const auto* inst : task.instances) {
        const RecordedRun rr = record_comparisons(*inst, rule);
        for (const auto& c : rr.comparisons) {
            bool zero = true;
            for (double v : c.normal) zero = zero && v == 0.0;
            if (!zero) uniq.insert(c.normal);
        }
    }
    return {uniq.begin(), uniq.end()};
}

} // namespace

ErmResult erm_sigma_linear(const ClusteringTask& task, int sigma, const std::vector<std::pair<double, double>>& box,
                           const SigmaLinearOptions& opt) {
    check_task(task);
    if (sigma < 2) throw Error(ErrorCode::domain_error, "sigma must be at least 2");
    if (static_cast<int>(box.size()) != sigma)
        throw Error(ErrorCode::dimension_mismatch, "weight box needs one range per selected pair");
    for (const auto& [l, h] : box)
        if (!(l <= h) || !std::isfinite(l) || !std::isfinite(h))
            throw Error(ErrorCode::domain_error, "weight box ranges must be finite with lo <= hi");
    ErmResult res;
    res.instances_evaluated = task.instances.size();
    if (sigma == 2) {
        // Trees depend on the weight direction only, and the directions of a box are
        // those of its boundary. Edges on a line through the origin add no new direction.
        const std::vector<std::vector<double>> corners{{box[0].first, box[1].first},
                                                       {box[0].second, box[1].first},
                                                       {box[0].second, box[1].second},
                                                       {box[0].first, box[1].second}};
        bool have = false;
        for (int e = 0; e < 4; ++e) {
            const auto& u = corners[e];
            const auto& v = corners[(e + 1) % 4];
            if (u == v || u[0] * v[1] - u[1] * v[0] == 0.0) continue;
            SweepRun run = [&](double t, SweepWindow& w) {
                const MergeRule rule = MergeRule::sigma_linear({u[0] + t * (v[0] - u[0]), u[1] + t * (v[1] - u[1])});
                return run_merge_stage(task, rule, w, true,
                                       [&](SweepWindow& wi) { return SegmentFeeder(rule, u, v, wi); });
            };
            SweepOptions so;
            so.eval_breakpoints = false;
            const PiecewiseProfile prof = lazy_sweep(run, 0.0, 1.0, so, &res.runs);
            ErmResult r = erm_from_profile(prof);
            if (!have || r.best_cost < res.best_cost) {
                have = true;
                const double t = r.best_param[0];
                res.best_cost = r.best_cost;
                res.best_interval = r.best_interval;
                res.best_param = {u[0] + t * (v[0] - u[0]), u[1] + t * (v[1] - u[1])};
                res.profile = prof;
            }
        }
        if (!have) {
            // Every direction in the box is a single ray; evaluate it directly.
            std::vector<double> w{box[0].second, box[1].second};
            if (w[0] == 0.0 && w[1] == 0.0) w = {box[0].first, box[1].first};
            if (w[0] == 0.0 && w[1] == 0.0) throw Error(ErrorCode::domain_error, "weight box is the origin");
            res.best_param = w;
            res.best_cost = pipeline_cost(task, MergeRule::sigma_linear(w));
            res.best_interval = {0.0, 1.0};
            ++res.runs;
        }
        res.certificate = active_normals(task, MergeRule::sigma_linear(res.best_param));
        return res;
    }
    if (opt.exact)
        throw Error(ErrorCode::sigma_too_large_for_exact,
                    "exact weight search is implemented for sigma = 2 only; sigma = " + std::to_string(sigma));
    SplitMix64 rng(opt.seed);
    std::vector<std::vector<double>> starts;
    std::vector<double> mid(sigma);
    for (int i = 0; i < sigma; ++i) mid[i] = (box[i].first + box[i].second) / 2.0;
    starts.push_back(mid);
    for (int s = 0; s < opt.starts; ++s) {
        std::vector<double> w(sigma);
        for (int i = 0; i < sigma; ++i) w[i] = rng.uniform(box[i].first, box[i].second);
        starts.push_back(std::move(w));
    }
    bool have = false;
    for (const auto& w : starts) {
        bool zero = true;
        for (double v : w) zero = zero && v == 0.0;
        if (zero) continue;
        const double c = pipeline_cost(task, MergeRule::sigma_linear(w));
        ++res.runs;
        if (!have || c < res.best_cost) {
            have = true;
            res.best_cost = c;
            res.best_param = w;
        }
    }
    if (!have) throw Error(ErrorCode::domain_error, "weight box is the origin");
    res.best_interval = {0.0, 0.0};
    res.certificate = active_normals(task, MergeRule::sigma_linear(res.best_param));
    return res;
}

// ---------------------------------------------------------------- oracles and calculators

std::vector<double> convex_breakpoint_candidates(const ClusteringInstance& inst) {
    if (inst.n > 12) throw Error(ErrorCode::invalid_argument, "8-point enumeration is limited to n <= 12");
    std::vector<double> d;
    for (int i = 0; i < inst.n; ++i)
        for (int j = i + 1; j < inst.n; ++j) d.push_back(inst.d(i, j));
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    // a*d1 + (1-a)*d2 = a*d3 + (1-a)*d4, with d1 <= d2 and d3 <= d4 as (min, max) pairs.
    std::vector<double> out;
    const std::size_t m = d.size();
    for (std::size_t i1 = 0; i1 < m; ++i1)
        for (std::size_t i2 = i1; i2 < m; ++i2)
            for (std::size_t i3 = 0; i3 < m; ++i3)
                for (std::size_t i4 = i3; i4 < m; ++i4) {
                    const double den = (d[i1] - d[i2]) - (d[i3] - d[i4]);
                    if (den == 0.0) continue;
                    const double a = (d[i4] - d[i2]) / den;
                    if (a > 0.0 && a < 1.0) out.push_back(a);
                }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t sample_size(double H, double eps, double delta, double pdim, double c) {
    if (!(H > 0.0) || !(eps > 0.0) || !(delta > 0.0) || !(delta < 1.0) || !(c > 0.0))
        throw Error(ErrorCode::domain_error, "sample size needs H, eps, c > 0 and delta in (0,1)");
    if (!(pdim >= 1.0)) throw Error(ErrorCode::domain_error, "pdim must be at least 1");
    const double r = H / eps;
    const double m = c * r * r * (pdim + std::log(1.0 / delta));
    if (!(m < 1.8e19)) throw Error(ErrorCode::overflow, "sample size exceeds 64-bit range");
    return static_cast<std::uint64_t>(std::ceil(m));
}

PdimBound pdim_table(const std::string& cls, int n, int sigma, int beta) {
    if (n < 2) throw Error(ErrorCode::domain_error, "pdim table needs n >= 2");
    const double lg = std::log2(static_cast<double>(n));
    const std::string note = "order-of-magnitude, constant=1, log base 2";
    if (cls == "beta-restricted" || cls == "restricted") {
        if (beta < 1) throw Error(ErrorCode::domain_error, "beta must be at least 1");
        return {"O(min(beta log n, n))", std::min(beta * lg, static_cast<double>(n)), note};
    }
    const Family f = parse_family(cls);
    switch (f) {
    case Family::minmax_power: return {"Theta(log n)", lg, note};
    case Family::minmax_convex: return {"Theta(log n)", lg, note};
    case Family::average_power: return {"Theta(n)", static_cast<double>(n), note};
    case Family::sigma_linear:
        if (sigma < 2) throw Error(ErrorCode::domain_error, "sigma must be at least 2");
        return {"O(sigma^2 log n)", static_cast<double>(sigma) * sigma * lg, note};
    case Family::sigma_power:
        if (sigma < 2) throw Error(ErrorCode::domain_error, "sigma must be at least 2");
        return {"Theta~(sigma)", std::min(sigma * lg, static_cast<double>(n)), note};
    }
    throw Error(ErrorCode::unknown_family, cls);
}

} // namespace ptune
