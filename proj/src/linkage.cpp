#include "ptune/linkage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ptune/error.hpp"

namespace ptune {

namespace {

double sign_of(double a) { return a < 0.0 ? -1.0 : 1.0; }

PairSummary merge_summaries(const PairSummary& x, const PairSummary& y) {
    PairSummary out;
    out.count = x.count + y.count;
    out.hist.reserve(x.hist.size() + y.hist.size());
    std::size_t i = 0, j = 0;
    while (i < x.hist.size() || j < y.hist.size()) {
        if (j == y.hist.size() || (i < x.hist.size() && x.hist[i].first < y.hist[j].first)) {
            out.hist.push_back(x.hist[i++]);
        } else if (i == x.hist.size() || y.hist[j].first < x.hist[i].first) {
            out.hist.push_back(y.hist[j++]);
        } else {
            out.hist.emplace_back(x.hist[i].first, x.hist[i].second + y.hist[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

PairSummary summary_of(const std::vector<int>& A, const std::vector<int>& B, const ClusteringInstance& inst) {
    std::vector<double> v;
    v.reserve(A.size() * B.size());
    for (int a : A)
        for (int b : B) v.push_back(inst.d(a, b));
    std::sort(v.begin(), v.end());
    PairSummary s;
    s.count = static_cast<int>(v.size());
    for (double x : v) {
        if (!s.hist.empty() && s.hist.back().first == x)
            ++s.hist.back().second;
        else
            s.hist.emplace_back(x, 1);
    }
    return s;
}

// log of sum_i w_i exp(t_i), stable for large |t_i|.
double log_sum_exp(const std::vector<double>& t, const std::vector<double>& w) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : t) m = std::max(m, x);
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) s += w[i] * std::exp(t[i] - m);
    return m + std::log(s);
}

// Power mean style value (sum_i w_i v_i^a / total)^(1/a) without overflow.
double power_value(const std::vector<double>& vals, const std::vector<double>& w, double total, double a) {
    if (a == std::numeric_limits<double>::infinity()) return *std::max_element(vals.begin(), vals.end());
    if (a == -std::numeric_limits<double>::infinity()) return *std::min_element(vals.begin(), vals.end());
    if (a == 0.0) {
        double s = 0.0;
        for (std::size_t i = 0; i < vals.size(); ++i) s += w[i] * std::log(vals[i]);
        return std::exp(s / total);
    }
    std::vector<double> t(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) t[i] = a * std::log(vals[i]);
    return std::exp((log_sum_exp(t, w) - std::log(total)) / a);
}

} // namespace

void check_rule(const MergeRule& r) {
    if (std::isnan(r.alpha)) throw Error(ErrorCode::domain_error, "alpha is NaN");
    switch (r.family) {
    case Family::minmax_convex:
        if (!(r.alpha >= 0.0 && r.alpha <= 1.0)) throw Error(ErrorCode::domain_error, "convex alpha must lie in [0,1]");
        break;
    case Family::minmax_power:
        if (r.alpha == 0.0) throw Error(ErrorCode::domain_error, "min-max power family excludes alpha = 0");
        break;
    case Family::average_power: break;
    case Family::sigma_linear:
        if (r.sigma < 2 || static_cast<int>(r.weights.size()) != r.sigma)
            throw Error(ErrorCode::domain_error, "sigma-linear needs sigma >= 2 weights");
        for (double w : r.weights)
            if (!std::isfinite(w)) throw Error(ErrorCode::domain_error, "sigma-linear weights must be finite");
        break;
    case Family::sigma_power:
        if (r.sigma < 2) throw Error(ErrorCode::domain_error, "sigma-power needs sigma >= 2");
        break;
    }
}

std::vector<int> ClusterTree::leaves(int node) const {
    std::vector<int> out;
    std::vector<int> stack{node};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        if (nodes[v].left < 0)
            out.push_back(v);
        else {
            stack.push_back(nodes[v].right);
            stack.push_back(nodes[v].left);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<int, int>> ClusterTree::merges() const {
    std::vector<std::pair<int, int>> out;
    for (int v = n; v < static_cast<int>(nodes.size()); ++v) out.emplace_back(nodes[v].left, nodes[v].right);
    return out;
}

std::vector<std::pair<int, int>> ClusterTree::signature() const {
    std::vector<std::pair<int, int>> out;
    for (int v = n; v < static_cast<int>(nodes.size()); ++v)
        out.emplace_back(nodes[nodes[v].left].min_leaf, nodes[nodes[v].right].min_leaf);
    return out;
}

bool same_merge_sequence(const ClusterTree& a, const ClusterTree& b) {
    return a.n == b.n && a.signature() == b.signature();
}

double PairSummary::order_stat(long long k) const {
    long long seen = 0;
    for (const auto& [v, c] : hist) {
        seen += c;
        if (k < seen) return v;
    }
    return hist.back().first;
}

std::vector<double> select_sigma(const PairSummary& s, int sigma) {
    std::vector<double> out(sigma);
    const long long m = s.count;
    for (int i = 0; i < sigma; ++i) {
        // round(i * (m-1) / (sigma-1)), half up
        const long long num = 2LL * i * (m - 1) + (sigma - 1);
        const long long idx = num / (2LL * (sigma - 1));
        out[i] = s.order_stat(idx);
    }
    return out;
}

double rule_key(const MergeRule& r, const PairSummary& s) {
    const double a = r.alpha;
    const double inf = std::numeric_limits<double>::infinity();
    switch (r.family) {
    case Family::minmax_convex: return a * s.min() + (1.0 - a) * s.max();
    case Family::minmax_power:
        if (a == inf) return s.max();
        if (a == -inf) return s.min();
        return sign_of(a) * (std::pow(s.min(), a) + std::pow(s.max(), a));
    case Family::average_power: {
        if (a == inf) return s.max();
        if (a == -inf) return s.min();
        double acc = 0.0;
        if (a == 0.0) {
            for (const auto& [v, c] : s.hist) acc += c * std::log(v);
            return acc / s.count;
        }
        for (const auto& [v, c] : s.hist) acc += c * std::pow(v, a);
        return sign_of(a) * acc / s.count;
    }
    case Family::sigma_linear: {
        const auto sel = select_sigma(s, r.sigma);
        double acc = 0.0;
        for (int i = 0; i < r.sigma; ++i) acc += r.weights[i] * sel[i];
        return acc;
    }
    case Family::sigma_power: {
        if (a == inf) return s.max();
        if (a == -inf) return s.min();
        const auto sel = select_sigma(s, r.sigma);
        double acc = 0.0;
        if (a == 0.0) {
            for (double v : sel) acc += std::log(v);
            return acc;
        }
        for (double v : sel) acc += std::pow(v, a);
        return sign_of(a) * acc;
    }
    }
    return 0.0;
}

double rule_value(const MergeRule& r, const PairSummary& s) {
    const double a = r.alpha;
    switch (r.family) {
    case Family::minmax_convex:
    case Family::sigma_linear: return rule_key(r, s);
    case Family::minmax_power: {
        // (min^a + max^a)^(1/a): unnormalized power sum of the two extremes.
        if (std::isinf(a)) return a > 0 ? s.max() : s.min();
        return power_value({s.min(), s.max()}, {1.0, 1.0}, 1.0, a);
    }
    case Family::average_power: {
        std::vector<double> v, w;
        for (const auto& [x, c] : s.hist) {
            v.push_back(x);
            w.push_back(c);
        }
        return power_value(v, w, s.count, a);
    }
    case Family::sigma_power: {
        if (std::isinf(a)) return a > 0 ? s.max() : s.min();
        const auto sel = select_sigma(s, r.sigma);
        if (a == 0.0) {
            double acc = 0.0;
            for (double v : sel) acc += std::log(v);
            return acc;
        }
        return power_value(sel, std::vector<double>(sel.size(), 1.0), 1.0, a);
    }
    }
    return 0.0;
}

double rule_value(const MergeRule& rule, const std::vector<int>& A, const std::vector<int>& B,
                  const ClusteringInstance& inst) {
    check_rule(rule);
    return rule_value(rule, summary_of(A, B, inst));
}

ClusterTree build_tree(const ClusteringInstance& inst, const MergeRule& rule, const BuildOptions& opt) {
    check_rule(rule);
    const int n = inst.n;
    ClusterTree tree;
    tree.n = n;
    tree.nodes.resize(n);
    for (int i = 0; i < n; ++i) tree.nodes[i].min_leaf = i;
    if (n <= 1) return tree;

    auto idx = [n](int i, int j) {
        if (i > j) std::swap(i, j);
        return static_cast<std::size_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
    };
    const std::size_t npairs = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::vector<PairSummary> pairs(npairs);
    std::vector<double> key(npairs);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            PairSummary& s = pairs[idx(i, j)];
            s.hist = {{inst.d(i, j), 1}};
            s.count = 1;
            key[idx(i, j)] = rule_key(rule, s);
        }
    std::vector<int> slot_node(n);
    std::iota(slot_node.begin(), slot_node.end(), 0);
    std::vector<int> active(n);
    std::iota(active.begin(), active.end(), 0);

    for (int step = 0; step < n - 1; ++step) {
        const int k = static_cast<int>(active.size());
        double best = std::numeric_limits<double>::infinity();
        bool any = false;
        for (int x = 0; x < k; ++x)
            for (int y = x + 1; y < k; ++y) {
                const double v = key[idx(active[x], active[y])];
                if (!any || v < best) {
                    best = v;
                    any = true;
                }
            }
        const double thr = std::isinf(best) ? best : best + opt.tie_tol * std::abs(best);
        int wa = -1, wb = -1;
        std::pair<int, int> wlex{std::numeric_limits<int>::max(), std::numeric_limits<int>::max()};
        for (int x = 0; x < k; ++x)
            for (int y = x + 1; y < k; ++y) {
                const int sx = active[x], sy = active[y];
                if (!(key[idx(sx, sy)] <= thr)) continue;
                int lx = tree.nodes[slot_node[sx]].min_leaf, ly = tree.nodes[slot_node[sy]].min_leaf;
                std::pair<int, int> lex = lx < ly ? std::pair{lx, ly} : std::pair{ly, lx};
                if (lex < wlex) {
                    wlex = lex;
                    wa = lx < ly ? sx : sy;
                    wb = lx < ly ? sy : sx;
                }
            }
        const std::size_t widx = idx(wa, wb);
        if (opt.observer) {
            opt.observer->on_step(step);
            for (int x = 0; x < k; ++x)
                for (int y = x + 1; y < k; ++y) {
                    const std::size_t o = idx(active[x], active[y]);
                    if (o == widx) continue;
                    opt.observer->on_compare(step, slot_node[wa], slot_node[wb], pairs[widx], slot_node[active[x]],
                                             slot_node[active[y]], pairs[o]);
                }
        }
        TreeNode node;
        node.left = slot_node[wa];
        node.right = slot_node[wb];
        node.merge_order = step;
        node.merge_value = rule_value(rule, pairs[widx]);
        node.min_leaf = tree.nodes[node.left].min_leaf;
        node.size = tree.nodes[node.left].size + tree.nodes[node.right].size;
        tree.nodes.push_back(node);

        // The merged cluster keeps slot wa; slot wb retires.
        const int keep = wa, drop = wb;
        slot_node[keep] = n + step;
        for (int c : active) {
            if (c == keep || c == drop) continue;
            PairSummary merged = merge_summaries(pairs[idx(keep, c)], pairs[idx(drop, c)]);
            key[idx(keep, c)] = rule_key(rule, merged);
            pairs[idx(keep, c)] = std::move(merged);
        }
        active.erase(std::find(active.begin(), active.end(), drop));
    }
    return tree;
}

Comparison make_comparison(const MergeRule& r, const PairSummary& w, const PairSummary& o) {
    Comparison c;
    const double s = sign_of(r.alpha);
    switch (r.family) {
    case Family::minmax_convex:
        c.affine = true;
        c.c0 = o.max() - w.max();
        c.c1 = (o.min() - o.max()) - (w.min() - w.max());
        break;
    case Family::minmax_power:
        c.expsum = ExpSum({{s, o.min()}, {s, o.max()}, {-s, w.min()}, {-s, w.max()}});
        break;
    case Family::average_power: {
        std::vector<ExpTerm> t;
        for (const auto& [v, k] : o.hist) t.push_back({s * k / o.count, v});
        for (const auto& [v, k] : w.hist) t.push_back({-s * k / w.count, v});
        c.expsum = ExpSum(std::move(t));
        break;
    }
    case Family::sigma_power: {
        std::vector<ExpTerm> t;
        for (double v : select_sigma(o, r.sigma)) t.push_back({s, v});
        for (double v : select_sigma(w, r.sigma)) t.push_back({-s, v});
        c.expsum = ExpSum(std::move(t));
        break;
    }
    case Family::sigma_linear: {
        const auto so = select_sigma(o, r.sigma), sw = select_sigma(w, r.sigma);
        c.affine = true;
        c.normal.resize(r.sigma);
        for (int i = 0; i < r.sigma; ++i) {
            c.normal[i] = so[i] - sw[i];
            c.c0 += c.normal[i] * r.weights[i];
        }
        break;
    }
    }
    return c;
}

namespace {

class Recorder : public MergeObserver {
public:
    Recorder(const MergeRule& r, std::vector<Comparison>& out) : rule_(r), out_(out) {}
    void on_compare(int step, int wa, int wb, const PairSummary& w, int oa, int ob, const PairSummary& o) override {
        Comparison c = make_comparison(rule_, w, o);
        c.step = step;
        c.winner = {wa, wb};
        c.other = {oa, ob};
        out_.push_back(std::move(c));
    }

private:
    const MergeRule& rule_;
    std::vector<Comparison>& out_;
};

} // namespace

RecordedRun record_comparisons(const ClusteringInstance& inst, const MergeRule& rule) {
    RecordedRun run;
    Recorder rec(rule, run.comparisons);
    BuildOptions opt;
    opt.observer = &rec;
    run.tree = build_tree(inst, rule, opt);
    return run;
}

} // namespace ptune
