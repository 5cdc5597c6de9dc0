#include "ptune/pruning.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ptune/error.hpp"

namespace ptune {

std::string objective_name(const Objective& o) {
    auto pstr = [&] { return std::isinf(o.p) ? std::string("inf") : std::to_string(o.p); };
    switch (o.kind) {
    case ObjectiveKind::phi_p: return "phi(p=" + pstr() + ")";
    case ObjectiveKind::phi_power_sum: return "phi-power-sum(p=" + pstr() + ")";
    case ObjectiveKind::ground_truth: return "ground-truth";
    case ObjectiveKind::kcenter: return "k-center";
    }
    return "?";
}

void check_objective(const Objective& o) {
    if (o.kind == ObjectiveKind::phi_p && !(o.p >= 1.0))
        throw Error(ErrorCode::domain_error, "phi objective needs p >= 1 or p = inf");
    if (o.kind == ObjectiveKind::phi_power_sum && !(o.p > 0.0 && std::isfinite(o.p)))
        throw Error(ErrorCode::domain_error, "power-sum objective needs a finite p > 0");
}

const char* variant_name(AssignVariant v) {
    return v == AssignVariant::fixed_partition ? "fixed" : "voronoi";
}

AssignVariant parse_variant(const std::string& s) {
    if (s == "fixed" || s == "fixed_partition" || s == "fixed-partition") return AssignVariant::fixed_partition;
    if (s == "voronoi" || s == "voronoi_reassign" || s == "voronoi-reassign") return AssignVariant::voronoi_reassign;
    throw Error(ErrorCode::invalid_argument, "unknown assignment variant '" + s + "'");
}

std::vector<int> PruningResult::labels(int n) const {
    std::vector<int> out(n, -1);
    for (std::size_t c = 0; c < clusters.size(); ++c)
        for (int q : clusters[c]) out[q] = static_cast<int>(c);
    return out;
}

namespace {

void check_center(const std::vector<int>& cluster, int center) {
    if (std::find(cluster.begin(), cluster.end(), center) == cluster.end())
        throw Error(ErrorCode::center_outside_cluster,
                    "center " + std::to_string(center) + " is not a member of its cluster");
}

} // namespace

double objective_value(const Objective& obj, const std::vector<std::vector<int>>& clusters,
                       const std::vector<int>& centers, const ClusteringInstance& inst, bool check_membership) {
    check_objective(obj);
    if (clusters.size() != centers.size())
        throw Error(ErrorCode::dimension_mismatch, "clusters and centers differ in length");
    if (obj.kind == ObjectiveKind::ground_truth) {
        if (!inst.ground_truth) throw Error(ErrorCode::missing_ground_truth, "instance has no ground truth labels");
        std::vector<int> lab(inst.n, -1);
        for (std::size_t c = 0; c < clusters.size(); ++c)
            for (int q : clusters[c]) lab[q] = static_cast<int>(c);
        return pair_distance(lab, *inst.ground_truth);
    }
    double total = 0.0;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        if (check_membership) check_center(clusters[c], centers[c]);
        const int ctr = centers[c];
        switch (obj.kind) {
        case ObjectiveKind::phi_p:
            if (std::isinf(obj.p)) {
                double m = 0.0;
                for (int q : clusters[c]) m = std::max(m, inst.d(q, ctr));
                total += m;
            } else {
                double s = 0.0;
                for (int q : clusters[c]) s += std::pow(inst.d(q, ctr), obj.p);
                total += std::pow(s, 1.0 / obj.p);
            }
            break;
        case ObjectiveKind::phi_power_sum:
            for (int q : clusters[c]) total += std::pow(inst.d(q, ctr), obj.p);
            break;
        case ObjectiveKind::kcenter:
            for (int q : clusters[c]) total = std::max(total, inst.d(q, ctr));
            break;
        case ObjectiveKind::ground_truth: break;
        }
    }
    return total;
}

double objective_value(const Objective& obj, const PruningResult& r, const ClusteringInstance& inst) {
    return objective_value(obj, r.clusters, r.centers, inst, r.variant == AssignVariant::fixed_partition);
}

double pruning_score(double p, const std::vector<std::vector<int>>& clusters, const std::vector<int>& centers,
                     const ClusteringInstance& inst) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t c = 0; c < clusters.size(); ++c)
            for (int q : clusters[c]) m = std::max(m, inst.d(q, centers[c]));
        return m;
    }
    double total = 0.0;
    for (std::size_t c = 0; c < clusters.size(); ++c)
        for (int q : clusters[c]) total += std::pow(inst.d(q, centers[c]), p);
    return std::pow(total, 1.0 / p);
}

namespace {

struct Dp {
    const ClusterTree& tree;
    const ClusteringInstance& inst;
    int k;
    double p;
    bool inf;
    std::vector<double> pw;               // d^p, or d itself at p = inf
    std::vector<std::vector<int>> leaves; // per node, ascending
    std::vector<int> center;
    std::vector<double> ccost;
    std::vector<std::vector<double>> F;                // finite p: best sum of powers per j
    std::vector<std::vector<std::vector<double>>> G;   // p = inf: best descending radius list per j
    std::vector<std::vector<int>> split;               // left share of the best j-pruning

    Dp(const ClusterTree& t, const ClusteringInstance& in, int kk, double pp)
        : tree(t), inst(in), k(kk), p(pp), inf(std::isinf(pp)) {
        const int n = inst.n;
        pw.resize(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double d = inst.d(i, j);
                pw[static_cast<std::size_t>(i) * n + j] = inf ? d : (d == 0.0 ? 0.0 : std::pow(d, p));
            }
    }

    double P(int q, int c) const { return pw[static_cast<std::size_t>(q) * inst.n + c]; }

    int kmax(int v) const { return std::min(k, static_cast<int>(leaves[v].size())); }

    // Distances of the chosen j-pruning of v as ExpSum terms with the given sign.
    void entry_terms(int v, int j, double sign, std::vector<ExpTerm>& out) const {
        if (j == 1) {
            for (int q : leaves[v]) {
                const double d = inst.d(q, center[v]);
                if (d > 0.0) out.push_back({sign, d});
            }
            return;
        }
        const int i = split[v][j];
        entry_terms(tree.nodes[v].left, i, sign, out);
        entry_terms(tree.nodes[v].right, j - i, sign, out);
    }

    void run(std::vector<ExpSum>* cmp) {
        const int N = static_cast<int>(tree.nodes.size());
        leaves.resize(N);
        center.assign(N, -1);
        ccost.assign(N, 0.0);
        split.resize(N);
        if (inf)
            G.resize(N);
        else
            F.resize(N);
        for (int v = 0; v < N; ++v) {
            const TreeNode& nd = tree.nodes[v];
            if (nd.left < 0) {
                leaves[v] = {v};
            } else {
                const auto& a = leaves[nd.left];
                const auto& b = leaves[nd.right];
                leaves[v].reserve(a.size() + b.size());
                std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(leaves[v]));
            }
            choose_center(v, cmp);
            const int km = kmax(v);
            split[v].assign(km + 1, 0);
            if (inf) {
                G[v].assign(km + 1, {});
                G[v][1] = {ccost[v]};
            } else {
                F[v].assign(km + 1, kInf);
                F[v][1] = ccost[v];
            }
            if (nd.left < 0) continue;
            const int l = nd.left, r = nd.right, kl = kmax(l), kr = kmax(r);
            for (int j = 2; j <= km; ++j) {
                const int ilo = std::max(1, j - kr), ihi = std::min(j - 1, kl);
                int best = -1;
                if (inf) {
                    std::vector<double> bestv;
                    for (int i = ilo; i <= ihi; ++i) {
                        std::vector<double> cand;
                        std::merge(G[l][i].begin(), G[l][i].end(), G[r][j - i].begin(), G[r][j - i].end(),
                                   std::back_inserter(cand), std::greater<>());
                        if (best < 0 || cand < bestv) {
                            best = i;
                            bestv = std::move(cand);
                        }
                    }
                    G[v][j] = std::move(bestv);
                } else {
                    double bestv = kInf;
                    for (int i = ilo; i <= ihi; ++i) {
                        const double cand = F[l][i] + F[r][j - i];
                        if (best < 0 || cand < bestv) {
                            best = i;
                            bestv = cand;
                        }
                    }
                    F[v][j] = bestv;
                }
                split[v][j] = best;
                if (cmp && !inf) {
                    for (int i = ilo; i <= ihi; ++i) {
                        if (i == best) continue;
                        std::vector<ExpTerm> t;
                        entry_terms(l, i, 1.0, t);
                        entry_terms(r, j - i, 1.0, t);
                        entry_terms(v, j, -1.0, t);
                        cmp->push_back(ExpSum(std::move(t)));
                    }
                }
            }
        }
    }

    void choose_center(int v, std::vector<ExpSum>* cmp) {
        const auto& L = leaves[v];
        double best = kInf;
        int arg = -1;
        for (int c : L) {
            double s = 0.0;
            for (int q : L) s = inf ? std::max(s, P(q, c)) : s + P(q, c);
            if (arg < 0 || s < best) {
                best = s;
                arg = c;
            }
        }
        center[v] = arg;
        ccost[v] = best;
        if (!cmp || inf || L.size() < 2) return;
        for (int c : L) {
            if (c == arg) continue;
            std::vector<ExpTerm> t;
            for (int q : L) {
                const double dc = inst.d(q, c), da = inst.d(q, arg);
                if (dc > 0.0) t.push_back({1.0, dc});
                if (da > 0.0) t.push_back({-1.0, da});
            }
            cmp->push_back(ExpSum(std::move(t)));
        }
    }

    void collect(int v, int j, std::vector<int>& out) const {
        if (j == 1) {
            out.push_back(v);
            return;
        }
        const int i = split[v][j];
        collect(tree.nodes[v].left, i, out);
        collect(tree.nodes[v].right, j - i, out);
    }
};

} // namespace

PruningResult best_k_pruning(const ClusterTree& tree, int k, const PruningRule& rule, const ClusteringInstance& inst,
                             const PruneOptions& opt) {
    if (tree.n != inst.n) throw Error(ErrorCode::dimension_mismatch, "tree and instance sizes differ");
    if (k < 1) throw Error(ErrorCode::invalid_argument, "k must be at least 1");
    if (k > inst.n)
        throw Error(ErrorCode::k_too_large,
                    "k = " + std::to_string(k) + " exceeds the point count " + std::to_string(inst.n));
    if (!(rule.p > 0.0)) throw Error(ErrorCode::domain_error, "pruning exponent p must be positive");

    Dp dp(tree, inst, k, rule.p);
    dp.run(opt.comparisons);

    PruningResult res;
    res.variant = opt.variant;
    dp.collect(tree.root(), k, res.nodes);
    std::sort(res.nodes.begin(), res.nodes.end(),
              [&](int a, int b) { return tree.nodes[a].min_leaf < tree.nodes[b].min_leaf; });
    for (int v : res.nodes) {
        res.clusters.push_back(dp.leaves[v]);
        res.centers.push_back(dp.center[v]);
    }
    if (opt.variant == AssignVariant::voronoi_reassign) {
        std::vector<std::vector<int>> re(res.centers.size());
        for (int q = 0; q < inst.n; ++q) {
            int arg = 0;
            for (std::size_t c = 1; c < res.centers.size(); ++c) {
                const double dc = inst.d(q, res.centers[c]), da = inst.d(q, res.centers[arg]);
                if (dc < da || (dc == da && res.centers[c] < res.centers[arg])) arg = static_cast<int>(c);
            }
            re[arg].push_back(q);
        }
        res.clusters = std::move(re);
    }
    res.score = pruning_score(rule.p, res.clusters, res.centers, inst);
    return res;
}

double pair_distance(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::dimension_mismatch, "labelings differ in length");
    const std::size_t n = a.size();
    if (n < 2) return 0.0;
    // Pairs split by exactly one labeling, from the contingency table:
    // same-in-a + same-in-b - 2 * same-in-both.
    std::map<int, long long> ca, cb;
    std::map<std::pair<int, int>, long long> cab;
    for (std::size_t i = 0; i < n; ++i) {
        ++ca[a[i]];
        ++cb[b[i]];
        ++cab[{a[i], b[i]}];
    }
    auto pairs = [](long long c) { return c * (c - 1) / 2; };
    long long bad = 0;
    for (const auto& kv : ca) bad += pairs(kv.second);
    for (const auto& kv : cb) bad += pairs(kv.second);
    for (const auto& kv : cab) bad -= 2 * pairs(kv.second);
    return static_cast<double>(bad) / (static_cast<double>(n) * (n - 1) / 2.0);
}

double ground_truth_distance(const PruningResult& r, const ClusteringInstance& inst) {
    if (!inst.ground_truth) throw Error(ErrorCode::missing_ground_truth, "instance has no ground truth labels");
    return pair_distance(r.labels(inst.n), *inst.ground_truth);
}

} // namespace ptune
