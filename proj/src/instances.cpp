#include "ptune/instances.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ptune/error.hpp"
#include "ptune/rng.hpp"

namespace ptune {

using json = nlohmann::json;

namespace {

constexpr double kMetricTol = 1e-12;
constexpr const char* kSchema = "partition-tuner/1";

double power_mean2(double x, double y, double a) {
    return std::pow((std::pow(x, a) + std::pow(y, a)) / 2.0, 1.0 / a);
}

} // namespace

std::string fixture_kind_name(FixtureKind k) {
    switch (k) {
    case FixtureKind::oscillation: return "oscillation";
    case FixtureKind::two_gadget: return "two_gadget";
    case FixtureKind::general_lb: return "general_lb";
    case FixtureKind::k4_shatter: return "k4_shatter";
    }
    return "unknown";
}

MaxQPInstance maxcut_instance(int n, std::vector<double> weights) {
    if (n <= 0 || weights.size() != static_cast<std::size_t>(n) * n)
        throw Error(ErrorCode::dimension_mismatch, "weight matrix must be n x n");
    MaxQPInstance inst;
    inst.n = n;
    inst.origin = MaxQPOrigin::maxcut;
    inst.matrix.assign(weights.size(), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) inst.matrix[static_cast<std::size_t>(i) * n + j] = -weights[static_cast<std::size_t>(i) * n + j] / 4.0;
    inst.weights = std::move(weights);
    return inst;
}

ValidationReport validate(const ClusteringInstance& inst) {
    ValidationReport r;
    const int n = inst.n;
    std::vector<double> vals;
    for (int i = 0; i < n; ++i) {
        if (inst.d(i, i) != 0.0) r.zero_diagonal = false;
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(inst.d(i, j) - inst.d(j, i)) > kMetricTol) r.is_symmetric = false;
            if (!(inst.d(i, j) > 0.0)) r.positive_off_diagonal = false;
            vals.push_back(inst.d(i, j));
        }
    }
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (i == k) continue;
            const double dik = inst.d(i, k);
            for (int j = 0; j < n; ++j) {
                if (j == i || j == k) continue;
                worst = std::max(worst, dik - inst.d(i, j) - inst.d(j, k));
            }
        }
    r.worst_triangle_violation = worst;
    r.is_metric = r.is_symmetric && r.zero_diagonal && r.positive_off_diagonal && worst <= kMetricTol;

    std::sort(vals.begin(), vals.end());
    int count = 0;
    double last = -std::numeric_limits<double>::infinity();
    for (double v : vals) {
        if (v - last > kMetricTol) {
            ++count;
            last = v;
        }
    }
    r.distinct_distance_count = count;
    return r;
}

ClusteringInstance complete_metric_max(int n, const std::vector<PartialEdge>& edges) {
    if (n <= 0) throw Error(ErrorCode::invalid_argument, "n must be positive");
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> spec(static_cast<std::size_t>(n) * n, -1.0);
    auto at = [n](std::vector<double>& m, int i, int j) -> double& { return m[static_cast<std::size_t>(i) * n + j]; };
    for (const auto& e : edges) {
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v)
            throw Error(ErrorCode::invalid_argument, "edge endpoint out of range");
        if (!(e.d > 0.0)) throw Error(ErrorCode::invalid_argument, "specified distances must be positive");
        double& s = at(spec, e.u, e.v);
        if (s >= 0.0 && s != e.d)
            throw Error(ErrorCode::inconsistent_metric, "edge specified twice with different values");
        s = e.d;
        at(spec, e.v, e.u) = e.d;
    }
    std::vector<double> sp(spec.size(), inf);
    for (int i = 0; i < n; ++i) {
        at(sp, i, i) = 0.0;
        for (int j = 0; j < n; ++j)
            if (at(spec, i, j) >= 0.0) at(sp, i, j) = at(spec, i, j);
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            const double dik = at(sp, i, k);
            if (dik == inf) continue;
            for (int j = 0; j < n; ++j) {
                const double via = dik + at(sp, k, j);
                if (via < at(sp, i, j)) at(sp, i, j) = via;
            }
        }
    ClusteringInstance out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double s = at(spec, i, j);
            const double p = at(sp, i, j);
            if (p == inf) {
                std::ostringstream os;
                os << "no path between points " << i << " and " << j;
                throw Error(ErrorCode::disconnected, os.str());
            }
            if (s >= 0.0) {
                if (p < s - kMetricTol) {
                    std::ostringstream os;
                    os << "edge (" << i << "," << j << ")=" << s << " exceeds shortest path " << p;
                    throw Error(ErrorCode::inconsistent_metric, os.str());
                }
                out.dist[static_cast<std::size_t>(i) * n + j] = s;
            } else {
                out.dist[static_cast<std::size_t>(i) * n + j] = p;
            }
        }
    // Floyd-Warshall relaxes (i,j) and (j,i) along different summation orders.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.set(i, j, std::min(out.d(i, j), out.d(j, i)));
    return out;
}

Fixture gen_oscillation(int n, const std::vector<double>& alphas, OscillationFamily family, double p) {
    const int np = static_cast<int>(alphas.size());
    if (n < 8 || (n - 2) % 6 != 0)
        throw Error(ErrorCode::invalid_argument, "oscillation needs n = 2 + 6*groups");
    if (np > n / 7) throw Error(ErrorCode::invalid_argument, "too many alphas for n");
    if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::invalid_argument, "p must be finite and >= 1");
    const double upper = family == OscillationFamily::convex_minmax ? 0.7 : std::numeric_limits<double>::infinity();
    for (int i = 0; i < np; ++i) {
        if (!(alphas[i] > 0.0) || !(alphas[i] < upper) || (i > 0 && !(alphas[i] > alphas[i - 1])))
            throw Error(ErrorCode::bad_alpha_range, "alphas must be increasing inside the family range");
    }
    const int groups = (n - 2) / 6;
    const int a = 0, ap = 1;
    ClusteringInstance inst(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) inst.set(i, j, 1.5);
    inst.set(a, ap, 2.0);

    const double far = std::pow(2.0 * std::pow(1.46, p) - std::pow(1.47, p), 1.0 / p);
    const bool convex = family == OscillationFamily::convex_minmax;
    std::vector<int> gt(n, 0);
    gt[ap] = 1;
    for (int g = 0; g < groups; ++g) {
        const int base = 2 + 6 * g;
        const int x = base, y = base + 1, z = base + 2, xp = base + 3, yp = base + 4, zp = base + 5;
        double dz;
        if (g < np)
            dz = convex ? 1.4 - 0.1 * alphas[g] : power_mean2(1.3, 1.4, alphas[g]);
        else
            dz = convex ? 1.4 - 0.1 * 0.7 : 1.4;
        inst.set(x, y, 1.0);
        inst.set(xp, yp, 1.0);
        inst.set(x, z, 1.3);
        inst.set(y, z, 1.4);
        inst.set(xp, z, dz);
        inst.set(yp, z, dz);
        for (int u : {x, y})
            for (int v : {xp, yp}) inst.set(u, v, 2.0);
        for (int u : {x, y, xp, yp}) inst.set(u, zp, 1.41);
        inst.set(z, zp, 2.0);
        inst.set(a, x, 1.42);
        inst.set(a, y, 1.42);
        inst.set(ap, xp, 1.42);
        inst.set(ap, yp, 1.42);
        inst.set(a, xp, 2.0);
        inst.set(a, yp, 2.0);
        inst.set(ap, x, 2.0);
        inst.set(ap, y, 2.0);
        // The anchor distances of the z's reached at small alpha cost 1.46; the other
        // pair alternates between 1.47 and `far` so that each flip moves the cost by
        // +-2(1.47^p - 1.46^p).
        const double flip = g >= np ? 1.46 : (g % 2 == 0 ? 1.47 : far);
        // For the convex family z joins A' below alpha_i; for the power family it joins A.
        const int z_small_a = convex ? zp : z;   // point in A's cluster at small alpha
        const int z_small_ap = convex ? z : zp;  // point in A''s cluster at small alpha
        inst.set(a, z_small_a, 1.46);
        inst.set(ap, z_small_ap, 1.46);
        inst.set(a, z_small_ap, flip);
        inst.set(ap, z_small_a, flip);
        for (int u : {x, y}) gt[u] = 0;
        for (int u : {xp, yp}) gt[u] = 1;
        // Ground truth from the construction note: z_even, z'_odd with A (1-based indices).
        const int idx = g + 1;
        gt[z] = idx % 2 == 0 ? 0 : 1;
        gt[zp] = idx % 2 == 0 ? 1 : 0;
    }
    inst.ground_truth = gt;
    inst.k_hint = 2;

    Fixture f;
    f.instance = std::move(inst);
    FixtureSpec& s = f.spec;
    s.kind = FixtureKind::oscillation;
    s.family = convex ? Family::minmax_convex : Family::minmax_power;
    s.alphas = alphas;
    s.p = p;
    s.r_low = groups * (4.0 * std::pow(1.42, p) + 2.0 * std::pow(1.46, p));
    s.r_high = s.r_low + 2.0 * (std::pow(1.47, p) - std::pow(1.46, p));
    s.expected_witness = (s.r_low + s.r_high) / 2.0;
    for (int i = 0; i <= np; ++i) s.expected_profile.push_back(i % 2 == 0 ? s.r_low : s.r_high);
    s.expected_breakpoints = alphas;
    return f;
}

Fixture gen_two_gadget(double alpha_star, Family family, double p) {
    double dstar;
    if (family == Family::minmax_convex) {
        if (!(alpha_star >= 0.0 && alpha_star <= 1.0))
            throw Error(ErrorCode::bad_alpha_range, "convex alpha* must lie in [0,1]");
        dstar = 1.2 - 0.1 * alpha_star;
    } else if (family == Family::minmax_power || family == Family::average_power) {
        if (!std::isfinite(alpha_star) || alpha_star == 0.0)
            throw Error(ErrorCode::bad_alpha_range, "power alpha* must be a nonzero real");
        dstar = power_mean2(1.1, 1.2, alpha_star);
    } else {
        throw Error(ErrorCode::bad_alpha_range, "two-gadget supports the min-max and average families");
    }
    if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorCode::invalid_argument, "p must be finite and >= 1");

    constexpr int kGadget = 105;
    constexpr int kSet = 25;
    std::vector<PartialEdge> e;
    auto add = [&e](int u, int v, double d) { e.push_back({u, v, d}); };
    std::vector<int> gt(2 * kGadget);
    for (int g = 0; g < 2; ++g) {
        const int o = g * kGadget;
        const int a = o, b = o + 1, c = o + 2, x = o + 3, y = o + 4;
        auto set_a = [&](int i) { return o + 5 + i; };
        auto set_b = [&](int i) { return o + 5 + kSet + i; };
        auto set_x = [&](int i) { return o + 5 + 2 * kSet + i; };
        auto set_y = [&](int i) { return o + 5 + 3 * kSet + i; };
        const int xs = set_x(0), ys = set_y(0);
        add(a, b, 1.0);
        add(x, y, 1.0);
        if (g == 0) {
            add(a, c, 1.1);
            add(b, c, 1.2);
            add(x, c, dstar);
            add(y, c, dstar);
        } else {
            add(x, c, 1.1);
            add(y, c, 1.2);
            add(a, c, dstar);
            add(b, c, dstar);
        }
        for (int i = 0; i < kSet; ++i) {
            for (int u : {set_a(i), set_b(i)}) {
                add(c, u, 1.51);
                add(a, u, 1.6);
                add(b, u, 1.6);
            }
            for (int u : {set_x(i), set_y(i)}) {
                add(x, u, u == xs ? 1.51 : 1.6);
                add(y, u, u == ys ? 1.51 : 1.6);
            }
            for (int j = 0; j < kSet; ++j) {
                add(set_a(i), set_b(j), 1.6);
                add(set_x(i), set_y(j), 1.6);
                if (j > i) {
                    add(set_a(i), set_a(j), 1.5);
                    add(set_b(i), set_b(j), 1.5);
                    add(set_x(i), set_x(j), 1.5);
                    add(set_y(i), set_y(j), 1.5);
                }
            }
        }
        for (int i = o; i < o + kGadget; ++i) gt[i] = 2 * g;
        for (int u : {x, y}) gt[u] = 2 * g + 1;
        for (int i = 0; i < kSet; ++i) {
            gt[set_x(i)] = 2 * g + 1;
            gt[set_y(i)] = 2 * g + 1;
        }
    }
    // Gadgets are joined by one long edge so that the maximal completion is finite.
    add(0, kGadget, 10.0);

    Fixture f;
    f.instance = complete_metric_max(2 * kGadget, e);
    f.instance.k_hint = 4;
    f.instance.ground_truth = gt;
    FixtureSpec& s = f.spec;
    s.kind = FixtureKind::two_gadget;
    s.family = family;
    s.alpha_star = alpha_star;
    s.alphas = {alpha_star};
    s.p = p;
    const double good = 50.0 * std::pow(1.51, p) + std::pow(1.1, p) + std::pow(1.2, p) + 24.0 * std::pow(1.5, p) +
                        std::pow(1.51, p) + 26.0 * std::pow(1.6, p);
    // In the other branch c joins X' and the big cluster pays an arbitrary A point as center.
    const double c_to_xstar = f.instance.d(2, 5 + 2 * kSet);
    const double bad = 48.0 * std::pow(1.5, p) + std::pow(1.51, p) + 53.0 * std::pow(1.6, p) + std::pow(c_to_xstar, p);
    // Gadget 2 mirrors gadget 1 with c at dstar from a and b instead of 1.1 and 1.2.
    const double good2 = good - std::pow(1.1, p) - std::pow(1.2, p) + 2.0 * std::pow(dstar, p);
    s.r_low = good + good2;
    s.r_high = good + bad;
    s.expected_witness = (s.r_low + s.r_high) / 2.0;
    s.expected_profile = {s.r_low};
    s.expected_breakpoints = {alpha_star};
    return f;
}

Fixture gen_general_lb(int rounds, const std::optional<std::vector<double>>& offsets) {
    if (rounds < 1 || rounds > 12) throw Error(ErrorCode::invalid_argument, "rounds must be in [1,12]");
    std::vector<double> off;
    if (offsets) {
        off = *offsets;
        if (static_cast<int>(off.size()) < rounds - 1)
            throw Error(ErrorCode::invalid_argument, "need rounds-1 offsets");
        for (std::size_t j = 0; j < off.size(); ++j) {
            if (!(off[j] > 0.0) || (j > 0 && !(off[j] < off[j - 1])))
                throw Error(ErrorCode::offsets_not_decreasing, "offsets must be positive and strictly decreasing");
        }
    } else {
        for (int j = 1; j < rounds; ++j) off.push_back(std::pow(10.0, -2.0 * (j + 1)));
    }
    const int n = 4 + 2 * rounds;
    const int pa = 0, qa = 1, pb = 2, qb = 3;
    ClusteringInstance inst(n);
    inst.set(pa, qa, 1.0);
    inst.set(pb, qb, 1.0);
    for (int u : {pa, qa})
        for (int v : {pb, qb}) inst.set(u, v, 2.0);
    const double mid = std::sqrt((1.1 * 1.1 + 1.2 * 1.2) / 2.0);
    for (int i = 0; i < rounds; ++i) {
        const int pi = 4 + 2 * i, qi = pi + 1;
        for (int u : {pi, qi}) {
            inst.set(pa, u, 1.1);
            inst.set(qa, u, 1.2);
            inst.set(pb, u, mid);
            inst.set(qb, u, mid);
        }
        inst.set(pi, qi, 2.0);
        for (int j = 0; j < i; ++j) {
            const int pj = 4 + 2 * j, qj = pj + 1;
            for (int u : {pi, qi}) {
                inst.set(pj, u, 1.5 + off[j]);
                inst.set(qj, u, 1.5 - off[j]);
            }
        }
    }
    inst.k_hint = 2;
    Fixture f;
    f.instance = std::move(inst);
    FixtureSpec& s = f.spec;
    s.kind = FixtureKind::general_lb;
    s.family = Family::average_power;
    s.alphas = off;
    s.p = 1.0;
    if (rounds == 1) s.expected_breakpoints = {2.0};
    if (rounds == 2) s.expected_breakpoints = {1.884, 2.0, 2.124};
    if (rounds == 3) s.expected_breakpoints = {1.882, 1.884, 1.885, 2.0, 2.123, 2.124, 2.125};
    return f;
}

K4Constants k4_constants() {
    K4Constants k;
    k.a = 1.0;
    k.b = 5.0 * std::sqrt(2.0 / 3.0) - (5.0 * std::sqrt(2.0) + 1.0) / 3.0;
    k.c = (10.0 * std::sqrt(2.0) - 1.0) / 3.0;
    k.d = 5.0 * std::sqrt(2.0 / 3.0) + (5.0 * std::sqrt(2.0) + 1.0) / 3.0;
    k.c_tilde = k.b + k.c + k.b * k.c - k.d - k.b * k.d - k.c * k.d;
    return k;
}

K4Fixture gen_k4_shatter(int n, int j) {
    if (n < 4 || n % 4 != 0) throw Error(ErrorCode::invalid_argument, "n must be a positive multiple of 4");
    if (j < 1) throw Error(ErrorCode::invalid_argument, "j must be >= 1");
    const int blocks = n / 4;
    const double log7 = std::log10(7.0);
    if (j > 30 || (blocks - 1) * log7 + std::log10(5.0) > 307.0 || (std::ldexp(1.0, j - 1) - 2.0) * log7 > 300.0)
        throw Error(ErrorCode::overflow, "powers of 7 exceed double range");

    std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
    const double we = 1.0 / (6.0 * blocks);
    for (int b = 0; b < blocks; ++b)
        for (int u = 4 * b; u < 4 * b + 4; ++u)
            for (int v = 4 * b; v < 4 * b + 4; ++v)
                if (u != v) w[static_cast<std::size_t>(u) * n + v] = we;

    K4Fixture f;
    f.instance = maxcut_instance(n, std::move(w));
    f.embedding.n = n;
    f.embedding.dim = n;
    f.embedding.v.assign(static_cast<std::size_t>(n) * n, 0.0);
    const double s2 = std::sqrt(2.0);
    const double s23 = std::sqrt(2.0 / 3.0);
    const double block_vecs[4][3] = {
        {1.0, 0.0, 0.0},
        {-1.0 / 3.0, 2.0 * s2 / 3.0, 0.0},
        {-1.0 / 3.0, -s2 / 3.0, s23},
        {-1.0 / 3.0, -s2 / 3.0, -s23},
    };
    for (int b = 0; b < blocks; ++b)
        for (int k = 0; k < 4; ++k) {
            double* r = f.embedding.row(4 * b + k);
            for (int t = 0; t < 3; ++t) r[4 * b + t] = block_vecs[k][t];
        }
    f.z.assign(n, 0.0);
    const long long stride = 1LL << (j - 1);
    for (int b = 0; b < blocks; ++b) {
        if (b % stride != 0) continue;
        const double scale = std::pow(7.0, b);
        const double pattern[4] = {1.0, 5.0, 5.0, 1.0};
        for (int k = 0; k < 4; ++k) f.z[4 * b + k] = scale * pattern[k];
    }
    const K4Constants k = k4_constants();
    if (j == 1)
        f.witness = 0.5 - (k.b / (k.c * k.c) - 1.0) / (3.0 * n);
    else
        f.witness = 0.5 - k.c_tilde / (3.0 * n * std::pow(7.0, std::ldexp(1.0, j - 1) - 2.0) * k.d * k.d);
    return f;
}

ClusteringInstance random_euclidean(int n, int dim, std::uint64_t seed) {
    if (n < 1 || dim < 1) throw Error(ErrorCode::invalid_argument, "n and dim must be positive");
    SplitMix64 rng(seed);
    std::vector<double> pts(static_cast<std::size_t>(n) * dim);
    for (double& v : pts) v = rng.uniform();
    ClusteringInstance inst(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (int t = 0; t < dim; ++t) {
                const double d = pts[static_cast<std::size_t>(i) * dim + t] - pts[static_cast<std::size_t>(j) * dim + t];
                s += d * d;
            }
            inst.set(i, j, std::sqrt(s));
        }
    return inst;
}

MaxQPInstance random_maxcut(int n, double edge_prob, std::uint64_t seed) {
    if (n < 2) throw Error(ErrorCode::invalid_argument, "n must be at least 2");
    if (!(edge_prob > 0.0 && edge_prob <= 1.0)) throw Error(ErrorCode::invalid_argument, "edge probability must lie in (0,1]");
    SplitMix64 rng(seed);
    std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
    double total = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < edge_prob) {
                const double v = 1.0 - rng.uniform();
                w[static_cast<std::size_t>(i) * n + j] = w[static_cast<std::size_t>(j) * n + i] = v;
                total += v;
            }
    if (total == 0.0) {
        w[1] = w[static_cast<std::size_t>(n)] = 1.0;
        total = 1.0;
    }
    for (double& v : w) v /= total;
    return maxcut_instance(n, std::move(w));
}

// ---------------------------------------------------------------- file I/O

namespace {

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::parse_error, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::parse_error, path + ": " + e.what());
    }
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::parse_error, "cannot write '" + path + "'");
    out << j.dump(1) << '\n';
}

std::vector<double> read_square(const json& j, const char* field, int n, const std::string& path) {
    if (!j.contains(field) || !j[field].is_array())
        throw Error(ErrorCode::parse_error, path + ": field '" + field + "' missing or not an array");
    const json& m = j[field];
    if (static_cast<int>(m.size()) != n)
        throw Error(ErrorCode::dimension_mismatch, path + ": field '" + field + "' has " + std::to_string(m.size()) +
                                                       " rows, expected " + std::to_string(n));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const json& row = m[i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw Error(ErrorCode::dimension_mismatch,
                        path + ": field '" + field + "' row " + std::to_string(i) + " is not of length " + std::to_string(n));
        for (int k = 0; k < n; ++k) {
            if (!row[k].is_number())
                throw Error(ErrorCode::parse_error,
                            path + ": field '" + field + "' entry [" + std::to_string(i) + "][" + std::to_string(k) + "] is not a number");
            out.push_back(row[k].get<double>());
        }
    }
    return out;
}

json square_to_json(const std::vector<double>& m, int n) {
    json rows = json::array();
    for (int i = 0; i < n; ++i) {
        json row = json::array();
        for (int k = 0; k < n; ++k) row.push_back(m[static_cast<std::size_t>(i) * n + k]);
        rows.push_back(std::move(row));
    }
    return rows;
}

int read_n(const json& j, const std::string& path) {
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw Error(ErrorCode::parse_error, path + ": field 'n' missing or not an integer");
    const int n = j["n"].get<int>();
    if (n <= 0) throw Error(ErrorCode::parse_error, path + ": field 'n' must be positive");
    return n;
}

void check_schema(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("schema") || j["schema"] != kSchema)
        throw Error(ErrorCode::parse_error, path + ": missing or unknown 'schema' (expected " + kSchema + ")");
}

ClusteringInstance clustering_from_json(const json& j, const std::string& path) {
    const int n = read_n(j, path);
    ClusteringInstance inst(n);
    inst.dist = read_square(j, "matrix", n, path);
    if (j.contains("ground_truth")) {
        const json& g = j["ground_truth"];
        if (!g.is_array() || static_cast<int>(g.size()) != n)
            throw Error(ErrorCode::dimension_mismatch, path + ": field 'ground_truth' must have n entries");
        std::vector<int> gt;
        for (const auto& v : g) {
            if (!v.is_number_integer()) throw Error(ErrorCode::parse_error, path + ": field 'ground_truth' must hold integers");
            gt.push_back(v.get<int>());
        }
        inst.ground_truth = gt;
    }
    if (j.contains("k_hint")) {
        if (!j["k_hint"].is_number_integer()) throw Error(ErrorCode::parse_error, path + ": field 'k_hint' must be an integer");
        inst.k_hint = j["k_hint"].get<int>();
    }
    return inst;
}

MaxQPInstance maxqp_from_json(const json& j, const std::string& path) {
    const int n = read_n(j, path);
    MaxQPInstance inst;
    inst.n = n;
    inst.matrix = read_square(j, "matrix", n, path);
    for (int i = 0; i < n; ++i)
        if (inst.a(i, i) < 0.0)
            throw Error(ErrorCode::parse_error, path + ": field 'matrix' has negative diagonal entry at " + std::to_string(i));
    if (j.contains("origin")) {
        const json& o = j["origin"];
        if (o.is_object() && o.contains("maxcut")) {
            inst.origin = MaxQPOrigin::maxcut;
            inst.weights = read_square(o["maxcut"], "weights", n, path);
        }
    }
    return inst;
}

} // namespace

AnyInstance load_instance(const std::string& path) {
    const json j = read_json(path);
    check_schema(j, path);
    if (!j.contains("type") || !j["type"].is_string()) throw Error(ErrorCode::parse_error, path + ": field 'type' missing");
    const std::string type = j["type"].get<std::string>();
    if (type == "clustering") return clustering_from_json(j, path);
    if (type == "maxqp") return maxqp_from_json(j, path);
    throw Error(ErrorCode::parse_error, path + ": field 'type' must be 'clustering' or 'maxqp'");
}

ClusteringInstance load_clustering(const std::string& path) {
    AnyInstance a = load_instance(path);
    if (auto* c = std::get_if<ClusteringInstance>(&a)) return std::move(*c);
    throw Error(ErrorCode::parse_error, path + ": expected a clustering instance");
}

MaxQPInstance load_maxqp(const std::string& path) {
    AnyInstance a = load_instance(path);
    if (auto* m = std::get_if<MaxQPInstance>(&a)) return std::move(*m);
    throw Error(ErrorCode::parse_error, path + ": expected a maxqp instance");
}

void save_instance(const ClusteringInstance& inst, const std::string& path) {
    json j;
    j["schema"] = kSchema;
    j["type"] = "clustering";
    j["n"] = inst.n;
    j["matrix"] = square_to_json(inst.dist, inst.n);
    if (inst.ground_truth) j["ground_truth"] = *inst.ground_truth;
    if (inst.k_hint) j["k_hint"] = *inst.k_hint;
    write_json(j, path);
}

void save_instance(const MaxQPInstance& inst, const std::string& path) {
    json j;
    j["schema"] = kSchema;
    j["type"] = "maxqp";
    j["n"] = inst.n;
    j["matrix"] = square_to_json(inst.matrix, inst.n);
    if (inst.is_maxcut()) j["origin"] = {{"maxcut", {{"weights", square_to_json(inst.weights, inst.n)}}}};
    write_json(j, path);
}

std::string fixture_path(const std::string& instance_path) {
    const std::string ext = ".json";
    if (instance_path.size() > ext.size() && instance_path.compare(instance_path.size() - ext.size(), ext.size(), ext) == 0)
        return instance_path.substr(0, instance_path.size() - ext.size()) + ".fixture.json";
    return instance_path + ".fixture.json";
}

void save_fixture(const FixtureSpec& s, const std::string& instance_path) {
    json j;
    j["schema"] = kSchema;
    j["kind"] = fixture_kind_name(s.kind);
    j["family"] = family_name(s.family);
    j["alphas"] = s.alphas;
    if (s.alpha_star) j["alpha_star"] = *s.alpha_star;
    j["p"] = s.p;
    j["expected_witness"] = s.expected_witness;
    j["expected_profile"] = s.expected_profile;
    j["expected_breakpoints"] = s.expected_breakpoints;
    j["r_low"] = s.r_low;
    j["r_high"] = s.r_high;
    write_json(j, fixture_path(instance_path));
}

FixtureSpec load_fixture(const std::string& instance_path) {
    const std::string path = fixture_path(instance_path);
    const json j = read_json(path);
    check_schema(j, path);
    FixtureSpec s;
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "oscillation") s.kind = FixtureKind::oscillation;
        else if (kind == "two_gadget") s.kind = FixtureKind::two_gadget;
        else if (kind == "general_lb") s.kind = FixtureKind::general_lb;
        else if (kind == "k4_shatter") s.kind = FixtureKind::k4_shatter;
        else throw Error(ErrorCode::parse_error, path + ": unknown fixture kind '" + kind + "'");
        s.family = parse_family(j.at("family").get<std::string>());
        s.alphas = j.at("alphas").get<std::vector<double>>();
        if (j.contains("alpha_star")) s.alpha_star = j["alpha_star"].get<double>();
        s.p = j.at("p").get<double>();
        s.expected_witness = j.at("expected_witness").get<double>();
        s.expected_profile = j.at("expected_profile").get<std::vector<double>>();
        s.expected_breakpoints = j.at("expected_breakpoints").get<std::vector<double>>();
        s.r_low = j.value("r_low", 0.0);
        s.r_high = j.value("r_high", 0.0);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::parse_error, path + ": " + e.what());
    }
    return s;
}

Embedding load_embedding(const std::string& path) {
    const json j = read_json(path);
    check_schema(j, path);
    if (j.value("type", "") != "embedding") throw Error(ErrorCode::parse_error, path + ": field 'type' must be 'embedding'");
    Embedding e;
    e.n = read_n(j, path);
    if (!j.contains("d") || !j["d"].is_number_integer()) throw Error(ErrorCode::parse_error, path + ": field 'd' missing");
    e.dim = j["d"].get<int>();
    if (!j.contains("vectors") || !j["vectors"].is_array() || static_cast<int>(j["vectors"].size()) != e.n)
        throw Error(ErrorCode::dimension_mismatch, path + ": field 'vectors' must have n rows");
    for (int i = 0; i < e.n; ++i) {
        const json& row = j["vectors"][i];
        if (!row.is_array() || static_cast<int>(row.size()) != e.dim)
            throw Error(ErrorCode::dimension_mismatch, path + ": field 'vectors' row " + std::to_string(i) + " has wrong length");
        for (const auto& x : row) e.v.push_back(x.get<double>());
    }
    return e;
}

void save_embedding(const Embedding& emb, const std::string& path) {
    json j;
    j["schema"] = kSchema;
    j["type"] = "embedding";
    j["n"] = emb.n;
    j["d"] = emb.dim;
    json rows = json::array();
    for (int i = 0; i < emb.n; ++i) rows.push_back(std::vector<double>(emb.row(i), emb.row(i) + emb.dim));
    j["vectors"] = std::move(rows);
    write_json(j, path);
}

} // namespace ptune
