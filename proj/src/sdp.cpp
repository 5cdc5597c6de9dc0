#include "ptune/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ptune/error.hpp"
#include "ptune/rng.hpp"

namespace ptune {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

std::size_t at(int n, int i, int j) { return static_cast<std::size_t>(i) * n + j; }

// Constant term of the value: W/2 for max-cut, 0 otherwise.
double value_offset(const MaxQPInstance& inst) {
    if (!inst.is_maxcut()) return 0.0;
    double w = 0.0;
    for (int i = 0; i < inst.n; ++i)
        for (int j = i + 1; j < inst.n; ++j) w += inst.w(i, j);
    return w / 2.0;
}

void check_pair(const MaxQPInstance& inst, const Embedding& emb) {
    if (emb.n != inst.n) throw Error(ErrorCode::dimension_mismatch, "embedding and instance sizes differ");
    if (emb.dim < 1 || emb.v.size() != static_cast<std::size_t>(emb.n) * emb.dim)
        throw Error(ErrorCode::dimension_mismatch, "embedding storage does not match n x dim");
}

double dot(const double* a, const double* b, int d) {
    double s = 0.0;
    for (int t = 0; t < d; ++t) s += a[t] * b[t];
    return s;
}

double quad_value(const MaxQPInstance& inst, double offset, const std::vector<double>& x) {
    const int n = inst.n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += inst.a(i, j) * x[j];
        s += x[i] * row;
    }
    return offset + s;
}

double quad_value(const MaxQPInstance& inst, double offset, const std::vector<int>& x) {
    std::vector<double> xd(x.begin(), x.end());
    return quad_value(inst, offset, xd);
}

void check_samples(const std::vector<RoundingSample>& samples, int extra_dims, bool need_q) {
    if (samples.empty()) throw Error(ErrorCode::invalid_argument, "at least one sample is required");
    for (const RoundingSample& s : samples) {
        if (!s.instance || !s.embedding) throw Error(ErrorCode::invalid_argument, "sample without instance or embedding");
        check_pair(*s.instance, *s.embedding);
        const std::size_t want = static_cast<std::size_t>(s.embedding->dim) + (extra_dims ? s.embedding->n : 0);
        if (s.z.size() != want) throw Error(ErrorCode::dimension_mismatch, "Z has the wrong dimension");
        if (need_q && s.q.size() != static_cast<std::size_t>(s.embedding->n))
            throw Error(ErrorCode::dimension_mismatch, "Q has the wrong dimension");
    }
}

// Sorts and merges thresholds closer than 1e-12 (relative to max(1, |t|)).
std::vector<double> merge_thresholds(std::vector<double> t) {
    std::sort(t.begin(), t.end());
    std::vector<double> out;
    for (double v : t) {
        if (!out.empty() && v - out.back() <= 1e-12 * std::max(1.0, std::abs(v))) continue;
        out.push_back(v);
    }
    return out;
}

// Shared driver for piecewise-constant ERM. Each sample's value only changes
// at its own thresholds, so a sample is re-evaluated only after crossing one.
template <typename Eval>
RoundingErmResult piecewise_constant_erm(const std::vector<RoundingSample>& samples,
                                         const std::vector<std::vector<double>>& own, double lo, double hi,
                                         const std::vector<double>& extra_points, Eval eval) {
    RoundingErmResult r;
    r.lo = lo;
    r.hi = hi;
    std::vector<double> pooled;
    for (const auto& t : own) pooled.insert(pooled.end(), t.begin(), t.end());
    r.thresholds = merge_thresholds(std::move(pooled));

    const std::size_t m = samples.size();
    const std::size_t intervals = r.thresholds.size() + 1;
    auto bound = [&](std::size_t i) { return i == 0 ? lo : (i == intervals ? hi : r.thresholds[i - 1]); };
    auto rep = [&](std::size_t i) {
        const double a = bound(i), b = bound(i + 1);
        if (std::isinf(b)) return a > 0.0 ? 2.0 * a : 1.0;
        return 0.5 * (a + b);
    };

    std::vector<double> cache(m, 0.0);
    std::vector<std::size_t> ptr(m, 0);
    std::vector<std::vector<double>> sorted_own = own;
    for (auto& t : sorted_own) std::sort(t.begin(), t.end());

    r.values.resize(intervals);
    r.argmax.resize(intervals);
    for (std::size_t i = 0; i < intervals; ++i) {
        const double x = rep(i);
        double total = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            std::size_t p = ptr[k];
            while (p < sorted_own[k].size() && sorted_own[k][p] < x) ++p;
            if (i == 0 || p != ptr[k]) cache[k] = eval(samples[k], x);
            ptr[k] = p;
            total += cache[k];
        }
        r.values[i] = total / static_cast<double>(m);
        r.argmax[i] = x;
    }
    // Points such as domain endpoints are evaluated on their own and credited to
    // the interval they close.
    for (double x : extra_points) {
        double total = 0.0;
        for (std::size_t k = 0; k < m; ++k) total += eval(samples[k], x);
        const double v = total / static_cast<double>(m);
        std::size_t idx = static_cast<std::size_t>(std::upper_bound(r.thresholds.begin(), r.thresholds.end(), x) -
                                                   r.thresholds.begin());
        if (idx >= intervals) idx = intervals - 1;
        if (v > r.values[idx]) {
            r.values[idx] = v;
            r.argmax[idx] = x;
        }
    }
    r.best_interval = static_cast<std::size_t>(std::max_element(r.values.begin(), r.values.end()) - r.values.begin());
    r.best_value = r.values[r.best_interval];
    r.best_param = r.argmax[r.best_interval];
    return r;
}

} // namespace

// ---------------------------------------------------------------- embeddings

double sdp_objective(const MaxQPInstance& inst, const Embedding& emb) {
    check_pair(inst, emb);
    const int n = inst.n;
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double a = inst.a(i, j);
            if (a != 0.0) s += a * dot(emb.row(i), emb.row(j), emb.dim);
        }
    return value_offset(inst) + s;
}

double max_norm_error(const Embedding& emb) {
    double worst = 0.0;
    for (int i = 0; i < emb.n; ++i)
        worst = std::max(worst, std::abs(std::sqrt(dot(emb.row(i), emb.row(i), emb.dim)) - 1.0));
    return worst;
}

BmResult embed_bm(const MaxQPInstance& inst, const BmOptions& opt) {
    const int n = inst.n;
    if (n < 1) throw Error(ErrorCode::invalid_argument, "empty instance");
    int r = opt.rank > 0 ? opt.rank : static_cast<int>(std::ceil(std::sqrt(2.0 * n)));
    if (opt.rank == 0) r = std::max(r, 2);
    if (r < 2) throw Error(ErrorCode::invalid_argument, "rank must be >= 2");
    if (opt.max_iters < 0 || !(opt.grad_tol > 0.0)) throw Error(ErrorCode::invalid_argument, "bad iteration limits");

    // Symmetrized off-diagonal coupling; the diagonal is constant on the sphere.
    std::vector<double> S(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) S[at(n, i, j)] = inst.a(i, j) + inst.a(j, i);

    BmResult res;
    Embedding& U = res.embedding;
    U.n = n;
    U.dim = r;
    U.v.assign(static_cast<std::size_t>(n) * r, 0.0);
    SplitMix64 rng(opt.seed);
    for (int i = 0; i < n; ++i) {
        double* u = U.row(i);
        double nn = 0.0;
        while (nn < 1e-12) {
            for (int t = 0; t < r; ++t) u[t] = rng.normal();
            nn = dot(u, u, r);
        }
        const double inv = 1.0 / std::sqrt(nn);
        for (int t = 0; t < r; ++t) u[t] *= inv;
    }

    auto tangent_grad = [&](const Embedding& E, std::vector<double>& g) {
        g.assign(static_cast<std::size_t>(n) * r, 0.0);
        double norm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            double* gi = g.data() + static_cast<std::size_t>(i) * r;
            for (int j = 0; j < n; ++j) {
                const double sij = S[at(n, i, j)];
                if (sij == 0.0) continue;
                const double* uj = E.row(j);
                for (int t = 0; t < r; ++t) gi[t] += sij * uj[t];
            }
            const double radial = dot(gi, E.row(i), r);
            for (int t = 0; t < r; ++t) gi[t] -= radial * E.row(i)[t];
            norm2 += dot(gi, gi, r);
        }
        return norm2;
    };

    double f = sdp_objective(inst, U);
    res.history.push_back(f);
    std::vector<double> g;
    double step = 1.0;
    Embedding trial = U;
    int it = 0;
    for (; it < opt.max_iters; ++it) {
        const double g2 = tangent_grad(U, g);
        if (std::sqrt(g2) <= opt.grad_tol) {
            res.converged = true;
            break;
        }
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (int i = 0; i < n; ++i) {
                double* u = trial.row(i);
                const double* src = U.row(i);
                const double* gi = g.data() + static_cast<std::size_t>(i) * r;
                for (int t = 0; t < r; ++t) u[t] = src[t] + step * gi[t];
                const double inv = 1.0 / std::sqrt(dot(u, u, r));
                for (int t = 0; t < r; ++t) u[t] *= inv;
            }
            const double ft = sdp_objective(inst, trial);
            if (ft >= f + 1e-4 * step * g2) {
                std::swap(U.v, trial.v);
                f = ft;
                res.history.push_back(f);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // No ascent step of measurable size exists; treat as stationary.
            res.converged = std::sqrt(g2) <= std::sqrt(opt.grad_tol);
            break;
        }
        step = std::min(step * 2.0, 1e6);
    }
    res.iterations = it;
    res.objective = f;
    return res;
}

// ---------------------------------------------------------------- values

std::vector<double> projections(const Embedding& emb, const std::vector<double>& z) {
    if (z.size() < static_cast<std::size_t>(emb.dim)) throw Error(ErrorCode::dimension_mismatch, "Z is too short");
    std::vector<double> p(emb.n);
    for (int i = 0; i < emb.n; ++i) p[i] = dot(emb.row(i), z.data(), emb.dim);
    return p;
}

double assignment_value(const MaxQPInstance& inst, const std::vector<double>& x) {
    if (x.size() != static_cast<std::size_t>(inst.n)) throw Error(ErrorCode::dimension_mismatch, "assignment size");
    return quad_value(inst, value_offset(inst), x);
}

double cut_value(const MaxQPInstance& inst, const std::vector<int>& assignment) {
    if (!inst.is_maxcut()) throw Error(ErrorCode::invalid_argument, "cut value needs a max-cut instance");
    if (assignment.size() != static_cast<std::size_t>(inst.n)) throw Error(ErrorCode::dimension_mismatch, "assignment size");
    double s = 0.0;
    for (int i = 0; i < inst.n; ++i)
        for (int j = i + 1; j < inst.n; ++j)
            if ((assignment[i] >= 0) != (assignment[j] >= 0)) s += inst.w(i, j);
    return s;
}

double slin_phi(double y, double s) { return std::clamp(y / s, -1.0, 1.0); }

double slin_value(const MaxQPInstance& inst, const Embedding& emb, const std::vector<double>& z, double s) {
    check_pair(inst, emb);
    if (!(s > 0.0)) throw Error(ErrorCode::domain_error, "s must be positive");
    std::vector<double> x = projections(emb, z);
    for (double& v : x) v = slin_phi(v, s);
    return quad_value(inst, value_offset(inst), x);
}

std::vector<int> owr_assign(const Embedding& emb, const std::vector<double>& z, double gamma) {
    if (z.size() != static_cast<std::size_t>(emb.dim) + emb.n)
        throw Error(ErrorCode::dimension_mismatch, "outward rotation needs dim + n coordinates of Z");
    const double c = std::cos(gamma), s = std::sin(gamma);
    std::vector<int> x(emb.n);
    for (int i = 0; i < emb.n; ++i) x[i] = sign_of(c * dot(emb.row(i), z.data(), emb.dim) + s * z[emb.dim + i]);
    return x;
}

double owr_value(const MaxQPInstance& inst, const Embedding& emb, const std::vector<double>& z, double gamma) {
    check_pair(inst, emb);
    if (!(gamma >= 0.0 && gamma <= M_PI / 2)) throw Error(ErrorCode::domain_error, "gamma must lie in [0, pi/2]");
    return quad_value(inst, value_offset(inst), owr_assign(emb, z, gamma));
}

std::string baseline_name(Baseline b) { return b == Baseline::linear ? "linear" : "tanh"; }

Baseline parse_baseline(const std::string& name) {
    if (name == "linear" || name == "s-linear") return Baseline::linear;
    if (name == "tanh") return Baseline::tanh;
    throw Error(ErrorCode::invalid_argument, "unknown baseline '" + name + "'");
}

double baseline_f(Baseline b, double x) {
    return b == Baseline::linear ? std::clamp(x, -1.0, 1.0) : std::tanh(x);
}

double baseline_quantile(Baseline b, double u) {
    const double y = 2.0 * u - 1.0;
    if (b == Baseline::linear) return y;
    return std::atanh(std::clamp(y, -1.0 + 1e-16, 1.0 - 1e-16));
}

namespace {

std::vector<double> sigmoid_assignment(const Embedding& emb, const std::vector<double>& z, Baseline b, double s) {
    if (!(s > 0.0)) throw Error(ErrorCode::domain_error, "s must be positive");
    std::vector<double> x = projections(emb, z);
    for (double& v : x) v = baseline_f(b, s * v);
    return x;
}

} // namespace

double rpr2_value(const MaxQPInstance& inst, const Embedding& emb, const std::vector<double>& z, Baseline b,
                  double s) {
    check_pair(inst, emb);
    return quad_value(inst, value_offset(inst), sigmoid_assignment(emb, z, b, s));
}

std::vector<int> rprt_assign(const Embedding& emb, const std::vector<double>& z, const std::vector<double>& q,
                             double s) {
    if (q.size() != static_cast<std::size_t>(emb.n)) throw Error(ErrorCode::dimension_mismatch, "Q size");
    const std::vector<double> p = projections(emb, z);
    std::vector<int> x(emb.n);
    for (int i = 0; i < emb.n; ++i) x[i] = sign_of(q[i] - s * p[i]);
    return x;
}

double rprt_expect(const MaxQPInstance& inst, const Embedding& emb, const std::vector<double>& z, Baseline b,
                   double s) {
    check_pair(inst, emb);
    for (int i = 0; i < inst.n; ++i)
        if (inst.a(i, i) != 0.0)
            throw Error(ErrorCode::non_null_diagonal, "exact expectation needs a zero diagonal");
    // Given Z the thresholds are independent, so E[x_i x_j] = E[x_i] E[x_j] for i != j.
    // The assignment sign(q - s p) has mean -f_s(p); the product is unchanged.
    const std::vector<double> f = sigmoid_assignment(emb, z, b, s);
    const int n = inst.n;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != i) row += inst.a(i, j) * f[j];
        total += f[i] * row;
    }
    return value_offset(inst) + total;
}

// ---------------------------------------------------------------- sampling

std::vector<double> sample_z(std::uint64_t seed, std::uint64_t index, int dim) {
    SplitMix64 rng = sample_stream(seed, index);
    std::vector<double> z(dim);
    for (double& v : z) v = rng.normal();
    return z;
}

void sample_zq(std::uint64_t seed, std::uint64_t index, int dim, int n, Baseline b, std::vector<double>& z,
               std::vector<double>& q) {
    SplitMix64 rng = sample_stream(seed, index);
    z.resize(dim);
    for (double& v : z) v = rng.normal();
    q.resize(n);
    for (double& v : q) v = baseline_quantile(b, rng.uniform());
}

// ---------------------------------------------------------------- ERM

RoundingErmResult slin_erm(const std::vector<RoundingSample>& samples) {
    check_samples(samples, 0, false);
    const std::size_t m = samples.size();

    // Per sample: projections ordered by magnitude, and the coupling used by the update.
    struct State {
        std::vector<double> p;
        std::vector<int> order;
        std::vector<char> linear;
        std::size_t next = 0;
        double C = 0.0, B = 0.0, A = 0.0;
    };
    std::vector<State> st(m);
    std::vector<double> pooled;
    for (std::size_t k = 0; k < m; ++k) {
        const MaxQPInstance& inst = *samples[k].instance;
        State& s = st[k];
        s.p = projections(*samples[k].embedding, samples[k].z);
        s.order.resize(inst.n);
        std::iota(s.order.begin(), s.order.end(), 0);
        std::sort(s.order.begin(), s.order.end(),
                  [&](int a, int b) { return std::abs(s.p[a]) < std::abs(s.p[b]); });
        s.linear.assign(inst.n, 0);
        // Below the smallest magnitude every nonzero projection is saturated.
        std::vector<double> x(inst.n);
        for (int i = 0; i < inst.n; ++i) {
            if (s.p[i] == 0.0) {
                s.linear[i] = 1;
                x[i] = 0.0;
            } else {
                x[i] = s.p[i] > 0 ? 1.0 : -1.0;
            }
        }
        s.C = quad_value(inst, value_offset(inst), x);
        for (int i = 0; i < inst.n; ++i)
            if (s.p[i] != 0.0) pooled.push_back(std::abs(s.p[i]));
    }

    RoundingErmResult r;
    r.lo = 0.0;
    r.hi = kInfinity;
    r.thresholds = merge_thresholds(std::move(pooled));
    const std::size_t intervals = r.thresholds.size() + 1;
    r.values.resize(intervals);
    r.argmax.resize(intervals);

    auto move_to_linear = [&](std::size_t k, int i) {
        const MaxQPInstance& inst = *samples[k].instance;
        State& s = st[k];
        const double sg = s.p[i] > 0 ? 1.0 : -1.0;
        const double pi = s.p[i];
        s.C -= inst.a(i, i);
        s.A += inst.a(i, i) * pi * pi;
        for (int j = 0; j < inst.n; ++j) {
            if (j == i) continue;
            const double aij = inst.a(i, j) + inst.a(j, i);
            if (aij == 0.0) continue;
            if (s.linear[j]) {
                s.B -= aij * sg * s.p[j];
                s.A += aij * pi * s.p[j];
            } else {
                const double sj = s.p[j] > 0 ? 1.0 : -1.0;
                s.C -= aij * sg * sj;
                s.B += aij * pi * sj;
            }
        }
        s.linear[i] = 1;
    };

    for (std::size_t iv = 0; iv < intervals; ++iv) {
        const double lo = iv == 0 ? 0.0 : r.thresholds[iv - 1];
        const double hi = iv + 1 < intervals ? r.thresholds[iv] : kInfinity;
        double C = 0.0, B = 0.0, A = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            State& s = st[k];
            while (s.next < s.order.size()) {
                const int i = s.order[s.next];
                const double mag = std::abs(s.p[i]);
                if (s.linear[i]) {
                    ++s.next;
                    continue;
                }
                if (mag - lo > 1e-12 * std::max(1.0, lo)) break;
                move_to_linear(k, i);
                ++s.next;
            }
            C += s.C;
            B += s.B;
            A += s.A;
        }
        C /= static_cast<double>(m);
        B /= static_cast<double>(m);
        A /= static_cast<double>(m);
        auto f = [&](double t) { return C + t * (B + t * A); }; // t = 1/s

        double best_v, best_s;
        if (iv == 0) {
            best_v = C;
            best_s = hi < kInfinity ? 0.5 * hi : 1.0;
        } else {
            // Candidates in t = 1/s over [1/hi, 1/lo]; 1/hi = 0 is the s -> inf limit.
            const double t_lo = hi < kInfinity ? 1.0 / hi : 0.0;
            const double t_hi = 1.0 / lo;
            best_v = f(t_hi);
            best_s = lo;
            if (A < 0.0) {
                const double tv = -B / (2.0 * A);
                if (tv > t_lo && tv < t_hi && f(tv) > best_v) {
                    best_v = f(tv);
                    best_s = 1.0 / tv;
                }
            }
            if (f(t_lo) > best_v) {
                best_v = f(t_lo);
                best_s = hi;
            }
        }
        r.values[iv] = best_v;
        r.argmax[iv] = best_s;
    }
    r.best_interval = static_cast<std::size_t>(std::max_element(r.values.begin(), r.values.end()) - r.values.begin());
    r.best_value = r.values[r.best_interval];
    r.best_param = r.argmax[r.best_interval];
    return r;
}

RoundingErmResult owr_erm(const std::vector<RoundingSample>& samples) {
    check_samples(samples, 1, false);
    std::vector<std::vector<double>> own(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const Embedding& emb = *samples[k].embedding;
        const std::vector<double> p = projections(emb, samples[k].z);
        for (int i = 0; i < emb.n; ++i) {
            const double zi = samples[k].z[emb.dim + i];
            if (zi == 0.0 || p[i] == 0.0) continue;
            const double ratio = -p[i] / zi;
            if (ratio > 0.0) own[k].push_back(std::atan(ratio));
        }
    }
    return piecewise_constant_erm(samples, own, 0.0, M_PI / 2, {0.0, M_PI / 2},
                                  [](const RoundingSample& s, double g) {
                                      return owr_value(*s.instance, *s.embedding, s.z, g);
                                  });
}

RoundingErmResult rprt_erm(const std::vector<RoundingSample>& samples) {
    check_samples(samples, 0, true);
    std::vector<std::vector<double>> own(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const Embedding& emb = *samples[k].embedding;
        const std::vector<double> p = projections(emb, samples[k].z);
        for (int i = 0; i < emb.n; ++i) {
            if (p[i] == 0.0) continue;
            const double t = samples[k].q[i] / p[i];
            if (t > 0.0) own[k].push_back(t);
        }
    }
    return piecewise_constant_erm(samples, own, 0.0, kInfinity, {}, [](const RoundingSample& s, double x) {
        const MaxQPInstance& inst = *s.instance;
        return quad_value(inst, value_offset(inst), rprt_assign(*s.embedding, s.z, s.q, x));
    });
}

// ---------------------------------------------------------------- discretized functions

DiscretizedGrid::DiscretizedGrid(double e) : eps(e) {
    if (!(e > 0.0 && e < 1.0)) throw Error(ErrorCode::domain_error, "eps must lie in (0, 1)");
    const double e2 = e * e;
    const double target = std::sqrt(2.0 * std::log(1.0 / e));
    const double ratio = target / e2;
    if (ratio > 1e9) throw Error(ErrorCode::overflow, "eps too small");
    steps = static_cast<long long>(std::floor(ratio)) + 1;
    B = static_cast<double>(steps) * e2;
    int j = static_cast<int>(std::floor(1.0 / e)) + 1;
    while (j > 0 && !(j * e < 1.0)) --j;
    half_values = j;
}

double DiscretizedGrid::class_size() const {
    const double v = std::pow(static_cast<double>(values_per_interval()), static_cast<double>(finite_intervals()));
    return std::isfinite(v) ? v : kInfinity;
}

int DiscretizedGrid::interval_of(double y) const {
    if (y == 0.0) return -3;
    const double t = y / (eps * eps);
    const double K = static_cast<double>(steps);
    if (t <= -K) return -1;
    if (t >= K) return -2;
    const long long mid = steps - 1;
    long long idx;
    if (t > -1.0 && t < 1.0)
        idx = mid;
    else if (t < 0.0)
        idx = std::clamp(static_cast<long long>(std::ceil(t + K)) - 1, 0LL, steps - 2);
    else
        idx = steps + std::clamp(static_cast<long long>(std::floor(t)) - 1, 0LL, steps - 2);
    return static_cast<int>(idx);
}

std::pair<double, double> DiscretizedGrid::interval_bounds(int idx) const {
    const double e2 = eps * eps;
    const long long mid = steps - 1;
    if (idx == mid) return {-e2, e2};
    if (idx < mid) return {-B + idx * e2, -B + (idx + 1) * e2};
    const long long k = idx - steps; // positive side, left to right
    return {(k + 1) * e2, (k + 2) * e2};
}

double DiscretizedSpec::operator()(const DiscretizedGrid& g, double y) const {
    const int idx = g.interval_of(y);
    if (idx == -1) return -1.0;
    if (idx == -2) return 1.0;
    if (idx == -3) return 0.0;
    return levels[idx] * eps;
}

DiscretizedEnumerator::DiscretizedEnumerator(double eps, std::uint64_t cap) : grid_(eps) {
    const double size = grid_.class_size();
    if (size > static_cast<double>(cap)) {
        const std::string shown = std::isinf(size) ? std::string("more than 1e308") : std::to_string(size);
        throw Error(ErrorCode::class_too_large, "class has " + shown + " members, cap is " + std::to_string(cap));
    }
    count_ = static_cast<std::uint64_t>(std::llround(size));
    cur_.assign(grid_.finite_intervals(), -grid_.half_values);
}

bool DiscretizedEnumerator::next(DiscretizedSpec& out) {
    if (done_) return false;
    out.eps = grid_.eps;
    out.levels = cur_;
    int i = static_cast<int>(cur_.size()) - 1;
    while (i >= 0 && cur_[i] == grid_.half_values) {
        cur_[i] = -grid_.half_values;
        --i;
    }
    if (i < 0)
        done_ = true;
    else
        ++cur_[i];
    return true;
}

double disc_value(const MaxQPInstance& inst, const Embedding& emb, const std::vector<double>& z,
                  const DiscretizedGrid& g, const DiscretizedSpec& spec) {
    check_pair(inst, emb);
    std::vector<double> x = projections(emb, z);
    for (double& v : x) v = spec(g, v);
    return quad_value(inst, value_offset(inst), x);
}

DiscBest disc_best(const std::vector<RoundingSample>& samples, double eps, std::uint64_t cap) {
    check_samples(samples, 0, false);
    DiscretizedEnumerator en(eps, cap);
    const DiscretizedGrid& g = en.grid();
    const std::size_t m = samples.size();

    // Interval index per projection, fixed across specs.
    std::vector<std::vector<int>> idx(m);
    std::vector<double> offsets(m);
    for (std::size_t k = 0; k < m; ++k) {
        const std::vector<double> p = projections(*samples[k].embedding, samples[k].z);
        idx[k].resize(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) idx[k][i] = g.interval_of(p[i]);
        offsets[k] = value_offset(*samples[k].instance);
    }

    DiscBest best;
    best.value = -kInfinity;
    DiscretizedSpec spec;
    std::vector<double> x;
    while (en.next(spec)) {
        double total = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            x.resize(idx[k].size());
            for (std::size_t i = 0; i < x.size(); ++i) {
                const int t = idx[k][i];
                x[i] = t == -1 ? -1.0 : t == -2 ? 1.0 : t == -3 ? 0.0 : spec.levels[t] * g.eps;
            }
            total += quad_value(*samples[k].instance, offsets[k], x);
        }
        const double v = total / static_cast<double>(m);
        ++best.evaluated;
        if (v > best.value) {
            best.value = v;
            best.spec = spec;
        }
    }
    return best;
}

} // namespace ptune
