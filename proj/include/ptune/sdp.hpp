#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptune/instances.hpp"

namespace ptune {

// ---------------------------------------------------------------- embeddings

struct BmOptions {
    int rank = 0; // 0 selects ceil(sqrt(2n))
    std::uint64_t seed = 0;
    int max_iters = 10000;
    double grad_tol = 1e-6;
};

struct BmResult {
    Embedding embedding;
    double objective = 0.0; // sum_ij a_ij <u_i, u_j>
    int iterations = 0;
    bool converged = false;
    std::vector<double> history; // objective after every accepted step
};

// Burer-Monteiro projected gradient ascent on the unit-sphere factorization.
// Not certified optimal.
BmResult embed_bm(const MaxQPInstance& inst, const BmOptions& opt = {});

// sum_ij a_ij <u_i, u_j>, plus W/2 for max-cut instances.
double sdp_objective(const MaxQPInstance& inst, const Embedding& emb);

// Largest | |u_i| - 1 | over the rows.
double max_norm_error(const Embedding& emb);

// ---------------------------------------------------------------- values

// <u_i, Z> using the first emb.dim coordinates of Z.
std::vector<double> projections(const Embedding& emb, const std::vector<double>& z);

// Value of a fractional or binary assignment: x^T A x, plus W/2 for max-cut.
// For max-cut this is sum_{i<j} w_ij (1 - x_i x_j) / 2.
double assignment_value(const MaxQPInstance& inst, const std::vector<double>& x);

// Sum of w_ij over cut edges of a +-1 assignment.
double cut_value(const MaxQPInstance& inst, const std::vector<int>& assignment);

inline int sign_of(double v) { return v >= 0.0 ? 1 : -1; }

double slin_phi(double y, double s);
double slin_value(const MaxQPInstance& inst, const Embedding& emb, const std::vector<double>& z, double s);

// Outward rotation by gamma. z has emb.dim + n coordinates.
std::vector<int> owr_assign(const Embedding& emb, const std::vector<double>& z, double gamma);
double owr_value(const MaxQPInstance& inst, const Embedding& emb, const std::vector<double>& z, double gamma);

// Sigmoid-like baseline f_1 with f_s(x) = f_1(s x).
enum class Baseline { linear, tanh };

std::string baseline_name(Baseline b);
Baseline parse_baseline(const std::string& name);
double baseline_f(Baseline b, double x);
// Inverse of F_1 = (f_1 + 1) / 2, for sampling thresholds from p_1.
double baseline_quantile(Baseline b, double u);

// RPR2 fractional value: f_s applied to every projection.
double rpr2_value(const MaxQPInstance& inst, const Embedding& emb, const std::vector<double>& z, Baseline b,
                  double s);
// x_i = sign(q_i - s <u_i, Z>).
std::vector<int> rprt_assign(const Embedding& emb, const std::vector<double>& z, const std::vector<double>& q,
                             double s);
// Expected RPRT value given Z; requires a null diagonal.
double rprt_expect(const MaxQPInstance& inst, const Embedding& emb, const std::vector<double>& z, Baseline b,
                   double s);

// ---------------------------------------------------------------- sampling

// Standard normal Z of the given dimension from the stream seed ^ index.
std::vector<double> sample_z(std::uint64_t seed, std::uint64_t index, int dim);
// Z followed by n thresholds q_i ~ p_1, both from the stream seed ^ index.
void sample_zq(std::uint64_t seed, std::uint64_t index, int dim, int n, Baseline b, std::vector<double>& z,
               std::vector<double>& q);

// ---------------------------------------------------------------- ERM

struct RoundingSample {
    const MaxQPInstance* instance = nullptr;
    const Embedding* embedding = nullptr;
    std::vector<double> z;
    std::vector<double> q; // RPRT only
};

// Interval i spans (bound(i), bound(i+1)) with bounds lo, thresholds..., hi.
// Values are sample averages; the best value is the maximum.
struct RoundingErmResult {
    double best_param = 0.0;
    std::vector<double> thresholds;
    std::vector<double> values;          // best average value on each interval
    std::vector<double> argmax;          // parameter attaining it (may be +inf for the last slin interval)
    double best_value = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t best_interval = 0;
};

// Exact s-linear ERM: on every interval the average is c + b/s + a/s^2.
RoundingErmResult slin_erm(const std::vector<RoundingSample>& samples);
RoundingErmResult owr_erm(const std::vector<RoundingSample>& samples);
// Parameter s of f_s(x) = f_1(s x); thresholds are q_i / <u_i, Z> > 0.
RoundingErmResult rprt_erm(const std::vector<RoundingSample>& samples);

// ---------------------------------------------------------------- discretized functions

// Geometry of the interval partition for a given eps.
struct DiscretizedGrid {
    double eps = 0.5;
    long long steps = 0;  // B / eps^2
    double B = 0.0;
    int half_values = 0;  // values are j * eps with |j| <= half_values

    explicit DiscretizedGrid(double eps);

    int finite_intervals() const { return static_cast<int>(2 * steps - 1); }
    int total_pieces() const { return static_cast<int>(2 * steps + 1); }
    int values_per_interval() const { return 2 * half_values + 1; }
    // Closed-form class size; +inf if it does not fit in a double.
    double class_size() const;
    // Finite interval index of y, or -1 for y <= -B, -2 for y >= B, -3 for y == 0.
    int interval_of(double y) const;
    // Left-to-right (lo, hi) of a finite interval.
    std::pair<double, double> interval_bounds(int idx) const;
};

struct DiscretizedSpec {
    double eps = 0.5;
    std::vector<int> levels; // value on finite interval i is levels[i] * eps

    double operator()(const DiscretizedGrid& g, double y) const;
};

// Lexicographic enumeration over the finite-interval values.
class DiscretizedEnumerator {
public:
    // Throws ClassTooLarge when the class has more than cap members.
    DiscretizedEnumerator(double eps, std::uint64_t cap = 1000000);

    const DiscretizedGrid& grid() const { return grid_; }
    std::uint64_t count() const { return count_; }
    bool next(DiscretizedSpec& out);

private:
    DiscretizedGrid grid_;
    std::uint64_t count_ = 0;
    std::vector<int> cur_;
    bool done_ = false;
};

double disc_value(const MaxQPInstance& inst, const Embedding& emb, const std::vector<double>& z,
                  const DiscretizedGrid& g, const DiscretizedSpec& spec);

struct DiscBest {
    DiscretizedSpec spec;
    double value = 0.0;
    std::uint64_t evaluated = 0;
};

DiscBest disc_best(const std::vector<RoundingSample>& samples, double eps, std::uint64_t cap = 1000000);

} // namespace ptune
