#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ptune/family.hpp"

namespace ptune {

// Dense symmetric metric over n points.
struct ClusteringInstance {
    int n = 0;
    std::vector<double> dist; // row-major n*n
    std::optional<std::vector<int>> ground_truth;
    std::optional<int> k_hint;

    ClusteringInstance() = default;
    explicit ClusteringInstance(int n_) : n(n_), dist(static_cast<std::size_t>(n_) * n_, 0.0) {}

    double d(int i, int j) const { return dist[static_cast<std::size_t>(i) * n + j]; }
    void set(int i, int j, double v) {
        dist[static_cast<std::size_t>(i) * n + j] = v;
        dist[static_cast<std::size_t>(j) * n + i] = v;
    }
};

enum class MaxQPOrigin { generic, maxcut };

// Integer quadratic program: maximize sum_ij a_ij x_i x_j over x in {-1,1}^n.
// For max-cut origin the graph weights are kept as well; the matrix is then
// a_ij = -w_ij/4 off the diagonal, so cut(x) = W/2 + x^T A x with W = sum_{i<j} w_ij.
struct MaxQPInstance {
    int n = 0;
    std::vector<double> matrix;  // row-major n*n
    MaxQPOrigin origin = MaxQPOrigin::generic;
    std::vector<double> weights; // row-major n*n, only for maxcut origin

    double a(int i, int j) const { return matrix[static_cast<std::size_t>(i) * n + j]; }
    double w(int i, int j) const { return weights[static_cast<std::size_t>(i) * n + j]; }
    bool is_maxcut() const { return origin == MaxQPOrigin::maxcut; }
};

// Builds a max-cut instance from a symmetric weight matrix with zero diagonal.
MaxQPInstance maxcut_instance(int n, std::vector<double> weights);

// n unit vectors of dimension dim, row-major.
struct Embedding {
    int n = 0;
    int dim = 0;
    std::vector<double> v;

    const double* row(int i) const { return v.data() + static_cast<std::size_t>(i) * dim; }
    double* row(int i) { return v.data() + static_cast<std::size_t>(i) * dim; }
};

enum class FixtureKind { oscillation, two_gadget, general_lb, k4_shatter };

std::string fixture_kind_name(FixtureKind k);

struct FixtureSpec {
    FixtureKind kind = FixtureKind::oscillation;
    Family family = Family::minmax_convex;
    std::vector<double> alphas;
    std::optional<double> alpha_star;
    double p = 1.0;
    double expected_witness = 0.0;
    std::vector<double> expected_profile;
    std::vector<double> expected_breakpoints;
    // Two-valued fixtures report their low/high levels here as well.
    double r_low = 0.0;
    double r_high = 0.0;
};

struct ValidationReport {
    bool is_symmetric = true;
    bool is_metric = true;
    double worst_triangle_violation = 0.0;
    int distinct_distance_count = 0;
    bool zero_diagonal = true;
    bool positive_off_diagonal = true;
};

ValidationReport validate(const ClusteringInstance& inst);

struct PartialEdge {
    int u;
    int v;
    double d;
};

// Fills every unspecified pair with its shortest-path distance over the specified edges.
ClusteringInstance complete_metric_max(int n, const std::vector<PartialEdge>& edges);

enum class OscillationFamily { convex_minmax, power_minmax };

struct Fixture {
    ClusteringInstance instance;
    FixtureSpec spec;
};

Fixture gen_oscillation(int n, const std::vector<double>& alphas, OscillationFamily family, double p);

// Family must be minmax_convex, minmax_power or average_power.
Fixture gen_two_gadget(double alpha_star, Family family, double p);

Fixture gen_general_lb(int rounds, const std::optional<std::vector<double>>& offsets = std::nullopt);

struct K4Fixture {
    MaxQPInstance instance;
    Embedding embedding;
    std::vector<double> z;
    double witness = 0.0;
};

// Constants of the K4 block projected on (1,5,5,1).
struct K4Constants {
    double a, b, c, d, c_tilde;
};
K4Constants k4_constants();

K4Fixture gen_k4_shatter(int n, int j);

// Points drawn uniformly from [0,1]^dim with Euclidean distances; ties have probability zero.
ClusteringInstance random_euclidean(int n, int dim, std::uint64_t seed);
// Each edge present with probability edge_prob, weight uniform in (0,1]; weights normalized to sum 1.
MaxQPInstance random_maxcut(int n, double edge_prob, std::uint64_t seed);

// File I/O.
using AnyInstance = std::variant<ClusteringInstance, MaxQPInstance>;

AnyInstance load_instance(const std::string& path);
ClusteringInstance load_clustering(const std::string& path);
MaxQPInstance load_maxqp(const std::string& path);
void save_instance(const ClusteringInstance& inst, const std::string& path);
void save_instance(const MaxQPInstance& inst, const std::string& path);
// "f.json" -> "f.fixture.json"; other names get ".fixture.json" appended.
std::string fixture_path(const std::string& instance_path);
void save_fixture(const FixtureSpec& spec, const std::string& instance_path);
FixtureSpec load_fixture(const std::string& instance_path);

Embedding load_embedding(const std::string& path);
void save_embedding(const Embedding& emb, const std::string& path);

} // namespace ptune
