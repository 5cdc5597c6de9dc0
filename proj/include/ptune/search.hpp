#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptune/expsum.hpp"
#include "ptune/family.hpp"
#include "ptune/instances.hpp"
#include "ptune/linkage.hpp"
#include "ptune/pruning.hpp"

namespace ptune {

// Piecewise-constant cost over a parameter range. Interval i spans
// (bound(i), bound(i+1)) where the bounds are lo, breakpoints..., hi.
struct PiecewiseProfile {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> breakpoints;
    std::vector<double> values;
    std::vector<double> representatives;
    // Cost evaluated exactly at each breakpoint; NaN where the parameter is outside the domain.
    std::vector<double> breakpoint_values;
    // Limit costs at infinite range ends, when the range is unbounded there.
    std::optional<double> lo_limit_value;
    std::optional<double> hi_limit_value;

    std::size_t intervals() const { return values.size(); }
    double bound(std::size_t i) const;
    // Cost of the interval containing x (breakpoints report their exact value when known).
    double value_at(double x) const;
    // Drops breakpoints whose neighbouring intervals have equal cost within rel_tol.
    PiecewiseProfile compacted(double rel_tol = 1e-12) const;
};

struct ErmResult {
    std::vector<double> best_param;          // alpha, (alpha, p) or a weight vector
    std::pair<double, double> best_interval; // alpha (or p for p-only searches)
    std::optional<std::pair<double, double>> best_p_interval; // joint search only
    double best_cost = 0.0;
    PiecewiseProfile profile;
    std::size_t instances_evaluated = 0;
    std::size_t runs = 0;                    // full pipeline evaluations
    std::size_t cells = 0;                   // joint search: number of (alpha, p) cells visited
    std::vector<std::vector<double>> certificate; // sigma-linear: active comparison normals
};

// Collects, for one evaluation at x, the nearest comparison roots on either side.
class SweepWindow {
public:
    SweepWindow(double lo, double x, double hi) : lo_(lo), x_(x), left_(lo), right_(hi) {}

    double x() const { return x_; }
    double left() const { return left_; }
    double right() const { return right_; }

    // Comparison value c0 + c1 * param.
    void offer_affine(double c0, double c1);
    void offer(const ExpSum& f);
    void offer(const Comparison& c);
    void merge(const SweepWindow& other);

private:
    double lo_, x_, left_, right_;
};

// Lazy breakpoint sweep. run(x, window) evaluates the pipeline at x, reports
// every executed comparison to the window and returns the total cost.
struct SweepOptions {
    bool eval_breakpoints = true;
    // Power families: 0 is a fixed breakpoint; evaluate there only if the family is defined at 0.
    std::vector<double> fixed_breakpoints;
    bool defined_at_fixed = true;
    // Clip for infinite ends; limit costs come from run(+-inf).
    double clip = 64.0;
    std::function<void(double lo, double hi, double cost)> on_interval;
};

using SweepRun = std::function<double(double x, SweepWindow& w)>;

PiecewiseProfile lazy_sweep(const SweepRun& run, double lo, double hi, const SweepOptions& opt = {},
                            std::size_t* runs = nullptr);

// Number of worker threads from PARTITION_TUNER_THREADS (0 or unset = hardware concurrency).
unsigned worker_threads();

struct ClusteringTask {
    std::vector<const ClusteringInstance*> instances;
    int k = 2;
    PruningRule rule{1.0};
    Objective objective = Objective::phi(1.0);
    AssignVariant variant = AssignVariant::fixed_partition;
};

// Total objective over the instances at a fixed merge rule and pruning rule.
double pipeline_cost(const ClusteringTask& task, const MergeRule& rule);

// The merge rule of a single-parameter family at parameter a.
MergeRule family_rule(Family f, double a, int sigma = 2);

PiecewiseProfile sweep_alpha(const ClusteringTask& task, Family family, std::pair<double, double> range,
                             std::size_t* runs = nullptr, int sigma = 2);
ErmResult erm_alpha(const ClusteringTask& task, Family family, std::pair<double, double> range, int sigma = 2);

// Sweep over the pruning exponent with the trees held fixed.
PiecewiseProfile sweep_p(const std::vector<const ClusterTree*>& trees, const ClusteringTask& task,
                         std::pair<double, double> p_range, std::size_t* runs = nullptr);
ErmResult erm_p(const std::vector<const ClusterTree*>& trees, const ClusteringTask& task,
                std::pair<double, double> p_range);

// Joint (alpha, p) search: an outer alpha sweep whose cells carry an inner p sweep.
ErmResult erm_joint(const ClusteringTask& task, Family family, std::pair<double, double> alpha_range,
                    std::pair<double, double> p_range);

struct SigmaLinearOptions {
    bool exact = true;
    std::uint64_t seed = 0;
    int starts = 64; // sigma >= 3 random restarts
};

// Weight search for the sigma-linear family over the box [box[i].first, box[i].second].
// sigma = 2 is exact; sigma >= 3 needs exact = false.
ErmResult erm_sigma_linear(const ClusteringTask& task, int sigma, const std::vector<std::pair<double, double>>& box,
                           const SigmaLinearOptions& opt = {});

// Breakpoint candidates of the convex family from the 8-point equations,
// d1 + a (d2 - d1) versus d3 + a (d4 - d3) over all point 8-tuples; n <= 12.
std::vector<double> convex_breakpoint_candidates(const ClusteringInstance& inst);

std::uint64_t sample_size(double H, double eps, double delta, double pdim, double c = 1.0);

struct PdimBound {
    std::string asymptotic;
    double value = 0.0;
    std::string note;
};

// Order-of-magnitude pseudo-dimension with unit constant, log base 2.
// cls: a family name or "beta-restricted".
PdimBound pdim_table(const std::string& cls, int n, int sigma = 2, int beta = 1);

} // namespace ptune
