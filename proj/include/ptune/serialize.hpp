#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ptune/linkage.hpp"
#include "ptune/pruning.hpp"
#include "ptune/sdp.hpp"
#include "ptune/search.hpp"

namespace ptune {

using json = nlohmann::json;

// Finite reals as numbers; infinities and NaN as the strings "inf", "-inf", "nan".
json real_to_json(double v);
double real_from_json(const json& j);

// Merge-order triples [left, right, merge value] plus n.
json to_json(const ClusterTree& tree);
ClusterTree tree_from_json(const json& j);

json to_json(const PruningResult& r);
json to_json(const PiecewiseProfile& p);
json to_json(const ErmResult& r);
json to_json(const RoundingErmResult& r);
json to_json(const DiscretizedGrid& g, const DiscretizedSpec& spec);

// Rows "parameter,cost": one row per interval at its representative, then one per evaluated breakpoint.
std::string profile_csv(const PiecewiseProfile& p);
std::string rounding_csv(const RoundingErmResult& r);

// Sample bundle: {"schema", "type":"samples", "samples":[{"instance","embedding","z","q"?}]}.
// Paths are stored as written; relative paths resolve against the working directory.
struct SampleRecord {
    std::string instance;
    std::string embedding;
    std::vector<double> z;
    std::vector<double> q;
};

void save_samples(const std::vector<SampleRecord>& samples, const std::string& path);
std::vector<SampleRecord> load_samples(const std::string& path);

void write_json_file(const json& j, const std::string& path);
json read_json_file(const std::string& path);

} // namespace ptune
