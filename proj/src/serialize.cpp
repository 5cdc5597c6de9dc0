#include "ptune/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "ptune/error.hpp"

namespace ptune {

namespace {

constexpr const char* kSchema = "partition-tuner/1";

std::string fmt_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json reals(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(real_to_json(x));
    return a;
}

json interval(std::pair<double, double> iv) { return json::array({real_to_json(iv.first), real_to_json(iv.second)}); }

} // namespace

json real_to_json(double v) {
    if (std::isfinite(v)) return v;
    return fmt_real(v);
}

double real_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw Error(ErrorCode::parse_error, "expected a real number, got " + j.dump());
}

json to_json(const ClusterTree& tree) {
    json merges = json::array();
    for (int v = tree.n; v < static_cast<int>(tree.nodes.size()); ++v) {
        const TreeNode& t = tree.nodes[v];
        merges.push_back(json::array({t.left, t.right, real_to_json(t.merge_value)}));
    }
    return {{"type", "tree"}, {"n", tree.n}, {"merges", merges}};
}

ClusterTree tree_from_json(const json& j) {
    try {
        ClusterTree t;
        t.n = j.at("n").get<int>();
        if (t.n < 1) throw Error(ErrorCode::parse_error, "tree needs n >= 1");
        t.nodes.resize(t.n);
        for (int i = 0; i < t.n; ++i) t.nodes[i].min_leaf = i;
        const json& m = j.at("merges");
        if (static_cast<int>(m.size()) != t.n - 1) throw Error(ErrorCode::dimension_mismatch, "tree needs n-1 merges");
        for (std::size_t s = 0; s < m.size(); ++s) {
            TreeNode node;
            node.left = m[s].at(0).get<int>();
            node.right = m[s].at(1).get<int>();
            node.merge_value = real_from_json(m[s].at(2));
            node.merge_order = static_cast<int>(s);
            const int id = t.n + static_cast<int>(s);
            if (node.left < 0 || node.right < 0 || node.left >= id || node.right >= id || node.left == node.right)
                throw Error(ErrorCode::parse_error, "merge refers to a node that does not exist yet");
            node.min_leaf = std::min(t.nodes[node.left].min_leaf, t.nodes[node.right].min_leaf);
            node.size = t.nodes[node.left].size + t.nodes[node.right].size;
            t.nodes.push_back(node);
        }
        return t;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::parse_error, std::string("tree: ") + e.what());
    }
}

json to_json(const PruningResult& r) {
    return {{"type", "pruning"},
            {"nodes", r.nodes},
            {"clusters", r.clusters},
            {"centers", r.centers},
            {"score", real_to_json(r.score)},
            {"variant", variant_name(r.variant)}};
}

json to_json(const PiecewiseProfile& p) {
    json j = {{"type", "profile"},
              {"lo", real_to_json(p.lo)},
              {"hi", real_to_json(p.hi)},
              {"breakpoints", reals(p.breakpoints)},
              {"values", reals(p.values)},
              {"representatives", reals(p.representatives)},
              {"breakpoint_values", reals(p.breakpoint_values)}};
    if (p.lo_limit_value) j["lo_limit_value"] = real_to_json(*p.lo_limit_value);
    if (p.hi_limit_value) j["hi_limit_value"] = real_to_json(*p.hi_limit_value);
    return j;
}

json to_json(const ErmResult& r) {
    json j = {{"type", "erm"},
              {"best_param", reals(r.best_param)},
              {"best_interval", interval(r.best_interval)},
              {"best_cost", real_to_json(r.best_cost)},
              {"instances_evaluated", r.instances_evaluated},
              {"runs", r.runs},
              {"profile", to_json(r.profile)}};
    if (r.best_p_interval) j["best_p_interval"] = interval(*r.best_p_interval);
    if (r.cells) j["cells"] = r.cells;
    if (!r.certificate.empty()) {
        json c = json::array();
        for (const auto& v : r.certificate) c.push_back(reals(v));
        j["certificate"] = c;
    }
    return j;
}

json to_json(const RoundingErmResult& r) {
    return {{"type", "rounding_erm"},
            {"best_param", real_to_json(r.best_param)},
            {"best_value", real_to_json(r.best_value)},
            {"best_interval", r.best_interval},
            {"lo", real_to_json(r.lo)},
            {"hi", real_to_json(r.hi)},
            {"thresholds", reals(r.thresholds)},
            {"values", reals(r.values)},
            {"argmax", reals(r.argmax)}};
}

json to_json(const DiscretizedGrid& g, const DiscretizedSpec& spec) {
    json iv = json::array();
    for (int i = 0; i < g.finite_intervals(); ++i) {
        const auto b = g.interval_bounds(i);
        iv.push_back(json::array({b.first, b.second}));
    }
    std::vector<double> values;
    for (int l : spec.levels) values.push_back(l * g.eps);
    return {{"type", "discretized"}, {"eps", g.eps}, {"B", g.B}, {"intervals", iv}, {"levels", spec.levels},
            {"values", values}};
}

std::string profile_csv(const PiecewiseProfile& p) {
    std::ostringstream out;
    out << "parameter,cost\n";
    for (std::size_t i = 0; i < p.values.size(); ++i)
        out << fmt_real(p.representatives[i]) << ',' << fmt_real(p.values[i]) << '\n';
    for (std::size_t i = 0; i < p.breakpoint_values.size() && i < p.breakpoints.size(); ++i)
        if (!std::isnan(p.breakpoint_values[i]))
            out << fmt_real(p.breakpoints[i]) << ',' << fmt_real(p.breakpoint_values[i]) << '\n';
    return out.str();
}

std::string rounding_csv(const RoundingErmResult& r) {
    std::ostringstream out;
    out << "parameter,value\n";
    for (std::size_t i = 0; i < r.values.size(); ++i) out << fmt_real(r.argmax[i]) << ',' << fmt_real(r.values[i]) << '\n';
    return out.str();
}

void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::parse_error, "cannot write '" + path + "'");
    out << j.dump(1) << '\n';
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::parse_error, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::parse_error, path + ": " + e.what());
    }
}

void save_samples(const std::vector<SampleRecord>& samples, const std::string& path) {
    json arr = json::array();
    for (const SampleRecord& s : samples) {
        json e = {{"instance", s.instance}, {"embedding", s.embedding}, {"z", s.z}};
        if (!s.q.empty()) e["q"] = s.q;
        arr.push_back(e);
    }
    write_json_file({{"schema", kSchema}, {"type", "samples"}, {"samples", arr}}, path);
}

std::vector<SampleRecord> load_samples(const std::string& path) {
    const json j = read_json_file(path);
    if (!j.is_object() || j.value("schema", "") != kSchema || j.value("type", "") != "samples")
        throw Error(ErrorCode::parse_error, path + ": not a sample bundle");
    std::vector<SampleRecord> out;
    try {
        for (const json& e : j.at("samples")) {
            SampleRecord s;
            s.instance = e.at("instance").get<std::string>();
            s.embedding = e.at("embedding").get<std::string>();
            s.z = e.at("z").get<std::vector<double>>();
            if (e.contains("q")) s.q = e["q"].get<std::vector<double>>();
            out.push_back(std::move(s));
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::parse_error, path + ": " + e.what());
    }
    return out;
}

} // namespace ptune
