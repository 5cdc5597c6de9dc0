#include "ptune/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "ptune/error.hpp"
#include "ptune/instances.hpp"
#include "ptune/linkage.hpp"
#include "ptune/pruning.hpp"
#include "ptune/sdp.hpp"
#include "ptune/search.hpp"
#include "ptune/serialize.hpp"

namespace ptune {

namespace {

constexpr const char* kSchema = "partition-tuner/1";

// Options that are never stored in a saved run configuration.
bool transient_option(const std::string& name) { return name == "save-config" || name == "help"; }

double parse_real(const std::string& s) {
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw Error(ErrorCode::invalid_argument, "not a number: '" + s + "'");
    }
    if (used != s.size()) throw Error(ErrorCode::invalid_argument, "not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> v;
    for (const std::string& t : split(s, ',')) v.push_back(parse_real(t));
    return v;
}

std::pair<double, double> parse_range(const std::string& s) {
    const std::vector<double> v = parse_list(s);
    if (v.size() != 2) throw Error(ErrorCode::invalid_argument, "range must be 'lo,hi', got '" + s + "'");
    return {v[0], v[1]};
}

std::string fmt(double v, int prec = 10) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    return buf;
}

Objective make_objective(const std::string& name, double p) {
    Objective o;
    if (name == "phi")
        o = Objective::phi(p);
    else if (name == "phi-sum")
        o = Objective::phi_power_sum(p);
    else if (name == "ground-truth")
        o = Objective::ground_truth_distance();
    else if (name == "kcenter")
        o = Objective::kcenter();
    else
        throw Error(ErrorCode::invalid_argument, "unknown objective '" + name + "'");
    check_objective(o);
    return o;
}

void write_text(const std::string& text, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::parse_error, "cannot write '" + path + "'");
    f << text;
}

// Everything a subcommand can read; fields are bound to options as needed.
struct Args {
    // shared
    std::uint64_t seed = 0;
    double tol = 1e-10;
    std::string out;
    std::string csv;
    std::string save_config;
    std::string variant = "fixed";
    std::uint64_t cap = 1000000;
    // generators
    std::string kind;
    std::string alphas;
    std::string family = "minmax-convex";
    std::string p = "1";
    int n = 0;
    double alpha_star = 0.5;
    int rounds = 3;
    std::string offsets;
    int j = 1;
    int dim = 2;
    double edge_prob = 0.5;
    // clustering
    std::string path;
    std::string instance;
    std::string instances;
    std::string tree;
    double alpha = 0.5;
    int sigma = 2;
    std::string weights;
    int k = 2;
    std::string objective = "phi";
    std::string obj_p = "1";
    std::string range = "0,1";
    std::string alpha_range = "0,1";
    std::string p_range = "1,3";
    std::string box;
    int starts = 64;
    // sdp
    std::string embedding;
    std::string samples;
    int draws = 1;
    int rank = 0;
    int max_iters = 10000;
    double grad_tol = 1e-6;
    std::string baseline = "linear";
    double eps_disc = 0.7;
    // calculators
    double H = 1.0;
    double eps = 0.1;
    double delta = 0.05;
    double pdim = 1.0;
    double c = 1.0;
    std::string cls;
    int beta = 1;
};

struct Ctx {
    std::ostream& out;
    std::ostream& err;
    Args a;
};

void emit(Ctx& ctx, const json& result, const std::string& table) {
    if (ctx.a.out.empty()) {
        ctx.out << result.dump(1) << '\n';
    } else {
        write_json_file(result, ctx.a.out);
        ctx.out << table;
    }
}

std::vector<ClusteringInstance> load_many(const std::string& list) {
    std::vector<ClusteringInstance> v;
    for (const std::string& p : split(list, ',')) v.push_back(load_clustering(p));
    if (v.empty()) throw Error(ErrorCode::invalid_argument, "--instances is empty");
    return v;
}

ClusteringTask make_task(const Args& a, const std::vector<ClusteringInstance>& insts) {
    ClusteringTask t;
    for (const auto& i : insts) t.instances.push_back(&i);
    t.k = a.k;
    t.rule.p = parse_real(a.p);
    t.objective = make_objective(a.objective, parse_real(a.obj_p));
    t.variant = parse_variant(a.variant);
    return t;
}

MergeRule rule_from_args(const Args& a) {
    const Family f = parse_family(a.family);
    MergeRule r;
    if (f == Family::sigma_linear) {
        r = MergeRule::sigma_linear(parse_list(a.weights));
    } else {
        r = family_rule(f, a.alpha, a.sigma);
    }
    check_rule(r);
    return r;
}

std::string profile_table(const PiecewiseProfile& p) {
    std::ostringstream t;
    t << "interval                                   cost\n";
    for (std::size_t i = 0; i < p.intervals(); ++i) {
        std::string iv = "(" + fmt(p.bound(i)) + ", " + fmt(p.bound(i + 1)) + ")";
        iv.resize(std::max<std::size_t>(iv.size(), 42), ' ');
        t << iv << ' ' << fmt(p.values[i], 15) << '\n';
    }
    return t.str();
}

// ---------------------------------------------------------------- commands

int cmd_gen(Ctx& ctx) {
    const Args& a = ctx.a;
    if (a.out.empty()) throw Error(ErrorCode::invalid_argument, "gen needs --out");
    std::ostringstream t;
    if (a.kind == "oscillation") {
        const Family f = parse_family(a.family);
        OscillationFamily of;
        if (f == Family::minmax_convex)
            of = OscillationFamily::convex_minmax;
        else if (f == Family::minmax_power)
            of = OscillationFamily::power_minmax;
        else
            throw Error(ErrorCode::invalid_argument, "oscillation supports minmax-convex and minmax-power");
        const std::vector<double> alphas = parse_list(a.alphas);
        // Smallest admissible size: n = 2 + 6g with n / 7 >= number of alphas.
        int n = a.n;
        if (n <= 0) {
            n = std::max(8, 7 * static_cast<int>(alphas.size()));
            while ((n - 2) % 6 != 0) ++n;
        }
        Fixture fx = gen_oscillation(n, alphas, of, parse_real(a.p));
        save_instance(fx.instance, a.out);
        save_fixture(fx.spec, a.out);
        t << "oscillation n=" << fx.instance.n << " intervals=" << fx.spec.expected_profile.size()
          << " r_low=" << fmt(fx.spec.r_low, 15) << " r_high=" << fmt(fx.spec.r_high, 15) << '\n';
    } else if (a.kind == "two-gadget") {
        Fixture fx = gen_two_gadget(a.alpha_star, parse_family(a.family), parse_real(a.p));
        save_instance(fx.instance, a.out);
        save_fixture(fx.spec, a.out);
        t << "two-gadget n=" << fx.instance.n << " alpha*=" << fmt(a.alpha_star) << '\n';
    } else if (a.kind == "general-lb") {
        std::optional<std::vector<double>> off;
        if (!a.offsets.empty()) off = parse_list(a.offsets);
        Fixture fx = gen_general_lb(a.rounds, off);
        save_instance(fx.instance, a.out);
        save_fixture(fx.spec, a.out);
        t << "general-lb n=" << fx.instance.n << " breakpoints=" << fx.spec.expected_breakpoints.size() << '\n';
    } else if (a.kind == "k4-shatter") {
        const int n = a.n > 0 ? a.n : 20;
        K4Fixture fx = gen_k4_shatter(n, a.j);
        save_instance(fx.instance, a.out);
        const std::string base = fixture_path(a.out);
        const std::string stem = base.substr(0, base.size() - std::string(".fixture.json").size());
        const std::string emb_path = stem + ".embedding.json";
        save_embedding(fx.embedding, emb_path);
        FixtureSpec spec;
        spec.kind = FixtureKind::k4_shatter;
        spec.expected_witness = fx.witness;
        save_fixture(spec, a.out);
        save_samples({{a.out, emb_path, fx.z, {}}}, stem + ".samples.json");
        t << "k4-shatter n=" << n << " j=" << a.j << " witness=" << fmt(fx.witness, 15) << '\n';
    } else if (a.kind == "random-metric") {
        save_instance(random_euclidean(a.n > 0 ? a.n : 10, a.dim, a.seed), a.out);
        t << "random-metric written\n";
    } else if (a.kind == "random-maxcut") {
        save_instance(random_maxcut(a.n > 0 ? a.n : 10, a.edge_prob, a.seed), a.out);
        t << "random-maxcut written\n";
    } else {
        throw Error(ErrorCode::invalid_argument, "unknown generator '" + a.kind + "'");
    }
    ctx.out << t.str();
    return 0;
}

int cmd_validate(Ctx& ctx) {
    const ClusteringInstance inst = load_clustering(ctx.a.path);
    const ValidationReport r = validate(inst);
    const json j = {{"type", "validation"},
                    {"is_symmetric", r.is_symmetric},
                    {"is_metric", r.is_metric},
                    {"worst_triangle_violation", r.worst_triangle_violation},
                    {"distinct_distance_count", r.distinct_distance_count},
                    {"zero_diagonal", r.zero_diagonal},
                    {"positive_off_diagonal", r.positive_off_diagonal}};
    std::ostringstream t;
    t << "symmetric " << r.is_symmetric << "\nmetric " << r.is_metric << "\nworst triangle violation "
      << fmt(r.worst_triangle_violation) << "\ndistinct distances " << r.distinct_distance_count << '\n';
    emit(ctx, j, t.str());
    const bool ok = r.is_symmetric && r.is_metric && r.zero_diagonal && r.positive_off_diagonal &&
                    r.worst_triangle_violation <= ctx.a.tol;
    if (!ok) ctx.err << "validate: instance is not a metric\n";
    return ok ? 0 : 2;
}

int cmd_tree(Ctx& ctx) {
    const ClusteringInstance inst = load_clustering(ctx.a.instance);
    const ClusterTree tree = build_tree(inst, rule_from_args(ctx.a));
    std::ostringstream t;
    for (const auto& [l, r] : tree.signature()) t << l << " + " << r << '\n';
    emit(ctx, to_json(tree), t.str());
    return 0;
}

int cmd_prune(Ctx& ctx) {
    const Args& a = ctx.a;
    const ClusteringInstance inst = load_clustering(a.instance);
    const ClusterTree tree = a.tree.empty() ? build_tree(inst, rule_from_args(a)) : tree_from_json(read_json_file(a.tree));
    PruneOptions po;
    po.variant = parse_variant(a.variant);
    const PruningResult r = best_k_pruning(tree, a.k, PruningRule{parse_real(a.p)}, inst, po);
    const Objective obj = make_objective(a.objective, parse_real(a.obj_p));
    json j = to_json(r);
    j["objective"] = objective_name(obj);
    j["objective_value"] = real_to_json(objective_value(obj, r, inst));
    std::ostringstream t;
    for (std::size_t c = 0; c < r.clusters.size(); ++c) {
        t << "center " << r.centers[c] << ":";
        for (int q : r.clusters[c]) t << ' ' << q;
        t << '\n';
    }
    t << "score " << fmt(r.score, 15) << "\n" << objective_name(obj) << ' '
      << fmt(objective_value(obj, r, inst), 15) << '\n';
    emit(ctx, j, t.str());
    return 0;
}

int cmd_sweep_alpha(Ctx& ctx) {
    const Args& a = ctx.a;
    const auto insts = load_many(a.instances);
    const ClusteringTask task = make_task(a, insts);
    std::size_t runs = 0;
    const PiecewiseProfile p = sweep_alpha(task, parse_family(a.family), parse_range(a.range), &runs, a.sigma);
    json j = to_json(p);
    j["runs"] = runs;
    j["compacted"] = to_json(p.compacted(a.tol));
    if (!a.csv.empty()) write_text(profile_csv(p), a.csv);
    emit(ctx, j, profile_table(p));
    return 0;
}

int cmd_erm_alpha(Ctx& ctx) {
    const Args& a = ctx.a;
    const auto insts = load_many(a.instances);
    const ClusteringTask task = make_task(a, insts);
    const Family f = parse_family(a.family);
    ErmResult r;
    if (f == Family::sigma_linear) {
        std::vector<std::pair<double, double>> box;
        for (const std::string& b : split(a.box, ';')) box.push_back(parse_range(b));
        SigmaLinearOptions so;
        so.seed = a.seed;
        so.starts = a.starts;
        so.exact = a.sigma == 2;
        r = erm_sigma_linear(task, a.sigma, box, so);
    } else {
        r = erm_alpha(task, f, parse_range(a.range), a.sigma);
    }
    if (!a.csv.empty()) write_text(profile_csv(r.profile), a.csv);
    std::ostringstream t;
    t << profile_table(r.profile) << "best cost " << fmt(r.best_cost, 15) << " on (" << fmt(r.best_interval.first)
      << ", " << fmt(r.best_interval.second) << ")\n";
    emit(ctx, to_json(r), t.str());
    return 0;
}

int cmd_erm_joint(Ctx& ctx) {
    const Args& a = ctx.a;
    const auto insts = load_many(a.instances);
    const ClusteringTask task = make_task(a, insts);
    const ErmResult r = erm_joint(task, parse_family(a.family), parse_range(a.alpha_range), parse_range(a.p_range));
    if (!a.csv.empty()) write_text(profile_csv(r.profile), a.csv);
    std::ostringstream t;
    t << "best cost " << fmt(r.best_cost, 15) << " at alpha in (" << fmt(r.best_interval.first) << ", "
      << fmt(r.best_interval.second) << ")";
    if (r.best_p_interval)
        t << ", p in (" << fmt(r.best_p_interval->first) << ", " << fmt(r.best_p_interval->second) << ")";
    t << "\ncells " << r.cells << '\n';
    emit(ctx, to_json(r), t.str());
    return 0;
}

int cmd_embed(Ctx& ctx) {
    const Args& a = ctx.a;
    if (a.out.empty()) throw Error(ErrorCode::invalid_argument, "embed needs --out");
    const MaxQPInstance inst = load_maxqp(a.instance);
    BmOptions o;
    o.rank = a.rank;
    o.seed = a.seed;
    o.max_iters = a.max_iters;
    o.grad_tol = a.grad_tol;
    const BmResult r = embed_bm(inst, o);
    save_embedding(r.embedding, a.out);
    ctx.out << "objective " << fmt(r.objective, 15) << "\niterations " << r.iterations << "\nconverged "
            << (r.converged ? "yes" : "no (NonConvergence)") << '\n';
    return 0;
}

// Loaded rounding samples; owns the instances and embeddings they point to.
struct SampleSet {
    std::vector<std::unique_ptr<MaxQPInstance>> insts;
    std::vector<std::unique_ptr<Embedding>> embs;
    std::vector<RoundingSample> samples;
};

enum class Draw { slin, owr, rprt };

SampleSet load_rounding_samples(const Args& a, Draw kind) {
    SampleSet s;
    const Baseline b = parse_baseline(a.baseline);
    std::map<std::string, MaxQPInstance*> inst_cache;
    std::map<std::string, Embedding*> emb_cache;
    auto get_inst = [&](const std::string& p) {
        auto it = inst_cache.find(p);
        if (it != inst_cache.end()) return it->second;
        s.insts.push_back(std::make_unique<MaxQPInstance>(load_maxqp(p)));
        return inst_cache[p] = s.insts.back().get();
    };
    auto get_emb = [&](const std::string& p) {
        auto it = emb_cache.find(p);
        if (it != emb_cache.end()) return it->second;
        s.embs.push_back(std::make_unique<Embedding>(load_embedding(p)));
        return emb_cache[p] = s.embs.back().get();
    };
    if (!a.samples.empty()) {
        for (const SampleRecord& r : load_samples(a.samples)) {
            RoundingSample rs{get_inst(r.instance), get_emb(r.embedding), r.z, r.q};
            if (kind == Draw::rprt && rs.q.empty()) {
                // Thresholds were not stored; draw them from a stream disjoint from Z draws.
                std::vector<double> z;
                sample_zq(a.seed, s.samples.size() + (1ULL << 32), 0, rs.instance->n, b, z, rs.q);
            }
            s.samples.push_back(std::move(rs));
        }
    } else {
        if (a.instance.empty() || a.embedding.empty())
            throw Error(ErrorCode::invalid_argument, "give --samples or both --instance and --embedding");
        const MaxQPInstance* inst = get_inst(a.instance);
        const Embedding* emb = get_emb(a.embedding);
        if (a.draws < 1) throw Error(ErrorCode::invalid_argument, "--draws must be positive");
        const int dim = emb->dim + (kind == Draw::owr ? emb->n : 0);
        for (int d = 0; d < a.draws; ++d) {
            RoundingSample rs{inst, emb, {}, {}};
            if (kind == Draw::rprt)
                sample_zq(a.seed, static_cast<std::uint64_t>(d), dim, emb->n, b, rs.z, rs.q);
            else
                rs.z = sample_z(a.seed, static_cast<std::uint64_t>(d), dim);
            s.samples.push_back(std::move(rs));
        }
    }
    return s;
}

int emit_rounding(Ctx& ctx, const RoundingErmResult& r, const std::string& param) {
    if (!ctx.a.csv.empty()) write_text(rounding_csv(r), ctx.a.csv);
    std::ostringstream t;
    t << "thresholds " << r.thresholds.size() << "\nbest " << param << ' ' << fmt(r.best_param, 15) << "\nbest value "
      << fmt(r.best_value, 15) << '\n';
    emit(ctx, to_json(r), t.str());
    return 0;
}

int cmd_erm_slin(Ctx& ctx) {
    SampleSet s = load_rounding_samples(ctx.a, Draw::slin);
    return emit_rounding(ctx, slin_erm(s.samples), "s");
}

int cmd_erm_owr(Ctx& ctx) {
    SampleSet s = load_rounding_samples(ctx.a, Draw::owr);
    return emit_rounding(ctx, owr_erm(s.samples), "gamma");
}

int cmd_erm_rprt(Ctx& ctx) {
    SampleSet s = load_rounding_samples(ctx.a, Draw::rprt);
    return emit_rounding(ctx, rprt_erm(s.samples), "s");
}

int cmd_erm_disc(Ctx& ctx) {
    SampleSet s = load_rounding_samples(ctx.a, Draw::slin);
    const DiscBest b = disc_best(s.samples, ctx.a.eps_disc, ctx.a.cap);
    const DiscretizedGrid g(ctx.a.eps_disc);
    json j = to_json(g, b.spec);
    j["best_value"] = real_to_json(b.value);
    j["evaluated"] = b.evaluated;
    std::ostringstream t;
    t << "functions " << b.evaluated << "\nbest value " << fmt(b.value, 15) << "\nlevels";
    for (int l : b.spec.levels) t << ' ' << l;
    t << '\n';
    emit(ctx, j, t.str());
    return 0;
}

int cmd_sample_size(Ctx& ctx) {
    const Args& a = ctx.a;
    const std::uint64_t m = sample_size(a.H, a.eps, a.delta, a.pdim, a.c);
    const json j = {{"type", "sample_size"}, {"m", m}, {"H", a.H}, {"eps", a.eps}, {"delta", a.delta},
                    {"pdim", a.pdim}, {"c", a.c}};
    emit(ctx, j, "m " + std::to_string(m) + "\n");
    return 0;
}

int cmd_pdim(Ctx& ctx) {
    const Args& a = ctx.a;
    const PdimBound b = pdim_table(a.cls, a.n, a.sigma, a.beta);
    const json j = {{"type", "pdim"}, {"class", a.cls}, {"asymptotic", b.asymptotic}, {"value", b.value},
                    {"note", b.note}};
    emit(ctx, j, b.asymptotic + "  " + fmt(b.value) + "  (" + b.note + ")\n");
    return 0;
}

// ---------------------------------------------------------------- run configs

json collect_config(const CLI::App* sub) {
    json opts = json::object();
    json pos = json::array();
    for (const CLI::Option* o : sub->get_options()) {
        if (o->get_lnames().empty()) {
            // positional
            if (o->count() > 0) pos.push_back(o->results().front());
            continue;
        }
        const std::string lname = o->get_lnames().front();
        if (transient_option(lname)) continue;
        if (o->count() > 0)
            opts[lname] = o->results().front();
        else if (!o->get_default_str().empty())
            opts[lname] = o->get_default_str();
    }
    return {{"schema", kSchema}, {"type", "run_config"}, {"command", sub->get_name()}, {"positionals", pos},
            {"options", opts}};
}

std::vector<std::string> config_to_args(const json& cfg) {
    if (!cfg.is_object() || cfg.value("schema", "") != kSchema || cfg.value("type", "") != "run_config")
        throw Error(ErrorCode::parse_error, "not a run configuration");
    std::vector<std::string> args;
    try {
        args.push_back(cfg.at("command").get<std::string>());
        for (const json& p : cfg.at("positionals")) args.push_back(p.get<std::string>());
        for (const auto& [k, v] : cfg.at("options").items()) {
            args.push_back("--" + k);
            args.push_back(v.get<std::string>());
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::parse_error, std::string("run configuration: ") + e.what());
    }
    return args;
}

} // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Ctx ctx{out, err, {}};
    Args& a = ctx.a;
    CLI::App app{"Parameter tuning for linkage clustering and SDP rounding", "ptune"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(0, 1);
    std::string config;
    app.add_option("--config", config, "Re-run a saved run configuration");

    std::map<const CLI::App*, std::function<int(Ctx&)>> handlers;
    auto command = [&](const char* name, const char* desc, std::function<int(Ctx&)> h) {
        CLI::App* s = app.add_subcommand(name, desc);
        s->add_option("--seed", a.seed, "Master seed");
        s->add_option("--tol", a.tol, "Equality tolerance for reported values");
        s->add_option("--out", a.out, "JSON output path");
        s->add_option("--save-config", a.save_config, "Write the resolved run configuration here");
        handlers[s] = std::move(h);
        return s;
    };
    auto clustering = [&](CLI::App* s) {
        s->add_option("--family", a.family, "Merge family");
        s->add_option("--sigma", a.sigma, "Pairs used by the sigma families");
        s->add_option("--k", a.k, "Number of clusters");
        s->add_option("--p", a.p, "Pruning exponent (inf allowed)");
        s->add_option("--objective", a.objective, "phi | phi-sum | ground-truth | kcenter");
        s->add_option("--obj-p", a.obj_p, "Objective exponent");
        s->add_option("--variant", a.variant, "fixed | voronoi");
    };
    auto rounding = [&](CLI::App* s) {
        s->add_option("--samples", a.samples, "Sample bundle");
        s->add_option("--instance", a.instance, "Max-QP instance");
        s->add_option("--embedding", a.embedding, "Embedding file");
        s->add_option("--draws", a.draws, "Number of seeded projection draws");
        s->add_option("--csv", a.csv, "CSV of (parameter, value) per interval");
    };

    CLI::App* gen = command("gen", "Generate an instance", cmd_gen);
    gen->add_option("kind", a.kind, "oscillation | two-gadget | general-lb | k4-shatter | random-metric | random-maxcut")
        ->required();
    gen->add_option("--alphas", a.alphas, "Comma-separated alphas");
    gen->add_option("--family", a.family, "Merge family");
    gen->add_option("--p", a.p, "Objective exponent");
    gen->add_option("--n", a.n, "Point count");
    gen->add_option("--alpha-star", a.alpha_star, "Target alpha of the two-gadget instance");
    gen->add_option("--rounds", a.rounds, "Rounds of the general construction");
    gen->add_option("--offsets", a.offsets, "Comma-separated offsets");
    gen->add_option("--j", a.j, "Witness index of the K4 construction");
    gen->add_option("--dim", a.dim, "Dimension of random points");
    gen->add_option("--edge-prob", a.edge_prob, "Edge probability of random graphs");

    CLI::App* val = command("validate", "Check an instance file", cmd_validate);
    val->add_option("path", a.path, "Instance file")->required();

    CLI::App* tree = command("tree", "Build a cluster tree", cmd_tree);
    tree->add_option("--instance", a.instance, "Clustering instance")->required();
    tree->add_option("--family", a.family, "Merge family");
    tree->add_option("--alpha", a.alpha, "Family parameter");
    tree->add_option("--sigma", a.sigma, "Pairs used by the sigma families");
    tree->add_option("--weights", a.weights, "Sigma-linear weights");

    CLI::App* prune = command("prune", "Best k-pruning of a tree", cmd_prune);
    prune->add_option("--instance", a.instance, "Clustering instance")->required();
    prune->add_option("--tree", a.tree, "Tree JSON (default: build one)");
    prune->add_option("--alpha", a.alpha, "Family parameter");
    prune->add_option("--weights", a.weights, "Sigma-linear weights");
    clustering(prune);

    CLI::App* sweep = command("sweep-alpha", "Cost profile over alpha", cmd_sweep_alpha);
    sweep->add_option("--instances", a.instances, "Comma-separated instance files")->required();
    sweep->add_option("--range", a.range, "lo,hi");
    sweep->add_option("--csv", a.csv, "CSV of (parameter, cost)");
    clustering(sweep);

    CLI::App* erm = command("erm-alpha", "Best alpha over a sample", cmd_erm_alpha);
    erm->add_option("--instances", a.instances, "Comma-separated instance files")->required();
    erm->add_option("--range", a.range, "lo,hi");
    erm->add_option("--box", a.box, "Sigma-linear weight box 'lo,hi;lo,hi'");
    erm->add_option("--starts", a.starts, "Random restarts for sigma >= 3");
    erm->add_option("--csv", a.csv, "CSV of (parameter, cost)");
    clustering(erm);

    CLI::App* joint = command("erm-joint", "Best (alpha, p) over a sample", cmd_erm_joint);
    joint->add_option("--instances", a.instances, "Comma-separated instance files")->required();
    joint->add_option("--alpha-range", a.alpha_range, "lo,hi");
    joint->add_option("--p-range", a.p_range, "lo,hi");
    joint->add_option("--csv", a.csv, "CSV of (alpha, cost)");
    clustering(joint);

    CLI::App* embed = command("embed", "Low-rank SDP embedding", cmd_embed);
    embed->add_option("--instance", a.instance, "Max-QP instance")->required();
    embed->add_option("--rank", a.rank, "Factor rank (0 = ceil(sqrt(2n)))");
    embed->add_option("--max-iters", a.max_iters, "Iteration cap");
    embed->add_option("--grad-tol", a.grad_tol, "Gradient tolerance");

    rounding(command("erm-slin", "Best s-linear rounding", cmd_erm_slin));
    rounding(command("erm-owr", "Best outward rotation", cmd_erm_owr));
    CLI::App* rprt = command("erm-rprt", "Best randomized-threshold rounding", cmd_erm_rprt);
    rounding(rprt);
    rprt->add_option("--baseline", a.baseline, "linear | tanh");
    CLI::App* disc = command("erm-disc", "Best discretized rounding function", cmd_erm_disc);
    rounding(disc);
    disc->add_option("--eps", a.eps_disc, "Grid step in (0,1)");
    disc->add_option("--cap", a.cap, "Largest class to enumerate");

    CLI::App* ss = command("sample-size", "Uniform-convergence sample size", cmd_sample_size);
    ss->add_option("--H", a.H, "Range of the cost");
    ss->add_option("--eps", a.eps, "Accuracy");
    ss->add_option("--delta", a.delta, "Failure probability");
    ss->add_option("--pdim", a.pdim, "Pseudo-dimension");
    ss->add_option("--c", a.c, "Constant");

    CLI::App* pd = command("pdim", "Pseudo-dimension table", cmd_pdim);
    pd->add_option("--class", a.cls, "Family name or beta-restricted")->required();
    pd->add_option("--n", a.n, "Points")->required();
    pd->add_option("--sigma", a.sigma, "Sigma");
    pd->add_option("--beta", a.beta, "Beta");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (!config.empty()) {
            if (!app.get_subcommands().empty()) {
                err << "usage error: --config cannot be combined with a subcommand\n";
                return 1;
            }
            return cli_run(config_to_args(read_json_file(config)), out, err);
        }
        if (app.get_subcommands().empty()) {
            err << "usage error: a subcommand is required\n" << app.help();
            return 1;
        }
        CLI::App* sub = app.get_subcommands().front();
        if (!a.save_config.empty()) write_json_file(collect_config(sub), a.save_config);
        return handlers.at(sub)(ctx);
    } catch (const Error& e) {
        err << e.what() << '\n';
        return static_cast<int>(code_class(e.code()));
    } catch (const json::exception& e) {
        err << "ParseError: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return cli_run(args, std::cout, std::cerr);
}

} // namespace ptune
