#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cactus/bdg.hpp"
#include "cactus/boltzmann.hpp"
#include "cactus/brownian.hpp"
#include "cactus/cactus_tree.hpp"
#include "cactus/errors.hpp"
#include "cactus/experiments.hpp"
#include "cactus/graph.hpp"
#include "cactus/mobile.hpp"
#include "cactus/planar_map.hpp"
#include "cactus/rng.hpp"
#include "cactus/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace cactus::cli {
namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f.precision(17);
    return f;
}

// Everything needed to regenerate the outputs of one run.
void write_manifest(const fs::path& dir, const std::string& command, ordered_json details) {
    ordered_json m;
    m["command"] = command;
    m["version"] = kVersion;
    m["rng"] = kRngName;
    for (auto& [k, v] : details.items()) m[k] = v;
    auto f = open_out(dir / "manifest.json");
    f << m.dump(2) << '\n';
}

fs::path prepare_dir(const std::string& dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

struct Options {
    std::string out_dir = ".";
    std::string weights_file;
    std::string graph_file;
    std::string q_file;
    int n = 0;
    std::string variant = "pos";
    std::uint64_t seed = 1;
    std::string method = "cyclic";
    std::uint64_t max_tries = 100'000'000;
    int edges = 0;
    std::string label_mode = "bridge";
    std::string experiment;
    std::string config_file;
    int workers = 1;
    bool dump_samples = false;
};

int do_tune(const Options& o, std::ostream& out) {
    const std::string text = slurp(o.weights_file);
    std::istringstream in(text);
    const auto q = read_weights(in);
    const auto p = tune_critical(q);
    write_params(out, p);
    if (!o.out_dir.empty() && o.out_dir != ".") {
        const auto dir = prepare_dir(o.out_dir);
        auto f = open_out(dir / "params.txt");
        write_params(f, p);
        write_manifest(dir, "tune", {{"weights_file", o.weights_file}, {"weights", text}});
    }
    return kOk;
}

int do_sample_map(const Options& o, std::ostream& out) {
    const std::string text = slurp(o.q_file);
    std::istringstream in(text);
    const BoltzmannSampler sampler(read_weights(in));
    ConditionedOptions opts;
    if (o.method == "cyclic")
        opts.method = ConditioningMethod::cyclic;
    else if (o.method == "rejection")
        opts.method = ConditioningMethod::rejection;
    else
        throw InputError("unknown method " + o.method);
    opts.max_tries = o.max_tries;
    const Variant variant = parse_variant(o.variant);
    Rng rng(o.seed);
    const auto s = sampler.sample(o.n, variant, rng, opts);

    const auto dir = prepare_dir(o.out_dir);
    {
        auto f = open_out(dir / "map.txt");
        write_map(f, s.map);
    }
    {
        auto f = open_out(dir / "mobile.txt");
        write_mobile(f, s.mobile);
    }
    write_manifest(dir, "sample-map",
                   {{"weights_file", o.q_file},
                    {"weights", text},
                    {"n", o.n},
                    {"variant", o.variant},
                    {"method", o.method},
                    {"max_tries", o.max_tries},
                    {"seed", o.seed}});
    out << "vertices " << s.map.vertex_count() << " faces " << s.map.face_count() << " attempts " << s.attempts
        << '\n';
    return kOk;
}

int do_cactus(const Options& o, std::ostream& out) {
    const std::string text = slurp(o.graph_file);
    std::istringstream in(text);
    const auto g = read_graph(in);
    const auto t = build_cactus(g);
    const auto dir = prepare_dir(o.out_dir);
    {
        auto f = open_out(dir / "cactus.txt");
        write_cactus(f, t);
    }
    write_manifest(dir, "cactus", {{"graph_file", o.graph_file}, {"graph", text}});
    out << "classes " << t.class_count() << '\n';
    return kOk;
}

int do_sample_tree(const Options& o, std::ostream& out) {
    LabelMode mode;
    if (o.label_mode == "bridge")
        mode = LabelMode::bridge;
    else if (o.label_mode == "vertex")
        mode = LabelMode::vertex;
    else
        throw InputError("unknown label mode " + o.label_mode);
    Rng rng(o.seed);
    const auto t = sample_labeled_tree(o.edges, rng, mode);
    const auto dir = prepare_dir(o.out_dir);
    {
        auto f = open_out(dir / "tree.txt");
        write_tree_summary(f, t);
    }
    write_manifest(dir, "sample-tree", {{"edges", o.edges}, {"seed", o.seed}, {"label_mode", o.label_mode}});
    out << "edges " << t.edges() << " min_label " << global_min(t) * t.label_scale() << '\n';
    return kOk;
}

int do_exp(const Options& o, std::ostream& out) {
    const std::string text = slurp(o.config_file);
    std::istringstream in(text);
    auto cfg = Config::parse(in);
    cfg.set("workers", std::to_string(o.workers));
    if (o.dump_samples) cfg.set("dump_samples", "true");
    const auto report = run_experiment(o.experiment, cfg);

    const auto dir = prepare_dir(o.out_dir);
    const std::string stem = o.experiment;
    {
        auto f = open_out(dir / (stem + ".csv"));
        write_csv(f, report);
    }
    {
        auto f = open_out(dir / (stem + ".json"));
        write_json(f, report);
    }
    if (o.dump_samples) {
        auto f = open_out(dir / (stem + "_samples.csv"));
        write_samples_csv(f, report);
    }
    ordered_json resolved = ordered_json::object();
    for (const auto& [k, v] : report.config) resolved[k] = v;
    write_manifest(dir, "exp " + o.experiment,
                   {{"config_file", o.config_file},
                    {"config", resolved},
                    {"seed", cfg.get_u64("seed", 1)},
                    {"workers", o.workers}});

    for (const auto& r : report.rows) {
        out << r.name << " = " << r.estimate;
        if (!std::isnan(r.reference)) out << "  (reference " << r.reference << ")";
        out << '\n';
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Random planar maps, their cacti and Brownian cactus statistics", "cactus"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    auto* tune = app.add_subcommand("tune", "Tune a weight sequence to criticality and print its parameters");
    tune->add_option("weights", o.weights_file, "Weight file (`k q_k` lines)")->required();
    tune->add_option("--out", o.out_dir, "Also write params.txt and a manifest here");

    auto* sm = app.add_subcommand("sample-map", "Sample a Boltzmann map with n vertices");
    sm->add_option("--q", o.q_file, "Weight file")->required();
    sm->add_option("--n", o.n, "Number of vertices")->required()->check(CLI::PositiveNumber);
    sm->add_option("--variant", o.variant, "pos|neg|null")->check(CLI::IsMember({"pos", "neg", "null"}));
    sm->add_option("--seed", o.seed, "Master seed");
    sm->add_option("--method", o.method, "cyclic|rejection")->check(CLI::IsMember({"cyclic", "rejection"}));
    sm->add_option("--max-tries", o.max_tries, "Conditioning attempts before giving up");
    sm->add_option("--out", o.out_dir, "Output directory");

    auto* ca = app.add_subcommand("cactus", "Build the cactus of a pointed graph");
    ca->add_option("graph", o.graph_file, "Graph file")->required();
    ca->add_option("--out", o.out_dir, "Output directory");

    auto* st = app.add_subcommand("sample-tree", "Sample a labeled uniform plane tree");
    st->add_option("--edges", o.edges, "Number of edges")->required()->check(CLI::PositiveNumber);
    st->add_option("--seed", o.seed, "Master seed");
    st->add_option("--labels", o.label_mode, "bridge|vertex")->check(CLI::IsMember({"bridge", "vertex"}));
    st->add_option("--out", o.out_dir, "Output directory");

    auto* ex = app.add_subcommand("exp", "Run an experiment and write its report");
    ex->add_option("name", o.experiment, "Experiment")
        ->required()
        ->check(CLI::IsMember({"volume-growth", "separating-cycle", "ball-exponent", "convergence"}));
    ex->add_option("--config", o.config_file, "Config file (`key = value` lines)")->required();
    ex->add_option("--workers", o.workers, "Replica threads")->check(CLI::PositiveNumber);
    ex->add_flag("--dump-samples", o.dump_samples, "Also write raw samples");
    ex->add_option("--out", o.out_dir, "Output directory");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*tune) return do_tune(o, out);
        if (*sm) return do_sample_map(o, out);
        if (*ca) return do_cactus(o, out);
        if (*st) return do_sample_tree(o, out);
        if (*ex) return do_exp(o, out);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kParse;
    } catch (const NonConvergence& e) {
        err << "no convergence: " << e.what() << '\n';
        return kNonConvergence;
    } catch (const BudgetExhausted& e) {
        err << "budget exhausted: " << e.what() << '\n';
        return kBudget;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}

}  // namespace cactus::cli
