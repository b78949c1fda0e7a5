#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tempnet/bundle.hpp"
#include "tempnet/dynamics.hpp"
#include "tempnet/ingest.hpp"
#include "tempnet/metrics_graph.hpp"
#include "tempnet/metrics_node.hpp"
#include "tempnet/paths.hpp"

namespace {

using namespace tempnet;

std::string default_out() {
    const char* env = std::getenv("TEMPNET_OUT");
    return env && *env ? std::string(env) : std::string(".");
}

void emit(const std::string& dir, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/" + name;
    write_file_atomic(path, content);
    std::cout << "wrote " << path << '\n';
}

std::string window_tag(const SliceSpec& spec) {
    return "_s" + fmt_time(spec.start) + "_e" + fmt_time(spec.end) + "_i" +
           fmt_time(spec.time_interval) + "_d" + fmt_time(spec.aggregate_dur);
}

struct Cfg {
    std::string edges, nodes, bundle;
    std::string out = default_out();
    std::string col_sender = "sender", col_receiver = "receiver";
    std::string col_time = "timestamp", col_thread = "discussion_title";
    std::string spell_mode = "discussion-span";
    int min_degree = -1;
    SliceSpec spec;
    std::vector<std::string> snafun;
    std::string measure = "degree", cmode = "freeman", gmode = "graph", agg_unit = "edge";
    bool harmonic = false;
    int seed = 1;
    std::string direction = "fwd", rule = "depart";
    double step = 0;
    std::string kind = "both";
    double bin_width = 1;
    std::string format = "csv", shape = "wide", frame_format = "dot";
    int jobs = 1;
};

GraphMode parse_gmode(const std::string& s) {
    return s == "digraph" ? GraphMode::kDigraph : GraphMode::kGraph;
}

void add_window_flags(CLI::App* cmd, Cfg& cfg) {
    cmd->add_option("--start", cfg.spec.start, "first slice time")->required();
    cmd->add_option("--end", cfg.spec.end, "last slice time")->required();
    cmd->add_option("--interval", cfg.spec.time_interval, "slice step")->default_val(1.0);
    cmd->add_option("--aggregate", cfg.spec.aggregate_dur, "window length per slice")
        ->default_val(0.0);
}

void run_ingest(const Cfg& cfg) {
    ColumnMap columns;
    columns.sender = cfg.col_sender;
    columns.receiver = cfg.col_receiver;
    columns.time = cfg.col_time;
    columns.thread = cfg.col_thread;
    std::vector<std::string> warnings;
    TemporalNetwork net = ingest_files(cfg.edges, cfg.nodes, columns,
                                       spell_mode_from_string(cfg.spell_mode), cfg.min_degree,
                                       &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
    write_bundle(net, cfg.out, cfg.spell_mode);
    std::cout << "wrote bundle " << cfg.out << " (" << net.vertex_count() << " vertices, "
              << net.edges().size() << " edges)\n";
}

void run_summary(const Cfg& cfg) {
    TemporalNetwork net = read_bundle(cfg.bundle);
    std::cout << summary_text(observation_summary(net));
}

void run_metrics(const Cfg& cfg) {
    TemporalNetwork net = read_bundle(cfg.bundle);
    MetricOptions options;
    options.gmode = parse_gmode(cfg.gmode);
    options.agg_unit = cfg.agg_unit == "dyad" ? AggUnit::kDyad : AggUnit::kEdge;
    options.jobs = cfg.jobs;
    for (const std::string& selector : cfg.snafun) {
        MetricSeries series = metric_series(net, selector, cfg.spec, options);
        const std::string name = selector + window_tag(cfg.spec) + "." + cfg.format;
        emit(cfg.out, name,
             cfg.format == "json" ? metric_series_json(series) : metric_series_csv(series));
    }
}

void run_centrality(const Cfg& cfg) {
    TemporalNetwork net = read_bundle(cfg.bundle);
    const GraphMode gmode = parse_gmode(cfg.gmode);
    NodeSeries series;
    std::string option;
    if (cfg.measure == "degree") {
        DegreeCmode cmode = DegreeCmode::kFreeman;
        if (cfg.cmode == "indegree") cmode = DegreeCmode::kInDegree;
        else if (cfg.cmode == "outdegree") cmode = DegreeCmode::kOutDegree;
        series = degree_series(net, cfg.spec, cmode, cfg.jobs);
        option = cfg.cmode;
    } else if (cfg.measure == "closeness") {
        series = closeness_series(net, cfg.spec, gmode,
                                  cfg.harmonic ? ClosenessVariant::kHarmonic
                                               : ClosenessVariant::kStandard,
                                  cfg.jobs);
        option = cfg.harmonic ? cfg.gmode + "_harmonic" : cfg.gmode;
    } else if (cfg.measure == "betweenness") {
        series = betweenness_series(net, cfg.spec, gmode, cfg.jobs);
        option = cfg.gmode;
    } else {
        series = evcent_series(net, cfg.spec, gmode, cfg.jobs);
        option = cfg.gmode;
    }
    const std::string name = cfg.measure + "_" + option + window_tag(cfg.spec) + "." + cfg.format;
    std::string content;
    if (cfg.format == "json") content = node_series_json(series);
    else content = cfg.shape == "long" ? node_series_csv_long(series) : node_series_csv_wide(series);
    emit(cfg.out, name, content);
}

void run_paths(const Cfg& cfg) {
    TemporalNetwork net = read_bundle(cfg.bundle);
    const PathDirection direction =
        cfg.direction == "bkwd" ? PathDirection::kBkwd : PathDirection::kFwd;
    const TraversalRule rule = cfg.rule == "arrive" ? TraversalRule::kArriveWithinSpell
                                                    : TraversalRule::kDepartWithinSpell;
    PathTree tree = earliest_path_tree(net, cfg.seed, cfg.spec.start, cfg.spec.end, direction,
                                       cfg.step, rule);
    const std::string name = "paths_seed" + std::to_string(cfg.seed) + "_s" +
                             fmt_time(cfg.spec.start) + "_e" + fmt_time(cfg.spec.end) + "_st" +
                             fmt_time(cfg.step) + "_" + cfg.direction + "_" + cfg.rule + "." +
                             cfg.format;
    std::string content;
    if (cfg.format == "json") content = path_tree_json(tree);
    else if (cfg.format == "dot") content = path_tree_dot(tree, net);
    else content = path_tree_csv(tree);
    emit(cfg.out, name, content);
}

void run_dynamics(const Cfg& cfg) {
    TemporalNetwork net = read_bundle(cfg.bundle);
    auto write_kind = [&](EventKind kind) {
        EventSeries series = kind == EventKind::kFormation
                                 ? formation_series(net, cfg.bin_width)
                                 : dissolution_series(net, cfg.bin_width);
        const std::string base = kind == EventKind::kFormation ? "formation" : "dissolution";
        const std::string name = base + "_i" + fmt_time(cfg.bin_width) + "." + cfg.format;
        emit(cfg.out, name,
             cfg.format == "json" ? event_series_json(series) : event_series_csv(series));
    };
    if (cfg.kind == "formation" || cfg.kind == "both") write_kind(EventKind::kFormation);
    if (cfg.kind == "dissolution" || cfg.kind == "both") write_kind(EventKind::kDissolution);
}

void run_export_frames(const Cfg& cfg) {
    TemporalNetwork net = read_bundle(cfg.bundle);
    for (const auto& [t, slice] : slice_iter(net, cfg.spec)) {
        const std::string name = "frame_" + fmt_time(slice.window_onset) + "_" +
                                 fmt_time(slice.window_terminus) + "." + cfg.frame_format;
        emit(cfg.out, name,
             cfg.frame_format == "json" ? slice_json(slice, net) : slice_dot(slice, net));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"temporal network analysis toolkit"};
    app.require_subcommand(1);
    Cfg cfg;

    CLI::App* ingest = app.add_subcommand("ingest", "build a network bundle from CSV files");
    ingest->add_option("--edges", cfg.edges, "timestamped edge list CSV")->required();
    ingest->add_option("--nodes", cfg.nodes, "vertex attribute CSV")->required();
    ingest->add_option("--col-sender", cfg.col_sender, "sender column (after cleaning)");
    ingest->add_option("--col-receiver", cfg.col_receiver, "receiver column");
    ingest->add_option("--col-time", cfg.col_time, "timestamp column");
    ingest->add_option("--col-thread", cfg.col_thread, "discussion/thread column");
    ingest->add_option("--spell-mode", cfg.spell_mode, "spell derivation")
        ->check(CLI::IsMember({"discussion-span", "post-to-end"}));
    ingest->add_option("--min-degree", cfg.min_degree,
                       "keep vertices with static degree >= this");
    ingest->add_option("--out", cfg.out, "bundle directory");
    ingest->callback([&] { run_ingest(cfg); });

    CLI::App* summary = app.add_subcommand("summary", "print bundle summary");
    summary->add_option("--bundle", cfg.bundle, "bundle directory")->required();
    summary->callback([&] { run_summary(cfg); });

    CLI::App* metrics = app.add_subcommand("metrics", "graph-level metric series");
    metrics->add_option("--bundle", cfg.bundle, "bundle directory")->required();
    metrics->add_option("--snafun", cfg.snafun, "metric selector(s)")->required();
    add_window_flags(metrics, cfg);
    metrics->add_option("--gmode", cfg.gmode)->check(CLI::IsMember({"graph", "digraph"}));
    metrics->add_option("--agg-unit", cfg.agg_unit)->check(CLI::IsMember({"edge", "dyad"}));
    metrics->add_option("--jobs", cfg.jobs, "slice worker threads");
    metrics->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));
    metrics->add_option("--out", cfg.out, "output directory");
    metrics->callback([&] { run_metrics(cfg); });

    CLI::App* centrality = app.add_subcommand("centrality", "node centrality series");
    centrality->add_option("--bundle", cfg.bundle, "bundle directory")->required();
    centrality->add_option("--measure", cfg.measure)
        ->check(CLI::IsMember({"degree", "closeness", "betweenness", "evcent"}));
    add_window_flags(centrality, cfg);
    centrality->add_option("--cmode", cfg.cmode)
        ->check(CLI::IsMember({"freeman", "indegree", "outdegree"}));
    centrality->add_option("--gmode", cfg.gmode)->check(CLI::IsMember({"graph", "digraph"}));
    centrality->add_flag("--harmonic", cfg.harmonic, "harmonic closeness");
    centrality->add_option("--shape", cfg.shape)->check(CLI::IsMember({"wide", "long"}));
    centrality->add_option("--jobs", cfg.jobs, "slice worker threads");
    centrality->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));
    centrality->add_option("--out", cfg.out, "output directory");
    centrality->callback([&] { run_centrality(cfg); });

    CLI::App* paths = app.add_subcommand("paths", "earliest-arrival path tree");
    paths->add_option("--bundle", cfg.bundle, "bundle directory")->required();
    paths->add_option("--seed", cfg.seed, "seed vertex id")->required();
    paths->add_option("--start", cfg.spec.start, "window start")->required();
    paths->add_option("--end", cfg.spec.end, "window end")->required();
    paths->add_option("--step", cfg.step, "per-hop duration")->default_val(0.0);
    paths->add_option("--direction", cfg.direction)->check(CLI::IsMember({"fwd", "bkwd"}));
    paths->add_option("--rule", cfg.rule)->check(CLI::IsMember({"depart", "arrive"}));
    paths->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json", "dot"}));
    paths->add_option("--out", cfg.out, "output directory");
    paths->callback([&] { run_paths(cfg); });

    CLI::App* dynamics = app.add_subcommand("dynamics", "edge formation/dissolution series");
    dynamics->add_option("--bundle", cfg.bundle, "bundle directory")->required();
    dynamics->add_option("--kind", cfg.kind)
        ->check(CLI::IsMember({"formation", "dissolution", "both"}));
    dynamics->add_option("--interval", cfg.bin_width, "bin width")->required();
    dynamics->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));
    dynamics->add_option("--out", cfg.out, "output directory");
    dynamics->callback([&] { run_dynamics(cfg); });

    CLI::App* frames = app.add_subcommand("export-frames", "per-slice graph files");
    frames->add_option("--bundle", cfg.bundle, "bundle directory")->required();
    add_window_flags(frames, cfg);
    frames->add_option("--format", cfg.frame_format)->check(CLI::IsMember({"dot", "json"}));
    frames->add_option("--out", cfg.out, "output directory");
    frames->callback([&] { run_export_frames(cfg); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
