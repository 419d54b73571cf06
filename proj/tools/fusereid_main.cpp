// Command-line front end: scenario simulation, detection georeferencing,
// fusion runs, parameter sweeps, and standalone evaluation.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fusereid/align.hpp"
#include "fusereid/errors.hpp"
#include "fusereid/pipeline.hpp"
#include "fusereid/scenario_io.hpp"
#include "fusereid/simgen.hpp"

namespace {

using namespace fusereid;
namespace fs = std::filesystem;

struct SimulateArgs {
    std::string config_path;
    std::string out_path = "scenario.json";
    std::uint64_t seed = 0;
    bool seed_given = false;
};

int cmd_simulate(const SimulateArgs& args) {
    SimConfig config;
    if (!args.config_path.empty()) {
        config = load_sim_config(args.config_path);
    }
    if (args.seed_given) config.seed = args.seed;

    const Scenario scenario = generate(config);
    save_scenario(scenario, args.out_path);
    std::cout << "wrote " << args.out_path << ": " << scenario.sequences.size()
              << " sequences, " << scenario.signals.size() << " signals, "
              << scenario.queries.size() << " queries\n";
    return 0;
}

struct GeorefArgs {
    std::string controls_path;
    std::string detections_path;
    std::string out_path = "trajectories.json";
    KalmanParams params;
};

int cmd_georef(const GeorefArgs& args) {
    const std::string result = georef_detections(read_file(args.controls_path),
                                                 read_file(args.detections_path), args.params);
    write_file(args.out_path, result);
    std::cout << "wrote " << args.out_path << "\n";
    return 0;
}

void warn_on_violations(const Scenario& scenario) {
    const auto violations = validate(scenario);
    if (!violations.empty()) {
        std::cerr << "fusereid: scenario breaks " << violations.size()
                  << " invariant(s); first: " << violations.front() << "\n";
    }
}

int cmd_run(const RunConfig& config) {
    if (config.scenario_path.empty()) {
        throw InvalidConfig("run: no scenario given (--scenario or config key)");
    }
    const Scenario scenario = load_scenario(config.scenario_path);
    warn_on_violations(scenario);
    const RunResult result = run_pipeline(scenario, config);
    const std::string csv_path = write_run_outputs(result, config);
    std::cout << "wrote " << csv_path << "\n";
    for (const auto& m : result.metrics) {
        std::cout << m.method << " " << m.task << ": rank-1 "
                  << format_double(m.report.cmc.empty() ? 0.0 : m.report.cmc.front())
                  << ", map " << format_double(m.report.map) << "\n";
    }
    return 0;
}

struct SweepArgs {
    std::string config_path;
    std::string scenario_path;  // optional override
    std::string out_path = "sweep.csv";
};

int cmd_sweep(const SweepArgs& args) {
    SweepConfig config = load_sweep_config(args.config_path);
    if (!args.scenario_path.empty()) config.base.scenario_path = args.scenario_path;
    if (config.base.scenario_path.empty()) {
        throw InvalidConfig("sweep: no scenario given (--scenario or base.scenario key)");
    }
    const Scenario scenario = load_scenario(config.base.scenario_path);
    write_file(args.out_path, run_sweep(scenario, config));
    std::cout << "wrote " << args.out_path << "\n";
    return 0;
}

struct EvalArgs {
    std::string scenario_path;
    std::string s_path;  // affinity matrix CSV, optional
    std::string d_path;  // trajectory distance matrix CSV, optional
    std::string method = "external";
    std::string out_dir = "out";
    EvalOptions options;
};

int cmd_eval(const EvalArgs& args) {
    const Scenario scenario = load_scenario(args.scenario_path);
    warn_on_violations(scenario);

    std::vector<TaskMetrics> metrics;
    if (!args.s_path.empty()) {
        std::istringstream in(read_file(args.s_path));
        metrics.push_back(
            {args.method, "reid", evaluate_reid(read_csv_matrix(in), scenario, args.options)});
    }
    if (!args.d_path.empty()) {
        std::istringstream in(read_file(args.d_path));
        metrics.push_back({args.method, "signal",
                           evaluate_signal(read_csv_matrix(in), scenario, args.options)});
    }
    if (args.s_path.empty() && args.d_path.empty()) {
        // No matrices supplied: evaluate the plain single-modality baselines.
        metrics.push_back({"visual-baseline", "reid",
                           evaluate_reid(visual_affinity(feature_distances(scenario)),
                                         scenario, args.options)});
        metrics.push_back(
            {"sm-baseline", "signal", sm_baseline(distance_matrix(scenario), scenario,
                                                  args.options)});
    }

    std::error_code ec;
    fs::create_directories(args.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + args.out_dir);
    const std::string csv_path = (fs::path(args.out_dir) / "metrics.csv").string();
    write_file(csv_path, metrics_to_csv(metrics));
    RunConfig echo;
    echo.eval = args.options;
    write_file((fs::path(args.out_dir) / "metrics.json").string(),
               metrics_to_json(metrics, echo));
    std::cout << "wrote " << csv_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cross-modal person re-identification: visual affinity fused with "
                 "wireless trajectory distance"};
    app.require_subcommand(1);
    app.fallthrough();  // --seed may follow the subcommand name

    std::uint64_t global_seed = 0;
    app.add_option("--seed", global_seed, "Seed override, where the subcommand uses one");

    // simulate
    SimulateArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic scenario");
    simulate->add_option("--config", sim_args.config_path, "Sim config JSON path");
    simulate->add_option("--out", sim_args.out_path, "Output scenario path");

    // georef
    GeorefArgs geo_args;
    auto* georef = app.add_subcommand("georef", "Convert detections to world trajectories");
    georef->add_option("--controls", geo_args.controls_path, "Control points JSON")->required();
    georef->add_option("--detections", geo_args.detections_path, "Detections JSON")->required();
    georef->add_option("--out", geo_args.out_path, "Output trajectories path");
    georef->add_option("--process-noise", geo_args.params.process_noise,
                       "Kalman process noise (m/s^2)");
    georef->add_option("--measurement-noise", geo_args.params.measurement_noise,
                       "Kalman measurement noise (m)");

    // run
    auto* run = app.add_subcommand("run", "Run the fusion pipeline and evaluate");
    std::string run_config_path;
    RunConfig run_overrides;
    run->add_option("--config", run_config_path, "Run config JSON path");
    auto* opt_scenario = run->add_option("--scenario", run_overrides.scenario_path, "Scenario path");
    std::string metric_name, variant_name_arg;
    auto* opt_metric = run->add_option("--metric", metric_name, "euclidean | cosine");
    auto* opt_k = run->add_option("--k", run_overrides.rcpm.k, "Neighborhood size");
    auto* opt_sigma = run->add_option("--sigma", run_overrides.rcpm.sigma, "Distance gate");
    auto* opt_iters = run->add_option("--iters", run_overrides.rcpm.iterations, "Iterations");
    auto* opt_weight =
        run->add_option("--fusion-weight", run_overrides.rcpm.fusion_weight, "Visual weight");
    auto* opt_variant = run->add_option("--variant", variant_name_arg, "standard | star");
    auto* opt_star = run->add_flag("--include-star", "Also evaluate the ablation variant");
    auto* opt_max_rank = run->add_option("--max-rank", run_overrides.eval.max_rank, "CMC depth");
    auto* opt_no_filter =
        run->add_flag("--no-camera-filter", "Keep same-camera same-identity gallery items");
    auto* opt_out_dir = run->add_option("--out-dir", run_overrides.out_dir, "Output directory");
    auto* opt_dump_f = run->add_flag("--dump-f", "Dump feature distance matrix CSV");
    auto* opt_dump_s0 = run->add_flag("--dump-s0", "Dump initial affinity CSV");
    auto* opt_dump_d0 = run->add_flag("--dump-d0", "Dump initial trajectory distance CSV");

    // sweep
    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Grid sweep over fusion parameters");
    sweep->add_option("--config", sweep_args.config_path, "Sweep config JSON")->required();
    sweep->add_option("--scenario", sweep_args.scenario_path, "Scenario path override");
    sweep->add_option("--out", sweep_args.out_path, "Output CSV path");

    // eval
    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "Evaluate matrices against a scenario");
    eval->add_option("--scenario", eval_args.scenario_path, "Scenario path")->required();
    eval->add_option("--s", eval_args.s_path, "Affinity matrix CSV");
    eval->add_option("--d", eval_args.d_path, "Trajectory distance matrix CSV");
    eval->add_option("--method", eval_args.method, "Method label for the CSV rows");
    eval->add_option("--out-dir", eval_args.out_dir, "Output directory");
    eval->add_option("--max-rank", eval_args.options.max_rank, "CMC depth");
    eval->add_flag_callback("--no-camera-filter",
                            [&] { eval_args.options.filter_same_camera = false; });

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            sim_args.seed = global_seed;
            sim_args.seed_given = app.count("--seed") > 0;
            return cmd_simulate(sim_args);
        }
        if (georef->parsed()) {
            return cmd_georef(geo_args);
        }
        if (run->parsed()) {
            RunConfig config;
            if (!run_config_path.empty()) config = load_run_config(run_config_path);
            if (opt_scenario->count()) config.scenario_path = run_overrides.scenario_path;
            if (opt_metric->count()) config.metric = parse_metric(metric_name);
            if (opt_k->count()) config.rcpm.k = run_overrides.rcpm.k;
            if (opt_sigma->count()) config.rcpm.sigma = run_overrides.rcpm.sigma;
            if (opt_iters->count()) config.rcpm.iterations = run_overrides.rcpm.iterations;
            if (opt_weight->count()) config.rcpm.fusion_weight = run_overrides.rcpm.fusion_weight;
            if (opt_variant->count()) config.rcpm.variant = parse_variant(variant_name_arg);
            if (opt_star->count()) config.include_star = true;
            if (opt_max_rank->count()) config.eval.max_rank = run_overrides.eval.max_rank;
            if (opt_no_filter->count()) config.eval.filter_same_camera = false;
            if (opt_out_dir->count()) config.out_dir = run_overrides.out_dir;
            if (opt_dump_f->count()) config.dump_f = true;
            if (opt_dump_s0->count()) config.dump_s0 = true;
            if (opt_dump_d0->count()) config.dump_d0 = true;
            return cmd_run(config);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep_args);
        }
        if (eval->parsed()) {
            return cmd_eval(eval_args);
        }
    } catch (const Error& e) {
        std::cerr << "fusereid: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "fusereid: unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
