#pragma once

#include <span>
#include <string>
#include <vector>

#include "fusereid/affinity.hpp"
#include "fusereid/eval.hpp"
#include "fusereid/geomap.hpp"
#include "fusereid/matrix.hpp"
#include "fusereid/model.hpp"
#include "fusereid/rcpm.hpp"
#include "fusereid/simgen.hpp"

namespace fusereid {

/// Everything one experiment run needs. `scenario_path` is consumed by the
/// CLI layer; the in-process entry point takes a loaded Scenario instead.
struct RunConfig {
    std::string scenario_path;
    Metric metric = Metric::euclidean;
    rcpm::RcpmConfig rcpm;
    EvalOptions eval;
    bool include_star = false;
    bool dump_f = false;
    bool dump_s0 = false;
    bool dump_d0 = false;
    std::string out_dir = "out";
};

/// Metrics of one method on one subtask.
struct TaskMetrics {
    std::string method;  // visual-baseline | sm-baseline | rcpm | rcpm-star
    std::string task;    // reid | signal
    MetricReport report;
};

struct RunResult {
    std::vector<TaskMetrics> metrics;
    FeatureDistanceMatrix f;
    AffinityMatrix s0;
    TrajDistanceMatrix d0;
    AffinityMatrix s_final;
    TrajDistanceMatrix d_final;
};

/// Full experiment: feature distances, initial affinity and trajectory
/// distance, RCPM, and both subtask evaluations for the baselines and the
/// fused method. Pure function of its inputs.
RunResult run_pipeline(const Scenario& scenario, const RunConfig& config);

/// metrics.csv body: columns method,task,metric,rank,value. The rank cell
/// is empty on map rows.
std::string metrics_to_csv(std::span<const TaskMetrics> metrics);
std::string metrics_to_json(std::span<const TaskMetrics> metrics, const RunConfig& config);

/// Writes metrics.csv, metrics.json, and any requested matrix dumps into
/// config.out_dir (created if absent). Returns the metrics.csv path.
std::string write_run_outputs(const RunResult& result, const RunConfig& config);

/// Grid sweep over the fusion parameters on one scenario.
struct SweepConfig {
    std::vector<int> k_values;
    std::vector<double> sigma_values;
    std::vector<int> iteration_values;
    std::vector<rcpm::Variant> variants;
    RunConfig base;
};

/// One CSV row per grid point per metric, in grid order:
/// k,sigma,iterations,variant,task,metric,rank,value.
std::string run_sweep(const Scenario& scenario, const SweepConfig& config);

// Config file parsing. Missing keys keep their defaults; unknown keys are
// rejected to catch typos early.
SimConfig sim_config_from_json(const std::string& text);
SimConfig load_sim_config(const std::string& path);
RunConfig run_config_from_json(const std::string& text);
RunConfig load_run_config(const std::string& path);
SweepConfig sweep_config_from_json(const std::string& text);
SweepConfig load_sweep_config(const std::string& path);

Metric parse_metric(const std::string& name);
rcpm::Variant parse_variant(const std::string& name);
std::string variant_name(rcpm::Variant variant);

/// Georeferencing step of the ingestion pipeline: fits one homography per
/// camera from surveyed control points, maps detection boxes through
/// foot-point projection, smooths, and returns the trajectories document.
/// Geodetic control coordinates share one local frame anchored at their
/// centroid.
std::string georef_detections(const std::string& controls_json,
                              const std::string& detections_json,
                              const KalmanParams& params = {});

}  // namespace fusereid
