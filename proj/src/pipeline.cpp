#include "fusereid/pipeline.hpp"

#include <filesystem>
#include <map>
#include <sstream>

#include <json.hpp>

#include "fusereid/align.hpp"
#include "fusereid/errors.hpp"
#include "fusereid/scenario_io.hpp"

namespace fusereid {

using nlohmann::json;

RunResult run_pipeline(const Scenario& scenario, const RunConfig& config) {
    RunResult result;
    result.f = feature_distances(scenario, config.metric);
    result.s0 = visual_affinity(result.f);
    result.d0 = distance_matrix(scenario);

    auto [s_final, d_final] = rcpm::run(result.s0, result.d0, config.rcpm);
    result.s_final = std::move(s_final);
    result.d_final = std::move(d_final);

    result.metrics.push_back(
        {"visual-baseline", "reid", evaluate_reid(result.s0, scenario, config.eval)});
    result.metrics.push_back(
        {"sm-baseline", "signal", sm_baseline(result.d0, scenario, config.eval)});
    result.metrics.push_back(
        {"rcpm", "reid", evaluate_reid(result.s_final, scenario, config.eval)});
    result.metrics.push_back(
        {"rcpm", "signal", evaluate_signal(result.d_final, scenario, config.eval)});

    if (config.include_star) {
        rcpm::RcpmConfig star = config.rcpm;
        star.variant = rcpm::Variant::star;
        auto [s_star, d_star] = rcpm::run(result.s0, result.d0, star);
        result.metrics.push_back({"rcpm-star", "reid", evaluate_reid(s_star, scenario, config.eval)});
        result.metrics.push_back(
            {"rcpm-star", "signal", evaluate_signal(d_star, scenario, config.eval)});
    }
    return result;
}

namespace {

void append_metric_rows(std::ostringstream& out, const std::string& prefix,
                        const MetricReport& report) {
    for (std::size_t r = 0; r < report.cmc.size(); ++r) {
        out << prefix << ",cmc," << (r + 1) << ',' << format_double(report.cmc[r]) << '\n';
    }
    out << prefix << ",map,," << format_double(report.map) << '\n';
}

json report_to_json(const MetricReport& report) {
    json j;
    j["cmc"] = report.cmc;
    j["map"] = report.map;
    j["per_query_ap"] = report.per_query_ap;
    return j;
}

}  // namespace

std::string metrics_to_csv(std::span<const TaskMetrics> metrics) {
    std::ostringstream out;
    out << "method,task,metric,rank,value\n";
    for (const auto& m : metrics) {
        append_metric_rows(out, m.method + "," + m.task, m.report);
    }
    return out.str();
}

std::string metrics_to_json(std::span<const TaskMetrics> metrics, const RunConfig& config) {
    json doc;
    doc["config"]["metric"] = config.metric == Metric::euclidean ? "euclidean" : "cosine";
    doc["config"]["rcpm"] = {{"k", config.rcpm.k},
                             {"sigma", config.rcpm.sigma},
                             {"iterations", config.rcpm.iterations},
                             {"fusion_weight", config.rcpm.fusion_weight},
                             {"variant", variant_name(config.rcpm.variant)}};
    doc["config"]["eval"] = {{"filter_same_camera", config.eval.filter_same_camera},
                             {"max_rank", config.eval.max_rank}};
    json results = json::object();
    for (const auto& m : metrics) {
        results[m.method][m.task] = report_to_json(m.report);
    }
    doc["results"] = std::move(results);
    return doc.dump(2) + "\n";
}

std::string write_run_outputs(const RunResult& result, const RunConfig& config) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + config.out_dir);

    const auto path_of = [&](const std::string& name) {
        return (fs::path(config.out_dir) / name).string();
    };

    const std::string csv_path = path_of("metrics.csv");
    write_file(csv_path, metrics_to_csv(result.metrics));
    write_file(path_of("metrics.json"), metrics_to_json(result.metrics, config));

    const auto dump_matrix = [&](const Mat& m, const std::string& name) {
        std::ostringstream out;
        write_csv(m, out);
        write_file(path_of(name), out.str());
    };
    if (config.dump_f) dump_matrix(result.f, "f.csv");
    if (config.dump_s0) dump_matrix(result.s0, "s0.csv");
    if (config.dump_d0) dump_matrix(result.d0, "d0.csv");
    return csv_path;
}

std::string run_sweep(const Scenario& scenario, const SweepConfig& config) {
    if (config.k_values.empty() || config.sigma_values.empty() ||
        config.iteration_values.empty() || config.variants.empty()) {
        throw InvalidConfig("sweep grid has an empty axis");
    }

    const FeatureDistanceMatrix f = feature_distances(scenario, config.base.metric);
    const AffinityMatrix s0 = visual_affinity(f);
    const TrajDistanceMatrix d0 = distance_matrix(scenario);

    std::ostringstream out;
    out << "k,sigma,iterations,variant,task,metric,rank,value\n";
    for (int k : config.k_values) {
        for (double sigma : config.sigma_values) {
            for (int iterations : config.iteration_values) {
                for (rcpm::Variant variant : config.variants) {
                    rcpm::RcpmConfig rc = config.base.rcpm;
                    rc.k = k;
                    rc.sigma = sigma;
                    rc.iterations = iterations;
                    rc.variant = variant;
                    const auto [s, d] = rcpm::run(s0, d0, rc);

                    std::ostringstream prefix;
                    prefix << k << ',' << format_double(sigma) << ',' << iterations << ','
                           << variant_name(variant);
                    append_metric_rows(out, prefix.str() + ",reid",
                                       evaluate_reid(s, scenario, config.base.eval));
                    append_metric_rows(out, prefix.str() + ",signal",
                                       evaluate_signal(d, scenario, config.base.eval));
                }
            }
        }
    }
    return out.str();
}

namespace {

[[noreturn]] void bad_config(const std::string& what) {
    throw InvalidConfig("config: " + what);
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : known) {
            if (key == k) {
                ok = true;
                break;
            }
        }
        if (!ok) bad_config("unknown key '" + key + "' in " + where);
    }
}

json parse_object(const std::string& text, const std::string& what) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(what + " parse error: " + e.what());
    }
    if (!doc.is_object()) throw IoError(what + " must be a JSON object");
    return doc;
}

}  // namespace

Metric parse_metric(const std::string& name) {
    if (name == "euclidean") return Metric::euclidean;
    if (name == "cosine") return Metric::cosine;
    bad_config("unknown metric '" + name + "'");
}

rcpm::Variant parse_variant(const std::string& name) {
    if (name == "standard") return rcpm::Variant::standard;
    if (name == "star") return rcpm::Variant::star;
    bad_config("unknown variant '" + name + "'");
}

std::string variant_name(rcpm::Variant variant) {
    return variant == rcpm::Variant::standard ? "standard" : "star";
}

SimConfig sim_config_from_json(const std::string& text) {
    const json doc = parse_object(text, "sim config");
    reject_unknown_keys(doc,
                        {"n_identities", "n_with_phone", "camera_footprints", "duration_s",
                         "walk_speed", "positioning_noise_std", "dropout_burst_prob",
                         "dropout_burst_len", "embedding_dim", "embedding_noise_std",
                         "corruption_rate", "clothing_change_prob", "pair_walking_prob", "seed"},
                        "sim config");
    SimConfig c;
    try {
        if (doc.contains("n_identities")) c.n_identities = doc["n_identities"].get<int>();
        if (doc.contains("n_with_phone")) c.n_with_phone = doc["n_with_phone"].get<int>();
        if (doc.contains("camera_footprints")) {
            c.camera_footprints.clear();
            for (const auto& r : doc["camera_footprints"]) {
                if (!r.is_array() || r.size() != 4) {
                    bad_config("camera footprint must be [min_x, min_y, max_x, max_y]");
                }
                c.camera_footprints.push_back({r[0].get<double>(), r[1].get<double>(),
                                               r[2].get<double>(), r[3].get<double>()});
            }
        }
        if (doc.contains("duration_s")) c.duration_s = doc["duration_s"].get<double>();
        if (doc.contains("walk_speed")) {
            const auto& v = doc["walk_speed"];
            if (!v.is_array() || v.size() != 2) bad_config("walk_speed must be [min, max]");
            c.walk_speed_min = v[0].get<double>();
            c.walk_speed_max = v[1].get<double>();
        }
        if (doc.contains("positioning_noise_std")) {
            c.positioning_noise_std = doc["positioning_noise_std"].get<double>();
        }
        if (doc.contains("dropout_burst_prob")) {
            c.dropout_burst_prob = doc["dropout_burst_prob"].get<double>();
        }
        if (doc.contains("dropout_burst_len")) {
            c.dropout_burst_len = doc["dropout_burst_len"].get<int>();
        }
        if (doc.contains("embedding_dim")) c.embedding_dim = doc["embedding_dim"].get<int>();
        if (doc.contains("embedding_noise_std")) {
            c.embedding_noise_std = doc["embedding_noise_std"].get<double>();
        }
        if (doc.contains("corruption_rate")) {
            c.corruption_rate = doc["corruption_rate"].get<double>();
        }
        if (doc.contains("clothing_change_prob")) {
            c.clothing_change_prob = doc["clothing_change_prob"].get<double>();
        }
        if (doc.contains("pair_walking_prob")) {
            c.pair_walking_prob = doc["pair_walking_prob"].get<double>();
        }
        if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw IoError(std::string("sim config type error: ") + e.what());
    }
    return c;
}

SimConfig load_sim_config(const std::string& path) {
    return sim_config_from_json(read_file(path));
}

namespace {

void apply_rcpm_json(const json& r, rcpm::RcpmConfig& c) {
    reject_unknown_keys(r, {"k", "sigma", "iterations", "fusion_weight", "variant"}, "rcpm");
    if (r.contains("k")) c.k = r["k"].get<int>();
    if (r.contains("sigma")) c.sigma = r["sigma"].get<double>();
    if (r.contains("iterations")) c.iterations = r["iterations"].get<int>();
    if (r.contains("fusion_weight")) c.fusion_weight = r["fusion_weight"].get<double>();
    if (r.contains("variant")) c.variant = parse_variant(r["variant"].get<std::string>());
}

void apply_run_json(const json& doc, RunConfig& c) {
    if (doc.contains("scenario")) c.scenario_path = doc["scenario"].get<std::string>();
    if (doc.contains("metric")) c.metric = parse_metric(doc["metric"].get<std::string>());
    if (doc.contains("rcpm")) apply_rcpm_json(doc["rcpm"], c.rcpm);
    if (doc.contains("eval")) {
        const auto& e = doc["eval"];
        reject_unknown_keys(e, {"filter_same_camera", "max_rank"}, "eval");
        if (e.contains("filter_same_camera")) {
            c.eval.filter_same_camera = e["filter_same_camera"].get<bool>();
        }
        if (e.contains("max_rank")) c.eval.max_rank = e["max_rank"].get<int>();
    }
    if (doc.contains("include_star")) c.include_star = doc["include_star"].get<bool>();
    if (doc.contains("dump_f")) c.dump_f = doc["dump_f"].get<bool>();
    if (doc.contains("dump_s0")) c.dump_s0 = doc["dump_s0"].get<bool>();
    if (doc.contains("dump_d0")) c.dump_d0 = doc["dump_d0"].get<bool>();
    if (doc.contains("out_dir")) c.out_dir = doc["out_dir"].get<std::string>();
}

}  // namespace

RunConfig run_config_from_json(const std::string& text) {
    const json doc = parse_object(text, "run config");
    reject_unknown_keys(doc,
                        {"scenario", "metric", "rcpm", "eval", "include_star", "dump_f",
                         "dump_s0", "dump_d0", "out_dir"},
                        "run config");
    RunConfig c;
    try {
        apply_run_json(doc, c);
    } catch (const json::exception& e) {
        throw IoError(std::string("run config type error: ") + e.what());
    }
    return c;
}

RunConfig load_run_config(const std::string& path) {
    return run_config_from_json(read_file(path));
}

SweepConfig sweep_config_from_json(const std::string& text) {
    const json doc = parse_object(text, "sweep config");
    reject_unknown_keys(doc, {"grid", "base"}, "sweep config");
    SweepConfig c;
    try {
        if (doc.contains("base")) {
            reject_unknown_keys(doc["base"], {"scenario", "metric", "rcpm", "eval"},
                                "sweep base");
            apply_run_json(doc["base"], c.base);
        }
        if (!doc.contains("grid") || !doc["grid"].is_object()) {
            bad_config("sweep config needs a 'grid' object");
        }
        const auto& grid = doc["grid"];
        reject_unknown_keys(grid, {"k", "sigma", "iterations", "variant"}, "grid");
        if (grid.contains("k")) c.k_values = grid["k"].get<std::vector<int>>();
        if (grid.contains("sigma")) c.sigma_values = grid["sigma"].get<std::vector<double>>();
        if (grid.contains("iterations")) {
            c.iteration_values = grid["iterations"].get<std::vector<int>>();
        }
        if (grid.contains("variant")) {
            c.variants.clear();
            for (const auto& v : grid["variant"]) {
                c.variants.push_back(parse_variant(v.get<std::string>()));
            }
        }
    } catch (const json::exception& e) {
        throw IoError(std::string("sweep config type error: ") + e.what());
    }
    // Axes not swept collapse to the base value.
    if (c.k_values.empty() && !doc["grid"].contains("k")) c.k_values = {c.base.rcpm.k};
    if (c.sigma_values.empty() && !doc["grid"].contains("sigma")) {
        c.sigma_values = {c.base.rcpm.sigma};
    }
    if (c.iteration_values.empty() && !doc["grid"].contains("iterations")) {
        c.iteration_values = {c.base.rcpm.iterations};
    }
    if (c.variants.empty() && !doc["grid"].contains("variant")) {
        c.variants = {c.base.rcpm.variant};
    }
    return c;
}

SweepConfig load_sweep_config(const std::string& path) {
    return sweep_config_from_json(read_file(path));
}

std::string georef_detections(const std::string& controls_json,
                              const std::string& detections_json, const KalmanParams& params) {
    const json controls_doc = parse_object(controls_json, "controls file");
    json detections_doc;
    try {
        detections_doc = json::parse(detections_json);
    } catch (const json::exception& e) {
        throw IoError(std::string("detections file parse error: ") + e.what());
    }
    if (!detections_doc.is_array()) throw IoError("detections file must be a JSON array");

    try {
        // All cameras share one local frame anchored at the centroid of
        // every surveyed point, so distances are comparable across views.
        std::vector<GeoPoint> all_geo;
        for (const auto& [camera, pts] : controls_doc.items()) {
            for (const auto& p : pts) {
                const auto& w = p.at("world");
                all_geo.push_back({w[0].get<double>(), w[1].get<double>()});
            }
        }
        if (all_geo.empty()) throw IoError("controls file has no control points");
        const GeoReference geo = GeoReference::from_centroid(all_geo);

        std::map<std::string, PixelToWorldMap> maps;
        for (const auto& [camera, pts] : controls_doc.items()) {
            std::vector<ControlPoint> controls;
            for (const auto& p : pts) {
                const auto& px = p.at("pixel");
                const auto& w = p.at("world");
                controls.push_back({{px[0].get<double>(), px[1].get<double>()},
                                    geo.to_local({w[0].get<double>(), w[1].get<double>()})});
            }
            maps.emplace(camera, estimate_map(controls));
        }

        json out = json::array();
        for (const auto& det : detections_doc) {
            const auto camera = det.at("camera").get<std::string>();
            const auto it = maps.find(camera);
            if (it == maps.end()) {
                throw IoError("no control points for camera " + camera);
            }
            std::vector<BoundingBox> boxes;
            for (const auto& b : det.at("boxes")) {
                if (!b.is_array() || b.size() != 5) {
                    throw IoError("detection box must be [millis, left, top, width, height]");
                }
                boxes.push_back({b[1].get<double>(), b[2].get<double>(), b[3].get<double>(),
                                 b[4].get<double>(), Timestamp{b[0].get<std::int64_t>()}});
            }
            const VisualTrajectory traj = build_visual_trajectory(boxes, it->second, params);
            json entry;
            entry["sequence"] = det.at("sequence").get<std::string>();
            entry["camera"] = camera;
            json points = json::array();
            for (const auto& p : traj.points) {
                points.push_back(json::array({p.time.millis, p.pos.x, p.pos.y}));
            }
            entry["trajectory"] = std::move(points);
            out.push_back(std::move(entry));
        }
        return out.dump(2) + "\n";
    } catch (const json::exception& e) {
        throw IoError(std::string("georef input structure error: ") + e.what());
    }
}

}  // namespace fusereid
